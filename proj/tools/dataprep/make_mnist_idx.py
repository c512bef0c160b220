#!/usr/bin/env python3
"""Build the vendored MNIST subset in standard IDX binary layout.

Source: the `mnist` npm package (cazala/mnist, v1.1.0), which redistributes
10,000 genuine MNIST images as per-digit JSON arrays of 784 pixel values
normalized to [0, 1] (3 decimal places). Multiplying by 255 and rounding
recovers the original byte values exactly (max quantization error 0.125).

Usage: make_mnist_idx.py <npm-package-dir> <out-dir>

Writes train-images-idx3-ubyte / train-labels-idx1-ubyte (70% per digit)
and t10k-images-idx3-ubyte / t10k-labels-idx1-ubyte (remaining 30%),
shuffled with a fixed seed so file order is not digit-sorted.
"""
import json
import struct
import sys
from pathlib import Path

import numpy as np


def write_idx_images(path: Path, images: np.ndarray) -> None:
    n = images.shape[0]
    with open(path, "wb") as f:
        f.write(struct.pack(">IIII", 0x00000803, n, 28, 28))
        f.write(images.astype(np.uint8).tobytes())


def write_idx_labels(path: Path, labels: np.ndarray) -> None:
    with open(path, "wb") as f:
        f.write(struct.pack(">II", 0x00000801, labels.shape[0]))
        f.write(labels.astype(np.uint8).tobytes())


def main() -> None:
    pkg = Path(sys.argv[1])
    out = Path(sys.argv[2])
    out.mkdir(parents=True, exist_ok=True)

    train_imgs, train_labels, test_imgs, test_labels = [], [], [], []
    for digit in range(10):
        flat = json.load(open(pkg / "src" / "digits" / f"{digit}.json"))["data"]
        imgs = np.round(np.array(flat, dtype=np.float64).reshape(-1, 784) * 255.0)
        n_train = int(imgs.shape[0] * 0.7)
        train_imgs.append(imgs[:n_train])
        test_imgs.append(imgs[n_train:])
        train_labels.append(np.full(n_train, digit))
        test_labels.append(np.full(imgs.shape[0] - n_train, digit))

    rng = np.random.RandomState(20240901)
    for imgs, labels, img_name, lbl_name in [
        (train_imgs, train_labels, "train-images-idx3-ubyte", "train-labels-idx1-ubyte"),
        (test_imgs, test_labels, "t10k-images-idx3-ubyte", "t10k-labels-idx1-ubyte"),
    ]:
        x = np.concatenate(imgs)
        y = np.concatenate(labels)
        order = rng.permutation(x.shape[0])
        write_idx_images(out / img_name, x[order])
        write_idx_labels(out / lbl_name, y[order])
        print(img_name, x.shape[0], "images; labels:", np.bincount(y.astype(int)))


if __name__ == "__main__":
    main()
