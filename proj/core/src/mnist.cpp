#include <algorithm>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qkbench/datasets.hpp"
#include "qkbench/rng.hpp"

namespace qkbench {

namespace {

std::uint32_t read_be32(std::ifstream &in, const std::string &path) {
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char *>(b), 4)) {
        throw ConfigError("truncated IDX file: " + path);
    }
    return (std::uint32_t{b[0]} << 24) | (std::uint32_t{b[1]} << 16) |
           (std::uint32_t{b[2]} << 8) | std::uint32_t{b[3]};
}

struct IdxImages {
    std::size_t count = 0;
    std::vector<std::uint8_t> pixels;  // count * 784
};

IdxImages read_idx_images(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("MNIST image file not found: " + path);
    if (read_be32(in, path) != 0x00000803u) {
        throw ConfigError("bad magic in MNIST image file: " + path);
    }
    IdxImages out;
    out.count = read_be32(in, path);
    const std::uint32_t rows = read_be32(in, path);
    const std::uint32_t cols = read_be32(in, path);
    if (rows != 28 || cols != 28) {
        throw ConfigError("MNIST images must be 28x28: " + path);
    }
    out.pixels.resize(out.count * 784);
    if (!in.read(reinterpret_cast<char *>(out.pixels.data()), out.pixels.size())) {
        throw ConfigError("truncated IDX image payload: " + path);
    }
    return out;
}

std::vector<std::uint8_t> read_idx_labels(const std::string &path, std::size_t expect) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("MNIST label file not found: " + path);
    if (read_be32(in, path) != 0x00000801u) {
        throw ConfigError("bad magic in MNIST label file: " + path);
    }
    const std::uint32_t count = read_be32(in, path);
    if (count != expect) throw ConfigError("image/label count mismatch: " + path);
    std::vector<std::uint8_t> labels(count);
    if (!in.read(reinterpret_cast<char *>(labels.data()), labels.size())) {
        throw ConfigError("truncated IDX label payload: " + path);
    }
    return labels;
}

/// Rows of digit-3 and digit-5 images as [0,1] doubles, with +/-1 labels
/// (3 -> -1, 5 -> +1).
struct FilteredPool {
    Eigen::MatrixXd x;  // n x 784
    std::vector<int> y;
};

FilteredPool load_pool(const std::string &dir, bool train) {
    const std::string img = dir + (train ? "/train-images-idx3-ubyte" : "/t10k-images-idx3-ubyte");
    const std::string lbl = dir + (train ? "/train-labels-idx1-ubyte" : "/t10k-labels-idx1-ubyte");
    const IdxImages images = read_idx_images(img);
    const std::vector<std::uint8_t> labels = read_idx_labels(lbl, images.count);

    std::size_t keep = 0;
    for (auto l : labels) keep += (l == 3 || l == 5);
    FilteredPool pool;
    pool.x.resize(keep, 784);
    pool.y.reserve(keep);
    std::size_t r = 0;
    for (std::size_t i = 0; i < images.count; ++i) {
        if (labels[i] != 3 && labels[i] != 5) continue;
        for (int k = 0; k < 784; ++k) {
            pool.x(r, k) = images.pixels[i * 784 + k] / 255.0;
        }
        pool.y.push_back(labels[i] == 3 ? -1 : 1);
        ++r;
    }
    return pool;
}

struct Pca {
    Eigen::VectorXd mean;
    Eigen::MatrixXd components;  // 784 x k
};

Pca fit_pca(const Eigen::MatrixXd &x, int k) {
    Pca pca;
    pca.mean = x.colwise().mean();
    const Eigen::MatrixXd centered = x.rowwise() - pca.mean.transpose();
    const Eigen::MatrixXd cov =
        centered.transpose() * centered / static_cast<double>(x.rows() - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success) throw ConfigError("PCA eigendecomposition failed");
    pca.components.resize(x.cols(), k);
    // Eigenvalues ascend; take the top k and fix each sign so the largest
    // magnitude entry is positive.
    for (int c = 0; c < k; ++c) {
        Eigen::VectorXd v = solver.eigenvectors().col(x.cols() - 1 - c);
        int arg = 0;
        v.cwiseAbs().maxCoeff(&arg);
        if (v(arg) < 0) v = -v;
        pca.components.col(c) = v;
    }
    return pca;
}

std::vector<std::size_t> subsample(std::size_t pool_size, std::size_t take, SplitMix64 &rng) {
    std::vector<std::size_t> idx(pool_size);
    for (std::size_t i = 0; i < pool_size; ++i) idx[i] = i;
    rng.shuffle(idx);
    idx.resize(take);
    return idx;
}

}  // namespace

PcaBasis mnist_pca_basis(const std::string &mnist_dir, int n_components) {
    const FilteredPool pool = load_pool(mnist_dir, true);
    const Pca pca = fit_pca(pool.x, n_components);
    PcaBasis basis;
    basis.mean.assign(pca.mean.data(), pca.mean.data() + pca.mean.size());
    basis.components = Matrix(784, n_components);
    for (int r = 0; r < 784; ++r) {
        for (int c = 0; c < n_components; ++c) basis.components(r, c) = pca.components(r, c);
    }
    return basis;
}

DatasetSplit build_mnist_pca(const std::string &mnist_dir, int n_components, std::uint64_t seed) {
    if (n_components < 1 || n_components > 784) {
        throw ConfigError("n_components out of range");
    }
    const FilteredPool train_pool = load_pool(mnist_dir, true);
    const FilteredPool test_pool = load_pool(mnist_dir, false);
    if (train_pool.x.rows() < 250 || test_pool.x.rows() < 250) {
        throw ConfigError("MNIST pools too small for a 250-point subsample");
    }

    const Pca pca = fit_pca(train_pool.x, n_components);
    const auto project = [&](const Eigen::MatrixXd &x) -> Eigen::MatrixXd {
        return (x.rowwise() - pca.mean.transpose()) * pca.components;
    };
    const Eigen::MatrixXd train_proj = project(train_pool.x);
    const Eigen::MatrixXd test_proj = project(test_pool.x);

    SplitMix64 train_rng(keyed_u64(seed, 0x3355, 0));
    SplitMix64 test_rng(keyed_u64(seed, 0x3355, 1));
    const auto train_idx = subsample(train_pool.x.rows(), 250, train_rng);
    const auto test_idx = subsample(test_pool.x.rows(), 250, test_rng);

    DatasetSplit split;
    split.name = "mnist-pca-" + std::to_string(n_components);
    split.feature_dim = n_components;
    Matrix raw_train, raw_test;
    std::vector<double> row(n_components);
    for (std::size_t i : train_idx) {
        for (int k = 0; k < n_components; ++k) row[k] = train_proj(i, k);
        raw_train.append_row(row);
        split.y_train.push_back(train_pool.y[i]);
    }
    for (std::size_t i : test_idx) {
        for (int k = 0; k < n_components; ++k) row[k] = test_proj(i, k);
        raw_test.append_row(row);
        split.y_test.push_back(test_pool.y[i]);
    }
    const ScalerParams scaler = fit_scaler(raw_train);
    split.x_train = apply_scaler(scaler, raw_train);
    split.x_test = apply_scaler(scaler, raw_test);
    return split;
}

}  // namespace qkbench
