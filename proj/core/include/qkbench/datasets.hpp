#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qkbench/matrix.hpp"

namespace qkbench {

/// Per-feature min/max learned from training data only.
struct ScalerParams {
    std::vector<double> min;
    std::vector<double> max;
};

ScalerParams fit_scaler(const Matrix &x_train);

/// Affine map sending the training range to [0, 2pi] per feature. Values
/// outside the training range pass through unclipped; degenerate columns
/// (max == min) map to the constant pi.
Matrix apply_scaler(const ScalerParams &params, const Matrix &X);

struct DatasetSplit {
    std::string name;
    int feature_dim = 0;
    Matrix x_train, x_test;
    std::vector<int> y_train, y_test;
};

/// Synthetic 2-feature dataset labeled by the ZZ feature map itself: a fixed
/// Haar-random 4x4 unitary V defines e(x) = <phi(x)| V^dag (Z(x)Z) V |phi(x)>
/// and points are rejection-sampled until |e(x)| >= gap, labeled sign(e).
DatasetSplit gen_adhoc_zz(int per_class_per_split, double gap, std::uint64_t seed);

/// e(x) for the generator above (exposed so emitted labels can be audited).
double adhoc_zz_expectation(double x0, double x1, std::uint64_t seed);

/// Loads the labeling-cosets-with-error dataset: CSV with header
/// f1..f14,label,split; exactly 30 points per label per split. Features are
/// rescaled with training-set parameters.
DatasetSplit load_lce(const std::string &path);

/// Coset-structured instance generator for the covariant map on a linear
/// entangling chain (used to produce the vendored LCE file). Each point is a
/// per-qubit (RX, RZ) angle pair g_y * s * e built from a class
/// representative g_y, a random stabilizer element s of the chain graph
/// state, and small angle noise e.
DatasetSplit gen_lce(int n_qubits, int per_class_per_split, double noise, std::uint64_t seed);

enum class IrisVariant { Linear, NonLinear };

/// 35/35 train and 15/15 test per class via a seeded stratified shuffle of
/// the canonical 150-row table. Linear: setosa (-1) vs versicolor (+1);
/// NonLinear: versicolor (-1) vs virginica (+1).
DatasetSplit load_iris(const std::string &iris_csv_path, IrisVariant variant, std::uint64_t seed);

/// Binary 3 (-1) vs 5 (+1) task from MNIST IDX files: pixels scaled to
/// [0, 1], PCA (mean-centering plus top-k covariance eigenvectors, largest
/// component entry made positive) fit on the filtered training pool, then a
/// seeded 250-point subsample per split.
DatasetSplit build_mnist_pca(const std::string &mnist_dir, int n_components, std::uint64_t seed);

/// PCA basis exposed for orthogonality/reconstruction checks: d x k matrix
/// of components plus the pool mean.
struct PcaBasis {
    Matrix components;  // column k = k-th principal axis
    std::vector<double> mean;
};

PcaBasis mnist_pca_basis(const std::string &mnist_dir, int n_components);

/// Canonical dump format: header f1..fd,label,split.
void dump_dataset_csv(const std::string &path, const DatasetSplit &split);

/// Reads the dump format back (no rescaling applied).
DatasetSplit read_dataset_csv(const std::string &path);

}  // namespace qkbench
