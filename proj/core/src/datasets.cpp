#include "qkbench/datasets.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "qkbench/feature_maps.hpp"
#include "qkbench/rng.hpp"
#include "qkbench/simulator.hpp"

namespace qkbench {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPi = std::numbers::pi;

double wrap_angle(double a) {
    a = std::fmod(a, kTwoPi);
    return a < 0 ? a + kTwoPi : a;
}

}  // namespace

ScalerParams fit_scaler(const Matrix &x_train) {
    if (x_train.rows() == 0) throw ConfigError("cannot fit scaler on empty data");
    ScalerParams p;
    p.min.assign(x_train.cols(), std::numeric_limits<double>::infinity());
    p.max.assign(x_train.cols(), -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < x_train.rows(); ++i) {
        for (std::size_t j = 0; j < x_train.cols(); ++j) {
            p.min[j] = std::min(p.min[j], x_train(i, j));
            p.max[j] = std::max(p.max[j], x_train(i, j));
        }
    }
    return p;
}

Matrix apply_scaler(const ScalerParams &params, const Matrix &X) {
    if (X.cols() != params.min.size()) throw ContractViolation("scaler dimension mismatch");
    Matrix out(X.rows(), X.cols());
    for (std::size_t j = 0; j < X.cols(); ++j) {
        const double span = params.max[j] - params.min[j];
        for (std::size_t i = 0; i < X.rows(); ++i) {
            out(i, j) = span > 0 ? (X(i, j) - params.min[j]) / span * kTwoPi : kPi;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Ad-hoc-ZZ

namespace {

/// Fixed Haar-random 4x4 unitary (QR of a seeded complex Gaussian matrix
/// with the R diagonal phase-normalized) defining the labeling observable.
class AdhocZzOracle {
  public:
    explicit AdhocZzOracle(std::uint64_t seed) {
        SplitMix64 rng(keyed_u64(seed, 0x5a5au, 0x7au));
        Eigen::Matrix4cd g;
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) {
                g(r, c) = Complex{rng.next_gaussian(), rng.next_gaussian()};
            }
        }
        Eigen::HouseholderQR<Eigen::Matrix4cd> qr(g);
        Eigen::Matrix4cd q = qr.householderQ();
        const Eigen::Matrix4cd r = qr.matrixQR().triangularView<Eigen::Upper>();
        for (int c = 0; c < 4; ++c) {
            const Complex d = r(c, c);
            q.col(c) *= std::abs(d) > 0 ? d / std::abs(d) : Complex{1, 0};
        }
        v_ = q;
    }

    double expectation(double x0, double x1) const {
        const StateVector psi = run_circuit(build_zz_map(std::array{x0, x1}, 2));
        const Eigen::Vector4cd amp(psi.amplitudes[0], psi.amplitudes[1], psi.amplitudes[2],
                                   psi.amplitudes[3]);
        const Eigen::Vector4cd w = v_ * amp;
        // Z(x)Z eigenvalues by bit parity of the basis index.
        return std::norm(w(0)) - std::norm(w(1)) - std::norm(w(2)) + std::norm(w(3));
    }

  private:
    Eigen::Matrix4cd v_;
};

}  // namespace

double adhoc_zz_expectation(double x0, double x1, std::uint64_t seed) {
    return AdhocZzOracle(seed).expectation(x0, x1);
}

DatasetSplit gen_adhoc_zz(int per_class_per_split, double gap, std::uint64_t seed) {
    if (gap <= 0.0 || gap >= 1.0) throw ConfigError("gap must be in (0, 1)");
    if (per_class_per_split < 1) throw ConfigError("need at least one sample per class");
    const AdhocZzOracle oracle(seed);

    const int quota = per_class_per_split;
    int want[2][2] = {{quota, quota}, {quota, quota}};  // [split][class]
    Matrix raw_train, raw_test;
    std::vector<int> y_train, y_test;

    constexpr std::uint64_t kMaxDraws = 10'000'000;
    std::uint64_t accepted = 0;
    for (std::uint64_t cand = 0;; ++cand) {
        if (cand >= kMaxDraws) {
            if (static_cast<double>(accepted) / static_cast<double>(cand) < 1e-3) {
                throw ConfigError("ad-hoc-ZZ rejection sampling stalled (pathological unitary)");
            }
        }
        const double x0 = keyed_uniform(seed, cand, 0) * kTwoPi;
        const double x1 = keyed_uniform(seed, cand, 1) * kTwoPi;
        const double e = oracle.expectation(x0, x1);
        if (std::abs(e) < gap) continue;
        ++accepted;
        const int cls = e > 0 ? 1 : 0;
        const std::array<double, 2> x{x0, x1};
        if (want[0][cls] > 0) {
            --want[0][cls];
            raw_train.append_row(x);
            y_train.push_back(cls == 1 ? 1 : -1);
        } else if (want[1][cls] > 0) {
            --want[1][cls];
            raw_test.append_row(x);
            y_test.push_back(cls == 1 ? 1 : -1);
        }
        if (want[0][0] + want[0][1] + want[1][0] + want[1][1] == 0) break;
    }

    DatasetSplit split;
    split.name = "adhoc-zz";
    split.feature_dim = 2;
    const ScalerParams scaler = fit_scaler(raw_train);
    split.x_train = apply_scaler(scaler, raw_train);
    split.x_test = apply_scaler(scaler, raw_test);
    split.y_train = std::move(y_train);
    split.y_test = std::move(y_test);
    return split;
}

// ---------------------------------------------------------------------------
// LCE (Ad-hoc-COV)

namespace {

/// Stabilizer patterns of the linear chain graph state: for a vertex subset
/// T, the product of generators K_j = X_j Z_{N(j)} over j in T carries X on
/// T itself and Z wherever an odd number of neighbors lies in T.
struct ChainStabilizer {
    std::vector<int> x_part;  // 1 where the element acts with X
    std::vector<int> z_part;  // 1 where it acts with Z (possibly on top of X)
};

ChainStabilizer chain_stabilizer(const std::vector<int> &subset, int n) {
    ChainStabilizer s;
    s.x_part = subset;
    s.z_part.assign(n, 0);
    for (int j = 0; j < n; ++j) {
        if (!subset[j]) continue;
        if (j > 0) s.z_part[j - 1] ^= 1;
        if (j + 1 < n) s.z_part[j + 1] ^= 1;
    }
    return s;
}

}  // namespace

DatasetSplit gen_lce(int n_qubits, int per_class_per_split, double noise, std::uint64_t seed) {
    if (n_qubits < 2) throw ConfigError("LCE generator needs at least 2 qubits");
    const int n = n_qubits;
    SplitMix64 rng(keyed_u64(seed, 0x1cee));

    // The negative class flips the RX angle by pi on an odd-size qubit set;
    // class representatives share their RZ angles.
    std::vector<double> gx(n), gz(n);
    for (int q = 0; q < n; ++q) {
        gx[q] = rng.next_uniform() * kTwoPi;
        gz[q] = rng.next_uniform() * kTwoPi;
    }
    std::vector<int> flip(n, 0);
    {
        std::vector<int> idx(n);
        for (int q = 0; q < n; ++q) idx[q] = q;
        rng.shuffle(idx);
        const int flips = std::min(n, 3);
        for (int q = 0; q < flips; ++q) flip[idx[q]] = 1;
    }

    // Pattern pool: 16 distinct even-size vertex subsets covering each flip
    // qubit exactly half of the time, so the pi class shift leaves every
    // single-feature marginal unchanged. Even sizes keep pairwise symmetric
    // differences even, hence no pattern pair can alias the odd flip set.
    constexpr int kPoolSize = 16;
    std::vector<std::vector<int>> pool;
    while (true) {
        pool.clear();
        std::set<std::vector<int>> seen;
        while (static_cast<int>(pool.size()) < kPoolSize) {
            std::vector<int> subset(n, 0);
            int size = 0;
            for (int q = 0; q < n; ++q) {
                subset[q] = rng.next_uniform() < 0.5 ? 1 : 0;
                size += subset[q];
            }
            if (size % 2 != 0) continue;
            if (seen.insert(subset).second) pool.push_back(subset);
        }
        bool balanced = true;
        for (int q = 0; q < n && balanced; ++q) {
            if (!flip[q]) continue;
            int count = 0;
            for (const auto &t : pool) count += t[q];
            balanced = (count == kPoolSize / 2);
        }
        if (balanced) break;
    }

    const auto sample_point = [&](int cls) {
        const auto &subset = pool[rng.next_below(kPoolSize)];
        const ChainStabilizer s = chain_stabilizer(subset, n);
        std::vector<double> features(2 * n);
        for (int q = 0; q < n; ++q) {
            const double class_x = gx[q] + (cls < 0 && flip[q] ? kPi : 0.0);
            const double ax = class_x + kPi * s.x_part[q] + noise * rng.next_gaussian();
            const double az = kPi * s.z_part[q] + (s.x_part[q] ? -1.0 : 1.0) * gz[q] +
                              noise * rng.next_gaussian();
            features[2 * q] = wrap_angle(ax);
            features[2 * q + 1] = wrap_angle(az);
        }
        return features;
    };

    DatasetSplit split;
    split.name = "adhoc-cov";
    split.feature_dim = 2 * n;
    for (int i = 0; i < per_class_per_split; ++i) {
        for (int cls : {1, -1}) {
            split.x_train.append_row(sample_point(cls));
            split.y_train.push_back(cls);
        }
    }
    for (int i = 0; i < per_class_per_split; ++i) {
        for (int cls : {1, -1}) {
            split.x_test.append_row(sample_point(cls));
            split.y_test.push_back(cls);
        }
    }
    return split;
}

DatasetSplit load_lce(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("LCE dataset file not found: " + path);
    DatasetSplit raw = read_dataset_csv(path);
    if (raw.feature_dim != 14) {
        throw ConfigError("LCE dataset must have 14 features, got " +
                          std::to_string(raw.feature_dim));
    }
    const auto count = [](const std::vector<int> &y, int cls) {
        return std::count(y.begin(), y.end(), cls);
    };
    if (count(raw.y_train, 1) != 30 || count(raw.y_train, -1) != 30 ||
        count(raw.y_test, 1) != 30 || count(raw.y_test, -1) != 30) {
        throw ConfigError("LCE dataset must hold 30 points per label per split");
    }
    raw.name = "adhoc-cov";
    const ScalerParams scaler = fit_scaler(raw.x_train);
    raw.x_train = apply_scaler(scaler, raw.x_train);
    raw.x_test = apply_scaler(scaler, raw.x_test);
    return raw;
}

// ---------------------------------------------------------------------------
// IRIS

DatasetSplit load_iris(const std::string &iris_csv_path, IrisVariant variant,
                       std::uint64_t seed) {
    std::ifstream in(iris_csv_path);
    if (!in) throw ConfigError("iris table not found: " + iris_csv_path);

    const std::string neg = variant == IrisVariant::Linear ? "setosa" : "versicolor";
    const std::string pos = variant == IrisVariant::Linear ? "versicolor" : "virginica";

    Matrix features[2];
    std::string line;
    std::getline(in, line);  // header
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::array<double, 4> row{};
        for (int j = 0; j < 4; ++j) {
            if (!std::getline(ss, cell, ',')) {
                throw ConfigError("iris parse error at line " + std::to_string(line_no));
            }
            row[j] = std::stod(cell);
        }
        std::getline(ss, cell);
        if (cell == neg) features[0].append_row(row);
        else if (cell == pos) features[1].append_row(row);
    }
    if (features[0].rows() != 50 || features[1].rows() != 50) {
        throw ConfigError("iris table must hold 50 rows of each selected species");
    }

    DatasetSplit split;
    split.name = variant == IrisVariant::Linear ? "linear-iris" : "nonlinear-iris";
    split.feature_dim = 4;
    Matrix raw_train, raw_test;
    for (int cls = 0; cls < 2; ++cls) {
        std::vector<int> order(50);
        for (int i = 0; i < 50; ++i) order[i] = i;
        SplitMix64 rng(keyed_u64(seed, 0x1995, cls));
        rng.shuffle(order);
        for (int i = 0; i < 50; ++i) {
            const auto row = features[cls].row(order[i]);
            if (i < 35) {
                raw_train.append_row(row);
                split.y_train.push_back(cls == 0 ? -1 : 1);
            } else {
                raw_test.append_row(row);
                split.y_test.push_back(cls == 0 ? -1 : 1);
            }
        }
    }
    const ScalerParams scaler = fit_scaler(raw_train);
    split.x_train = apply_scaler(scaler, raw_train);
    split.x_test = apply_scaler(scaler, raw_test);
    return split;
}

// ---------------------------------------------------------------------------
// Dump format

void dump_dataset_csv(const std::string &path, const DatasetSplit &split) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path + " for writing");
    for (int j = 1; j <= split.feature_dim; ++j) out << "f" << j << ",";
    out << "label,split\n";
    char buf[64];
    const auto write_rows = [&](const Matrix &x, const std::vector<int> &y, const char *tag) {
        for (std::size_t i = 0; i < x.rows(); ++i) {
            for (std::size_t j = 0; j < x.cols(); ++j) {
                std::snprintf(buf, sizeof buf, "%.17g", x(i, j));
                out << buf << ",";
            }
            out << y[i] << "," << tag << "\n";
        }
    };
    write_rows(split.x_train, split.y_train, "train");
    write_rows(split.x_test, split.y_test, "test");
}

DatasetSplit read_dataset_csv(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("dataset file not found: " + path);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("empty dataset file: " + path);

    int dim = 0;
    {
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cols;
        while (std::getline(ss, cell, ',')) cols.push_back(cell);
        if (cols.size() < 3 || cols[cols.size() - 2] != "label" || cols.back() != "split") {
            throw ConfigError("dataset header must be f1..fd,label,split: " + path);
        }
        dim = static_cast<int>(cols.size()) - 2;
    }

    DatasetSplit split;
    split.feature_dim = dim;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> row(dim);
        try {
            for (int j = 0; j < dim; ++j) {
                if (!std::getline(ss, cell, ',')) throw std::invalid_argument("short row");
                row[j] = std::stod(cell);
            }
            if (!std::getline(ss, cell, ',')) throw std::invalid_argument("missing label");
            const int label = std::stoi(cell);
            if (label != 1 && label != -1) throw std::invalid_argument("label must be +/-1");
            if (!std::getline(ss, cell)) throw std::invalid_argument("missing split tag");
            if (cell == "train") {
                split.x_train.append_row(row);
                split.y_train.push_back(label);
            } else if (cell == "test") {
                split.x_test.append_row(row);
                split.y_test.push_back(label);
            } else {
                throw std::invalid_argument("split tag must be train or test");
            }
        } catch (const std::exception &e) {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return split;
}

}  // namespace qkbench
