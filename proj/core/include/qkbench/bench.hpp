#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qkbench/datasets.hpp"
#include "qkbench/feature_maps.hpp"
#include "qkbench/training.hpp"

namespace qkbench {

enum class Method { ZZ, Covariant, Logistic, SvmLinear, SvmPoly, SvmRbf };

bool is_quantum(Method method);
std::string method_name(Method method);
Method method_from_name(const std::string &name);
std::string param_name(ParamStrategy strategy);
ParamStrategy param_from_name(const std::string &name);

/// Everything needed to reproduce one benchmark run. All randomness (dataset
/// generation, splits, subsampling, SPSA) derives from `seed`.
struct RunConfig {
    std::string dataset;
    Method method = Method::ZZ;
    ParamStrategy param = ParamStrategy::Shared;  // quantum methods only
    bool qkt = false;                             // quantum methods only
    int max_iterations = 400;
    double C = 1.0;
    std::uint64_t seed = 0;
    std::string data_dir;        // empty: $QKBENCH_DATA_DIR, else "data"
    double budget_seconds = 0.0; // 0 = unlimited
};

/// Result triple(s) for one run. Quantum runs always carry the no-QKT
/// ("before") values; runs with qkt=true additionally carry the after-QKT
/// values at the best theta. Classical runs carry accuracies only.
struct BenchRecord {
    RunConfig config;
    int feature_dim = 0;
    int n_params = 0;  // quantum parameter count, 0 for classical
    std::optional<double> loss_before;
    std::optional<double> loss_after;
    double acc_tr_before = 0.0;
    double acc_ts_before = 0.0;
    std::optional<double> acc_tr_after;
    std::optional<double> acc_ts_after;
    double wall_seconds = 0.0;
    std::optional<QktReport> report;
};

/// Loads the dataset named by `config` (cached per (dataset, seed, dir)).
const DatasetSplit &load_dataset(const RunConfig &config);

/// Full pipeline: load and scale data, build kernels (after QKT when
/// enabled), fit the classifier, evaluate train/test accuracy.
BenchRecord run_benchmark(const RunConfig &config);

/// Plain-text table over one dataset's records in the benchmark layout:
/// quantum rows (mapping x parameterization, no-QKT and after-QKT columns),
/// then classical rows with "---" loss placeholders.
std::string emit_table(const std::vector<BenchRecord> &records, const std::string &dataset);

/// Same cells, comma-separated.
std::string emit_table_csv(const std::vector<BenchRecord> &records, const std::string &dataset);

std::string record_to_jsonl(const BenchRecord &record);
BenchRecord record_from_jsonl(const std::string &line);

std::vector<BenchRecord> read_records(const std::string &path);

/// Runs every config in the manifest, persisting records (JSON lines), QKT
/// reports, and per-dataset tables under out_dir. Returns 0 on success, 2 on
/// a manifest error (nothing is run), 1 if any run failed.
int run_suite(const std::string &manifest_path, const std::string &out_dir, int jobs = 1);

}  // namespace qkbench
