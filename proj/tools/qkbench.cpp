// qkbench: quantum kernel estimation / training benchmark harness.
//
// Subcommands:
//   run       one (dataset, method) pipeline, record printed as JSON
//   suite     every run in a manifest, with records/tables persisted
//   table     render the benchmark table for one dataset from saved records
//   gen-data  emit a synthetic dataset as CSV

#include <iostream>
#include <fstream>

#include <CLI11.hpp>

#include "qkbench/bench.hpp"

namespace {

int cmd_run(const qkbench::RunConfig &config, const std::string &out_path) {
    const qkbench::BenchRecord record = qkbench::run_benchmark(config);
    const std::string line = qkbench::record_to_jsonl(record);
    std::cout << line << "\n";
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::app);
        if (!out) throw qkbench::ConfigError("cannot open " + out_path);
        out << line << "\n";
        if (record.report) {
            qkbench::write_qkt_report(out_path + ".qkt.json", *record.report);
        }
    }
    return 0;
}

int cmd_table(const std::string &in_path, const std::string &dataset) {
    const auto records = qkbench::read_records(in_path);
    std::cout << qkbench::emit_table(records, dataset);
    return 0;
}

int cmd_gen_data(const std::string &dataset, std::uint64_t seed, double gap,
                 const std::string &out_path) {
    qkbench::DatasetSplit split;
    if (dataset == "adhoc-zz") {
        split = qkbench::gen_adhoc_zz(100, gap, seed);
    } else if (dataset == "adhoc-cov") {
        split = qkbench::gen_lce(7, 30, 0.1, seed);
    } else {
        throw qkbench::ConfigError("gen-data supports adhoc-zz and adhoc-cov, got " + dataset);
    }
    qkbench::dump_dataset_csv(out_path, split);
    std::cout << "wrote " << out_path << " (" << split.x_train.rows() << " train, "
              << split.x_test.rows() << " test)\n";
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"quantum kernel estimation / training benchmark"};
    app.require_subcommand(1);

    qkbench::RunConfig config;
    std::string param = "shared";
    std::string out_path;

    CLI::App *run = app.add_subcommand("run", "run one benchmark configuration");
    run->add_option("--dataset", config.dataset,
                    "adhoc-zz | adhoc-cov | linear-iris | nonlinear-iris | "
                    "mnist-pca-4 | mnist-pca-8")
        ->required();
    std::string method = "zz";
    run->add_option("--method", method,
                    "zz | covariant | logistic | svm-linear | svm-poly | svm-rbf")
        ->required();
    run->add_option("--param", param, "shared | dedicated (quantum methods)");
    run->add_flag("--qkt", config.qkt, "train the kernel parameters");
    run->add_option("--iters", config.max_iterations, "SPSA iteration cap (default 400)");
    run->add_option("--seed", config.seed, "seed for data and optimizer randomness");
    run->add_option("--C", config.C, "SVM regularization (default 1)");
    run->add_option("--data-dir", config.data_dir, "dataset root (default $QKBENCH_DATA_DIR)");
    run->add_option("--budget-seconds", config.budget_seconds,
                    "abort QKT after this much wall time, keeping the best theta");
    run->add_option("--out", out_path, "append the record to this JSON-lines file");

    CLI::App *suite = app.add_subcommand("suite", "run every configuration in a manifest");
    std::string manifest_path, suite_out = "out";
    int jobs = 1;
    suite->add_option("--manifest", manifest_path, "manifest JSON path")->required();
    suite->add_option("--out", suite_out, "output directory (default ./out)");
    suite->add_option("--jobs", jobs, "independent configs run in parallel");

    CLI::App *table = app.add_subcommand("table", "render a dataset table from records");
    std::string table_in, table_dataset;
    table->add_option("--in", table_in, "records.jsonl path")->required();
    table->add_option("--dataset", table_dataset, "dataset id")->required();

    CLI::App *gen = app.add_subcommand("gen-data", "emit a synthetic dataset as CSV");
    std::string gen_dataset = "adhoc-zz", gen_out = "dataset.csv";
    std::uint64_t gen_seed = 0;
    double gen_gap = 0.3;
    gen->add_option("--dataset", gen_dataset, "adhoc-zz | adhoc-cov")->required();
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("--gap", gen_gap, "adhoc-zz separation gap (default 0.3)");
    gen->add_option("--out", gen_out, "output CSV path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            config.method = qkbench::method_from_name(method);
            config.param = qkbench::param_from_name(param);
            return cmd_run(config, out_path);
        }
        if (suite->parsed()) return qkbench::run_suite(manifest_path, suite_out, jobs);
        if (table->parsed()) return cmd_table(table_in, table_dataset);
        if (gen->parsed()) return cmd_gen_data(gen_dataset, gen_seed, gen_gap, gen_out);
    } catch (const qkbench::ConfigError &e) {
        std::cerr << "qkbench: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "qkbench: error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
