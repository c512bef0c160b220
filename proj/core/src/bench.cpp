#include "qkbench/bench.hpp"

#include <array>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "qkbench/logistic.hpp"
#include "qkbench/rng.hpp"

namespace qkbench {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr std::uint64_t kSpsaSeedKey = 0x5b5a;

std::string default_data_dir() {
    const char *env = std::getenv("QKBENCH_DATA_DIR");
    return env && *env ? env : "data";
}

std::string resolve_data_dir(const RunConfig &config) {
    return config.data_dir.empty() ? default_data_dir() : config.data_dir;
}

std::string fmt2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

bool is_quantum(Method method) { return method == Method::ZZ || method == Method::Covariant; }

std::string method_name(Method method) {
    switch (method) {
        case Method::ZZ: return "zz";
        case Method::Covariant: return "covariant";
        case Method::Logistic: return "logistic";
        case Method::SvmLinear: return "svm-linear";
        case Method::SvmPoly: return "svm-poly";
        case Method::SvmRbf: return "svm-rbf";
    }
    return "?";
}

Method method_from_name(const std::string &name) {
    if (name == "zz") return Method::ZZ;
    if (name == "covariant") return Method::Covariant;
    if (name == "logistic") return Method::Logistic;
    if (name == "svm-linear") return Method::SvmLinear;
    if (name == "svm-poly") return Method::SvmPoly;
    if (name == "svm-rbf") return Method::SvmRbf;
    throw ConfigError("unknown method: " + name);
}

std::string param_name(ParamStrategy strategy) {
    return strategy == ParamStrategy::Shared ? "shared" : "dedicated";
}

ParamStrategy param_from_name(const std::string &name) {
    if (name == "shared") return ParamStrategy::Shared;
    if (name == "dedicated") return ParamStrategy::Dedicated;
    throw ConfigError("unknown parameterization: " + name);
}

const DatasetSplit &load_dataset(const RunConfig &config) {
    static std::map<std::string, DatasetSplit> cache;
    static std::mutex mutex;
    const std::string dir = resolve_data_dir(config);
    const std::string key = config.dataset + "|" + std::to_string(config.seed) + "|" + dir;

    std::scoped_lock lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    DatasetSplit split;
    if (config.dataset == "adhoc-zz") {
        split = gen_adhoc_zz(100, 0.3, config.seed);
    } else if (config.dataset == "adhoc-cov") {
        split = load_lce(dir + "/lce7.csv");
    } else if (config.dataset == "linear-iris") {
        split = load_iris(dir + "/iris.csv", IrisVariant::Linear, config.seed);
    } else if (config.dataset == "nonlinear-iris") {
        split = load_iris(dir + "/iris.csv", IrisVariant::NonLinear, config.seed);
    } else if (config.dataset == "mnist-pca-4") {
        split = build_mnist_pca(dir + "/mnist", 4, config.seed);
    } else if (config.dataset == "mnist-pca-8") {
        split = build_mnist_pca(dir + "/mnist", 8, config.seed);
    } else {
        throw ConfigError("unknown dataset: " + config.dataset);
    }
    return cache.emplace(key, std::move(split)).first->second;
}

namespace {

struct QuantumEval {
    double loss = 0.0;
    double acc_tr = 0.0;
    double acc_ts = 0.0;
};

QuantumEval eval_quantum(const EmbeddingSpec &spec, const DatasetSplit &data, double C) {
    const auto train_states = embed_all(spec, data.x_train);
    const auto test_states = embed_all(spec, data.x_test);
    auto gram = std::make_shared<KernelMatrix>(fidelity_gram(train_states));
    const SvmModel model = solve_svm_dual(gram, data.y_train, C);

    QuantumEval out;
    out.loss = model.dual_objective();
    out.acc_tr = evaluate(predict_labels(svm_decision(model, *gram)), data.y_train).accuracy;
    const KernelMatrix cross = fidelity_gram(train_states, test_states);
    out.acc_ts = evaluate(predict_labels(svm_decision(model, cross)), data.y_test).accuracy;
    return out;
}

BenchRecord run_quantum(const RunConfig &config, const DatasetSplit &data) {
    BenchRecord rec;
    EmbeddingSpec spec;
    spec.map = config.method == Method::ZZ ? FeatureMapKind::ZZ : FeatureMapKind::Covariant;
    spec.n_qubits = EmbeddingSpec::qubits_for(spec.map, data.feature_dim);
    spec.parameterization.strategy = config.param;
    spec.parameterization.theta.assign(
        config.param == ParamStrategy::Shared ? 3 : 3 * spec.n_qubits, 0.0);
    rec.n_params = spec.parameter_count();

    const QuantumEval before = eval_quantum(spec, data, config.C);
    rec.loss_before = before.loss;
    rec.acc_tr_before = before.acc_tr;
    rec.acc_ts_before = before.acc_ts;

    if (config.qkt) {
        SpsaConfig spsa;
        spsa.max_iterations = config.max_iterations;
        spsa.seed = keyed_u64(config.seed, kSpsaSeedKey);
        spsa.budget_seconds = config.budget_seconds;
        QktReport report = train_quantum_kernel(spec, data.x_train, data.y_train, config.C, spsa);

        // The zero-initialized iteration-0 loss must be the no-QKT loss: both
        // sides run the identical embed/Gram/solve path, so equality is exact.
        if (report.loss_trace.at(0) != before.loss) {
            throw std::logic_error("iteration-0 loss differs from the no-QKT loss");
        }

        EmbeddingSpec best = spec;
        best.parameterization.theta = report.best_theta;
        const QuantumEval after = eval_quantum(best, data, config.C);
        rec.loss_after = report.best_loss;
        rec.acc_tr_after = after.acc_tr;
        rec.acc_ts_after = after.acc_ts;
        rec.report = std::move(report);
    }
    return rec;
}

BenchRecord run_classical(const RunConfig &config, const DatasetSplit &data) {
    BenchRecord rec;
    if (config.method == Method::Logistic) {
        const LogisticModel model = fit_logistic(data.x_train, data.y_train, config.C);
        rec.acc_tr_before =
            evaluate(predict_labels(logistic_decision(model, data.x_train)), data.y_train)
                .accuracy;
        rec.acc_ts_before =
            evaluate(predict_labels(logistic_decision(model, data.x_test)), data.y_test).accuracy;
        return rec;
    }

    KernelKind kind = KernelKind::Linear;
    ClassicalKernelParams params;
    if (config.method == Method::SvmPoly) {
        kind = KernelKind::Polynomial;
        params.degree = degree_rule(data.feature_dim);
        params.gamma = gamma_scale(data.x_train);
        params.coef0 = 0.0;
    } else if (config.method == Method::SvmRbf) {
        kind = KernelKind::RBF;
        params.gamma = gamma_scale(data.x_train);
    }
    auto gram =
        std::make_shared<KernelMatrix>(classical_gram(kind, params, data.x_train, data.x_train));
    const SvmModel model = solve_svm_dual(gram, data.y_train, config.C);
    rec.acc_tr_before =
        evaluate(predict_labels(svm_decision(model, *gram)), data.y_train).accuracy;
    const KernelMatrix cross = classical_gram(kind, params, data.x_train, data.x_test);
    rec.acc_ts_before =
        evaluate(predict_labels(svm_decision(model, cross)), data.y_test).accuracy;
    return rec;
}

}  // namespace

BenchRecord run_benchmark(const RunConfig &config) {
    if (!is_quantum(config.method) && config.qkt) {
        throw ConfigError("qkt is only valid for quantum methods");
    }
    if (config.C <= 0) throw ConfigError("C must be positive");
    const auto t0 = std::chrono::steady_clock::now();
    const DatasetSplit &data = load_dataset(config);

    BenchRecord rec =
        is_quantum(config.method) ? run_quantum(config, data) : run_classical(config, data);
    rec.config = config;
    rec.feature_dim = data.feature_dim;
    rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

namespace {

const BenchRecord *find_record(const std::vector<BenchRecord> &records,
                               const std::string &dataset, Method method,
                               std::optional<ParamStrategy> param) {
    for (const auto &r : records) {
        if (r.config.dataset != dataset || r.config.method != method) continue;
        if (param && r.config.param != *param) continue;
        return &r;
    }
    return nullptr;
}

std::string quantum_cell(const BenchRecord *rec, bool after) {
    if (!rec) return "(missing)";
    if (!after) {
        return fmt2(*rec->loss_before) + " / " + fmt2(rec->acc_tr_before) + " - " +
               fmt2(rec->acc_ts_before);
    }
    if (!rec->loss_after) return "-";
    return fmt2(*rec->loss_after) + " / " + fmt2(*rec->acc_tr_after) + " - " +
           fmt2(*rec->acc_ts_after);
}

std::string classical_cell(const BenchRecord *rec) {
    if (!rec) return "(missing)";
    return "--- / " + fmt2(rec->acc_tr_before) + " - " + fmt2(rec->acc_ts_before);
}

struct TableRow {
    std::string label;
    std::string param;
    std::string no_qkt;
    std::string after_qkt;
};

std::vector<TableRow> table_rows(const std::vector<BenchRecord> &records,
                                 const std::string &dataset) {
    std::vector<TableRow> rows;
    const struct {
        Method method;
        ParamStrategy param;
        const char *label;
    } quantum[] = {
        {Method::ZZ, ParamStrategy::Shared, "ZZFeatureMap"},
        {Method::ZZ, ParamStrategy::Dedicated, ""},
        {Method::Covariant, ParamStrategy::Shared, "CovariantMap"},
        {Method::Covariant, ParamStrategy::Dedicated, ""},
    };
    for (const auto &q : quantum) {
        const BenchRecord *rec = find_record(records, dataset, q.method, q.param);
        std::string param = q.param == ParamStrategy::Shared ? "Shared" : "Dedicated";
        if (rec) param += " (" + std::to_string(rec->n_params) + ")";
        rows.push_back({q.label, param, quantum_cell(rec, false), quantum_cell(rec, true)});
    }

    int degree = 0;
    for (const auto &r : records) {
        if (r.config.dataset == dataset) degree = degree_rule(r.feature_dim);
    }
    const struct {
        Method method;
        std::string label;
    } classical[] = {
        {Method::Logistic, "Logistic regression"},
        {Method::SvmLinear, "SVM linear"},
        {Method::SvmPoly, degree ? "SVM poly (d=" + std::to_string(degree) + ")" : "SVM poly"},
        {Method::SvmRbf, "SVM rbf"},
    };
    for (const auto &c : classical) {
        const BenchRecord *rec = find_record(records, dataset, c.method, std::nullopt);
        rows.push_back({c.label, "", rec ? classical_cell(rec) : "(missing)", rec ? "---" : "(missing)"});
    }
    return rows;
}

}  // namespace

std::string emit_table(const std::vector<BenchRecord> &records, const std::string &dataset) {
    const auto rows = table_rows(records, dataset);
    std::array<std::size_t, 4> width = {7, 20, 6, 9};
    for (const auto &r : rows) {
        width[0] = std::max(width[0], r.label.size());
        width[1] = std::max(width[1], r.param.size());
        width[2] = std::max(width[2], r.no_qkt.size());
        width[3] = std::max(width[3], r.after_qkt.size());
    }
    const auto pad = [](const std::string &s, std::size_t w) {
        return s + std::string(w - s.size() + 2, ' ');
    };
    std::ostringstream out;
    out << "Results for the " << dataset << " dataset\n";
    out << "Quantum methods  (svc_loss / ACC_TR - ACC_TS)\n";
    out << pad("Mapping", width[0]) << pad("Parameterization (#)", width[1])
        << pad("no-QKT", width[2]) << "After QKT\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == 4) out << "Classical methods\n";
        out << pad(rows[i].label, width[0]) << pad(rows[i].param, width[1])
            << pad(rows[i].no_qkt, width[2]) << rows[i].after_qkt << "\n";
    }
    return out.str();
}

std::string emit_table_csv(const std::vector<BenchRecord> &records, const std::string &dataset) {
    const auto rows = table_rows(records, dataset);
    std::ostringstream out;
    out << "mapping,parameterization,no_qkt,after_qkt\n";
    for (const auto &r : rows) {
        out << r.label << "," << r.param << ",\"" << r.no_qkt << "\",\"" << r.after_qkt << "\"\n";
    }
    return out.str();
}

namespace {

json config_to_json(const RunConfig &c) {
    json j;
    j["dataset"] = c.dataset;
    j["method"] = method_name(c.method);
    if (is_quantum(c.method)) {
        j["param"] = param_name(c.param);
        j["qkt"] = c.qkt;
        j["iters"] = c.max_iterations;
    }
    j["C"] = c.C;
    j["seed"] = c.seed;
    if (!c.data_dir.empty()) j["data_dir"] = c.data_dir;
    if (c.budget_seconds > 0) j["budget_seconds"] = c.budget_seconds;
    return j;
}

RunConfig config_from_json(const json &j) {
    RunConfig c;
    c.dataset = j.at("dataset").get<std::string>();
    c.method = method_from_name(j.at("method").get<std::string>());
    if (j.contains("param")) c.param = param_from_name(j["param"].get<std::string>());
    c.qkt = j.value("qkt", false);
    c.max_iterations = j.value("iters", 400);
    c.C = j.value("C", 1.0);
    c.seed = j.value("seed", std::uint64_t{0});
    c.data_dir = j.value("data_dir", std::string{});
    c.budget_seconds = j.value("budget_seconds", 0.0);
    return c;
}

}  // namespace

std::string record_to_jsonl(const BenchRecord &r) {
    json j;
    j["schema"] = 1;
    j["config"] = config_to_json(r.config);
    j["feature_dim"] = r.feature_dim;
    if (r.n_params > 0) j["n_params"] = r.n_params;
    if (r.loss_before) j["loss_before"] = *r.loss_before;
    if (r.loss_after) j["loss_after"] = *r.loss_after;
    j["acc_tr_before"] = r.acc_tr_before;
    j["acc_ts_before"] = r.acc_ts_before;
    if (r.acc_tr_after) j["acc_tr_after"] = *r.acc_tr_after;
    if (r.acc_ts_after) j["acc_ts_after"] = *r.acc_ts_after;
    j["wall_seconds"] = r.wall_seconds;
    return j.dump();
}

BenchRecord record_from_jsonl(const std::string &line) {
    const json j = json::parse(line);
    if (j.value("schema", 0) != 1) throw ConfigError("unsupported record schema");
    BenchRecord r;
    r.config = config_from_json(j.at("config"));
    r.feature_dim = j.value("feature_dim", 0);
    r.n_params = j.value("n_params", 0);
    if (j.contains("loss_before")) r.loss_before = j["loss_before"].get<double>();
    if (j.contains("loss_after")) r.loss_after = j["loss_after"].get<double>();
    r.acc_tr_before = j.value("acc_tr_before", 0.0);
    r.acc_ts_before = j.value("acc_ts_before", 0.0);
    if (j.contains("acc_tr_after")) r.acc_tr_after = j["acc_tr_after"].get<double>();
    if (j.contains("acc_ts_after")) r.acc_ts_after = j["acc_ts_after"].get<double>();
    r.wall_seconds = j.value("wall_seconds", 0.0);
    return r;
}

std::vector<BenchRecord> read_records(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("records file not found: " + path);
    std::vector<BenchRecord> records;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) records.push_back(record_from_jsonl(line));
    }
    return records;
}

int run_suite(const std::string &manifest_path, const std::string &out_dir, int jobs) {
    std::vector<RunConfig> configs;
    try {
        std::ifstream in(manifest_path);
        if (!in) throw ConfigError("manifest not found: " + manifest_path);
        const json manifest = json::parse(in);
        if (manifest.value("schema", 0) != 1) throw ConfigError("manifest schema must be 1");
        for (const auto &entry : manifest.at("runs")) {
            configs.push_back(config_from_json(entry));
        }
        // Validate everything up front so a bad entry cannot corrupt a
        // half-written record set.
        const std::set<std::string> known = {"adhoc-zz",    "adhoc-cov",   "linear-iris",
                                             "nonlinear-iris", "mnist-pca-4", "mnist-pca-8"};
        for (const auto &c : configs) {
            if (!known.count(c.dataset)) throw ConfigError("unknown dataset: " + c.dataset);
            if (c.qkt && !is_quantum(c.method)) {
                throw ConfigError("qkt requires a quantum method");
            }
        }
    } catch (const std::exception &e) {
        std::cerr << "qkbench: manifest error: " << e.what() << "\n";
        return 2;
    }

    fs::create_directories(out_dir);
    std::vector<std::optional<BenchRecord>> results(configs.size());
    std::vector<std::string> errors(configs.size());
    std::atomic<std::size_t> next{0};
    const int workers = std::max(1, jobs);

    const auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= configs.size()) return;
            try {
                results[i] = run_benchmark(configs[i]);
            } catch (const std::exception &e) {
                errors[i] = e.what();
            }
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto &t : pool) t.join();
    }

    bool failed = false;
    std::ofstream records_out(out_dir + "/records.jsonl");
    std::vector<BenchRecord> records;
    std::set<std::string> datasets;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        if (!results[i]) {
            failed = true;
            std::cerr << "qkbench: run " << i << " (" << configs[i].dataset << "/"
                      << method_name(configs[i].method) << ") failed: " << errors[i] << "\n";
            continue;
        }
        records_out << record_to_jsonl(*results[i]) << "\n";
        if (results[i]->report) {
            const std::string name = "qkt_" + configs[i].dataset + "_" +
                                     method_name(configs[i].method) + "_" +
                                     param_name(configs[i].param) + ".json";
            write_qkt_report(out_dir + "/" + name, *results[i]->report);
        }
        datasets.insert(configs[i].dataset);
        records.push_back(std::move(*results[i]));
    }

    for (const auto &d : datasets) {
        std::ofstream txt(out_dir + "/table_" + d + ".txt");
        txt << emit_table(records, d);
        std::ofstream csv(out_dir + "/table_" + d + ".csv");
        csv << emit_table_csv(records, d);
    }
    return failed ? 1 : 0;
}

}  // namespace qkbench
