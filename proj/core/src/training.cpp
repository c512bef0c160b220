#include "qkbench/training.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "qkbench/rng.hpp"

namespace qkbench {

namespace {

// Draw purposes keyed into the counter stream so concurrent evaluation
// cannot reorder anything.
enum DrawPurpose : std::uint64_t { kGradDelta = 1, kHessDelta = 2, kCalibDelta = 3 };

std::vector<double> bernoulli_delta(std::uint64_t seed, std::uint64_t iteration,
                                    std::uint64_t purpose, std::size_t dim) {
    std::vector<double> delta(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        delta[i] = keyed_sign(seed, iteration, purpose, i);
    }
    return delta;
}

std::vector<double> shifted(const std::vector<double> &theta, const std::vector<double> &d1,
                            double c1, const std::vector<double> *d2 = nullptr, double c2 = 0.0) {
    std::vector<double> out(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        out[i] = theta[i] + c1 * d1[i] + (d2 ? c2 * (*d2)[i] : 0.0);
    }
    return out;
}

}  // namespace

double target_alignment(const KernelMatrix &gram, const std::vector<int> &labels) {
    if (gram.rows != gram.cols) throw ContractViolation("alignment needs a square Gram");
    if (gram.rows != labels.size()) throw ContractViolation("labels/Gram size mismatch");
    const std::size_t m = labels.size();
    double num = 0.0, ksq = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double k = gram.at(i, j);
            num += labels[i] * labels[j] * k;
            ksq += k * k;
        }
    }
    if (ksq <= 0.0) throw ConfigError("alignment undefined for a zero Gram matrix");
    return num / std::sqrt(ksq * static_cast<double>(m) * static_cast<double>(m));
}

SvcLoss svc_loss(std::shared_ptr<const KernelMatrix> gram, const std::vector<int> &labels,
                 double C) {
    SvmModel model = solve_svm_dual(std::move(gram), labels, C);
    SvcLoss loss;
    loss.value = model.dual_objective();
    loss.alphas = std::move(model.alphas);
    return loss;
}

SvcLoss svc_loss(const KernelMatrix &gram, const std::vector<int> &labels, double C) {
    return svc_loss(std::make_shared<KernelMatrix>(gram), labels, C);
}

std::vector<double> spsa_gradient_estimate(const Objective &objective,
                                           const std::vector<double> &theta, double c,
                                           std::uint64_t seed, std::uint64_t iteration) {
    const auto delta = bernoulli_delta(seed, iteration, kGradDelta, theta.size());
    const double f_plus = objective(shifted(theta, delta, c));
    const double f_minus = objective(shifted(theta, delta, -c));
    std::vector<double> grad(theta.size());
    const double scale = (f_plus - f_minus) / (2.0 * c);
    for (std::size_t i = 0; i < theta.size(); ++i) grad[i] = scale / delta[i];
    return grad;
}

QktReport spsa_minimize(const Objective &objective, std::vector<double> theta0,
                        const SpsaConfig &config) {
    using clock = std::chrono::steady_clock;
    const auto t_start = clock::now();
    const auto out_of_budget = [&] {
        if (config.budget_seconds <= 0.0) return false;
        return std::chrono::duration<double>(clock::now() - t_start).count() >
               config.budget_seconds;
    };

    if (config.max_iterations < 0) throw ConfigError("max_iterations must be >= 0");
    const std::size_t dim = theta0.size();
    QktReport report;
    report.seed = config.seed;

    const auto eval = [&](const std::vector<double> &t) {
        const double v = objective(t);
        ++report.evaluations;
        if (!std::isfinite(v)) {
            throw std::runtime_error("SPSA objective returned a non-finite value");
        }
        return v;
    };

    const double A =
        config.stability_a >= 0 ? config.stability_a : 0.1 * config.max_iterations;
    const double c0 = config.perturbation > 0 ? config.perturbation : 0.2;

    // Calibration: average gradient magnitude over 25 perturbation pairs at
    // theta0 fixes the learning rate so the expected first step has
    // magnitude 2*pi/10.
    double a0 = config.learning_rate;
    if (a0 <= 0 && config.max_iterations > 0) {
        constexpr int kCalibPairs = 25;
        constexpr double kTargetStep = 2.0 * std::numbers::pi / 10.0;
        double avg_mag = 0.0;
        for (int s = 0; s < kCalibPairs; ++s) {
            const auto delta = bernoulli_delta(config.seed, s, kCalibDelta, dim);
            const double f_plus = eval(shifted(theta0, delta, c0));
            const double f_minus = eval(shifted(theta0, delta, -c0));
            avg_mag += std::abs(f_plus - f_minus) / (2.0 * c0);
        }
        avg_mag /= kCalibPairs;
        a0 = avg_mag > 1e-12 ? kTargetStep / avg_mag * std::pow(A + 1.0, config.alpha_exp)
                             : 1.0;
    }

    std::vector<double> theta = theta0;
    report.loss_trace.push_back(eval(theta));
    report.theta_trace.push_back(theta);
    report.best_theta = theta;
    report.best_loss = report.loss_trace.front();

    Eigen::MatrixXd hessian_avg = Eigen::MatrixXd::Zero(dim, dim);

    for (int k = 0; k < config.max_iterations; ++k) {
        if (out_of_budget()) break;
        const double a_k = a0 / std::pow(k + 1.0 + A, config.alpha_exp);
        const double c_k = c0 / std::pow(k + 1.0, config.gamma_exp);

        const auto delta1 = bernoulli_delta(config.seed, k, kGradDelta, dim);
        const auto plus = shifted(theta, delta1, c_k);
        const auto minus = shifted(theta, delta1, -c_k);
        const double f_plus = eval(plus);
        const double f_minus = eval(minus);
        std::vector<double> grad(dim);
        const double gscale = (f_plus - f_minus) / (2.0 * c_k);
        for (std::size_t i = 0; i < dim; ++i) grad[i] = gscale / delta1[i];

        // Rank-one curvature sample from a second perturbation pair (2-SPSA),
        // averaged with the running Hessian estimate.
        const auto delta2 = bernoulli_delta(config.seed, k, kHessDelta, dim);
        const double f_pp = eval(shifted(theta, delta1, c_k, &delta2, c_k));
        const double f_mp = eval(shifted(theta, delta1, -c_k, &delta2, c_k));
        const double h_scale = ((f_pp - f_plus) - (f_mp - f_minus)) / (2.0 * c_k * c_k);
        Eigen::MatrixXd h_sample(dim, dim);
        for (std::size_t r = 0; r < dim; ++r) {
            for (std::size_t c = 0; c < dim; ++c) {
                h_sample(r, c) =
                    0.5 * h_scale * (1.0 / (delta1[r] * delta2[c]) + 1.0 / (delta2[r] * delta1[c]));
            }
        }
        hessian_avg = (static_cast<double>(k) / (k + 1.0)) * hessian_avg +
                      (1.0 / (k + 1.0)) * h_sample;

        // Precondition with the regularized Hessian; drop to a first-order
        // step if the solve is ill-conditioned.
        Eigen::VectorXd g = Eigen::Map<const Eigen::VectorXd>(grad.data(), dim);
        Eigen::MatrixXd h_reg =
            hessian_avg + config.hessian_regularization * Eigen::MatrixXd::Identity(dim, dim);
        Eigen::VectorXd step;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h_reg);
        const double lo = es.eigenvalues().cwiseAbs().minCoeff();
        const double hi = es.eigenvalues().cwiseAbs().maxCoeff();
        if (lo <= 0.0 || hi / lo > 1e8) {
            step = g;
        } else {
            step = h_reg.ldlt().solve(g);
        }

        for (std::size_t i = 0; i < dim; ++i) theta[i] -= a_k * step(i);

        const double f_new = eval(theta);
        report.loss_trace.push_back(f_new);
        report.theta_trace.push_back(theta);
        if (f_new < report.best_loss) {
            report.best_loss = f_new;
            report.best_theta = theta;
        }
    }
    return report;
}

QktReport train_quantum_kernel(const EmbeddingSpec &spec, const Matrix &x_train,
                               const std::vector<int> &labels, double C,
                               const SpsaConfig &config) {
    EmbeddingSpec working = spec;
    const int n_params = spec.parameter_count();
    const Objective objective = [&, working](const std::vector<double> &theta) mutable {
        working.parameterization.theta = theta;
        return svc_loss(fidelity_gram(embed_all(working, x_train)), labels, C).value;
    };
    return spsa_minimize(objective, std::vector<double>(n_params, 0.0), config);
}

std::string qkt_report_to_json(const QktReport &report) {
    nlohmann::json j;
    j["loss_trace"] = report.loss_trace;
    j["theta_trace"] = report.theta_trace;
    j["best_theta"] = report.best_theta;
    j["best_loss"] = report.best_loss;
    j["evaluations"] = report.evaluations;
    j["seed"] = report.seed;
    return j.dump(2);
}

void write_qkt_report(const std::string &path, const QktReport &report) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path + " for writing");
    out << qkt_report_to_json(report) << "\n";
}

}  // namespace qkbench
