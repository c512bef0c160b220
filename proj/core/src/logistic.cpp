#include "qkbench/logistic.hpp"

#include <algorithm>
#include <cmath>

namespace qkbench {

namespace {

double log1p_exp(double z) {
    // log(1 + exp(z)) without overflow.
    return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double sigmoid(double z) {
    return z >= 0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z));
}

struct ObjGrad {
    double value;
    std::vector<double> grad_w;
    double grad_b;
};

ObjGrad eval(const Matrix &X, const std::vector<int> &y, const std::vector<double> &w, double b,
             double c) {
    const std::size_t m = X.rows(), d = X.cols();
    ObjGrad r{0.0, std::vector<double>(d, 0.0), 0.0};
    for (std::size_t k = 0; k < d; ++k) {
        r.value += 0.5 * w[k] * w[k];
        r.grad_w[k] = w[k];
    }
    for (std::size_t i = 0; i < m; ++i) {
        double f = b;
        for (std::size_t k = 0; k < d; ++k) f += w[k] * X(i, k);
        const double yz = y[i] * f;
        r.value += c * log1p_exp(-yz);
        const double coeff = -c * y[i] * sigmoid(-yz);
        for (std::size_t k = 0; k < d; ++k) r.grad_w[k] += coeff * X(i, k);
        r.grad_b += coeff;
    }
    return r;
}

}  // namespace

LogisticModel fit_logistic(const Matrix &X, const std::vector<int> &labels, double c) {
    if (X.rows() != labels.size()) throw ContractViolation("labels/feature row mismatch");
    bool pos = false, neg = false;
    for (int y : labels) (y == 1 ? pos : neg) = true;
    if (!pos || !neg) throw ConfigError("logistic regression needs both classes present");

    const std::size_t d = X.cols();
    std::vector<double> w(d, 0.0);
    double b = 0.0;
    double step = 1.0;

    ObjGrad cur = eval(X, labels, w, b, c);
    for (int iter = 0; iter < 1000; ++iter) {
        double gnorm = std::abs(cur.grad_b);
        double gsq = cur.grad_b * cur.grad_b;
        for (double g : cur.grad_w) {
            gnorm = std::max(gnorm, std::abs(g));
            gsq += g * g;
        }
        if (gnorm < 1e-6) break;

        // Backtracking with Armijo decrease; the accepted step seeds the next
        // iteration (doubled) so well-conditioned problems take full steps.
        double t = step;
        std::vector<double> w_try(d);
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            for (std::size_t k = 0; k < d; ++k) w_try[k] = w[k] - t * cur.grad_w[k];
            const double b_try = b - t * cur.grad_b;
            ObjGrad nxt = eval(X, labels, w_try, b_try, c);
            if (nxt.value <= cur.value - 1e-4 * t * gsq) {
                w = std::move(w_try);
                w_try.assign(d, 0.0);
                b = b_try;
                cur = std::move(nxt);
                step = 2.0 * t;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) break;  // no descent direction at double precision
    }

    LogisticModel model;
    model.weights = std::move(w);
    model.intercept = b;
    model.c = c;
    return model;
}

std::vector<double> logistic_decision(const LogisticModel &model, const Matrix &X) {
    if (X.cols() != model.weights.size()) throw ContractViolation("feature dim mismatch");
    std::vector<double> f(X.rows(), model.intercept);
    for (std::size_t i = 0; i < X.rows(); ++i) {
        for (std::size_t k = 0; k < X.cols(); ++k) f[i] += model.weights[k] * X(i, k);
    }
    return f;
}

}  // namespace qkbench
