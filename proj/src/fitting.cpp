#include "primedensity/fitting.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include "primedensity/errors.hpp"

namespace primedensity {

namespace {

Eigen::VectorXd model_values(const Eigen::VectorXd& ys, const FitParams& p) {
    return (p.a * ys.cwiseInverse().array() + p.b * (p.c * ys.array()).exp() + p.d).matrix();
}

double sum_of_squares(const Eigen::VectorXd& r) { return r.squaredNorm(); }

}  // namespace

void FitOptions::validate() const {
    if (max_iterations < 1) throw PreconditionError("fit: max_iterations must be >= 1");
    if (!(gradient_tolerance > 0) || !(initial_damping > 0) || !(damping_up > 0) || !(damping_down > 0) ||
        !(jacobian_step > 0) || !(max_damping > 0))
        throw PreconditionError("fit: tolerances, damping factors and step must be positive");
}

Eigen::MatrixXd numeric_jacobian(const FDataset& dataset, const FitParams& params, double step) {
    if (!(step > 0)) throw PreconditionError("numeric_jacobian: step must be > 0");
    const Eigen::VectorXd ys = dataset.ys();
    const Eigen::Vector4d p0 = params.vector();
    Eigen::MatrixXd J(ys.size(), 4);
    for (int j = 0; j < 4; ++j) {
        const double h = step * std::max(std::abs(p0(j)), 1.0);
        Eigen::Vector4d plus = p0, minus = p0;
        plus(j) += h;
        minus(j) -= h;
        J.col(j) = (model_values(ys, FitParams::from_vector(plus)) - model_values(ys, FitParams::from_vector(minus))) /
                   (plus(j) - minus(j));
    }
    return J;
}

Eigen::MatrixXd analytic_jacobian(const FDataset& dataset, const FitParams& params) {
    Eigen::MatrixXd J(static_cast<Eigen::Index>(dataset.size()), 4);
    for (std::size_t i = 0; i < dataset.size(); ++i)
        J.row(static_cast<Eigen::Index>(i)) = f_hat_gradient(dataset[i].y, params).transpose();
    return J;
}

FitResult fit_lm(const FDataset& dataset, const FitParams& init, const FitOptions& options) {
    options.validate();
    if (dataset.size() < 4) throw PreconditionError("fit_lm: need at least 4 samples for 4 parameters");
    if (!init.vector().allFinite()) throw PreconditionError("fit_lm: initial parameters must be finite");

    const Eigen::VectorXd ys = dataset.ys();
    const Eigen::VectorXd fs = dataset.fs();

    FitResult result;
    Eigen::Vector4d p = init.vector();
    Eigen::VectorXd r = fs - model_values(ys, init);
    double sse = sum_of_squares(r);
    if (!std::isfinite(sse)) throw PreconditionError("fit_lm: model is not finite at the initial parameters");
    result.sse_history.push_back(sse);

    double lambda = options.initial_damping;
    Eigen::MatrixXd J = numeric_jacobian(dataset, init, options.jacobian_step);
    Eigen::Vector4d g = J.transpose() * r;

    int iter = 0;
    for (; iter < options.max_iterations; ++iter) {
        if (g.lpNorm<Eigen::Infinity>() < options.gradient_tolerance) {
            result.converged = true;
            break;
        }
        const Eigen::Matrix4d JtJ = J.transpose() * J;
        for (;;) {
            const Eigen::Matrix4d A = JtJ + lambda * Eigen::Matrix4d::Identity();
            const Eigen::Vector4d delta = A.ldlt().solve(g);
            const Eigen::Vector4d trial = p + delta;
            Eigen::VectorXd r_trial = fs - model_values(ys, FitParams::from_vector(trial));
            const double sse_trial = sum_of_squares(r_trial);
            if (delta.allFinite() && std::isfinite(sse_trial) && sse_trial < sse) {
                p = trial;
                r = std::move(r_trial);
                sse = sse_trial;
                lambda *= options.damping_down;
                break;
            }
            lambda *= options.damping_up;
            if (lambda > options.max_damping) {
                throw NumericalError("fit_lm: damping exceeded " + std::to_string(options.max_damping) +
                                     " (gradient norm " + std::to_string(g.lpNorm<Eigen::Infinity>()) + ")");
            }
        }
        result.sse_history.push_back(sse);
        J = numeric_jacobian(dataset, FitParams::from_vector(p), options.jacobian_step);
        g = J.transpose() * r;
    }
    if (!result.converged && g.lpNorm<Eigen::Infinity>() < options.gradient_tolerance) result.converged = true;

    result.params = FitParams::from_vector(p);
    result.sse = sse;
    result.iterations = iter;
    result.gradient_norm = g.lpNorm<Eigen::Infinity>();

    const auto dof = static_cast<double>(dataset.size()) - 4.0;
    if (dof > 0) {
        const Eigen::Matrix4d JtJ = J.transpose() * J;
        Eigen::FullPivLU<Eigen::Matrix4d> lu(JtJ);
        if (lu.isInvertible()) {
            const Eigen::Matrix4d cov = lu.inverse() * (sse / dof);
            result.standard_errors = cov.diagonal().cwiseMax(0.0).cwiseSqrt();
        }
    }
    return result;
}

nlohmann::ordered_json to_json(const FitParams& params) {
    nlohmann::ordered_json j;
    j["a"] = params.a;
    j["b"] = params.b;
    j["c"] = params.c;
    j["d"] = params.d;
    return j;
}

nlohmann::ordered_json to_json(const FitResult& result) {
    nlohmann::ordered_json j;
    j["params"] = to_json(result.params);
    j["sse"] = result.sse;
    j["iterations"] = result.iterations;
    j["converged"] = result.converged;
    j["gradient_norm"] = result.gradient_norm;
    nlohmann::ordered_json se;
    const char* names[] = {"a", "b", "c", "d"};
    for (int k = 0; k < 4; ++k) {
        const double v = result.standard_errors(k);
        if (std::isfinite(v)) se[names[k]] = v;
        else se[names[k]] = nullptr;
    }
    j["standard_errors"] = se;
    return j;
}

}  // namespace primedensity
