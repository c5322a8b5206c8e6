#pragma once

#include <limits>
#include <vector>

#include <Eigen/Core>

#include "primedensity/approx.hpp"
#include "primedensity/fmodel.hpp"
#include "json.hpp"

namespace primedensity {

struct FitOptions {
    int max_iterations = 200;
    double gradient_tolerance = 1e-10;
    double initial_damping = 1e-3;
    double damping_up = 10.0;
    double damping_down = 0.1;
    // Central-difference step, relative to max(|p|, 1).
    double jacobian_step = 1e-6;
    // Damping beyond this means the normal equations could not be regularised.
    double max_damping = 1e12;

    // Throws PreconditionError unless every field is positive and max_iterations >= 1.
    void validate() const;
};

struct FitResult {
    FitParams params;
    double sse = 0.0;
    int iterations = 0;
    bool converged = false;
    // max |J^T r| at the returned parameters
    double gradient_norm = 0.0;
    // sqrt(diag((J^T J)^{-1}) * sse / (m - 4)); NaN when m == 4
    Eigen::Vector4d standard_errors = Eigen::Vector4d::Constant(std::numeric_limits<double>::quiet_NaN());
    // SSE after each accepted step, starting with the initial point.
    std::vector<double> sse_history;
};

// Model partials d fhat / d(a, b, c, d) at every sample, by central differences. Rows follow the dataset.
Eigen::MatrixXd numeric_jacobian(const FDataset& dataset, const FitParams& params, double step);

// Same matrix from the closed-form partials.
Eigen::MatrixXd analytic_jacobian(const FDataset& dataset, const FitParams& params);

// Levenberg-Marquardt minimisation of sum_i (f_i - fhat(y_i))^2.
//
// Each iteration solves (J^T J + lambda I) delta = J^T r with the central-difference Jacobian and
// accepts the step only if the SSE strictly decreases; lambda shrinks by damping_down on success and
// grows by damping_up on rejection. Convergence is max |J^T r| < gradient_tolerance. Running out of
// iterations returns converged = false; lambda above max_damping throws NumericalError.
FitResult fit_lm(const FDataset& dataset, const FitParams& init, const FitOptions& options = {});

nlohmann::ordered_json to_json(const FitResult& result);
nlohmann::ordered_json to_json(const FitParams& params);

}  // namespace primedensity
