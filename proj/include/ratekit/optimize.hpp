#pragma once

#include <Eigen/Dense>
#include <functional>

namespace ratekit {

using ObjectiveFn = std::function<double(const Eigen::VectorXd&)>;

struct OptimOptions {
    int max_iterations = 500;
    double rel_tol = 1e-8;       // on successive objective values
    double grad_tol = 1e-6;      // on the max-norm of the gradient
    double grad_step = 1e-5;     // relative central-difference step
};

struct OptimResult {
    Eigen::VectorXd x;
    double value = 0.0;
    int iterations = 0;
    double grad_norm = 0.0;
    bool converged = false;
};

/// Central-difference gradient of f at x.
Eigen::VectorXd numerical_gradient(const ObjectiveFn& f, const Eigen::VectorXd& x, double rel_step);

/// Central-difference Hessian of f at x (step is absolute, per coordinate).
Eigen::MatrixXd numerical_hessian(const ObjectiveFn& f, const Eigen::VectorXd& x, double step);

/// BFGS minimization with numerical gradients and a backtracking line search.
/// Non-finite objective values are treated as +infinity, so the search backs
/// away from invalid regions. Deterministic: no internal randomness.
OptimResult minimize_bfgs(const ObjectiveFn& f, const Eigen::VectorXd& x0,
                          const OptimOptions& options = {});

} // namespace ratekit
