#include "ratekit/optimize.hpp"

#include <cmath>
#include <limits>

namespace ratekit {

namespace {

double finite_or_inf(double v) {
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
}

} // namespace

Eigen::VectorXd numerical_gradient(const ObjectiveFn& f, const Eigen::VectorXd& x, double rel_step) {
    const Eigen::Index n = x.size();
    Eigen::VectorXd grad(n);
    Eigen::VectorXd probe = x;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double h = rel_step * (1.0 + std::abs(x[i]));
        probe[i] = x[i] + h;
        const double fp = finite_or_inf(f(probe));
        probe[i] = x[i] - h;
        const double fm = finite_or_inf(f(probe));
        probe[i] = x[i];
        grad[i] = (fp - fm) / (2.0 * h);
    }
    return grad;
}

Eigen::MatrixXd numerical_hessian(const ObjectiveFn& f, const Eigen::VectorXd& x, double step) {
    const Eigen::Index n = x.size();
    Eigen::MatrixXd h(n, n);
    Eigen::VectorXd probe = x;
    const double f0 = finite_or_inf(f(x));
    for (Eigen::Index i = 0; i < n; ++i) {
        // Diagonal: (f(x+h) - 2 f(x) + f(x-h)) / h^2.
        probe[i] = x[i] + step;
        const double fp = finite_or_inf(f(probe));
        probe[i] = x[i] - step;
        const double fm = finite_or_inf(f(probe));
        probe[i] = x[i];
        h(i, i) = (fp - 2.0 * f0 + fm) / (step * step);
        for (Eigen::Index j = i + 1; j < n; ++j) {
            probe[i] = x[i] + step;
            probe[j] = x[j] + step;
            const double fpp = finite_or_inf(f(probe));
            probe[j] = x[j] - step;
            const double fpm = finite_or_inf(f(probe));
            probe[i] = x[i] - step;
            probe[j] = x[j] + step;
            const double fmp = finite_or_inf(f(probe));
            probe[j] = x[j] - step;
            const double fmm = finite_or_inf(f(probe));
            probe[i] = x[i];
            probe[j] = x[j];
            h(i, j) = h(j, i) = (fpp - fpm - fmp + fmm) / (4.0 * step * step);
        }
    }
    return h;
}

OptimResult minimize_bfgs(const ObjectiveFn& f, const Eigen::VectorXd& x0, const OptimOptions& options) {
    const Eigen::Index n = x0.size();
    OptimResult result;
    result.x = x0;
    result.value = finite_or_inf(f(x0));
    if (!std::isfinite(result.value)) return result; // infeasible start

    Eigen::MatrixXd h_inv = Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd grad = numerical_gradient(f, result.x, options.grad_step);
    result.grad_norm = grad.lpNorm<Eigen::Infinity>();

    for (int iter = 0; iter < options.max_iterations; ++iter) {
        result.iterations = iter + 1;
        if (result.grad_norm < options.grad_tol) {
            result.converged = true;
            break;
        }

        Eigen::VectorXd direction = -(h_inv * grad);
        double slope = direction.dot(grad);
        if (!(slope < 0.0)) { // reset a corrupted approximation
            h_inv.setIdentity();
            direction = -grad;
            slope = direction.dot(grad);
            if (!(slope < 0.0)) break;
        }

        // Backtracking Armijo line search.
        double step = 1.0;
        double f_new = std::numeric_limits<double>::infinity();
        Eigen::VectorXd x_new;
        bool accepted = false;
        for (int ls = 0; ls < 50; ++ls) {
            x_new = result.x + step * direction;
            f_new = finite_or_inf(f(x_new));
            if (f_new <= result.value + 1e-4 * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            result.converged = result.grad_norm < 1e2 * options.grad_tol;
            break;
        }

        const Eigen::VectorXd grad_new = numerical_gradient(f, x_new, options.grad_step);
        const Eigen::VectorXd s = x_new - result.x;
        const Eigen::VectorXd y = grad_new - grad;
        const double sy = s.dot(y);
        if (sy > 1e-12 * s.norm() * y.norm()) {
            const double rho = 1.0 / sy;
            const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
            h_inv = (eye - rho * s * y.transpose()) * h_inv * (eye - rho * y * s.transpose()) +
                    rho * s * s.transpose();
        }

        const double improvement = result.value - f_new;
        result.x = x_new;
        result.value = f_new;
        grad = grad_new;
        result.grad_norm = grad.lpNorm<Eigen::Infinity>();

        if (improvement <= options.rel_tol * (1.0 + std::abs(result.value))) {
            result.converged = true;
            break;
        }
    }
    return result;
}

} // namespace ratekit
