#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ratekit/builders.hpp"
#include "ratekit/optimize.hpp"
#include "ratekit/ssm.hpp"

namespace ratekit {

struct ConvergenceInfo {
    int iterations = 0;
    double grad_norm = 0.0;
    bool converged = false;
    int n_starts = 0;
    int best_start = -1;
    std::string status;
};

struct FitResult {
    ModelSpec spec;
    RegressionSpec reg;
    ParameterVector params;        // natural scale, at the optimum
    Eigen::VectorXd unconstrained; // optimizer-scale optimum
    double loglikelihood = 0.0;
    Eigen::VectorXd standard_errors; // natural scale (delta method)
    Eigen::VectorXd z_scores;
    Eigen::VectorXd p_values;
    bool se_reliable = false;
    Eigen::VectorXd residuals;        // standardized innovations, NaN at missing steps
    double residual_variance = 0.0;   // sample variance of raw innovations
    double aic = 0.0;
    double bic = 0.0;
    double hqic = 0.0;
    int n_eff = 0; // likelihood-contributing observations
    int k = 0;     // parameter count
    ConvergenceInfo convergence;

    double jarque_bera_stat = 0.0; // of the standardized residuals
    double jarque_bera_p = 1.0;
};

/// Estimation failure that still carries the best point reached.
struct FitError : NumericError {
    FitError(const std::string& msg, std::shared_ptr<FitResult> best_so_far)
        : NumericError(msg), best(std::move(best_so_far)) {}
    std::shared_ptr<FitResult> best;
};

struct FitOptions {
    int n_starts = 3; // first start at the default point, others perturbed
    std::uint64_t seed = 0;
    bool compute_se = true;
    OptimOptions optim;
    double hessian_step = 1e-4;
    int min_obs_per_param = 10;
};

/// Maximum-likelihood fit of an ARIMAX or UC model by quasi-Newton search
/// over the unconstrained parameter scale. Deterministic given the seed.
FitResult fit(const ModelSpec& spec, const RegressionSpec& reg, const Eigen::VectorXd& series,
              const FitOptions& options = {});

/// Log-likelihood of the series under the spec at fixed parameter values.
double loglikelihood_at(const ModelSpec& spec, const RegressionSpec& reg,
                        const Eigen::VectorXd& series, const ParameterVector& params);

struct SignificanceVerdict {
    std::string name;
    double estimate = 0.0;
    double p_value = 1.0;
    bool keep = false;
    bool provisional = false; // standard errors were unreliable
};

/// Two-sided z-test per parameter; keep iff p < alpha.
std::vector<SignificanceVerdict> significance(const FitResult& fit, double alpha = 0.1);

/// Two-sided p-value from a standard normal z score.
double normal_two_sided_p(double z);

/// Forecast the observed series on its natural scale. reg_full must carry
/// series.size() + horizon covariate rows (future rows hold planned calendar
/// and event information only). Handles the d=1 integration and the log1p
/// inverse transform.
ForecastResult forecast_fit(const FitResult& fit, const Eigen::VectorXd& series,
                            const RegressionSpec& reg_full, int horizon);

/// One-step-ahead predictions of the observed series on the modeled
/// (transformed, differenced) scale; NaN where unavailable.
Eigen::VectorXd one_step_predictions(const FitResult& fit, const Eigen::VectorXd& series);

// FitResult (de)serialization.
std::string fit_to_json(const FitResult& fit);

} // namespace ratekit
