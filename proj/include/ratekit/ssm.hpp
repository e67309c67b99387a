#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ratekit/errors.hpp"

namespace ratekit {

/// Missing-observation marker inside series vectors.
inline double missing_value() { return std::numeric_limits<double>::quiet_NaN(); }
inline bool is_missing(double x) { return std::isnan(x); }

/// Linear Gaussian state-space model with a scalar observation:
///
///   l_t = T_t l_{t-1} + c_t + R eta_t,   eta_t ~ N(0, state_cov)
///   z_t = D_t l_t + d_t + eps_t,         eps_t ~ N(0, obs_cov)
///
/// Matrix-valued fields hold either one entry (time-invariant) or one entry
/// per observation. The observation intercept d_t carries the regression
/// effect sum_i beta_i x_{i,t} when covariates are present.
struct StateSpaceModel {
    int state_dim = 0; // L
    int shock_dim = 0; // K

    std::vector<Eigen::MatrixXd> transition;      // L x L, size 1 or n
    std::vector<Eigen::VectorXd> state_intercept; // L, size 0 (zero), 1 or n
    Eigen::MatrixXd selection;                    // L x K
    std::vector<Eigen::RowVectorXd> design;       // 1 x L, size 1 or n
    Eigen::VectorXd obs_intercept;                // size 0 (zero), 1 or n
    Eigen::MatrixXd state_cov;                    // K x K
    double obs_cov = 0.0;

    Eigen::VectorXd init_mean; // prior mean of l_1
    Eigen::MatrixXd init_cov;  // prior covariance of l_1

    /// Number of leading likelihood contributions dropped (approximate-diffuse
    /// initialization burn-in); set by the builders to the diffuse state count.
    int loglik_burn_in = 0;

    /// Series is modeled on the log1p scale; forecasts invert it.
    bool log_scale = false;

    const Eigen::MatrixXd& transition_at(std::size_t t) const {
        return transition.size() == 1 ? transition.front() : transition[t];
    }
    const Eigen::RowVectorXd& design_at(std::size_t t) const {
        return design.size() == 1 ? design.front() : design[t];
    }
    double obs_intercept_at(std::size_t t) const {
        if (obs_intercept.size() == 0) return 0.0;
        return obs_intercept.size() == 1 ? obs_intercept[0] : obs_intercept[static_cast<Eigen::Index>(t)];
    }
    Eigen::VectorXd state_intercept_at(std::size_t t) const {
        if (state_intercept.empty()) return Eigen::VectorXd::Zero(state_dim);
        return state_intercept.size() == 1 ? state_intercept.front() : state_intercept[t];
    }

    /// Checks dimension consistency, finiteness and PSD-ness (tolerance -1e-10
    /// on eigenvalues) against a series of length n. Throws ConfigError /
    /// InputError on violation.
    void validate(std::size_t n) const;
};

struct FilterResult {
    std::vector<Eigen::VectorXd> predicted_state_means;
    std::vector<Eigen::MatrixXd> predicted_state_covs;
    std::vector<Eigen::VectorXd> filtered_state_means;
    std::vector<Eigen::MatrixXd> filtered_state_covs;
    Eigen::VectorXd innovations;          // v_t, NaN where observation missing
    Eigen::VectorXd innovation_variances; // F_t
    double loglikelihood = 0.0;           // prediction error decomposition, after burn-in
    int n_contributing = 0;               // observations contributing to the likelihood
    int burn_in_used = 0;

    std::size_t size() const { return predicted_state_means.size(); }
};

struct SmoothResult {
    std::vector<Eigen::VectorXd> smoothed_state_means;
    std::vector<Eigen::MatrixXd> smoothed_state_covs;
};

struct ForecastResult {
    int horizon = 0;
    Eigen::VectorXd point_forecasts;    // natural scale when inverse_transformed
    Eigen::VectorXd forecast_variances; // on the modeled scale
    bool inverse_transformed = false;
};

/// Kalman filter over a scalar observation series. NaN entries are treated
/// as missing: the prediction step runs, the update is skipped. The reported
/// loglikelihood excludes the first `loglik_burn_in` contributing steps.
FilterResult filter(const StateSpaceModel& model, const Eigen::VectorXd& observations);

/// Fixed-interval (RTS) smoother.
SmoothResult smooth(const StateSpaceModel& model, const FilterResult& fr);

/// Iterates the state equation from the final filtered state. The
/// future_obs_intercepts vector supplies d_{n+1..n+h} (zeros when the model
/// has no covariates) and must have length equal to the horizon.
ForecastResult forecast(const StateSpaceModel& model, const FilterResult& fr, int horizon,
                        const Eigen::VectorXd& future_obs_intercepts);

} // namespace ratekit
