#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ratekit/params.hpp"
#include "ratekit/ssm.hpp"

namespace ratekit {

/// ARIMA(p,d,q) with optional multiplicative weekly-seasonal polynomials
/// (explored during model selection, never kept in final models).
struct ArimaSpec {
    int p = 0;
    int d = 0;
    int q = 0;
    bool include_regression = false;
    bool log_transform = false;
    int seasonal_p = 0;
    int seasonal_q = 0;
    int seasonal_period = 7;
    bool drift = false; // optional drift constant alongside d=1, off by default

    void validate() const;
    std::string label() const;
    bool has_intercept() const { return d == 0 || drift; }
};

enum class TrendKind {
    None,
    FixedIntercept,    // deterministic constant
    LocalLevel,        // random walk
    FixedSlope,        // deterministic trend line
    LocalLevelDetTrend, // random walk with drift
    LocalLinearTrend,
    SmoothTrend, // integrated random walk
};

const char* to_string(TrendKind kind);
TrendKind trend_kind_from_string(const std::string& name);

struct UcSpec {
    TrendKind trend_kind = TrendKind::LocalLevel;
    bool weekly_seasonal = false;  // period 7
    bool monthly_seasonal = false; // period 30
    bool cycle = false;
    bool include_regression = false;
    bool log_transform = false;

    void validate() const;
    std::string label() const;
    int trend_states() const;
    int state_dim() const;
};

using ModelSpec = std::variant<ArimaSpec, UcSpec>;

bool spec_log_transform(const ModelSpec& spec);
bool spec_include_regression(const ModelSpec& spec);
std::string spec_label(const ModelSpec& spec);

/// Covariates entering the observation intercept. The delay shifts every
/// column uniformly: value used at t is the undelayed value at t - delay
/// (zero before the column starts).
struct RegressionSpec {
    std::vector<std::string> covariate_names;
    Eigen::MatrixXd covariate_matrix; // T x n, aligned with the raw series
    int delay_days = 0;

    int n_covariates() const { return static_cast<int>(covariate_names.size()); }
    void validate(Eigen::Index series_length) const;
    RegressionSpec subset(const std::vector<std::string>& names) const;
    RegressionSpec with_column(const std::string& name, const Eigen::VectorXd& column) const;
    Eigen::MatrixXd delayed_matrix() const;
};

inline RegressionSpec no_regression(Eigen::Index series_length) {
    RegressionSpec reg;
    reg.covariate_matrix.resize(series_length, 0);
    return reg;
}

/// The observed series mapped to the scale the state-space model runs on:
/// log1p transform and/or d regular differences applied, with the covariate
/// columns differenced alongside so the betas keep their level interpretation.
struct PreparedSeries {
    Eigen::VectorXd observations; // NaN where missing/undefined
    Eigen::MatrixXd covariates;   // differenced + delayed, aligned
    int difference_order = 0;
    bool log_transformed = false;
    Eigen::VectorXd raw; // original series (after log transform when enabled)
};

PreparedSeries prepare_series(const Eigen::VectorXd& series, const RegressionSpec& reg,
                              const ModelSpec& spec);

/// Initial parameter vector for a spec (zero coefficients, data-scale
/// variances when a series is supplied).
ParameterVector default_parameters(const ModelSpec& spec, const RegressionSpec& reg,
                                   const Eigen::VectorXd* series = nullptr);

/// Companion-form ARMA state space for the (differenced) series. The
/// regression effect and intercept enter through the observation intercept.
StateSpaceModel build_arimax(const ArimaSpec& spec, const RegressionSpec& reg,
                             const ParameterVector& params, Eigen::Index series_length);

/// Block-diagonal unobserved-components model: trend + weekly seasonal +
/// monthly seasonal + cycle, regression in the observation intercept.
StateSpaceModel build_uc(const UcSpec& spec, const RegressionSpec& reg,
                         const ParameterVector& params, Eigen::Index series_length);

StateSpaceModel build_model(const ModelSpec& spec, const RegressionSpec& reg,
                            const ParameterVector& params, Eigen::Index series_length);

/// Stationary covariance: solves P = T P T' + Q by doubling.
Eigen::MatrixXd solve_stationary_covariance(const Eigen::MatrixXd& transition,
                                            const Eigen::MatrixXd& shock_cov);

// JSON (de)serialization of specs; field names match the declarative spec.
std::string spec_to_json(const ModelSpec& spec);
ModelSpec spec_from_json(const std::string& text);

} // namespace ratekit
