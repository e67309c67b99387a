#pragma once

#include <utility>
#include <vector>

#include "ratekit/errors.hpp"

namespace ratekit {

struct LjungBoxEntry {
    int lag = 0;
    double q = 0.0;
    int dof = 1;
    double p_value = 1.0;
};

struct DiagnosticsReport {
    std::vector<double> acf;  // index 0 = lag 0 = 1
    std::vector<double> pacf; // index 0 = lag 0 = 1
    double confidence_band = 0.0; // +-1.96/sqrt(n)
    std::vector<LjungBoxEntry> ljung_box;
    double jarque_bera_stat = 0.0;
    double jarque_bera_p = 1.0;
    double residual_variance = 0.0;
    int n = 0;
};

/// Sample autocorrelations with the biased (1/n) covariance estimator.
/// Leading NaN values are dropped; interior NaNs are rejected.
std::vector<double> acf(const std::vector<double>& series, int max_lag);

/// Partial autocorrelations via Durbin-Levinson on the sample ACF.
std::vector<double> pacf(const std::vector<double>& series, int max_lag);

/// Ljung-Box Q statistics; dof per lag h is max(h - fitted_arma_params, 1).
std::vector<LjungBoxEntry> ljung_box(const std::vector<double>& residuals,
                                     const std::vector<int>& lags, int fitted_arma_params = 0);

/// Jarque-Bera normality statistic and its chi-square(2) p-value.
std::pair<double, double> jarque_bera(const std::vector<double>& residuals);

/// Full residual diagnostics bundle.
DiagnosticsReport diagnose(const std::vector<double>& residuals, int max_lag,
                           const std::vector<int>& lb_lags, int fitted_arma_params = 0);

/// Upper-tail chi-square probability.
double chi_squared_sf(double x, double dof);

} // namespace ratekit
