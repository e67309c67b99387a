#include "ratekit/diagnostics.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>

namespace ratekit {

namespace {

std::vector<double> strip_leading_nan(const std::vector<double>& series) {
    std::size_t start = 0;
    while (start < series.size() && std::isnan(series[start])) ++start;
    std::vector<double> out(series.begin() + static_cast<std::ptrdiff_t>(start), series.end());
    for (double v : out)
        if (std::isnan(v)) throw InputError("series has interior missing values");
    return out;
}

} // namespace

double chi_squared_sf(double x, double dof) {
    if (x <= 0.0) return 1.0;
    boost::math::chi_squared dist(dof);
    return boost::math::cdf(boost::math::complement(dist, x));
}

std::vector<double> acf(const std::vector<double>& series, int max_lag) {
    const std::vector<double> x = strip_leading_nan(series);
    const int n = static_cast<int>(x.size());
    if (max_lag < 0) throw InputError("max_lag must be nonnegative");
    if (n <= max_lag + 1) throw InputError("series too short for the requested lag");
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= n;
    double c0 = 0.0;
    for (double v : x) c0 += (v - mean) * (v - mean);
    c0 /= n;
    if (c0 <= 0.0) throw InputError("autocorrelation undefined for a constant series");
    std::vector<double> out(static_cast<std::size_t>(max_lag) + 1);
    out[0] = 1.0;
    for (int k = 1; k <= max_lag; ++k) {
        double ck = 0.0;
        for (int t = 0; t + k < n; ++t) ck += (x[t] - mean) * (x[t + k] - mean);
        ck /= n;
        out[static_cast<std::size_t>(k)] = ck / c0;
    }
    return out;
}

std::vector<double> pacf(const std::vector<double>& series, int max_lag) {
    const std::vector<double> rho = acf(series, max_lag);
    std::vector<double> out(rho.size());
    out[0] = 1.0;
    if (max_lag == 0) return out;
    // Durbin-Levinson recursion.
    std::vector<double> phi_prev(rho.size(), 0.0), phi_cur(rho.size(), 0.0);
    out[1] = rho[1];
    phi_prev[1] = rho[1];
    for (int k = 2; k <= max_lag; ++k) {
        double num = rho[static_cast<std::size_t>(k)];
        double den = 1.0;
        for (int j = 1; j < k; ++j) {
            num -= phi_prev[static_cast<std::size_t>(j)] * rho[static_cast<std::size_t>(k - j)];
            den -= phi_prev[static_cast<std::size_t>(j)] * rho[static_cast<std::size_t>(j)];
        }
        const double phi_kk = std::abs(den) > 1e-300 ? num / den : 0.0;
        out[static_cast<std::size_t>(k)] = phi_kk;
        for (int j = 1; j < k; ++j)
            phi_cur[static_cast<std::size_t>(j)] = phi_prev[static_cast<std::size_t>(j)] -
                                                   phi_kk * phi_prev[static_cast<std::size_t>(k - j)];
        phi_cur[static_cast<std::size_t>(k)] = phi_kk;
        phi_prev = phi_cur;
    }
    return out;
}

std::vector<LjungBoxEntry> ljung_box(const std::vector<double>& residuals,
                                     const std::vector<int>& lags, int fitted_arma_params) {
    const std::vector<double> x = strip_leading_nan(residuals);
    const int n = static_cast<int>(x.size());
    int max_lag = 0;
    for (int h : lags) {
        if (h < 1) throw InputError("Ljung-Box lags must be positive");
        max_lag = std::max(max_lag, h);
    }
    if (max_lag >= n / 2) throw InputError("Ljung-Box lag too large for the sample");
    const std::vector<double> rho = acf(x, max_lag);
    std::vector<LjungBoxEntry> out;
    for (int h : lags) {
        double sum = 0.0;
        for (int k = 1; k <= h; ++k)
            sum += rho[static_cast<std::size_t>(k)] * rho[static_cast<std::size_t>(k)] / (n - k);
        LjungBoxEntry e;
        e.lag = h;
        e.q = n * (n + 2.0) * sum;
        e.dof = std::max(h - fitted_arma_params, 1);
        e.p_value = chi_squared_sf(e.q, e.dof);
        out.push_back(e);
    }
    return out;
}

std::pair<double, double> jarque_bera(const std::vector<double>& residuals) {
    const std::vector<double> x = strip_leading_nan(residuals);
    const int n = static_cast<int>(x.size());
    if (n < 8) throw InputError("Jarque-Bera requires at least 8 observations");
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : x) {
        const double d = v - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    if (m2 <= 0.0) throw InputError("Jarque-Bera undefined for zero-variance residuals");
    const double skew = m3 / std::pow(m2, 1.5);
    const double kurt = m4 / (m2 * m2);
    const double jb = n / 6.0 * (skew * skew + 0.25 * (kurt - 3.0) * (kurt - 3.0));
    return {jb, chi_squared_sf(jb, 2.0)};
}

DiagnosticsReport diagnose(const std::vector<double>& residuals, int max_lag,
                           const std::vector<int>& lb_lags, int fitted_arma_params) {
    DiagnosticsReport report;
    const std::vector<double> x = strip_leading_nan(residuals);
    report.n = static_cast<int>(x.size());
    report.acf = acf(x, max_lag);
    report.pacf = pacf(x, max_lag);
    report.confidence_band = 1.96 / std::sqrt(static_cast<double>(report.n));
    report.ljung_box = ljung_box(x, lb_lags, fitted_arma_params);
    const auto jb = jarque_bera(x);
    report.jarque_bera_stat = jb.first;
    report.jarque_bera_p = jb.second;
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= report.n;
    double var = 0.0;
    for (double v : x) var += (v - mean) * (v - mean);
    report.residual_variance = report.n > 1 ? var / (report.n - 1) : 0.0;
    return report;
}

} // namespace ratekit
