#include "ratekit/builders.hpp"

#include <cmath>
#include <nlohmann/json.hpp>
#include <numeric>

namespace ratekit {

using nlohmann::json;

namespace {

constexpr double kDiffuseKappa = 1e7;

Eigen::VectorXd expand_polynomial(const std::vector<double>& regular,
                                  const std::vector<double>& seasonal, int period) {
    // Coefficients a_i of phi(L)*Phi(L^s) written as 1 - sum a_i L^i.
    // Multiplying (1 - sum r_i L^i)(1 - sum s_j L^{js}) gives
    // a = r + s (shifted) - r*s cross terms.
    const int n = static_cast<int>(regular.size()) + period * static_cast<int>(seasonal.size());
    Eigen::VectorXd full = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i < regular.size(); ++i) full[static_cast<int>(i)] += regular[i];
    for (std::size_t j = 0; j < seasonal.size(); ++j) {
        const int base = period * static_cast<int>(j + 1);
        full[base - 1] += seasonal[j];
        for (std::size_t i = 0; i < regular.size(); ++i)
            full[base + static_cast<int>(i)] -= seasonal[j] * regular[i];
    }
    return full;
}

Eigen::VectorXd expand_ma_polynomial(const std::vector<double>& regular,
                                     const std::vector<double>& seasonal, int period) {
    // (1 + sum r_i L^i)(1 + sum s_j L^{js}): plain product, positive convention.
    const int n = static_cast<int>(regular.size()) + period * static_cast<int>(seasonal.size());
    Eigen::VectorXd full = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i < regular.size(); ++i) full[static_cast<int>(i)] += regular[i];
    for (std::size_t j = 0; j < seasonal.size(); ++j) {
        const int base = period * static_cast<int>(j + 1);
        full[base - 1] += seasonal[j];
        for (std::size_t i = 0; i < regular.size(); ++i)
            full[base + static_cast<int>(i)] += seasonal[j] * regular[i];
    }
    return full;
}

Eigen::VectorXd difference_once(const Eigen::VectorXd& x) {
    Eigen::VectorXd out = Eigen::VectorXd::Constant(x.size(), missing_value());
    for (Eigen::Index t = 1; t < x.size(); ++t) out[t] = x[t] - x[t - 1];
    return out;
}

double sample_variance(const Eigen::VectorXd& x) {
    double sum = 0.0, sum2 = 0.0;
    int n = 0;
    for (Eigen::Index t = 0; t < x.size(); ++t) {
        if (is_missing(x[t])) continue;
        sum += x[t];
        sum2 += x[t] * x[t];
        ++n;
    }
    if (n < 2) return 1.0;
    const double mean = sum / n;
    const double var = (sum2 - n * mean * mean) / (n - 1);
    return var > 0.0 ? var : 1.0;
}

} // namespace

void ArimaSpec::validate() const {
    if (p < 0 || p > 5 || q < 0 || q > 5) throw ConfigError("ARIMA orders p,q must lie in [0,5]");
    if (d != 0 && d != 1) throw ConfigError("ARIMA difference order must be 0 or 1");
    if (seasonal_p < 0 || seasonal_p > 5 || seasonal_q < 0 || seasonal_q > 5)
        throw ConfigError("seasonal orders must lie in [0,5]");
    if ((seasonal_p > 0 || seasonal_q > 0) && seasonal_period < 2)
        throw ConfigError("seasonal period must be at least 2");
    if (p == 0 && d == 0 && q == 0 && seasonal_p == 0 && seasonal_q == 0 && !include_regression &&
        !has_intercept())
        throw ConfigError("ARIMA(0,0,0) requires regression");
}

std::string ArimaSpec::label() const {
    std::string s = "arima(" + std::to_string(p) + "," + std::to_string(d) + "," + std::to_string(q) + ")";
    if (seasonal_p > 0 || seasonal_q > 0)
        s += "(" + std::to_string(seasonal_p) + "," + std::to_string(seasonal_q) + ")[" +
             std::to_string(seasonal_period) + "]";
    if (log_transform) s += "+log";
    return s;
}

const char* to_string(TrendKind kind) {
    switch (kind) {
        case TrendKind::None: return "none";
        case TrendKind::FixedIntercept: return "fixed_intercept";
        case TrendKind::LocalLevel: return "local_level";
        case TrendKind::FixedSlope: return "fixed_slope";
        case TrendKind::LocalLevelDetTrend: return "local_level_det_trend";
        case TrendKind::LocalLinearTrend: return "local_linear_trend";
        case TrendKind::SmoothTrend: return "smooth_trend";
    }
    return "?";
}

TrendKind trend_kind_from_string(const std::string& name) {
    for (TrendKind k : {TrendKind::None, TrendKind::FixedIntercept, TrendKind::LocalLevel,
                        TrendKind::FixedSlope, TrendKind::LocalLevelDetTrend,
                        TrendKind::LocalLinearTrend, TrendKind::SmoothTrend})
        if (name == to_string(k)) return k;
    throw InputError("unknown trend kind '" + name + "'");
}

int UcSpec::trend_states() const {
    switch (trend_kind) {
        case TrendKind::None: return 0;
        case TrendKind::FixedIntercept:
        case TrendKind::LocalLevel: return 1;
        default: return 2;
    }
}

int UcSpec::state_dim() const {
    return trend_states() + (weekly_seasonal ? 6 : 0) + (monthly_seasonal ? 29 : 0) + (cycle ? 2 : 0);
}

void UcSpec::validate() const {
    if (state_dim() == 0 && !include_regression)
        throw ConfigError("UC spec needs at least one component or regression");
}

std::string UcSpec::label() const {
    std::string s = std::string("uc(") + to_string(trend_kind);
    if (weekly_seasonal) s += "+weekly";
    if (monthly_seasonal) s += "+monthly";
    if (cycle) s += "+cycle";
    s += ")";
    if (log_transform) s += "+log";
    return s;
}

bool spec_log_transform(const ModelSpec& spec) {
    return std::visit([](const auto& s) { return s.log_transform; }, spec);
}

bool spec_include_regression(const ModelSpec& spec) {
    return std::visit([](const auto& s) { return s.include_regression; }, spec);
}

std::string spec_label(const ModelSpec& spec) {
    return std::visit([](const auto& s) { return s.label(); }, spec);
}

void RegressionSpec::validate(Eigen::Index series_length) const {
    if (covariate_matrix.cols() != static_cast<Eigen::Index>(covariate_names.size()))
        throw ConfigError("covariate column count does not match name count");
    if (covariate_matrix.cols() > 0 && covariate_matrix.rows() != series_length)
        throw ConfigError("covariate matrix rows must match the series length");
    if (delay_days < 0) throw ConfigError("delay_days must be nonnegative");
    for (Eigen::Index c = 0; c < covariate_matrix.cols(); ++c) {
        if (!covariate_matrix.col(c).allFinite())
            throw InputError("non-finite covariate column " + covariate_names[static_cast<std::size_t>(c)]);
        if (covariate_matrix.col(c).cwiseAbs().maxCoeff() == 0.0)
            throw InputError("covariate column " + covariate_names[static_cast<std::size_t>(c)] +
                             " is constant zero");
    }
}

RegressionSpec RegressionSpec::subset(const std::vector<std::string>& names) const {
    RegressionSpec out;
    out.delay_days = delay_days;
    out.covariate_matrix.resize(covariate_matrix.rows(), static_cast<Eigen::Index>(names.size()));
    for (std::size_t i = 0; i < names.size(); ++i) {
        auto it = std::find(covariate_names.begin(), covariate_names.end(), names[i]);
        if (it == covariate_names.end()) throw ConfigError("unknown covariate '" + names[i] + "'");
        out.covariate_matrix.col(static_cast<Eigen::Index>(i)) =
            covariate_matrix.col(it - covariate_names.begin());
        out.covariate_names.push_back(names[i]);
    }
    return out;
}

RegressionSpec RegressionSpec::with_column(const std::string& name, const Eigen::VectorXd& column) const {
    if (covariate_matrix.cols() > 0 && column.size() != covariate_matrix.rows())
        throw ConfigError("new covariate column length mismatch");
    RegressionSpec out = *this;
    out.covariate_names.push_back(name);
    out.covariate_matrix.conservativeResize(column.size(), covariate_matrix.cols() + 1);
    out.covariate_matrix.col(out.covariate_matrix.cols() - 1) = column;
    return out;
}

Eigen::MatrixXd RegressionSpec::delayed_matrix() const {
    if (delay_days == 0) return covariate_matrix;
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(covariate_matrix.rows(), covariate_matrix.cols());
    for (Eigen::Index t = delay_days; t < covariate_matrix.rows(); ++t)
        out.row(t) = covariate_matrix.row(t - delay_days);
    return out;
}

PreparedSeries prepare_series(const Eigen::VectorXd& series, const RegressionSpec& reg,
                              const ModelSpec& spec) {
    reg.validate(series.size());
    PreparedSeries out;
    out.log_transformed = spec_log_transform(spec);
    out.observations = series;
    if (out.log_transformed) {
        for (Eigen::Index t = 0; t < out.observations.size(); ++t) {
            const double v = out.observations[t];
            if (is_missing(v)) continue;
            if (v < 0.0) throw InputError("log transform requires nonnegative series values");
            out.observations[t] = std::log1p(v);
        }
    }
    out.raw = out.observations;
    out.covariates = spec_include_regression(spec) ? reg.delayed_matrix()
                                                   : Eigen::MatrixXd(series.size(), 0);

    const int d = std::holds_alternative<ArimaSpec>(spec) ? std::get<ArimaSpec>(spec).d : 0;
    out.difference_order = d;
    for (int k = 0; k < d; ++k) {
        out.observations = difference_once(out.observations);
        for (Eigen::Index c = 0; c < out.covariates.cols(); ++c) {
            Eigen::VectorXd col = difference_once(out.covariates.col(c));
            col[0] = 0.0; // never used: the differenced observation is missing there
            out.covariates.col(c) = col;
        }
    }
    return out;
}

ParameterVector default_parameters(const ModelSpec& spec, const RegressionSpec& reg,
                                   const Eigen::VectorXd* series) {
    ParameterVector pv;
    double scale = 1.0;
    if (series != nullptr) {
        const PreparedSeries prepared = prepare_series(*series, reg, spec);
        scale = sample_variance(prepared.observations);
    }

    if (spec_include_regression(spec))
        for (const std::string& name : reg.covariate_names)
            pv.params.push_back({"beta_" + name, ParamKind::Beta, 0.0, 0});

    if (const ArimaSpec* arima = std::get_if<ArimaSpec>(&spec)) {
        arima->validate();
        if (arima->has_intercept()) pv.params.push_back({"intercept", ParamKind::Intercept, 0.0, 0});
        for (int i = 1; i <= arima->p; ++i)
            pv.params.push_back({"phi_" + std::to_string(i), ParamKind::Ar, 0.0, 0});
        for (int i = 1; i <= arima->seasonal_p; ++i)
            pv.params.push_back({"seasonal_phi_" + std::to_string(i), ParamKind::Ar, 0.0, 1});
        for (int i = 1; i <= arima->q; ++i)
            pv.params.push_back({"theta_" + std::to_string(i), ParamKind::Ma, 0.0, 0});
        for (int i = 1; i <= arima->seasonal_q; ++i)
            pv.params.push_back({"seasonal_theta_" + std::to_string(i), ParamKind::Ma, 0.0, 1});
        pv.params.push_back({"sigma2", ParamKind::Variance, scale, 0});
    } else {
        const UcSpec& uc = std::get<UcSpec>(spec);
        uc.validate();
        int stochastic = 1; // irregular
        const bool level_noise = uc.trend_kind == TrendKind::LocalLevel ||
                                 uc.trend_kind == TrendKind::LocalLevelDetTrend ||
                                 uc.trend_kind == TrendKind::LocalLinearTrend;
        const bool slope_noise =
            uc.trend_kind == TrendKind::LocalLinearTrend || uc.trend_kind == TrendKind::SmoothTrend;
        stochastic += (level_noise ? 1 : 0) + (slope_noise ? 1 : 0) + (uc.weekly_seasonal ? 1 : 0) +
                      (uc.monthly_seasonal ? 1 : 0) + (uc.cycle ? 1 : 0);
        const double share = scale / stochastic;
        if (level_noise) pv.params.push_back({"var_level", ParamKind::Variance, share, 0});
        if (slope_noise) pv.params.push_back({"var_slope", ParamKind::Variance, share * 0.1, 0});
        if (uc.weekly_seasonal) pv.params.push_back({"var_weekly", ParamKind::Variance, share * 0.1, 0});
        if (uc.monthly_seasonal) pv.params.push_back({"var_monthly", ParamKind::Variance, share * 0.1, 0});
        if (uc.cycle) {
            pv.params.push_back({"var_cycle", ParamKind::Variance, share * 0.1, 0});
            pv.params.push_back({"cycle_freq", ParamKind::CycleFreq,
                                 0.5 * (kCycleFreqLow + kCycleFreqHigh), 0});
        }
        pv.params.push_back({"var_irregular", ParamKind::Variance, share, 0});
    }
    return pv;
}

namespace {

Eigen::VectorXd build_obs_intercept(bool include_regression, const Eigen::MatrixXd& covariates,
                                    const std::vector<double>& betas, double intercept,
                                    bool has_intercept, Eigen::Index n) {
    if (!include_regression) {
        if (!has_intercept) return Eigen::VectorXd();
        return Eigen::VectorXd::Constant(1, intercept);
    }
    Eigen::VectorXd out = Eigen::VectorXd::Constant(n, has_intercept ? intercept : 0.0);
    for (Eigen::Index c = 0; c < covariates.cols(); ++c)
        out += betas[static_cast<std::size_t>(c)] * covariates.col(c);
    return out;
}

std::vector<double> collect_betas(const ParameterVector& params, const RegressionSpec& reg) {
    std::vector<double> betas;
    for (const std::string& name : reg.covariate_names) betas.push_back(params.value_of("beta_" + name));
    return betas;
}

} // namespace

Eigen::MatrixXd solve_stationary_covariance(const Eigen::MatrixXd& transition,
                                            const Eigen::MatrixXd& shock_cov) {
    Eigen::MatrixXd a = transition;
    Eigen::MatrixXd q = shock_cov;
    for (int iter = 0; iter < 64; ++iter) {
        if (a.cwiseAbs().maxCoeff() < 1e-280) break;
        q = q + a * q * a.transpose();
        a = a * a;
        if (!q.allFinite()) throw NumericError("stationary covariance diverged: nonstationary transition");
    }
    return 0.5 * (q + q.transpose());
}

StateSpaceModel build_arimax(const ArimaSpec& spec, const RegressionSpec& reg,
                             const ParameterVector& params, Eigen::Index series_length) {
    spec.validate();
    const ModelSpec mspec = spec;
    const ParameterVector expected = default_parameters(mspec, reg);
    if (expected.size() != params.size())
        throw ConfigError("parameter vector does not match the ARIMA spec (expected " +
                          std::to_string(expected.size()) + " parameters, got " +
                          std::to_string(params.size()) + ")");
    for (std::size_t i = 0; i < expected.size(); ++i)
        if (expected.params[i].name != params.params[i].name)
            throw ConfigError("unexpected parameter '" + params.params[i].name + "'");

    const std::vector<double> ar = params.block_values(ParamKind::Ar, 0);
    const std::vector<double> sar = params.block_values(ParamKind::Ar, 1);
    const std::vector<double> ma = params.block_values(ParamKind::Ma, 0);
    const std::vector<double> sma = params.block_values(ParamKind::Ma, 1);
    if (!is_stationary(ar) || !is_stationary(sar)) throw ConstraintError("nonstationary AR parameters");
    if (!is_invertible(ma) || !is_invertible(sma)) throw ConstraintError("noninvertible MA parameters");

    const Eigen::VectorXd ar_full = expand_polynomial(ar, sar, spec.seasonal_period);
    const Eigen::VectorXd ma_full = expand_ma_polynomial(ma, sma, spec.seasonal_period);
    const int p_full = static_cast<int>(ar_full.size());
    const int q_full = static_cast<int>(ma_full.size());
    const int r = std::max(p_full, q_full + 1);

    StateSpaceModel model;
    model.state_dim = r;
    model.shock_dim = 1;
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(r, r);
    for (int i = 0; i < p_full; ++i) t(i, 0) = ar_full[i];
    for (int i = 0; i + 1 < r; ++i) t(i, i + 1) = 1.0;
    model.transition = {t};
    model.selection = Eigen::MatrixXd::Zero(r, 1);
    model.selection(0, 0) = 1.0;
    for (int i = 1; i < r; ++i) model.selection(i, 0) = i - 1 < q_full ? ma_full[i - 1] : 0.0;
    const double sigma2 = params.value_of("sigma2");
    if (!(sigma2 > 0.0)) throw ConstraintError("sigma2 must be positive");
    model.state_cov = Eigen::MatrixXd::Constant(1, 1, sigma2);
    model.obs_cov = 0.0;
    Eigen::RowVectorXd design = Eigen::RowVectorXd::Zero(r);
    design[0] = 1.0;
    model.design = {design};

    const PreparedSeries prepared = prepare_series(Eigen::VectorXd::Zero(series_length), reg, mspec);
    const Eigen::MatrixXd covariates =
        spec.include_regression ? prepared.covariates : Eigen::MatrixXd(series_length, 0);
    const double intercept = spec.has_intercept() ? params.value_of("intercept") : 0.0;
    model.obs_intercept =
        build_obs_intercept(spec.include_regression, covariates,
                            spec.include_regression ? collect_betas(params, reg) : std::vector<double>{},
                            intercept, spec.has_intercept(), series_length);

    model.init_mean = Eigen::VectorXd::Zero(r);
    model.init_cov =
        solve_stationary_covariance(t, model.selection * model.state_cov * model.selection.transpose());
    model.loglik_burn_in = 0;
    model.log_scale = spec.log_transform && spec.d == 0;
    return model;
}

StateSpaceModel build_uc(const UcSpec& spec, const RegressionSpec& reg, const ParameterVector& params,
                         Eigen::Index series_length) {
    spec.validate();
    const ModelSpec mspec = spec;
    const ParameterVector expected = default_parameters(mspec, reg);
    if (expected.size() != params.size())
        throw ConfigError("parameter vector does not match the UC spec (expected " +
                          std::to_string(expected.size()) + " parameters, got " +
                          std::to_string(params.size()) + ")");
    for (std::size_t i = 0; i < expected.size(); ++i)
        if (expected.params[i].name != params.params[i].name)
            throw ConfigError("unexpected parameter '" + params.params[i].name + "'");

    const int dim = std::max(spec.state_dim(), 1);
    const bool dummy_state = spec.state_dim() == 0;

    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::RowVectorXd design = Eigen::RowVectorXd::Zero(dim);
    std::vector<std::pair<int, double>> shock_rows; // state row, variance

    int offset = 0;
    const bool level_noise = spec.trend_kind == TrendKind::LocalLevel ||
                             spec.trend_kind == TrendKind::LocalLevelDetTrend ||
                             spec.trend_kind == TrendKind::LocalLinearTrend;
    const bool slope_noise =
        spec.trend_kind == TrendKind::LocalLinearTrend || spec.trend_kind == TrendKind::SmoothTrend;
    if (spec.trend_states() == 1) {
        t(0, 0) = 1.0;
        design[0] = 1.0;
        if (level_noise) shock_rows.push_back({0, params.value_of("var_level")});
        offset = 1;
    } else if (spec.trend_states() == 2) {
        t(0, 0) = 1.0;
        t(0, 1) = 1.0;
        t(1, 1) = 1.0;
        design[0] = 1.0;
        if (level_noise) shock_rows.push_back({0, params.value_of("var_level")});
        if (slope_noise) shock_rows.push_back({1, params.value_of("var_slope")});
        offset = 2;
    }
    for (const auto& [enabled, period, var_name] :
         {std::tuple<bool, int, const char*>{spec.weekly_seasonal, 7, "var_weekly"},
          std::tuple<bool, int, const char*>{spec.monthly_seasonal, 30, "var_monthly"}}) {
        if (!enabled) continue;
        const int states = period - 1;
        for (int j = 0; j < states; ++j) t(offset, offset + j) = -1.0;
        for (int j = 1; j < states; ++j) t(offset + j, offset + j - 1) = 1.0;
        design[offset] = 1.0;
        shock_rows.push_back({offset, params.value_of(var_name)});
        offset += states;
    }
    if (spec.cycle) {
        const double freq = params.value_of("cycle_freq");
        if (!(freq > 0.0)) throw ConstraintError("cycle frequency must be positive");
        t(offset, offset) = std::cos(freq);
        t(offset, offset + 1) = std::sin(freq);
        t(offset + 1, offset) = -std::sin(freq);
        t(offset + 1, offset + 1) = std::cos(freq);
        design[offset] = 1.0;
        const double var_cycle = params.value_of("var_cycle");
        shock_rows.push_back({offset, var_cycle});
        shock_rows.push_back({offset + 1, var_cycle});
        offset += 2;
    }

    StateSpaceModel model;
    model.state_dim = dim;
    model.shock_dim = static_cast<int>(shock_rows.size());
    model.transition = {t};
    model.selection = Eigen::MatrixXd::Zero(dim, model.shock_dim);
    model.state_cov = Eigen::MatrixXd::Zero(model.shock_dim, model.shock_dim);
    for (std::size_t k = 0; k < shock_rows.size(); ++k) {
        const auto [row, var] = shock_rows[k];
        if (!(var > 0.0)) throw ConstraintError("component variances must be positive");
        model.selection(row, static_cast<Eigen::Index>(k)) = 1.0;
        model.state_cov(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = var;
    }
    model.design = {design};
    const double var_irregular = params.value_of("var_irregular");
    if (!(var_irregular > 0.0)) throw ConstraintError("var_irregular must be positive");
    model.obs_cov = var_irregular;

    const PreparedSeries prepared = prepare_series(Eigen::VectorXd::Zero(series_length), reg, mspec);
    const Eigen::MatrixXd covariates =
        spec.include_regression ? prepared.covariates : Eigen::MatrixXd(series_length, 0);
    model.obs_intercept =
        build_obs_intercept(spec.include_regression, covariates,
                            spec.include_regression ? collect_betas(params, reg) : std::vector<double>{},
                            0.0, false, series_length);

    model.init_mean = Eigen::VectorXd::Zero(dim);
    model.init_cov = dummy_state ? Eigen::MatrixXd::Zero(1, 1)
                                 : Eigen::MatrixXd::Identity(dim, dim) * kDiffuseKappa;
    model.loglik_burn_in = dummy_state ? 0 : dim;
    model.log_scale = spec.log_transform;
    return model;
}

StateSpaceModel build_model(const ModelSpec& spec, const RegressionSpec& reg,
                            const ParameterVector& params, Eigen::Index series_length) {
    if (const ArimaSpec* arima = std::get_if<ArimaSpec>(&spec))
        return build_arimax(*arima, reg, params, series_length);
    return build_uc(std::get<UcSpec>(spec), reg, params, series_length);
}

std::string spec_to_json(const ModelSpec& spec) {
    json j;
    if (const ArimaSpec* a = std::get_if<ArimaSpec>(&spec)) {
        j["family"] = "arima";
        j["p"] = a->p;
        j["d"] = a->d;
        j["q"] = a->q;
        j["include_regression"] = a->include_regression;
        j["log_transform"] = a->log_transform;
        j["seasonal_p"] = a->seasonal_p;
        j["seasonal_q"] = a->seasonal_q;
        j["seasonal_period"] = a->seasonal_period;
        j["drift"] = a->drift;
    } else {
        const UcSpec& u = std::get<UcSpec>(spec);
        j["family"] = "uc";
        j["trend_kind"] = to_string(u.trend_kind);
        j["weekly_seasonal"] = u.weekly_seasonal;
        j["monthly_seasonal"] = u.monthly_seasonal;
        j["cycle"] = u.cycle;
        j["include_regression"] = u.include_regression;
        j["log_transform"] = u.log_transform;
    }
    return j.dump(2);
}

ModelSpec spec_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw InputError(std::string("invalid model spec JSON: ") + e.what());
    }
    const std::string family = j.value("family", "arima");
    if (family == "arima") {
        ArimaSpec a;
        a.p = j.value("p", 0);
        a.d = j.value("d", 0);
        a.q = j.value("q", 0);
        a.include_regression = j.value("include_regression", false);
        a.log_transform = j.value("log_transform", false);
        a.seasonal_p = j.value("seasonal_p", 0);
        a.seasonal_q = j.value("seasonal_q", 0);
        a.seasonal_period = j.value("seasonal_period", 7);
        a.drift = j.value("drift", false);
        a.validate();
        return a;
    }
    if (family == "uc") {
        UcSpec u;
        u.trend_kind = trend_kind_from_string(j.value("trend_kind", "local_level"));
        u.weekly_seasonal = j.value("weekly_seasonal", false);
        u.monthly_seasonal = j.value("monthly_seasonal", false);
        u.cycle = j.value("cycle", false);
        u.include_regression = j.value("include_regression", false);
        u.log_transform = j.value("log_transform", false);
        u.validate();
        return u;
    }
    throw InputError("unknown model family '" + family + "'");
}

} // namespace ratekit
