#include "ratekit/estimate.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>

#include "ratekit/diagnostics.hpp"
#include "ratekit/rng.hpp"

namespace ratekit {

using nlohmann::json;

double normal_two_sided_p(double z) {
    if (!std::isfinite(z)) return 0.0;
    return std::erfc(std::abs(z) / std::sqrt(2.0));
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double objective_value(const ModelSpec& spec, const RegressionSpec& reg,
                       const Eigen::VectorXd& prepared_obs, const ParameterVector& shape,
                       const Eigen::VectorXd& unconstrained) {
    try {
        ParameterVector pv = shape;
        pv.set_natural(to_natural(shape, unconstrained));
        const StateSpaceModel model = build_model(spec, reg, pv, prepared_obs.size());
        return -filter(model, prepared_obs).loglikelihood;
    } catch (const NumericError&) {
        return kInf;
    } catch (const ConstraintError&) {
        return kInf;
    }
}

double raw_innovation_variance(const FilterResult& fr) {
    double sum = 0.0, sum2 = 0.0;
    int n = 0;
    int seen = 0;
    for (Eigen::Index t = 0; t < fr.innovations.size(); ++t) {
        if (is_missing(fr.innovations[t])) continue;
        ++seen;
        if (seen <= fr.burn_in_used) continue;
        sum += fr.innovations[t];
        sum2 += fr.innovations[t] * fr.innovations[t];
        ++n;
    }
    if (n < 2) return 0.0;
    const double mean = sum / n;
    return (sum2 - n * mean * mean) / (n - 1);
}

Eigen::VectorXd standardized_residuals(const FilterResult& fr) {
    Eigen::VectorXd out = Eigen::VectorXd::Constant(fr.innovations.size(), missing_value());
    int seen = 0;
    for (Eigen::Index t = 0; t < fr.innovations.size(); ++t) {
        if (is_missing(fr.innovations[t])) continue;
        ++seen;
        if (seen <= fr.burn_in_used) continue;
        out[t] = fr.innovations[t] / std::sqrt(fr.innovation_variances[t]);
    }
    return out;
}

} // namespace

double loglikelihood_at(const ModelSpec& spec, const RegressionSpec& reg,
                        const Eigen::VectorXd& series, const ParameterVector& params) {
    const PreparedSeries prepared = prepare_series(series, reg, spec);
    const StateSpaceModel model = build_model(spec, reg, params, series.size());
    return filter(model, prepared.observations).loglikelihood;
}

FitResult fit(const ModelSpec& spec, const RegressionSpec& reg, const Eigen::VectorXd& series,
              const FitOptions& options) {
    const PreparedSeries prepared = prepare_series(series, reg, spec);
    ParameterVector shape = default_parameters(spec, reg, &series);
    const int k = static_cast<int>(shape.size());
    if (k == 0) throw ConfigError("the spec has no parameters to estimate");

    int n_obs = 0;
    for (Eigen::Index t = 0; t < prepared.observations.size(); ++t)
        if (!is_missing(prepared.observations[t])) ++n_obs;
    if (n_obs < options.min_obs_per_param * k)
        throw InputError("series too short: " + std::to_string(n_obs) + " observations for " +
                         std::to_string(k) + " parameters");

    const ObjectiveFn objective = [&](const Eigen::VectorXd& u) {
        return objective_value(spec, reg, prepared.observations, shape, u);
    };

    const Eigen::VectorXd u0 = to_unconstrained(shape);
    OptimResult best;
    best.value = kInf;
    int best_start = -1;
    bool any_converged = false;
    for (int s = 0; s < std::max(1, options.n_starts); ++s) {
        Eigen::VectorXd start = u0;
        if (s > 0) {
            CounterRng rng(stream_key(options.seed, 0x5741u, static_cast<std::uint64_t>(s)));
            for (Eigen::Index i = 0; i < start.size(); ++i) start[i] += 0.1 * rng.normal();
        }
        const OptimResult r = minimize_bfgs(objective, start, options.optim);
        any_converged = any_converged || r.converged;
        if (r.value < best.value || best_start < 0) {
            best = r;
            best_start = s;
        }
    }

    FitResult out;
    out.spec = spec;
    out.reg = reg;
    out.k = k;
    out.convergence.iterations = best.iterations;
    out.convergence.grad_norm = best.grad_norm;
    out.convergence.converged = any_converged;
    out.convergence.n_starts = std::max(1, options.n_starts);
    out.convergence.best_start = best_start;
    out.convergence.status = any_converged ? "converged" : "max-iterations";

    shape.set_natural(to_natural(shape, best.x));
    out.params = shape;
    out.unconstrained = best.x;

    const StateSpaceModel model = build_model(spec, reg, shape, series.size());
    const FilterResult fr = filter(model, prepared.observations);
    out.loglikelihood = fr.loglikelihood;
    out.n_eff = fr.n_contributing;
    out.residuals = standardized_residuals(fr);
    out.residual_variance = raw_innovation_variance(fr);
    out.aic = 2.0 * k - 2.0 * out.loglikelihood;
    out.bic = k * std::log(static_cast<double>(out.n_eff)) - 2.0 * out.loglikelihood;
    out.hqic = 2.0 * k * std::log(std::log(static_cast<double>(out.n_eff))) - 2.0 * out.loglikelihood;

    std::vector<double> clean;
    for (Eigen::Index t = 0; t < out.residuals.size(); ++t)
        if (!is_missing(out.residuals[t])) clean.push_back(out.residuals[t]);
    if (clean.size() >= 8) {
        const auto jb = jarque_bera(clean);
        out.jarque_bera_stat = jb.first;
        out.jarque_bera_p = jb.second;
    }

    if (options.compute_se) {
        const Eigen::MatrixXd hessian = numerical_hessian(objective, best.x, options.hessian_step);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hessian);
        const Eigen::VectorXd& ev = es.eigenvalues();
        out.se_reliable = hessian.allFinite() && ev.minCoeff() > 0.0;
        Eigen::VectorXd inv_ev(ev.size());
        for (Eigen::Index i = 0; i < ev.size(); ++i)
            inv_ev[i] = 1.0 / std::max(ev[i], 1e-12); // clipped pseudo-inverse when not PD
        const Eigen::MatrixXd cov_u =
            es.eigenvectors() * inv_ev.asDiagonal() * es.eigenvectors().transpose();
        const Eigen::MatrixXd jac = transform_jacobian(shape, best.x);
        const Eigen::MatrixXd cov_nat = jac * cov_u * jac.transpose();
        out.standard_errors.resize(k);
        out.z_scores.resize(k);
        out.p_values.resize(k);
        for (int i = 0; i < k; ++i) {
            const double var = cov_nat(i, i);
            out.standard_errors[i] = var > 0.0 ? std::sqrt(var) : 0.0;
            const double value = shape.params[static_cast<std::size_t>(i)].value;
            out.z_scores[i] = out.standard_errors[i] > 0.0 ? value / out.standard_errors[i] : 0.0;
            out.p_values[i] = normal_two_sided_p(out.z_scores[i]);
        }
    }

    if (!any_converged)
        throw FitError("fit did not converge after " + std::to_string(options.n_starts) + " starts",
                       std::make_shared<FitResult>(out));
    return out;
}

std::vector<SignificanceVerdict> significance(const FitResult& fit, double alpha) {
    if (fit.p_values.size() != static_cast<Eigen::Index>(fit.params.size()))
        throw ConfigError("significance requires a fit with standard errors");
    std::vector<SignificanceVerdict> out;
    for (std::size_t i = 0; i < fit.params.size(); ++i) {
        SignificanceVerdict v;
        v.name = fit.params.params[i].name;
        v.estimate = fit.params.params[i].value;
        v.p_value = fit.p_values[static_cast<Eigen::Index>(i)];
        v.keep = v.p_value < alpha;
        v.provisional = !fit.se_reliable;
        out.push_back(v);
    }
    return out;
}

Eigen::VectorXd one_step_predictions(const FitResult& fit, const Eigen::VectorXd& series) {
    const PreparedSeries prepared = prepare_series(series, fit.reg, fit.spec);
    const StateSpaceModel model = build_model(fit.spec, fit.reg, fit.params, series.size());
    const FilterResult fr = filter(model, prepared.observations);
    Eigen::VectorXd out = Eigen::VectorXd::Constant(series.size(), missing_value());
    for (std::size_t t = 0; t < fr.size(); ++t) {
        const Eigen::Index ti = static_cast<Eigen::Index>(t);
        const double pred =
            (model.design_at(t) * fr.predicted_state_means[t])(0) + model.obs_intercept_at(t);
        if (prepared.difference_order == 0) {
            out[ti] = pred;
        } else if (ti >= 1 && !is_missing(prepared.raw[ti - 1])) {
            // Undo the regular difference with the previous observed level.
            out[ti] = prepared.raw[ti - 1] + pred;
        }
    }
    return out;
}

ForecastResult forecast_fit(const FitResult& fit, const Eigen::VectorXd& series,
                            const RegressionSpec& reg_full, int horizon) {
    if (horizon < 1) throw InputError("forecast horizon must be at least 1");
    const Eigen::Index n_train = series.size();
    const Eigen::Index n_total = n_train + horizon;
    if (reg_full.covariate_matrix.cols() > 0 && reg_full.covariate_matrix.rows() != n_total)
        throw InputError("reg_full must cover the training window plus the horizon");

    // Training-window regression = leading rows of the full matrix.
    RegressionSpec reg_train = reg_full;
    if (reg_full.covariate_matrix.cols() > 0)
        reg_train.covariate_matrix = reg_full.covariate_matrix.topRows(n_train);

    const PreparedSeries prepared = prepare_series(series, reg_train, fit.spec);
    const StateSpaceModel model = build_model(fit.spec, reg_train, fit.params, n_train);
    const FilterResult fr = filter(model, prepared.observations);

    // Future observation intercepts come from the model built over the full
    // timeline, which differences/delays covariates consistently.
    Eigen::VectorXd future_d = Eigen::VectorXd::Zero(horizon);
    {
        const StateSpaceModel model_full = build_model(fit.spec, reg_full, fit.params, n_total);
        for (int h = 0; h < horizon; ++h)
            future_d[h] = model_full.obs_intercept_at(static_cast<std::size_t>(n_train + h));
    }

    const int d = prepared.difference_order;
    if (d == 0) return forecast(model, fr, horizon, future_d);

    // d = 1: forecast the differenced series jointly with its running sum so
    // that integrated forecast variances account for cross-horizon covariance.
    const std::size_t last = fr.size() - 1;
    const Eigen::MatrixXd tr = model.transition_at(last);
    const Eigen::RowVectorXd dsg = model.design_at(last);
    const int l = model.state_dim;

    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(l + 1, l + 1);
    a.topLeftCorner(l, l) = tr;
    a.bottomLeftCorner(1, l) = dsg * tr;
    a(l, l) = 1.0;
    Eigen::MatrixXd r_aug(l + 1, model.shock_dim);
    r_aug.topRows(l) = model.selection;
    r_aug.bottomRows(1) = dsg * model.selection;
    const Eigen::MatrixXd shock_cov = r_aug * model.state_cov * r_aug.transpose();

    double base = missing_value();
    for (Eigen::Index t = n_train - 1; t >= 0; --t) {
        if (!is_missing(prepared.raw[t])) {
            base = prepared.raw[t];
            break;
        }
    }
    if (is_missing(base)) throw InputError("cannot forecast: training window has no observed values");

    Eigen::VectorXd m = Eigen::VectorXd::Zero(l + 1);
    m.head(l) = fr.filtered_state_means[last];
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(l + 1, l + 1);
    p.topLeftCorner(l, l) = fr.filtered_state_covs[last];

    ForecastResult out;
    out.horizon = horizon;
    out.point_forecasts.resize(horizon);
    out.forecast_variances.resize(horizon);
    double intercept_sum = 0.0;
    for (int h = 0; h < horizon; ++h) {
        m = a * m;
        p = 0.5 * ((a * p * a.transpose() + shock_cov) + (a * p * a.transpose() + shock_cov).transpose());
        intercept_sum += future_d[h];
        out.point_forecasts[h] = base + m[l] + intercept_sum;
        out.forecast_variances[h] = p(l, l) + (h + 1) * model.obs_cov;
    }
    if (prepared.log_transformed) {
        out.point_forecasts = out.point_forecasts.unaryExpr([](double x) { return std::expm1(x); });
        out.inverse_transformed = true;
    }
    return out;
}

std::string fit_to_json(const FitResult& fit) {
    json j;
    j["spec"] = json::parse(spec_to_json(fit.spec));
    j["loglikelihood"] = fit.loglikelihood;
    j["aic"] = fit.aic;
    j["bic"] = fit.bic;
    j["hqic"] = fit.hqic;
    j["n_eff"] = fit.n_eff;
    j["k"] = fit.k;
    j["residual_variance"] = fit.residual_variance;
    j["jarque_bera_stat"] = fit.jarque_bera_stat;
    j["jarque_bera_p"] = fit.jarque_bera_p;
    j["se_reliable"] = fit.se_reliable;
    json params = json::array();
    for (std::size_t i = 0; i < fit.params.size(); ++i) {
        json p;
        p["name"] = fit.params.params[i].name;
        p["value"] = fit.params.params[i].value;
        if (fit.standard_errors.size() == static_cast<Eigen::Index>(fit.params.size())) {
            p["se"] = fit.standard_errors[static_cast<Eigen::Index>(i)];
            p["z"] = fit.z_scores[static_cast<Eigen::Index>(i)];
            p["p_value"] = fit.p_values[static_cast<Eigen::Index>(i)];
        }
        params.push_back(p);
    }
    j["parameters"] = params;
    j["convergence"] = {{"iterations", fit.convergence.iterations},
                        {"grad_norm", fit.convergence.grad_norm},
                        {"converged", fit.convergence.converged},
                        {"n_starts", fit.convergence.n_starts},
                        {"best_start", fit.convergence.best_start},
                        {"status", fit.convergence.status}};
    return j.dump(2);
}

} // namespace ratekit
