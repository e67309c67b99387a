#include "ratekit/ssm.hpp"

#include <cmath>
#include <string>

namespace ratekit {

namespace {

constexpr double kLog2Pi = 1.8378770664093454835606594728112;
constexpr double kPsdTol = -1e-10;

void check_finite(const Eigen::MatrixXd& m, const char* name) {
    if (!m.allFinite()) throw InputError(std::string("non-finite values in ") + name);
}

void check_psd(const Eigen::MatrixXd& m, const char* name) {
    if (m.rows() == 0) return;
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-8 * (1.0 + m.cwiseAbs().maxCoeff()))
        throw ConfigError(std::string(name) + " is not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    if (es.eigenvalues().minCoeff() < kPsdTol * scale)
        throw ConfigError(std::string(name) + " is not positive semi-definite");
}

Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& p) { return 0.5 * (p + p.transpose()); }

} // namespace

void StateSpaceModel::validate(std::size_t n) const {
    if (state_dim <= 0) throw ConfigError("state_dim must be positive");
    if (n < 1) throw InputError("observation series is empty");
    auto check_len = [&](std::size_t len, const char* name) {
        if (len != 1 && len != n)
            throw ConfigError(std::string(name) + " must be time-invariant or have one entry per observation");
    };
    if (transition.empty()) throw ConfigError("transition is empty");
    check_len(transition.size(), "transition");
    for (const auto& m : transition) {
        if (m.rows() != state_dim || m.cols() != state_dim)
            throw ConfigError("transition dimensions do not match state_dim");
        check_finite(m, "transition");
    }
    if (!state_intercept.empty()) {
        check_len(state_intercept.size(), "state_intercept");
        for (const auto& v : state_intercept) {
            if (v.size() != state_dim) throw ConfigError("state_intercept length does not match state_dim");
            check_finite(v, "state_intercept");
        }
    }
    if (selection.rows() != state_dim || selection.cols() != shock_dim)
        throw ConfigError("selection must be state_dim x shock_dim");
    check_finite(selection, "selection");
    if (design.empty()) throw ConfigError("design is empty");
    check_len(design.size(), "design");
    for (const auto& d : design) {
        if (d.size() != state_dim) throw ConfigError("design length does not match state_dim");
        check_finite(d, "design");
    }
    if (obs_intercept.size() != 0 && obs_intercept.size() != 1 &&
        obs_intercept.size() != static_cast<Eigen::Index>(n))
        throw ConfigError("obs_intercept must be empty, constant or have one entry per observation");
    check_finite(obs_intercept, "obs_intercept");
    if (state_cov.rows() != shock_dim || state_cov.cols() != shock_dim)
        throw ConfigError("state_cov must be shock_dim x shock_dim");
    check_finite(state_cov, "state_cov");
    check_psd(state_cov, "state_cov");
    if (!std::isfinite(obs_cov) || obs_cov < 0.0) throw ConfigError("obs_cov must be a nonnegative real");
    if (init_mean.size() != state_dim) throw ConfigError("init_mean length does not match state_dim");
    check_finite(init_mean, "init_mean");
    if (init_cov.rows() != state_dim || init_cov.cols() != state_dim)
        throw ConfigError("init_cov must be state_dim x state_dim");
    check_finite(init_cov, "init_cov");
    check_psd(init_cov, "init_cov");
    if (loglik_burn_in < 0) throw ConfigError("loglik_burn_in must be nonnegative");
}

FilterResult filter(const StateSpaceModel& model, const Eigen::VectorXd& observations) {
    const std::size_t n = static_cast<std::size_t>(observations.size());
    model.validate(n);

    const Eigen::MatrixXd shock_cov = model.selection * model.state_cov * model.selection.transpose();

    FilterResult fr;
    fr.predicted_state_means.resize(n);
    fr.predicted_state_covs.resize(n);
    fr.filtered_state_means.resize(n);
    fr.filtered_state_covs.resize(n);
    fr.innovations = Eigen::VectorXd::Constant(n, missing_value());
    fr.innovation_variances = Eigen::VectorXd::Zero(n);
    fr.burn_in_used = model.loglik_burn_in;

    Eigen::VectorXd m = model.init_mean;
    Eigen::MatrixXd p = model.init_cov;
    double loglik = 0.0;
    int contributing = 0;

    for (std::size_t t = 0; t < n; ++t) {
        if (t > 0) {
            const Eigen::MatrixXd& tr = model.transition_at(t);
            m = tr * m + model.state_intercept_at(t);
            p = symmetrize(tr * p * tr.transpose() + shock_cov);
        }
        fr.predicted_state_means[t] = m;
        fr.predicted_state_covs[t] = p;

        const Eigen::RowVectorXd& d = model.design_at(t);
        const double f = (d * p * d.transpose())(0) + model.obs_cov;
        fr.innovation_variances[t] = f;

        const double z = observations[static_cast<Eigen::Index>(t)];
        if (is_missing(z)) {
            fr.filtered_state_means[t] = m;
            fr.filtered_state_covs[t] = p;
            continue;
        }
        if (!std::isfinite(z)) throw InputError("non-finite observation at step " + std::to_string(t));
        if (!(f > 0.0))
            throw NumericError("innovation variance is not positive at step " + std::to_string(t));

        const double v = z - (d * m)(0) - model.obs_intercept_at(t);
        fr.innovations[static_cast<Eigen::Index>(t)] = v;

        const Eigen::VectorXd gain = p * d.transpose() / f;
        m += gain * v;
        p = symmetrize(p - gain * (d * p));
        fr.filtered_state_means[t] = m;
        fr.filtered_state_covs[t] = p;

        ++contributing;
        if (contributing > model.loglik_burn_in) loglik += -0.5 * (kLog2Pi + std::log(f) + v * v / f);
    }

    fr.loglikelihood = loglik;
    fr.n_contributing = std::max(0, contributing - model.loglik_burn_in);
    return fr;
}

SmoothResult smooth(const StateSpaceModel& model, const FilterResult& fr) {
    const std::size_t n = fr.size();
    if (n == 0 || fr.filtered_state_means.size() != n)
        throw InputError("smooth: filter result is empty or inconsistent");
    if (fr.filtered_state_means.front().size() != model.state_dim)
        throw InputError("smooth: filter result does not match the model");

    SmoothResult sr;
    sr.smoothed_state_means.resize(n);
    sr.smoothed_state_covs.resize(n);
    sr.smoothed_state_means[n - 1] = fr.filtered_state_means[n - 1];
    sr.smoothed_state_covs[n - 1] = fr.filtered_state_covs[n - 1];

    for (std::size_t t = n - 1; t-- > 0;) {
        const Eigen::MatrixXd& tr = model.transition_at(t + 1);
        const Eigen::MatrixXd& p_pred = fr.predicted_state_covs[t + 1];

        // Pseudo-inverse through an eigendecomposition: predicted covariances
        // of deterministic states can be exactly singular.
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(p_pred);
        const Eigen::VectorXd& ev = es.eigenvalues();
        const double tol = 1e-12 * std::max(1.0, ev.cwiseAbs().maxCoeff());
        Eigen::VectorXd inv = Eigen::VectorXd::Zero(ev.size());
        for (Eigen::Index i = 0; i < ev.size(); ++i)
            if (ev[i] > tol) inv[i] = 1.0 / ev[i];
        const Eigen::MatrixXd p_pred_inv =
            es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();

        const Eigen::MatrixXd j = fr.filtered_state_covs[t] * tr.transpose() * p_pred_inv;
        sr.smoothed_state_means[t] =
            fr.filtered_state_means[t] + j * (sr.smoothed_state_means[t + 1] - fr.predicted_state_means[t + 1]);
        const Eigen::MatrixXd cov =
            fr.filtered_state_covs[t] + j * (sr.smoothed_state_covs[t + 1] - p_pred) * j.transpose();
        sr.smoothed_state_covs[t] = symmetrize(cov);
    }
    return sr;
}

ForecastResult forecast(const StateSpaceModel& model, const FilterResult& fr, int horizon,
                        const Eigen::VectorXd& future_obs_intercepts) {
    if (horizon < 1) throw InputError("forecast horizon must be at least 1");
    if (future_obs_intercepts.size() != horizon)
        throw InputError("future_obs_intercepts length must equal the horizon");
    if (fr.size() == 0) throw InputError("forecast: empty filter result");

    const std::size_t n = fr.size();
    const Eigen::MatrixXd shock_cov = model.selection * model.state_cov * model.selection.transpose();
    // Beyond the sample, time-varying system matrices hold at their final value.
    const Eigen::MatrixXd tr = model.transition_at(n - 1);
    const Eigen::RowVectorXd d = model.design_at(n - 1);
    const Eigen::VectorXd c = model.state_intercept_at(n - 1);

    ForecastResult out;
    out.horizon = horizon;
    out.point_forecasts.resize(horizon);
    out.forecast_variances.resize(horizon);

    Eigen::VectorXd m = fr.filtered_state_means[n - 1];
    Eigen::MatrixXd p = fr.filtered_state_covs[n - 1];
    for (int h = 0; h < horizon; ++h) {
        m = tr * m + c;
        p = symmetrize(tr * p * tr.transpose() + shock_cov);
        out.point_forecasts[h] = (d * m)(0) + future_obs_intercepts[h];
        out.forecast_variances[h] = (d * p * d.transpose())(0) + model.obs_cov;
    }
    if (model.log_scale) {
        out.point_forecasts = out.point_forecasts.unaryExpr([](double x) { return std::expm1(x); });
        out.inverse_transformed = true;
    }
    return out;
}

} // namespace ratekit
