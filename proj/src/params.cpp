#include "ratekit/params.hpp"

#include <cmath>
#include <map>

namespace ratekit {

namespace {

double atanh_clamped(double r) {
    const double c = std::max(-1.0 + 1e-12, std::min(1.0 - 1e-12, r));
    return std::atanh(c);
}

// Companion-matrix root check for 1 - sum a_i z^i (degree p).
bool roots_outside_unit_circle(const std::vector<double>& a) {
    std::size_t p = a.size();
    while (p > 0 && a[p - 1] == 0.0) --p;
    if (p == 0) return true;
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(p, p);
    for (std::size_t i = 0; i < p; ++i) companion(0, i) = a[i];
    for (std::size_t i = 1; i < p; ++i) companion(i, i - 1) = 1.0;
    const auto eigenvalues = companion.eigenvalues();
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
        if (std::abs(eigenvalues[i]) >= 1.0 - 1e-10) return false;
    return true;
}

} // namespace

bool is_stationary(const std::vector<double>& ar_coeffs) { return roots_outside_unit_circle(ar_coeffs); }

bool is_invertible(const std::vector<double>& ma_coeffs) {
    std::vector<double> negated(ma_coeffs.size());
    for (std::size_t i = 0; i < ma_coeffs.size(); ++i) negated[i] = -ma_coeffs[i];
    return roots_outside_unit_circle(negated);
}

namespace detail {

Eigen::VectorXd pacf_to_ar(const Eigen::VectorXd& pacf) {
    const Eigen::Index p = pacf.size();
    Eigen::VectorXd cur = pacf;
    Eigen::VectorXd tmp = pacf;
    for (Eigen::Index j = 1; j < p; ++j) {
        const double a = cur[j];
        for (Eigen::Index k = 0; k < j; ++k) tmp[k] = cur[k] - a * cur[j - k - 1];
        for (Eigen::Index k = 0; k < j; ++k) cur[k] = tmp[k];
    }
    return cur;
}

Eigen::VectorXd ar_to_pacf(const Eigen::VectorXd& ar) {
    const Eigen::Index p = ar.size();
    Eigen::VectorXd cur = ar;
    Eigen::VectorXd pacf(p);
    for (Eigen::Index j = p - 1; j >= 0; --j) {
        const double r = cur[j];
        pacf[j] = r;
        if (j == 0) break;
        const double denom = 1.0 - r * r;
        if (std::abs(denom) < 1e-300) throw ConstraintError("AR coefficients on the stationarity boundary");
        Eigen::VectorXd prev(j);
        for (Eigen::Index k = 0; k < j; ++k) prev[k] = (cur[k] + r * cur[j - k - 1]) / denom;
        cur.head(j) = prev;
    }
    return pacf;
}

Eigen::VectorXd pacf_to_ma(const Eigen::VectorXd& pacf) {
    const Eigen::Index q = pacf.size();
    Eigen::VectorXd cur = pacf;
    Eigen::VectorXd tmp = pacf;
    for (Eigen::Index j = 1; j < q; ++j) {
        const double b = cur[j];
        for (Eigen::Index k = 0; k < j; ++k) tmp[k] = cur[k] + b * cur[j - k - 1];
        for (Eigen::Index k = 0; k < j; ++k) cur[k] = tmp[k];
    }
    return cur;
}

Eigen::VectorXd ma_to_pacf(const Eigen::VectorXd& ma) {
    const Eigen::Index q = ma.size();
    Eigen::VectorXd cur = ma;
    Eigen::VectorXd pacf(q);
    for (Eigen::Index j = q - 1; j >= 0; --j) {
        const double r = cur[j];
        pacf[j] = r;
        if (j == 0) break;
        const double denom = 1.0 - r * r;
        if (std::abs(denom) < 1e-300) throw ConstraintError("MA coefficients on the invertibility boundary");
        Eigen::VectorXd prev(j);
        for (Eigen::Index k = 0; k < j; ++k) prev[k] = (cur[k] - r * cur[j - k - 1]) / denom;
        cur.head(j) = prev;
    }
    return pacf;
}

} // namespace detail

Eigen::VectorXd ParameterVector::natural() const {
    Eigen::VectorXd v(params.size());
    for (std::size_t i = 0; i < params.size(); ++i) v[static_cast<Eigen::Index>(i)] = params[i].value;
    return v;
}

void ParameterVector::set_natural(const Eigen::VectorXd& values) {
    if (static_cast<std::size_t>(values.size()) != params.size())
        throw ConfigError("parameter vector length mismatch");
    for (std::size_t i = 0; i < params.size(); ++i) params[i].value = values[static_cast<Eigen::Index>(i)];
}

int ParameterVector::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < params.size(); ++i)
        if (params[i].name == name) return static_cast<int>(i);
    return -1;
}

double ParameterVector::value_of(const std::string& name) const {
    const int i = index_of(name);
    if (i < 0) throw ConfigError("unknown parameter '" + name + "'");
    return params[static_cast<std::size_t>(i)].value;
}

std::vector<double> ParameterVector::block_values(ParamKind kind, int block) const {
    std::vector<double> out;
    for (const auto& p : params)
        if (p.kind == kind && p.block == block) out.push_back(p.value);
    return out;
}

namespace {

struct BlockRef {
    ParamKind kind;
    int block;
    std::vector<Eigen::Index> indices;
};

std::vector<BlockRef> collect_blocks(const ParameterVector& pv, ParamKind kind) {
    std::map<int, BlockRef> blocks;
    for (std::size_t i = 0; i < pv.params.size(); ++i) {
        const Param& p = pv.params[i];
        if (p.kind != kind) continue;
        auto& b = blocks[p.block];
        b.kind = kind;
        b.block = p.block;
        b.indices.push_back(static_cast<Eigen::Index>(i));
    }
    std::vector<BlockRef> out;
    for (auto& [id, b] : blocks) out.push_back(std::move(b));
    return out;
}

} // namespace

Eigen::VectorXd to_unconstrained(const ParameterVector& pv) {
    Eigen::VectorXd out(pv.params.size());
    for (std::size_t i = 0; i < pv.params.size(); ++i) {
        const Param& p = pv.params[i];
        const Eigen::Index idx = static_cast<Eigen::Index>(i);
        switch (p.kind) {
            case ParamKind::Beta:
            case ParamKind::Intercept:
                if (!std::isfinite(p.value)) throw InputError("non-finite parameter " + p.name);
                out[idx] = p.value;
                break;
            case ParamKind::Variance:
                if (!(p.value > 0.0)) throw ConstraintError("variance " + p.name + " must be positive");
                out[idx] = std::log(p.value);
                break;
            case ParamKind::CycleFreq: {
                if (!(p.value > kCycleFreqLow && p.value < kCycleFreqHigh))
                    throw ConstraintError("cycle frequency out of range");
                const double u = (p.value - kCycleFreqLow) / (kCycleFreqHigh - kCycleFreqLow);
                out[idx] = std::log(u / (1.0 - u));
                break;
            }
            case ParamKind::Ar:
            case ParamKind::Ma:
                out[idx] = 0.0; // filled in blockwise below
                break;
        }
    }
    for (ParamKind kind : {ParamKind::Ar, ParamKind::Ma}) {
        for (const BlockRef& b : collect_blocks(pv, kind)) {
            Eigen::VectorXd coeffs(b.indices.size());
            for (std::size_t j = 0; j < b.indices.size(); ++j)
                coeffs[static_cast<Eigen::Index>(j)] = pv.params[static_cast<std::size_t>(b.indices[j])].value;
            std::vector<double> as_vec(coeffs.data(), coeffs.data() + coeffs.size());
            if (kind == ParamKind::Ar && !is_stationary(as_vec))
                throw ConstraintError("AR block is not stationary");
            if (kind == ParamKind::Ma && !is_invertible(as_vec))
                throw ConstraintError("MA block is not invertible");
            const Eigen::VectorXd pacf =
                kind == ParamKind::Ar ? detail::ar_to_pacf(coeffs) : detail::ma_to_pacf(coeffs);
            for (std::size_t j = 0; j < b.indices.size(); ++j)
                out[b.indices[j]] = atanh_clamped(pacf[static_cast<Eigen::Index>(j)]);
        }
    }
    return out;
}

Eigen::VectorXd to_natural(const ParameterVector& pv, const Eigen::VectorXd& unconstrained) {
    if (static_cast<std::size_t>(unconstrained.size()) != pv.params.size())
        throw ConfigError("unconstrained vector length mismatch");
    if (!unconstrained.allFinite()) throw InputError("non-finite unconstrained parameters");
    Eigen::VectorXd out(unconstrained.size());
    for (std::size_t i = 0; i < pv.params.size(); ++i) {
        const Param& p = pv.params[i];
        const Eigen::Index idx = static_cast<Eigen::Index>(i);
        switch (p.kind) {
            case ParamKind::Beta:
            case ParamKind::Intercept:
                out[idx] = unconstrained[idx];
                break;
            case ParamKind::Variance:
                out[idx] = std::exp(unconstrained[idx]);
                break;
            case ParamKind::CycleFreq: {
                const double u = 1.0 / (1.0 + std::exp(-unconstrained[idx]));
                out[idx] = kCycleFreqLow + u * (kCycleFreqHigh - kCycleFreqLow);
                break;
            }
            case ParamKind::Ar:
            case ParamKind::Ma:
                out[idx] = 0.0;
                break;
        }
    }
    for (ParamKind kind : {ParamKind::Ar, ParamKind::Ma}) {
        for (const BlockRef& b : collect_blocks(pv, kind)) {
            Eigen::VectorXd pacf(b.indices.size());
            for (std::size_t j = 0; j < b.indices.size(); ++j)
                pacf[static_cast<Eigen::Index>(j)] = std::tanh(unconstrained[b.indices[j]]);
            const Eigen::VectorXd coeffs =
                kind == ParamKind::Ar ? detail::pacf_to_ar(pacf) : detail::pacf_to_ma(pacf);
            for (std::size_t j = 0; j < b.indices.size(); ++j)
                out[b.indices[j]] = coeffs[static_cast<Eigen::Index>(j)];
        }
    }
    return out;
}

Eigen::MatrixXd transform_jacobian(const ParameterVector& pv, const Eigen::VectorXd& unconstrained,
                                   double step) {
    const Eigen::Index n = unconstrained.size();
    Eigen::MatrixXd jac(n, n);
    Eigen::VectorXd probe = unconstrained;
    for (Eigen::Index j = 0; j < n; ++j) {
        const double h = step * (1.0 + std::abs(unconstrained[j]));
        probe[j] = unconstrained[j] + h;
        const Eigen::VectorXd plus = to_natural(pv, probe);
        probe[j] = unconstrained[j] - h;
        const Eigen::VectorXd minus = to_natural(pv, probe);
        probe[j] = unconstrained[j];
        jac.col(j) = (plus - minus) / (2.0 * h);
    }
    return jac;
}

} // namespace ratekit
