#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "ratekit/errors.hpp"

namespace ratekit {

/// Cycle frequency bounds: periods between two weeks and ~ten months.
inline constexpr double kCycleFreqLow = 2.0 * 3.14159265358979323846 / 300.0;
inline constexpr double kCycleFreqHigh = 2.0 * 3.14159265358979323846 / 14.0;

enum class ParamKind {
    Beta,      // regression coefficient, unconstrained
    Intercept, // model intercept / drift, unconstrained
    Ar,        // member of an AR block, jointly constrained to stationarity
    Ma,        // member of an MA block, jointly constrained to invertibility
    Variance,  // positive, log/exp transform
    CycleFreq, // scaled-logistic onto (kCycleFreqLow, kCycleFreqHigh)
};

struct Param {
    std::string name;
    ParamKind kind;
    double value = 0.0; // natural scale
    int block = 0;      // AR/MA blocks with the same id transform jointly
};

/// Ordered named parameters on the natural scale, with a bijection onto an
/// unconstrained vector used by the optimizer.
struct ParameterVector {
    std::vector<Param> params;

    std::size_t size() const { return params.size(); }
    Eigen::VectorXd natural() const;
    void set_natural(const Eigen::VectorXd& values);
    int index_of(const std::string& name) const; // -1 when absent
    double value_of(const std::string& name) const;

    /// Coefficients of the AR/MA block with the given id, in order.
    std::vector<double> block_values(ParamKind kind, int block) const;
};

/// Natural -> unconstrained. Throws ConstraintError if the natural values
/// violate their constraints (nonpositive variance, nonstationary AR, ...).
Eigen::VectorXd to_unconstrained(const ParameterVector& pv);

/// Unconstrained -> natural (total: any finite input maps into the region).
Eigen::VectorXd to_natural(const ParameterVector& pv, const Eigen::VectorXd& unconstrained);

/// Jacobian d(natural)/d(unconstrained), computed by central differences.
Eigen::MatrixXd transform_jacobian(const ParameterVector& pv, const Eigen::VectorXd& unconstrained,
                                   double step = 1e-6);

/// True when the coefficients place all roots of 1 - a_1 z - ... - a_p z^p
/// outside the unit circle.
bool is_stationary(const std::vector<double>& ar_coeffs);

/// True when 1 + b_1 z + ... + b_q z^q has all roots outside the unit circle.
bool is_invertible(const std::vector<double>& ma_coeffs);

namespace detail {
// Monahan-style bijections between R^k and the stationary / invertible
// coefficient regions, via partial autocorrelations.
Eigen::VectorXd pacf_to_ar(const Eigen::VectorXd& pacf);
Eigen::VectorXd ar_to_pacf(const Eigen::VectorXd& ar);
Eigen::VectorXd pacf_to_ma(const Eigen::VectorXd& pacf);
Eigen::VectorXd ma_to_pacf(const Eigen::VectorXd& ma);
} // namespace detail

} // namespace ratekit
