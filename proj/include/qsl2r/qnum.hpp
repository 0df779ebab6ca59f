#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace qsl2r {

using Scalar = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Global parameter set shared by every module: the deformation parameter
/// 0 < q < 1, the coideal parameter a > 0 (the twist is t = q^a - q^{-a},
/// always derived, never entered directly), the comparison tolerance and
/// the spin cutoff for global sweeps.
struct QContext {
    double q = 0.5;
    double a = 1.0;
    double tol = 1e-9;
    double max_spin = 4.0;

    QContext() = default;
    QContext(double q_, double a_, double tol_ = 1e-9, double max_spin_ = 4.0);

    /// t = q^a - q^{-a}, negative for a > 0.
    double t() const;

    /// max_spin as a doubled-spin integer (n = 2*spin).
    int max_n() const { return static_cast<int>(std::lround(2.0 * max_spin)); }
};

/// q-integer [x] = (q^x - q^{-x}) / (q - q^{-1}).
double q_int(double x, const QContext& ctx);

/// Pochhammer symbol (x; base)_n = (1 - x)(1 - base*x)...(1 - base^{n-1} x),
/// empty product for n = 0.
Scalar q_pochhammer(Scalar x, Scalar base, int n);

bool approx_eq(Scalar x, Scalar y, const QContext& ctx);
bool approx_eq(double x, double y, const QContext& ctx);

/// Entrywise comparison; mismatched shapes are a usage error.
bool approx_eq(const Matrix& x, const Matrix& y, const QContext& ctx);

/// Largest absolute entry of the difference (the residual all reports use).
double max_abs_diff(const Matrix& x, const Matrix& y);
double max_abs(const Matrix& x);

}  // namespace qsl2r
