#include "qsl2r/qnum.hpp"

#include <cmath>

namespace qsl2r {

QContext::QContext(double q_, double a_, double tol_, double max_spin_)
    : q(q_), a(a_), tol(tol_), max_spin(max_spin_) {
    if (!(q > 0.0 && q < 1.0))
        throw std::invalid_argument("QContext: q must lie in (0,1)");
    if (!(a > 0.0))
        throw std::invalid_argument("QContext: a must be positive");
    if (!(tol > 0.0))
        throw std::invalid_argument("QContext: tol must be positive");
    if (!(max_spin >= 1.0))
        throw std::invalid_argument("QContext: max_spin must be >= 1");
}

double QContext::t() const { return std::pow(q, a) - std::pow(q, -a); }

double q_int(double x, const QContext& ctx) {
    const double q = ctx.q;
    return (std::pow(q, x) - std::pow(q, -x)) / (q - 1.0 / q);
}

Scalar q_pochhammer(Scalar x, Scalar base, int n) {
    if (n < 0) throw std::invalid_argument("q_pochhammer: n must be >= 0");
    Scalar acc = 1.0;
    Scalar b = 1.0;
    for (int k = 0; k < n; ++k) {
        acc *= (1.0 - b * x);
        b *= base;
    }
    return acc;
}

bool approx_eq(Scalar x, Scalar y, const QContext& ctx) {
    return std::abs(x - y) <= ctx.tol;
}

bool approx_eq(double x, double y, const QContext& ctx) {
    return std::abs(x - y) <= ctx.tol;
}

bool approx_eq(const Matrix& x, const Matrix& y, const QContext& ctx) {
    if (x.rows() != y.rows() || x.cols() != y.cols())
        throw std::invalid_argument("approx_eq: shape mismatch");
    return max_abs_diff(x, y) <= ctx.tol;
}

double max_abs_diff(const Matrix& x, const Matrix& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols())
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    if (x.size() == 0) return 0.0;
    return (x - y).cwiseAbs().maxCoeff();
}

double max_abs(const Matrix& x) {
    if (x.size() == 0) return 0.0;
    return x.cwiseAbs().maxCoeff();
}

}  // namespace qsl2r
