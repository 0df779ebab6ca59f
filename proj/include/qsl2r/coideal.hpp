#pragma once

#include <map>
#include <optional>
#include <vector>

#include "qsl2r/coeffalg.hpp"

namespace qsl2r {

/// Element of the stabilizer coideal: a finitely supported function on the
/// spectrum grid, sum_m coeffs[m] e_{[a+m]}. Realized blockwise through
/// the spectral projections of i B_t.
struct StabElement {
    std::map<int, Scalar> coeffs;

    static StabElement e(int m);

    bool empty() const { return coeffs.empty(); }
    int max_abs_m() const;
    Scalar at(int m) const;

    StabElement star() const;
    /// Product in the (commutative) stabilizer algebra.
    StabElement pointwise(const StabElement& other) const;
    StabElement trimmed(double rel_eps = 1e-13) const;

    StabElement& operator+=(const StabElement& other);
    StabElement& operator*=(Scalar c);
    friend StabElement operator+(StabElement a, const StabElement& b) { return a += b; }
    friend StabElement operator*(Scalar c, StabElement a) { return a *= c; }
};

double stab_max_diff(const StabElement& x, const StabElement& y);

struct EigenPair {
    int m = 0;        // eigenvalue label, eigenvalue is [a+m]
    double value = 0; // matched eigenvalue of i B_t
    Vector vec;       // unit eigenvector
};

/// Per-block spectral data of the coideal generator B_t together with the
/// fixed-vector projections Phi_C. Immutable after construction; blocks run
/// over doubled spins 0..n_max.
///
/// Construction rejects parameter sets whose spectrum {[a+m]} is not
/// cleanly separated (the eigenvalue-to-m matching must be bijective with
/// per-eigenvalue gap at most 100*tol).
class CoidealData {
public:
    CoidealData(const RepTable& rt, int n_max);

    const RepTable& reps() const { return rt_; }
    const QContext& ctx() const { return rt_.ctx(); }
    int n_max() const { return n_max_; }

    /// The Hermitian operator i B_t on block n.
    const Matrix& ibt(int n) const;
    const std::vector<EigenPair>& eigen_pairs(int n) const;
    /// Orthogonal projection onto the [a]-eigenspace; zero on odd blocks.
    const Matrix& phi_c(int n) const;
    bool has_m(int n, int m) const { return n <= n_max_ && std::abs(m) <= n && (n - m) % 2 == 0; }
    const Vector& eigvec(int n, int m) const;

    /// Blockwise realization sum_m coeffs[m] P_{[a+m]} on block n.
    Matrix stab_block(const StabElement& x, int n) const;
    DualElement stab_dual(const StabElement& x) const;
    DualElement phi_c_dual() const { return stab_dual(StabElement::e(0)); }
    DualElement bt_dual() const;

    /// Coproduct image of B_t on a tensor block pair.
    Matrix delta_bt(int n1, int n2) const;
    /// Spectral projections of i Delta(B_t) on the pair, keyed by m.
    std::map<int, Matrix> delta_spectral_projections(int n1, int n2) const;
    /// The [a]-eigenprojection of i Delta(B_t), i.e. Delta(Phi_C) on the pair.
    Matrix delta_phi_c(int n1, int n2) const;

private:
    struct Block {
        Matrix ibt;
        std::vector<EigenPair> pairs;
        Matrix phi_c;
    };
    const RepTable& rt_;
    int n_max_;
    std::vector<Block> blocks_;
};

/// The [a+n]-eigenvector of i B_t in the top block, in closed form
/// (unnormalized); its squared norm is (-q^{-2a}; q^{-2})_n.
Vector eigvec_plus(int n, const QContext& ctx);

/// Right action of the coefficient algebra on the stabilizer: the element
/// y with tau(c, y) = tau(a c, x). When m_bound >= 0 only coefficients with
/// |m| <= m_bound are evaluated (the support is xm + n_a in general).
StabElement act_rmod(const StabElement& x, const CoeffElement& a, const CoidealData& cd,
                     int m_bound = -1);

/// Phi_C(a -) as an element of the stabilizer.
StabElement stab_from_coeff(const CoeffElement& a, const CoidealData& cd);

/// Conditional expectation onto the coideal subalgebra (left leg fixed by
/// Phi_C) and its twin F_B with F_B(a) = E_B(a*)*.
CoeffElement e_b(const CoeffElement& a, const CoidealData& cd);
CoeffElement f_b(const CoeffElement& a, const CoidealData& cd);

bool is_b_element(const CoeffElement& a, const CoidealData& cd, double* residual = nullptr);

/// Modular automorphism of the coideal subalgebra (+1) or its inverse (-1).
/// The argument must satisfy the coideal membership invariant.
CoeffElement sigma_b(const CoeffElement& b, int direction, const CoidealData& cd);

/// Phi_C K Phi_C on an even block.
Matrix delta_b_half(int n, const CoidealData& cd);

/// The automorphism b -> sigma_B^{-1} sigma_A S_A^{-2}(b) of the coideal
/// subalgebra.
CoeffElement theta(const CoeffElement& b, const CoidealData& cd);

/// *-spherical function pi_n(Phi_C xi, R(Phi_C) eta).
CoeffElement spherical(int n, const Vector& xi, const Vector& eta, const CoidealData& cd);

/// The functional a -> tau(a, e_{[a]}), the counit support functional.
Scalar phi_c_functional(const CoeffElement& a, const CoidealData& cd);

}  // namespace qsl2r
