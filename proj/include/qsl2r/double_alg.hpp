#pragma once

#include "qsl2r/relint.hpp"

namespace qsl2r {

/// Element of the double coideal in stabilizer-first normal form,
/// sum_k x_k b_k with x_k in the stabilizer and b_k in the coideal
/// subalgebra.
struct DoubleElement {
    std::vector<std::pair<StabElement, CoeffElement>> terms;

    static DoubleElement from_term(StabElement x, CoeffElement b);
    /// Truncated unit: (sum_{|m| <= m_range} e_m) 1_B, the identity on any
    /// element whose stabilizer support stays within m_range.
    static DoubleElement one(int m_range);

    bool empty() const { return terms.empty(); }
    DoubleElement& operator+=(const DoubleElement& other);
    DoubleElement& operator*=(Scalar c);
    friend DoubleElement operator+(DoubleElement a, const DoubleElement& b) { return a += b; }
    friend DoubleElement operator*(Scalar c, DoubleElement a) { return a *= c; }
};

/// Canonical normal form: one term e_m (x) B_m per stabilizer label, tiny
/// contributions dropped relative to the overall scale.
DoubleElement normalized(const DoubleElement& d, double rel_eps = 1e-13);

/// Largest doubled spin in any coideal leg / largest stabilizer label.
int b_span(const DoubleElement& d);
int i_span(const DoubleElement& d);

/// Coordinates agree on the canonical tensor basis.
double double_max_diff(const DoubleElement& d1, const DoubleElement& d2,
                       const CoidealData& cd);

/// Reorder the product b x into normal form via the cross relation
/// b x = sum (x <| S_A^{-1}(b_(2))) b_(1).
DoubleElement from_bi(const CoeffElement& b, const StabElement& x, const CoidealData& cd);

/// Expand x b in coideal-first order via x b = sum b_(1) (x <| b_(2)).
std::vector<std::pair<CoeffElement, StabElement>> to_bi(const DoubleElement& d,
                                                        const CoidealData& cd);

DoubleElement dmul(const DoubleElement& d1, const DoubleElement& d2, const CoidealData& cd);
DoubleElement dstar(const DoubleElement& d, const CoidealData& cd);

/// The positive functional x b -> psi(x) haar(b).
Scalar phi_d(const DoubleElement& d, const InvariantIntegral& integral);

/// Modular automorphism of phi_d: y b -> kappa(y) sigma_B(g^{-1} |> b);
/// kappa is trivial on the commutative stabilizer.
DoubleElement sigma_d(const DoubleElement& d, const InvariantIntegral& integral,
                      const CoidealData& cd);

/// Bimodule action x |> d <| a = sum (x_k <| a) (x |> b_k).
DoubleElement bimodule_act(const DualElement& x, const DoubleElement& d,
                           const CoeffElement& a, const CoidealData& cd);

/// Ordered GNS basis of the truncated coideal subalgebra: one element
/// pi_n(v_0, e_j) per even block n <= cutoff_n and column j.
struct GnsBasisB {
    int cutoff_n = 0;
    std::vector<std::pair<int, int>> index;  // (n, j)
    Matrix gram;                             // <b, c> = haar(b* c), positive definite

    std::size_t size() const { return index.size(); }
    std::size_t position(int n, int j) const;
};

GnsBasisB build_gns_basis_b(int cutoff_n, const CoidealData& cd);
CoeffElement gns_b_element(const GnsBasisB& basis, std::size_t idx, const CoidealData& cd);

/// GNS basis of the truncated stabilizer: e_m for |m| <= truncation, Gram
/// diagonal with entries mu_m.
struct GnsBasisI {
    int truncation = 0;
    Eigen::VectorXd gram;  // mu_{-M}, ..., mu_{M}

    std::size_t size() const { return static_cast<std::size_t>(2 * truncation + 1); }
    std::size_t position(int m) const { return static_cast<std::size_t>(m + truncation); }
};

GnsBasisI build_gns_basis_i(const InvariantIntegral& integral);

/// Truncated carrier of the regular representation, basis ordered as
/// (B index) x (stabilizer index) with flat index b*dimI + i.
struct RegularRep {
    GnsBasisB basis_b;
    GnsBasisI basis_i;
    Matrix gram;  // kron(gram_B, diag mu)

    std::size_t dim() const { return basis_b.size() * basis_i.size(); }
    std::size_t flat(std::size_t b, std::size_t i) const { return b * basis_i.size() + i; }
};

RegularRep make_regular_rep(int cutoff_n, const InvariantIntegral& integral,
                            const CoidealData& cd);

/// Matrix of the element in the GNS bases (compressed to the truncation).
Matrix regular_rep_matrix(const DoubleElement& d, const RegularRep& rr, const CoidealData& cd);
/// Serial reference for regular_rep_matrix; identical output.
Matrix regular_rep_matrix_serial(const DoubleElement& d, const RegularRep& rr,
                                 const CoidealData& cd);

/// GNS vector Lambda_D(b x) = Lambda_B(b) (x) Lambda_I(x), evaluated on the
/// coideal-first expansion of the normal form.
Vector gns_vector(const DoubleElement& d, const RegularRep& rr, const CoidealData& cd);

/// Basis indices whose vectors stay exact under operators with the given
/// spans: B-spin margin b_margin_n (doubled) and stabilizer margin i_margin.
std::vector<std::size_t> interior_indices(const RegularRep& rr, int b_margin_n, int i_margin);

}  // namespace qsl2r
