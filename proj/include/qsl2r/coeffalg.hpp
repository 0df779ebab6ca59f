#pragma once

#include <functional>
#include <map>
#include <vector>

#include "qsl2r/uqsu2.hpp"

namespace qsl2r {

/// Element of the coefficient Hopf *-algebra, stored as one coefficient
/// matrix per spin block. The block M at doubled spin n stands for
/// sum_{ij} M_ij pi_{n/2}(e_j, e_i); a matrix coefficient pi(xi, eta)
/// therefore has the rank-one block eta xi^dagger, and the pairing with a
/// dual element x is sum_n Tr(M_n pi_n(x)).
class CoeffElement {
public:
    CoeffElement() = default;

    static CoeffElement unit();
    static CoeffElement matrix_coeff(int n, const Vector& xi, const Vector& eta);

    const std::map<int, Matrix>& blocks() const { return blocks_; }
    bool has_block(int n) const { return blocks_.count(n) != 0; }
    Matrix block_or_zero(int n) const;
    void set_block(int n, Matrix m);
    void add_to_block(int n, const Matrix& m);

    std::vector<int> support() const;
    int max_support_n() const;
    bool empty() const { return blocks_.empty(); }

    /// Drop blocks whose largest entry is below eps * (overall scale).
    CoeffElement trimmed(double rel_eps = 1e-13) const;

    CoeffElement& operator+=(const CoeffElement& other);
    CoeffElement& operator-=(const CoeffElement& other);
    CoeffElement& operator*=(Scalar c);
    friend CoeffElement operator+(CoeffElement a, const CoeffElement& b) { return a += b; }
    friend CoeffElement operator-(CoeffElement a, const CoeffElement& b) { return a -= b; }
    friend CoeffElement operator*(Scalar c, CoeffElement a) { return a *= c; }

private:
    std::map<int, Matrix> blocks_;
};

/// Element of the dual algebra given blockwise, possibly lazily (e.g. the
/// modular character k^s evaluated on demand per block).
struct DualElement {
    std::function<Matrix(int n)> block;
};

DualElement dual_one(const RepTable& rt);
/// k^s as a dual element, blockwise diag(q^{s(n-2p)}).
DualElement dual_k_power(const RepTable& rt, double s);

Matrix k_power(const SpinRep& rep, double s);

/// Spin-1/2 generator coefficients of the defining corepresentation.
CoeffElement gen_alpha();
CoeffElement gen_beta();
CoeffElement gen_gamma();
CoeffElement gen_delta();

Scalar pairing(const CoeffElement& a, const DualElement& x);
Scalar counit(const CoeffElement& a);
/// Invariant state: the spin-0 coefficient.
Scalar haar(const CoeffElement& a);

/// Product dual to the coproduct of the enveloping algebra, computed by
/// decomposing each pair of spin blocks through Clebsch-Gordan isometries.
CoeffElement product(const CoeffElement& a, const CoeffElement& b, const RepTable& rt);
/// Serial reference for product(); identical output, no thread pool.
CoeffElement product_serial(const CoeffElement& a, const CoeffElement& b, const RepTable& rt);

/// haar(product(a, b)) without assembling the product: only the spin-0
/// Clebsch-Gordan column of each equal-spin block pair contributes.
Scalar haar_of_product(const CoeffElement& a, const CoeffElement& b, const RepTable& rt);

CoeffElement star(const CoeffElement& a, const RepTable& rt);

/// Modular one-parameter group (sigma_A)_z; z = -i is the modular
/// automorphism with haar(ab) = haar(b sigma_A(a)).
CoeffElement sigma_a(const CoeffElement& a, Scalar z, const RepTable& rt);
/// Scaling one-parameter group (tau_A)_z; z = -i is the antipode squared.
CoeffElement tau_a(const CoeffElement& a, Scalar z, const RepTable& rt);

/// Antipode of the coefficient algebra (direction +1) or its inverse (-1),
/// dual to the blockwise antipode: pairing(antipode_a(a), x) = pairing(a, S(x)).
CoeffElement antipode_a(const CoeffElement& a, int direction, const RepTable& rt);

/// x-hit actions: hit_left is (id (x) x)Delta(a) i.e. x acting through the
/// right leg, blockwise pi(x) * M; hit_right pairs x with the left leg,
/// blockwise M * pi(x).
CoeffElement hit_left(const DualElement& x, const CoeffElement& a, const RepTable& rt);
CoeffElement hit_right(const CoeffElement& a, const DualElement& x, const RepTable& rt);

double coeff_max_diff(const CoeffElement& a, const CoeffElement& b);
double coeff_max_abs(const CoeffElement& a);

}  // namespace qsl2r
