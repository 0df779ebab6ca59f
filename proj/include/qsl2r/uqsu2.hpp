#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "qsl2r/qnum.hpp"

namespace qsl2r {

/// The irreducible admissible *-representation on a (n+1)-dimensional
/// space, packaged as generator matrices. Basis vectors carry the weights
/// q^{n-2p}, p = 0..n, so K is diagonal and E (resp. F) lowers (raises) p.
struct SpinRep {
    int n = 0;  // doubled spin, dimension is n+1
    double q = 0.5;
    Matrix E, F, K, Kinv;

    int dim() const { return n + 1; }
};

/// Generator images under the coproduct on a tensor product space,
/// ordered as V1 (x) V2 with flat index p1*(n2+1)+p2.
struct TensorGenerators {
    Matrix E, F, K, Kinv;
};

/// One irreducible component of a tensor product decomposition: the spin
/// and the isometry embedding it into the tensor space.
struct CGComponent {
    int n = 0;       // doubled spin of the component
    Matrix isometry; // (d1*d2) x (n+1), columns orthonormal
};

struct CGDecomposition {
    int n1 = 0, n2 = 0;
    std::vector<CGComponent> components;  // descending spin n1+n2, n1+n2-2, ...
};

SpinRep make_rep(int n, const QContext& ctx);

TensorGenerators tensor_rep(const SpinRep& r1, const SpinRep& r2);

/// Antiunitary self-duality matrix: the unitary part U of J = U ∘ conj,
/// with U e_p = (-1)^p e_{n-p}.
Matrix self_duality(int n);

/// Block of delta_A^z, i.e. K^{2z} with entries q^{2z(n-2p)}.
Matrix delta_a_power(const SpinRep& rep, Scalar z);

/// Unitary antipode R on one block, realized through the self-duality as
/// x -> (J^{-1} x J)^dagger. Involutive, *-preserving, anti-multiplicative.
Matrix unitary_antipode(const SpinRep& rep, const Matrix& x);

/// Antipode S (direction +1) or S^{-1} (direction -1) on one block:
/// S = delta_A^{-1/4} R(.) delta_A^{1/4}.
Matrix antipode(const SpinRep& rep, const Matrix& x, int direction);

Matrix kron(const Matrix& a, const Matrix& b);

/// Shared, lazily populated table of representations and Clebsch-Gordan
/// decompositions for one parameter set. Lookup is mutex-guarded, so the
/// table may be used from parallel regions; entries are immutable.
class RepTable {
public:
    explicit RepTable(QContext ctx) : ctx_(std::move(ctx)) {}

    const QContext& ctx() const { return ctx_; }

    std::shared_ptr<const SpinRep> rep(int n) const;
    std::shared_ptr<const CGDecomposition> cg(int n1, int n2) const;

private:
    QContext ctx_;
    mutable std::mutex mu_;
    mutable std::map<int, std::shared_ptr<const SpinRep>> reps_;
    mutable std::map<std::pair<int, int>, std::shared_ptr<const CGDecomposition>> cgs_;
};

}  // namespace qsl2r
