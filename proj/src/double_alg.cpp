#include "qsl2r/double_alg.hpp"

#include <cmath>

#include "qsl2r/par.hpp"

namespace qsl2r {

DoubleElement DoubleElement::from_term(StabElement x, CoeffElement b) {
    DoubleElement d;
    d.terms.emplace_back(std::move(x), std::move(b));
    return d;
}

DoubleElement DoubleElement::one(int m_range) {
    StabElement x;
    for (int m = -m_range; m <= m_range; ++m) x.coeffs[m] = 1.0;
    return from_term(std::move(x), CoeffElement::unit());
}

DoubleElement& DoubleElement::operator+=(const DoubleElement& other) {
    for (const auto& t : other.terms) terms.push_back(t);
    return *this;
}

DoubleElement& DoubleElement::operator*=(Scalar c) {
    for (auto& [x, b] : terms) b *= c;
    return *this;
}

DoubleElement normalized(const DoubleElement& d, double rel_eps) {
    std::map<int, CoeffElement> by_label;
    for (const auto& [x, b] : d.terms)
        for (const auto& [m, c] : x.coeffs) {
            CoeffElement scaled = b;
            scaled *= c;
            by_label[m] += scaled;
        }
    double scale = 0.0;
    for (const auto& [m, b] : by_label) scale = std::max(scale, coeff_max_abs(b));
    DoubleElement out;
    if (scale == 0.0) return out;
    for (const auto& [m, b] : by_label) {
        CoeffElement kept;
        for (const auto& [n, blk] : b.blocks())
            if (max_abs(blk) > rel_eps * scale) kept.set_block(n, blk);
        if (!kept.empty()) out.terms.emplace_back(StabElement::e(m), std::move(kept));
    }
    return out;
}

int b_span(const DoubleElement& d) {
    int s = 0;
    for (const auto& [x, b] : d.terms) s = std::max(s, b.max_support_n());
    return s;
}

int i_span(const DoubleElement& d) {
    int s = 0;
    for (const auto& [x, b] : d.terms) s = std::max(s, x.max_abs_m());
    return s;
}

double double_max_diff(const DoubleElement& d1, const DoubleElement& d2, const CoidealData&) {
    const DoubleElement a = normalized(d1);
    const DoubleElement b = normalized(d2);
    std::map<int, const CoeffElement*> am, bm;
    for (const auto& [x, c] : a.terms) am[x.coeffs.begin()->first] = &c;
    for (const auto& [x, c] : b.terms) bm[x.coeffs.begin()->first] = &c;
    double r = 0.0;
    for (const auto& [m, c] : am) {
        auto it = bm.find(m);
        r = std::max(r, it == bm.end() ? coeff_max_abs(*c) : coeff_max_diff(*c, *it->second));
    }
    for (const auto& [m, c] : bm)
        if (!am.count(m)) r = std::max(r, coeff_max_abs(*c));
    return r;
}

namespace {

// Split b in B into Delta-legs through the fixed vector: for each block n
// with M = w v_0^dagger the legs are b_(1),r = pi_n(v_0, e_r) and
// b_(2),r = pi_n(e_r, w).
struct DeltaLegs {
    int n;
    Vector w;
};

std::vector<DeltaLegs> b_delta_legs(const CoeffElement& b, const CoidealData& cd) {
    if (!is_b_element(b, cd))
        throw std::invalid_argument("double: coideal leg is not in the subalgebra");
    std::vector<DeltaLegs> legs;
    for (const auto& [n, m] : b.blocks()) {
        if (n % 2 != 0) continue;  // odd blocks of a coideal element vanish
        const Vector& v0 = cd.eigvec(n, 0);
        legs.push_back({n, Vector(m * v0)});
    }
    return legs;
}

}  // namespace

DoubleElement from_bi(const CoeffElement& b, const StabElement& x, const CoidealData& cd) {
    DoubleElement out;
    if (x.empty() || b.empty()) return out;
    for (const auto& legs : b_delta_legs(b, cd)) {
        const int n = legs.n;
        const Vector& v0 = cd.eigvec(n, 0);
        for (int r = 0; r <= n; ++r) {
            Vector er = Vector::Zero(n + 1);
            er(r) = 1.0;
            const CoeffElement b2 = CoeffElement::matrix_coeff(n, er, legs.w);
            const StabElement moved =
                act_rmod(x, antipode_a(b2, -1, cd.reps()), cd).trimmed();
            if (moved.empty()) continue;
            out.terms.emplace_back(moved, CoeffElement::matrix_coeff(n, v0, er));
        }
    }
    return normalized(out);
}

std::vector<std::pair<CoeffElement, StabElement>> to_bi(const DoubleElement& d,
                                                        const CoidealData& cd) {
    std::vector<std::pair<CoeffElement, StabElement>> out;
    for (const auto& [x, b] : d.terms) {
        for (const auto& legs : b_delta_legs(b, cd)) {
            const int n = legs.n;
            const Vector& v0 = cd.eigvec(n, 0);
            for (int r = 0; r <= n; ++r) {
                Vector er = Vector::Zero(n + 1);
                er(r) = 1.0;
                const CoeffElement b2 = CoeffElement::matrix_coeff(n, er, legs.w);
                const StabElement moved = act_rmod(x, b2, cd).trimmed();
                if (moved.empty()) continue;
                out.emplace_back(CoeffElement::matrix_coeff(n, v0, er), moved);
            }
        }
    }
    return out;
}

DoubleElement dmul(const DoubleElement& d1, const DoubleElement& d2, const CoidealData& cd) {
    const RepTable& rt = cd.reps();
    DoubleElement out;
    for (const auto& [x1, b1] : d1.terms)
        for (const auto& [x2, b2] : d2.terms) {
            // x1 b1 x2 b2 = x1 (b1 x2) b2, reordering the middle pair
            const DoubleElement mid = from_bi(b1, x2, cd);
            for (const auto& [y, c] : mid.terms) {
                const StabElement xs = x1.pointwise(y);
                if (xs.empty()) continue;
                out.terms.emplace_back(xs, product(c, b2, rt));
            }
        }
    return normalized(out);
}

DoubleElement dstar(const DoubleElement& d, const CoidealData& cd) {
    const RepTable& rt = cd.reps();
    DoubleElement out;
    for (const auto& [x, b] : d.terms) {
        const DoubleElement reordered = from_bi(star(b, rt), x.star(), cd);
        out += reordered;
    }
    return normalized(out);
}

Scalar phi_d(const DoubleElement& d, const InvariantIntegral& integral) {
    Scalar acc = 0.0;
    for (const auto& [x, b] : d.terms) acc += psi(x, integral) * haar(b);
    return acc;
}

DoubleElement sigma_d(const DoubleElement& d, const InvariantIntegral& integral,
                      const CoidealData& cd) {
    const RepTable& rt = cd.reps();
    const DualElement ginv = dual_k_power(rt, -integral.g.s);
    DoubleElement out;
    for (const auto& [x, b] : d.terms) {
        // kappa is trivial on the commutative stabilizer
        out.terms.emplace_back(x, sigma_b(hit_left(ginv, b, rt), 1, cd));
    }
    return normalized(out);
}

DoubleElement bimodule_act(const DualElement& x, const DoubleElement& d,
                           const CoeffElement& a, const CoidealData& cd) {
    const RepTable& rt = cd.reps();
    DoubleElement out;
    for (const auto& [xs, b] : d.terms) {
        const StabElement moved = act_rmod(xs, a, cd).trimmed();
        if (moved.empty()) continue;
        out.terms.emplace_back(moved, hit_left(x, b, rt));
    }
    return normalized(out);
}

std::size_t GnsBasisB::position(int n, int j) const {
    for (std::size_t k = 0; k < index.size(); ++k)
        if (index[k].first == n && index[k].second == j) return k;
    throw std::out_of_range("GnsBasisB::position: no such basis element");
}

GnsBasisB build_gns_basis_b(int cutoff_n, const CoidealData& cd) {
    if (cutoff_n % 2 != 0)
        throw std::invalid_argument("build_gns_basis_b: cutoff must be an even block");
    GnsBasisB basis;
    basis.cutoff_n = cutoff_n;
    for (int n = 0; n <= cutoff_n; n += 2)
        for (int j = 0; j <= n; ++j) basis.index.emplace_back(n, j);

    const RepTable& rt = cd.reps();
    const std::size_t nb = basis.index.size();
    basis.gram = Matrix::Zero(nb, nb);
    std::vector<CoeffElement> elems(nb);
    for (std::size_t k = 0; k < nb; ++k) elems[k] = gns_b_element(basis, k, cd);
    std::vector<CoeffElement> starred(nb);
    for (std::size_t k = 0; k < nb; ++k) starred[k] = star(elems[k], rt);
    parallel_for(nb * nb, [&](std::size_t idx) {
        const std::size_t r = idx / nb, c = idx % nb;
        basis.gram(r, c) = haar(product(starred[r], elems[c], rt));
    });

    Eigen::SelfAdjointEigenSolver<Matrix> es(basis.gram);
    if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0.0)
        throw std::runtime_error("build_gns_basis_b: Gram matrix is not positive definite");
    return basis;
}

CoeffElement gns_b_element(const GnsBasisB& basis, std::size_t idx, const CoidealData& cd) {
    const auto [n, j] = basis.index.at(idx);
    Vector ej = Vector::Zero(n + 1);
    ej(j) = 1.0;
    return CoeffElement::matrix_coeff(n, cd.eigvec(n, 0), ej);
}

GnsBasisI build_gns_basis_i(const InvariantIntegral& integral) {
    GnsBasisI basis;
    basis.truncation = integral.truncation;
    basis.gram = Eigen::VectorXd::Zero(2 * integral.truncation + 1);
    for (int m = -integral.truncation; m <= integral.truncation; ++m)
        basis.gram(basis.position(m)) = integral.weights.at(m);
    return basis;
}

RegularRep make_regular_rep(int cutoff_n, const InvariantIntegral& integral,
                            const CoidealData& cd) {
    RegularRep rr;
    rr.basis_b = build_gns_basis_b(cutoff_n, cd);
    rr.basis_i = build_gns_basis_i(integral);
    rr.gram = kron(rr.basis_b.gram, Matrix(rr.basis_i.gram.cast<Scalar>().asDiagonal()));
    return rr;
}

namespace {

// Matrix of left multiplication by c in B on the truncated GNS basis of B.
Matrix b_multiplication_matrix(const CoeffElement& c, const RegularRep& rr,
                               const CoidealData& cd, bool parallel) {
    const RepTable& rt = cd.reps();
    const std::size_t nb = rr.basis_b.size();
    Matrix mat = Matrix::Zero(nb, nb);
    auto body = [&](std::size_t col) {
        const CoeffElement cb = product(c, gns_b_element(rr.basis_b, col, cd), rt);
        for (const auto& [n, blk] : cb.blocks()) {
            if (n > rr.basis_b.cutoff_n || n % 2 != 0) continue;  // truncated
            const Vector coords = blk * cd.eigvec(n, 0);
            for (int j = 0; j <= n; ++j) mat(rr.basis_b.position(n, j), col) = coords(j);
        }
    };
    if (parallel)
        parallel_for(nb, body);
    else
        serial_for(nb, body);
    return mat;
}

// Matrix of a stabilizer element acting through the cross relation; block
// Per-label blocks W_m of a stabilizer element acting through the cross
// relation; the spans of the Lambda_I(e_m) lines are invariant, so the
// action is block diagonal over the label (and over the B spin).
std::vector<Matrix> i_action_blocks(const StabElement& x, const RegularRep& rr,
                                    const CoidealData& cd, bool parallel) {
    const RepTable& rt = cd.reps();
    const std::size_t nb = rr.basis_b.size();
    const int mcap = rr.basis_i.truncation;
    std::vector<Matrix> out(rr.basis_i.size(), Matrix::Zero(nb, nb));

    std::vector<int> blocks;
    for (int n = 0; n <= rr.basis_b.cutoff_n; n += 2) blocks.push_back(n);

    auto body = [&](std::size_t bi) {
        const int n = blocks[bi];
        const int d1 = n + 1;
        // coproduct image of x on the pair (n, reader block), one per parity
        for (int parity = 0; parity <= 1; ++parity) {
            const int nr = mcap - ((mcap % 2 + 2 - parity) % 2);
            if (nr < 0) continue;
            if (n + nr > cd.n_max())
                throw std::out_of_range(
                    "i_action_blocks: rebuild CoidealData with larger n_max");
            const auto cg = rt.cg(n, nr);
            const int d2 = nr + 1;
            Matrix z = Matrix::Zero(d1 * d2, d1 * d2);
            for (const auto& comp : cg->components)
                z += comp.isometry * cd.stab_block(x, comp.n) * comp.isometry.adjoint();
            for (const auto& p : cd.eigen_pairs(nr)) {
                if (std::abs(p.m) > mcap) continue;
                Matrix& w = out[rr.basis_i.position(p.m)];
                // w_{rj} = <v_m, Z_{(r,.),(j,.)} v_m>
                for (int r = 0; r < d1; ++r)
                    for (int j = 0; j < d1; ++j) {
                        Scalar acc = 0.0;
                        for (int k = 0; k < d2; ++k)
                            for (int l = 0; l < d2; ++l)
                                acc += std::conj(p.vec(k)) * z(r * d2 + k, j * d2 + l) * p.vec(l);
                        w(rr.basis_b.position(n, r), rr.basis_b.position(n, j)) = acc;
                    }
            }
        }
    };
    if (parallel)
        parallel_for(blocks.size(), body);
    else
        serial_for(blocks.size(), body);
    return out;
}

Matrix regular_rep_matrix_impl(const DoubleElement& d, const RegularRep& rr,
                               const CoidealData& cd, bool parallel) {
    // The element must fit the truncated carrier: its coideal legs inside
    // the spin cutoff and its stabilizer labels within reach of the window.
    if (b_span(d) > rr.basis_b.cutoff_n)
        throw std::invalid_argument(
            "regular_rep_matrix: element escapes the spin cutoff; need cutoff_n >= " +
            std::to_string(b_span(d)));
    if (i_span(d) > rr.basis_i.truncation + rr.basis_b.cutoff_n)
        throw std::invalid_argument(
            "regular_rep_matrix: stabilizer labels out of reach; need truncation >= " +
            std::to_string(i_span(d) - rr.basis_b.cutoff_n));
    const std::size_t dim = rr.dim();
    const std::size_t nb = rr.basis_b.size();
    const std::size_t ni = rr.basis_i.size();
    std::vector<Matrix> total(ni, Matrix::Zero(nb, nb));
    for (const auto& [x, b] : d.terms) {
        const Matrix mb = b_multiplication_matrix(b, rr, cd, parallel);
        const std::vector<Matrix> wx = i_action_blocks(x, rr, cd, parallel);
        for (std::size_t mi = 0; mi < ni; ++mi) total[mi] += wx[mi] * mb;
    }
    Matrix mat = Matrix::Zero(dim, dim);
    for (std::size_t mi = 0; mi < ni; ++mi)
        for (std::size_t r = 0; r < nb; ++r)
            for (std::size_t c = 0; c < nb; ++c)
                mat(rr.flat(r, mi), rr.flat(c, mi)) = total[mi](r, c);
    return mat;
}

}  // namespace

Matrix regular_rep_matrix(const DoubleElement& d, const RegularRep& rr, const CoidealData& cd) {
    return regular_rep_matrix_impl(d, rr, cd, true);
}

Matrix regular_rep_matrix_serial(const DoubleElement& d, const RegularRep& rr,
                                 const CoidealData& cd) {
    return regular_rep_matrix_impl(d, rr, cd, false);
}

Vector gns_vector(const DoubleElement& d, const RegularRep& rr, const CoidealData& cd) {
    Vector vec = Vector::Zero(rr.dim());
    for (const auto& [b, y] : to_bi(d, cd)) {
        for (const auto& [n, blk] : b.blocks()) {
            if (n > rr.basis_b.cutoff_n || n % 2 != 0) continue;
            const Vector coords = blk * cd.eigvec(n, 0);
            for (const auto& [m, c] : y.coeffs) {
                if (std::abs(m) > rr.basis_i.truncation) continue;
                const std::size_t mi = rr.basis_i.position(m);
                for (int j = 0; j <= n; ++j)
                    vec(rr.flat(rr.basis_b.position(n, j), mi)) += coords(j) * c;
            }
        }
    }
    return vec;
}

std::vector<std::size_t> interior_indices(const RegularRep& rr, int b_margin_n, int i_margin) {
    std::vector<std::size_t> out;
    for (std::size_t b = 0; b < rr.basis_b.size(); ++b) {
        if (rr.basis_b.index[b].first > rr.basis_b.cutoff_n - b_margin_n) continue;
        for (int m = -rr.basis_i.truncation; m <= rr.basis_i.truncation; ++m) {
            if (std::abs(m) > rr.basis_i.truncation - i_margin) continue;
            out.push_back(rr.flat(b, rr.basis_i.position(m)));
        }
    }
    return out;
}

}  // namespace qsl2r
