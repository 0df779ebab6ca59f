#include "qsl2r/coideal.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace qsl2r {

StabElement StabElement::e(int m) {
    StabElement x;
    x.coeffs[m] = 1.0;
    return x;
}

int StabElement::max_abs_m() const {
    int r = 0;
    for (const auto& [m, c] : coeffs) r = std::max(r, std::abs(m));
    return r;
}

Scalar StabElement::at(int m) const {
    auto it = coeffs.find(m);
    return it == coeffs.end() ? Scalar(0.0) : it->second;
}

StabElement StabElement::star() const {
    StabElement out;
    for (const auto& [m, c] : coeffs) out.coeffs[m] = std::conj(c);
    return out;
}

StabElement StabElement::pointwise(const StabElement& other) const {
    StabElement out;
    for (const auto& [m, c] : coeffs) {
        auto it = other.coeffs.find(m);
        if (it != other.coeffs.end()) out.coeffs[m] = c * it->second;
    }
    return out;
}

StabElement StabElement::trimmed(double rel_eps) const {
    double scale = 0.0;
    for (const auto& [m, c] : coeffs) scale = std::max(scale, std::abs(c));
    StabElement out;
    if (scale == 0.0) return out;
    for (const auto& [m, c] : coeffs)
        if (std::abs(c) > rel_eps * scale) out.coeffs[m] = c;
    return out;
}

StabElement& StabElement::operator+=(const StabElement& other) {
    for (const auto& [m, c] : other.coeffs) coeffs[m] += c;
    return *this;
}

StabElement& StabElement::operator*=(Scalar c) {
    for (auto& [m, v] : coeffs) v *= c;
    return *this;
}

double stab_max_diff(const StabElement& x, const StabElement& y) {
    double r = 0.0;
    for (const auto& [m, c] : x.coeffs) r = std::max(r, std::abs(c - y.at(m)));
    for (const auto& [m, c] : y.coeffs)
        if (!x.coeffs.count(m)) r = std::max(r, std::abs(c));
    return r;
}

namespace {

Matrix make_ibt(const SpinRep& rep, const QContext& ctx) {
    const Scalar i(0.0, 1.0);
    const double bracket_a = q_int(ctx.a, ctx);
    return i * std::pow(ctx.q, -0.5) * (rep.E - rep.F * rep.K) + bracket_a * rep.K;
}

// Match ascending Hermitian eigenvalues against the grid {[a+m]}.
std::vector<int> match_spectrum(const Eigen::VectorXd& vals, int m_lo, int m_hi,
                                const QContext& ctx, const char* where) {
    std::vector<int> labels(vals.size());
    for (Eigen::Index k = 0; k < vals.size(); ++k) {
        int best_m = m_lo;
        double best_gap = std::abs(vals(k) - q_int(ctx.a + m_lo, ctx));
        for (int m = m_lo + 2; m <= m_hi; m += 2) {
            const double gap = std::abs(vals(k) - q_int(ctx.a + m, ctx));
            if (gap < best_gap) {
                best_gap = gap;
                best_m = m;
            }
        }
        // gap policy is relative for large eigenvalues: a backward-stable
        // solver cannot do better than eps * |lambda| in absolute terms
        if (best_gap > 100.0 * ctx.tol * std::max(1.0, std::abs(vals(k)))) {
            std::ostringstream msg;
            msg << where << ": eigenvalue " << vals(k) << " is " << best_gap
                << " away from the nearest [a+m]; parameters rejected";
            throw std::runtime_error(msg.str());
        }
        labels[k] = best_m;
        used[best_m]++;
    }
    return labels;
}

}  // namespace

CoidealData::CoidealData(const RepTable& rt, int n_max) : rt_(rt), n_max_(n_max) {
    if (n_max < 0) throw std::invalid_argument("CoidealData: n_max must be >= 0");
    const QContext& ctx = rt.ctx();
    blocks_.resize(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        const auto rep = rt.rep(n);
        Block blk;
        blk.ibt = make_ibt(*rep, ctx);  // stored as i*B_t (Hermitian)
        Eigen::SelfAdjointEigenSolver<Matrix> es(blk.ibt);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("CoidealData: eigendecomposition failed");
        const auto labels = match_spectrum(es.eigenvalues(), -n, n, ctx, "CoidealData");
        std::map<int, int> seen;
        for (int k = 0; k <= n; ++k) {
            if (seen.count(labels[k]))
                throw std::runtime_error(
                    "CoidealData: eigenvalue collision across distinct m; parameters rejected");
            seen[labels[k]] = k;
            blk.pairs.push_back({labels[k], es.eigenvalues()(k), es.eigenvectors().col(k)});
        }
        if (n % 2 == 0) {
            const Vector& v0 = blk.pairs[seen.at(0)].vec;
            blk.phi_c = v0 * v0.adjoint();
        } else {
            blk.phi_c = Matrix::Zero(n + 1, n + 1);
        }
        blocks_[n] = std::move(blk);
    }
}

const Matrix& CoidealData::ibt(int n) const {
    if (n < 0 || n > n_max_) throw std::out_of_range("CoidealData::ibt: block out of range");
    return blocks_[n].ibt;
}

const std::vector<EigenPair>& CoidealData::eigen_pairs(int n) const {
    if (n < 0 || n > n_max_)
        throw std::out_of_range("CoidealData::eigen_pairs: block out of range");
    return blocks_[n].pairs;
}

const Matrix& CoidealData::phi_c(int n) const {
    if (n < 0 || n > n_max_) throw std::out_of_range("CoidealData::phi_c: block out of range");
    return blocks_[n].phi_c;
}

const Vector& CoidealData::eigvec(int n, int m) const {
    if (!has_m(n, m)) throw std::out_of_range("CoidealData::eigvec: no such eigenvalue label");
    for (const auto& p : blocks_[n].pairs)
        if (p.m == m) return p.vec;
    throw std::logic_error("CoidealData::eigvec: label missing from block");
}

Matrix CoidealData::stab_block(const StabElement& x, int n) const {
    if (n < 0 || n > n_max_)
        throw std::out_of_range(
            "CoidealData::stab_block: block out of range (rebuild with larger n_max)");
    Matrix out = Matrix::Zero(n + 1, n + 1);
    for (const auto& [m, c] : x.coeffs)
        if (has_m(n, m)) {
            const Vector& v = eigvec(n, m);
            out += c * (v * v.adjoint());
        }
    return out;
}

DualElement CoidealData::stab_dual(const StabElement& x) const {
    const CoidealData* cd = this;
    return DualElement{[cd, x](int n) { return cd->stab_block(x, n); }};
}

DualElement CoidealData::bt_dual() const {
    const CoidealData* cd = this;
    const Scalar minus_i(0.0, -1.0);
    return DualElement{[cd, minus_i](int n) { return Matrix(minus_i * cd->ibt(n)); }};
}

Matrix CoidealData::delta_bt(int n1, int n2) const {
    const QContext& ctx = rt_.ctx();
    const auto r1 = rt_.rep(n1);
    const Matrix id2 = Matrix::Identity(n2 + 1, n2 + 1);
    const Scalar minus_i(0.0, -1.0);
    // Delta(B_t) = q^{-1/2}(e - fk) (x) 1 + k (x) B_t
    return std::pow(ctx.q, -0.5) * kron(Matrix(r1->E - r1->F * r1->K), id2) +
           kron(r1->K, Matrix(minus_i * ibt(n2)));
}

std::map<int, Matrix> CoidealData::delta_spectral_projections(int n1, int n2) const {
    const QContext& ctx = rt_.ctx();
    const Scalar i(0.0, 1.0);
    const Matrix op = i * delta_bt(n1, n2);
    Eigen::SelfAdjointEigenSolver<Matrix> es(op);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("delta_spectral_projections: eigendecomposition failed");
    const int nt = n1 + n2;
    const auto labels = match_spectrum(es.eigenvalues(), -nt, nt, ctx,
                                       "delta_spectral_projections");
    std::map<int, Matrix> proj;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        const Vector v = es.eigenvectors().col(k);
        auto it = proj.find(labels[k]);
        if (it == proj.end())
            proj[labels[k]] = v * v.adjoint();
        else
            it->second += v * v.adjoint();
    }
    return proj;
}

Matrix CoidealData::delta_phi_c(int n1, int n2) const {
    const int dim = (n1 + 1) * (n2 + 1);
    if ((n1 + n2) % 2 != 0) return Matrix::Zero(dim, dim);
    auto proj = delta_spectral_projections(n1, n2);
    auto it = proj.find(0);
    return it == proj.end() ? Matrix::Zero(dim, dim) : it->second;
}

Vector eigvec_plus(int n, const QContext& ctx) {
    if (n < 0) throw std::invalid_argument("eigvec_plus: n must be >= 0");
    const double q = ctx.q;
    Vector v(n + 1);
    const Scalar step(0.0, -std::pow(q, -(ctx.a + n)));  // -i q^{-(a+n)}
    const Scalar q2n = std::pow(q, 2 * n);
    const Scalar qm2 = std::pow(q, -2);
    for (int p = 0; p <= n; ++p) {
        const Scalar num = q_pochhammer(q2n, qm2, p);
        const Scalar den = (p % 2 == 0 ? 1.0 : -1.0) * q_pochhammer(qm2, qm2, p);
        v(p) = std::pow(step, p) * std::sqrt(num / den);
    }
    return v;
}

namespace {

// Tr_1[(A (x) 1) Z] on V1 (x) V2, flat index p1*d2+p2.
Matrix partial_trace_first(const Matrix& a, const Matrix& z, int d1, int d2) {
    Matrix out = Matrix::Zero(d2, d2);
    for (int k = 0; k < d2; ++k)
        for (int l = 0; l < d2; ++l) {
            Scalar acc = 0.0;
            for (int i = 0; i < d1; ++i)
                for (int j = 0; j < d1; ++j) acc += a(i, j) * z(j * d2 + k, i * d2 + l);
            out(k, l) = acc;
        }
    return out;
}

}  // namespace

StabElement act_rmod(const StabElement& x, const CoeffElement& a, const CoidealData& cd,
                     int m_bound) {
    StabElement out;
    if (x.empty() || a.empty()) return out;
    const QContext& ctx = cd.ctx();
    const int shift = a.max_support_n();
    const int full_bound = x.max_abs_m() + shift;
    const int bound = m_bound >= 0 ? std::min(m_bound, full_bound) : full_bound;

    // One block per parity covers every wanted label.
    std::vector<int> read_blocks;
    read_blocks.push_back(bound - (bound % 2));
    if (bound >= 1) read_blocks.push_back(bound % 2 == 1 ? bound : bound - 1);

    for (int nr : read_blocks) {
        if (nr > cd.n_max())
            throw std::out_of_range("act_rmod: needs block " + std::to_string(nr) +
                                    "; rebuild CoidealData with larger n_max");
        Matrix y = Matrix::Zero(nr + 1, nr + 1);
        for (const auto& [n1, m1] : a.blocks()) {
            if (n1 + nr > cd.n_max())
                throw std::out_of_range("act_rmod: component spin " + std::to_string(n1 + nr) +
                                        " exceeds CoidealData n_max");
            const auto cg = cd.reps().cg(n1, nr);
            Matrix z = Matrix::Zero((n1 + 1) * (nr + 1), (n1 + 1) * (nr + 1));
            for (const auto& comp : cg->components)
                z += comp.isometry * cd.stab_block(x, comp.n) * comp.isometry.adjoint();
            y += partial_trace_first(m1, z, n1 + 1, nr + 1);
        }
        // y must be diagonal in the i B_t eigenbasis of the block
        Matrix recon = Matrix::Zero(nr + 1, nr + 1);
        std::map<int, Scalar> diag;
        for (const auto& p : cd.eigen_pairs(nr)) {
            const Scalar c = p.vec.dot(y * p.vec);
            diag[p.m] = c;
            recon += c * (p.vec * p.vec.adjoint());
        }
        const double scale = std::max(1.0, max_abs(y));
        if (max_abs_diff(y, recon) > ctx.tol * scale)
            throw std::runtime_error("act_rmod: off-diagonal residual exceeds tolerance");
        for (const auto& [m, c] : diag)
            if (std::abs(m) <= bound) out.coeffs[m] = c;
    }
    return out.trimmed();
}

StabElement stab_from_coeff(const CoeffElement& a, const CoidealData& cd) {
    return act_rmod(StabElement::e(0), a, cd);
}

CoeffElement e_b(const CoeffElement& a, const CoidealData& cd) {
    CoeffElement out;
    for (const auto& [n, m] : a.blocks()) out.set_block(n, m * cd.phi_c(n));
    return out;
}

CoeffElement f_b(const CoeffElement& a, const CoidealData& cd) {
    CoeffElement out;
    for (const auto& [n, m] : a.blocks()) {
        const auto rep = cd.reps().rep(n);
        out.set_block(n, m * antipode(*rep, cd.phi_c(n), -1));
    }
    return out;
}

bool is_b_element(const CoeffElement& a, const CoidealData& cd, double* residual) {
    double r = 0.0;
    for (const auto& [n, m] : a.blocks()) {
        if (n > cd.n_max())
            throw std::out_of_range("is_b_element: block exceeds CoidealData n_max");
        r = std::max(r, max_abs_diff(m, Matrix(m * cd.phi_c(n))));
    }
    if (residual) *residual = r;
    const double scale = std::max(1.0, coeff_max_abs(a));
    return r <= cd.ctx().tol * scale;
}

CoeffElement sigma_b(const CoeffElement& b, int direction, const CoidealData& cd) {
    if (direction != 1 && direction != -1)
        throw std::invalid_argument("sigma_b: direction must be +1 or -1");
    if (!is_b_element(b, cd))
        throw std::invalid_argument("sigma_b: input is not in the coideal subalgebra");
    const RepTable& rt = cd.reps();
    const Scalar i(0.0, 1.0);
    if (direction == -1) return e_b(sigma_a(b, i, rt), cd);
    return f_b(sigma_a(b, -i, rt), cd);
}

Matrix delta_b_half(int n, const CoidealData& cd) {
    if (n % 2 != 0) throw std::invalid_argument("delta_b_half: block must have integer spin");
    const auto rep = cd.reps().rep(n);
    return cd.phi_c(n) * rep->K * cd.phi_c(n);
}

CoeffElement theta(const CoeffElement& b, const CoidealData& cd) {
    const RepTable& rt = cd.reps();
    const Scalar i(0.0, 1.0);
    const CoeffElement s2inv = tau_a(b, i, rt);  // S_A^{-2}
    return sigma_b(sigma_a(s2inv, -i, rt), -1, cd);
}

CoeffElement spherical(int n, const Vector& xi, const Vector& eta, const CoidealData& cd) {
    const auto rep = cd.reps().rep(n);
    const Matrix r_phi = unitary_antipode(*rep, cd.phi_c(n));
    return CoeffElement::matrix_coeff(n, Vector(cd.phi_c(n) * xi), Vector(r_phi * eta));
}

Scalar phi_c_functional(const CoeffElement& a, const CoidealData& cd) {
    Scalar acc = 0.0;
    for (const auto& [n, m] : a.blocks()) acc += (m * cd.phi_c(n)).trace();
    return acc;
}

}  // namespace qsl2r
