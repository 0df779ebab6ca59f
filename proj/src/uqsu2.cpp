#include "qsl2r/uqsu2.hpp"

#include <cmath>


namespace qsl2r {

namespace {

double ladder_e(int n, int p, const QContext& ctx) {
    // <xi_{p-1}, E xi_p> = sqrt([p][n-p+1]) q^{n/2 - p + 1}
    return std::sqrt(q_int(p, ctx) * q_int(n - p + 1, ctx)) *
           std::pow(ctx.q, 0.5 * n - p + 1);
}

double ladder_f(int n, int p, const QContext& ctx) {
    // <xi_{p+1}, F xi_p> = sqrt([n-p][p+1]) q^{-n/2 + p}
    return std::sqrt(q_int(n - p, ctx) * q_int(p + 1, ctx)) *
           std::pow(ctx.q, -0.5 * n + p);
}

}  // namespace

SpinRep make_rep(int n, const QContext& ctx) {
    if (n < 0) throw std::invalid_argument("make_rep: n must be >= 0");
    const int d = n + 1;
    SpinRep rep;
    rep.n = n;
    rep.q = ctx.q;
    rep.E = Matrix::Zero(d, d);
    rep.F = Matrix::Zero(d, d);
    rep.K = Matrix::Zero(d, d);
    rep.Kinv = Matrix::Zero(d, d);
    for (int p = 0; p <= n; ++p) {
        rep.K(p, p) = std::pow(ctx.q, n - 2 * p);
        rep.Kinv(p, p) = std::pow(ctx.q, 2 * p - n);
        if (p >= 1) rep.E(p - 1, p) = ladder_e(n, p, ctx);
        if (p < n) rep.F(p + 1, p) = ladder_f(n, p, ctx);
    }
    return rep;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

TensorGenerators tensor_rep(const SpinRep& r1, const SpinRep& r2) {
    const Matrix id1 = Matrix::Identity(r1.dim(), r1.dim());
    const Matrix id2 = Matrix::Identity(r2.dim(), r2.dim());
    TensorGenerators t;
    t.E = kron(r1.E, id2) + kron(r1.K, r2.E);
    t.F = kron(r1.F, r2.Kinv) + kron(id1, r2.F);
    t.K = kron(r1.K, r2.K);
    t.Kinv = kron(r1.Kinv, r2.Kinv);
    return t;
}

Matrix self_duality(int n) {
    Matrix u = Matrix::Zero(n + 1, n + 1);
    for (int p = 0; p <= n; ++p) u(n - p, p) = (p % 2 == 0) ? 1.0 : -1.0;
    return u;
}

Matrix delta_a_power(const SpinRep& rep, Scalar z) {
    const int d = rep.dim();
    Matrix out = Matrix::Zero(d, d);
    const double lnq = std::log(rep.q);
    for (int p = 0; p < d; ++p)
        out(p, p) = std::exp(2.0 * z * static_cast<double>(rep.n - 2 * p) * lnq);
    return out;
}

Matrix unitary_antipode(const SpinRep& rep, const Matrix& x) {
    if (x.rows() != rep.dim() || x.cols() != rep.dim())
        throw std::invalid_argument("unitary_antipode: block size mismatch");
    const Matrix u = self_duality(rep.n);
    return u.transpose() * x.transpose() * u;
}

Matrix antipode(const SpinRep& rep, const Matrix& x, int direction) {
    if (direction != 1 && direction != -1)
        throw std::invalid_argument("antipode: direction must be +1 or -1");
    const Matrix r = unitary_antipode(rep, x);
    const Matrix kh = delta_a_power(rep, 0.25);       // K^{1/2}
    const Matrix khinv = delta_a_power(rep, -0.25);   // K^{-1/2}
    return direction == 1 ? Matrix(khinv * r * kh) : Matrix(kh * r * khinv);
}

std::shared_ptr<const SpinRep> RepTable::rep(int n) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = reps_.find(n);
        if (it != reps_.end()) return it->second;
    }
    // Computed outside the lock; a racing duplicate is identical and harmless.
    auto value = std::make_shared<const SpinRep>(make_rep(n, ctx_));
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = reps_.emplace(n, value);
    return it->second;
}

namespace {

// Indices of the product basis with p1 + p2 = s, in lexicographic order.
std::vector<std::pair<int, int>> weight_space(int n1, int n2, int s) {
    std::vector<std::pair<int, int>> idx;
    for (int p1 = std::max(0, s - n2); p1 <= std::min(n1, s); ++p1)
        idx.emplace_back(p1, s - p1);
    return idx;
}

CGDecomposition compute_cg(int n1, int n2, const RepTable& table) {
    const QContext& ctx = table.ctx();
    const auto r1 = table.rep(n1);
    const auto r2 = table.rep(n2);
    const int d2 = n2 + 1;
    const TensorGenerators tg = tensor_rep(*r1, *r2);
    auto flat = [d2](int p1, int p2) { return p1 * d2 + p2; };

    CGDecomposition cg;
    cg.n1 = n1;
    cg.n2 = n2;

    for (int s = 0; s <= std::min(n1, n2); ++s) {
        const int ng = n1 + n2 - 2 * s;  // component spin (doubled)
        // Highest-weight vector in the weight-s space: the kernel condition
        // of Delta(E) couples adjacent lattice sites only, giving the exact
        // two-term recursion
        //   c_{p+1} E1(p, p+1) = -c_p q^{n1-2p} E2(s-p-1, s-p).
        const auto idx = weight_space(n1, n2, s);
        std::vector<double> coef(idx.size());
        coef[0] = 1.0;  // lexicographically first coefficient real positive
        for (std::size_t k = 0; k + 1 < idx.size(); ++k) {
            const int p1 = idx[k].first;
            const int p2 = idx[k].second;
            coef[k + 1] = -coef[k] * std::pow(ctx.q, n1 - 2 * p1) *
                          ladder_e(n2, p2, ctx) / ladder_e(n1, p1 + 1, ctx);
        }
        Vector hw = Vector::Zero((n1 + 1) * d2);
        for (std::size_t k = 0; k < idx.size(); ++k)
            hw(flat(idx[k].first, idx[k].second)) = coef[k];
        hw.normalize();

        CGComponent comp;
        comp.n = ng;
        comp.isometry = Matrix::Zero((n1 + 1) * d2, ng + 1);
        comp.isometry.col(0) = hw;
        for (int p = 0; p < ng; ++p) {
            Vector next = tg.F * comp.isometry.col(p) / ladder_f(ng, p, ctx);
            // shed rounding drift against the components built so far
            for (const auto& prev : cg.components) {
                if (p + 1 + s - (n1 + n2 - prev.n) / 2 < 0) continue;
                const int col = p + 1 + s - (n1 + n2 - prev.n) / 2;
                if (col <= prev.n)
                    next -= prev.isometry.col(col) * prev.isometry.col(col).dot(next);
            }
            next.normalize();
            comp.isometry.col(p + 1) = next;
        }
        cg.components.push_back(std::move(comp));
    }

    // contracts: isometry, mutual orthogonality, completeness, intertwining
    const int dim = (n1 + 1) * d2;
    Matrix sum = Matrix::Zero(dim, dim);
    for (const auto& c : cg.components) {
        const Matrix gram = c.isometry.adjoint() * c.isometry;
        if (max_abs_diff(gram, Matrix::Identity(c.n + 1, c.n + 1)) > ctx.tol)
            throw std::runtime_error("clebsch_gordan: component failed to orthonormalize");
        sum += c.isometry * c.isometry.adjoint();
    }
    for (std::size_t i = 0; i < cg.components.size(); ++i)
        for (std::size_t j = i + 1; j < cg.components.size(); ++j) {
            const Matrix cross =
                cg.components[i].isometry.adjoint() * cg.components[j].isometry;
            if (max_abs(cross) > ctx.tol)
                throw std::runtime_error("clebsch_gordan: components not orthogonal");
        }
    if (max_abs_diff(sum, Matrix::Identity(dim, dim)) > ctx.tol)
        throw std::runtime_error("clebsch_gordan: completeness failed");
    const double se = std::max(1.0, max_abs(tg.E));
    const double sf = std::max(1.0, max_abs(tg.F));
    const double sk = std::max(1.0, max_abs(tg.K));
    for (const auto& c : cg.components) {
        const auto rg = table.rep(c.n);
        if (max_abs(tg.E * c.isometry - c.isometry * rg->E) > ctx.tol * se ||
            max_abs(tg.F * c.isometry - c.isometry * rg->F) > ctx.tol * sf ||
            max_abs(tg.K * c.isometry - c.isometry * rg->K) > ctx.tol * sk)
            throw std::runtime_error("clebsch_gordan: intertwining failed");
    }
    return cg;
}

}  // namespace

std::shared_ptr<const CGDecomposition> RepTable::cg(int n1, int n2) const {
    const auto key = std::make_pair(n1, n2);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cgs_.find(key);
        if (it != cgs_.end()) return it->second;
    }
    auto value = std::make_shared<const CGDecomposition>(compute_cg(n1, n2, *this));
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = cgs_.emplace(key, value);
    return it->second;
}

}  // namespace qsl2r
