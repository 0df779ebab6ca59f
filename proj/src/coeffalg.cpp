#include "qsl2r/coeffalg.hpp"

#include <cmath>

#include "qsl2r/par.hpp"

namespace qsl2r {

CoeffElement CoeffElement::unit() {
    CoeffElement e;
    e.set_block(0, Matrix::Ones(1, 1));
    return e;
}

CoeffElement CoeffElement::matrix_coeff(int n, const Vector& xi, const Vector& eta) {
    if (xi.size() != n + 1 || eta.size() != n + 1)
        throw std::invalid_argument("matrix_coeff: vector dimension mismatch");
    CoeffElement e;
    e.set_block(n, eta * xi.adjoint());
    return e;
}

Matrix CoeffElement::block_or_zero(int n) const {
    auto it = blocks_.find(n);
    if (it != blocks_.end()) return it->second;
    return Matrix::Zero(n + 1, n + 1);
}

void CoeffElement::set_block(int n, Matrix m) {
    if (m.rows() != n + 1 || m.cols() != n + 1)
        throw std::invalid_argument("set_block: block dimension mismatch");
    blocks_[n] = std::move(m);
}

void CoeffElement::add_to_block(int n, const Matrix& m) {
    auto it = blocks_.find(n);
    if (it == blocks_.end())
        set_block(n, m);
    else
        it->second += m;
}

std::vector<int> CoeffElement::support() const {
    std::vector<int> s;
    s.reserve(blocks_.size());
    for (const auto& [n, m] : blocks_) s.push_back(n);
    return s;
}

int CoeffElement::max_support_n() const {
    return blocks_.empty() ? -1 : blocks_.rbegin()->first;
}

CoeffElement CoeffElement::trimmed(double rel_eps) const {
    double scale = 0.0;
    for (const auto& [n, m] : blocks_) scale = std::max(scale, max_abs(m));
    CoeffElement out;
    if (scale == 0.0) return out;
    for (const auto& [n, m] : blocks_)
        if (max_abs(m) > rel_eps * scale) out.blocks_[n] = m;
    return out;
}

CoeffElement& CoeffElement::operator+=(const CoeffElement& other) {
    for (const auto& [n, m] : other.blocks_) add_to_block(n, m);
    return *this;
}

CoeffElement& CoeffElement::operator-=(const CoeffElement& other) {
    for (const auto& [n, m] : other.blocks_) add_to_block(n, -m);
    return *this;
}

CoeffElement& CoeffElement::operator*=(Scalar c) {
    for (auto& [n, m] : blocks_) m *= c;
    return *this;
}

Matrix k_power(const SpinRep& rep, double s) {
    const int d = rep.dim();
    Matrix out = Matrix::Zero(d, d);
    for (int p = 0; p < d; ++p) out(p, p) = std::pow(rep.q, s * (rep.n - 2 * p));
    return out;
}

DualElement dual_one(const RepTable&) {
    return DualElement{[](int n) { return Matrix::Identity(n + 1, n + 1); }};
}

DualElement dual_k_power(const RepTable& rt, double s) {
    const RepTable* table = &rt;
    return DualElement{[table, s](int n) { return k_power(*table->rep(n), s); }};
}

namespace {

Vector basis_vec(int dim, int i) {
    Vector v = Vector::Zero(dim);
    v(i) = 1.0;
    return v;
}

}  // namespace

// generator matrix entries: alpha = pi(e0,e0), beta = pi(e0,e1),
// gamma = pi(e1,e0), delta = pi(e1,e1)
CoeffElement gen_alpha() { return CoeffElement::matrix_coeff(1, basis_vec(2, 0), basis_vec(2, 0)); }
CoeffElement gen_beta() { return CoeffElement::matrix_coeff(1, basis_vec(2, 0), basis_vec(2, 1)); }
CoeffElement gen_gamma() { return CoeffElement::matrix_coeff(1, basis_vec(2, 1), basis_vec(2, 0)); }
CoeffElement gen_delta() { return CoeffElement::matrix_coeff(1, basis_vec(2, 1), basis_vec(2, 1)); }

Scalar pairing(const CoeffElement& a, const DualElement& x) {
    Scalar acc = 0.0;
    for (const auto& [n, m] : a.blocks()) acc += (m * x.block(n)).trace();
    return acc;
}

Scalar counit(const CoeffElement& a) {
    Scalar acc = 0.0;
    for (const auto& [n, m] : a.blocks()) acc += m.trace();
    return acc;
}

Scalar haar(const CoeffElement& a) {
    return a.has_block(0) ? a.block_or_zero(0)(0, 0) : Scalar(0.0);
}

namespace {

CoeffElement product_impl(const CoeffElement& a, const CoeffElement& b,
                          const RepTable& rt, bool parallel) {
    struct Pair {
        int n1, n2;
        const Matrix* m1;
        const Matrix* m2;
    };
    std::vector<Pair> pairs;
    for (const auto& [n1, m1] : a.blocks())
        for (const auto& [n2, m2] : b.blocks()) pairs.push_back({n1, n2, &m1, &m2});

    std::vector<std::map<int, Matrix>> partial(pairs.size());
    auto body = [&](std::size_t i) {
        const auto& p = pairs[i];
        const auto cg = rt.cg(p.n1, p.n2);
        const Matrix prod = kron(*p.m1, *p.m2);
        for (const auto& comp : cg->components)
            partial[i][comp.n] = comp.isometry.adjoint() * prod * comp.isometry;
    };
    if (parallel)
        parallel_for(pairs.size(), body);
    else
        serial_for(pairs.size(), body);

    CoeffElement out;
    for (const auto& part : partial)
        for (const auto& [n, m] : part) out.add_to_block(n, m);
    return out;
}

}  // namespace

CoeffElement product(const CoeffElement& a, const CoeffElement& b, const RepTable& rt) {
    return product_impl(a, b, rt, true);
}

CoeffElement product_serial(const CoeffElement& a, const CoeffElement& b, const RepTable& rt) {
    return product_impl(a, b, rt, false);
}

Scalar haar_of_product(const CoeffElement& a, const CoeffElement& b, const RepTable& rt) {
    Scalar acc = 0.0;
    for (const auto& [n, m1] : a.blocks()) {
        if (!b.has_block(n)) continue;  // unequal spins carry no spin-0 component
        const Matrix m2 = b.block_or_zero(n);
        const auto cg = rt.cg(n, n);
        for (const auto& comp : cg->components) {
            if (comp.n != 0) continue;
            // t0^dagger (m1 (x) m2) t0, with t0 reshaped to a square matrix
            const int d = n + 1;
            Matrix t0(d, d);
            for (int p = 0; p < d; ++p)
                for (int s = 0; s < d; ++s) t0(p, s) = comp.isometry(p * d + s, 0);
            acc += t0.conjugate().cwiseProduct(m1 * t0 * m2.transpose()).sum();
        }
    }
    return acc;
}

CoeffElement star(const CoeffElement& a, const RepTable& rt) {
    CoeffElement out;
    for (const auto& [n, m] : a.blocks()) {
        const auto rep = rt.rep(n);
        const Matrix u = self_duality(n);
        const Matrix kh = delta_a_power(*rep, 0.25);
        const Matrix khinv = delta_a_power(*rep, -0.25);
        out.set_block(n, kh * u * m.conjugate() * u.transpose() * khinv);
    }
    return out;
}

CoeffElement sigma_a(const CoeffElement& a, Scalar z, const RepTable& rt) {
    const Scalar iz(-z.imag(), z.real());  // i*z
    CoeffElement out;
    for (const auto& [n, m] : a.blocks()) {
        const auto rep = rt.rep(n);
        const Matrix kw = delta_a_power(*rep, -iz / 2.0);  // K^{-iz}
        out.set_block(n, kw * m * kw);
    }
    return out;
}

CoeffElement tau_a(const CoeffElement& a, Scalar z, const RepTable& rt) {
    const Scalar iz(-z.imag(), z.real());
    CoeffElement out;
    for (const auto& [n, m] : a.blocks()) {
        const auto rep = rt.rep(n);
        const Matrix kplus = delta_a_power(*rep, iz / 2.0);    // K^{iz}
        const Matrix kminus = delta_a_power(*rep, -iz / 2.0);  // K^{-iz}
        out.set_block(n, kplus * m * kminus);
    }
    return out;
}

CoeffElement antipode_a(const CoeffElement& a, int direction, const RepTable& rt) {
    if (direction != 1 && direction != -1)
        throw std::invalid_argument("antipode_a: direction must be +1 or -1");
    CoeffElement out;
    for (const auto& [n, m] : a.blocks()) {
        const auto rep = rt.rep(n);
        const Matrix u = self_duality(n);
        const Matrix kh = delta_a_power(*rep, 0.25);
        const Matrix khinv = delta_a_power(*rep, -0.25);
        // dual to the blockwise antipode: M -> (U K^{±1/2} M K^{∓1/2} U^T)^T
        Matrix inner = direction == 1 ? Matrix(kh * m * khinv) : Matrix(khinv * m * kh);
        out.set_block(n, (u * inner * u.transpose()).transpose().eval());
    }
    return out;
}

CoeffElement hit_left(const DualElement& x, const CoeffElement& a, const RepTable&) {
    CoeffElement out;
    for (const auto& [n, m] : a.blocks()) out.set_block(n, x.block(n) * m);
    return out;
}

CoeffElement hit_right(const CoeffElement& a, const DualElement& x, const RepTable&) {
    CoeffElement out;
    for (const auto& [n, m] : a.blocks()) out.set_block(n, m * x.block(n));
    return out;
}

double coeff_max_diff(const CoeffElement& a, const CoeffElement& b) {
    double r = 0.0;
    for (const auto& [n, m] : a.blocks()) r = std::max(r, max_abs_diff(m, b.block_or_zero(n)));
    for (const auto& [n, m] : b.blocks())
        if (!a.has_block(n)) r = std::max(r, max_abs(m));
    return r;
}

double coeff_max_abs(const CoeffElement& a) {
    double r = 0.0;
    for (const auto& [n, m] : a.blocks()) r = std::max(r, max_abs(m));
    return r;
}

}  // namespace qsl2r
