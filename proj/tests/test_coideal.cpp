#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "qsl2r/coideal.hpp"
#include "qsl2r/sampling.hpp"

using namespace qsl2r;

namespace {

Vector basis(int d, int i) {
    Vector v = Vector::Zero(d);
    v(i) = 1.0;
    return v;
}

}  // namespace

TEST_CASE("spectrum of the coideal generator") {
    const QContext ctx(0.5, 1.0);
    RepTable rt(ctx);
    CoidealData cd(rt, 4);

    // spin 1, q = 1/2, a = 1: {[3], [1], [-1]} = {5.25, 1, -1}
    std::vector<double> vals;
    for (const auto& p : cd.eigen_pairs(2)) vals.push_back(p.value);
    std::sort(vals.begin(), vals.end());
    CHECK(vals[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(vals[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(vals[2] == doctest::Approx(5.25).epsilon(1e-12));

    // half-odd spin blocks carry no fixed vector, integer blocks exactly one
    CHECK(max_abs(cd.phi_c(1)) == 0.0);
    CHECK(std::abs(cd.phi_c(2).trace() - Scalar(1.0)) < 1e-13);

    // i B_t is Hermitian and fixes its counit eigenvector
    for (int n = 0; n <= 4; ++n)
        CHECK(max_abs_diff(Matrix(cd.ibt(n).adjoint()), cd.ibt(n)) < 1e-13);
    const Vector& v0 = cd.eigvec(2, 0);
    CHECK((cd.ibt(2) * v0 - q_int(1.0, ctx) * v0).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("closed-form top eigenvector") {
    for (double q : {0.3, 0.5, 0.8}) {
        for (double a : {0.5, 1.0, 1.7}) {
            const QContext ctx(q, a);
            RepTable rt(ctx);
            CoidealData cd(rt, 6);
            for (int n = 0; n <= 6; ++n) {
                const Vector xi = eigvec_plus(n, ctx);
                // eigenvector equation
                const double scale = std::max(1.0, max_abs(cd.ibt(n)) * xi.norm());
                CHECK((cd.ibt(n) * xi - q_int(a + n, ctx) * xi).norm() / scale < 1e-12);
                // norm from the Pochhammer identity
                const Scalar expected =
                    q_pochhammer(-std::pow(q, -2 * a), std::pow(q, -2), n);
                CHECK(std::abs(xi.squaredNorm() - expected.real()) <
                      1e-11 * std::max(1.0, std::abs(expected)));
            }
        }
    }
    // frozen values at (q, a) = (1/2, 1)
    const QContext ctx(0.5, 1.0);
    const Vector xi = eigvec_plus(1, ctx);
    CHECK(xi.squaredNorm() == doctest::Approx(5.0).epsilon(1e-12));
    RepTable rt(ctx);
    const SpinRep r = make_rep(1, ctx);
    const Scalar ratio = xi.dot(r.K * xi) / xi.squaredNorm();
    CHECK(ratio.real() == doctest::Approx(1.7).epsilon(1e-12));
}

TEST_CASE("right action satisfies the pairing contract") {
    const QContext ctx(0.5, 1.0);
    RepTable rt(ctx);
    CoidealData cd(rt, 12);
    Sampler sampler(31);

    // brute-force oracle: tau(c, x <| a) = tau(a c, x) for arbitrary c
    for (int k = 0; k < 12; ++k) {
        const StabElement x = sampler.stab(2);
        const int na = sampler.uniform_int(0, 2);
        const CoeffElement a =
            CoeffElement::matrix_coeff(na, sampler.vector(na + 1), sampler.vector(na + 1));
        const StabElement moved = act_rmod(x, a, cd);
        for (int nc = 0; nc <= 3; ++nc) {
            const CoeffElement c =
                CoeffElement::matrix_coeff(nc, sampler.vector(nc + 1), sampler.vector(nc + 1));
            const Scalar lhs = pairing(c, cd.stab_dual(moved));
            const Scalar rhs = pairing(product(a, c, rt), cd.stab_dual(x));
            CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, std::abs(rhs)));
        }
    }

    // unit acts trivially
    const StabElement x = sampler.stab(3);
    CHECK(stab_max_diff(act_rmod(x, CoeffElement::unit(), cd), x) < 1e-13);
}

TEST_CASE("action support and bounded reads") {
    const QContext ctx(0.5, 1.0);
    RepTable rt(ctx);
    CoidealData cd(rt, 10);
    Sampler sampler(37);

    // e_{[a]} <| b for spin-1 b lands on labels {-2, 0, 2}
    const CoeffElement b = sampler.b_element(2, cd);
    CoeffElement b2;
    b2.set_block(2, b.block_or_zero(2));
    const StabElement moved = act_rmod(StabElement::e(0), b2, cd);
    for (const auto& [m, c] : moved.coeffs) CHECK((m == -2 || m == 0 || m == 2));

    // bounded evaluation agrees with the full one on the window
    const StabElement y = sampler.stab(2);
    const CoeffElement a = sampler.coeff(2);
    const StabElement full = act_rmod(y, a, cd);
    const StabElement windowed = act_rmod(y, a, cd, 2);
    for (const auto& [m, c] : windowed.coeffs) {
        CHECK(std::abs(m) <= 2);
        CHECK(std::abs(c - full.at(m)) < 1e-12);
    }
}

TEST_CASE("stabilizer from coefficients") {
    const QContext ctx(0.5, 1.0);
    RepTable rt(ctx);
    CoidealData cd(rt, 10);
    Sampler sampler(41);

    CHECK(stab_max_diff(stab_from_coeff(CoeffElement::unit(), cd), StabElement::e(0)) < 1e-13);

    // spin-1/2 coefficients shift by odd labels only
    const CoeffElement h =
        CoeffElement::matrix_coeff(1, sampler.vector(2), sampler.vector(2));
    for (const auto& [m, c] : stab_from_coeff(h, cd).coeffs) CHECK(std::abs(m) == 1);

    // outputs over coefficients of spin <= 2 span every label |m| <= 2
    std::vector<StabElement> outputs;
    for (int n = 0; n <= 4; ++n)
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) {
                CoeffElement a;
                a.set_block(n, basis(n + 1, j) * basis(n + 1, i).adjoint());
                outputs.push_back(stab_from_coeff(a, cd));
            }
    Matrix span(outputs.size(), 5);
    for (std::size_t r = 0; r < outputs.size(); ++r)
        for (int m = -2; m <= 2; ++m) span(r, m + 2) = outputs[r].at(m);
    Eigen::JacobiSVD<Matrix> svd(span);
    CHECK(svd.singularValues()(4) > 1e-6 * svd.singularValues()(0));
}

TEST_CASE("conditional expectations") {
    const QContext ctx(0.5, 1.0);
    RepTable rt(ctx);
    CoidealData cd(rt, 8);
    Sampler sampler(43);

    CHECK(coeff_max_diff(e_b(CoeffElement::unit(), cd), CoeffElement::unit()) < 1e-14);
    const CoeffElement h =
        CoeffElement::matrix_coeff(1, sampler.vector(2), sampler.vector(2));
    CHECK(coeff_max_abs(e_b(h, cd)) < 1e-14);

    for (int k = 0; k < 8; ++k) {
        const CoeffElement a = sampler.coeff(3);
        // F_B = * . E_B . *
        CHECK(coeff_max_diff(f_b(a, cd), star(e_b(star(a, rt), cd), rt)) < 1e-11);
        // E_B is idempotent and lands in the subalgebra
        const CoeffElement ea = e_b(a, cd);
        CHECK(coeff_max_diff(e_b(ea, cd), ea) < 1e-12);
        CHECK(is_b_element(ea, cd));
        // right module property E_B(a b) = E_B(a) b for b in the subalgebra
        const CoeffElement b = sampler.b_element(2, cd);
        CHECK(coeff_max_diff(e_b(product(a, b, rt), cd), product(ea, b, rt)) <
              1e-10 * std::max(1.0, coeff_max_abs(a) * coeff_max_abs(b)));
        // fixed on the subalgebra
        CHECK(coeff_max_diff(e_b(b, cd), b) < 1e-12);
    }
}

TEST_CASE("subalgebra is closed under product and star") {
    const QContext ctx(0.5, 1.0);
    RepTable rt(ctx);
    CoidealData cd(rt, 8);
    Sampler sampler(47);
    for (int k = 0; k < 8; ++k) {
        const CoeffElement b1 = sampler.b_element(4, cd);
        const CoeffElement b2 = sampler.b_element(2, cd);
        CHECK(is_b_element(product(b1, b2, rt), cd));
        CHECK(is_b_element(star(b1, rt), cd));
    }
}

TEST_CASE("modular automorphism of the subalgebra") {
    const QContext ctx(0.5, 1.0);
    RepTable rt(ctx);
    CoidealData cd(rt, 8);
    Sampler sampler(53);

    CHECK(coeff_max_diff(sigma_b(CoeffElement::unit(), 1, cd), CoeffElement::unit()) < 1e-14);
    CHECK_THROWS_AS(sigma_b(sampler.coeff(1), 1, cd), std::invalid_argument);

    for (int k = 0; k < 8; ++k) {
        const CoeffElement b = sampler.b_element(4, cd);
        const CoeffElement c = sampler.b_element(2, cd);
        CHECK(coeff_max_diff(sigma_b(sigma_b(b, 1, cd), -1, cd), b) <
              1e-10 * std::max(1.0, coeff_max_abs(b)));
        // modular property of the restricted invariant state
        const Scalar lhs = haar_of_product(b, c, rt);
        const Scalar rhs = haar_of_product(c, sigma_b(b, 1, cd), rt);
        CHECK(std::abs(lhs - rhs) < 1e-11 * std::max(1.0, std::abs(lhs)));

        // closed form: sigma_B^{-1}(pi(xi, eta)) = pi(Phi_C K xi, K eta)
        for (const auto& [n, m] : b.blocks()) {
            const auto rep = rt.rep(n);
            const Matrix expected = rep->K * m * rep->K * cd.phi_c(n);
            CHECK(max_abs_diff(sigma_b(b, -1, cd).block_or_zero(n), expected) <
                  1e-10 * std::max(1.0, max_abs(expected)));
        }
    }
}

TEST_CASE("annihilator identity for the counit support functional") {
    const QContext ctx(0.5, 1.0);
    RepTable rt(ctx);
    CoidealData cd(rt, 8);
    Sampler sampler(59);
    const Scalar i(0.0, 1.0);
    for (int k = 0; k < 8; ++k) {
        CoeffElement b = sampler.b_element(4, cd);
        // project to the counit kernel
        CoeffElement unit_part = CoeffElement::unit();
        unit_part *= counit(b);
        b -= unit_part;
        const CoeffElement twisted = sigma_a(sigma_b(b, 1, cd), i, rt);

        // blockwise: sigma_A^{-1} sigma_B(pi(Phi_C xi, eta)) = pi(S^{-1}(Phi_C) xi, eta)
        for (const auto& [n, m] : b.blocks()) {
            const auto rep = rt.rep(n);
            const Matrix expected = m * antipode(*rep, cd.phi_c(n), 1);
            CHECK(max_abs_diff(twisted.block_or_zero(n), expected) <
                  1e-10 * std::max(1.0, max_abs(expected)));
        }

        const CoeffElement a = sampler.coeff(2);
        CHECK(std::abs(phi_c_functional(product(twisted, a, rt), cd)) <
              1e-10 * std::max(1.0, coeff_max_abs(b) * coeff_max_abs(a)));
    }
}

TEST_CASE("positive square root of the restricted modular element") {
    const QContext ctx(0.5, 1.0);
    RepTable rt(ctx);
    CoidealData cd(rt, 8);
    CHECK(std::abs(delta_b_half(0, cd)(0, 0) - Scalar(1.0)) < 1e-14);
    CHECK_THROWS_AS(delta_b_half(1, cd), std::invalid_argument);
    for (int n = 2; n <= 8; n += 2) {
        const Matrix d = delta_b_half(n, cd);
        Eigen::SelfAdjointEigenSolver<Matrix> es(d);
        // rank one with eigenvalue 1
        CHECK(es.eigenvalues().maxCoeff() == doctest::Approx(1.0).epsilon(1e-11));
        CHECK(es.eigenvalues()(n - 1) < 1e-11);
    }
}

TEST_CASE("theta automorphism") {
    const QContext ctx(0.5, 1.0);
    RepTable rt(ctx);
    CoidealData cd(rt, 8);
    Sampler sampler(61);
    const Scalar i(0.0, 1.0);

    CHECK(coeff_max_diff(theta(CoeffElement::unit(), cd), CoeffElement::unit()) < 1e-13);
    for (int k = 0; k < 8; ++k) {
        const CoeffElement b = sampler.b_element(4, cd);
        const CoeffElement c = sampler.b_element(2, cd);
        const CoeffElement tb = theta(b, cd);
        CHECK(is_b_element(tb, cd));
        // Phi_C(S_A^{-2}(b)) = counit(theta(b))
        const Scalar lhs = phi_c_functional(tau_a(b, i, rt), cd);
        CHECK(std::abs(lhs - counit(tb)) < 1e-10 * std::max(1.0, std::abs(lhs)));
        // multiplicative
        CHECK(coeff_max_diff(theta(product(b, c, rt), cd), product(tb, theta(c, cd), rt)) <
              1e-9 * std::max(1.0, coeff_max_abs(b) * coeff_max_abs(c)));
    }
}

TEST_CASE("coproduct image of the generator matches the displayed legs") {
    const QContext ctx(0.5, 1.0);
    RepTable rt(ctx);
    CoidealData cd(rt, 6);
    const Scalar i(0.0, 1.0);
    for (auto [n1, n2] : {std::pair{1, 1}, {2, 2}, {2, 3}}) {
        const auto r1 = rt.rep(n1);
        const auto r2 = rt.rep(n2);
        const TensorGenerators tg = tensor_rep(*r1, *r2);
        // q^{-1/2}(Delta e - Delta f Delta k) - i [a] Delta k
        const Matrix via_generators =
            std::pow(ctx.q, -0.5) * (tg.E - tg.F * tg.K) -
            i * q_int(ctx.a, ctx) * tg.K;
        CHECK(max_abs_diff(cd.delta_bt(n1, n2), via_generators) <
              1e-12 * std::max(1.0, max_abs(via_generators)));
    }
}

TEST_CASE("spectral and Clebsch-Gordan routes to the coproduct agree") {
    const QContext ctx(0.5, 1.0);
    RepTable rt(ctx);
    CoidealData cd(rt, 8);
    for (auto [n1, n2] : {std::pair{2, 2}, {1, 3}, {2, 4}}) {
        const auto proj = cd.delta_spectral_projections(n1, n2);
        const auto cg = rt.cg(n1, n2);
        for (const auto& [m, p] : proj) {
            Matrix via_cg = Matrix::Zero(p.rows(), p.cols());
            for (const auto& comp : cg->components)
                via_cg += comp.isometry * cd.stab_block(StabElement::e(m), comp.n) *
                          comp.isometry.adjoint();
            CHECK(max_abs_diff(p, via_cg) < 1e-11);
        }
    }
}

TEST_CASE("spherical functions") {
    const QContext ctx(0.5, 1.0);
    RepTable rt(ctx);
    CoidealData cd(rt, 8);
    Sampler sampler(67);

    // spin 0 gives multiples of the unit
    const CoeffElement s0 = spherical(0, basis(1, 0), basis(1, 0), cd);
    CHECK(s0.support() == std::vector<int>{0});

    for (int k = 0; k < 10; ++k) {
        const int na = 2 * sampler.uniform_int(1, 2);
        const int nb = 2 * sampler.uniform_int(1, 2);
        const CoeffElement s1 =
            spherical(na, sampler.vector(na + 1), sampler.vector(na + 1), cd);
        const CoeffElement s2 =
            spherical(nb, sampler.vector(nb + 1), sampler.vector(nb + 1), cd);
        CHECK(coeff_max_diff(product(s1, s2, rt), product(s2, s1, rt)) < 1e-11);
    }
}

TEST_CASE("act_rmod rejects when the coideal data is too small") {
    const QContext ctx(0.5, 1.0);
    RepTable rt(ctx);
    CoidealData cd(rt, 3);
    Sampler sampler(71);
    const StabElement x = sampler.stab(3);
    const CoeffElement a = sampler.coeff(2);
    CHECK_THROWS_AS(act_rmod(x, a, cd), std::out_of_range);
}
