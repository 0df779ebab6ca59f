#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qsl2r/relint.hpp"
#include "qsl2r/sampling.hpp"

using namespace qsl2r;

TEST_CASE("balancedness singles out the inverse modular character") {
    const QContext ctx(0.5, 1.0);
    RepTable rt(ctx);
    CoidealData cd(rt, 8);

    CHECK(check_balanced(GCharacter{-1.0}, cd).residual < 1e-12);
    CHECK(check_balanced(GCharacter{0.0}, cd).residual > 1e-3);
    CHECK(check_balanced(GCharacter{1.0}, cd).residual > 1e-3);

    // spin-0 block contributes nothing for any exponent
    CoidealData small(rt, 0);
    CHECK(check_balanced(GCharacter{0.35}, small).residual < 1e-14);
}

TEST_CASE("character condition matches balancedness") {
    const QContext ctx(0.5, 1.0);
    RepTable rt(ctx);
    CoidealData cd(rt, 8);
    CHECK(check_character_condition(GCharacter{-1.0}, cd).residual < 1e-11);
    CHECK(check_character_condition(GCharacter{1.0}, cd).residual > 1e-3);
    for (double s : {-2.0, -1.0, -0.3, 0.0, 0.8}) {
        const bool bal = check_balanced(GCharacter{s}, cd).residual <= ctx.tol;
        const bool chr = check_character_condition(GCharacter{s}, cd).residual <= ctx.tol;
        CHECK(bal == chr);
    }
}

TEST_CASE("weights reproduce the closed form") {
    for (double q : {0.3, 0.5, 0.8})
        for (double a : {0.5, 1.0, 1.7}) {
            const QContext ctx(q, a);
            RepTable rt(ctx);
            CoidealData cd(rt, 10);
            const InvariantIntegral integral = compute_weights(GCharacter{-1.0}, cd, 6);
            const double qa = std::pow(q, a);
            for (int m = -6; m <= 6; ++m) {
                const double qam = std::pow(q, a + m);
                CHECK(std::abs(integral.weights.at(m) - (qam + 1.0 / qam) / (qa + 1.0 / qa)) <
                      1e-9);
                CHECK(integral.weights.at(m) > 0.0);
            }
        }

    const QContext ctx(0.5, 1.0);
    RepTable rt(ctx);
    CoidealData cd(rt, 10);
    const InvariantIntegral integral = compute_weights(GCharacter{-1.0}, cd, 6);
    CHECK(integral.weights.at(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(integral.weights.at(1) == doctest::Approx(1.7).epsilon(1e-12));
    CHECK(integral.weights.at(-1) == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("weight extraction requires balancedness") {
    const QContext ctx(0.5, 1.0);
    RepTable rt(ctx);
    CoidealData cd(rt, 8);
    CHECK_THROWS_AS(compute_weights(GCharacter{0.0}, cd, 4), std::invalid_argument);
}

TEST_CASE("integral evaluation") {
    const QContext ctx(0.5, 1.0);
    RepTable rt(ctx);
    CoidealData cd(rt, 10);
    const InvariantIntegral integral = compute_weights(GCharacter{-1.0}, cd, 6);

    CHECK(std::abs(psi(StabElement::e(0), integral) - Scalar(1.0)) < 1e-13);
    CHECK(std::abs(psi(StabElement::e(1), integral) - Scalar(1.7)) < 1e-12);

    Sampler sampler(73);
    const StabElement x = sampler.stab(3);
    const StabElement y = sampler.stab(2);
    const Scalar c = sampler.scalar();
    StabElement lin = x;
    StabElement cy = y;
    cy *= c;
    lin += cy;
    CHECK(std::abs(psi(lin, integral) - psi(x, integral) - c * psi(y, integral)) < 1e-12);

    CHECK_THROWS_AS(psi(StabElement::e(7), integral), std::invalid_argument);
}

TEST_CASE("relative invariance and its sensitivity") {
    const QContext ctx(0.5, 1.0);
    RepTable rt(ctx);
    CoidealData cd(rt, 12);
    InvariantIntegral integral = compute_weights(GCharacter{-1.0}, cd, 6);
    CHECK(check_relative_invariance(integral, cd, 60, 99).residual < 1e-11);

    // perturbing one weight must break invariance
    integral.weights[1] += 1e-3;
    CHECK(check_relative_invariance(integral, cd, 60, 99).residual > 1e-5);
}

TEST_CASE("coproduct factorization through the weights") {
    const QContext ctx(0.5, 1.0);
    RepTable rt(ctx);
    CoidealData cd(rt, 10);
    const InvariantIntegral integral = compute_weights(GCharacter{-1.0}, cd, 6);
    CHECK(check_delta_phic_factorization(integral, cd, 4).pass);
}

TEST_CASE("invariance system determines the weights up to scale") {
    const QContext ctx(0.5, 1.0);
    RepTable rt(ctx);
    CoidealData cd(rt, 10);
    const InvariantIntegral integral = compute_weights(GCharacter{-1.0}, cd, 6);
    const CheckReport r = check_weight_uniqueness(integral, cd);
    CHECK(r.pass);
}

TEST_CASE("candidate characters are grouplike and positive blockwise") {
    const QContext ctx(0.5, 1.0);
    RepTable rt(ctx);
    for (double s : {-1.0, 0.7}) {
        for (auto [n1, n2] : {std::pair{1, 1}, {2, 3}}) {
            const auto cg = rt.cg(n1, n2);
            const Matrix lhs = kron(k_power(*rt.rep(n1), s), k_power(*rt.rep(n2), s));
            Matrix rhs = Matrix::Zero(lhs.rows(), lhs.cols());
            for (const auto& comp : cg->components)
                rhs += comp.isometry * k_power(*rt.rep(comp.n), s) * comp.isometry.adjoint();
            CHECK(max_abs_diff(lhs, rhs) < 1e-11 * std::max(1.0, max_abs(lhs)));
        }
        for (int n = 0; n <= 4; ++n) {
            const Matrix g = k_power(*rt.rep(n), s);
            for (int p = 0; p <= n; ++p) CHECK(g(p, p).real() > 0.0);
        }
    }
}
