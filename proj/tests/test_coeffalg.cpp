#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qsl2r/coeffalg.hpp"
#include "qsl2r/sampling.hpp"

using namespace qsl2r;

namespace {

const QContext kCtx(0.5, 1.0);

Vector basis(int d, int i) {
    Vector v = Vector::Zero(d);
    v(i) = 1.0;
    return v;
}

}  // namespace

TEST_CASE("pairing against dual elements") {
    RepTable rt(kCtx);
    const DualElement k1 = dual_k_power(rt, 1.0);

    // the unit pairs to the spin-0 block scalar of the dual element
    CHECK(std::abs(pairing(CoeffElement::unit(), k1) - Scalar(1.0)) < 1e-15);

    const CoeffElement a00 = CoeffElement::matrix_coeff(1, basis(2, 0), basis(2, 0));
    const CoeffElement a01 = CoeffElement::matrix_coeff(1, basis(2, 0), basis(2, 1));
    CHECK(std::abs(pairing(a00, k1) - Scalar(0.5)) < 1e-15);
    CHECK(std::abs(pairing(a01, k1)) < 1e-15);
}

TEST_CASE("product has the unit and the expected support") {
    RepTable rt(kCtx);
    Sampler sampler(3);
    const CoeffElement b = sampler.coeff(3);
    CHECK(coeff_max_diff(product(CoeffElement::unit(), b, rt), b) < 1e-13);
    CHECK(coeff_max_diff(product(b, CoeffElement::unit(), rt), b) < 1e-13);

    const CoeffElement c = product(gen_alpha(), gen_delta(), rt);
    for (int n : c.support()) CHECK((n == 0 || n == 2));
}

TEST_CASE("defining relations of the generator matrix") {
    RepTable rt(kCtx);
    const double q = kCtx.q;
    const CoeffElement al = gen_alpha(), be = gen_beta(), ga = gen_gamma(), de = gen_delta();

    auto prod = [&](const CoeffElement& x, const CoeffElement& y) { return product(x, y, rt); };
    CHECK(coeff_max_diff(prod(al, be), Scalar(q) * prod(be, al)) < 1e-13);
    CHECK(coeff_max_diff(prod(al, ga), Scalar(q) * prod(ga, al)) < 1e-13);
    CHECK(coeff_max_diff(prod(be, ga), prod(ga, be)) < 1e-13);
    CHECK(coeff_max_diff(prod(be, de), Scalar(q) * prod(de, be)) < 1e-13);
    CHECK(coeff_max_diff(prod(ga, de), Scalar(q) * prod(de, ga)) < 1e-13);

    CoeffElement det = prod(al, de);
    det -= Scalar(q) * prod(be, ga);
    CHECK(coeff_max_diff(det.trimmed(), CoeffElement::unit()) < 1e-13);

    CoeffElement det2 = prod(de, al);
    det2 -= Scalar(1.0 / q) * prod(ga, be);
    CHECK(coeff_max_diff(det2.trimmed(), CoeffElement::unit()) < 1e-13);
}

TEST_CASE("star is the expected involution") {
    RepTable rt(kCtx);
    const double q = kCtx.q;
    CHECK(coeff_max_diff(star(CoeffElement::unit(), rt), CoeffElement::unit()) < 1e-15);
    CHECK(coeff_max_diff(star(gen_alpha(), rt), gen_delta()) < 1e-14);
    CHECK(coeff_max_diff(star(gen_beta(), rt), Scalar(-q) * gen_gamma()) < 1e-14);
    CHECK(coeff_max_diff(star(gen_gamma(), rt), Scalar(-1.0 / q) * gen_beta()) < 1e-14);
    CHECK(coeff_max_diff(star(gen_delta(), rt), gen_alpha()) < 1e-14);

    Sampler sampler(5);
    for (int k = 0; k < 10; ++k) {
        const CoeffElement a = sampler.coeff(3);
        const CoeffElement b = sampler.coeff(2);
        CHECK(coeff_max_diff(star(star(a, rt), rt), a) < 1e-12);
        // anti-multiplicative
        CHECK(coeff_max_diff(star(product(a, b, rt), rt),
                             product(star(b, rt), star(a, rt), rt)) < 1e-11);
    }
}

TEST_CASE("counit is the character it should be") {
    RepTable rt(kCtx);
    CHECK(std::abs(counit(CoeffElement::unit()) - Scalar(1.0)) < 1e-15);
    CHECK(std::abs(counit(CoeffElement::matrix_coeff(1, basis(2, 0), basis(2, 1)))) < 1e-15);
    Sampler sampler(7);
    for (int k = 0; k < 10; ++k) {
        const CoeffElement a = sampler.coeff(2);
        const CoeffElement b = sampler.coeff(2);
        CHECK(std::abs(counit(product(a, b, rt)) - counit(a) * counit(b)) < 1e-10);
    }
}

TEST_CASE("haar state golden values") {
    RepTable rt(kCtx);
    CHECK(std::abs(haar(CoeffElement::unit()) - Scalar(1.0)) < 1e-15);
    // Phi(alpha alpha*) = q^{-1} / (q + q^{-1}) = 0.8 at q = 1/2
    const CoeffElement a = gen_alpha();
    CHECK(std::abs(haar(product(a, star(a, rt), rt)) - Scalar(0.8)) < 1e-13);
    // any spin-1 coefficient integrates to zero
    CHECK(std::abs(haar(CoeffElement::matrix_coeff(2, basis(3, 1), basis(3, 2)))) < 1e-15);
}

TEST_CASE("haar via full product matches the lazy spin-0 path") {
    RepTable rt(kCtx);
    Sampler sampler(9);
    for (int k = 0; k < 20; ++k) {
        const CoeffElement a = sampler.coeff(3);
        const CoeffElement b = sampler.coeff(3);
        CHECK(std::abs(haar(product(a, b, rt)) - haar_of_product(a, b, rt)) < 1e-11);
    }
}

TEST_CASE("modular automorphism") {
    RepTable rt(kCtx);
    const Scalar minus_i(0.0, -1.0);
    Sampler sampler(11);

    // z = 0 is the identity
    const CoeffElement a0 = sampler.coeff(2);
    CHECK(coeff_max_diff(sigma_a(a0, Scalar(0.0), rt), a0) < 1e-15);

    // sigma_A(alpha) = q^{-2} alpha, fixed by the modular property itself
    const CoeffElement sa = sigma_a(gen_alpha(), minus_i, rt);
    CHECK(coeff_max_diff(sa, Scalar(4.0) * gen_alpha()) < 1e-13);

    for (int k = 0; k < 20; ++k) {
        const CoeffElement a = sampler.coeff(2);
        const CoeffElement b = sampler.coeff(2);
        const Scalar lhs = haar_of_product(a, b, rt);
        const Scalar rhs = haar_of_product(b, sigma_a(a, minus_i, rt), rt);
        CHECK(std::abs(lhs - rhs) < 1e-11);
    }

    // one-parameter group law on random complex parameters
    for (int k = 0; k < 10; ++k) {
        const Scalar z = sampler.scalar(), w = sampler.scalar();
        const CoeffElement a = sampler.coeff(2);
        CHECK(coeff_max_diff(sigma_a(sigma_a(a, z, rt), w, rt), sigma_a(a, z + w, rt)) <
              1e-9 * std::max(1.0, coeff_max_abs(sigma_a(a, z + w, rt))));
    }
}

TEST_CASE("scaling automorphism is the antipode squared at -i") {
    RepTable rt(kCtx);
    const Scalar minus_i(0.0, -1.0);
    Sampler sampler(13);
    const CoeffElement a = sampler.coeff(2);
    CHECK(coeff_max_diff(tau_a(a, Scalar(0.0), rt), a) < 1e-15);
    CHECK(std::abs(haar(tau_a(a, minus_i, rt)) - haar(a)) < 1e-13);

    // S_A^2 = (tau_A)_{-i} against the antipode route
    const CoeffElement lhs = antipode_a(antipode_a(a, 1, rt), 1, rt);
    const CoeffElement rhs = tau_a(a, minus_i, rt);
    CHECK(coeff_max_diff(lhs, rhs) < 1e-11 * std::max(1.0, coeff_max_abs(rhs)));
}

TEST_CASE("antipode of the coefficient algebra dualizes the blockwise antipode") {
    RepTable rt(kCtx);
    Sampler sampler(17);
    for (double s : {1.0, -0.5}) {
        const DualElement ks = dual_k_power(rt, s);
        const DualElement ksinv = dual_k_power(rt, -s);
        for (int k = 0; k < 10; ++k) {
            const CoeffElement a = sampler.coeff(2);
            // S(k^s) = k^{-s}
            CHECK(std::abs(pairing(antipode_a(a, 1, rt), ks) - pairing(a, ksinv)) < 1e-11);
            CHECK(std::abs(counit(antipode_a(a, 1, rt)) - counit(a)) < 1e-11);
            CHECK(coeff_max_diff(antipode_a(antipode_a(a, 1, rt), -1, rt), a) < 1e-11);
        }
    }
}

TEST_CASE("product is associative") {
    RepTable rt(kCtx);
    Sampler sampler(19);
    for (int k = 0; k < 5; ++k) {
        const CoeffElement a = sampler.coeff(2);
        const CoeffElement b = sampler.coeff(2);
        const CoeffElement c = sampler.coeff(2);
        const CoeffElement lhs = product(product(a, b, rt), c, rt);
        const CoeffElement rhs = product(a, product(b, c, rt), rt);
        CHECK(coeff_max_diff(lhs, rhs) < 1e-10 * std::max(1.0, coeff_max_abs(rhs)));
    }
}

TEST_CASE("hit actions act blockwise") {
    RepTable rt(kCtx);
    Sampler sampler(23);
    const CoeffElement a = sampler.coeff(2);
    CHECK(coeff_max_diff(hit_left(dual_one(rt), a, rt), a) < 1e-15);
    CHECK(coeff_max_diff(hit_right(a, dual_one(rt), rt), a) < 1e-15);

    // pairing contract: tau(hit_left(x, a), y) = tau(a, y x) for k-powers
    const DualElement x = dual_k_power(rt, 1.0);
    const DualElement y = dual_k_power(rt, -2.0);
    const DualElement yx = dual_k_power(rt, -1.0);
    CHECK(std::abs(pairing(hit_left(x, a, rt), y) - pairing(a, yx)) < 1e-12);
}
