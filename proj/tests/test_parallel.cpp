#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qsl2r/double_alg.hpp"
#include "qsl2r/par.hpp"
#include "qsl2r/sampling.hpp"

using namespace qsl2r;

TEST_CASE("thread pool configuration") { CHECK(thread_count() >= 1); }

TEST_CASE("parallel_for matches serial_for slot for slot") {
    std::vector<double> a(503), b(503);
    auto kernel = [](std::size_t i) {
        double acc = 0.0;
        for (int k = 1; k <= 50; ++k) acc += std::sin(static_cast<double>(i * k)) / k;
        return acc;
    };
    parallel_for(a.size(), [&](std::size_t i) { a[i] = kernel(i); });
    serial_for(b.size(), [&](std::size_t i) { b[i] = kernel(i); });
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("parallel product is bitwise identical to the serial reference") {
    const QContext ctx(0.5, 1.0);
    RepTable rt(ctx);
    Sampler sampler(101);
    for (int k = 0; k < 10; ++k) {
        const CoeffElement a = sampler.coeff(4);
        const CoeffElement b = sampler.coeff(4);
        const CoeffElement p1 = product(a, b, rt);
        const CoeffElement p2 = product_serial(a, b, rt);
        CHECK(coeff_max_diff(p1, p2) == 0.0);
    }
}

TEST_CASE("parallel regular representation is bitwise identical") {
    const QContext ctx(0.5, 1.0);
    RepTable rt(ctx);
    CoidealData cd(rt, 14);
    const InvariantIntegral integral = compute_weights(GCharacter{-1.0}, cd, 6);
    const RegularRep rr = make_regular_rep(6, integral, cd);
    Sampler sampler(103);
    for (int k = 0; k < 3; ++k) {
        const DoubleElement d = sampler.double_element(2, 2, 2, cd);
        const Matrix m1 = regular_rep_matrix(d, rr, cd);
        const Matrix m2 = regular_rep_matrix_serial(d, rr, cd);
        CHECK(max_abs_diff(m1, m2) == 0.0);
    }
}
