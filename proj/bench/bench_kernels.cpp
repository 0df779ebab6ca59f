// Timing comparison of the OpenMP kernels against their serial reference
// implementations: block-pair products (inner parallelism), a Peter-Weyl
// style batch sweep (outer parallelism) and regular-representation assembly.

#include <chrono>
#include <cstdio>

#include "qsl2r/checks.hpp"
#include "qsl2r/par.hpp"

using namespace qsl2r;

namespace {

double time_ms(const std::function<void()>& fn, int repeats) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int k = 0; k < repeats; ++k) fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / repeats;
}

void row(const char* label, double serial, double parallel) {
    std::printf("  %-34s serial %8.2f ms   parallel %8.2f ms   speedup %.2fx\n", label,
                serial, parallel, serial / parallel);
}

}  // namespace

int main() {
    const QContext ctx(0.5, 1.0, 1e-9, 6.0);
    RepTable rt(ctx);
    CoidealData cd(rt, 20);
    const InvariantIntegral integral = compute_weights(GCharacter{-1.0}, cd, 6);

    std::printf("threads: %d (set QSL2R_THREADS to limit)\n\n", thread_count());

    {
        Sampler sampler(7);
        std::vector<std::pair<CoeffElement, CoeffElement>> inputs;
        for (int k = 0; k < 8; ++k) inputs.emplace_back(sampler.coeff(12), sampler.coeff(12));
        for (const auto& [a, b] : inputs) product_serial(a, b, rt);  // warm the CG cache

        const double serial = time_ms(
            [&] {
                for (const auto& [a, b] : inputs) product_serial(a, b, rt);
            },
            3);
        const double parallel = time_ms(
            [&] {
                for (const auto& [a, b] : inputs) product(a, b, rt);
            },
            3);
        row("product, full support to spin 6", serial, parallel);
    }

    {
        Sampler sampler(9);
        struct Quad {
            CoeffElement a, b;
        };
        std::vector<Quad> quads;
        for (int k = 0; k < 128; ++k) {
            const int n = 2 + 2 * static_cast<int>(k % 2);
            quads.push_back({spherical(n, sampler.vector(n + 1), sampler.vector(n + 1), cd),
                             spherical(n, sampler.vector(n + 1), sampler.vector(n + 1), cd)});
        }
        std::vector<double> out(quads.size());
        auto body = [&](std::size_t k) {
            out[k] = coeff_max_diff(product_serial(quads[k].a, quads[k].b, rt),
                                    product_serial(quads[k].b, quads[k].a, rt));
        };
        body(0);  // warm caches
        const double serial = time_ms([&] { serial_for(quads.size(), body); }, 3);
        const double parallel = time_ms([&] { parallel_for(quads.size(), body); }, 3);
        row("commutator sweep, 128 pairs", serial, parallel);
    }

    {
        Sampler sampler(11);
        const RegularRep rr = make_regular_rep(12, integral, cd);
        const DoubleElement d = sampler.double_element(4, 2, 2, cd);
        regular_rep_matrix_serial(d, rr, cd);  // warm caches

        const double serial = time_ms([&] { regular_rep_matrix_serial(d, rr, cd); }, 3);
        const double parallel = time_ms([&] { regular_rep_matrix(d, rr, cd); }, 3);
        char label[64];
        std::snprintf(label, sizeof label, "carrier assembly, dimension %zu", rr.dim());
        row(label, serial, parallel);
    }
    return 0;
}
