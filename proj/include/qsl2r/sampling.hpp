#pragma once

#include <cstdint>
#include <random>

#include "qsl2r/double_alg.hpp"

namespace qsl2r {

/// Deterministic sample source for property checks. All draws happen in a
/// fixed serial order so reports are reproducible for a given seed.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    double real() { return gauss_(rng_); }
    Scalar scalar() { return Scalar(gauss_(rng_), gauss_(rng_)); }
    int uniform_int(int lo, int hi);  // inclusive bounds

    Vector vector(int dim);
    Matrix matrix(int rows, int cols);

    /// Random coefficient element supported on blocks n = 0..n_range.
    CoeffElement coeff(int n_range);
    /// Random element of the coideal subalgebra on even blocks <= n_range.
    CoeffElement b_element(int n_range, const CoidealData& cd);
    /// Random stabilizer element supported on |m| <= m_range.
    StabElement stab(int m_range);
    /// Random double element with the given spans and term count.
    DoubleElement double_element(int n_range, int m_range, int terms, const CoidealData& cd);

private:
    std::mt19937_64 rng_;
    std::normal_distribution<double> gauss_{0.0, 1.0};
};

}  // namespace qsl2r
