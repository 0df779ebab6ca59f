#pragma once

#include <cstdint>

#include "qsl2r/coideal.hpp"
#include "qsl2r/report.hpp"

namespace qsl2r {

/// Candidate character g = k^s, the positive grouplike family of the dual.
struct GCharacter {
    double s = -1.0;
};

DualElement g_dual(const GCharacter& g, const RepTable& rt);

/// The relatively invariant integral on the stabilizer: a character g and
/// the positive weights mu_m with mu_0 = 1, psi(x) = sum_m mu_m x_m.
struct InvariantIntegral {
    GCharacter g;
    int truncation = 0;            // weights cover |m| <= truncation
    std::map<int, double> weights;
};

/// Residual of S(Phi_C) g = Phi_C over blocks n <= n_limit (default: all
/// blocks held by cd).
CheckReport check_balanced(const GCharacter& g, const CoidealData& cd, int n_limit = -1);

/// Residual of tau(b, g) = counit(sigma_A(sigma_B^{-1}(b))) over a spanning
/// set of the coideal subalgebra up to n_limit.
CheckReport check_character_condition(const GCharacter& g, const CoidealData& cd,
                                      int n_limit = -1);

/// Weights of the g-invariant integral read from the normalized
/// eigenvectors, mu_m = <v_m, g^{-1} v_m> / <v_0, g^{-1} v_0>; every block
/// containing the label must agree. Requires g balanced.
InvariantIntegral compute_weights(const GCharacter& g, const CoidealData& cd, int truncation);

Scalar psi(const StabElement& x, const InvariantIntegral& integral);

/// psi(x <| a) = tau(a, g) psi(x) on sampled stabilizer elements and
/// coefficient basis elements, with the support margin supp(x) + n_a <=
/// truncation.
CheckReport check_relative_invariance(const InvariantIntegral& integral, const CoidealData& cd,
                                      int samples, std::uint64_t seed);

/// Factorization of Delta(Phi_C) through the weights: on each pair
/// (n1, n2) <= pair_limit compare the spectral construction against
/// sum_m mu_m^{-1} S(e_m) g (x) e_m.
CheckReport check_delta_phic_factorization(const InvariantIntegral& integral,
                                           const CoidealData& cd, int pair_limit);

/// The truncated g-invariance system determines the weights up to one
/// scalar: its rank deficiency must be exactly 1.
CheckReport check_weight_uniqueness(const InvariantIntegral& integral, const CoidealData& cd);

}  // namespace qsl2r
