#include "qsl2r/relint.hpp"

#include <cmath>
#include <random>

#include <Eigen/SVD>

namespace qsl2r {

DualElement g_dual(const GCharacter& g, const RepTable& rt) {
    return dual_k_power(rt, g.s);
}

CheckReport check_balanced(const GCharacter& g, const CoidealData& cd, int n_limit) {
    const int limit = n_limit >= 0 ? std::min(n_limit, cd.n_max()) : cd.n_max();
    double residual = 0.0;
    for (int n = 0; n <= limit; ++n) {
        const auto rep = cd.reps().rep(n);
        const Matrix lhs = antipode(*rep, cd.phi_c(n), 1) * k_power(*rep, g.s);
        residual = std::max(residual, max_abs_diff(lhs, cd.phi_c(n)));
    }
    return make_report("balanced", residual, cd.ctx().tol);
}

CheckReport check_character_condition(const GCharacter& g, const CoidealData& cd, int n_limit) {
    const int limit = n_limit >= 0 ? std::min(n_limit, cd.n_max()) : cd.n_max();
    const RepTable& rt = cd.reps();
    const DualElement gd = g_dual(g, rt);
    const Scalar minus_i(0.0, -1.0);
    double residual = 0.0;
    for (int n = 0; n <= limit; n += 2) {
        const Vector& v0 = cd.eigvec(n, 0);
        for (int j = 0; j <= n; ++j) {
            Vector ej = Vector::Zero(n + 1);
            ej(j) = 1.0;
            const CoeffElement b = CoeffElement::matrix_coeff(n, v0, ej);
            const Scalar lhs = pairing(b, gd);
            const Scalar rhs = counit(sigma_a(sigma_b(b, -1, cd), minus_i, rt));
            // both sides grow like q^{-n}; compare relative to their size
            const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
            residual = std::max(residual, std::abs(lhs - rhs) / scale);
        }
    }
    return make_report("character_condition", residual, cd.ctx().tol);
}

InvariantIntegral compute_weights(const GCharacter& g, const CoidealData& cd, int truncation) {
    const QContext& ctx = cd.ctx();
    if (truncation < 0 || truncation > cd.n_max())
        throw std::invalid_argument("compute_weights: truncation outside available blocks");
    const CheckReport balanced = check_balanced(g, cd);
    if (!balanced.pass)
        throw std::invalid_argument("compute_weights: character is not balanced");

    auto weight_in_block = [&](int n, int m) {
        const auto rep = cd.reps().rep(n);
        const Matrix ginv = k_power(*rep, -g.s);
        const Vector& v = cd.eigvec(n, m);
        return (v.dot(ginv * v)).real();
    };

    InvariantIntegral out;
    out.g = g;
    out.truncation = truncation;
    const double norm = weight_in_block(0, 0);  // <v_0, g^{-1} v_0> at spin 0 is 1
    for (int m = -truncation; m <= truncation; ++m) {
        const int n_first = std::abs(m);
        double value = 0.0;
        bool have = false;
        for (int n = n_first; n <= cd.n_max(); n += 2) {
            const double w = weight_in_block(n, m) / norm;
            if (!have) {
                value = w;
                have = true;
            } else if (std::abs(w - value) > 100.0 * ctx.tol * std::max(1.0, std::abs(value))) {
                throw std::runtime_error("compute_weights: blocks disagree on mu_" +
                                         std::to_string(m));
            }
        }
        if (!have) throw std::logic_error("compute_weights: no block carries the label");
        if (value <= 0.0)
            throw std::runtime_error("compute_weights: non-positive weight mu_" +
                                     std::to_string(m));
        out.weights[m] = value;
    }
    return out;
}

Scalar psi(const StabElement& x, const InvariantIntegral& integral) {
    Scalar acc = 0.0;
    for (const auto& [m, c] : x.coeffs) {
        auto it = integral.weights.find(m);
        if (it == integral.weights.end())
            throw std::invalid_argument("psi: support outside the weight truncation");
        acc += it->second * c;
    }
    return acc;
}

CheckReport check_relative_invariance(const InvariantIntegral& integral, const CoidealData& cd,
                                      int samples, std::uint64_t seed) {
    const RepTable& rt = cd.reps();
    const DualElement gd = g_dual(integral.g, rt);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int m_cap = integral.truncation;
    double residual = 0.0;
    for (int k = 0; k < samples; ++k) {
        // coefficient basis element of spin <= 1, stabilizer label inside margin
        const int na = 1 + static_cast<int>(rng() % 2);
        const int i = static_cast<int>(rng() % (na + 1));
        const int j = static_cast<int>(rng() % (na + 1));
        const int m_room = m_cap - na;
        const int m0 = m_room <= 0 ? 0
                                   : static_cast<int>(rng() % (2 * m_room + 1)) - m_room;
        Vector ei = Vector::Zero(na + 1), ej = Vector::Zero(na + 1);
        ei(i) = 1.0;
        ej(j) = 1.0;
        const Scalar amp(gauss(rng), gauss(rng));
        const CoeffElement a = amp * CoeffElement::matrix_coeff(na, ei, ej);
        const StabElement x = StabElement::e(m0);
        const Scalar lhs = psi(act_rmod(x, a, cd), integral);
        const Scalar rhs = pairing(a, gd) * psi(x, integral);
        residual = std::max(residual,
                            std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
    }
    return make_report("relative_invariance", residual, cd.ctx().tol);
}

CheckReport check_delta_phic_factorization(const InvariantIntegral& integral,
                                           const CoidealData& cd, int pair_limit) {
    const RepTable& rt = cd.reps();
    double residual = 0.0;
    for (int n1 = 0; n1 <= pair_limit; ++n1)
        for (int n2 = 0; n2 <= pair_limit; ++n2) {
            const Matrix lhs = cd.delta_phi_c(n1, n2);
            const auto r1 = rt.rep(n1);
            Matrix rhs = Matrix::Zero(lhs.rows(), lhs.cols());
            for (int m = -std::min(n1, n2); m <= std::min(n1, n2); ++m) {
                if (!cd.has_m(n1, m) || !cd.has_m(n2, m)) continue;
                auto it = integral.weights.find(m);
                if (it == integral.weights.end())
                    throw std::invalid_argument(
                        "check_delta_phic_factorization: pair exceeds weight truncation");
                const Matrix s_em =
                    antipode(*r1, cd.stab_block(StabElement::e(m), n1), 1) *
                    k_power(*r1, integral.g.s);
                rhs += (1.0 / it->second) * kron(s_em, cd.stab_block(StabElement::e(m), n2));
            }
            residual = std::max(residual, max_abs_diff(lhs, rhs));
        }
    return make_report("delta_phic_factorization", residual, cd.ctx().tol);
}

CheckReport check_weight_uniqueness(const InvariantIntegral& integral, const CoidealData& cd) {
    const RepTable& rt = cd.reps();
    const DualElement gd = g_dual(integral.g, rt);
    const int cap = integral.truncation;
    const int vars = 2 * cap + 1;
    std::vector<Eigen::RowVectorXcd> rows;
    for (int na = 1; na <= 2; ++na) {
        for (int i = 0; i <= na; ++i)
            for (int j = 0; j <= na; ++j) {
                Vector ei = Vector::Zero(na + 1), ej = Vector::Zero(na + 1);
                ei(i) = 1.0;
                ej(j) = 1.0;
                const CoeffElement a = CoeffElement::matrix_coeff(na, ei, ej);
                const Scalar ga = pairing(a, gd);
                for (int m0 = -(cap - na); m0 <= cap - na; ++m0) {
                    const StabElement moved = act_rmod(StabElement::e(m0), a, cd);
                    Eigen::RowVectorXcd row = Eigen::RowVectorXcd::Zero(vars);
                    for (const auto& [m, c] : moved.coeffs) row(m + cap) += c;
                    row(m0 + cap) -= ga;
                    rows.push_back(row);
                }
            }
    }
    Matrix system(rows.size(), vars);
    for (std::size_t r = 0; r < rows.size(); ++r) system.row(r) = rows[r];
    Eigen::JacobiSVD<Matrix> svd(system);
    const auto& sv = svd.singularValues();
    // rank deficiency exactly 1: smallest singular value ~ 0, next one not
    const double scale = sv(0);
    const double smallest = sv(vars - 1);
    const double next = sv(vars - 2);
    CheckReport r;
    r.name = "weight_uniqueness";
    r.residual = smallest / scale;
    r.threshold = cd.ctx().tol;
    r.pass = (smallest <= cd.ctx().tol * scale) && (next > 1e-6 * scale);
    return r;
}

}  // namespace qsl2r
