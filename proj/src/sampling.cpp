#include "qsl2r/sampling.hpp"

namespace qsl2r {

int Sampler::uniform_int(int lo, int hi) {
    std::uniform_int_distribution<int> dist(lo, hi);
    return dist(rng_);
}

Vector Sampler::vector(int dim) {
    Vector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = scalar();
    return v;
}

Matrix Sampler::matrix(int rows, int cols) {
    Matrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m(r, c) = scalar();
    return m;
}

CoeffElement Sampler::coeff(int n_range) {
    CoeffElement a;
    for (int n = 0; n <= n_range; ++n) a.set_block(n, matrix(n + 1, n + 1));
    return a;
}

CoeffElement Sampler::b_element(int n_range, const CoidealData& cd) {
    CoeffElement b;
    for (int n = 0; n <= n_range; n += 2) {
        const Vector w = vector(n + 1);
        b.set_block(n, w * cd.eigvec(n, 0).adjoint());
    }
    return b;
}

StabElement Sampler::stab(int m_range) {
    StabElement x;
    for (int m = -m_range; m <= m_range; ++m) x.coeffs[m] = scalar();
    return x;
}

DoubleElement Sampler::double_element(int n_range, int m_range, int terms,
                                      const CoidealData& cd) {
    DoubleElement d;
    for (int t = 0; t < terms; ++t)
        d.terms.emplace_back(stab(m_range), b_element(n_range, cd));
    return normalized(d);
}

}  // namespace qsl2r
