// Laplacian eigendata of the round unit sphere S^(n-1): eigenvalues
// lambda_k = k(n+k-2) counted without multiplicity, and the dimension of the
// degree-k spherical harmonic space.

#pragma once

#include "steklov/errors.hpp"

#include <algorithm>

namespace steklov {

inline double sphere_eigenvalue(int n, int k) {
    if (n < 2) throw domain_error("sphere_eigenvalue: n must be >= 2");
    if (k < 0) throw domain_error("sphere_eigenvalue: k must be >= 0");
    return static_cast<double>(k) * (n + k - 2);
}

namespace detail {

inline long long binomial(int top, int bottom) {
    if (bottom < 0 || bottom > top) return 0;
    bottom = std::min(bottom, top - bottom);
    long long r = 1;
    for (int i = 1; i <= bottom; ++i)
        r = r * (top - bottom + i) / i; // product of i consecutive ints is divisible by i!
    return r;
}

} // namespace detail

// dim of degree-k spherical harmonics on S^(n-1):
// 1 for k = 0, binom(n+k-2,k) + binom(n+k-3,k-1) for k >= 1.
inline long long sphere_multiplicity(int n, int k) {
    if (n < 2) throw domain_error("sphere_multiplicity: n must be >= 2");
    if (k < 0) throw domain_error("sphere_multiplicity: k must be >= 0");
    if (k == 0) return 1;
    return detail::binomial(n + k - 2, k) + detail::binomial(n + k - 3, k - 1);
}

} // namespace steklov
