// Series seeding of the radial problem at the singular endpoint r = R.
// In the variable s = R - r the equation (h^{n-1} a')' = lambda h^{n-3} a
// keeps its form, and near s = 0 the warp expands in odd powers,
// h(s) = c1 s + c3 s^3 + ... (even derivatives vanish where the metric
// closes smoothly). Writing h = c1 s u(s) with u even and u(0) = 1, the
// pole-regular solution is a(s) = s^beta * sum_m C_m s^m with
//   beta (beta + n - 2) = lambda / c1^2,  C_0 = 1,
//   C_m = -sum_{i=1..m} C_{m-i} [ (beta+m-i)(beta+m+n-2) U_i - (lambda/c1^2) V_i ]
//         / ( m (2 beta + m + n - 2) ),
// where U = u^{n-1}, V = u^{n-3} as power series. The recurrence has no
// resonances on this branch, and odd C_m vanish identically.

#pragma once

#include "steklov/errors.hpp"
#include "steklov/profile.hpp"

#include <cmath>
#include <vector>

namespace steklov {

struct ModeProblem {
    Profile profile;
    double lambda = 0.0;

    ModeProblem(Profile p, double lam) : profile(std::move(p)), lambda(lam) {
        if (!(lambda >= 0.0)) throw domain_error("ModeProblem: lambda must be >= 0");
    }
};

struct FrobeniusSeed {
    double beta = 0.0;           // indicial exponent of the regular branch
    std::vector<double> coeffs;  // C_0..C_M
    double s0 = 0.0;             // start offset from R
    int order = 0;               // truncation order M
    double a_end = 0.0;          // a(R - s0)
    double da_end = 0.0;         // da/dr at R - s0
    double trunc_rel = 0.0;      // relative truncation estimate of the series
};

namespace detail {

// Truncated power series ops on coefficient vectors (index = power of s).
inline std::vector<double> series_mul(const std::vector<double>& a,
                                      const std::vector<double>& b, int M) {
    std::vector<double> c(static_cast<std::size_t>(M) + 1, 0.0);
    for (int i = 0; i <= M; ++i) {
        if (i >= static_cast<int>(a.size()) || a[i] == 0.0) continue;
        for (int j = 0; j + i <= M && j < static_cast<int>(b.size()); ++j)
            c[i + j] += a[i] * b[j];
    }
    return c;
}

inline std::vector<double> series_recip(const std::vector<double>& a, int M) {
    std::vector<double> w(static_cast<std::size_t>(M) + 1, 0.0);
    w[0] = 1.0 / a[0];
    for (int m = 1; m <= M; ++m) {
        double acc = 0.0;
        for (int i = 1; i <= m && i < static_cast<int>(a.size()); ++i)
            acc += a[i] * w[m - i];
        w[m] = -acc / a[0];
    }
    return w;
}

inline std::vector<double> series_ipow(std::vector<double> a, int e, int M) {
    if (e < 0) return series_ipow(series_recip(a, M), -e, M);
    std::vector<double> r(static_cast<std::size_t>(M) + 1, 0.0);
    r[0] = 1.0;
    while (e) {
        if (e & 1) r = series_mul(r, a, M);
        a = series_mul(a, a, M);
        e >>= 1;
    }
    return r;
}

} // namespace detail

inline double indicial_exponent(int n, double lambda_eff) {
    const double nm2 = n - 2;
    return 0.5 * (-nm2 + std::sqrt(nm2 * nm2 + 4.0 * lambda_eff));
}

inline FrobeniusSeed frobenius_seed(const ModeProblem& prob, int M, double s0) {
    if (M < 4) throw parameter_error("frobenius_seed: order M must be >= 4");
    if (!(s0 > 0.0)) throw parameter_error("frobenius_seed: s0 must be positive");
    if (!(prob.lambda >= 0.0)) throw domain_error("frobenius_seed: lambda must be >= 0");

    const Profile& p = prob.profile;
    const TailExpansion& tail = p.tail();
    if (s0 > tail.radius)
        throw seed_error("frobenius_seed: s0 exceeds the endpoint-expansion radius; "
                         "retry with a smaller s0");

    const int n = p.n();
    const double lam_eff = prob.lambda / (tail.c1 * tail.c1);
    const double beta = indicial_exponent(n, lam_eff);

    // u(s) = h(s) / (c1 s): even series, u_0 = 1.
    std::vector<double> u(static_cast<std::size_t>(M) + 1, 0.0);
    u[0] = 1.0;
    for (std::size_t j = 0; j < tail.odd_coeffs.size(); ++j) {
        const int pow = 2 * static_cast<int>(j) + 2;
        if (pow <= M) u[pow] = tail.odd_coeffs[j] / tail.c1;
    }
    const std::vector<double> U = detail::series_ipow(u, n - 1, M);
    const std::vector<double> V = detail::series_ipow(u, n - 3, M);

    FrobeniusSeed seed;
    seed.beta = beta;
    seed.s0 = s0;
    seed.order = M;
    seed.coeffs.assign(static_cast<std::size_t>(M) + 1, 0.0);
    seed.coeffs[0] = 1.0;
    for (int m = 1; m <= M; ++m) {
        double acc = 0.0;
        for (int i = 1; i <= m; ++i) {
            const double term = (beta + m - i) * (beta + m + n - 2) * U[i] - lam_eff * V[i];
            if (term != 0.0) acc += seed.coeffs[m - i] * term;
        }
        seed.coeffs[m] = -acc / (m * (2.0 * beta + m + n - 2));
    }

    // Partial sums at s0 and a geometric remainder estimate from the last
    // two nonzero corrections (the m = 0 term is the leading order, not a
    // correction; a terminated series gives a zero estimate).
    double sa = 0.0, sd = 0.0, spow = 1.0, last_term = 0.0, prev_term = 0.0;
    for (int m = 0; m <= M; ++m) {
        const double term = seed.coeffs[m] * spow;
        sa += term;
        sd += (beta + m) * term;
        if (m >= 1 && term != 0.0) {
            prev_term = last_term;
            last_term = std::abs(term);
        }
        spow *= s0;
    }
    if (last_term > 0.0 && std::abs(sa) > 0.0) {
        const double q = (prev_term > 0.0) ? std::min(0.5, last_term / prev_term) : 0.5;
        seed.trunc_rel = last_term / (1.0 - q) / std::abs(sa);
    }

    const double sb = std::pow(s0, beta);
    seed.a_end = sb * sa;
    seed.da_end = -sb / s0 * sd; // d/dr = -d/ds
    return seed;
}

} // namespace steklov
