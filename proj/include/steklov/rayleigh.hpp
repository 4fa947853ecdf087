// Rayleigh quotient of a radial test function a with a(R) = 0:
//   [ int_0^R ( a'^2 h^{n-1} + lambda a^2 h^{n-3} ) dr ] / ( a(0)^2 h(0)^{n-1} ).
// Integration is composite Gauss with forced breakpoints at every profile
// junction and every declared kink of the test function, refined per piece
// until the panel sum stabilizes.

#pragma once

#include "steklov/errors.hpp"
#include "steklov/format.hpp"
#include "steklov/profile.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

namespace steklov {

struct TestFunction {
    std::function<double(double)> value;
    std::function<double(double)> deriv;
    std::vector<double> kinks; // interior points where a' may jump
};

// Piecewise-linear test function through (r_i, v_i); knots must span [0, R]
// of the profile it is used with and carry v_last = 0 there.
inline TestFunction piecewise_linear_test(std::vector<std::pair<double, double>> knots) {
    if (knots.size() < 2) throw parameter_error("piecewise_linear_test: need at least 2 knots");
    for (std::size_t i = 1; i < knots.size(); ++i)
        if (!(knots[i].first > knots[i - 1].first))
            throw parameter_error("piecewise_linear_test: knots must be strictly increasing");

    auto shared = std::make_shared<std::vector<std::pair<double, double>>>(std::move(knots));
    TestFunction tf;
    tf.value = [shared](double r) {
        const auto& ks = *shared;
        if (r <= ks.front().first) return ks.front().second;
        if (r >= ks.back().first) return ks.back().second;
        std::size_t i = 1;
        while (ks[i].first < r) ++i;
        const double t = (r - ks[i - 1].first) / (ks[i].first - ks[i - 1].first);
        return (1.0 - t) * ks[i - 1].second + t * ks[i].second;
    };
    tf.deriv = [shared](double r) {
        const auto& ks = *shared;
        if (r <= ks.front().first || r >= ks.back().first) {
            // one-sided slopes at the ends
            if (r <= ks.front().first)
                return (ks[1].second - ks[0].second) / (ks[1].first - ks[0].first);
            const std::size_t m = ks.size();
            return (ks[m - 1].second - ks[m - 2].second) / (ks[m - 1].first - ks[m - 2].first);
        }
        std::size_t i = 1;
        while (ks[i].first < r) ++i;
        return (ks[i].second - ks[i - 1].second) / (ks[i].first - ks[i - 1].first);
    };
    for (std::size_t i = 1; i + 1 < shared->size(); ++i)
        tf.kinks.push_back((*shared)[i].first);
    return tf;
}

namespace detail {

// 8-point Gauss-Legendre nodes/weights on [-1, 1].
inline constexpr double kGL8X[4] = {0.1834346424956498, 0.5255324099163290,
                                    0.7966664774136267, 0.9602898564975363};
inline constexpr double kGL8W[4] = {0.3626837833783620, 0.3137066458778873,
                                    0.2223810344533745, 0.1012285362903763};

template <class F>
double gauss8(const F& f, double lo, double hi) {
    const double c = 0.5 * (lo + hi), hw = 0.5 * (hi - lo);
    double acc = 0.0;
    for (int i = 0; i < 4; ++i)
        acc += kGL8W[i] * (f(c - hw * kGL8X[i]) + f(c + hw * kGL8X[i]));
    return acc * hw;
}

template <class F>
double composite_gauss8(const F& f, double lo, double hi, int panels) {
    double acc = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double a = lo + (hi - lo) * i / panels;
        const double b = lo + (hi - lo) * (i + 1) / panels;
        acc += gauss8(f, a, b);
    }
    return acc;
}

} // namespace detail

inline double rayleigh(const Profile& profile, double lambda, const TestFunction& a,
                       int quad_n) {
    if (quad_n < 100) throw parameter_error("rayleigh: quad_n must be >= 100");
    if (!(lambda >= 0.0)) throw domain_error("rayleigh: lambda must be >= 0");
    const double R = profile.R();
    const int n = profile.n();

    const double a0 = a.value(0.0);
    const double aR = a.value(R);
    if (a0 == 0.0) throw domain_error("rayleigh: a(0) = 0, boundary term vanishes");
    if (std::abs(aR) > 1e-10 * (1.0 + std::abs(a0)))
        throw inadmissible_test_function("rayleigh: test function must vanish at r = R");

    std::vector<double> brk{0.0, R};
    for (double j : profile.junctions()) brk.push_back(j);
    for (double kink : a.kinks)
        if (kink > 0.0 && kink < R) brk.push_back(kink);
    std::sort(brk.begin(), brk.end());
    brk.erase(std::unique(brk.begin(), brk.end(),
                          [R](double x, double y) { return std::abs(x - y) < 1e-14 * R; }),
              brk.end());

    auto integrand = [&](double r) {
        const double hv = profile.h(r);
        const double ar = a.value(r), dar = a.deriv(r);
        return dar * dar * ipow(hv, n - 1) + lambda * ar * ar * ipow(hv, n - 3);
    };

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < brk.size(); ++i) {
        const double lo = brk[i], hi = brk[i + 1];
        int panels = std::max(4, static_cast<int>(std::lround(quad_n * (hi - lo) / R)));
        double prev = detail::composite_gauss8(integrand, lo, hi, panels);
        for (int it = 0; it < 14; ++it) {
            panels *= 2;
            const double next = detail::composite_gauss8(integrand, lo, hi, panels);
            const double diff = std::abs(next - prev);
            prev = next;
            if (diff <= 1e-12 * std::abs(next) + 1e-300) break;
        }
        total += prev;
    }
    return total / (a0 * a0 * ipow(profile.h(0.0), n - 1));
}

} // namespace steklov
