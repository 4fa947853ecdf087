// Per-mode Steklov values by shooting: seed the pole-regular solution at
// r = R - s0 with the Frobenius series, then march the first-order system
//   a' = p / h^{n-1},   p' = lambda h^{n-3} a
// down to r = 0 and read off sigma = -p(0) / (h(0)^{n-1} a(0)).
//
// The march is segment-aware. On exactly-constant spans of h the transfer
// matrix is hyperbolic and is applied in closed form with the exponential
// growth factored out (plateau profiles grow solutions by factors far beyond
// double range); everywhere else an adaptive Dormand-Prince 5(4) stepper is
// used, never stepping across a junction. The system is linear, so the state
// is renormalized whenever max(|a|,|p|) exceeds 1e100; sigma is a ratio and
// the scale cancels.

#pragma once

#include "steklov/errors.hpp"
#include "steklov/format.hpp"
#include "steklov/frobenius.hpp"
#include "steklov/profile.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <vector>

namespace steklov {

struct ShootOpts {
    double rtol = 1e-10;
    double atol = 1e-300;
    long max_steps = 2000000;
};

struct ModeDiagnostics {
    long steps = 0;      // accepted RK steps
    long rescalings = 0; // renormalization events (RK and factored transfers)
    int seed_order = 0;
    double seed_s0 = 0.0;
    double est_error = 0.0;
};

struct ModeSolution {
    double sigma = 0.0;
    double a0 = 0.0; // boundary trace a(0), final internal scale
    double p0 = 0.0; // flux h^{n-1} a' at 0, same scale
    std::vector<std::array<double, 2>> a_samples; // (r, a(r)/a(0))
    ModeDiagnostics diag;
};

namespace detail {

constexpr double kRenormThreshold = 1e100;

struct ShootState {
    double a = 0.0;
    double p = 0.0;
    double log_scale = 0.0; // log of the factor taken out of (a,p) so far
    double max_abs_a = 0.0; // running max of |a| in the current scale
    long steps = 0;
    long rescalings = 0;
};

struct SampleBuffer {
    std::vector<std::array<double, 3>> data; // (r, a, log_scale)
    long stride = 1;
    long counter = 0;

    void boundary(double r, const ShootState& st) { data.push_back({r, st.a, st.log_scale}); }

    void step(double r, const ShootState& st) {
        if (counter++ % stride == 0) {
            data.push_back({r, st.a, st.log_scale});
            if (data.size() > 1500) stride *= 2;
        }
    }
};

inline void renormalize(ShootState& st) {
    const double m = std::max(std::abs(st.a), std::abs(st.p));
    if (m > kRenormThreshold) {
        st.a /= m;
        st.p /= m;
        st.max_abs_a /= m;
        st.log_scale += std::log(m);
        ++st.rescalings;
    }
}

// Closed-form transfer across h = c from r down to r - span, with the factor
// e^{mu*span} taken out (q1 = 1 - e^{-2x} is computed cancellation-free).
inline void constant_transfer(ShootState& st, double c, double span, double lambda, int n) {
    if (span <= 0.0) return;
    if (lambda == 0.0) {
        st.a += st.p * span / ipow(c, n - 1);
        st.max_abs_a = std::max(st.max_abs_a, std::abs(st.a));
        renormalize(st);
        return;
    }
    const double mu = std::sqrt(lambda) / c;
    const double kappa = ipow(c, n - 1) * mu;
    const double x = mu * span;
    const double q1 = -std::expm1(-2.0 * x); // 1 - e^{-2x}
    const double q2 = 2.0 - q1;              // 1 + e^{-2x}
    const double a_new = 0.5 * (st.a * q2 - (st.p / kappa) * q1);
    const double p_new = 0.5 * (-kappa * st.a * q1 + st.p * q2);
    st.a = a_new;
    st.p = p_new;
    st.log_scale += x;
    if (x >= std::log(kRenormThreshold)) ++st.rescalings;
    st.max_abs_a = std::max(st.max_abs_a, std::abs(st.a));
    renormalize(st);
}

// One Dormand-Prince 5(4) segment sweep from r_hi down to r_lo. h is
// evaluated through the segment directly (no junction inside the span).
inline void rk_segment(ShootState& st, const Profile& prof, const Segment& seg,
                       double r_hi, double r_lo, double lambda, const ShootOpts& opts,
                       SampleBuffer& samples) {
    if (!(r_hi > r_lo)) return;
    const int n = prof.n();

    auto rhs = [&](double r, const std::array<double, 2>& y) -> std::array<double, 2> {
        const double hv = prof.eval_h(seg, r);
        return {y[1] / ipow(hv, n - 1), lambda * ipow(hv, n - 3) * y[0]};
    };

    // Stability-aware initial step.
    const double h_end = std::min(prof.eval_h(seg, r_hi), prof.eval_h(seg, r_lo));
    const double mu_est = (lambda > 0.0 && h_end > 0.0) ? std::sqrt(lambda) / h_end : 0.0;
    double dt = -(r_hi - r_lo) / 20.0;
    if (mu_est > 0.0) dt = std::max(dt, -0.1 / mu_est);

    std::array<double, 2> y{st.a, st.p};
    std::array<double, 2> k1 = rhs(r_hi, y);
    double r = r_hi;

    while (r > r_lo) {
        if (st.steps > opts.max_steps)
            throw convergence_error("integrate_mode: step budget exhausted");
        if (r + dt < r_lo) dt = r_lo - r;

        const std::array<double, 2> k2 = rhs(r + 0.2 * dt, {y[0] + dt * 0.2 * k1[0],
                                                            y[1] + dt * 0.2 * k1[1]});
        const std::array<double, 2> k3 = rhs(r + 0.3 * dt,
            {y[0] + dt * (3.0 / 40 * k1[0] + 9.0 / 40 * k2[0]),
             y[1] + dt * (3.0 / 40 * k1[1] + 9.0 / 40 * k2[1])});
        const std::array<double, 2> k4 = rhs(r + 0.8 * dt,
            {y[0] + dt * (44.0 / 45 * k1[0] - 56.0 / 15 * k2[0] + 32.0 / 9 * k3[0]),
             y[1] + dt * (44.0 / 45 * k1[1] - 56.0 / 15 * k2[1] + 32.0 / 9 * k3[1])});
        const std::array<double, 2> k5 = rhs(r + 8.0 / 9 * dt,
            {y[0] + dt * (19372.0 / 6561 * k1[0] - 25360.0 / 2187 * k2[0] +
                          64448.0 / 6561 * k3[0] - 212.0 / 729 * k4[0]),
             y[1] + dt * (19372.0 / 6561 * k1[1] - 25360.0 / 2187 * k2[1] +
                          64448.0 / 6561 * k3[1] - 212.0 / 729 * k4[1])});
        const std::array<double, 2> k6 = rhs(r + dt,
            {y[0] + dt * (9017.0 / 3168 * k1[0] - 355.0 / 33 * k2[0] +
                          46732.0 / 5247 * k3[0] + 49.0 / 176 * k4[0] -
                          5103.0 / 18656 * k5[0]),
             y[1] + dt * (9017.0 / 3168 * k1[1] - 355.0 / 33 * k2[1] +
                          46732.0 / 5247 * k3[1] + 49.0 / 176 * k4[1] -
                          5103.0 / 18656 * k5[1])});
        std::array<double, 2> y_new;
        for (int i = 0; i < 2; ++i)
            y_new[i] = y[i] + dt * (35.0 / 384 * k1[i] + 500.0 / 1113 * k3[i] +
                                    125.0 / 192 * k4[i] - 2187.0 / 6784 * k5[i] +
                                    11.0 / 84 * k6[i]);
        const std::array<double, 2> k7 = rhs(r + dt, y_new);

        double err = 0.0;
        for (int i = 0; i < 2; ++i) {
            const double ei = dt * (71.0 / 57600 * k1[i] - 71.0 / 16695 * k3[i] +
                                    71.0 / 1920 * k4[i] - 17253.0 / 339200 * k5[i] +
                                    22.0 / 525 * k6[i] - 1.0 / 40 * k7[i]);
            const double sc = opts.atol + opts.rtol * std::max(std::abs(y[i]), std::abs(y_new[i]));
            const double q = ei / sc;
            err += q * q;
        }
        err = std::sqrt(0.5 * err);

        if (err <= 1.0) {
            r += dt;
            y = y_new;
            k1 = k7; // first-same-as-last
            ++st.steps;
            st.a = y[0];
            st.p = y[1];
            st.max_abs_a = std::max(st.max_abs_a, std::abs(st.a));
            const double m = std::max(std::abs(st.a), std::abs(st.p));
            if (m > kRenormThreshold) {
                renormalize(st);
                y[0] = st.a;
                y[1] = st.p;
                k1 = rhs(r, y);
            }
            samples.step(r, st);
            const double fac = std::min(5.0, std::max(0.2, 0.9 * std::pow(err + 1e-30, -0.2)));
            dt *= fac;
        } else {
            dt *= std::max(0.2, 0.9 * std::pow(err, -0.2));
            if (!(std::abs(dt) > std::abs(r) * 1e-15 + 1e-300))
                throw convergence_error("integrate_mode: step size underflow");
        }
    }
    st.a = y[0];
    st.p = y[1];
}

} // namespace detail

inline ModeSolution integrate_mode(const ModeProblem& prob, const FrobeniusSeed& seed,
                                   const ShootOpts& opts = {}) {
    const Profile& prof = prob.profile;
    const int n = prof.n();
    const double lambda = prob.lambda;
    const double r_start = prof.R() - seed.s0;

    detail::ShootState st;
    st.a = seed.a_end;
    st.p = ipow(prof.h(r_start), n - 1) * seed.da_end;
    const double m0 = std::max(std::abs(st.a), std::abs(st.p));
    if (!(m0 > 0.0)) throw seed_error("integrate_mode: zero seed state");
    st.a /= m0;
    st.p /= m0;
    st.log_scale = std::log(m0);
    st.max_abs_a = std::abs(st.a);

    detail::SampleBuffer samples;
    samples.boundary(r_start, st);

    const auto& segs = prof.segments();
    std::size_t si = &prof.locate(r_start) - segs.data();
    double r = r_start;
    for (;;) {
        const Segment& seg = segs[si];
        if (seg.kind == Segment::Kind::Constant) {
            detail::constant_transfer(st, seg.level, r - seg.left, lambda, n);
        } else {
            detail::rk_segment(st, prof, seg, r, seg.left, lambda, opts, samples);
            st.max_abs_a = std::max(st.max_abs_a, std::abs(st.a));
            detail::renormalize(st);
        }
        r = seg.left;
        samples.boundary(r, st);
        if (si == 0) break;
        --si;
    }

    ModeSolution sol;
    sol.a0 = st.a;
    sol.p0 = st.p;
    if (std::abs(st.a) < 1e-8 * st.max_abs_a)
        throw degenerate_shoot_error("integrate_mode: boundary trace vanished relative to the path maximum");
    sol.sigma = -st.p / (ipow(prof.h(0.0), n - 1) * st.a);
    if (!std::isfinite(sol.sigma))
        throw convergence_error("integrate_mode: non-finite sigma");
    if (lambda > 0.0 && !(sol.sigma > 0.0))
        throw solver_inconsistency_error("integrate_mode: sigma must be positive for lambda > 0");

    sol.diag.steps = st.steps;
    sol.diag.rescalings = st.rescalings;
    sol.diag.seed_order = seed.order;
    sol.diag.seed_s0 = seed.s0;
    sol.diag.est_error = seed.trunc_rel + opts.rtol * static_cast<double>(st.steps);

    // Normalize samples to a(0) = 1; deep-tail values underflow to 0, which
    // is their true magnitude.
    sol.a_samples.reserve(samples.data.size());
    for (auto it = samples.data.rbegin(); it != samples.data.rend(); ++it) {
        const auto& s = *it;
        const double v = (st.a == 0.0) ? 0.0
                          : s[1] * std::exp(s[2] - st.log_scale) / st.a;
        sol.a_samples.push_back({s[0], v});
    }
    return sol;
}

// sigma(h, lambda) with automatic seed refinement: start at
// s0 = min(tail_radius/2, R/20) and halve (raising the series order when its
// remainder estimate is too large) until sigma is stable to rtol.
inline ModeSolution steklov_mode(const Profile& profile, double lambda,
                                 const ShootOpts& opts = {}) {
    if (!(lambda >= 0.0)) throw domain_error("steklov_mode: lambda must be >= 0");
    if (lambda == 0.0) {
        ModeSolution sol;
        sol.sigma = 0.0;
        sol.a0 = 1.0;
        sol.p0 = 0.0;
        sol.a_samples = {{0.0, 1.0}, {profile.R(), 1.0}};
        return sol;
    }

    ModeProblem prob(profile, lambda);
    double s0 = std::min(profile.tail().radius / 2.0, profile.R() / 20.0);
    int M = 12;
    double prev = std::numeric_limits<double>::quiet_NaN();
    for (int iter = 0; iter < 12; ++iter) {
        FrobeniusSeed seed = frobenius_seed(prob, M, s0);
        if (seed.trunc_rel > 1e-12) {
            if (M < 60) M += 12; else s0 *= 0.5;
            continue;
        }
        ModeSolution sol = integrate_mode(prob, seed, opts);
        if (std::isfinite(prev) &&
            std::abs(sol.sigma - prev) <= 4.0 * opts.rtol * std::abs(sol.sigma))
            return sol;
        prev = sol.sigma;
        s0 *= 0.5;
    }
    throw convergence_error("steklov_mode: sigma did not stabilize under seed refinement");
}

} // namespace steklov
