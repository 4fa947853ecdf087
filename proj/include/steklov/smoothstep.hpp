// C-infinity step function built from the flat exponential f(t) = exp(-1/t).
// psi(t) = f(t) / (f(t) + f(1-t)) rises monotonically from 0 to 1 on [0,1]
// with every one-sided derivative vanishing at both endpoints, and satisfies
// the symmetry psi(t) + psi(1-t) = 1. All transition windows of the profile
// families are shaped with it.

#pragma once

#include "steklov/errors.hpp"

#include <cmath>

namespace steklov {

struct SmoothStep {
    // exp(-1/t) with the flat limit at t <= 0. Underflows cleanly to 0 for
    // t below ~1/708, which is exactly the flat behaviour wanted.
    static double flat(double t) {
        if (t <= 0.0) return 0.0;
        return std::exp(-1.0 / t);
    }

    static double flat_deriv(double t) {
        if (t <= 0.0) return 0.0;
        return std::exp(-1.0 / t) / (t * t);
    }

    static double value(double t) {
        const double f = flat(t);
        const double g = flat(1.0 - t);
        if (f == 0.0 && g == 0.0) return t < 0.5 ? 0.0 : 1.0; // unreachable for t in [0,1]
        return f / (f + g);
    }

    static double deriv(double t) {
        const double f = flat(t);
        const double g = flat(1.0 - t);
        const double s = f + g;
        if (s == 0.0) return 0.0;
        // d/dt [f/(f+g)] with g(t) = f(1-t), g'(t) = -f'(1-t).
        return (flat_deriv(t) * g + f * flat_deriv(1.0 - t)) / (s * s);
    }
};

inline double smoothstep(double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw domain_error("smoothstep: t outside [0,1]");
    return SmoothStep::value(t);
}

inline double smoothstep_deriv(double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw domain_error("smoothstep_deriv: t outside [0,1]");
    return SmoothStep::deriv(t);
}

} // namespace steklov
