// Numeric formatting for CSV/JSON emission. All floating-point output goes
// through fmt_g12 (12 significant digits, scientific) so that repeated runs
// of the same configuration produce byte-identical files.

#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace steklov {

inline std::string fmt_g12(double x) {
    // %.11e = 12 significant digits; normalize negative zero and keep
    // non-finite values spelled consistently across platforms.
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) x = 0.0;
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.11e", x);
    return std::string(buf);
}

inline std::string fmt_int(long long v) {
    return std::to_string(v);
}

// Integer exponent power; |e| is small everywhere in this library.
inline double ipow(double x, int e) {
    if (e < 0) return 1.0 / ipow(x, -e);
    double r = 1.0, b = x;
    unsigned m = static_cast<unsigned>(e);
    while (m) {
        if (m & 1u) r *= b;
        b *= b;
        m >>= 1u;
    }
    return r;
}

} // namespace steklov
