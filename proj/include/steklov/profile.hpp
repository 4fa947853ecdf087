// Warp-function profiles h on [0,R] for revolution-type metrics
// dr^2 + h(r)^2 g0 on the ball. A profile is a contiguous list of segments:
// exact constants, the exact line R - r (the cone-point tail), smoothstep
// blends between two envelopes, or (for tests) arbitrary smooth callables.
// Every built-in family ends with an exact linear tail, closes the metric
// smoothly at r = R, and satisfies h(R) = 0, h'(R) = -1.

#pragma once

#include "steklov/errors.hpp"
#include "steklov/format.hpp"
#include "steklov/smoothstep.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace steklov {

enum class Family {
    Euclidean,
    PlateauLarge,
    PlateauSmall,
    PlateauH0,
    Capped,
    PiecewiseMollified,
};

inline const char* family_name(Family f) {
    switch (f) {
        case Family::Euclidean: return "euclidean";
        case Family::PlateauLarge: return "plateau_large";
        case Family::PlateauSmall: return "plateau_small";
        case Family::PlateauH0: return "plateau_h0";
        case Family::Capped: return "capped";
        case Family::PiecewiseMollified: return "piecewise_mollified";
    }
    return "unknown";
}

// One end of a blend window: either a constant level or the scaled line
// c * (R - r). Blending between envelopes with the flat smoothstep keeps
// C-infinity contact with both.
struct Envelope {
    bool is_line = false;
    double level = 0.0;      // constant value when !is_line
    double line_scale = 1.0; // h = line_scale * (R - r) when is_line

    double value(double r, double R) const { return is_line ? line_scale * (R - r) : level; }
    double deriv(double /*r*/, double /*R*/) const { return is_line ? -line_scale : 0.0; }
};

struct Segment {
    enum class Kind { Constant, Line, Blend, Custom };

    double left = 0.0;
    double right = 0.0;
    Kind kind = Kind::Constant;

    double level = 0.0;      // Constant
    double line_scale = 1.0; // Line
    Envelope from, to;       // Blend
    std::function<double(double)> custom_h, custom_dh; // Custom

    bool is_constant() const { return kind == Kind::Constant; }
    double width() const { return right - left; }
};

// Expansion of h around r = R in the variable s = R - r:
// h = c1*s + c3*s^3 + c5*s^5 + ... valid for s in [0, radius]. Built-in
// families all have an exact linear tail (c1 = 1, no higher terms).
struct TailExpansion {
    double radius = 0.0;
    double c1 = 1.0;
    std::vector<double> odd_coeffs; // c3, c5, ... (empty for exact lines)
};

class Profile {
public:
    Profile(int n, double R, Family family, std::vector<Segment> segments,
            TailExpansion tail, std::map<std::string, double> params = {},
            std::string tag = {})
        : n_(n), R_(R), family_(family), segments_(std::move(segments)),
          tail_(std::move(tail)), params_(std::move(params)), tag_(std::move(tag)) {
        if (n_ < 2) throw parameter_error("Profile: dimension n must be >= 2");
        if (!(R_ > 0.0)) throw parameter_error("Profile: R must be positive");
        if (segments_.empty()) throw parameter_error("Profile: no segments");
        check_segments();
        if (tag_.empty()) tag_ = family_name(family_);
    }

    int n() const { return n_; }
    double R() const { return R_; }
    Family family() const { return family_; }
    const std::string& tag() const { return tag_; }
    const std::vector<Segment>& segments() const { return segments_; }
    const std::map<std::string, double>& params() const { return params_; }
    const TailExpansion& tail() const { return tail_; }

    double param(const std::string& key) const {
        auto it = params_.find(key);
        if (it == params_.end()) throw parameter_error("Profile: missing parameter " + key);
        return it->second;
    }

    // Interior segment boundaries, in increasing order (empty for Euclidean).
    std::vector<double> junctions() const {
        std::vector<double> js;
        for (std::size_t i = 1; i < segments_.size(); ++i) js.push_back(segments_[i].left);
        return js;
    }

    double h(double r) const {
        const Segment& s = locate(r);
        return eval_h(s, r);
    }

    double dh(double r) const {
        const Segment& s = locate(r);
        return eval_dh(s, r);
    }

    // Segment containing r; points exactly on a junction resolve to the
    // segment on the right (values agree on both sides by construction).
    const Segment& locate(double r) const {
        if (!(r >= 0.0 && r <= R_)) throw domain_error("Profile: r outside [0,R]");
        std::size_t lo = 0, hi = segments_.size() - 1;
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (r < segments_[mid].right) hi = mid; else lo = mid + 1;
        }
        return segments_[lo];
    }

    double eval_h(const Segment& s, double r) const {
        switch (s.kind) {
            case Segment::Kind::Constant: return s.level;
            case Segment::Kind::Line: return s.line_scale * (R_ - r);
            case Segment::Kind::Blend: {
                const double t = (r - s.left) / s.width();
                const double psi = SmoothStep::value(t);
                return (1.0 - psi) * s.from.value(r, R_) + psi * s.to.value(r, R_);
            }
            case Segment::Kind::Custom: return s.custom_h(r);
        }
        return 0.0;
    }

    double eval_dh(const Segment& s, double r) const {
        switch (s.kind) {
            case Segment::Kind::Constant: return 0.0;
            case Segment::Kind::Line: return -s.line_scale;
            case Segment::Kind::Blend: {
                const double w = s.width();
                const double t = (r - s.left) / w;
                const double psi = SmoothStep::value(t);
                const double dpsi = SmoothStep::deriv(t) / w;
                return dpsi * (s.to.value(r, R_) - s.from.value(r, R_)) +
                       (1.0 - psi) * s.from.deriv(r, R_) + psi * s.to.deriv(r, R_);
            }
            case Segment::Kind::Custom: return s.custom_dh(r);
        }
        return 0.0;
    }

private:
    void check_segments() const {
        const double tol = 1e-12 * R_;
        if (std::abs(segments_.front().left) > tol)
            throw parameter_error("Profile: segments must start at 0");
        if (std::abs(segments_.back().right - R_) > tol)
            throw parameter_error("Profile: segments must end at R");
        for (std::size_t i = 0; i < segments_.size(); ++i) {
            if (!(segments_[i].width() > 0.0))
                throw parameter_error("Profile: empty segment");
            if (i > 0 && std::abs(segments_[i].left - segments_[i - 1].right) > tol)
                throw parameter_error("Profile: segments not contiguous");
        }
    }

    int n_;
    double R_;
    Family family_;
    std::vector<Segment> segments_;
    TailExpansion tail_;
    std::map<std::string, double> params_;
    std::string tag_;
};

namespace detail {

inline Segment const_seg(double l, double r, double level) {
    Segment s;
    s.left = l; s.right = r; s.kind = Segment::Kind::Constant; s.level = level;
    return s;
}

inline Segment line_seg(double l, double r, double scale = 1.0) {
    Segment s;
    s.left = l; s.right = r; s.kind = Segment::Kind::Line; s.line_scale = scale;
    return s;
}

inline Segment blend_seg(double l, double r, Envelope from, Envelope to) {
    Segment s;
    s.left = l; s.right = r; s.kind = Segment::Kind::Blend; s.from = from; s.to = to;
    return s;
}

inline Envelope const_env(double level) { return Envelope{false, level, 1.0}; }
inline Envelope line_env(double scale = 1.0) { return Envelope{true, 0.0, scale}; }

// Families reject eps below this; plateau^(n-1) and the associated integrals
// must stay well inside double range.
constexpr double kEpsFloor = 1e-6;

inline void check_eps(double eps, double hi, const char* who) {
    if (!(eps > 0.0) || !(eps < hi))
        throw parameter_error(std::string(who) + ": eps outside admissible range");
    if (eps < kEpsFloor)
        throw parameter_error(std::string(who) + ": eps below 1e-6 floor");
}

} // namespace detail

// h(r) = R - r: the Euclidean ball of radius R.
inline Profile make_euclidean(int n, double R) {
    if (n < 2) throw parameter_error("make_euclidean: n must be >= 2");
    if (!(R > 0.0)) throw parameter_error("make_euclidean: R must be positive");
    std::vector<Segment> segs{detail::line_seg(0.0, R)};
    TailExpansion tail{R, 1.0, {}};
    return Profile(n, R, Family::Euclidean, std::move(segs), std::move(tail));
}

// Large-plateau family: unit cap on [0,eps], plateau P = eps^(-1/(2(n-3)))
// (P = eps^(-1/2) for n = 3) on [2eps, R-2eps], linear tail on [R-eps, R],
// with smoothstep-blended monotone transitions in between.
inline Profile make_plateau_large(int n, double R, double eps) {
    if (n == 2) throw parameter_error("make_plateau_large: n = 2 unsupported (plateau exponent undefined)");
    if (n < 3) throw parameter_error("make_plateau_large: n must be >= 3");
    if (!(R > 0.0)) throw parameter_error("make_plateau_large: R must be positive");
    detail::check_eps(eps, R / 8.0, "make_plateau_large");
    if (!(eps < 1.0)) throw parameter_error("make_plateau_large: eps must be < 1");

    const double P = (n == 3) ? 1.0 / std::sqrt(eps)
                              : std::pow(eps, -1.0 / (2.0 * (n - 3)));
    std::vector<Segment> segs;
    segs.push_back(detail::const_seg(0.0, eps, 1.0));
    segs.push_back(detail::blend_seg(eps, 2 * eps, detail::const_env(1.0), detail::const_env(P)));
    segs.push_back(detail::const_seg(2 * eps, R - 2 * eps, P));
    segs.push_back(detail::blend_seg(R - 2 * eps, R - eps, detail::const_env(P), detail::line_env()));
    segs.push_back(detail::line_seg(R - eps, R));
    TailExpansion tail{eps, 1.0, {}};
    return Profile(n, R, Family::PlateauLarge, std::move(segs), std::move(tail),
                   {{"eps", eps}});
}

// Small-plateau family (n >= 4): unit cap on [0,eps], plateau eps^2 on
// [eps+eps^2, R-eps^2-w], linear tail on [R-eps^2, R]. The plateau-to-line
// corner is closed by a blend of width w = eps^2/10 that stays within
// [eps^2, eps^2 + w] of the envelope.
inline Profile make_plateau_small(int n, double R, double eps) {
    if (n < 4) throw parameter_error("make_plateau_small: n must be >= 4");
    if (!(R > 0.0)) throw parameter_error("make_plateau_small: R must be positive");
    detail::check_eps(eps, R / 4.0, "make_plateau_small");
    if (!(eps < 1.0)) throw parameter_error("make_plateau_small: eps must be < 1");

    const double e2 = eps * eps;
    const double w = e2 / 10.0;
    std::vector<Segment> segs;
    segs.push_back(detail::const_seg(0.0, eps, 1.0));
    segs.push_back(detail::blend_seg(eps, eps + e2, detail::const_env(1.0), detail::const_env(e2)));
    segs.push_back(detail::const_seg(eps + e2, R - e2 - w, e2));
    segs.push_back(detail::blend_seg(R - e2 - w, R - e2, detail::const_env(e2), detail::line_env()));
    segs.push_back(detail::line_seg(R - e2, R));
    TailExpansion tail{e2, 1.0, {}};
    return Profile(n, R, Family::PlateauSmall, std::move(segs), std::move(tail),
                   {{"eps", eps}});
}

// h0-plateau family (n = 3): cap h0 on [0,eps], plateau h0 * eps^(-1/2) on
// [2eps, R-2eps], linear tail on [R-eps, R].
inline Profile make_plateau_h0(double R, double eps, double h0) {
    if (!(R > 0.0)) throw parameter_error("make_plateau_h0: R must be positive");
    if (!(h0 > 0.0)) throw parameter_error("make_plateau_h0: h0 must be positive");
    detail::check_eps(eps, R / 8.0, "make_plateau_h0");
    if (!(eps < 1.0)) throw parameter_error("make_plateau_h0: eps must be < 1");

    const double P = h0 / std::sqrt(eps);
    std::vector<Segment> segs;
    segs.push_back(detail::const_seg(0.0, eps, h0));
    segs.push_back(detail::blend_seg(eps, 2 * eps, detail::const_env(h0), detail::const_env(P)));
    segs.push_back(detail::const_seg(2 * eps, R - 2 * eps, P));
    segs.push_back(detail::blend_seg(R - 2 * eps, R - eps, detail::const_env(P), detail::line_env()));
    segs.push_back(detail::line_seg(R - eps, R));
    TailExpansion tail{eps, 1.0, {}};
    return Profile(3, R, Family::PlateauH0, std::move(segs), std::move(tail),
                   {{"eps", eps}, {"h0", h0}});
}

namespace detail {

// Shared builder for knot-level profiles. Knots (r_i, v_i) define constant
// levels v_i on [r_i, r_{i+1}); each level change is blended over a window
// of a quarter of the smaller adjacent span, and the last level joins the
// exact line R - r over [R-2d, R-d] with d = min(gap/4, v_last, d_cap).
inline std::vector<Segment> knot_segments(double R,
                                          const std::vector<std::pair<double, double>>& knots,
                                          double d_cap) {
    if (knots.empty()) throw parameter_error("knot profile: empty knot list");
    for (std::size_t i = 0; i < knots.size(); ++i) {
        if (!(knots[i].second > 0.0))
            throw parameter_error("knot profile: knot values must be positive");
        if (i > 0 && !(knots[i].first > knots[i - 1].first))
            throw parameter_error("knot profile: knot positions must be strictly increasing");
    }
    if (std::abs(knots.front().first) > 1e-12 * R)
        throw parameter_error("knot profile: first knot must sit at r = 0");
    if (!(knots.back().first < R))
        throw parameter_error("knot profile: knots must lie strictly inside [0,R)");

    const double x_last = knots.back().first;
    const double v_last = knots.back().second;
    const double gap = R - x_last;
    double d = std::min({gap / 4.0, v_last, d_cap});
    if (!(d > 0.0)) throw parameter_error("knot profile: no room for the linear tail");

    // Window half-widths for interior level changes.
    const std::size_t m = knots.size();
    std::vector<double> half(m, 0.0);
    for (std::size_t i = 1; i < m; ++i) {
        const double prev_span = knots[i].first - knots[i - 1].first;
        const double next_edge = (i + 1 < m) ? knots[i + 1].first : (R - 2.0 * d);
        const double next_span = next_edge - knots[i].first;
        half[i] = 0.25 * std::min(prev_span, next_span);
        if (!(half[i] > 0.0))
            throw parameter_error("knot profile: knots too close to the tail window");
    }

    std::vector<Segment> segs;
    double cursor = 0.0;
    for (std::size_t i = 1; i < m; ++i) {
        const double lo = knots[i].first - half[i];
        const double hi = knots[i].first + half[i];
        if (lo > cursor)
            segs.push_back(const_seg(cursor, lo, knots[i - 1].second));
        segs.push_back(blend_seg(lo, hi, const_env(knots[i - 1].second), const_env(knots[i].second)));
        cursor = hi;
    }
    const double t0 = R - 2.0 * d;
    const double t1 = R - d;
    if (t0 > cursor)
        segs.push_back(const_seg(cursor, t0, v_last));
    segs.push_back(blend_seg(t0, t1, const_env(v_last), line_env()));
    segs.push_back(line_seg(t1, R));
    return segs;
}

} // namespace detail

// Custom profile from a knot list, mollified and closed with a linear tail.
inline Profile make_piecewise(int n, double R,
                              const std::vector<std::pair<double, double>>& knots) {
    if (n < 2) throw parameter_error("make_piecewise: n must be >= 2");
    if (!(R > 0.0)) throw parameter_error("make_piecewise: R must be positive");
    auto segs = detail::knot_segments(R, knots, R);
    const double tail_w = R - segs.back().left;
    TailExpansion tail{tail_w, 1.0, {}};
    return Profile(n, R, Family::PiecewiseMollified, std::move(segs), std::move(tail));
}

// Knot profile certified against the caps h <= C2 on [0,R], h >= C1 on
// [0,R1]. Knot values must respect the caps up front; the built profile is
// then dense-sampled to certify both bounds, so a violation introduced by a
// blend window is rejected too.
inline Profile make_capped(int n, double R, double R1, double C1, double C2,
                           const std::vector<std::pair<double, double>>& knots) {
    if (n < 3) throw parameter_error("make_capped: n must be >= 3");
    if (!(R > 0.0)) throw parameter_error("make_capped: R must be positive");
    if (!(R1 > 0.0 && R1 < R)) throw parameter_error("make_capped: need 0 < R1 < R");
    if (!(C1 > 0.0 && C1 < C2)) throw parameter_error("make_capped: need 0 < C1 < C2");
    for (const auto& [r, v] : knots) {
        if (v > C2) throw parameter_error("make_capped: knot value above C2");
        if (r <= R1 && v < C1) throw parameter_error("make_capped: knot value below C1 on [0,R1]");
    }
    auto segs = detail::knot_segments(R, knots, C2 / 2.0);
    const double tail_w = R - segs.back().left;
    TailExpansion tail{tail_w, 1.0, {}};
    Profile p(n, R, Family::Capped, std::move(segs), std::move(tail),
              {{"R1", R1}, {"C1", C1}, {"C2", C2}});

    const int samples = 4096;
    const double slack = 1e-9 * C2;
    for (int i = 0; i <= samples; ++i) {
        const double r = R * i / samples;
        const double v = p.h(r);
        if (v > C2 + slack) throw parameter_error("make_capped: built profile exceeds C2");
        if (r <= R1 && v < C1 - slack)
            throw parameter_error("make_capped: built profile dips below C1 on [0,R1]");
    }
    return p;
}

// Homothety (R,h) -> (cR, c*h(./c)); Steklov values scale as 1/c.
inline Profile scale_homothety(const Profile& p, double c) {
    if (!(c > 0.0)) throw parameter_error("scale_homothety: c must be positive");
    std::vector<Segment> segs;
    for (Segment s : p.segments()) {
        s.left *= c;
        s.right *= c;
        switch (s.kind) {
            case Segment::Kind::Constant: s.level *= c; break;
            case Segment::Kind::Line: break; // c*(R - r/c) = cR - r
            case Segment::Kind::Blend:
                if (!s.from.is_line) s.from.level *= c;
                if (!s.to.is_line) s.to.level *= c;
                break;
            case Segment::Kind::Custom: {
                auto h = s.custom_h;
                auto dh = s.custom_dh;
                s.custom_h = [h, c](double r) { return c * h(r / c); };
                s.custom_dh = [dh, c](double r) { return dh(r / c); };
                break;
            }
        }
        segs.push_back(std::move(s));
    }
    TailExpansion tail = p.tail();
    tail.radius *= c;
    for (std::size_t j = 0; j < tail.odd_coeffs.size(); ++j)
        tail.odd_coeffs[j] /= ipow(c, 2 * static_cast<int>(j) + 2);
    return Profile(p.n(), c * p.R(), p.family(), std::move(segs), std::move(tail),
                   p.params(), p.tag() + "_homothety");
}

// Warp scaling h -> c*h with the same R. Violates h'(R) = -1, so the result
// fails validation; it exists for solver-level scaling checks only.
inline Profile scale_warp(const Profile& p, double c) {
    if (!(c > 0.0)) throw parameter_error("scale_warp: c must be positive");
    std::vector<Segment> segs;
    for (Segment s : p.segments()) {
        switch (s.kind) {
            case Segment::Kind::Constant: s.level *= c; break;
            case Segment::Kind::Line: s.line_scale *= c; break;
            case Segment::Kind::Blend:
                if (s.from.is_line) s.from.line_scale *= c; else s.from.level *= c;
                if (s.to.is_line) s.to.line_scale *= c; else s.to.level *= c;
                break;
            case Segment::Kind::Custom: {
                auto h = s.custom_h;
                auto dh = s.custom_dh;
                s.custom_h = [h, c](double r) { return c * h(r); };
                s.custom_dh = [dh, c](double r) { return c * dh(r); };
                break;
            }
        }
        segs.push_back(std::move(s));
    }
    TailExpansion tail = p.tail();
    tail.c1 *= c;
    for (double& ck : tail.odd_coeffs) ck *= c;
    return Profile(p.n(), p.R(), p.family(), std::move(segs), std::move(tail),
                   p.params(), p.tag() + "_warp_scaled");
}

// ---------------------------------------------------------------------------
// Validation

struct ValidationCheck {
    std::string name;
    bool pass = false;
    double value = 0.0;     // measured quantity (worst case over samples)
    double threshold = 0.0; // acceptance threshold it was compared against
};

struct ValidationReport {
    bool pass = false;
    std::vector<ValidationCheck> checks;

    const ValidationCheck* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

// Checks h(R) = 0, h'(R) = -1, positivity away from the cone point, and
// smoothness indicators at every junction (value/slope continuity plus a
// finite-difference probe of the analytic derivative). Positivity is sampled
// on [0, R - delta] with delta = R*1e-6 since h(R) = 0 holds by construction.
inline ValidationReport validate_profile(const Profile& p, int samples, double tol) {
    if (samples < 16) throw parameter_error("validate_profile: samples must be >= 16");
    if (!(tol > 0.0)) throw parameter_error("validate_profile: tol must be positive");

    ValidationReport rep;
    const double R = p.R();
    auto add = [&rep](const std::string& name, double value, double threshold) {
        rep.checks.push_back({name, std::abs(value) <= threshold, value, threshold});
    };

    try {
        add("h(R)=0", p.h(R), tol);
        add("h'(R)=-1", p.dh(R) + 1.0, tol);

        // Positivity over the sample grid.
        const double delta_val = R * 1e-6;
        double min_h = std::numeric_limits<double>::infinity();
        for (int i = 0; i <= samples; ++i) {
            const double r = (R - delta_val) * i / samples;
            min_h = std::min(min_h, p.h(r));
        }
        rep.checks.push_back({"h>0 on [0,R)", min_h > 0.0, min_h, 0.0});

        // Junction continuity of h and h'.
        double worst_jump = 0.0, worst_slope_jump = 0.0;
        const auto& segs = p.segments();
        for (std::size_t i = 1; i < segs.size(); ++i) {
            const double x = segs[i].left;
            const double jump = p.eval_h(segs[i], x) - p.eval_h(segs[i - 1], x);
            const double slope_jump = p.eval_dh(segs[i], x) - p.eval_dh(segs[i - 1], x);
            const double scale = 1.0 + std::abs(p.eval_h(segs[i], x));
            worst_jump = std::max(worst_jump, std::abs(jump) / scale);
            worst_slope_jump = std::max(worst_slope_jump, std::abs(slope_jump) /
                                        (1.0 + std::abs(p.eval_dh(segs[i], x))));
        }
        add("junction continuity", worst_jump, tol);
        add("junction slope continuity", worst_slope_jump, tol);

        // Finite-difference probe of h' at sample points, with the step
        // scaled to the local segment width so steep windows are probed at
        // their own scale.
        double worst_fd = 0.0;
        const int fd_points = std::min(samples, 512);
        for (int i = 1; i < fd_points; ++i) {
            const double r = R * i / fd_points;
            const Segment& s = p.locate(r);
            const double step = std::max(1e-7 * s.width(), 1e-290);
            if (r - step < s.left || r + step > s.right) continue;
            const double fd = (p.h(r + step) - p.h(r - step)) / (2.0 * step);
            const double an = p.dh(r);
            const double scale = 1.0 + std::abs(an) + std::abs(p.h(r)) / s.width();
            worst_fd = std::max(worst_fd, std::abs(fd - an) / scale);
        }
        add("derivative consistency", worst_fd, std::max(tol, 1e-7));
    } catch (const error&) {
        rep.checks.push_back({"evaluation", false, 0.0, 0.0});
    }

    rep.pass = std::all_of(rep.checks.begin(), rep.checks.end(),
                           [](const ValidationCheck& c) { return c.pass; });
    return rep;
}

} // namespace steklov
