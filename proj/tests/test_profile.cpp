#include <doctest.h>

#include "steklov/profile.hpp"

#include <cmath>
#include <cstring>
#include <vector>

using namespace steklov;

TEST_CASE("euclidean profile is the exact line") {
    const Profile p3 = make_euclidean(3, 1.0);
    CHECK(p3.h(0.0) == 1.0);
    CHECK(p3.h(1.0) == 0.0);
    const Profile p4 = make_euclidean(4, 2.0);
    CHECK(p4.dh(1.5) == -1.0);
}

TEST_CASE("plateau_large hits the prescribed plateau and tail") {
    const Profile p4 = make_plateau_large(4, 1.0, 1e-2);
    CHECK(p4.h(0.5) == doctest::Approx(10.0).epsilon(1e-12)); // eps^{-1/2}, n-3 = 1
    CHECK(p4.h(0.999) == doctest::Approx(0.001).epsilon(1e-12));
    CHECK(p4.h(0.005) == 1.0);

    const Profile p3 = make_plateau_large(3, 1.0, 1e-2); // n = 3 plateau eps^{-1/2}
    CHECK(p3.h(0.5) == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(make_plateau_h0(1.0, 1e-2, 1.0).h(0.5) == doctest::Approx(10.0).epsilon(1e-12));

    // n = 5 exponent: eps^{-1/(2(n-3))} = eps^{-1/4}
    const Profile p5 = make_plateau_large(5, 1.0, 1e-2);
    CHECK(p5.h(0.5) == doctest::Approx(std::pow(1e-2, -0.25)).epsilon(1e-12));
}

TEST_CASE("plateau_small hits the prescribed plateau and cap") {
    const Profile p = make_plateau_small(4, 1.0, 1e-2);
    CHECK(p.h(0.5) == doctest::Approx(1e-4).epsilon(1e-12));
    CHECK(p.h(0.005) == 1.0);
    CHECK(p.h(1.0) == 0.0);
}

TEST_CASE("plateau_h0 cap and tail values") {
    const Profile p = make_plateau_h0(1.0, 1e-2, 2.0);
    CHECK(p.h(0.5) == doctest::Approx(20.0).epsilon(1e-12));
    CHECK(p.h(0.0) == 2.0);
    CHECK(p.h(1.0) == 0.0);
}

TEST_CASE("family parameter errors") {
    CHECK_THROWS_AS(make_plateau_large(2, 1.0, 1e-2), parameter_error);
    CHECK_THROWS_AS(make_plateau_large(4, 1.0, 0.2), parameter_error);  // eps >= R/8
    CHECK_THROWS_AS(make_plateau_large(4, 16.0, 2.0), parameter_error); // eps >= 1
    CHECK_THROWS_AS(make_plateau_large(4, 1.0, 1e-7), parameter_error); // eps floor
    CHECK_THROWS_AS(make_plateau_small(3, 1.0, 1e-2), parameter_error); // n >= 4
    CHECK_THROWS_AS(make_plateau_small(4, 1.0, 0.3), parameter_error);  // eps >= R/4
    CHECK_THROWS_AS(make_plateau_h0(1.0, 1e-2, -1.0), parameter_error);
    CHECK_THROWS_AS(make_euclidean(1, 1.0), parameter_error);
}

TEST_CASE("capped profile from constant-level knots") {
    const Profile p = make_capped(3, 1.0, 0.5, 1.0, 2.0, {{0.0, 1.0}});
    CHECK(p.h(0.25) == 1.0);
    CHECK(p.h(1.0) == 0.0);
    double hmax = 0.0;
    for (int i = 0; i <= 2000; ++i) hmax = std::max(hmax, p.h(i / 2000.0));
    CHECK(hmax <= 2.0);
    for (int i = 0; i <= 500; ++i) CHECK(p.h(0.5 * i / 500) >= 1.0 - 1e-12);

    CHECK_THROWS_AS(make_capped(3, 1.0, 0.5, 1.0, 2.0, {{0.0, 3.0}}), parameter_error);
    CHECK_THROWS_AS(make_capped(3, 1.0, 0.5, 1.0, 2.0, {{0.0, 0.5}}), parameter_error);
    // knot after R1 dipping below C1 is fine; knot above C2 anywhere is not
    CHECK_NOTHROW(make_capped(3, 1.0, 0.25, 1.0, 2.0, {{0.0, 1.0}, {0.5, 0.5}}));
}

TEST_CASE("piecewise profile knot validation") {
    CHECK_NOTHROW(make_piecewise(3, 1.0, {{0.0, 0.8}, {0.3, 1.7}}));
    CHECK_THROWS_AS(make_piecewise(3, 1.0, {{0.0, 1.0}, {1.0, 0.5}}), parameter_error);
    CHECK_THROWS_AS(make_piecewise(3, 1.0, {{0.0, -1.0}}), parameter_error);
    CHECK_THROWS_AS(make_piecewise(3, 1.0, {{0.1, 1.0}}), parameter_error);
}

TEST_CASE("validate_profile passes every built-in family at 1e-8") {
    std::vector<Profile> battery;
    battery.push_back(make_euclidean(3, 1.0));
    battery.push_back(make_euclidean(5, 2.0));
    battery.push_back(make_plateau_large(4, 1.0, 1e-2));
    battery.push_back(make_plateau_large(3, 1.0, 1e-3));
    battery.push_back(make_plateau_small(4, 1.0, 1e-2));
    battery.push_back(make_plateau_small(4, 2.0, 0.1));
    battery.push_back(make_plateau_large(4, 2.0, 0.2));
    battery.push_back(make_plateau_h0(1.0, 1e-2, 2.0));
    battery.push_back(make_plateau_h0(2.0, 5e-2, 0.5));
    battery.push_back(make_capped(3, 1.0, 0.5, 1.0, 2.0, {{0.0, 1.0}}));
    battery.push_back(make_piecewise(4, 1.0, {{0.0, 0.8}, {0.3, 1.7}, {0.6, 0.4}}));
    for (const Profile& p : battery) {
        const ValidationReport rep = validate_profile(p, 10000, 1e-8);
        CAPTURE(p.tag());
        for (const auto& c : rep.checks) {
            CAPTURE(c.name);
            CAPTURE(c.value);
            CHECK(c.pass);
        }
        CHECK(rep.pass);
    }
}

TEST_CASE("validate_profile flags an injected boundary violation") {
    // Hand-built profile with h(R) = 0.1: constant up to a short line that
    // stops above zero.
    std::vector<Segment> segs;
    segs.push_back(detail::const_seg(0.0, 0.9, 1.0));
    Segment bad = detail::const_seg(0.9, 1.0, 0.1);
    segs.push_back(bad);
    const Profile p(3, 1.0, Family::PiecewiseMollified, std::move(segs),
                    TailExpansion{0.1, 1.0, {}}, {}, "injected_violation");
    const ValidationReport rep = validate_profile(p, 1000, 1e-10);
    CHECK_FALSE(rep.pass);
    REQUIRE(rep.find("h(R)=0") != nullptr);
    CHECK_FALSE(rep.find("h(R)=0")->pass);
}

TEST_CASE("validate_profile rejects bad arguments") {
    const Profile p = make_euclidean(3, 1.0);
    CHECK_THROWS_AS(validate_profile(p, 8, 1e-8), parameter_error);
    CHECK_THROWS_AS(validate_profile(p, 100, 0.0), parameter_error);
}

TEST_CASE("transitions are monotone across their declared windows") {
    struct Window { double lo, hi; int sign; };
    auto check_windows = [](const Profile& p, const std::vector<Window>& ws) {
        for (const auto& w : ws) {
            double prev = p.h(w.lo);
            for (int i = 1; i <= 1000; ++i) {
                const double r = w.lo + (w.hi - w.lo) * i / 1000;
                const double v = p.h(r);
                if (w.sign > 0) CHECK(v >= prev - 1e-15);
                else CHECK(v <= prev + 1e-15);
                prev = v;
            }
        }
    };
    const double e = 1e-2, e2 = e * e;
    check_windows(make_plateau_large(4, 1.0, e),
                  {{e, 2 * e, +1}, {1.0 - 2 * e, 1.0 - e, -1}});
    check_windows(make_plateau_small(4, 1.0, e), {{e, e + e2, -1}});
    check_windows(make_plateau_h0(1.0, e, 2.0),
                  {{e, 2 * e, +1}, {1.0 - 2 * e, 1.0 - e, -1}});
}

TEST_CASE("profile evaluation is deterministic") {
    const Profile p = make_plateau_small(4, 1.0, 1e-2);
    for (int i = 0; i <= 257; ++i) {
        const double r = i / 257.0;
        const double v1 = p.h(r), v2 = p.h(r);
        CHECK(std::memcmp(&v1, &v2, sizeof v1) == 0);
        const double d1 = p.dh(r), d2 = p.dh(r);
        CHECK(std::memcmp(&d1, &d2, sizeof d1) == 0);
    }
}

TEST_CASE("homothety keeps the profile shape") {
    const Profile p = make_plateau_large(4, 1.0, 1e-2);
    const Profile q = scale_homothety(p, 2.0);
    CHECK(q.R() == 2.0);
    for (double r : {0.0, 0.3, 0.77, 1.0})
        CHECK(q.h(2.0 * r) == doctest::Approx(2.0 * p.h(r)).epsilon(1e-13));
    CHECK(validate_profile(q, 4000, 1e-8).pass);
}

TEST_CASE("warp scaling fails validation but keeps structure") {
    const Profile p = make_euclidean(3, 1.0);
    const Profile q = scale_warp(p, 2.0);
    CHECK(q.h(0.25) == doctest::Approx(1.5).epsilon(1e-14));
    CHECK_FALSE(validate_profile(q, 1000, 1e-8).pass); // h'(R) = -2
}
