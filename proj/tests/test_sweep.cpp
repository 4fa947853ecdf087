#include <doctest.h>

#include "steklov/sweep.hpp"

#include <cmath>

using namespace steklov;

TEST_CASE("geometric grid construction") {
    const auto grid = geometric_grid(1e-1, 1e-3, 5);
    REQUIRE(grid.size() == 11);
    CHECK(grid.front() == doctest::Approx(1e-1).epsilon(1e-12));
    CHECK(grid.back() == doctest::Approx(1e-3).epsilon(1e-12));
    for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] < grid[i - 1]);
    CHECK_THROWS_AS(geometric_grid(1e-3, 1e-1, 5), parameter_error);
}

TEST_CASE("family A ratios rise toward the eigenvalue ratio") {
    const auto res = sweep_family(SweepFamily::A_large, 4, 1, 1.0,
                                  geometric_grid(1e-1, 1e-2, 3), 1.0, {}, 0);
    REQUIRE(res.rows.size() == 4);
    for (const auto& row : res.rows) {
        CHECK(row.ok);
        CHECK(row.target_ratio == doctest::Approx(8.0 / 3.0));
        CHECK(std::isinf(row.target_gap));
        CHECK(row.ratio < row.target_ratio);
    }
    const TrendFit fit = fit_trend(res.rows, SweepQuantity::Ratio);
    CHECK(fit.monotone);
    CHECK(fit.direction == +1);
}

TEST_CASE("family B predictions and vanishing gap") {
    const auto res = sweep_family(SweepFamily::B_small, 4, 1, 1.0,
                                  geometric_grid(1e-1, 1e-3, 2), 1.0, {}, 0);
    REQUIRE(res.rows.size() == 5);
    const SweepRow& last = res.rows.back();
    CHECK(last.pred_sigma == doctest::Approx(3e-3));
    CHECK(last.pred_gap == doctest::Approx(5e-3));
    CHECK(std::abs(last.sigma_k - last.pred_sigma) / last.pred_sigma < 0.1);
    CHECK(last.gap < res.rows.front().gap / 10.0);
    const TrendFit fit = fit_trend(res.rows, SweepQuantity::Gap);
    CHECK(fit.rate_defined);
    CHECK(std::abs(fit.rate_estimate - 1.0) <= 0.3);
}

TEST_CASE("family A sigma diverges like eps^{-1/2}") {
    const auto res = sweep_family(SweepFamily::A_large, 4, 1, 1.0,
                                  geometric_grid(1e-1, 1e-3, 5), 1.0, {}, 0);
    const TrendFit fit = fit_trend(res.rows, SweepQuantity::Sigma);
    CHECK(fit.rate_defined);
    CHECK(std::abs(fit.rate_estimate - (-0.5)) <= 0.2);
}

TEST_CASE("family C stays under the sharp bound at every eps") {
    const auto res = sweep_family(SweepFamily::C_h0, 3, 1, 1.0,
                                  geometric_grid(1e-1, 1e-3, 2), 1.0, {}, 0);
    for (const auto& row : res.rows) {
        CHECK(row.ok);
        CHECK(row.sigma_k < 2.0);
        CHECK(row.pred_sigma == doctest::Approx(2.0));
    }
    CHECK(res.rows.back().sigma_k > 0.9 * 2.0);
}

TEST_CASE("fem cross-check at the grid endpoints") {
    const auto res = sweep_family(SweepFamily::B_small, 4, 1, 1.0,
                                  geometric_grid(1e-1, 1e-2, 1), 1.0, {}, 4000);
    CHECK(res.fem_check_rel > 0.0);
    CHECK(res.fem_check_rel <= 1e-3);
}

TEST_CASE("sweep parameter errors and clipping") {
    CHECK_THROWS_AS(sweep_family(SweepFamily::B_small, 3, 1, 1.0,
                                 geometric_grid(1e-1, 1e-2, 2)),
                    parameter_error);
    CHECK_THROWS_AS(sweep_family(SweepFamily::C_h0, 4, 1, 1.0,
                                 geometric_grid(1e-1, 1e-2, 2)),
                    parameter_error);
    CHECK_THROWS_AS(sweep_family(SweepFamily::A_large, 4, 0, 1.0,
                                 geometric_grid(1e-1, 1e-2, 2)),
                    parameter_error);
    std::vector<double> increasing{1e-3, 1e-2};
    CHECK_THROWS_AS(sweep_family(SweepFamily::A_large, 4, 1, 1.0, increasing),
                    parameter_error);

    const auto res = sweep_family(SweepFamily::A_large, 4, 1, 1.0,
                                  geometric_grid(1e-3, 1e-5, 1), 1.0, {}, 0);
    CHECK(res.rows.size() == 2); // 1e-5 clipped at the conditioning floor
    CHECK_FALSE(res.notes.empty());
}

TEST_CASE("fit_trend degeneracies") {
    std::vector<SweepRow> rows(2);
    CHECK_THROWS_AS(fit_trend(rows, SweepQuantity::Ratio), insufficient_data_error);

    std::vector<SweepRow> flat(4);
    double eps = 1e-1;
    for (auto& row : flat) {
        row.ok = true;
        row.eps = eps;
        row.ratio = 1.5;
        eps /= 2.0;
    }
    const TrendFit fit = fit_trend(flat, SweepQuantity::Ratio);
    CHECK(fit.limit_estimate == 1.5);
    CHECK_FALSE(fit.rate_defined);
    CHECK_FALSE(fit.monotone); // not strictly monotone
}

TEST_CASE("sweep rows also satisfy the per-profile bound verdicts") {
    for (double eps : {1e-1, 1e-2}) {
        const Profile p = make_plateau_small(4, 1.0, eps);
        const BoundReport rep = verify_profile(p, 2, {}, std::nullopt, 0);
        CAPTURE(eps);
        CHECK(rep.all_pass);
    }
}

TEST_CASE("sweep CSV and SVG emission") {
    const auto res = sweep_family(SweepFamily::A_large, 4, 1, 1.0,
                                  geometric_grid(1e-1, 1e-2, 1), 1.0, {}, 0);
    const std::string csv = sweep_to_csv(res);
    CHECK(csv.rfind("eps,sigma_k,sigma_k1,ratio,gap,target_ratio,pred_sigma,pred_gap,status\n",
                    0) == 0);
    CHECK(csv.find(",ok\n") != std::string::npos);
    const std::string svg = sweep_to_svg(res);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("polyline") != std::string::npos);
    CHECK(svg.find("A_large") != std::string::npos);
}
