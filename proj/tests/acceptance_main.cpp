// Acceptance suite: every exit criterion of the project, one pass/fail line
// each. Exits nonzero when any criterion fails. Expected runtime is well
// under ten minutes on a laptop core.

#include "steklov/bounds.hpp"
#include "steklov/fem.hpp"
#include "steklov/rayleigh.hpp"
#include "steklov/shoot.hpp"
#include "steklov/sphere.hpp"
#include "steklov/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

using namespace steklov;

namespace {

int failures = 0;

void report(int id, const std::string& title, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s — %s\n", pass ? "PASS" : "FAIL", id,
                title.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// --- criterion 1: Euclidean oracle ----------------------------------------

void criterion_1() {
    double worst_shoot = 0.0, worst_fem = 0.0;
    for (int n : {3, 4, 5}) {
        for (double R : {1.0, 2.0}) {
            const Profile p = make_euclidean(n, R);
            const Mesh1D mesh = build_mesh(p, 4000, MeshGrading::uniform());
            for (int k = 1; k <= 5; ++k) {
                const double exact = k / R;
                const double lam = sphere_eigenvalue(n, k);
                worst_shoot = std::max(worst_shoot,
                                       std::abs(steklov_mode(p, lam).sigma - exact) / exact);
                worst_fem = std::max(worst_fem,
                                     std::abs(steklov_mode_fem(p, lam, mesh) - exact) / exact);
            }
        }
    }
    report(1, "euclidean oracle sigma = k/R", worst_shoot <= 1e-6 && worst_fem <= 1e-4,
           "max rel err: shooting " + fmt(worst_shoot) + " (tol 1e-6), fem " +
               fmt(worst_fem) + " (tol 1e-4)");
}

// --- criterion 2: strict ratio bound over a profile battery ----------------

std::vector<Profile> ratio_battery() {
    std::vector<Profile> b;
    b.push_back(make_euclidean(3, 1.0));
    b.push_back(make_euclidean(4, 2.0));
    b.push_back(make_euclidean(5, 1.0));
    b.push_back(make_plateau_large(3, 1.0, 1e-2));
    b.push_back(make_plateau_large(4, 1.0, 1e-2));
    b.push_back(make_plateau_large(5, 1.0, 3e-2));
    b.push_back(make_plateau_small(4, 1.0, 1e-2));
    b.push_back(make_plateau_small(5, 1.0, 3e-2));
    b.push_back(make_plateau_h0(1.0, 1e-2, 1.0));
    b.push_back(make_plateau_h0(1.0, 5e-3, 2.0));
    b.push_back(make_capped(3, 1.0, 0.5, 1.0, 2.0, {{0.0, 1.0}}));
    b.push_back(make_piecewise(4, 1.0, {{0.0, 0.8}, {0.3, 1.7}, {0.6, 0.4}}));
    return b;
}

void criterion_2() {
    double min_margin = 1e300;
    std::string where;
    int count = 0;
    for (const Profile& p : ratio_battery()) {
        std::vector<double> sigma(5, 0.0);
        for (int k = 1; k <= 4; ++k)
            sigma[k] = steklov_mode(p, sphere_eigenvalue(p.n(), k)).sigma;
        for (int k = 1; k <= 3; ++k) {
            const double margin = ratio_bound(p.n(), k) - sigma[k + 1] / sigma[k];
            if (margin < min_margin) {
                min_margin = margin;
                where = p.tag() + " k=" + std::to_string(k);
            }
        }
        ++count;
    }
    report(2, "ratio < lambda ratio, strict, battery of " + std::to_string(count),
           min_margin > 0.0, "min margin " + fmt(min_margin) + " at " + where);
}

// --- criteria 3-7: sharpness sweeps ----------------------------------------

void criteria_3_to_7() {
    const auto grid = geometric_grid(1e-1, 1e-3, 5);

    // family A, n = 4, k = 1
    const SweepResult A = sweep_family(SweepFamily::A_large, 4, 1, 1.0, grid, 1.0, {}, 4000);
    {
        bool monotone = true;
        for (std::size_t i = 1; i < A.rows.size(); ++i)
            monotone &= (A.rows[i].ratio > A.rows[i - 1].ratio);
        const double final_ratio = A.rows.back().ratio;
        const TrendFit fit = fit_trend(A.rows, SweepQuantity::Ratio);
        const double target = 8.0 / 3.0;
        const bool pass = monotone && final_ratio >= 0.90 * target &&
                          std::abs(fit.limit_estimate - target) <= 0.05 * target;
        report(3, "large-plateau ratio trend (n=4, k=1)", pass,
               "monotone=" + std::string(monotone ? "yes" : "no") + ", final ratio " +
                   fmt(final_ratio) + " (need >= " + fmt(0.90 * target) +
                   "), limit estimate " + fmt(fit.limit_estimate) + " (target " +
                   fmt(target) + " within 5%), fem endpoint dev " + fmt(A.fem_check_rel));
        if (!pass) {
            // the ratio deficit of this family decays like sqrt(eps); report
            // the measured coefficient and where the same trend does land
            const double eps_f = A.rows.back().eps;
            const double coeff = (1.0 - final_ratio / target) / std::sqrt(eps_f);
            const SweepResult ext = sweep_family(SweepFamily::A_large, 4, 1, 1.0,
                                                 geometric_grid(1e-1, 1e-4, 5), 1.0, {}, 0);
            const TrendFit ext_fit = fit_trend(ext.rows, SweepQuantity::Ratio);
            std::printf("       note: deficit 1 - ratio/target = %s at eps = %s "
                        "(coefficient %s * sqrt(eps)); extending the grid to 1e-4 "
                        "gives final ratio %s and limit estimate %s\n",
                        fmt(1.0 - final_ratio / target).c_str(), fmt(eps_f).c_str(),
                        fmt(coeff).c_str(), fmt(ext.rows.back().ratio).c_str(),
                        fmt(ext_fit.limit_estimate).c_str());
        }
    }

    // family A, n = 3 (the eps^{-1/2} plateau with unit cap)
    {
        const SweepResult A3 = sweep_family(SweepFamily::A_large, 3, 1, 1.0, grid, 1.0, {}, 0);
        const double final_ratio = A3.rows.back().ratio;
        report(4, "three-dimensional ratio trend (k=1)", final_ratio >= 0.90 * 3.0,
               "final ratio " + fmt(final_ratio) + " (need >= 2.7, target 3)");
    }

    // family B, n = 4, k = 1
    const SweepResult B = sweep_family(SweepFamily::B_small, 4, 1, 1.0, grid, 1.0, {}, 4000);
    {
        const SweepRow& last = B.rows.back();
        const double s_over_eps = last.sigma_k / last.eps;
        const double g_over_eps = last.gap / last.eps;
        const bool pass = s_over_eps >= 0.9 * 3.0 && s_over_eps <= 1.1 * 3.0 &&
                          g_over_eps >= 0.5 * 5.0 && g_over_eps <= 2.0 * 5.0 &&
                          last.ratio >= 0.90 * (8.0 / 3.0);
        report(5, "small-plateau limits (n=4, k=1)", pass,
               "sigma_1/eps " + fmt(s_over_eps) + " (3 +/- 10%), gap/eps " +
                   fmt(g_over_eps) + " ([2.5,10]), final ratio " + fmt(last.ratio) +
                   " (need >= " + fmt(0.9 * 8.0 / 3.0) + "), fem endpoint dev " +
                   fmt(B.fem_check_rel));
    }

    // criterion 6: gap dichotomy over two decades
    {
        const double growth = A.rows.back().gap / A.rows.front().gap;
        const double shrink = B.rows.front().gap / B.rows.back().gap;
        report(6, "gap dichotomy over eps in [1e-3, 1e-1]",
               growth >= 10.0 && shrink >= 10.0,
               "large-plateau gap grows x" + fmt(growth) +
                   ", small-plateau gap shrinks x" + fmt(shrink) + " (need >= 10 both)");
    }

    // family C, h0 = 1 (criterion 7) and its k=0 gap sharpness (criterion 8 part)
    const SweepResult C = sweep_family(SweepFamily::C_h0, 3, 1, 1.0, grid, 1.0, {}, 4000);
    {
        bool below = true;
        for (const auto& row : C.rows) below &= (row.sigma_k < 2.0);
        const double final_sigma = C.rows.back().sigma_k;
        const TrendFit slope = fit_trend(A.rows, SweepQuantity::Sigma);
        const bool pass = below && final_sigma >= 0.90 * 2.0 &&
                          std::abs(slope.rate_estimate - (-0.5)) <= 0.2;
        report(7, "sharp 3d eigenvalue bound and eps^{-1/2} rate", pass,
               "sigma_1 < 2 at every eps: " + std::string(below ? "yes" : "no") +
                   ", sigma_1(1e-3) = " + fmt(final_sigma) + " (need >= 1.8), " +
                   "large-plateau sigma rate " + fmt(slope.rate_estimate) +
                   " (-0.5 +/- 0.2), fem endpoint dev " + fmt(C.fem_check_rel));
    }

    // criterion 8: 3d gap bound battery + sharpness of the k=0 gap
    {
        std::vector<Profile> battery;
        battery.push_back(make_euclidean(3, 1.0));
        battery.push_back(make_euclidean(3, 2.0));
        battery.push_back(make_plateau_large(3, 1.0, 1e-2));
        battery.push_back(make_plateau_h0(1.0, 1e-2, 2.0));
        battery.push_back(make_capped(3, 1.0, 0.5, 1.0, 2.0, {{0.0, 1.0}}));
        battery.push_back(make_piecewise(3, 1.0, {{0.0, 0.8}, {0.3, 1.7}}));
        double min_margin = 1e300;
        for (const Profile& p : battery) {
            const double h0 = p.h(0.0);
            std::vector<double> sigma(5, 0.0);
            for (int k = 1; k <= 4; ++k)
                sigma[k] = steklov_mode(p, sphere_eigenvalue(3, k)).sigma;
            for (int k = 0; k <= 2; ++k)
                min_margin = std::min(min_margin, gap_bound_3d(p.R(), h0, k) -
                                                      (sigma[k + 1] - sigma[k]));
        }
        const double sharp = C.rows.back().sigma_k / gap_bound_3d(1.0, 1.0, 0);
        report(8, "3d gap bound battery and its sharpness",
               min_margin > 0.0 && sharp >= 0.85,
               "min gap margin " + fmt(min_margin) + " over " +
                   std::to_string(battery.size()) + " profiles, k=0 gap at " +
                   fmt(100 * sharp) + "% of the bound (need >= 85%)");
    }
}

// --- criterion 9: conditional ratio bound ----------------------------------

void criterion_9() {
    const Profile p = make_capped(3, 1.0, 0.5, 1.0, 2.0, {{0.0, 1.0}});
    const double g = gamma_bound(3, 1, 1.0, 0.5, 1.0, 2.0);
    const double s1 = steklov_mode(p, sphere_eigenvalue(3, 1)).sigma;
    const double s2 = steklov_mode(p, sphere_eigenvalue(3, 2)).sigma;
    const bool ratio_ok = s2 / s1 <= 3.0 - g;
    const bool lim_c2 = gamma_bound(3, 1, 1.0, 0.5, 1.0, 1e6) < 1e-6 * g;
    const bool lim_r1 = gamma_bound(3, 1, 1.0, 1e-6, 1.0, 2.0) < 1e-6;
    report(9, "capped-profile ratio improvement", ratio_ok && lim_c2 && lim_r1,
           "ratio " + fmt(s2 / s1) + " <= 3 - gamma (gamma " + fmt(g) +
               "), vanishing limits in C2 and R1: " +
               ((lim_c2 && lim_r1) ? "yes" : "no"));
}

// --- criterion 10: high-dimensional gap bound -------------------------------

void criterion_10() {
    std::vector<std::pair<Profile, double>> capped; // profile, C2
    capped.emplace_back(make_capped(4, 1.0, 0.5, 1.0, 2.0, {{0.0, 1.0}}), 2.0);
    capped.emplace_back(make_capped(4, 1.0, 0.3, 0.8, 2.0, {{0.0, 1.0}, {0.4, 1.5}}), 2.0);
    capped.emplace_back(make_capped(4, 2.0, 1.0, 0.5, 1.5, {{0.0, 1.0}, {0.8, 0.6}}), 1.5);
    double min_margin = 1e300;
    for (const auto& [p, C2] : capped) {
        const double h0 = p.h(0.0);
        std::vector<double> sigma(4, 0.0);
        for (int k = 1; k <= 2; ++k)
            sigma[k] = steklov_mode(p, sphere_eigenvalue(4, k)).sigma;
        for (int k = 0; k <= 1; ++k)
            min_margin = std::min(min_margin,
                                  gap_bound_highdim(4, k, p.R(), C2, h0) -
                                      (sigma[k + 1] - sigma[k]));
    }
    report(10, "bounded-warp gap bound (n=4)", min_margin >= 0.0,
           "min margin " + fmt(min_margin) + " over 3 certified capped profiles, k in {0,1}");
}

// --- criterion 11: variational and structural properties --------------------

void criterion_11() {
    bool pass = true;
    std::string detail;

    // rayleigh >= sigma for 100 random admissible test functions, 5 profiles
    {
        std::mt19937 rng(42u);
        std::uniform_real_distribution<double> uval(0.1, 2.5);
        const Profile profiles[] = {make_euclidean(3, 1.0),
                                    make_euclidean(5, 2.0),
                                    make_plateau_large(4, 1.0, 1e-2),
                                    make_plateau_h0(1.0, 1e-2, 1.0),
                                    make_piecewise(4, 1.0, {{0.0, 0.8}, {0.3, 1.7}})};
        double worst = 1e300;
        for (const Profile& p : profiles) {
            const double lam = sphere_eigenvalue(p.n(), 1);
            const double sigma = steklov_mode(p, lam).sigma;
            for (int t = 0; t < 20; ++t) {
                std::vector<std::pair<double, double>> knots{{0.0, 1.0}};
                const int interior = 1 + static_cast<int>(rng() % 5);
                for (int i = 1; i <= interior; ++i)
                    knots.emplace_back(p.R() * i / (interior + 1.0), uval(rng));
                knots.emplace_back(p.R(), 0.0);
                const double v = rayleigh(p, lam, piecewise_linear_test(knots), 200);
                worst = std::min(worst, (v - sigma) / sigma);
            }
        }
        pass &= worst >= -1e-9;
        detail += "rayleigh-sigma min rel slack " + fmt(worst);
    }

    // fem >= shooting - tol on a battery
    {
        double worst = 1e300;
        for (const Profile& p : ratio_battery()) {
            const Mesh1D mesh = build_mesh(p, 2000, MeshGrading::junction_refined());
            for (int k = 1; k <= 2; ++k) {
                const double lam = sphere_eigenvalue(p.n(), k);
                const double shoot = steklov_mode(p, lam).sigma;
                const double fem = steklov_mode_fem(p, lam, mesh);
                worst = std::min(worst, (fem - shoot) / shoot);
            }
        }
        pass &= worst >= -1e-6;
        detail += ", fem-shoot min rel slack " + fmt(worst);
    }

    // nested-mesh monotonicity
    {
        bool nested = true;
        for (const Profile& p : {make_euclidean(4, 1.0),
                                 make_plateau_large(4, 1.0, 1e-2),
                                 make_plateau_small(4, 1.0, 2e-2)}) {
            const Mesh1D coarse = build_mesh(p, 500, MeshGrading::junction_refined());
            const Mesh1D fine = bisect_mesh(coarse);
            const double lam = sphere_eigenvalue(p.n(), 1);
            const double sc = steklov_mode_fem(p, lam, coarse);
            const double sf = steklov_mode_fem(p, lam, fine);
            nested &= (sf <= sc + 1e-12 * std::abs(sc));
        }
        pass &= nested;
        detail += nested ? ", nesting ok" : ", nesting BROKEN";
    }

    // strict monotonicity in lambda
    {
        bool mono = true;
        for (const Profile& p : {make_euclidean(3, 1.0), make_plateau_small(4, 1.0, 1e-2)}) {
            double prev = 0.0;
            for (double lam : {0.5, 1.5, 3.0, 6.0, 12.0}) {
                const double s = steklov_mode(p, lam).sigma;
                mono &= (s > prev);
                prev = s;
            }
        }
        pass &= mono;
        detail += mono ? ", lambda-monotone ok" : ", lambda-monotone BROKEN";
    }

    // homothety scaling within 1e-6
    {
        double worst = 0.0;
        for (const Profile& p : {make_euclidean(3, 1.0), make_plateau_large(4, 1.0, 1e-2)}) {
            for (double c : {0.5, 2.0}) {
                const Profile q = scale_homothety(p, c);
                for (double lam : {2.0, 6.0}) {
                    const double s = steklov_mode(p, lam).sigma;
                    const double sc = steklov_mode(q, lam).sigma;
                    worst = std::max(worst, std::abs(sc - s / c) / (s / c));
                }
            }
        }
        pass &= worst <= 1e-6;
        detail += ", homothety dev " + fmt(worst);
    }

    // telescoping gaps
    {
        double worst = 0.0;
        for (const Profile& p : {make_euclidean(4, 1.0), make_plateau_h0(1.0, 1e-2, 1.0)}) {
            std::vector<double> sigma(6, 0.0);
            for (int k = 1; k <= 5; ++k)
                sigma[k] = steklov_mode(p, sphere_eigenvalue(p.n(), k)).sigma;
            for (int k = 0; k <= 4; ++k) {
                double sum = 0.0;
                for (int j = 0; j <= k; ++j) sum += sigma[j + 1] - sigma[j];
                worst = std::max(worst, std::abs(sum - sigma[k + 1]) / sigma[k + 1]);
            }
        }
        pass &= worst <= 1e-6;
        detail += ", telescoping dev " + fmt(worst);
    }

    report(11, "variational and structural properties", pass, detail);
}

// --- criterion 12: two-dimensional formula ----------------------------------

void criterion_12() {
    bool pass = true;
    for (double h0 : {0.5, 1.0, 2.0, 3.7})
        for (int k = 0; k <= 10; ++k)
            pass &= (n2_exact(k, h0) == static_cast<double>(k) / h0);
    report(12, "two-dimensional exact spectrum k/h(0)", pass,
           pass ? "exact for k <= 10 over four h(0) values" : "mismatch");
}

} // namespace

int main() {
    std::printf("acceptance suite: Steklov spectra of revolution-type balls\n");
    criterion_1();
    criterion_2();
    criteria_3_to_7();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    if (failures == 0) {
        std::printf("all criteria passed\n");
        return 0;
    }
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
}
