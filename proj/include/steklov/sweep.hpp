// Parameter sweeps over the sharpness families: per epsilon the profile is
// built, the two consecutive Steklov values are computed by shooting (with a
// FEM cross-check at the grid endpoints), and the row is tabulated against
// its predicted limit. fit_trend extracts monotonicity, an extrapolated
// limit, and a log-log rate from the final rows.

#pragma once

#include "steklov/bounds.hpp"
#include "steklov/errors.hpp"
#include "steklov/fem.hpp"
#include "steklov/format.hpp"
#include "steklov/parallel.hpp"
#include "steklov/profile.hpp"
#include "steklov/shoot.hpp"
#include "steklov/sphere.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace steklov {

enum class SweepFamily { A_large, B_small, C_h0 };

inline const char* sweep_family_name(SweepFamily f) {
    switch (f) {
        case SweepFamily::A_large: return "A_large";
        case SweepFamily::B_small: return "B_small";
        case SweepFamily::C_h0: return "C_h0";
    }
    return "unknown";
}

struct SweepRow {
    double eps = 0.0;
    double sigma_k = 0.0;
    double sigma_k1 = 0.0;
    double ratio = 0.0;
    double gap = 0.0;
    double target_ratio = 0.0;
    double target_gap = 0.0; // +inf marks divergence (family A, n >= 4)
    double pred_sigma = 0.0;
    double pred_gap = 0.0;
    bool ok = false;
    std::string status; // "ok" or failure reason
};

struct SweepResult {
    SweepFamily family = SweepFamily::A_large;
    int n = 0;
    int k = 0;
    double R = 0.0;
    double h0 = 1.0;
    std::vector<SweepRow> rows;
    double fem_check_rel = 0.0; // worst endpoint deviation shoot vs fem
    std::vector<std::string> notes;
};

// Geometric grid from eps_max down to eps_min, per_decade points per decade.
inline std::vector<double> geometric_grid(double eps_max, double eps_min, int per_decade) {
    if (!(eps_max > eps_min && eps_min > 0.0))
        throw parameter_error("geometric_grid: need eps_max > eps_min > 0");
    if (per_decade < 1) throw parameter_error("geometric_grid: per_decade must be >= 1");
    std::vector<double> grid;
    const double l_max = std::log10(eps_max), l_min = std::log10(eps_min);
    const int steps = static_cast<int>(std::lround((l_max - l_min) * per_decade));
    for (int i = 0; i <= steps; ++i)
        grid.push_back(std::pow(10.0, l_max + (l_min - l_max) * i / steps));
    return grid;
}

// Conditioning floor: below this the plateau weights h^{n-1} leave the range
// where quadrature and seeding stay trustworthy in double precision.
inline double sweep_eps_floor(SweepFamily) { return 1e-4; }

inline SweepResult sweep_family(SweepFamily family, int n, int k, double R,
                                const std::vector<double>& eps_grid, double h0 = 1.0,
                                const ShootOpts& opts = {}, int fem_check_N = 4000) {
    if (k < 1) throw parameter_error("sweep_family: k must be >= 1");
    switch (family) {
        case SweepFamily::A_large:
            if (n < 3) throw parameter_error("sweep_family: family A needs n >= 3");
            break;
        case SweepFamily::B_small:
            if (n < 4) throw parameter_error("sweep_family: family B needs n >= 4");
            break;
        case SweepFamily::C_h0:
            if (n != 3) throw parameter_error("sweep_family: family C is three-dimensional");
            break;
    }
    for (std::size_t i = 1; i < eps_grid.size(); ++i)
        if (!(eps_grid[i] < eps_grid[i - 1]))
            throw parameter_error("sweep_family: eps grid must be strictly decreasing");

    SweepResult res;
    res.family = family;
    res.n = n;
    res.k = k;
    res.R = R;
    res.h0 = h0;

    const double floor_eps = sweep_eps_floor(family);
    std::vector<double> grid;
    for (double e : eps_grid) {
        if (e < floor_eps) {
            res.notes.push_back("eps=" + fmt_g12(e) + " clipped: below conditioning floor " +
                                fmt_g12(floor_eps));
            continue;
        }
        grid.push_back(e);
    }

    const double lam_k = sphere_eigenvalue(n, k);
    const double lam_k1 = sphere_eigenvalue(n, k + 1);
    res.rows.resize(grid.size());

    auto build = [&](double eps) -> Profile {
        switch (family) {
            case SweepFamily::A_large: return make_plateau_large(n, R, eps);
            case SweepFamily::B_small: return make_plateau_small(n, R, eps);
            case SweepFamily::C_h0: return make_plateau_h0(R, eps, h0);
        }
        throw parameter_error("sweep_family: unknown family");
    };

    parallel_for(grid.size(), [&](std::size_t i) {
        SweepRow& row = res.rows[i];
        row.eps = grid[i];
        row.target_ratio = lam_k1 / lam_k;
        switch (family) {
            case SweepFamily::A_large:
                row.target_gap = std::numeric_limits<double>::infinity();
                row.pred_sigma = lam_k * (R - row.eps) / std::sqrt(row.eps);
                row.pred_gap = (lam_k1 - lam_k) * R / std::sqrt(row.eps);
                break;
            case SweepFamily::B_small:
                row.target_gap = 0.0;
                row.pred_sigma = lam_k * row.eps;
                row.pred_gap = (lam_k1 - lam_k) * row.eps;
                break;
            case SweepFamily::C_h0:
                row.target_gap = R * (lam_k1 - lam_k) / (h0 * h0);
                row.pred_sigma = R * lam_k / (h0 * h0);
                row.pred_gap = R * (lam_k1 - lam_k) / (h0 * h0);
                break;
        }
        try {
            const Profile p = build(row.eps);
            row.sigma_k = steklov_mode(p, lam_k, opts).sigma;
            row.sigma_k1 = steklov_mode(p, lam_k1, opts).sigma;
            row.ratio = row.sigma_k1 / row.sigma_k;
            row.gap = row.sigma_k1 - row.sigma_k;
            row.ok = true;
            row.status = "ok";
        } catch (const error& e) {
            row.ok = false;
            row.status = std::string("failed: ") + e.what();
        }
    });

    if (fem_check_N > 0) {
        // Cross-check only the endpoints of the grid; shooting carries the sweep.
        std::vector<std::size_t> ends;
        for (std::size_t i = 0; i < res.rows.size(); ++i)
            if (res.rows[i].ok) { ends.push_back(i); break; }
        for (std::size_t i = res.rows.size(); i-- > 0;)
            if (res.rows[i].ok) {
                if (ends.empty() || ends.front() != i) ends.push_back(i);
                break;
            }
        for (std::size_t i : ends) {
            const Profile p = build(res.rows[i].eps);
            const Mesh1D mesh = build_mesh(p, fem_check_N, MeshGrading::junction_refined());
            for (int mode = 0; mode < 2; ++mode) {
                const double lam = mode == 0 ? lam_k : lam_k1;
                const double ref = mode == 0 ? res.rows[i].sigma_k : res.rows[i].sigma_k1;
                const double fem = steklov_mode_fem(p, lam, mesh);
                res.fem_check_rel = std::max(res.fem_check_rel,
                                             std::abs(fem - ref) / std::abs(ref));
            }
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// Trend fitting

enum class SweepQuantity { Ratio, Gap, Sigma };

struct TrendFit {
    bool monotone = false;
    int direction = 0; // +1 increasing along decreasing eps, -1 decreasing
    double limit_estimate = 0.0;
    double rate_estimate = 0.0; // log-log slope over the last three rows
    bool rate_defined = false;
};

inline TrendFit fit_trend(const std::vector<SweepRow>& rows, SweepQuantity quantity) {
    std::vector<double> eps, q;
    for (const auto& row : rows) {
        if (!row.ok) continue;
        eps.push_back(row.eps);
        switch (quantity) {
            case SweepQuantity::Ratio: q.push_back(row.ratio); break;
            case SweepQuantity::Gap: q.push_back(row.gap); break;
            case SweepQuantity::Sigma: q.push_back(row.sigma_k); break;
        }
    }
    if (q.size() < 3) throw insufficient_data_error("fit_trend: need at least 3 successful rows");

    TrendFit fit;
    bool inc = true, dec = true;
    for (std::size_t i = 1; i < q.size(); ++i) {
        if (!(q[i] > q[i - 1])) inc = false;
        if (!(q[i] < q[i - 1])) dec = false;
    }
    fit.monotone = inc || dec;
    fit.direction = inc ? +1 : (dec ? -1 : 0);

    // Aitken extrapolation of the last three values; degenerate increments
    // (constant data) fall back to the final value.
    const std::size_t m = q.size();
    const double d1 = q[m - 2] - q[m - 3];
    const double d2 = q[m - 1] - q[m - 2];
    const double denom = d1 - d2;
    const double scale = std::abs(q[m - 1]) + std::abs(q[m - 2]);
    if (std::abs(denom) > 1e-12 * (scale + std::abs(d1)))
        fit.limit_estimate = q[m - 1] + d2 * d2 / denom;
    else
        fit.limit_estimate = q[m - 1];

    // Least-squares log-log slope over the last three rows; undefined for
    // non-positive or flat data.
    bool positive = q[m - 1] > 0.0 && q[m - 2] > 0.0 && q[m - 3] > 0.0;
    const double spread = std::abs(q[m - 1] - q[m - 3]);
    if (positive && spread > 1e-13 * std::abs(q[m - 1])) {
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        for (std::size_t i = m - 3; i < m; ++i) {
            const double x = std::log(eps[i]), y = std::log(q[i]);
            sx += x; sy += y; sxx += x * x; sxy += x * y;
        }
        fit.rate_estimate = (3.0 * sxy - sx * sy) / (3.0 * sxx - sx * sx);
        fit.rate_defined = true;
    }
    return fit;
}

// ---------------------------------------------------------------------------
// Emission

inline std::string sweep_to_csv(const SweepResult& res) {
    std::string out = "eps,sigma_k,sigma_k1,ratio,gap,target_ratio,pred_sigma,pred_gap,status\n";
    for (const auto& row : res.rows) {
        out += fmt_g12(row.eps); out += ',';
        out += fmt_g12(row.sigma_k); out += ',';
        out += fmt_g12(row.sigma_k1); out += ',';
        out += fmt_g12(row.ratio); out += ',';
        out += fmt_g12(row.gap); out += ',';
        out += fmt_g12(row.target_ratio); out += ',';
        out += fmt_g12(row.pred_sigma); out += ',';
        out += fmt_g12(row.pred_gap); out += ',';
        out += row.status;
        out += '\n';
    }
    return out;
}

// Minimal self-contained SVG: ratio against log10(eps), with the target
// ratio as a dashed reference line.
inline std::string sweep_to_svg(const SweepResult& res) {
    const int W = 640, H = 480, ml = 70, mr = 20, mt = 30, mb = 50;
    std::vector<std::pair<double, double>> pts; // (log10 eps, ratio)
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    double target = 0.0;
    for (const auto& row : res.rows) {
        if (!row.ok) continue;
        const double x = std::log10(row.eps);
        pts.push_back({x, row.ratio});
        xmin = std::min(xmin, x); xmax = std::max(xmax, x);
        ymin = std::min(ymin, row.ratio); ymax = std::max(ymax, row.ratio);
        target = row.target_ratio;
    }
    if (pts.empty()) return "<svg xmlns=\"http://www.w3.org/2000/svg\"/>\n";
    ymax = std::max(ymax, target);
    const double ypad = 0.05 * (ymax - ymin + 1e-12);
    ymin -= ypad; ymax += ypad;
    const double xpad = 0.03 * (xmax - xmin + 1e-12);
    xmin -= xpad; xmax += xpad;

    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
    auto py = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(W) +
           "\" height=\"" + std::to_string(H) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // axes
    svg += "<line x1=\"" + fmt_g12(px(xmin)) + "\" y1=\"" + fmt_g12(py(ymin)) +
           "\" x2=\"" + fmt_g12(px(xmax)) + "\" y2=\"" + fmt_g12(py(ymin)) +
           "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + fmt_g12(px(xmin)) + "\" y1=\"" + fmt_g12(py(ymin)) +
           "\" x2=\"" + fmt_g12(px(xmin)) + "\" y2=\"" + fmt_g12(py(ymax)) +
           "\" stroke=\"black\"/>\n";
    // target line
    svg += "<line x1=\"" + fmt_g12(px(xmin)) + "\" y1=\"" + fmt_g12(py(target)) +
           "\" x2=\"" + fmt_g12(px(xmax)) + "\" y2=\"" + fmt_g12(py(target)) +
           "\" stroke=\"gray\" stroke-dasharray=\"6 4\"/>\n";
    // polyline
    svg += "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
    for (const auto& [x, y] : pts) svg += fmt_g12(px(x)) + "," + fmt_g12(py(y)) + " ";
    svg += "\"/>\n";
    for (const auto& [x, y] : pts)
        svg += "<circle cx=\"" + fmt_g12(px(x)) + "\" cy=\"" + fmt_g12(py(y)) +
               "\" r=\"3\" fill=\"steelblue\"/>\n";
    // labels
    svg += "<text x=\"" + std::to_string(W / 2) + "\" y=\"" + std::to_string(H - 12) +
           "\" text-anchor=\"middle\" font-size=\"14\">log10(eps)</text>\n";
    svg += "<text x=\"18\" y=\"" + std::to_string(H / 2) +
           "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 18 " +
           std::to_string(H / 2) + ")\">sigma ratio</text>\n";
    svg += "<text x=\"" + std::to_string(ml) + "\" y=\"18\" font-size=\"13\">family " +
           std::string(sweep_family_name(res.family)) + ", n=" + std::to_string(res.n) +
           ", k=" + std::to_string(res.k) + "</text>\n";
    svg += "</svg>\n";
    return svg;
}

} // namespace steklov
