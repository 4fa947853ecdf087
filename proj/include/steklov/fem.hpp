// Independent variational oracle: minimize the Rayleigh quotient over
// continuous piecewise-linear functions with a(R) = 0. The boundary trace is
// pinned to a(0) = 1, which turns the minimization into one symmetric
// positive-definite tridiagonal solve per mode; the minimum of the assembled
// energy divided by h(0)^{n-1} is a certified upper bound for sigma.

#pragma once

#include "steklov/errors.hpp"
#include "steklov/format.hpp"
#include "steklov/profile.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace steklov {

struct MeshGrading {
    enum class Kind { Uniform, GeometricToR, JunctionRefined };
    Kind kind = Kind::JunctionRefined;
    double ratio = 1.3; // layer growth factor / grading power for GeometricToR
    int depth = 60;     // layer nodes per segment end (JunctionRefined)

    static MeshGrading uniform() { return {Kind::Uniform, 0.0, 0}; }
    static MeshGrading geometric_to_R(double power = 2.0) { return {Kind::GeometricToR, power, 0}; }
    static MeshGrading junction_refined(int depth = 60, double ratio = 1.3) {
        return {Kind::JunctionRefined, ratio, depth};
    }
};

struct Mesh1D {
    std::vector<double> nodes; // strictly increasing, nodes.front()=0, nodes.back()=R
    MeshGrading grading;

    int cells() const { return static_cast<int>(nodes.size()) - 1; }
};

namespace detail {

// Symmetric boundary-layer offsets: depth geometrically graded distances
// from the segment end, reaching a quarter span at the coarsest.
inline void layer_offsets(double len, int depth, double ratio, std::vector<double>& out) {
    double off = 0.25 * len;
    for (int j = 0; j < depth && off > 0.0; ++j) {
        out.push_back(off);
        off /= ratio;
    }
}

} // namespace detail

inline Mesh1D build_mesh(const Profile& profile, int N, const MeshGrading& grading) {
    if (N < 8) throw mesh_error("build_mesh: N must be >= 8");
    const double R = profile.R();
    const auto junctions = profile.junctions();
    if (static_cast<int>(junctions.size()) + 2 > N)
        throw mesh_error("build_mesh: junction set finer than the node budget");

    std::vector<double> nodes;
    switch (grading.kind) {
        case MeshGrading::Kind::Uniform: {
            for (int i = 0; i <= N; ++i) nodes.push_back(R * i / N);
            break;
        }
        case MeshGrading::Kind::GeometricToR: {
            const double p = std::max(1.0, grading.ratio);
            for (int i = 0; i <= N; ++i) {
                const double t = static_cast<double>(i) / N;
                nodes.push_back(R * (1.0 - std::pow(1.0 - t, p)));
            }
            nodes.back() = R;
            break;
        }
        case MeshGrading::Kind::JunctionRefined: {
            for (const Segment& seg : profile.segments()) {
                const double len = seg.width();
                nodes.push_back(seg.left);
                std::vector<double> offs;
                detail::layer_offsets(len, grading.depth, grading.ratio, offs);
                for (double o : offs) {
                    nodes.push_back(seg.left + o);
                    nodes.push_back(seg.right - o);
                }
                const int fill = std::max(8, static_cast<int>(std::lround(
                    static_cast<double>(N) * len / R)));
                for (int i = 1; i < fill; ++i)
                    nodes.push_back(seg.left + len * i / fill);
            }
            nodes.push_back(R);
            break;
        }
    }

    // Force junction nodes, sort, and drop near-duplicates. The tolerance is
    // far below the tightest intentional layer spacing.
    nodes.insert(nodes.end(), junctions.begin(), junctions.end());
    nodes.push_back(0.0);
    nodes.push_back(R);
    std::sort(nodes.begin(), nodes.end());
    std::vector<double> merged;
    merged.reserve(nodes.size());
    double local_tol = 0.0;
    for (double x : nodes) {
        const Segment& seg = profile.locate(std::min(x, R));
        local_tol = 1e-12 * seg.width();
        if (merged.empty() || x - merged.back() > local_tol) merged.push_back(x);
    }
    merged.front() = 0.0;
    merged.back() = R;
    // Keep junctions exact: snap any survivor within tolerance of a junction.
    for (double j : junctions) {
        auto it = std::lower_bound(merged.begin(), merged.end(), j);
        if (it != merged.end() && std::abs(*it - j) <= 1e-12 * R) *it = j;
        else if (it != merged.begin() && std::abs(*(it - 1) - j) <= 1e-12 * R) *(it - 1) = j;
    }
    if (static_cast<int>(merged.size()) < 9)
        throw mesh_error("build_mesh: fewer than 8 cells after merging");
    Mesh1D mesh;
    mesh.nodes = std::move(merged);
    mesh.grading = grading;
    return mesh;
}

// Exact bisection of every cell; the refined P1 space nests the coarse one.
inline Mesh1D bisect_mesh(const Mesh1D& mesh) {
    Mesh1D fine;
    fine.grading = mesh.grading;
    fine.nodes.reserve(mesh.nodes.size() * 2);
    for (std::size_t i = 0; i + 1 < mesh.nodes.size(); ++i) {
        fine.nodes.push_back(mesh.nodes[i]);
        fine.nodes.push_back(0.5 * (mesh.nodes[i] + mesh.nodes[i + 1]));
    }
    fine.nodes.push_back(mesh.nodes.back());
    return fine;
}

inline double steklov_mode_fem(const Profile& profile, double lambda, const Mesh1D& mesh) {
    if (!(lambda >= 0.0)) throw domain_error("steklov_mode_fem: lambda must be >= 0");
    if (lambda == 0.0) return 0.0;
    const int n = profile.n();
    const std::size_t N = mesh.nodes.size() - 1;

    // 2-point Gauss weights of the two P1 hats per cell.
    static constexpr double g = 0.28867513459481287; // 1/(2 sqrt(3))

    std::vector<double> diag(N + 1, 0.0), off(N, 0.0);
    std::vector<double> s_w(N), m11(N), m12(N), m22(N);
    for (std::size_t i = 0; i < N; ++i) {
        const double xl = mesh.nodes[i], xr = mesh.nodes[i + 1];
        const double w = xr - xl, mid = 0.5 * (xl + xr);
        const double x1 = mid - g * w, x2 = mid + g * w;
        const double h1 = profile.h(x1), h2 = profile.h(x2);
        const double stiff = 0.5 * (ipow(h1, n - 1) + ipow(h2, n - 1)) / w;
        const double q1 = lambda * 0.5 * w * ipow(h1, n - 3);
        const double q2 = lambda * 0.5 * w * ipow(h2, n - 3);
        // hat values at the Gauss points: phi_left = 1-t, phi_right = t
        const double t1 = 0.5 - g, t2 = 0.5 + g;
        s_w[i] = stiff;
        m11[i] = q1 * (1 - t1) * (1 - t1) + q2 * (1 - t2) * (1 - t2);
        m12[i] = q1 * (1 - t1) * t1 + q2 * (1 - t2) * t2;
        m22[i] = q1 * t1 * t1 + q2 * t2 * t2;
        if (!std::isfinite(stiff) || !std::isfinite(m11[i]) || !std::isfinite(m22[i]))
            throw conditioning_error("steklov_mode_fem: non-finite quadrature weight");
        diag[i] += stiff + m11[i];
        diag[i + 1] += stiff + m22[i];
        off[i] = -stiff + m12[i];
    }

    // Interior solve with a_0 = 1, a_N = 0 (Thomas; pivots certify SPD).
    const std::size_t m = N - 1; // unknowns a_1..a_{N-1}
    std::vector<double> a(N + 1, 0.0);
    a[0] = 1.0;
    if (m > 0) {
        std::vector<double> c(m, 0.0), d(m, 0.0);
        std::vector<double> rhs(m, 0.0);
        rhs[0] = -off[0];
        double piv = diag[1];
        if (!(piv > 0.0)) throw assembly_error("steklov_mode_fem: non-SPD system");
        c[0] = (m > 1) ? off[1] / piv : 0.0;
        d[0] = rhs[0] / piv;
        for (std::size_t i = 1; i < m; ++i) {
            piv = diag[i + 1] - off[i] * c[i - 1];
            if (!(piv > 0.0)) throw assembly_error("steklov_mode_fem: non-SPD system");
            if (i + 1 < m) c[i] = off[i + 1] / piv;
            d[i] = (rhs[i] - off[i] * d[i - 1]) / piv;
        }
        a[m] = d[m - 1];
        for (std::size_t i = m - 1; i >= 1; --i) a[i] = d[i - 1] - c[i - 1] * a[i + 1];
    }

    // Energy by direct summation of the (nonnegative) cell contributions.
    double energy = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        const double da = a[i + 1] - a[i];
        energy += da * da * s_w[i] +
                  m11[i] * a[i] * a[i] + 2.0 * m12[i] * a[i] * a[i + 1] +
                  m22[i] * a[i + 1] * a[i + 1];
    }
    return energy / ipow(profile.h(0.0), n - 1);
}

struct FemDiagnostics {
    int N = 0;
    double observed_order = 0.0;
};

// Observed convergence order from three nested uniform resolutions,
// p = log2( (s_N - s_2N) / (s_2N - s_4N) ); no exact value needed.
inline FemDiagnostics fem_observed_order(const Profile& profile, double lambda, int N) {
    const double s1 = steklov_mode_fem(profile, lambda, build_mesh(profile, N, MeshGrading::uniform()));
    const double s2 = steklov_mode_fem(profile, lambda, build_mesh(profile, 2 * N, MeshGrading::uniform()));
    const double s4 = steklov_mode_fem(profile, lambda, build_mesh(profile, 4 * N, MeshGrading::uniform()));
    FemDiagnostics diag;
    diag.N = N;
    const double d1 = s1 - s2, d2 = s2 - s4;
    diag.observed_order = (d2 != 0.0) ? std::log2(std::abs(d1 / d2)) : 0.0;
    return diag;
}

} // namespace steklov
