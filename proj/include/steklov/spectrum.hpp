// Assembly of full Steklov spectra from per-mode values, with sphere
// multiplicities attached. A SpectrumTable lists one row per distinct k.

#pragma once

#include "steklov/errors.hpp"
#include "steklov/format.hpp"
#include "steklov/profile.hpp"
#include "steklov/sphere.hpp"

#include <string>
#include <utility>
#include <vector>

namespace steklov {

struct SpectrumRow {
    int k = 0;
    double lambda = 0.0;
    double sigma = 0.0;
    long long mult = 1;
};

struct SpectrumTable {
    int n = 0;
    double R = 0.0;
    std::string profile_tag;
    std::vector<SpectrumRow> rows;
};

// Attaches eigenvalue/multiplicity data and enforces the structural
// invariants: sigma_0 = 0, sigma strictly increasing in k. A non-monotone
// input signals a numerical failure upstream and is rejected.
inline SpectrumTable assemble_spectrum(const Profile& profile,
                                       const std::vector<std::pair<int, double>>& sigmas,
                                       int k_max) {
    if (k_max < 0) throw parameter_error("assemble_spectrum: k_max must be >= 0");
    SpectrumTable table;
    table.n = profile.n();
    table.R = profile.R();
    table.profile_tag = profile.tag();
    table.rows.resize(static_cast<std::size_t>(k_max) + 1);

    std::vector<bool> seen(static_cast<std::size_t>(k_max) + 1, false);
    for (const auto& [k, sigma] : sigmas) {
        if (k < 0 || k > k_max) throw parameter_error("assemble_spectrum: mode index out of range");
        if (seen[k]) throw parameter_error("assemble_spectrum: duplicate mode index");
        seen[k] = true;
        table.rows[k] = {k, sphere_eigenvalue(profile.n(), k),
                         sigma, sphere_multiplicity(profile.n(), k)};
    }
    for (int k = 0; k <= k_max; ++k)
        if (!seen[k]) throw parameter_error("assemble_spectrum: missing mode k=" + std::to_string(k));

    if (table.rows[0].sigma != 0.0)
        throw solver_inconsistency_error("assemble_spectrum: sigma_0 must be 0");
    for (int k = 1; k <= k_max; ++k)
        if (!(table.rows[k].sigma > table.rows[k - 1].sigma))
            throw solver_inconsistency_error(
                "assemble_spectrum: sigma not strictly increasing at k=" + std::to_string(k));
    return table;
}

inline std::string spectrum_to_csv(const SpectrumTable& table) {
    std::string out = "k,lambda,sigma,mult\n";
    for (const auto& row : table.rows) {
        out += fmt_int(row.k);
        out += ',';
        out += fmt_g12(row.lambda);
        out += ',';
        out += fmt_g12(row.sigma);
        out += ',';
        out += fmt_int(row.mult);
        out += '\n';
    }
    return out;
}

} // namespace steklov
