// JSON bindings: the profile specification format consumed by the CLI,
// plus serializers for reports and solver diagnostics.
//
// Profile spec:
//   { "family": string, "n": int, "R": float,
//     "params": { "eps": ..., "h0": ..., "R1": ..., "C1": ..., "C2": ... },
//     "knots": [[r, h], ...] }      // capped / piecewise_mollified only

#pragma once

#include "steklov/bounds.hpp"
#include "steklov/profile.hpp"
#include "steklov/shoot.hpp"

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

namespace steklov {

using njson = nlohmann::json;

namespace detail {

inline double need_number(const njson& j, const std::string& key, const std::string& ctx) {
    if (!j.contains(key) || !j[key].is_number())
        throw parameter_error("profile spec: missing numeric field '" + key + "' for " + ctx);
    return j[key].get<double>();
}

inline std::vector<std::pair<double, double>> parse_knots(const njson& j) {
    if (!j.contains("knots") || !j["knots"].is_array())
        throw parameter_error("profile spec: this family requires a 'knots' array");
    std::vector<std::pair<double, double>> knots;
    for (const auto& kv : j["knots"]) {
        if (!kv.is_array() || kv.size() != 2 || !kv[0].is_number() || !kv[1].is_number())
            throw parameter_error("profile spec: knots must be [r, h] number pairs");
        knots.emplace_back(kv[0].get<double>(), kv[1].get<double>());
    }
    return knots;
}

} // namespace detail

inline Profile profile_from_json(const njson& j) {
    if (!j.is_object()) throw parameter_error("profile spec: expected a JSON object");
    if (!j.contains("family") || !j["family"].is_string())
        throw parameter_error("profile spec: missing string field 'family'");
    const std::string family = j["family"].get<std::string>();
    const double R = detail::need_number(j, "R", family);
    const njson params = j.contains("params") ? j["params"] : njson::object();

    auto need_n = [&]() -> int {
        if (!j.contains("n") || !j["n"].is_number_integer())
            throw parameter_error("profile spec: missing integer field 'n' for " + family);
        return j["n"].get<int>();
    };

    if (family == "euclidean") return make_euclidean(need_n(), R);
    if (family == "plateau_large")
        return make_plateau_large(need_n(), R, detail::need_number(params, "eps", family));
    if (family == "plateau_small")
        return make_plateau_small(need_n(), R, detail::need_number(params, "eps", family));
    if (family == "plateau_h0") {
        if (j.contains("n") && j["n"].is_number_integer() && j["n"].get<int>() != 3)
            throw parameter_error("profile spec: plateau_h0 is three-dimensional");
        return make_plateau_h0(R, detail::need_number(params, "eps", family),
                               detail::need_number(params, "h0", family));
    }
    if (family == "capped")
        return make_capped(need_n(), R,
                           detail::need_number(params, "R1", family),
                           detail::need_number(params, "C1", family),
                           detail::need_number(params, "C2", family),
                           detail::parse_knots(j));
    if (family == "piecewise_mollified")
        return make_piecewise(need_n(), R, detail::parse_knots(j));
    throw parameter_error("profile spec: unknown family '" + family + "'");
}

inline njson profile_to_json(const Profile& p) {
    njson j;
    j["family"] = family_name(p.family());
    j["n"] = p.n();
    j["R"] = p.R();
    njson params = njson::object();
    for (const auto& [k, v] : p.params()) params[k] = v;
    j["params"] = params;
    return j;
}

inline njson validation_report_to_json(const ValidationReport& rep) {
    njson j;
    j["pass"] = rep.pass;
    j["checks"] = njson::array();
    for (const auto& c : rep.checks)
        j["checks"].push_back({{"name", c.name},
                               {"pass", c.pass},
                               {"value", c.value},
                               {"threshold", c.threshold}});
    return j;
}

inline njson bound_report_to_json(const BoundReport& rep) {
    njson j;
    j["profile"] = rep.profile_tag;
    j["n"] = rep.n;
    j["R"] = rep.R;
    j["h0"] = rep.h0;
    j["all_pass"] = rep.all_pass;
    j["cap_certified"] = rep.cap_certified;
    j["fem_max_rel_dev"] = rep.fem_max_rel_dev;
    j["rows"] = njson::array();
    for (const auto& r : rep.rows) {
        njson row = {{"k", r.k},
                     {"sigma_k", r.sigma_k},
                     {"sigma_k1", r.sigma_k1},
                     {"gap", r.gap},
                     {"indeterminate", r.indeterminate}};
        if (std::isfinite(r.ratio)) row["ratio"] = r.ratio;
        if (!r.note.empty()) row["note"] = r.note;
        j["rows"].push_back(row);
    }
    j["checks"] = njson::array();
    for (const auto& c : rep.checks)
        j["checks"].push_back({{"bound", c.bound_name},
                               {"k", c.k},
                               {"lhs", c.lhs},
                               {"rhs", c.rhs},
                               {"margin", c.margin},
                               {"verdict", c.indeterminate ? "indeterminate"
                                                           : (c.pass ? "pass" : "fail")}});
    j["notes"] = rep.notes;
    return j;
}

inline njson mode_diag_to_json(const ModeSolution& sol) {
    return njson{{"sigma", sol.sigma},
                 {"steps", sol.diag.steps},
                 {"rescalings", sol.diag.rescalings},
                 {"seed_order", sol.diag.seed_order},
                 {"seed_s0", sol.diag.seed_s0},
                 {"est_error", sol.diag.est_error}};
}

inline njson fem_diag_to_json(const FemDiagnostics& diag) {
    return njson{{"N", diag.N}, {"observed_order", diag.observed_order}};
}

} // namespace steklov
