// Command execution behind the command-line front end. RunConfig describes
// one invocation (one command, one profile, solver options, output paths);
// run() executes it and returns the process exit status:
//   0  success / all verdicts pass
//   1  verdict failure
//   2  malformed configuration or invalid profile (rejected before solving)
//   3  solver failure

#pragma once

#include "steklov/bounds.hpp"
#include "steklov/errors.hpp"
#include "steklov/json_io.hpp"
#include "steklov/parallel.hpp"
#include "steklov/rayleigh.hpp"
#include "steklov/spectrum.hpp"
#include "steklov/sweep.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace steklov {

struct RunConfig {
    enum class Command { Spectrum, Verify, Sweep, Rayleigh, Validate };

    Command command = Command::Spectrum;
    njson profile_spec; // consumed by profile_from_json

    int k_max = 3;
    double rtol = 1e-10;
    double atol = 1e-300;
    int fem_n = 4000;
    std::string out_path; // empty -> stdout
    bool emit_plot = false;

    // sweep
    std::string sweep_family = "A_large";
    int sweep_k = 1;
    double eps_max = 1e-1;
    double eps_min = 1e-3;
    int per_decade = 5;
    double h0 = 1.0;

    // rayleigh
    double lambda = -1.0; // explicit spectral parameter, or
    int mode_k = -1;      // mode index resolved through sphere_eigenvalue
    std::vector<std::pair<double, double>> a_knots;

    // verify: cap hypothesis for the conditional bounds; defaults to the
    // profile's own parameters for the capped family
    std::optional<CapHypothesis> caps;

    // validate
    int samples = 4096;
    double tol = 1e-8;
};

inline RunConfig::Command parse_command(const std::string& name) {
    if (name == "spectrum") return RunConfig::Command::Spectrum;
    if (name == "verify") return RunConfig::Command::Verify;
    if (name == "sweep") return RunConfig::Command::Sweep;
    if (name == "rayleigh") return RunConfig::Command::Rayleigh;
    if (name == "validate") return RunConfig::Command::Validate;
    throw parameter_error("unknown command '" + name + "'");
}

inline SweepFamily parse_sweep_family(const std::string& name) {
    if (name == "A_large" || name == "A") return SweepFamily::A_large;
    if (name == "B_small" || name == "B") return SweepFamily::B_small;
    if (name == "C_h0" || name == "C") return SweepFamily::C_h0;
    throw parameter_error("unknown sweep family '" + name + "'");
}

// Flat JSON config file mirroring the command-line flags.
inline RunConfig config_from_json(const njson& j) {
    if (!j.is_object()) throw parameter_error("config: expected a JSON object");
    if (!j.contains("command") || !j["command"].is_string())
        throw parameter_error("config: missing string field 'command'");
    RunConfig cfg;
    cfg.command = parse_command(j["command"].get<std::string>());
    if (j.contains("profile")) cfg.profile_spec = j["profile"];
    auto opt = [&j](const char* key, auto& slot) {
        if (j.contains(key)) slot = j[key].get<std::decay_t<decltype(slot)>>();
    };
    opt("k_max", cfg.k_max);
    opt("rtol", cfg.rtol);
    opt("atol", cfg.atol);
    opt("fem_n", cfg.fem_n);
    opt("out", cfg.out_path);
    opt("plot", cfg.emit_plot);
    opt("sweep_family", cfg.sweep_family);
    opt("sweep_k", cfg.sweep_k);
    opt("eps_max", cfg.eps_max);
    opt("eps_min", cfg.eps_min);
    opt("per_decade", cfg.per_decade);
    opt("h0", cfg.h0);
    opt("lambda", cfg.lambda);
    opt("mode_k", cfg.mode_k);
    opt("samples", cfg.samples);
    opt("tol", cfg.tol);
    if (j.contains("a_knots")) {
        for (const auto& kv : j["a_knots"]) {
            if (!kv.is_array() || kv.size() != 2)
                throw parameter_error("config: a_knots must be [r, value] pairs");
            cfg.a_knots.emplace_back(kv[0].get<double>(), kv[1].get<double>());
        }
    }
    if (j.contains("caps")) {
        const njson& c = j["caps"];
        cfg.caps = CapHypothesis{c.at("R1").get<double>(), c.at("C1").get<double>(),
                                 c.at("C2").get<double>()};
    }
    return cfg;
}

namespace detail {

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw parameter_error("cannot open output file: " + path);
    out << content;
}

inline void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::fputs(content.c_str(), stdout);
    else
        write_file(out_path, content);
}

} // namespace detail

inline int run(const RunConfig& cfg) {
    try {
        if (!(cfg.rtol >= 1e-12 && cfg.rtol <= 1e-2)) {
            std::fprintf(stderr, "error: rtol must lie in [1e-12, 1e-2]\n");
            return 2;
        }
        if (cfg.k_max < 0) {
            std::fprintf(stderr, "error: k_max must be >= 0\n");
            return 2;
        }

        Profile profile = [&]() -> Profile {
            try {
                return profile_from_json(cfg.profile_spec);
            } catch (const njson::exception& e) {
                throw parameter_error(std::string("profile spec: ") + e.what());
            }
        }();

        ShootOpts opts;
        opts.rtol = cfg.rtol;
        opts.atol = cfg.atol;

        // Every solving command validates the profile up front.
        const ValidationReport vrep = validate_profile(profile, cfg.samples, cfg.tol);
        if (cfg.command == RunConfig::Command::Validate) {
            detail::emit(cfg.out_path, validation_report_to_json(vrep).dump(2) + "\n");
            return vrep.pass ? 0 : 1;
        }
        if (!vrep.pass) {
            std::fprintf(stderr, "error: profile failed validation; run the validate command for details\n");
            return 2;
        }

        switch (cfg.command) {
            case RunConfig::Command::Spectrum: {
                std::vector<std::pair<int, double>> sigmas(cfg.k_max + 1);
                if (profile.n() == 2) {
                    const double h0 = profile.h(0.0);
                    for (int k = 0; k <= cfg.k_max; ++k) sigmas[k] = {k, n2_exact(k, h0)};
                } else {
                    parallel_for(static_cast<std::size_t>(cfg.k_max) + 1, [&](std::size_t i) {
                        const int k = static_cast<int>(i);
                        const double lam = sphere_eigenvalue(profile.n(), k);
                        sigmas[i] = {k, steklov_mode(profile, lam, opts).sigma};
                    });
                }
                const SpectrumTable table = assemble_spectrum(profile, sigmas, cfg.k_max);
                detail::emit(cfg.out_path, spectrum_to_csv(table));
                return 0;
            }

            case RunConfig::Command::Verify: {
                std::optional<CapHypothesis> caps = cfg.caps;
                if (!caps && profile.family() == Family::Capped)
                    caps = CapHypothesis{profile.param("R1"), profile.param("C1"),
                                         profile.param("C2")};
                const BoundReport rep =
                    verify_profile(profile, std::max(cfg.k_max, 2), opts, caps, cfg.fem_n);
                for (const auto& row : rep.rows)
                    if (row.indeterminate) {
                        std::fprintf(stderr, "error: solver failed at k=%d: %s\n",
                                     row.k, row.note.c_str());
                        return 3;
                    }
                if (cfg.out_path.empty()) {
                    detail::emit("", bound_report_to_json(rep).dump(2) + "\n");
                    detail::emit("", bound_report_to_csv(rep));
                } else {
                    detail::write_file(cfg.out_path + ".json",
                                       bound_report_to_json(rep).dump(2) + "\n");
                    detail::write_file(cfg.out_path + ".csv", bound_report_to_csv(rep));
                }
                return rep.all_pass ? 0 : 1;
            }

            case RunConfig::Command::Sweep: {
                const SweepFamily fam = parse_sweep_family(cfg.sweep_family);
                const auto grid = geometric_grid(cfg.eps_max, cfg.eps_min, cfg.per_decade);
                const SweepResult res = sweep_family(fam, profile.n(), cfg.sweep_k,
                                                     profile.R(), grid, cfg.h0, opts, cfg.fem_n);
                bool any_ok = false;
                for (const auto& row : res.rows) any_ok |= row.ok;
                detail::emit(cfg.out_path, sweep_to_csv(res));
                if (cfg.emit_plot) {
                    const std::string svg_path =
                        cfg.out_path.empty() ? "sweep.svg" : cfg.out_path + ".svg";
                    detail::write_file(svg_path, sweep_to_svg(res));
                }
                if (!any_ok) {
                    std::fprintf(stderr, "error: every sweep row failed\n");
                    return 3;
                }
                return 0;
            }

            case RunConfig::Command::Rayleigh: {
                double lam = cfg.lambda;
                if (lam < 0.0 && cfg.mode_k >= 0)
                    lam = sphere_eigenvalue(profile.n(), cfg.mode_k);
                if (lam < 0.0) {
                    std::fprintf(stderr, "error: rayleigh requires lambda or a mode index\n");
                    return 2;
                }
                if (cfg.a_knots.size() < 2) {
                    std::fprintf(stderr, "error: rayleigh requires a_knots describing the test function\n");
                    return 2;
                }
                const TestFunction tf = piecewise_linear_test(cfg.a_knots);
                const double value = rayleigh(profile, lam, tf, 200);
                const std::string line = fmt_g12(value) + "\n";
                std::fputs(line.c_str(), stdout);
                if (!cfg.out_path.empty()) detail::write_file(cfg.out_path, line);
                return 0;
            }

            case RunConfig::Command::Validate:
                break; // handled above
        }
        return 2;
    } catch (const parameter_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const inadmissible_test_function& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const error& e) {
        std::fprintf(stderr, "solver error: %s\n", e.what());
        return 3;
    } catch (const njson::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}

} // namespace steklov
