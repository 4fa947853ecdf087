// Command-line front end: spectra, bound verification, sharpness sweeps,
// Rayleigh quotients, and profile validation for revolution-type metrics.
//
//   steklov spectrum --family euclidean --n 3 --R 1 --kmax 3
//   steklov verify   --family plateau_h0 --R 1 --eps 1e-2 --h0 1 --kmax 2
//   steklov sweep    --sweep-family B_small --family plateau_small --n 4 --R 1
//                    --eps-max 1e-1 --eps-min 1e-3 --out rows.csv --plot
//   steklov rayleigh --family euclidean --n 3 --R 1 --lambda 2
//                    --a-knots '[[0,1],[1,0]]'
//   steklov validate --profile profile.json
//
// A full run may also be described by a JSON config: steklov --config run.json

#include "steklov/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>
#include <string>

namespace {

struct ProfileFlags {
    std::string profile_path;
    std::string profile_json;
    std::string family;
    int n = 0;
    double R = 1.0;
    double eps = 0.0;
    double h0 = 0.0;
    double R1 = 0.0, C1 = 0.0, C2 = 0.0;
    std::string knots_json;
};

steklov::njson parse_json_text(const std::string& text, const char* what) {
    steklov::njson j = steklov::njson::parse(text, nullptr, false);
    if (j.is_discarded())
        throw steklov::parameter_error(std::string("malformed JSON in ") + what);
    return j;
}

steklov::njson load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw steklov::parameter_error("cannot open file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str(), path.c_str());
}

steklov::njson profile_spec_from_flags(const ProfileFlags& pf) {
    if (!pf.profile_path.empty()) return load_json_file(pf.profile_path);
    if (!pf.profile_json.empty()) return parse_json_text(pf.profile_json, "--profile-json");
    if (pf.family.empty())
        throw steklov::parameter_error("no profile given: use --family or --profile");
    steklov::njson j;
    j["family"] = pf.family;
    if (pf.n > 0) j["n"] = pf.n;
    j["R"] = pf.R;
    steklov::njson params = steklov::njson::object();
    if (pf.eps > 0.0) params["eps"] = pf.eps;
    if (pf.h0 > 0.0) params["h0"] = pf.h0;
    if (pf.C2 > 0.0) {
        params["R1"] = pf.R1;
        params["C1"] = pf.C1;
        params["C2"] = pf.C2;
    }
    j["params"] = params;
    if (!pf.knots_json.empty()) j["knots"] = parse_json_text(pf.knots_json, "--knots");
    return j;
}

void add_profile_flags(CLI::App* cmd, ProfileFlags& pf) {
    cmd->add_option("--profile", pf.profile_path, "profile specification file (JSON)");
    cmd->add_option("--profile-json", pf.profile_json, "inline profile specification (JSON)");
    cmd->add_option("--family", pf.family,
                    "profile family: euclidean | plateau_large | plateau_small | "
                    "plateau_h0 | capped | piecewise_mollified");
    cmd->add_option("--n", pf.n, "ambient dimension");
    cmd->add_option("--R", pf.R, "radial domain length");
    cmd->add_option("--eps", pf.eps, "family parameter eps");
    cmd->add_option("--h0", pf.h0, "boundary warp value h(0) for plateau_h0");
    cmd->add_option("--R1", pf.R1, "cap hypothesis: lower bound holds on [0,R1]");
    cmd->add_option("--C1", pf.C1, "cap hypothesis: h >= C1 on [0,R1]");
    cmd->add_option("--C2", pf.C2, "cap hypothesis: h <= C2 on [0,R]");
    cmd->add_option("--knots", pf.knots_json, "knot list [[r,h],...] for knot families");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steklov spectra of balls with revolution-type metrics"};
    app.require_subcommand(0, 1);

    std::string config_path;
    app.add_option("--config", config_path, "JSON run configuration");

    ProfileFlags pf;
    steklov::RunConfig cfg;
    std::string a_knots_json;
    std::string sweep_family = "A_large";

    auto* spectrum = app.add_subcommand("spectrum", "per-mode Steklov values as CSV");
    auto* verify = app.add_subcommand("verify", "evaluate every applicable bound");
    auto* sweep = app.add_subcommand("sweep", "eps sweep over a sharpness family");
    auto* ray = app.add_subcommand("rayleigh", "Rayleigh quotient of a test function");
    auto* validate = app.add_subcommand("validate", "check the profile assumptions");

    for (CLI::App* cmd : {spectrum, verify, sweep, ray, validate}) {
        add_profile_flags(cmd, pf);
        cmd->add_option("--out", cfg.out_path, "output path (default: stdout)");
        cmd->add_option("--rtol", cfg.rtol, "shooting relative tolerance");
        cmd->add_option("--atol", cfg.atol, "shooting absolute tolerance");
    }
    for (CLI::App* cmd : {spectrum, verify})
        cmd->add_option("--kmax", cfg.k_max, "largest mode index");
    for (CLI::App* cmd : {verify, sweep})
        cmd->add_option("--fem-n", cfg.fem_n, "FEM cross-check resolution (0 disables)");

    sweep->add_option("--sweep-family", sweep_family, "A_large | B_small | C_h0");
    sweep->add_option("--k", cfg.sweep_k, "mode index swept");
    sweep->add_option("--eps-max", cfg.eps_max, "coarse end of the eps grid");
    sweep->add_option("--eps-min", cfg.eps_min, "fine end of the eps grid");
    sweep->add_option("--per-decade", cfg.per_decade, "grid points per decade");
    sweep->add_flag("--plot", cfg.emit_plot, "emit an SVG ratio plot next to the CSV");

    ray->add_option("--lambda", cfg.lambda, "spectral parameter (>= 0)");
    ray->add_option("--k", cfg.mode_k, "mode index; lambda taken from the sphere");
    ray->add_option("--a-knots", a_knots_json,
                    "piecewise-linear test function [[r,a],...], a(R) = 0");

    validate->add_option("--samples", cfg.samples, "validation sample count");
    validate->add_option("--tol", cfg.tol, "validation tolerance");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!config_path.empty()) {
            cfg = steklov::config_from_json(load_json_file(config_path));
            return steklov::run(cfg);
        }
        if (spectrum->parsed()) cfg.command = steklov::RunConfig::Command::Spectrum;
        else if (verify->parsed()) cfg.command = steklov::RunConfig::Command::Verify;
        else if (sweep->parsed()) cfg.command = steklov::RunConfig::Command::Sweep;
        else if (ray->parsed()) cfg.command = steklov::RunConfig::Command::Rayleigh;
        else if (validate->parsed()) cfg.command = steklov::RunConfig::Command::Validate;
        else {
            std::fprintf(stderr, "error: expected a subcommand or --config; see --help\n");
            return 2;
        }
        cfg.profile_spec = profile_spec_from_flags(pf);
        if (verify->parsed() && pf.C2 > 0.0 && pf.family != "capped")
            cfg.caps = steklov::CapHypothesis{pf.R1, pf.C1, pf.C2};
        cfg.sweep_family = sweep_family;
        if (sweep->parsed()) {
            cfg.h0 = pf.h0 > 0.0 ? pf.h0 : 1.0;
            // the swept profile is rebuilt per eps; give the parsed profile a valid one
            if (!cfg.profile_spec.contains("params") ||
                !cfg.profile_spec["params"].contains("eps"))
                cfg.profile_spec["params"]["eps"] = cfg.eps_max;
        }
        if (!a_knots_json.empty()) {
            for (const auto& kv : parse_json_text(a_knots_json, "--a-knots"))
                cfg.a_knots.emplace_back(kv[0].get<double>(), kv[1].get<double>());
        }
        return steklov::run(cfg);
    } catch (const steklov::error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const steklov::njson::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
