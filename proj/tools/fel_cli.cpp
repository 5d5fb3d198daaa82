// Batch front door: config parsing, subcommand dispatch, sweep orchestration.
// All output files are deterministic for a fixed (config, seed).

#include <cinttypes>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fel/beam.hpp"
#include "fel/config.hpp"
#include "fel/dispersion.hpp"
#include "fel/errors.hpp"
#include "fel/langevin.hpp"
#include "fel/lgk.hpp"
#include "fel/meanfield.hpp"
#include "fel/selfenergy.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using fel::config::RunConfig;

namespace {

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string header_line(std::uint64_t hash, std::uint64_t seed) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "# config_hash=%016" PRIx64 " seed=%" PRIu64 "\n", hash, seed);
    return buf;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw fel::config_error("cannot write output file: " + path.string());
    out << text;
}

// JSON payloads get the same leading header comment as the CSVs; readers strip
// the first line. The hash and seed are repeated as fields for convenience.
void write_json(const fs::path& path, json j, std::uint64_t hash, std::uint64_t seed) {
    char hex[20];
    std::snprintf(hex, sizeof hex, "%016" PRIx64, hash);
    j["config_hash"] = hex;
    j["seed"] = seed;
    write_text(path, header_line(hash, seed) + j.dump(2) + "\n");
}

json complex_json(std::complex<double> z) {
    return json{{"re", z.real()}, {"im", z.imag()}};
}

// ---------------------------------------------------------------------------
// Config-driven construction of the physics inputs.

const std::vector<std::string> kBeamKeys = {
    "beam.eta", "beam.n_electrons", "beam.omega_eta", "beam.profile",
    "beam.m0",  "beam.sigma_m",     "beam.window_halfwidth"};

fel::beam::BeamParameters beam_params(const RunConfig& cfg) {
    try {
        return {cfg.get_double("beam.eta"), cfg.get_double("beam.n_electrons"),
                cfg.get_double("beam.omega_eta")};
    } catch (const std::invalid_argument& e) {
        throw fel::config_error(std::string("beam parameters: ") + e.what());
    }
}

fel::beam::OccupationProfile build_profile(const RunConfig& cfg) {
    const std::string kind = cfg.get_string_or("beam.profile", "gaussian");
    const int m0 = static_cast<int>(cfg.get_int("beam.m0"));
    if (kind == "cold") return fel::beam::cold_profile(m0);
    if (kind == "gaussian") {
        const double sigma_m = cfg.get_double("beam.sigma_m");
        const int halfwidth = static_cast<int>(cfg.get_int_or(
            "beam.window_halfwidth", static_cast<long>(std::ceil(8.0 * sigma_m))));
        return fel::beam::gaussian_profile(m0, sigma_m, halfwidth);
    }
    throw fel::config_error("config key beam.profile: expected gaussian or cold, got " + kind);
}

fel::beam::GaussianScales build_scales(const RunConfig& cfg,
                                       const fel::beam::BeamParameters& params) {
    return fel::beam::gaussian_scales(static_cast<int>(cfg.get_int("beam.m0")),
                                      cfg.get_double("beam.sigma_m"), params);
}

double broadening_epsilon(const RunConfig& cfg, const fel::beam::BeamParameters& params,
                          const fel::beam::GaussianScales& scales) {
    const double eps = cfg.get_double_or("selfenergy.epsilon", 3.0 / params.eta);
    if (scales.sigma_omega / eps < 5.0)
        std::fprintf(stderr,
                     "warning: selfenergy.epsilon=%g is coarse against sigma_omega=%g "
                     "(sigma_omega/epsilon < 5); broadening bias may be visible\n",
                     eps, scales.sigma_omega);
    if (eps * params.eta < 3.0)
        std::fprintf(stderr,
                     "warning: selfenergy.epsilon=%g barely covers the level spacing "
                     "1/eta=%g (epsilon*eta < 3); spectral sums may look grainy\n",
                     eps, 1.0 / params.eta);
    return eps;
}

// ---------------------------------------------------------------------------
// Subcommand bodies. Each returns the list of files it wrote (for manifests).

std::vector<std::string> run_selfenergy(const RunConfig& cfg, const fs::path& out,
                                        std::uint64_t hash, std::uint64_t seed) {
    cfg.require_known(
        [] {
            auto v = kBeamKeys;
            v.insert(v.end(), {"seed", "selfenergy.epsilon", "selfenergy.omega_min",
                               "selfenergy.omega_max", "selfenergy.n_points"});
            return v;
        }());
    const auto params = beam_params(cfg);
    const auto profile = build_profile(cfg);
    const auto scales = build_scales(cfg, params);
    const fel::selfenergy::Broadening eps(broadening_epsilon(cfg, params, scales));

    const double w_lo =
        cfg.get_double_or("selfenergy.omega_min", scales.omega_0 - 3.0 * scales.sigma_omega);
    const double w_hi =
        cfg.get_double_or("selfenergy.omega_max", scales.omega_0 + 3.0 * scales.sigma_omega);
    const long n = cfg.get_int_or("selfenergy.n_points", 201);
    if (n < 2) throw fel::config_error("config key selfenergy.n_points: need at least 2");
    if (!(w_hi > w_lo))
        throw fel::config_error("config key selfenergy.omega_max: must exceed selfenergy.omega_min");

    std::string csv = header_line(hash, seed);
    csv += "omega,y,re_sigma_r,im_sigma_r,im_sigma_k,method\n";
    for (int pass = 0; pass < 2; ++pass) {
        const char* method = pass == 0 ? "discrete" : "gaussian";
        for (long i = 0; i < n; ++i) {
            const double w = w_lo + (w_hi - w_lo) * static_cast<double>(i) / (n - 1);
            const auto s = pass == 0
                               ? fel::selfenergy::sample_discrete(profile, params, w, eps)
                               : fel::selfenergy::sample_gaussian(params, scales, w);
            csv += fmt_double(w) + "," + fmt_double(fel::selfenergy::detuning_y(scales, w)) +
                   "," + fmt_double(s.sigma_r.real()) + "," + fmt_double(s.sigma_r.imag()) +
                   "," + fmt_double(s.sigma_k.imag()) + "," + method + "\n";
        }
    }
    write_text(out / "selfenergy.csv", csv);
    return {"selfenergy.csv"};
}

std::vector<std::string> run_dispersion(const RunConfig& cfg, const fs::path& out,
                                        std::uint64_t hash, std::uint64_t seed) {
    cfg.require_known(
        [] {
            auto v = kBeamKeys;
            v.insert(v.end(), {"seed", "dispersion.bracket_lo", "dispersion.bracket_hi",
                               "dispersion.omega_min", "dispersion.omega_max",
                               "dispersion.n_points"});
            return v;
        }());
    const auto params = beam_params(cfg);
    const auto scales = build_scales(cfg, params);
    const double lo = cfg.get_double("dispersion.bracket_lo");
    const double hi = cfg.get_double("dispersion.bracket_hi");
    if (!(hi > lo))
        throw fel::config_error("config key dispersion.bracket_hi: must exceed dispersion.bracket_lo");

    const auto sol = fel::dispersion::solve_threshold(scales, params, {lo, hi});
    write_json(out / "threshold.json",
               json{{"omega_res", sol.omega_res},
                    {"y_res", sol.y_res},
                    {"im_gamma_at_res", sol.im_gamma_at_res},
                    {"growing", sol.growing},
                    {"residual", sol.residual},
                    {"iterations", sol.iterations},
                    {"multiple_roots", sol.multiple_roots}},
               hash, seed);

    const double w_lo = cfg.get_double_or("dispersion.omega_min", lo);
    const double w_hi = cfg.get_double_or("dispersion.omega_max", hi);
    const long n = cfg.get_int_or("dispersion.n_points", 201);
    if (n < 2) throw fel::config_error("config key dispersion.n_points: need at least 2");
    std::string csv = header_line(hash, seed);
    csv += "omega,re_gamma,im_gamma,growing\n";
    for (long i = 0; i < n; ++i) {
        const double w = w_lo + (w_hi - w_lo) * static_cast<double>(i) / (n - 1);
        const auto g = fel::dispersion::gamma_r_gaussian(scales, params, w);
        csv += fmt_double(w) + "," + fmt_double(g.real()) + "," + fmt_double(g.imag()) + "," +
               (g.imag() < 0.0 ? "1" : "0") + "\n";
    }
    write_text(out / "dispersion.csv", csv);
    return {"threshold.json", "dispersion.csv"};
}

std::vector<std::string> run_pierce(const RunConfig& cfg, const fs::path& out,
                                    std::uint64_t hash, std::uint64_t seed) {
    cfg.require_known({"seed", "beam.eta", "beam.n_electrons", "beam.omega_eta", "pierce.m0",
                       "pierce.degenerate", "pierce.omega_bar"});
    const auto params = beam_params(cfg);
    const int m0 = static_cast<int>(cfg.get_int("pierce.m0"));
    const auto pc = cfg.get_bool_or("pierce.degenerate", false)
                        ? fel::dispersion::pierce_cubic_degenerate(
                              cfg.get_double("pierce.omega_bar"), m0, params)
                        : fel::dispersion::pierce_cubic(m0, params);
    json roots = json::array();
    for (const auto& r : pc.roots) roots.push_back(complex_json(r));
    json j{{"m0", m0}, {"roots", roots}, {"rho_eff", pc.rho_eff}};
    j["unstable_root"] = pc.unstable_root ? complex_json(*pc.unstable_root) : json();
    write_json(out / "pierce.json", j, hash, seed);
    return {"pierce.json"};
}

std::vector<std::string> run_lgk(const RunConfig& cfg, const fs::path& out, std::uint64_t hash,
                                 std::uint64_t seed) {
    cfg.require_known(
        [] {
            auto v = kBeamKeys;
            v.insert(v.end(), {"seed", "dispersion.bracket_lo", "dispersion.bracket_hi",
                               "lgk.expansion_point", "lgk.fd_step", "lgk.lambda_re",
                               "lgk.lambda_im"});
            return v;
        }());
    const auto params = beam_params(cfg);
    const auto scales = build_scales(cfg, params);

    double pt;
    std::string frame;
    if (cfg.has("lgk.expansion_point")) {
        pt = cfg.get_double("lgk.expansion_point");
        frame = "explicit";
    } else {
        // default frame: rotate around the threshold root
        const auto sol = fel::dispersion::solve_threshold(
            scales, params,
            {cfg.get_double("dispersion.bracket_lo"), cfg.get_double("dispersion.bracket_hi")});
        pt = sol.omega_res;
        frame = "threshold_root";
    }
    const double fd_step = cfg.get_double_or("lgk.fd_step", 1e-3 * scales.sigma_omega);
    // default vertex -i: purely dissipative saturation, beta = Re(z)/|z|^2 > 0
    // at any upward crossing of Re Gamma^R
    const std::complex<double> lambda(cfg.get_double_or("lgk.lambda_re", 0.0),
                                      cfg.get_double_or("lgk.lambda_im", -1.0));

    const auto p = fel::lgk::extract_lgk(scales, params, pt, fd_step, lambda);
    const auto c = fel::lgk::to_canonical(p);
    // the stationary modulus needs Re lambda != 0; report null otherwise
    const json amp = (lambda.real() != 0.0) ? json(fel::lgk::stationary_amplitude(p))
                                            : json(nullptr);
    write_json(out / "lgk.json",
               json{{"z_inv", complex_json(p.z_inv)},
                    {"z", complex_json(p.z)},
                    {"arg_z", std::arg(p.z)},
                    {"delta_omega", p.delta_omega},
                    {"kappa", p.kappa},
                    {"r", p.r},
                    {"d_noise", p.d_noise},
                    {"lambda", complex_json(p.lambda_c)},
                    {"stationary_amplitude", amp},
                    {"canonical",
                     json{{"alpha", c.alpha},
                          {"beta", c.beta},
                          {"d_las", c.d_las},
                          {"frame_shift", c.frame_shift}}},
                    {"provenance",
                     json{{"expansion_point", p.expansion_point},
                          {"fd_step", p.fd_step},
                          {"frame", frame},
                          {"method", "gaussian"}}}},
               hash, seed);
    return {"lgk.json"};
}

std::vector<std::string> run_langevin(const RunConfig& cfg, const fs::path& out,
                                      std::uint64_t hash, std::uint64_t seed) {
    cfg.require_known({"seed", "langevin.alpha", "langevin.beta", "langevin.d_las",
                       "langevin.frame_shift", "langevin.dt", "langevin.n_steps",
                       "langevin.n_traj", "langevin.initial_re", "langevin.initial_im",
                       "langevin.burn_in_fraction", "langevin.scheme", "langevin.n_workers",
                       "langevin.thin"});
    fel::lgk::CanonicalLaserParams p{};
    p.alpha = cfg.get_double("langevin.alpha");
    p.beta = cfg.get_double("langevin.beta");
    p.d_las = cfg.get_double("langevin.d_las");
    p.frame_shift = cfg.get_double_or("langevin.frame_shift", 0.0);
    if (p.d_las < 0.0) throw fel::config_error("config key langevin.d_las: must be >= 0");

    fel::langevin::LangevinConfig lc;
    lc.dt = cfg.get_double_or("langevin.dt", 1e-3);
    lc.n_steps = static_cast<std::size_t>(cfg.get_int_or("langevin.n_steps", 10000));
    lc.n_traj = static_cast<std::size_t>(cfg.get_int_or("langevin.n_traj", 1));
    lc.seed = seed;
    lc.initial_amplitude = {cfg.get_double_or("langevin.initial_re", 0.0),
                            cfg.get_double_or("langevin.initial_im", 0.0)};
    lc.burn_in_fraction = cfg.get_double_or("langevin.burn_in_fraction", 0.2);
    const std::string scheme = cfg.get_string_or("langevin.scheme", "heun");
    if (scheme == "heun")
        lc.scheme = fel::langevin::Scheme::heun;
    else if (scheme == "euler_maruyama")
        lc.scheme = fel::langevin::Scheme::euler_maruyama;
    else
        throw fel::config_error(
            "config key langevin.scheme: expected heun or euler_maruyama, got " + scheme);
    lc.n_workers = static_cast<unsigned>(cfg.get_int_or("langevin.n_workers", 1));
    const long thin = cfg.get_int_or("langevin.thin", 1);
    if (thin < 1) throw fel::config_error("config key langevin.thin: must be >= 1");

    const auto traj = fel::langevin::simulate(p, lc);
    const auto stats = fel::langevin::stationary_stats(traj, lc.burn_in_fraction);

    std::string csv = header_line(hash, seed);
    csv += "t,re_a,im_a\n";
    const auto& a = traj.trajectories.front();
    for (std::size_t i = 0; i < a.size(); i += static_cast<std::size_t>(thin))
        csv += fmt_double(static_cast<double>(i) * traj.dt) + "," + fmt_double(a[i].real()) +
               "," + fmt_double(a[i].imag()) + "\n";
    write_text(out / "trajectory.csv", csv);

    write_json(out / "stats.json",
               json{{"mean_mod2", stats.mean_mod2},
                    {"stderr_mod2", stats.stderr_mod2},
                    {"autocorr_time", stats.autocorr_time},
                    {"mean_field", complex_json(stats.mean_field)},
                    {"autocorr_degenerate", stats.autocorr_degenerate},
                    {"config",
                     json{{"alpha", p.alpha},
                          {"beta", p.beta},
                          {"d_las", p.d_las},
                          {"frame_shift", p.frame_shift},
                          {"dt", lc.dt},
                          {"n_steps", lc.n_steps},
                          {"n_traj", lc.n_traj},
                          {"burn_in_fraction", lc.burn_in_fraction},
                          {"scheme", scheme},
                          {"n_workers", lc.n_workers}}}},
               hash, seed);
    return {"trajectory.csv", "stats.json"};
}

std::vector<std::string> run_meanfield(const RunConfig& cfg, const fs::path& out,
                                       std::uint64_t hash, std::uint64_t seed) {
    cfg.require_known({"seed", "beam.eta", "beam.n_electrons", "beam.omega_eta",
                       "meanfield.m0", "meanfield.halfwidth", "meanfield.seed_bunching_re",
                       "meanfield.seed_bunching_im", "meanfield.seed_field_re",
                       "meanfield.seed_field_im", "meanfield.dt", "meanfield.n_steps",
                       "meanfield.record_stride", "meanfield.coupling_enabled"});
    const auto params = beam_params(cfg);
    const auto initial = fel::meanfield::make_cold_state(
        static_cast<int>(cfg.get_int("meanfield.m0")),
        static_cast<int>(cfg.get_int_or("meanfield.halfwidth", 8)),
        {cfg.get_double_or("meanfield.seed_bunching_re", 0.0),
         cfg.get_double_or("meanfield.seed_bunching_im", 0.0)},
        {cfg.get_double_or("meanfield.seed_field_re", 0.0),
         cfg.get_double_or("meanfield.seed_field_im", 0.0)});
    fel::meanfield::MeanFieldConfig mc;
    mc.dt = cfg.get_double_or("meanfield.dt", 1e-3);
    mc.n_steps = static_cast<std::size_t>(cfg.get_int_or("meanfield.n_steps", 1000));
    mc.record_stride = static_cast<std::size_t>(cfg.get_int_or("meanfield.record_stride", 1));
    mc.coupling_enabled = cfg.get_bool_or("meanfield.coupling_enabled", true);

    const auto records = fel::meanfield::integrate(initial, mc, params);
    std::string csv = header_line(hash, seed);
    csv += "t,re_b,im_b,abs_b,re_J,im_J,norm\n";
    for (const auto& r : records)
        csv += fmt_double(r.t) + "," + fmt_double(r.b.real()) + "," + fmt_double(r.b.imag()) +
               "," + fmt_double(std::abs(r.b)) + "," + fmt_double(r.bunching.real()) + "," +
               fmt_double(r.bunching.imag()) + "," + fmt_double(r.norm) + "\n";
    write_text(out / "meanfield.csv", csv);
    return {"meanfield.csv"};
}

using Runner = std::vector<std::string> (*)(const RunConfig&, const fs::path&, std::uint64_t,
                                            std::uint64_t);

Runner find_runner(const std::string& name) {
    if (name == "selfenergy") return run_selfenergy;
    if (name == "dispersion") return run_dispersion;
    if (name == "pierce") return run_pierce;
    if (name == "lgk") return run_lgk;
    if (name == "langevin") return run_langevin;
    if (name == "meanfield") return run_meanfield;
    return nullptr;
}

std::vector<std::string> run_sweep(const RunConfig& cfg, const fs::path& out,
                                   std::uint64_t /*hash*/, std::uint64_t seed, bool resume) {
    const std::string sub = cfg.get_string("sweep.subcommand");
    const Runner runner = find_runner(sub);
    if (!runner)
        throw fel::config_error("config key sweep.subcommand: no such subcommand: " + sub);

    // the swept keys, each with its value list, in sorted-key order
    std::vector<std::pair<std::string, std::vector<double>>> axes;
    RunConfig base;
    for (const auto& [key, value] : cfg.items()) {
        if (key.rfind("sweep.vary.", 0) == 0) {
            axes.emplace_back(key.substr(11), cfg.get_double_list(key));
        } else if (key != "sweep.subcommand") {
            base.set(key, value);
        }
    }
    if (axes.empty()) throw fel::config_error("sweep: no sweep.vary.* keys given");

    std::size_t n_points = 1;
    for (const auto& [key, vals] : axes) n_points *= vals.size();

    std::map<std::size_t, json> completed;
    const fs::path manifest_path = out / "manifest.json";
    if (resume && fs::exists(manifest_path)) {
        std::ifstream in(manifest_path);
        std::string line;
        std::getline(in, line);  // header comment
        json old = json::parse(in);
        for (auto& entry : old["points"])
            completed[entry["index"].get<std::size_t>()] = entry;
    }

    json points = json::array();
    for (std::size_t idx = 0; idx < n_points; ++idx) {
        char dirname[32];
        std::snprintf(dirname, sizeof dirname, "point_%03zu", idx);
        if (auto it = completed.find(idx); it != completed.end()) {
            points.push_back(it->second);
            continue;
        }

        RunConfig point = base;
        json coords;
        std::size_t rest = idx;
        for (const auto& [key, vals] : axes) {
            const std::size_t j = rest % vals.size();
            rest /= vals.size();
            point.set(key, fmt_double(vals[j]));
            coords[key] = vals[j];
        }
        const fs::path dir = out / dirname;
        fs::create_directories(dir);
        const auto files = runner(point, dir, point.hash(), seed);
        points.push_back(json{{"index", idx},
                              {"dir", dirname},
                              {"coords", coords},
                              {"files", files}});
    }

    // written last so a present manifest implies every listed point finished
    write_json(manifest_path, json{{"subcommand", sub}, {"points", points}}, cfg.hash(), seed);
    return {"manifest.json"};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"FEL Keldysh toolkit: self-energies, dispersion, LGK parameters, "
                 "stochastic and mean-field dynamics"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".";
    std::optional<std::uint64_t> seed_override;
    bool resume = false;

    const std::vector<std::string> names = {"selfenergy", "dispersion", "pierce", "lgk",
                                            "langevin",   "meanfield",  "sweep"};
    std::map<std::string, CLI::App*> subs;
    for (const auto& n : names) {
        CLI::App* s = app.add_subcommand(n);
        s->add_option("--config", config_path, "configuration file (key = value lines)")
            ->required();
        s->add_option("--out", out_dir, "output directory");
        s->add_option("--seed", seed_override, "override the config seed");
        if (n == "sweep") s->add_flag("--resume", resume, "skip points already in the manifest");
        subs[n] = s;
    }

    CLI11_PARSE(app, argc, argv);
    const std::string chosen = app.get_subcommands().front()->get_name();

    try {
        RunConfig cfg = RunConfig::parse_file(config_path);
        if (seed_override) cfg.set("seed", std::to_string(*seed_override));
        const std::uint64_t seed = cfg.get_u64_or("seed", 0);
        const std::uint64_t hash = cfg.hash();

        fs::create_directories(out_dir);
        if (chosen == "sweep") {
            run_sweep(cfg, out_dir, hash, seed, resume);
        } else {
            find_runner(chosen)(cfg, out_dir, hash, seed);
        }
        return 0;
    } catch (const fel::numerical_error& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return 3;
    } catch (const fel::config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    }
}
