// Command-line front end: codebook inspection, single localizations, and the
// Monte-Carlo campaigns (simulate / sweep / track).

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hbloc/report.hpp"
#include "hbloc/rng.hpp"

namespace {

using namespace hbloc;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitDomain = 2;
constexpr int kExitIo = 3;

struct CommonOpts {
  std::string preset;
  std::string config_path;
  std::string mode;
  std::string codebook;
  double noise_dbm = 0.0;
  bool noise_set = false;
  int threads = 1;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_threads = true) {
  cmd->add_option("--preset", opts.preset,
                  "Scenario preset: scenario1, scenario2, scenario1-track, scenario2-track");
  cmd->add_option("--config", opts.config_path, "Scenario config file (JSON)");
  cmd->add_option("--mode", opts.mode, "Search mode: measured, ideal, perfect-phase1");
  cmd->add_option("--codebook", opts.codebook, "Direction codebook: bfr or rbfr");
  cmd->add_option("--noise-dbm", opts.noise_dbm, "AWGN power at the RX (dBm)")
      ->each([&](const std::string&) { opts.noise_set = true; });
  if (with_threads) cmd->add_option("--threads", opts.threads, "Worker threads");
}

Scenario resolve_scenario(const CommonOpts& opts) {
  Scenario cfg;
  if (!opts.config_path.empty()) {
    std::ifstream in(opts.config_path);
    if (!in) throw std::ios_base::failure("cannot read config: " + opts.config_path);
    nlohmann::json j;
    in >> j;
    cfg = Scenario::from_json(j);
  } else if (!opts.preset.empty()) {
    cfg = Scenario::preset(opts.preset);
  } else {
    cfg = Scenario::preset("scenario1");
  }
  if (!opts.mode.empty()) cfg.mode = search_mode_from_string(opts.mode);
  if (!opts.codebook.empty()) cfg.codebook_kind = codebook_kind_from_string(opts.codebook);
  if (opts.noise_set) cfg.noise = NoiseModel::awgn_dbm(opts.noise_dbm);
  cfg.validate();
  if (cfg.alpha < 0.25 || cfg.alpha > 0.5)
    std::cerr << "warning: alpha=" << cfg.alpha << " outside [0.25, 0.5]\n";
  return cfg;
}

std::vector<double> parse_range(const std::string& spec) {
  // "start:step:stop", inclusive of stop when it lands on the grid.
  double start = 0.0, step = 0.0, stop = 0.0;
  char c1 = 0, c2 = 0;
  std::istringstream in(spec);
  if (!(in >> start >> c1 >> step >> c2 >> stop) || c1 != ':' || c2 != ':' || step <= 0.0)
    throw ConfigError("expected start:step:stop with positive step: " + spec);
  std::vector<double> out;
  for (double v = start; v <= stop + 1e-9; v += step) out.push_back(v);
  if (out.empty()) throw ConfigError("empty range: " + spec);
  return out;
}

std::vector<int> parse_int_list(const std::string& spec) {
  std::vector<int> out;
  std::istringstream in(spec);
  std::string token;
  while (std::getline(in, token, ',')) out.push_back(std::stoi(token));
  if (out.empty()) throw ConfigError("empty list: " + spec);
  return out;
}

int cmd_codebook(const CommonOpts& opts, const std::string& kind_name, const std::string& out) {
  const Scenario cfg = resolve_scenario(opts);
  const CodebookKind kind =
      kind_name.empty() ? cfg.codebook_kind : codebook_kind_from_string(kind_name);

  nlohmann::json dump;
  if (kind == CodebookKind::bfc) {
    const FocusCodebook cb = build_bfc(cfg.d0, cfg.alpha, cfg.levels_focus, cfg.k());
    dump = cb.to_json();
    std::cout << "level  codewords  d_f(l,1) [m]  r_max [m]\n";
    for (const auto& row : cb.levels)
      std::cout << row.front().level << "      " << row.size() << "          "
                << format_double(row.front().d_f) << "      " << format_double(row.front().r_max)
                << '\n';
  } else {
    const auto geom = ArrayGeometry::half_wavelength(1 << cfg.levels_direction, cfg.carrier_hz);
    DirectionCodebook cb = build_bfr(geom, cfg.levels_direction);
    if (kind == CodebookKind::rbfr) cb = build_rbfr(cb, cfg.rbfr_freeze_level);
    dump = cb.to_json();
    std::cout << "level  codewords  w [m]\n";
    for (const auto& row : cb.levels)
      std::cout << row.front().level << "      " << row.size() << "          "
                << format_double(row.front().w) << '\n';
  }
  if (!out.empty()) write_file(out, dump.dump(2) + "\n");
  return kExitOk;
}

int cmd_localize(const CommonOpts& opts, double theta_deg, double distance_m,
                 std::uint64_t seed, bool with_trace, const std::string& out) {
  const Scenario cfg = resolve_scenario(opts);
  const CompiledScenario sc = compile(cfg);
  const RxGroundTruth rx = RxGroundTruth::polar(deg_to_rad(theta_deg), distance_m);
  std::mt19937_64 rng = derive_rng(seed, 0);
  const LocalizeResult result = localize(sc, rx, cfg.mode, rng);

  nlohmann::json j = {
      {"version", kVersion},
      {"seed", seed},
      {"rx", {{"theta_deg", theta_deg}, {"distance_m", distance_m}}},
      {"estimate",
       {{"theta_deg", rad_to_deg(result.estimate.theta_hat)},
        {"distance_m", result.estimate.d_hat},
        {"x_m", result.estimate.position.x},
        {"z_m", result.estimate.position.z}}},
      {"error_m", result.estimate.error},
      {"pilots", result.trace.pilot_count()},
      {"success", is_success(result.estimate.error, sc.resolution())},
      {"resolution_m", sc.resolution()},
      {"config", cfg.to_json()},
  };
  if (with_trace) j["trace"] = result.trace.to_json_lines();
  const std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!out.empty()) write_file(out, text);
  return kExitOk;
}

int cmd_simulate(const CommonOpts& opts, int n, std::uint64_t seed, const std::string& out) {
  const Scenario cfg = resolve_scenario(opts);
  const CompiledScenario sc = compile(cfg);
  const ErrorStats stats = run_campaign(sc, n, seed, opts.threads);
  const nlohmann::json summary = summary_json(cfg, stats, n, seed);
  std::cout << summary.dump(2) << '\n';
  if (!out.empty()) {
    write_file(out + "_cdf.csv", cdf_csv(stats));
    write_file(out + "_summary.json", summary.dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_sweep(const CommonOpts& opts, const std::string& noise_spec,
              const std::string& level_spec, int n, std::uint64_t seed, const std::string& out) {
  const Scenario cfg = resolve_scenario(opts);
  if (noise_spec.empty() == level_spec.empty())
    throw ConfigError("sweep needs exactly one of --noise or --levels");

  std::string csv;
  if (!noise_spec.empty()) {
    csv = noise_sweep_csv(noise_sweep(cfg, parse_range(noise_spec), n, seed, opts.threads));
  } else {
    csv = level_sweep_csv(level_sweep(cfg, parse_int_list(level_spec), n, seed, opts.threads));
  }
  std::cout << csv;
  if (!out.empty()) write_file(out, csv);
  return kExitOk;
}

int cmd_track(const CommonOpts& opts, int n, std::uint64_t seed, const std::string& out) {
  const Scenario cfg = resolve_scenario(opts);
  const CompiledScenario sc = compile(cfg);
  const TrackCampaignResult result = run_track_campaign(sc, n, seed, opts.threads);
  const nlohmann::json summary = summary_json(cfg, result.stats, n, seed);
  std::cout << summary.dump(2) << '\n';
  if (!out.empty()) {
    write_file(out + "_epochs.csv", track_csv(result));
    write_file(out + "_summary.json", summary.dump(2) + "\n");
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hierarchical beam-forming/beam-focusing localization simulator"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::uint64_t seed = 42;
  int n = 10000;
  std::string out;

  auto* codebook = app.add_subcommand("codebook", "Dump a codebook as JSON + level table");
  std::string cb_kind;
  add_common(codebook, opts, false);
  codebook->add_option("--kind", cb_kind, "Codebook to dump: bfr, rbfr, or bfc");
  codebook->add_option("--out", out, "JSON output path");

  auto* loc = app.add_subcommand("localize", "Run the two-phase search for a single RX");
  double theta_deg = 0.0, distance_m = 2.5;
  bool with_trace = false;
  add_common(loc, opts, false);
  loc->add_option("--theta-deg", theta_deg, "True RX angle (deg)");
  loc->add_option("--distance-m", distance_m, "True RX distance (m)");
  loc->add_option("--seed", seed, "RNG seed");
  loc->add_flag("--trace", with_trace, "Include the per-pilot search trace");
  loc->add_option("--out", out, "JSON output path");

  auto* sim = app.add_subcommand("simulate", "Monte-Carlo localization campaign");
  add_common(sim, opts);
  sim->add_option("--n", n, "Iterations");
  sim->add_option("--seed", seed, "Master seed");
  sim->add_option("--out", out, "Output prefix (<out>_cdf.csv, <out>_summary.json)");

  auto* sweep = app.add_subcommand("sweep", "Noise or last-level sweep");
  std::string noise_spec, level_spec;
  add_common(sweep, opts);
  sweep->add_option("--noise", noise_spec, "AWGN sweep, dBm start:step:stop");
  sweep->add_option("--levels", level_spec, "Last Bfc level list, e.g. 4,5,6,7,8");
  sweep->add_option("--n", n, "Iterations per sweep point");
  sweep->add_option("--seed", seed, "Master seed");
  sweep->add_option("--out", out, "CSV output path");

  auto* track = app.add_subcommand("track", "Mobile-user tracking campaign");
  add_common(track, opts);
  track->add_option("--n", n, "Trajectories");
  track->add_option("--seed", seed, "Master seed");
  track->add_option("--out", out, "Output prefix (<out>_epochs.csv, <out>_summary.json)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (codebook->parsed()) return cmd_codebook(opts, cb_kind, out);
    if (loc->parsed()) return cmd_localize(opts, theta_deg, distance_m, seed, with_trace, out);
    if (sim->parsed()) return cmd_simulate(opts, n, seed, out);
    if (sweep->parsed()) return cmd_sweep(opts, noise_spec, level_spec, n, seed, out);
    if (track->parsed()) return cmd_track(opts, n, seed, out);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitOk;
}
