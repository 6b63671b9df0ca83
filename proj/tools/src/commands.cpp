#include "nematic_cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>

#include "nematic/correlation.hpp"
#include "nematic/dynamics.hpp"
#include "nematic/errors.hpp"
#include "nematic/fixedpoint.hpp"
#include "nematic/snapshot_io.hpp"
#include "nematic/spectral.hpp"
#include "nematic_cli/config.hpp"
#include "nematic_cli/generators.hpp"

#ifndef NEMATIC_VERSION
#define NEMATIC_VERSION "unknown"
#endif

namespace nematic::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

// Everything a command needs besides its own logic: parsed config, output
// directory and the list of files it produced.
class Context {
 public:
  Context(const CliOptions& opt, std::ostream& log) : opt_(opt), log_(log) {
    if (!opt.config.empty()) {
      config_ = Config::load(opt.config);
      base_dir_ = opt.config.parent_path();
    }
    fs::create_directories(opt.out);
  }

  const Config& config() const { return config_; }
  const fs::path& base_dir() const { return base_dir_; }
  const CliOptions& options() const { return opt_; }
  std::ostream& log() { return log_; }

  fs::path resolve(const fs::path& p) const { return p.is_relative() ? base_dir_ / p : p; }

  /// Path under --out, recorded for the manifest.
  fs::path output(const std::string& rel) {
    outputs_.push_back(rel);
    const fs::path p = opt_.out / rel;
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    return p;
  }

  void set_params(const ModelParams& p) { params_ = p; }
  void set_grid(const GridSpec& g) { grid_ = g; }

  void write_manifest(double wall_clock) {
    std::string canon = config_.canonical();
    for (const auto& in : opt_.inputs) canon += "input=" + in.string() + '\n';
    ordered_json m;
    m["software"] = "nematic";
    m["version"] = NEMATIC_VERSION;
    m["command"] = opt_.command;
    m["config_digest"] = fnv1a_hex(canon);
    m["config"] = opt_.config.empty() ? ordered_json(nullptr) : ordered_json(opt_.config.string());
    auto& inputs = m["inputs"] = ordered_json::array();
    for (const auto& in : opt_.inputs) inputs.push_back(in.string());
    if (params_) {
      m["params"] = {{"a", params_->a()}, {"b", params_->b()}, {"c", params_->c()},
                     {"delta", params_->delta()}, {"eta", params_->eta()}};
    }
    if (grid_) m["grid"] = {{"n", grid_->n()}, {"box_len", grid_->box_len()}};
    m["outputs"] = outputs_;
    m["threads"] = opt_.test_mode ? 1 : opt_.threads;
    m["test_mode"] = opt_.test_mode;
    m["wall_clock_seconds"] = opt_.test_mode ? 0.0 : wall_clock;
    std::ofstream out(opt_.out / "manifest.json");
    out << m.dump(2) << '\n';
    if (!out) throw std::runtime_error("cannot write manifest.json");
  }

 private:
  const CliOptions& opt_;
  std::ostream& log_;
  Config config_;
  fs::path base_dir_;
  std::vector<std::string> outputs_;
  std::optional<ModelParams> params_;
  std::optional<GridSpec> grid_;
};

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << std::setprecision(17);
  return out;
}

void write_text(const fs::path& p, const std::string& text) { open_out(p) << text << '\n'; }

std::string numbered(const std::string& stem, std::size_t k, const std::string& ext) {
  std::ostringstream s;
  s << stem << '_' << std::setw(4) << std::setfill('0') << k << ext;
  return s.str();
}

ModelParams read_params(const Config& c) {
  const double a = c.require_double("model", "a");
  const double b = c.require_double("model", "b");
  const double cc = c.require_double("model", "c");
  const double delta = c.get_double("model", "delta", 1.0);
  const double eta = c.get_double("model", "eta", 0.1);
  try {
    return ModelParams(a, b, cc, delta, eta);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(c.origin() + ": [model] " + e.what());
  }
}

GridSpec read_grid(const Config& c) {
  const int n = c.get_int("grid", "n", 0);
  if (!c.has("grid", "n")) throw ConfigError(c.origin() + ": missing required key [grid] n");
  const double box = c.require_double("grid", "box_len");
  try {
    return GridSpec(n, box);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(c.origin() + ": [grid] " + e.what());
  }
}

enum class Equation { Tensor, Scalar, Transformed };

Equation read_equation(const Config& c) {
  const std::string e = c.get("run", "equation").value_or("tensor");
  if (e == "tensor") return Equation::Tensor;
  if (e == "scalar") return Equation::Scalar;
  if (e == "transformed") return Equation::Transformed;
  throw ConfigError(c.origin() + ": [run] equation must be tensor, scalar or transformed, got '" + e + "'");
}

SimConfig blank_run(const GridSpec& grid) { return {grid, 0.01, 1.0, {}, Scheme::ETD2, true}; }

SimConfig read_run(const Config& c, const GridSpec& grid) {
  SimConfig cfg = blank_run(grid);
  cfg.dt = c.require_double("run", "dt");
  cfg.t_final = c.require_double("run", "t_final");
  cfg.snapshot_times = c.get_list("run", "snapshots");
  if (cfg.snapshot_times.empty()) cfg.snapshot_times = {cfg.t_final};
  const std::string scheme = c.get("run", "scheme").value_or("etd2");
  if (scheme == "etd1") {
    cfg.scheme = Scheme::ETD1;
  } else if (scheme == "etd2") {
    cfg.scheme = Scheme::ETD2;
  } else {
    throw ConfigError(c.origin() + ": [run] scheme must be etd1 or etd2, got '" + scheme + "'");
  }
  cfg.reaction = c.get_bool("run", "reaction", true);
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(c.origin() + ": [run] " + e.what());
  }
  return cfg;
}

InitialData read_initial(const Context& ctx, const GridSpec& grid, const ModelParams& p) {
  const std::string spec = ctx.config().require("initial", "generator");
  return generate(GeneratorSpec::parse(spec), grid, p, ctx.base_dir());
}

template <class Field>
void write_diagnostics(const fs::path& path, const Trajectory<Field>& traj) {
  auto out = open_out(path);
  out << "t,energy,l2norm,linfnorm\n";
  for (const auto& d : traj.diagnostics) out << d.t << ',' << d.energy << ',' << d.l2norm << ',' << d.linfnorm << '\n';
}

template <class Field>
void write_trajectory(Context& ctx, const Trajectory<Field>& traj) {
  const char* ext = Field::kComponents == 1 ? ".qsf1" : ".qtf1";
  std::ostringstream index;
  index << std::setprecision(17) << "index,t,file";
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
    const std::string rel = numbered("snapshots/snap", k, ext);
    write_snapshot(ctx.output(rel), traj.snapshots[k]);
    index << '\n' << k << ',' << traj.snapshots[k].time() << ',' << rel;
  }
  write_text(ctx.output("snapshots.csv"), index.str());
  write_diagnostics(ctx.output("diagnostics.csv"), traj);
}

struct IndexedSnapshot {
  double t;
  fs::path path;
};

/// Reads the snapshots.csv index of a trajectory directory.
std::vector<IndexedSnapshot> read_index(const fs::path& dir) {
  const fs::path idx = dir / "snapshots.csv";
  std::ifstream in(idx);
  if (!in) throw MissingInput("no snapshot index " + idx.string());
  std::string line;
  std::getline(in, line);
  if (line != "index,t,file") throw FormatError(idx.string() + ": bad header");
  std::vector<IndexedSnapshot> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string k, t, file;
    if (!std::getline(row, k, ',') || !std::getline(row, t, ',') || !std::getline(row, file)) {
      throw FormatError(idx.string() + ": malformed row '" + line + "'");
    }
    try {
      out.push_back({std::stod(t), dir / file});
    } catch (const std::exception&) {
      throw FormatError(idx.string() + ": malformed time '" + t + "'");
    }
  }
  return out;
}

const IndexedSnapshot& pick(const std::vector<IndexedSnapshot>& index, double t, const fs::path& dir) {
  for (const auto& s : index)
    if (std::abs(s.t - t) <= 1e-9 * (1.0 + std::abs(t))) return s;
  std::ostringstream msg;
  msg << "no snapshot at t = " << t << " in " << dir.string() << "; available:";
  for (const auto& s : index) msg << ' ' << s.t;
  throw MissingInput(msg.str());
}

/// Fields named by the command line or [correlate] input, expanded through
/// trajectory directories and the optional [correlate] times list.
std::vector<TensorField> correlate_inputs(const Context& ctx) {
  std::vector<fs::path> paths = ctx.options().inputs;
  for (const auto& e : ctx.config().all("correlate", "input")) paths.push_back(ctx.resolve(e.value));
  if (paths.empty()) throw ConfigError("correlate: no inputs (pass paths or set [correlate] input)");
  const std::vector<double> times = ctx.config().get_list("correlate", "times");
  std::vector<TensorField> fields;
  for (const auto& p : paths) {
    if (fs::is_directory(p)) {
      const auto index = read_index(p);
      if (times.empty()) {
        for (const auto& s : index) fields.push_back(read_snapshot_as_tensor(s.path));
      } else {
        for (double t : times) fields.push_back(read_snapshot_as_tensor(pick(index, t, p).path));
      }
    } else {
      if (!fs::exists(p)) throw MissingInput("no such input " + p.string());
      fields.push_back(read_snapshot_as_tensor(p));
    }
  }
  return fields;
}

void write_profile(Context& ctx, std::size_t k, const CorrelationProfile& prof, const RegimeFit* fit = nullptr) {
  write_profile_csv(ctx.output(numbered("profile", k, ".csv")), prof);
  write_text(ctx.output(numbered("profile", k, ".json")), profile_sidecar_json(prof, fit));
}

ordered_json verdict_json(const RateFit& fit, std::size_t samples, double threshold, double min_r2) {
  const bool pass = fit.slope <= threshold && fit.r_squared >= min_r2;
  ordered_json j;
  j["slope"] = fit.slope;
  j["r_squared"] = fit.r_squared;
  j["samples"] = samples;
  j["threshold"] = threshold;
  j["min_r_squared"] = min_r2;
  j["verdict"] = pass ? "pass" : "fail";
  return j;
}

void write_errors_csv(const fs::path& path, const std::vector<std::pair<double, double>>& errors) {
  auto out = open_out(path);
  out << "t,e\n";
  for (const auto& [t, e] : errors) out << t << ',' << e << '\n';
}

// ---------------------------------------------------------------------------

void cmd_simulate(Context& ctx) {
  const Config& c = ctx.config();
  const ModelParams p = read_params(c);
  const GridSpec grid = read_grid(c);
  ctx.set_params(p);
  ctx.set_grid(grid);
  const SimConfig run = read_run(c, grid);
  const InitialData init = read_initial(ctx, grid, p);
  switch (read_equation(c)) {
    case Equation::Tensor: {
      const auto traj = evolve_tensor(init.as_tensor(), p, run);
      write_trajectory(ctx, traj);
      break;
    }
    case Equation::Scalar: {
      const auto traj = evolve_scalar(init.as_scalar(), p, run);
      write_trajectory(ctx, traj);
      break;
    }
    case Equation::Transformed: {
      const auto traj = evolve_transformed(to_transformed(init.as_tensor(), p), p, run);
      write_trajectory(ctx, traj);
      break;
    }
  }
  ctx.log() << "simulate: " << run.snapshot_times.size() << " snapshots to t = " << run.t_final << '\n';
}

void cmd_correlate(Context& ctx) {
  const auto fields = correlate_inputs(ctx);
  for (std::size_t k = 0; k < fields.size(); ++k) {
    if (k == 0) ctx.set_grid(fields[k].grid());
    write_profile(ctx, k, correlate_single(fields[k]));
  }
  ctx.log() << "correlate: " << fields.size() << " profiles\n";
}

void cmd_ensemble(Context& ctx) {
  const Config& c = ctx.config();
  const ModelParams p = read_params(c);
  const GridSpec grid = read_grid(c);
  ctx.set_params(p);
  ctx.set_grid(grid);

  const auto members = c.all("ensemble", "member");
  if (members.empty()) throw ConfigError(c.origin() + ": [ensemble] needs at least one member");
  std::vector<double> weights;
  std::vector<TensorField> initial;
  for (const auto& m : members) {
    std::istringstream in(m.value);
    double w = 0.0;
    std::string rest;
    if (!(in >> w)) throw ConfigError(c.origin() + ":" + std::to_string(m.line) + ": member must start with a weight");
    std::getline(in, rest);
    weights.push_back(w);
    initial.push_back(generate(GeneratorSpec::parse(rest), grid, p, ctx.base_dir()).as_tensor());
  }
  try {
    check_ensemble_weights(weights);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(c.origin() + ": [ensemble] " + e.what());
  }

  std::vector<CorrelationProfile> profiles;
  std::vector<double> times = c.get_list("ensemble", "times");
  if (times.empty()) {
    std::vector<const TensorField*> ptrs;
    for (const auto& f : initial) ptrs.push_back(&f);
    profiles.push_back(ensemble_correlate(ptrs, weights));
  } else {
    std::sort(times.begin(), times.end());
    SimConfig run = blank_run(grid);
    run.dt = c.require_double("run", "dt");
    run.t_final = c.get_double("run", "t_final", times.back());
    run.snapshot_times = times;
    run.reaction = c.get_bool("run", "reaction", true);
    run.scheme = c.get("run", "scheme").value_or("etd2") == "etd1" ? Scheme::ETD1 : Scheme::ETD2;
    try {
      run.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(c.origin() + ": [ensemble]/[run] " + e.what());
    }
    const Equation eq = read_equation(c);
    if (eq == Equation::Scalar) throw ConfigError(c.origin() + ": ensembles run the tensor or transformed equation");
    std::vector<TensorTrajectory> trajs;
    for (std::size_t j = 0; j < initial.size(); ++j) {
      trajs.push_back(eq == Equation::Tensor ? evolve_tensor(initial[j], p, run)
                                             : evolve_transformed(to_transformed(initial[j], p), p, run));
      ctx.log() << "ensemble: member " << j << " done\n";
    }
    for (double t : times) profiles.push_back(ensemble_correlate(trajs, weights, t));
  }

  std::optional<RegimeFit> fit;
  if (c.has_section("regime")) {
    const std::string kind = c.get("regime", "kind").value_or("gaussian");
    if (kind != "gaussian") throw ConfigError(c.origin() + ": [regime] kind for ensembles must be gaussian");
    std::optional<double> r_max;
    if (c.has("regime", "r_max")) r_max = c.get_double("regime", "r_max", 0.0);
    fit.emplace();
    for (const auto& prof : profiles) fit->errors.emplace_back(prof.t, gaussian_regime_error(prof, r_max));
    const RateFit rf = rate_fit(fit->errors);
    fit->slope = rf.slope;
    fit->r_squared = rf.r_squared;
    fit->t_begin = fit->errors.front().first;
    fit->t_end = fit->errors.back().first;
    write_errors_csv(ctx.output("errors.csv"), fit->errors);
    write_text(ctx.output("regime.json"),
               verdict_json(rf, fit->errors.size(), c.get_double("regime", "threshold", -0.35),
                            c.get_double("regime", "min_r_squared", 0.0))
                   .dump(2));
  }
  for (std::size_t k = 0; k < profiles.size(); ++k) write_profile(ctx, k, profiles[k], fit ? &*fit : nullptr);
  ctx.log() << "ensemble: " << profiles.size() << " profiles from " << members.size() << " members\n";
}

void cmd_regime(Context& ctx) {
  const Config& c = ctx.config();
  std::vector<fs::path> paths = ctx.options().inputs;
  for (const auto& e : c.all("regime", "errors")) paths.push_back(ctx.resolve(e.value));
  if (paths.size() != 1) throw ConfigError("regime: expected exactly one error series (path or [regime] errors)");
  std::ifstream in(paths[0]);
  if (!in) throw MissingInput("cannot open error series " + paths[0].string());
  std::string line;
  std::getline(in, line);
  if (line != "t,e") throw FormatError(paths[0].string() + ": expected header 't,e'");
  std::vector<std::pair<double, double>> errors;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    try {
      if (comma == std::string::npos) throw std::invalid_argument("no comma");
      errors.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw FormatError(paths[0].string() + ": malformed row '" + line + "'");
    }
  }
  const double threshold = c.get_double("regime", "threshold", -0.35);
  const double min_r2 = c.get_double("regime", "min_r_squared", 0.0);
  const RateFit rf = rate_fit(errors);
  const auto j = verdict_json(rf, errors.size(), threshold, min_r2);
  write_text(ctx.output("regime.json"), j.dump(2));
  ctx.log() << "regime: slope " << rf.slope << ", r^2 " << rf.r_squared << ", verdict "
            << j["verdict"].get<std::string>() << '\n';
}

void cmd_decompose(Context& ctx) {
  const Config& c = ctx.config();
  const ModelParams p = read_params(c);
  const GridSpec grid = read_grid(c);
  ctx.set_params(p);
  ctx.set_grid(grid);
  const TensorField q0 = read_initial(ctx, grid, p).as_tensor();

  const std::vector<double> extra = c.get_list("decompose", "times");
  double horizon = TimeGrid::default_horizon(p.a());
  for (double t : extra) horizon = std::max(horizon, t);
  horizon = c.get_double("decompose", "horizon", horizon);
  const double t_first = c.get_double("decompose", "t_first", 0.005);
  const double rho = c.get_double("decompose", "rho", 1.07);
  if (!(t_first > 0.0) || !(rho > 1.0) || !(horizon > t_first)) {
    throw ConfigError(c.origin() + ": [decompose] need t_first > 0, rho > 1 and horizon > t_first");
  }
  const TimeGrid times = TimeGrid::geometric(t_first, rho, horizon, extra);

  PicardOptions opt;
  opt.max_iter = c.get_int("decompose", "max_iter", opt.max_iter);
  opt.tol = c.get_double("decompose", "tol", 1e-10);
  opt.eps0 = c.get_double("decompose", "eps0", opt.eps0);
  opt.reaction = c.get_bool("run", "reaction", true);
  const DecompositionState s = picard_solve(q0, p, times, opt);

  const fs::path dir = ctx.output("decomposition");
  save_decomposition(dir, s, p);

  ordered_json j;
  const auto a = s.A.components();
  j["A"] = {{"q11", a[0]}, {"q22", a[1]}, {"q12", a[2]}, {"q13", a[3]}, {"q23", a[4]}};
  j["A_norm"] = frobenius_norm(s.A);
  j["iterations"] = s.iterations;
  j["converged"] = s.converged;
  j["small_data"] = s.small_data;
  j["max_ratio"] = s.ratios.empty() ? 0.0 : *std::max_element(s.ratios.begin(), s.ratios.end());
  j["nodes"] = times.size();
  try {
    const VDecayReport v = v_decay_check(s);
    j["v_decay"] = {{"slope", v.slope}, {"r_squared", v.r_squared}, {"threshold", v.threshold},
                    {"passed", v.passed}};
  } catch (const std::invalid_argument& e) {
    j["v_decay"] = {{"skipped", e.what()}};
  }
  write_text(ctx.output("summary.json"), j.dump(2));
  ctx.log() << "decompose: " << s.iterations << " iterations, converged " << (s.converged ? "yes" : "no") << '\n';
}

void cmd_fronts(Context& ctx) {
  const Config& c = ctx.config();
  const ModelParams p = read_params(c);
  ctx.set_params(p);

  std::optional<ScalarTrajectory> traj;
  if (!ctx.options().inputs.empty()) {
    if (ctx.options().inputs.size() != 1) throw ConfigError("fronts: expected one trajectory directory");
    const fs::path dir = ctx.options().inputs.front();
    const auto index = read_index(dir);
    if (index.empty()) throw MissingInput("no snapshots in " + dir.string());
    std::vector<ScalarField> snaps;
    for (const auto& s : index) snaps.push_back(read_scalar_snapshot(s.path));
    SimConfig cfg = blank_run(snaps.front().grid());
    cfg.t_final = snaps.back().time();
    traj.emplace(ScalarTrajectory{cfg, p, std::move(snaps), {}, false});
  } else {
    const GridSpec grid = read_grid(c);
    const SimConfig run = read_run(c, grid);
    traj.emplace(evolve_scalar(read_initial(ctx, grid, p).as_scalar(), p, run));
    write_trajectory(ctx, *traj);
  }
  ctx.set_grid(traj->config.grid);

  const double level = c.get_double("fronts", "level", std::abs(lambda_star(p)) / 2.0);
  const double t_begin = c.get_double("fronts", "t_begin", 0.0);
  const double t_end = c.get_double("fronts", "t_end", traj->snapshots.back().time());
  const FrontFit fit = front_speed(*traj, level, t_begin, t_end);

  std::vector<std::pair<double, double>> errors;
  auto csv = open_out(ctx.output("fronts.csv"));
  csv << "t,radius,ballistic_error\n";
  for (const auto& snap : traj->snapshots) {
    const double t = snap.time();
    if (t < t_begin - 1e-12 || t > t_end + 1e-12) continue;
    const auto r = front_radius(snap, level);
    csv << t << ',';
    if (r) csv << *r;
    csv << ',';
    if (t > 0.0 && fit.c_bar > 0.0) {
      const double e = ballistic_regime_error(correlate_single(snap), fit.c_bar);
      errors.emplace_back(t, e);
      csv << e;
    }
    csv << '\n';
  }
  bool decreasing = errors.size() >= 2;
  for (std::size_t i = 1; i < errors.size(); ++i) decreasing = decreasing && errors[i].second < errors[i - 1].second;

  ordered_json j;
  j["level"] = level;
  j["c_bar"] = fit.c_bar;
  j["intercept"] = fit.intercept;
  j["fit_residual"] = fit.fit_residual;
  j["window"] = {t_begin, t_end};
  j["ballistic_error_decreasing"] = decreasing;
  write_text(ctx.output("fronts.json"), j.dump(2));
  ctx.log() << "fronts: c_bar " << fit.c_bar << ", residual " << fit.fit_residual << '\n';
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"simulate", "correlate", "ensemble", "decompose", "regime", "fronts"};
  return names;
}

int run_command(const CliOptions& opt, std::ostream& log, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  try {
    const bool needs_config = opt.command == "simulate" || opt.command == "ensemble" ||
                              opt.command == "decompose" || opt.command == "fronts";
    if (needs_config && opt.config.empty()) throw ConfigError(opt.command + " requires --config");
    if (opt.threads < 1) throw ConfigError("--threads must be at least 1");
    set_fft_threads(opt.test_mode ? 1 : opt.threads);

    Context ctx(opt, log);
    if (opt.command == "simulate") {
      cmd_simulate(ctx);
    } else if (opt.command == "correlate") {
      cmd_correlate(ctx);
    } else if (opt.command == "ensemble") {
      cmd_ensemble(ctx);
    } else if (opt.command == "decompose") {
      cmd_decompose(ctx);
    } else if (opt.command == "regime") {
      cmd_regime(ctx);
    } else if (opt.command == "fronts") {
      cmd_fronts(ctx);
    } else {
      throw ConfigError("unknown command '" + opt.command + "'");
    }
    const std::chrono::duration<double> wall = std::chrono::steady_clock::now() - start;
    ctx.write_manifest(wall.count());
    return kSuccess;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const NumericAbort& e) {
    err << "numeric abort at t = " << e.time() << ": " << e.what() << '\n';
    return kNumericAbort;
  } catch (const MissingInput& e) {
    err << "missing input: " << e.what() << '\n';
    return kMissingInput;
  } catch (const FormatError& e) {
    err << "bad input: " << e.what() << '\n';
    return kMissingInput;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace nematic::cli
