// Copyright 2026 The collidekit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "collidekit/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "collidekit/channel.hpp"
#include "collidekit/collision.hpp"
#include "collidekit/entanglement.hpp"
#include "collidekit/errors.hpp"
#include "collidekit/io.hpp"
#include "collidekit/random.hpp"
#include "collidekit/semigroup.hpp"

namespace collidekit::cli {
namespace {

using io::format_double;
using io::json;

/// A configuration problem detected by the front end itself.
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class Kind { kNumber, kInteger, kString, kJson };

struct Flag {
  const char* name;  // without leading dashes
  const char* key;   // JSON config key
  Kind kind;
  const char* help;
};

struct Context {
  json cfg;
  Rng rng;
  double tol;
  std::ostream* out;
  std::ostream* summary;
};

// ---------------------------------------------------------------- config

template <typename T>
T get_or(const json& cfg, const char* key, T fallback) {
  if (!cfg.contains(key) || cfg.at(key).is_null()) return fallback;
  try {
    return cfg.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config key '") + key + "' has the wrong type");
  }
}

template <typename T>
T require(const json& cfg, const char* key) {
  if (!cfg.contains(key) || cfg.at(key).is_null()) throw ConfigError(std::string("missing required key '") + key + "'");
  return get_or<T>(cfg, key, T{});
}

DensityOperator state_from(const json& spec, Rng& rng) {
  if (spec.is_string()) {
    if (spec.get<std::string>() == "random") return random_density(2, rng);
    throw ConfigError("state string must be \"random\"");
  }
  return io::density_from_json(spec);
}

DensityOperator state_key(Context& ctx, const char* key, const json& fallback) {
  return state_from(ctx.cfg.contains(key) ? ctx.cfg.at(key) : fallback, ctx.rng);
}

Eigen::Vector2cd amplitudes_from(const json& spec, Rng& rng) {
  if (spec.is_string()) {
    if (spec.get<std::string>() == "random") return random_pure_vector(2, rng);
    throw ConfigError("amplitude string must be \"random\"");
  }
  if (!spec.is_array() || spec.size() != 2) throw ConfigError("amplitudes must be a list of two entries");
  Eigen::Vector2cd v;
  for (int i = 0; i < 2; ++i) {
    const auto& e = spec[static_cast<std::size_t>(i)];
    if (e.is_number()) {
      v(i) = e.get<double>();
    } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
      v(i) = Complex(e[0].get<double>(), e[1].get<double>());
    } else {
      throw ConfigError("amplitude entries must be numbers or [re, im] pairs");
    }
  }
  if (std::abs(v.norm() - 1.0) > 1e-12) throw ConfigError("amplitudes must be normalized");
  return v;
}

ControlledUnitary controlled_from(const json& cfg) {
  if (cfg.contains("targets")) {
    ControlledUnitary cu;
    for (const auto& t : cfg.at("targets")) cu.targets.push_back(io::matrix_from_json(t));
    const int d = static_cast<int>(cu.targets.size());
    cu.control_basis = cfg.contains("basis") ? io::matrix_from_json(cfg.at("basis")) : ComplexMatrix::Identity(d, d);
    cu.validate();
    return cu;
  }
  const std::string gate = get_or<std::string>(cfg, "gate", "ctrl_z");
  if (gate == "ctrl_z") return ctrl_z();
  if (gate == "ctrl_not") return ctrl_not();
  throw ConfigError("gate must be ctrl_z or ctrl_not (or give \"targets\")");
}

PauliTransferMatrix channel_from(Context& ctx) {
  const json& cfg = ctx.cfg;
  if (cfg.contains("ptm")) return io::ptm_from_json(cfg.at("ptm"));
  if (cfg.contains("kraus")) return channel_from_kraus(io::kraus_from_json(cfg.at("kraus")));
  if (cfg.contains("preset")) {
    const auto name = cfg.at("preset").get<std::string>();
    if (name == "universal_not") return channels::universal_not();
    if (name == "transpose") return channels::transpose();
    if (name == "identity") return channels::identity();
    throw ConfigError("preset must be universal_not, transpose or identity");
  }
  const DensityOperator xi = state_key(ctx, "xi", json::array({0.0, 0.0, 1.0}));
  if (cfg.contains("eta")) return channel_from_collision(partial_swap_unitary(cfg.at("eta").get<double>(), 2), xi);
  if (cfg.contains("unitary")) return channel_from_collision(io::matrix_from_json(cfg.at("unitary")), xi);
  if (cfg.contains("gate") || cfg.contains("targets")) {
    return channel_from_collision(controlled_unitary(controlled_from(cfg)), xi);
  }
  throw ConfigError("no channel source: give ptm, kraus, preset, eta, unitary, gate or targets");
}

void emit_summary(Context& ctx, const json& summary) { *ctx.summary << summary.dump(2) << '\n'; }

// -------------------------------------------------------------- commands

int cmd_homogenize(Context& ctx) {
  const double eta = require<double>(ctx.cfg, "eta");
  const int n_steps = require<int>(ctx.cfg, "n_steps");
  const int stride = get_or<int>(ctx.cfg, "stride", 1);
  const DensityOperator xi = state_key(ctx, "xi", json::array({0.0, 0.0, 1.0}));
  const DensityOperator rho = state_key(ctx, "rho", json::array({0.0, 0.0, -1.0}));

  const Trajectory traj = run_homogenization(rho, xi, eta, n_steps, stride);
  io::write_trajectory_csv(*ctx.out, traj);

  const double c = std::abs(std::cos(eta));
  double max_d_res = 0.0;
  int violations = 0;
  for (const auto& s : traj.steps) {
    max_d_res = std::max(max_d_res, s.d_res);
    if (s.d_sys > std::sqrt(2.0) * std::pow(c, s.n) + ctx.tol) ++violations;
  }
  json summary = {{"command", "homogenize"}, {"eta", eta}, {"n_steps", n_steps},
                  {"observed_max_D_res", max_d_res}, {"convergence_bound_violations", violations}};
  try {
    const auto b = homogenization_bounds(eta);
    summary["delta"] = b.delta;
    summary["N_delta"] = b.n_delta;
    summary["D_res_below_delta"] = max_d_res < b.delta;
    json reached = nullptr;
    for (const auto& s : traj.steps) {
      if (s.d_sys <= b.delta) {
        reached = s.n;
        break;
      }
    }
    summary["steps_to_delta"] = reached;
  } catch (const BoundUndefinedError&) {
    summary["delta"] = nullptr;
    summary["N_delta"] = nullptr;
    summary["steps_to_delta"] = nullptr;
  }
  emit_summary(ctx, summary);
  return kOk;
}

int cmd_decohere(Context& ctx) {
  const int n_steps = require<int>(ctx.cfg, "n_steps");
  const int stride = get_or<int>(ctx.cfg, "stride", 1);
  const ControlledUnitary cu = controlled_from(ctx.cfg);
  const DensityOperator xi = state_key(ctx, "xi", json::array({1.0, 0.0, 0.0}));
  const DensityOperator rho = state_key(ctx, "rho", json::array({1.0, 0.0, 0.0}));

  const Trajectory traj = run_decoherence(rho, xi, cu, n_steps, stride);
  io::write_trajectory_csv(*ctx.out, traj, cu.control_basis);

  // Least-squares slope of ln|rho_01| against n over the nonzero samples.
  const double c0 = std::abs(in_basis(traj.steps.front().system, cu.control_basis)(0, 1));
  std::vector<double> xs, ys;
  bool vanished = false;
  for (const auto& s : traj.steps) {
    const double v = std::abs(in_basis(s.system, cu.control_basis)(0, 1));
    if (v > 1e-290) {
      xs.push_back(s.n);
      ys.push_back(std::log(v));
    } else if (s.n > 0) {
      vanished = true;
    }
  }
  json fitted = nullptr;
  if (c0 > 1e-290 && vanished) {
    fitted = 0.0;
  } else if (xs.size() >= 2) {
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
    }
    fitted = std::exp((n * sxy - sx * sy) / (n * sxx - sx * sx));
  }
  json summary = {{"command", "decohere"}, {"n_steps", n_steps}, {"fitted_decay", fitted}};
  if (cu.system_dim() == 2 && cu.environment_dim() == 2) {
    const auto p = decoherence_params_from_collision(cu, xi);
    summary["lambda"] = p.lambda;
    summary["phi"] = p.phi;
    summary["ln_lambda"] = p.lambda > 0.0 ? json(std::log(p.lambda)) : json(nullptr);
    if (fitted.is_number()) summary["fit_abs_error"] = std::abs(fitted.get<double>() - p.lambda);
  }
  emit_summary(ctx, summary);
  return kOk;
}

int cmd_entangle(Context& ctx) {
  const std::string model = get_or<std::string>(ctx.cfg, "model", "homogenization");
  const int n_steps = require<int>(ctx.cfg, "n_steps");
  const int n_res = get_or<int>(ctx.cfg, "n_reservoir", n_steps);
  if (n_steps < 0 || n_steps > n_res) throw ConfigError("need 0 <= n_steps <= n_reservoir");
  const Eigen::Vector2cd psi =
      amplitudes_from(ctx.cfg.contains("psi") ? ctx.cfg.at("psi") : json::array({0.0, 1.0}), ctx.rng);

  Eigen::Matrix4cd u;
  Eigen::Vector2cd phi(1.0, 0.0);
  std::function<TangleReport(int)> predict;
  if (model == "homogenization") {
    const double eta = require<double>(ctx.cfg, "eta");
    u = partial_swap_unitary(eta, 2);
    predict = [=](int n) { return predict_homogenization_report(psi(0), psi(1), eta, n, n_res); };
  } else if (model == "decoherence") {
    const ControlledUnitary cu = controlled_from(ctx.cfg);
    if (cu.system_dim() != 2 || cu.environment_dim() != 2) throw ConfigError("entangle needs qubit gates");
    if (ctx.cfg.contains("phi")) phi = amplitudes_from(ctx.cfg.at("phi"), ctx.rng);
    u = controlled_unitary(cu);
    const Complex alpha = cu.control_basis.col(0).dot(ComplexVector(psi));
    const Complex beta = cu.control_basis.col(1).dot(ComplexVector(psi));
    const Complex overlap = decoherence_overlap(cu, phi);
    predict = [=](int n) { return predict_decoherence_report(alpha, beta, overlap, n, n_res); };
  } else {
    throw ConfigError("model must be homogenization or decoherence");
  }

  io::CsvWriter csv(*ctx.out, {"step", "j", "k", "tau_jk", "tau_cut_j", "delta_j", "pred_tau_jk", "pred_tau_cut_j",
                               "pred_delta_j", "abs_diff_tau_jk", "abs_diff_tau_cut_j"});
  double max_diff = 0.0, max_delta = 0.0;
  for (int n = 0; n <= n_steps; ++n) {
    const TangleReport got = ckw_report(evolve_pure_collisions(psi, phi, u, n, n_res), n);
    const TangleReport want = predict(n);
    max_delta = std::max(max_delta, got.max_abs_delta());
    for (int j = 0; j < got.n_qubits(); ++j) {
      for (int k = 0; k < got.n_qubits(); ++k) {
        if (j == k) continue;
        const double d_pair = std::abs(got.tau_pair(j, k) - want.tau_pair(j, k));
        const double d_cut = std::abs(got.tau_cut(j) - want.tau_cut(j));
        max_diff = std::max({max_diff, d_pair, d_cut});
        csv.row({std::to_string(n), std::to_string(j), std::to_string(k), format_double(got.tau_pair(j, k)),
                 format_double(got.tau_cut(j)), format_double(got.delta(j)), format_double(want.tau_pair(j, k)),
                 format_double(want.tau_cut(j)), format_double(want.delta(j)), format_double(d_pair),
                 format_double(d_cut)});
      }
    }
  }
  emit_summary(ctx, {{"command", "entangle"},
                     {"model", model},
                     {"n_steps", n_steps},
                     {"n_qubits", n_res + 1},
                     {"max_abs_diff", max_diff},
                     {"max_abs_delta", max_delta},
                     {"closed_form_within_tol", max_diff <= ctx.tol}});
  return kOk;
}

json channel_analysis(const PauliTransferMatrix& e, double tau) {
  const auto cp = is_completely_positive(e);
  json j = {{"ptm", io::ptm_to_json(e)},
            {"choi_min_eig", cp.min_eigenvalue},
            {"cp", cp.completely_positive},
            {"det", determinant(e)}};
  bool markovian = false;
  try {
    const auto report = divisibility_report(e);
    j["is_unitary"] = report.is_unitary;
    j["negative_det"] = report.negative_det;
    markovian = report.principal_log_lindblad && cp.completely_positive;
    if (!report.negative_det) {
      const Generator g = generator_from_log(e, tau);
      const json gj = io::generator_to_json(g);
      j["generator"] = gj.at("g");
      j["lindblad"] = gj;
    }
  } catch (const SingularChannelError&) {
    j["negative_det"] = false;
  } catch (const BranchCutError&) {
  }
  j["markovian"] = markovian;
  return j;
}

int cmd_channel(Context& ctx) {
  const PauliTransferMatrix e = channel_from(ctx);
  json j = channel_analysis(e, get_or<double>(ctx.cfg, "tau", 1.0));
  j["command"] = "channel";
  *ctx.out << j.dump(2) << '\n';
  return kOk;
}

int cmd_generator(Context& ctx) {
  const PauliTransferMatrix e = channel_from(ctx);
  const double tau = get_or<double>(ctx.cfg, "tau", 1.0);
  const Generator g = generator_from_log(e, tau);
  json j = io::generator_to_json(g);
  const Eigen::Matrix4d back = semigroup_map(g, tau).matrix();
  j["command"] = "generator";
  j["tau"] = tau;
  j["exp_roundtrip_error"] = (back - e.matrix()).cwiseAbs().maxCoeff();
  *ctx.out << j.dump(2) << '\n';
  return kOk;
}

int cmd_integrate(Context& ctx) {
  const std::string model = get_or<std::string>(ctx.cfg, "model", "homogenization");
  const double tau = get_or<double>(ctx.cfg, "tau", 1.0);
  const double t_end = require<double>(ctx.cfg, "t_end");
  const double dt = get_or<double>(ctx.cfg, "dt", 1e-3);
  const int samples = get_or<int>(ctx.cfg, "samples", 10);
  if (samples < 1) throw ConfigError("samples must be positive");
  if (!(t_end >= 0.0)) throw ConfigError("t_end must be non-negative");

  Generator g = Generator::zero();
  std::function<PauliTransferMatrix(double)> closed;
  if (model == "homogenization") {
    const auto p = HomogenizationSemigroupParams::make(require<double>(ctx.cfg, "eta"),
                                                       get_or<double>(ctx.cfg, "w", 1.0), tau);
    g = homogenization_generator(p);
    closed = [p](double t) { return homogenization_semigroup_map(p, t); };
  } else if (model == "decoherence") {
    DecoherenceParams p{};
    if (ctx.cfg.contains("lambda")) {
      p = {require<double>(ctx.cfg, "lambda"), get_or<double>(ctx.cfg, "phi", 0.0)};
    } else {
      p = decoherence_params_from_collision(controlled_from(ctx.cfg),
                                            state_key(ctx, "xi", json::array({1.0, 0.0, 0.0})));
    }
    g = decoherence_generator(p, tau);
    closed = [p, tau](double t) { return decoherence_semigroup_map(p, t, tau); };
  } else {
    throw ConfigError("model must be homogenization or decoherence");
  }
  const LindbladDecomposition d = lindblad_decompose(g);
  const DensityOperator rho0 = state_key(ctx, "rho", "random");

  io::CsvWriter csv(*ctx.out, {"t", "rho", "closed_form", "hs_error"});
  DensityOperator rho = rho0;
  double max_err = 0.0;
  double t_prev = 0.0;
  for (int i = 0; i <= samples; ++i) {
    const double t = t_end * i / samples;
    rho = integrate_master(d, rho, t - t_prev, dt);
    t_prev = t;
    const DensityOperator ref = apply(closed(t), rho0);
    const double err = hs_distance(rho, ref);
    max_err = std::max(max_err, err);
    csv.row({format_double(t), io::density_inline(rho), io::density_inline(ref), format_double(err)});
  }
  emit_summary(ctx, {{"command", "integrate"},
                     {"model", model},
                     {"t_end", t_end},
                     {"dt", dt},
                     {"max_hs_error", max_err},
                     {"lindblad", io::generator_to_json(g)}});
  return kOk;
}

// ----------------------------------------------------------------- setup

const std::vector<Flag> kStateFlags = {
    {"rho", "rho", Kind::kJson, "initial system state: Bloch [x,y,z], {dim,re,im} or \"random\""},
    {"xi", "xi", Kind::kJson, "reservoir particle state"},
};

const std::vector<Flag> kGateFlags = {
    {"gate", "gate", Kind::kString, "ctrl_z or ctrl_not"},
    {"targets", "targets", Kind::kJson, "list of target unitaries [{re,im}, ...]"},
    {"basis", "basis", Kind::kJson, "control basis {re,im}, columns are basis vectors"},
};

struct Command {
  const char* name;
  const char* help;
  std::vector<Flag> flags;
  int (*run)(Context&);
};

std::vector<Command> commands() {
  auto join = [](std::vector<Flag> a, const std::vector<Flag>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  return {
      {"homogenize", "partial-swap homogenization trajectory",
       join({{"eta", "eta", Kind::kNumber, "partial-swap angle (radians)"},
             {"n-steps", "n_steps", Kind::kInteger, "number of collisions"},
             {"stride", "stride", Kind::kInteger, "record every k-th step"}},
            kStateFlags),
       cmd_homogenize},
      {"decohere", "controlled-unitary decoherence trajectory",
       join(join({{"n-steps", "n_steps", Kind::kInteger, "number of collisions"},
                  {"stride", "stride", Kind::kInteger, "record every k-th step"}},
                 kStateFlags),
            kGateFlags),
       cmd_decohere},
      {"entangle", "pairwise and cut tangles of the pure collision register",
       join({{"model", "model", Kind::kString, "homogenization or decoherence"},
             {"eta", "eta", Kind::kNumber, "partial-swap angle (radians)"},
             {"n-steps", "n_steps", Kind::kInteger, "number of collisions"},
             {"n-reservoir", "n_reservoir", Kind::kInteger, "reservoir qubits N (default n-steps)"},
             {"psi", "psi", Kind::kJson, "system amplitudes [a, b] or [[re,im],[re,im]]"},
             {"phi", "phi", Kind::kJson, "reservoir amplitudes (decoherence model)"}},
            kGateFlags),
       cmd_entangle},
      {"channel", "CP, determinant and divisibility diagnostics of a qubit channel",
       join({{"ptm", "ptm", Kind::kJson, "4x4 Pauli transfer matrix"},
             {"kraus", "kraus", Kind::kJson, "Kraus operators [{re,im}, ...]"},
             {"preset", "preset", Kind::kString, "universal_not, transpose or identity"},
             {"eta", "eta", Kind::kNumber, "partial-swap collision angle"},
             {"unitary", "unitary", Kind::kJson, "4x4 collision unitary {re,im}"},
             {"tau", "tau", Kind::kNumber, "collision time"},
             {"xi", "xi", Kind::kJson, "reservoir particle state"}},
            kGateFlags),
       cmd_channel},
      {"generator", "principal-log generator and its Lindblad decomposition",
       join({{"ptm", "ptm", Kind::kJson, "4x4 Pauli transfer matrix"},
             {"kraus", "kraus", Kind::kJson, "Kraus operators [{re,im}, ...]"},
             {"preset", "preset", Kind::kString, "universal_not, transpose or identity"},
             {"eta", "eta", Kind::kNumber, "partial-swap collision angle"},
             {"unitary", "unitary", Kind::kJson, "4x4 collision unitary {re,im}"},
             {"tau", "tau", Kind::kNumber, "collision time"},
             {"xi", "xi", Kind::kJson, "reservoir particle state"}},
            kGateFlags),
       cmd_generator},
      {"integrate", "RK4 master-equation integration against the closed-form semigroup",
       join(join({{"model", "model", Kind::kString, "homogenization or decoherence"},
                  {"eta", "eta", Kind::kNumber, "partial-swap angle"},
                  {"w", "w", Kind::kNumber, "reservoir polarization along z"},
                  {"lambda", "lambda", Kind::kNumber, "decoherence factor"},
                  {"phi", "phi", Kind::kNumber, "decoherence phase"},
                  {"tau", "tau", Kind::kNumber, "collision time"},
                  {"t-end", "t_end", Kind::kNumber, "final time"},
                  {"dt", "dt", Kind::kNumber, "RK4 step"},
                  {"samples", "samples", Kind::kInteger, "number of output intervals"}},
                 kStateFlags),
            kGateFlags),
       cmd_integrate},
  };
}

json convert(const Flag& f, const std::string& raw) {
  try {
    switch (f.kind) {
      case Kind::kNumber: {
        std::size_t pos = 0;
        const double v = std::stod(raw, &pos);
        if (pos != raw.size()) break;
        return v;
      }
      case Kind::kInteger: {
        std::size_t pos = 0;
        const long v = std::stol(raw, &pos);
        if (pos != raw.size()) break;
        return v;
      }
      case Kind::kString:
        return raw;
      case Kind::kJson:
        if (raw == "random") return raw;
        return json::parse(raw);
    }
  } catch (const std::exception&) {
  }
  throw ConfigError(std::string("cannot parse --") + f.name + " value '" + raw + "'");
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const CapacityError*>(&e)) return kCapacityError;
  if (dynamic_cast<const SingularChannelError*>(&e) || dynamic_cast<const BranchCutError*>(&e)) {
    return kNumericalError;
  }
  return kConfigError;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"collidekit: collision-model simulation and channel analysis"};
  app.require_subcommand(1);
  std::string config_path, out_path, summary_path;
  std::optional<unsigned long long> seed;
  std::optional<double> tol;
  app.add_option("--config", config_path, "JSON config; flags override its keys");
  app.add_option("--out", out_path, "primary output file (default stdout)");
  app.add_option("--summary", summary_path, "write the JSON summary to this file");
  app.add_option("--seed", seed, "seed for \"random\" states");
  app.add_option("--tol", tol, "tolerance reported against in summaries");

  const auto cmds = commands();
  std::vector<std::map<std::string, std::string>> raw(cmds.size());
  std::vector<std::vector<std::pair<const Flag*, CLI::Option*>>> opts(cmds.size());
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < cmds.size(); ++i) {
    CLI::App* sub = app.add_subcommand(cmds[i].name, cmds[i].help);
    sub->fallthrough();
    for (const auto& f : cmds[i].flags) {
      CLI::Option* o = sub->add_option(std::string("--") + f.name, raw[i][f.name], f.help);
      opts[i].emplace_back(&f, o);
    }
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    std::size_t which = 0;
    while (!subs[which]->parsed()) ++which;

    json cfg = json::object();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ConfigError("cannot open config file " + config_path);
      try {
        cfg = json::parse(in);
      } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
      }
      if (!cfg.is_object()) throw ConfigError("config must be a JSON object");
    }
    for (const auto& [flag, opt] : opts[which]) {
      if (opt->count() > 0) cfg[flag->key] = convert(*flag, raw[which][flag->name]);
    }
    if (seed) cfg["seed"] = *seed;
    if (tol) cfg["tol"] = *tol;

    Context ctx{cfg, Rng(get_or<unsigned long long>(cfg, "seed", 0)), get_or<double>(cfg, "tol", 1e-10), &out,
                &err};
    std::ofstream out_file, summary_file;
    if (!out_path.empty()) {
      out_file.open(out_path);
      if (!out_file) throw ConfigError("cannot open output file " + out_path);
      ctx.out = &out_file;
      ctx.summary = &out;
    }
    if (!summary_path.empty()) {
      summary_file.open(summary_path);
      if (!summary_file) throw ConfigError("cannot open summary file " + summary_path);
      ctx.summary = &summary_file;
    }
    return cmds[which].run(ctx);
  } catch (const json::exception& e) {
    err << "error: bad config value: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

}  // namespace collidekit::cli
