// multisle command-line front end.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "multisle/elliptic.hpp"
#include "multisle/error.hpp"
#include "multisle/experiment.hpp"
#include "multisle/explorer.hpp"
#include "multisle/hoermander.hpp"
#include "multisle/ising.hpp"
#include "multisle/loewner.hpp"
#include "multisle/ode_reduction.hpp"
#include "multisle/partition.hpp"
#include "multisle/prediction.hpp"
#include "multisle/verify.hpp"

using nlohmann::json;
using namespace msle;

namespace {

constexpr int kPass = 0;
constexpr int kError = 1;
constexpr int kFail = 2;

struct Globals {
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";
  std::string config;
  bool config_override = false;
  std::size_t workers = 0;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_output(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw Error("cannot open '" + g.out + "' for writing");
  f << text;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

BoundaryConfig parse_points(const std::string& s) {
  std::vector<double> x;
  for (const auto& p : split(s, ',')) {
    try {
      std::size_t used = 0;
      x.push_back(std::stod(p, &used));
      if (used != p.size()) throw std::invalid_argument(p);
    } catch (const std::logic_error&) {
      throw InvalidArgument("cannot parse point '" + p + "'");
    }
  }
  return BoundaryConfig(std::move(x));
}

/// "ising", "gff", "total" or "pure:1-2,3-4".
PartitionEvaluator parse_evaluator(const std::string& s, double kappa) {
  if (s == "ising") return PartitionEvaluator::ising();
  if (s == "gff") return PartitionEvaluator::gff();
  if (s == "total") return PartitionEvaluator::total(kappa);
  if (s.rfind("pure:", 0) == 0) return PartitionEvaluator::pure_channel(KappaParams(kappa), PlanarPairing::parse(s.substr(5)));
  throw InvalidArgument("unknown evaluator '" + s + "' (ising, gff, total, pure:<pairing>)");
}

std::string json_value_to_arg(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number()) return fmt(v.get<double>());
  throw InvalidArgument("config values must be strings, numbers or booleans");
}

json load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidArgument("cannot read config '" + path + "'");
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    throw InvalidArgument("config '" + path + "' is not valid JSON: " + e.what());
  }
}

/// Config keys are long flag names. They fill flags absent from the command
/// line, or replace given ones under --config-override. Keys may sit at the
/// top level or inside an object named after the subcommand.
void apply_flag_config(CLI::App& app, CLI::App& sub, const json& cfg, bool override_cli) {
  json flat = json::object();
  for (const auto& [k, v] : cfg.items()) {
    if (!v.is_object()) flat[k] = v;
  }
  if (cfg.contains(sub.get_name()) && cfg[sub.get_name()].is_object()) {
    for (const auto& [k, v] : cfg[sub.get_name()].items()) flat[k] = v;
  }
  for (const auto& [k, v] : flat.items()) {
    if (k == "config" || k == "config-override") continue;
    CLI::Option* opt = nullptr;
    try {
      opt = sub.get_option("--" + k);
    } catch (const CLI::OptionNotFound&) {
      try {
        opt = app.get_option("--" + k);
      } catch (const CLI::OptionNotFound&) {
        throw InvalidArgument("unknown config key '" + k + "' for " + sub.get_name());
      }
    }
    if (opt->count() > 0 && !override_cli) continue;
    opt->clear();
    opt->add_result(json_value_to_arg(v));
    opt->run_callback();
  }
}

// ---------------------------------------------------------------- zeval

struct ZevalArgs {
  double kappa = 3.0;
  std::string points;
  std::string pairing;
  bool probs = false;
};

int run_zeval(const Globals& g, const ZevalArgs& a) {
  const auto x = parse_points(a.points);
  const KappaParams params(a.kappa);
  json j;
  j["kappa"] = a.kappa;
  j["points"] = x.points();
  if (a.pairing.empty()) {
    j["Z"] = PartitionEvaluator::total(a.kappa)(x);
  } else {
    const auto p = PlanarPairing::parse(a.pairing);
    j["pairing"] = p.to_string();
    j["Z_alpha"] = pure_Z(params, x, p);
  }
  if (a.probs) {
    json probs = json::array();
    for (const auto& [p, v] : predict_pairing_probabilities(params, x).probabilities) {
      probs.push_back({{"pairing", p.to_json()}, {"probability", v}});
    }
    j["probabilities"] = probs;
  }
  write_output(g, j.dump(2) + "\n");
  return kPass;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::size_t configs = 100;
  std::size_t maps = 100;
  std::string pairs = "1,2,3";
};

std::vector<int> parse_pairs(const std::string& s) {
  std::vector<int> out;
  for (const auto& p : split(s, ',')) out.push_back(std::stoi(p));
  return out;
}

int finish_checks(const Globals& g, const std::vector<CheckResult>& r) {
  write_output(g, to_json(r));
  return all_passed(r) ? kPass : kFail;
}

// ---------------------------------------------------------------- hoermander

struct HoermanderArgs {
  std::string points;
  double kappa = 3.0;
  std::size_t j = 1;
};

int run_hoermander(const Globals& g, const HoermanderArgs& a) {
  const auto x = parse_points(a.points);
  if (a.j < 1 || a.j > x.size()) throw InvalidArgument("--j must lie in 1..2N");
  const auto r = hoermander_rank(x, a.kappa, a.j - 1);
  json par = json::array();
  for (int k = 1; k < static_cast<int>(x.size()); ++k) {
    const auto numeric = numeric_bracket(x, k, {a.kappa, a.j - 1});
    par.push_back({{"k", k}, {"cosine", parallelism(numeric, closed_form_bracket(x, k, a.j - 1))}});
  }
  json j{{"points", x.points()},
         {"kappa", a.kappa},
         {"j", a.j},
         {"rank", r.rank},
         {"full_rank", r.rank == static_cast<int>(x.size())},
         {"singular_values", r.singular_values},
         {"vandermonde_det_lu", r.vandermonde_det_lu},
         {"vandermonde_det_formula", r.vandermonde_det_formula},
         {"parallelism", par}};
  write_output(g, j.dump(2) + "\n");
  return r.rank == static_cast<int>(x.size()) ? kPass : kFail;
}

// ---------------------------------------------------------------- loewner

struct LoewnerArgs {
  double kappa = 3.0;
  std::string points;
  std::size_t j = 1;
  double radius = 0.0;
  double dt = 1e-4;
  std::size_t paths = 100;
  std::string evaluator = "total";
  std::string znum = "pure:1-2,3-4";
  std::string zden = "total";
};

Localization localization(const BoundaryConfig& x, const LoewnerArgs& a) {
  if (a.j < 1 || a.j > x.size()) throw InvalidArgument("--j must lie in 1..2N");
  const double r = a.radius > 0.0 ? a.radius : 0.4 * x.local_gap(a.j - 1);
  auto loc = Localization::around(a.j - 1, r);
  loc.validate(x);
  return loc;
}

int run_loewner(const Globals& g, const LoewnerArgs& a) {
  const auto x = parse_points(a.points);
  const auto z = parse_evaluator(a.evaluator, a.kappa);
  const auto paths = run_ensemble(x, localization(x, a), z, a.dt, a.paths, g.seed, g.workers);
  std::ostringstream out;
  if (g.format == "json") {
    json arr = json::array();
    for (const auto& p : paths) {
      arr.push_back({{"index", p.index},
                     {"seed", p.seed},
                     {"w0", p.w0},
                     {"w_final", p.w_final},
                     {"t_final", p.t_final},
                     {"drift_integral", p.drift_integral},
                     {"steps", p.steps},
                     {"reason", to_string(p.reason)}});
    }
    out << arr.dump(2) << "\n";
  } else {
    out << "index,seed,w0,w_final,t_final,drift_integral,steps,reason\n";
    for (const auto& p : paths) {
      out << p.index << ',' << p.seed << ',' << fmt(p.w0) << ',' << fmt(p.w_final) << ',' << fmt(p.t_final) << ','
          << fmt(p.drift_integral) << ',' << p.steps << ',' << to_string(p.reason) << '\n';
    }
  }
  write_output(g, out.str());
  return kPass;
}

int run_martingale(const Globals& g, const LoewnerArgs& a) {
  const auto x = parse_points(a.points);
  const auto num = parse_evaluator(a.znum, a.kappa);
  const auto den = parse_evaluator(a.zden, a.kappa);
  const auto r = martingale_diagnostic(num, den, x, localization(x, a), a.dt, a.paths, g.seed, g.workers);
  const bool pass = r.deviation <= 3.0 * r.std_error;
  json j{{"znum", a.znum},       {"zden", a.zden},           {"kappa", a.kappa},
         {"points", x.points()}, {"j", a.j},                 {"m0", r.m0},
         {"mean", r.mean},       {"std_error", r.std_error}, {"deviation", r.deviation},
         {"n_paths", r.n_paths}, {"cap_stops", r.cap_stops}, {"exit_stops", r.exit_stops},
         {"swallow_stops", r.swallow_stops}, {"within_3_se", pass}};
  write_output(g, j.dump(2) + "\n");
  return pass ? kPass : kFail;
}

// ---------------------------------------------------------------- ising

struct IsingArgs {
  int width = 4;
  int height = 4;
  std::string marks;
  double beta = critical_beta();
  std::size_t samples = 1000;
  std::size_t stride = 10;
  std::size_t burn_in = 1000;
  std::size_t chains = 1;
  bool exact = false;
};

/// "x:y,x:y,..."
std::vector<Vertex> parse_vertices(const std::string& s) {
  std::vector<Vertex> out;
  for (const auto& v : split(s, ',')) {
    const auto xy = split(v, ':');
    if (xy.size() != 2) throw InvalidArgument("marked vertex '" + v + "' must look like x:y");
    out.push_back({std::stoi(xy[0]), std::stoi(xy[1])});
  }
  return out;
}

int run_ising_cmd(const Globals& g, const IsingArgs& a) {
  auto marks = a.marks.empty() ? FaceDomain::corner_marks(a.width, a.height) : parse_vertices(a.marks);
  const auto domain = FaceDomain::rectangle(a.width, a.height, marks);
  const auto bc = alternating_boundary_conditions(domain);
  std::ostringstream out;
  if (a.exact) {
    const auto dist = exact_pairing_distribution(domain, bc, {a.beta}, g.workers);
    if (g.format == "json") {
      json arr = json::array();
      for (const auto& [p, v] : dist) arr.push_back({{"pairing", p.to_json()}, {"probability", v}});
      out << json{{"width", a.width}, {"height", a.height}, {"beta", a.beta}, {"exact", arr}}.dump(2) << "\n";
    } else {
      out << "pairing,probability\n";
      for (const auto& [p, v] : dist) out << '"' << p.to_json() << "\"," << fmt(v) << '\n';
    }
  } else {
    SamplingPlan plan{a.samples, a.stride, a.burn_in, a.chains, g.workers};
    const auto samples = sample_pairings(domain, bc, {a.beta}, plan, g.seed);
    out << "seed,sweep,pairing,energy\n";
    for (const auto& s : samples) {
      out << s.chain_seed << ',' << s.sweep << ",\"" << s.pairing.to_json() << "\"," << fmt(s.energy) << '\n';
    }
  }
  write_output(g, out.str());
  return kPass;
}

// ---------------------------------------------------------------- explorer

struct ExplorerArgs {
  int radius = 5;
  std::string marks = "0,5,15,20";
  double width = 0.0;
  double height = 0.0;
  std::size_t runs = 1000;
  std::string schedule = "round-robin";
  std::string sampler = "walk";
};

int run_explorer_cmd(const Globals& g, const ExplorerArgs& a) {
  std::vector<std::size_t> marks;
  for (const auto& m : split(a.marks, ',')) marks.push_back(static_cast<std::size_t>(std::stoul(m)));
  const auto domain = a.width > 0.0 ? HexDomain::rectangle(a.width, a.height) : HexDomain::disc(a.radius, marks);
  const ExplorerOptions options{parse_schedule(a.schedule), parse_sampler(a.sampler)};
  const auto pairings = sample_explorer_pairings(domain, a.runs, g.seed, options, g.workers);
  std::ostringstream out;
  out << "run,seed,pairing\n";
  for (std::size_t r = 0; r < pairings.size(); ++r) {
    out << r << ',' << derive_seed(g.seed, r) << ",\"" << pairings[r].to_json() << "\"\n";
  }
  write_output(g, out.str());
  return kPass;
}

// ---------------------------------------------------------------- experiment

int run_experiment_cmd(const Globals& g, const json& flags_patch, bool seed_given) {
  json doc = json::object();
  if (!g.config.empty()) doc = load_config(g.config);
  json patch = flags_patch;
  if (seed_given) patch["seed"] = g.seed;
  json out_cfg;
  if (doc.contains("output")) out_cfg = doc["output"];
  if (g.config_override) {
    patch.merge_patch(doc);
    doc = patch;
  } else {
    doc.merge_patch(patch);
  }
  if (!doc.contains("seed")) doc["seed"] = g.seed;
  const auto spec = parse_experiment_spec(doc.dump());
  const auto report = run_experiment(spec);

  Globals eff = g;
  if (out_cfg.is_object()) {
    if (out_cfg.contains("path") && (g.out.empty() || g.config_override)) eff.out = out_cfg["path"].get<std::string>();
    if (out_cfg.contains("format") && g.config_override) eff.format = out_cfg["format"].get<std::string>();
  }
  write_output(eff, render(report, parse_format(eff.format)));
  return report.passed() ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiple-SLE partition functions, pairing predictions and lattice samplers"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  auto* seed_opt = app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--out", g.out, "Output path (default: stdout)");
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "svg"}))
      ->capture_default_str();
  app.add_option("--config", g.config, "JSON config; keys mirror the long flags");
  app.add_flag("--config-override", g.config_override, "Let config values win over command-line flags");
  app.add_option("--workers", g.workers, "Worker threads (0 = hardware concurrency)")->capture_default_str();

  ZevalArgs za;
  auto* zeval = app.add_subcommand("zeval", "Evaluate Z or a pure partition function");
  zeval->add_option("--kappa", za.kappa)->check(CLI::IsMember({3.0, 4.0}))->capture_default_str();
  zeval->add_option("--points", za.points, "x1,...,x2N")->required();
  zeval->add_option("--pairing", za.pairing, "e.g. 1-2,3-4");
  zeval->add_flag("--probs", za.probs, "Also print pairing probabilities");

  VerifyArgs va;
  auto* vpde = app.add_subcommand("verify-pde", "PDE residuals of the closed forms on random configurations");
  vpde->add_option("--configs", va.configs)->capture_default_str();
  vpde->add_option("--pairs", va.pairs, "Values of N")->capture_default_str();
  auto* vcov = app.add_subcommand("verify-covariance", "Moebius covariance of the closed forms");
  vcov->add_option("--configs", va.configs)->capture_default_str();
  vcov->add_option("--maps", va.maps)->capture_default_str();
  vcov->add_option("--pairs", va.pairs, "Values of N")->capture_default_str();
  auto* vsum = app.add_subcommand("verify-sumrule", "Pure partition functions add up to the total");

  HoermanderArgs ha;
  auto* hoer = app.add_subcommand("hoermander", "Bracket rank and parallelism at a configuration");
  hoer->add_option("--points", ha.points)->required();
  hoer->add_option("--kappa", ha.kappa)->capture_default_str();
  hoer->add_option("--j", ha.j, "Driving index, 1-based")->capture_default_str();

  LoewnerArgs la;
  auto add_loewner_common = [&](CLI::App* s) {
    s->add_option("--kappa", la.kappa)->capture_default_str();
    s->add_option("--points", la.points)->required();
    s->add_option("--j", la.j, "Driving index, 1-based")->capture_default_str();
    s->add_option("--radius", la.radius, "Localization radius (0 = 0.4 x local gap)")->capture_default_str();
    s->add_option("--dt", la.dt)->capture_default_str();
    s->add_option("--paths", la.paths)->capture_default_str();
  };
  auto* lsim = app.add_subcommand("loewner-sim", "Simulate localized Loewner paths");
  add_loewner_common(lsim);
  lsim->add_option("--evaluator", la.evaluator, "ising, gff, total or pure:<pairing>")->capture_default_str();
  auto* mart = app.add_subcommand("martingale", "Martingale diagnostic for Z_num / Z_den");
  add_loewner_common(mart);
  mart->add_option("--znum", la.znum)->capture_default_str();
  mart->add_option("--zden", la.zden)->capture_default_str();

  IsingArgs ia;
  auto* ising = app.add_subcommand("ising", "Critical Ising samples or exact pairing law on a rectangle");
  ising->add_option("--width", ia.width)->capture_default_str();
  ising->add_option("--height", ia.height)->capture_default_str();
  ising->add_option("--marks", ia.marks, "x:y,... (default: corners)");
  ising->add_option("--beta", ia.beta)->capture_default_str();
  ising->add_option("--samples", ia.samples)->capture_default_str();
  ising->add_option("--stride", ia.stride, "Sweeps between samples")->capture_default_str();
  ising->add_option("--burn-in", ia.burn_in)->capture_default_str();
  ising->add_option("--chains", ia.chains)->capture_default_str();
  ising->add_flag("--exact", ia.exact, "Exact enumeration instead of sampling");

  ExplorerArgs ea;
  auto* expl = app.add_subcommand("explorer", "Harmonic explorer runs on a hexagonal domain");
  expl->add_option("--radius", ea.radius)->capture_default_str();
  expl->add_option("--marks", ea.marks, "Loop positions a1,...,a2N")->capture_default_str();
  expl->add_option("--width", ea.width, "Rectangle width (replaces the disc)");
  expl->add_option("--height", ea.height, "Rectangle height");
  expl->add_option("--runs", ea.runs)->capture_default_str();
  expl->add_option("--schedule", ea.schedule)->check(CLI::IsMember({"round-robin", "sequential"}))->capture_default_str();
  expl->add_option("--sampler", ea.sampler)->check(CLI::IsMember({"walk", "dirichlet"}))->capture_default_str();

  auto* expt = app.add_subcommand("experiment", "Lattice experiment against the continuum prediction");
  std::string x_model, x_shape, x_schedule, x_sampler, x_marks;
  double x_width = 0, x_height = 0, x_beta = 0, x_z = 0, x_bias = 0;
  int x_radius = 0;
  std::size_t x_samples = 0, x_stride = 0, x_burn = 0, x_chains = 0;
  auto* o_model = expt->add_option("--model", x_model)->check(CLI::IsMember({"ising", "explorer"}));
  auto* o_shape = expt->add_option("--shape", x_shape)->check(CLI::IsMember({"rectangle", "disc"}));
  auto* o_width = expt->add_option("--width", x_width);
  auto* o_height = expt->add_option("--height", x_height);
  auto* o_radius = expt->add_option("--radius", x_radius);
  auto* o_marks = expt->add_option("--marks", x_marks, "Loop positions for discs");
  auto* o_samples = expt->add_option("--samples", x_samples);
  auto* o_beta = expt->add_option("--beta", x_beta);
  auto* o_stride = expt->add_option("--stride", x_stride);
  auto* o_burn = expt->add_option("--burn-in", x_burn);
  auto* o_chains = expt->add_option("--chains", x_chains);
  auto* o_sched = expt->add_option("--schedule", x_schedule);
  auto* o_sampler = expt->add_option("--sampler", x_sampler);
  auto* o_z = expt->add_option("--z-threshold", x_z);
  auto* o_bias = expt->add_option("--bias-budget", x_bias);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kError;
  }

  try {
    CLI::App* active = app.get_subcommands().front();
    if (!g.config.empty() && active != expt) {
      apply_flag_config(app, *active, load_config(g.config), g.config_override);
    }
    if (active == zeval) return run_zeval(g, za);
    if (active == vpde) return finish_checks(g, verify_pde(va.configs, g.seed, parse_pairs(va.pairs)));
    if (active == vcov) return finish_checks(g, verify_covariance(va.maps, va.configs, g.seed, parse_pairs(va.pairs)));
    if (active == vsum) return finish_checks(g, verify_sumrule());
    if (active == hoer) return run_hoermander(g, ha);
    if (active == lsim) {
      if (g.format == "svg") throw InvalidArgument("loewner-sim writes json or csv");
      return run_loewner(g, la);
    }
    if (active == mart) return run_martingale(g, la);
    if (active == ising) return run_ising_cmd(g, ia);
    if (active == expl) return run_explorer_cmd(g, ea);

    json patch = json::object();
    if (*o_model) patch["model"] = x_model;
    if (*o_shape) patch["domain"]["shape"] = x_shape;
    if (*o_width) patch["domain"]["width"] = x_width;
    if (*o_height) patch["domain"]["height"] = x_height;
    if (*o_radius) patch["domain"]["radius"] = x_radius;
    if (*o_marks) {
      std::vector<std::size_t> m;
      for (const auto& s : split(x_marks, ',')) m.push_back(static_cast<std::size_t>(std::stoul(s)));
      patch["domain"]["marks"] = m;
    }
    if (*o_samples) patch["samples"] = x_samples;
    if (*o_beta) patch["ising"]["beta"] = x_beta;
    if (*o_stride) patch["ising"]["stride"] = x_stride;
    if (*o_burn) patch["ising"]["burn_in"] = x_burn;
    if (*o_chains) patch["ising"]["chains"] = x_chains;
    if (*o_sched) patch["explorer"]["schedule"] = x_schedule;
    if (*o_sampler) patch["explorer"]["sampler"] = x_sampler;
    if (*o_z) patch["z_threshold"] = x_z;
    if (*o_bias) patch["bias_budget"] = x_bias;
    if (g.workers) patch["workers"] = g.workers;
    return run_experiment_cmd(g, patch, seed_opt->count() > 0);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
}
