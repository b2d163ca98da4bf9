#include "multisle/experiment.hpp"

#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

#include "multisle/elliptic.hpp"
#include "multisle/error.hpp"

namespace msle {

using nlohmann::json;

namespace {

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  for (const auto& [k, v] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw InvalidArgument("unknown key '" + k + "' in " + where);
  }
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

PairingPrediction single_pair_prediction() {
  PairingPrediction p;
  p.probabilities.emplace(PlanarPairing({{1, 2}}), 1.0);
  return p;
}

void finish(Report& r, const ExperimentSpec& spec) {
  if (r.prediction) r.comparison = compare(r.estimate, *r.prediction, spec.z_threshold, spec.bias_budget);
}

Report base_report(const ExperimentSpec& spec) {
  Report r;
  r.model = spec.model;
  r.kappa = spec.kappa();
  r.seed = spec.seed;
  r.z_threshold = spec.z_threshold;
  r.bias_budget = spec.bias_budget;
  r.metadata["samples"] = std::to_string(spec.samples);
  r.metadata["bias_note"] = "finite-lattice bias is budgeted as " + fmt(spec.bias_budget) +
                            " absolute; statistical error is the z-score against " + fmt(spec.z_threshold);
  return r;
}

void add_rectangle_prediction(Report& r, double aspect, int kappa) {
  const auto config = rectangle_ccw_corner_config(aspect);
  r.metadata["aspect"] = fmt(aspect);
  r.metadata["cross_ratio"] = fmt(cross_ratio(config).z);
  r.prediction = predict_pairing_probabilities(KappaParams(kappa), config);
}

Report run_ising(const ExperimentSpec& spec) {
  if (spec.shape != "rectangle") throw InvalidArgument("ising experiments need a rectangle");
  const int m = static_cast<int>(spec.width), n = static_cast<int>(spec.height);
  if (m != spec.width || n != spec.height) throw InvalidArgument("ising rectangle sizes must be integers");
  std::vector<Vertex> marks;
  for (const auto& v : spec.ising_marks) marks.push_back({v[0], v[1]});
  const bool corners = marks.empty() || marks == FaceDomain::corner_marks(m, n);
  if (marks.empty()) marks = FaceDomain::corner_marks(m, n);
  const auto domain = FaceDomain::rectangle(m, n, marks);
  const auto bc = alternating_boundary_conditions(domain);

  auto r = base_report(spec);
  r.metadata["domain"] = "square lattice " + std::to_string(m) + "x" + std::to_string(n);
  std::string ms;
  for (const auto& v : marks) ms += (ms.empty() ? "" : ";") + std::to_string(v.x) + "," + std::to_string(v.y);
  r.metadata["marks"] = ms;
  r.metadata["beta"] = fmt(spec.beta);
  r.metadata["stride"] = std::to_string(spec.stride);
  r.metadata["burn_in"] = std::to_string(spec.burn_in);
  r.metadata["chains"] = std::to_string(spec.chains);
  r.metadata["tracer"] = "left-most";
  if (domain.n_pairs() == 1) {
    r.prediction = single_pair_prediction();
  } else if (domain.n_pairs() == 2 && corners) {
    add_rectangle_prediction(r, static_cast<double>(n) / m, 3);
  } else {
    r.metadata["prediction"] = "unavailable";
  }

  SamplingPlan plan;
  plan.samples = spec.samples;
  plan.stride = spec.stride;
  plan.burn_in = spec.burn_in;
  plan.chains = spec.chains;
  plan.workers = spec.workers;
  const auto samples = sample_pairings(domain, bc, {spec.beta}, plan, spec.seed);

  std::vector<PlanarPairing> pairings;
  pairings.reserve(samples.size());
  for (const auto& s : samples) pairings.push_back(s.pairing);
  std::map<PlanarPairing, double> tau;
  for (const auto& p : enumerate_pairings(static_cast<int>(domain.n_pairs()))) {
    std::vector<std::vector<double>> series(spec.chains);
    for (const auto& s : samples) series[s.chain].push_back(s.pairing == p ? 1.0 : 0.0);
    tau[p] = integrated_autocorrelation_time(series);
  }
  r.estimate = make_estimate(static_cast<int>(domain.n_pairs()), pairings, tau);
  finish(r, spec);
  return r;
}

Report run_explorer_experiment(const ExperimentSpec& spec) {
  auto r = base_report(spec);
  const bool rect = spec.shape == "rectangle";
  if (!rect && spec.shape != "disc") throw InvalidArgument("unknown explorer shape '" + spec.shape + "'");
  const auto domain = rect ? HexDomain::rectangle(spec.width, spec.height) : HexDomain::disc(spec.radius, spec.hex_marks);
  r.metadata["domain"] = rect ? "hexagonal lattice rectangle " + fmt(spec.width) + "x" + fmt(spec.height)
                              : "hexagonal disc of radius " + std::to_string(spec.radius);
  r.metadata["faces"] = std::to_string(domain.face_count());
  std::string ms;
  for (const auto a : domain.marks()) ms += (ms.empty() ? "" : ",") + std::to_string(a);
  r.metadata["marks"] = ms;
  r.metadata["scheduler"] = to_string(spec.schedule);
  r.metadata["sampler"] = to_string(spec.sampler);
  if (domain.n_pairs() == 1) {
    r.prediction = single_pair_prediction();
  } else if (rect) {
    add_rectangle_prediction(r, spec.height / spec.width, 4);
  } else {
    r.metadata["prediction"] = "unavailable";
  }
  const auto counts =
      estimate_pairing_frequencies(domain, spec.samples, spec.seed, {spec.schedule, spec.sampler}, spec.workers);
  r.estimate = make_estimate(static_cast<int>(domain.n_pairs()), counts);
  finish(r, spec);
  return r;
}

}  // namespace

ExperimentSpec parse_experiment_spec(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("experiment config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidArgument("experiment config must be an object");
  ExperimentSpec s;
  try {
    check_keys(j, {"model", "kappa", "domain", "samples", "seed", "ising", "explorer", "z_threshold", "bias_budget",
                   "workers", "output"},
               "experiment config");
    s.model = j.value("model", s.model);
    if (s.model != "ising" && s.model != "explorer") throw InvalidArgument("model must be 'ising' or 'explorer'");
    if (j.contains("kappa") && j["kappa"].get<double>() != s.kappa()) {
      throw InvalidArgument("model " + s.model + " goes with kappa " + fmt(s.kappa()));
    }
    if (j.contains("domain")) {
      const auto& d = j["domain"];
      check_keys(d, {"shape", "width", "height", "radius", "marks"}, "domain");
      s.shape = d.value("shape", s.shape);
      s.width = d.value("width", s.width);
      s.height = d.value("height", s.height);
      s.radius = d.value("radius", s.radius);
      if (d.contains("marks")) {
        if (s.model == "ising") {
          s.ising_marks = d["marks"].get<std::vector<std::array<int, 2>>>();
        } else {
          s.hex_marks = d["marks"].get<std::vector<std::size_t>>();
        }
      }
    }
    s.samples = j.value("samples", s.samples);
    s.seed = j.value("seed", s.seed);
    if (j.contains("ising")) {
      const auto& i = j["ising"];
      check_keys(i, {"beta", "stride", "burn_in", "chains"}, "ising");
      s.beta = i.value("beta", s.beta);
      s.stride = i.value("stride", s.stride);
      s.burn_in = i.value("burn_in", s.burn_in);
      s.chains = i.value("chains", s.chains);
    }
    if (j.contains("explorer")) {
      const auto& e = j["explorer"];
      check_keys(e, {"schedule", "sampler"}, "explorer");
      if (e.contains("schedule")) s.schedule = parse_schedule(e["schedule"].get<std::string>());
      if (e.contains("sampler")) s.sampler = parse_sampler(e["sampler"].get<std::string>());
    }
    s.z_threshold = j.value("z_threshold", s.z_threshold);
    s.bias_budget = j.value("bias_budget", s.bias_budget);
    s.workers = j.value("workers", s.workers);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed experiment config: ") + e.what());
  }
  return s;
}

std::string to_json(const ExperimentSpec& s) {
  json j;
  j["model"] = s.model;
  j["kappa"] = s.kappa();
  json d{{"shape", s.shape}, {"width", s.width}, {"height", s.height}, {"radius", s.radius}};
  if (s.model == "ising") {
    d["marks"] = s.ising_marks;
  } else {
    d["marks"] = s.hex_marks;
  }
  j["domain"] = d;
  j["samples"] = s.samples;
  j["seed"] = s.seed;
  j["ising"] = {{"beta", s.beta}, {"stride", s.stride}, {"burn_in", s.burn_in}, {"chains", s.chains}};
  j["explorer"] = {{"schedule", to_string(s.schedule)}, {"sampler", to_string(s.sampler)}};
  j["z_threshold"] = s.z_threshold;
  j["bias_budget"] = s.bias_budget;
  j["workers"] = s.workers;
  return j.dump(2) + "\n";
}

Report run_experiment(const ExperimentSpec& spec) {
  if (spec.model == "ising") return run_ising(spec);
  if (spec.model == "explorer") return run_explorer_experiment(spec);
  throw InvalidArgument("model must be 'ising' or 'explorer'");
}

}  // namespace msle
