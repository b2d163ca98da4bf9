#include "multisle/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include <boost/math/distributions/normal.hpp>
#include <nlohmann/json.hpp>

#include "multisle/error.hpp"

namespace msle {

using nlohmann::json;

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

json finite_or_string(double v) {
  if (std::isfinite(v)) return v;
  return fmt(v);
}

double number_from(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    return NAN;
  }
  return j.get<double>();
}

}  // namespace

std::pair<double, double> wilson_interval(std::size_t successes, std::size_t trials, double confidence) {
  if (trials == 0) throw InvalidArgument("Wilson interval needs at least one trial");
  if (successes > trials) throw InvalidArgument("successes exceed trials");
  if (!(confidence > 0.0 && confidence < 1.0)) throw InvalidArgument("confidence must lie in (0, 1)");
  const double z = boost::math::quantile(boost::math::normal(), 0.5 + confidence / 2.0);
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double center = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z / (1 + z2 / n) * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

double integrated_autocorrelation_time(const std::vector<std::vector<double>>& chains) {
  std::size_t total = 0, shortest = SIZE_MAX;
  double sum = 0.0;
  for (const auto& c : chains) {
    total += c.size();
    shortest = std::min(shortest, c.size());
    sum = std::accumulate(c.begin(), c.end(), sum);
  }
  if (total < 2 || shortest < 2) return 1.0;
  const double mean = sum / static_cast<double>(total);
  const auto autocov = [&](std::size_t lag) {
    double acc = 0.0;
    std::size_t count = 0;
    for (const auto& c : chains) {
      for (std::size_t i = 0; i + lag < c.size(); ++i) acc += (c[i] - mean) * (c[i + lag] - mean);
      count += c.size() - std::min(lag, c.size());
    }
    return count ? acc / static_cast<double>(count) : 0.0;
  };
  const double c0 = autocov(0);
  if (c0 <= 0.0) return 1.0;
  double tau = 1.0;
  for (std::size_t lag = 1; lag < shortest; ++lag) {
    tau += 2.0 * autocov(lag) / c0;
    if (static_cast<double>(lag) >= 5.0 * tau) break;
  }
  return std::max(1.0, tau);
}

PairingEstimate make_estimate(int n_pairs, const std::vector<PlanarPairing>& samples,
                              const std::map<PlanarPairing, double>& tau) {
  std::map<PlanarPairing, std::size_t> counts;
  for (const auto& s : samples) ++counts[s];
  auto e = make_estimate(n_pairs, counts);
  for (auto& [p, entry] : e.entries) {
    if (const auto it = tau.find(p); it != tau.end()) entry.tau = std::max(1.0, it->second);
  }
  return e;
}

PairingEstimate make_estimate(int n_pairs, const std::map<PlanarPairing, std::size_t>& counts) {
  PairingEstimate e;
  for (const auto& p : enumerate_pairings(n_pairs)) e.entries[p] = {};
  for (const auto& [p, n] : counts) {
    if (!e.entries.count(p)) throw InvalidArgument("sampled pairing " + p.to_string() + " has the wrong size");
    e.entries[p].count = n;
    e.total += n;
  }
  for (auto& [p, entry] : e.entries) {
    if (e.total == 0) continue;
    entry.frequency = static_cast<double>(entry.count) / static_cast<double>(e.total);
    std::tie(entry.wilson_lo, entry.wilson_hi) = wilson_interval(entry.count, e.total);
  }
  return e;
}

std::vector<ComparisonRow> compare(const PairingEstimate& estimate, const PairingPrediction& prediction,
                                   double z_threshold, double bias_budget) {
  if (estimate.entries.size() != prediction.probabilities.size()) {
    throw InvalidArgument("estimate and prediction cover different pairings");
  }
  std::vector<ComparisonRow> rows;
  for (const auto& [p, entry] : estimate.entries) {
    const auto it = prediction.probabilities.find(p);
    if (it == prediction.probabilities.end()) {
      throw InvalidArgument("pairing " + p.to_string() + " has no prediction");
    }
    ComparisonRow row{p, it->second, entry.frequency};
    const double diff = entry.frequency - row.predicted;
    row.standard_error =
        estimate.total ? std::sqrt(row.predicted * (1.0 - row.predicted) * entry.tau / static_cast<double>(estimate.total))
                       : INFINITY;
    if (row.standard_error > 0.0 && std::isfinite(row.standard_error)) {
      row.z = diff / row.standard_error;
    } else {
      row.z = std::abs(diff) < 1e-12 ? 0.0 : std::copysign(INFINITY, diff);
    }
    row.z_pass = std::abs(row.z) <= z_threshold;
    row.abs_error = std::abs(diff);
    row.abs_pass = estimate.total > 0 && row.abs_error <= bias_budget + z_threshold * row.standard_error;
    rows.push_back(row);
  }
  return rows;
}

bool Report::passed() const {
  return std::all_of(comparison.begin(), comparison.end(), [](const auto& r) { return r.abs_pass; });
}

bool Report::operator==(const Report& o) const {
  const auto same_prediction = prediction.has_value() == o.prediction.has_value() &&
                               (!prediction || prediction->probabilities == o.prediction->probabilities);
  return model == o.model && kappa == o.kappa && seed == o.seed && z_threshold == o.z_threshold &&
         bias_budget == o.bias_budget && metadata == o.metadata && same_prediction && estimate == o.estimate &&
         comparison == o.comparison;
}

OutputFormat parse_format(const std::string& s) {
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  if (s == "svg") return OutputFormat::Svg;
  throw InvalidArgument("unknown output format '" + s + "'");
}

std::string extension(OutputFormat f) {
  switch (f) {
    case OutputFormat::Json: return "json";
    case OutputFormat::Csv: return "csv";
    default: return "svg";
  }
}

std::string to_json(const Report& r) {
  json j;
  j["model"] = r.model;
  j["kappa"] = r.kappa;
  j["seed"] = r.seed;
  j["z_threshold"] = r.z_threshold;
  j["bias_budget"] = r.bias_budget;
  j["metadata"] = r.metadata;
  j["passed"] = r.passed();
  if (r.prediction) {
    json p = json::array();
    for (const auto& [k, v] : r.prediction->probabilities) p.push_back({{"pairing", k.to_string()}, {"p", v}});
    j["prediction"] = p;
  } else {
    j["prediction"] = nullptr;
  }
  json est = json::array();
  for (const auto& [k, e] : r.estimate.entries) {
    est.push_back({{"pairing", k.to_string()},
                   {"count", e.count},
                   {"frequency", e.frequency},
                   {"wilson_lo", e.wilson_lo},
                   {"wilson_hi", e.wilson_hi},
                   {"tau", e.tau}});
  }
  j["estimate"] = {{"total", r.estimate.total}, {"entries", est}};
  json cmp = json::array();
  for (const auto& row : r.comparison) {
    cmp.push_back({{"pairing", row.pairing.to_string()},
                   {"predicted", row.predicted},
                   {"frequency", row.frequency},
                   {"standard_error", finite_or_string(row.standard_error)},
                   {"z", finite_or_string(row.z)},
                   {"z_pass", row.z_pass},
                   {"abs_error", row.abs_error},
                   {"abs_pass", row.abs_pass}});
  }
  j["comparison"] = cmp;
  return j.dump(2) + "\n";
}

Report report_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("report is not valid JSON: ") + e.what());
  }
  try {
    Report r;
    r.model = j.at("model").get<std::string>();
    r.kappa = j.at("kappa").get<double>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.z_threshold = j.at("z_threshold").get<double>();
    r.bias_budget = j.at("bias_budget").get<double>();
    r.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
    if (!j.at("prediction").is_null()) {
      PairingPrediction p;
      for (const auto& e : j.at("prediction")) {
        p.probabilities.emplace(PlanarPairing::parse(e.at("pairing").get<std::string>()), e.at("p").get<double>());
      }
      r.prediction = p;
    }
    r.estimate.total = j.at("estimate").at("total").get<std::size_t>();
    for (const auto& e : j.at("estimate").at("entries")) {
      r.estimate.entries.emplace(PlanarPairing::parse(e.at("pairing").get<std::string>()),
                                 EstimateEntry{e.at("count").get<std::size_t>(), e.at("frequency").get<double>(),
                                               e.at("wilson_lo").get<double>(), e.at("wilson_hi").get<double>(),
                                               e.at("tau").get<double>()});
    }
    for (const auto& e : j.at("comparison")) {
      r.comparison.push_back({PlanarPairing::parse(e.at("pairing").get<std::string>()),
                              e.at("predicted").get<double>(), e.at("frequency").get<double>(),
                              number_from(e.at("standard_error")), number_from(e.at("z")), e.at("z_pass").get<bool>(),
                              e.at("abs_error").get<double>(), e.at("abs_pass").get<bool>()});
    }
    return r;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed report: ") + e.what());
  }
}

std::string to_csv(const Report& r) {
  std::ostringstream out;
  out << "pairing,count,frequency,wilson_lo,wilson_hi,tau,predicted,standard_error,z,abs_error,pass\n";
  for (const auto& [k, e] : r.estimate.entries) {
    out << '"' << k.to_string() << "\"," << e.count << ',' << fmt(e.frequency) << ',' << fmt(e.wilson_lo) << ','
        << fmt(e.wilson_hi) << ',' << fmt(e.tau);
    const auto row = std::find_if(r.comparison.begin(), r.comparison.end(), [&](const auto& c) { return c.pairing == k; });
    if (row != r.comparison.end()) {
      out << ',' << fmt(row->predicted) << ',' << fmt(row->standard_error) << ',' << fmt(row->z) << ','
          << fmt(row->abs_error) << ',' << (row->abs_pass ? "true" : "false") << '\n';
    } else {
      out << ",,,,,\n";
    }
  }
  return out.str();
}

std::string to_svg(const Report& r) {
  const std::size_t n = r.estimate.entries.size();
  const double bar = 30.0, group = 90.0, left = 50.0, top = 20.0, height = 200.0;
  const double width = left + group * static_cast<double>(std::max<std::size_t>(n, 1)) + 20.0;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\"" << fmt(top + height + 40)
      << "\">\n";
  out << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(top + height) << "\" x2=\"" << fmt(width - 10) << "\" y2=\""
      << fmt(top + height) << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(top) << "\" x2=\"" << fmt(left) << "\" y2=\""
      << fmt(top + height) << "\" stroke=\"black\"/>\n";
  const auto y_of = [&](double v) { return top + height * (1.0 - v); };
  std::size_t i = 0;
  for (const auto& [k, e] : r.estimate.entries) {
    const double x = left + 10.0 + group * static_cast<double>(i++);
    out << "<rect class=\"freq\" x=\"" << fmt(x) << "\" y=\"" << fmt(y_of(e.frequency)) << "\" width=\"" << fmt(bar)
        << "\" height=\"" << fmt(height * e.frequency) << "\" fill=\"steelblue\"/>\n";
    out << "<line class=\"err\" x1=\"" << fmt(x + bar / 2) << "\" y1=\"" << fmt(y_of(e.wilson_lo)) << "\" x2=\""
        << fmt(x + bar / 2) << "\" y2=\"" << fmt(y_of(e.wilson_hi)) << "\" stroke=\"black\"/>\n";
    double p = 0.0;
    if (r.prediction) {
      if (const auto it = r.prediction->probabilities.find(k); it != r.prediction->probabilities.end()) p = it->second;
    }
    out << "<rect class=\"pred\" x=\"" << fmt(x + bar) << "\" y=\"" << fmt(y_of(p)) << "\" width=\"" << fmt(bar)
        << "\" height=\"" << fmt(height * p) << "\" fill=\"darkorange\"/>\n";
    out << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(top + height + 15) << "\" font-size=\"10\">" << k.to_string()
        << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string render(const Report& report, OutputFormat format) {
  switch (format) {
    case OutputFormat::Json: return to_json(report);
    case OutputFormat::Csv: return to_csv(report);
    default: return to_svg(report);
  }
}

void emit(const Report& report, OutputFormat format, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  f << render(report, format);
  if (!f) throw Error("failed writing '" + path + "'");
}

}  // namespace msle
