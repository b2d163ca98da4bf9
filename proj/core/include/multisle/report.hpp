#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "multisle/pairing.hpp"
#include "multisle/prediction.hpp"

namespace msle {

/// Wilson score interval. Throws InvalidArgument for trials == 0 or
/// successes > trials.
std::pair<double, double> wilson_interval(std::size_t successes, std::size_t trials, double confidence = 0.95);

/// Integrated autocorrelation time of equally spaced series, in units of the
/// spacing, with Sokal's automatic window (c = 5). Series are treated as
/// independent chains sharing one mean. Returns 1 for white noise and for
/// constant series; never less than 1.
double integrated_autocorrelation_time(const std::vector<std::vector<double>>& chains);

struct EstimateEntry {
  std::size_t count = 0;
  double frequency = 0.0;
  double wilson_lo = 0.0;
  double wilson_hi = 0.0;
  /// Autocorrelation time of the indicator in samples (1 for independent runs).
  double tau = 1.0;
  bool operator==(const EstimateEntry&) const = default;
};

struct PairingEstimate {
  std::size_t total = 0;
  std::map<PlanarPairing, EstimateEntry> entries;
  bool operator==(const PairingEstimate&) const = default;
};

/// One entry per pairing of `n_pairs` pairs, zero counts included.
PairingEstimate make_estimate(int n_pairs, const std::vector<PlanarPairing>& samples,
                              const std::map<PlanarPairing, double>& tau = {});
PairingEstimate make_estimate(int n_pairs, const std::map<PlanarPairing, std::size_t>& counts);

struct ComparisonRow {
  PlanarPairing pairing;
  double predicted = 0.0;
  double frequency = 0.0;
  /// sqrt(p (1 - p) tau / n)
  double standard_error = 0.0;
  double z = 0.0;
  bool z_pass = true;
  double abs_error = 0.0;
  /// abs_error within bias_budget + z_threshold * standard_error; the row verdict
  bool abs_pass = true;
  bool operator==(const ComparisonRow&) const = default;
};

/// Throws InvalidArgument if the pairing sets differ.
std::vector<ComparisonRow> compare(const PairingEstimate& estimate, const PairingPrediction& prediction,
                                   double z_threshold = 4.0, double bias_budget = 0.03);

struct Report {
  std::string model;
  double kappa = 0.0;
  std::uint64_t seed = 0;
  double z_threshold = 4.0;
  double bias_budget = 0.03;
  std::map<std::string, std::string> metadata;
  std::optional<PairingPrediction> prediction;
  PairingEstimate estimate;
  std::vector<ComparisonRow> comparison;

  /// All rows pass both checks; vacuously true without a prediction.
  bool passed() const;
  bool operator==(const Report&) const;
};

enum class OutputFormat { Json, Csv, Svg };

OutputFormat parse_format(const std::string& s);
std::string extension(OutputFormat f);

/// Sorted keys, fixed number formatting.
std::string to_json(const Report& report);
Report report_from_json(const std::string& text);
/// One row per pairing.
std::string to_csv(const Report& report);
/// Frequency and prediction bars per pairing with Wilson error bars.
std::string to_svg(const Report& report);
std::string render(const Report& report, OutputFormat format);
/// Writes render(report, format) to path. Throws Error on I/O failure.
void emit(const Report& report, OutputFormat format, const std::string& path);

}  // namespace msle
