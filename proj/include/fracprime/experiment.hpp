#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace fracprime {

inline constexpr int kSchemaVersion = 1;

/// A series of (N, value) pairs with run metadata. N is strictly increasing.
struct ExperimentResult {
  std::string name;
  /// Selects the CSV layout: "N,value_re,value_im" instead of "N,value".
  bool complex_values = false;
  std::vector<std::uint64_t> N;
  std::vector<std::complex<double>> values;
  nlohmann::ordered_json metadata = nlohmann::ordered_json::object();
  double wall_seconds = 0.0;

  void push(std::uint64_t n, std::complex<double> value);
  void push(std::uint64_t n, double value) { push(n, std::complex<double>(value, 0.0)); }
  std::size_t size() const { return N.size(); }
};

/// Values print with %.17g so reruns are byte-identical.
std::string to_csv(const ExperimentResult& result);
/// Parses what to_csv writes.
ExperimentResult from_csv(const std::string& text);
nlohmann::ordered_json to_json(const ExperimentResult& result);
/// Self-contained line chart of |value| against log10 N.
std::string to_svg(const ExperimentResult& result);

/// Writes <dir>/<name>.csv and <name>.json, plus <name>.svg when asked.
void write_artifacts(const ExperimentResult& result, const std::filesystem::path& dir, bool svg);

std::string format_double(double v);

}  // namespace fracprime
