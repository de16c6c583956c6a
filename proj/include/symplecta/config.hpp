#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "symplecta/symplectic.hpp"

namespace symplecta {

enum class Suite { Core, Continuity, Gallery, Kg, Probe, All };
enum class Format { Json, Csv };

std::string_view to_string(Suite suite) noexcept;
std::string_view to_string(Format format) noexcept;
/// Throws InvalidValue for unknown names.
Suite parse_suite(std::string_view name);
/// Throws UnsupportedFormat for unknown names.
Format parse_format(std::string_view name);

struct PotentialSpec {
  double t = 0.0;
  std::vector<double> r;  ///< one entry: constant in space; otherwise one entry per site
};

/// Validated run configuration. Unset optionals fall back to per-suite defaults.
struct SuiteConfig {
  int version = 1;
  Suite suite = Suite::All;
  std::uint64_t seed = 0;
  std::optional<int> instances;
  std::optional<Index> max_dim;
  std::vector<Index> n;
  std::optional<double> l;
  std::vector<double> s_grid;
  std::vector<double> tau_grid;
  std::vector<PotentialSpec> potential;
  std::optional<std::pair<double, double>> region;  ///< [start, end) as fractions of the circle
  std::vector<double> chi;
  std::optional<double> t0;
  std::optional<double> t1;
  Tolerances tolerances;
  std::string output_path = "symplecta_report.json";
  Format output_format = Format::Json;
};

/// Throws UnknownKey, InvalidValue.
SuiteConfig parse_config(const nlohmann::json& doc);
/// Throws ParseError when the file cannot be read or is not JSON.
SuiteConfig load_config(const std::string& path);

/// Normalized echo of every field (defaults included) for report headers.
nlohmann::json to_json(const SuiteConfig& config);

}  // namespace symplecta
