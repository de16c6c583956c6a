#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "symplecta/config.hpp"

namespace symplecta {

inline constexpr const char* kArtifactVersion = "1.0.0";

/// One checked statement. `relation` is "<=" or ">="; soft records are
/// reported but never affect the exit code.
struct Record {
  std::string name;
  std::string anchor;
  double measured = 0.0;
  double bound = 0.0;
  std::string relation = "<=";
  bool pass = false;
  bool soft = false;
  std::string note;
};

/// Builds a record whose pass flag compares measured against bound (NaN fails).
Record make_record(std::string name, std::string anchor, double measured, double bound, std::string relation = "<=",
                   bool soft = false);

/// Record for a check that threw instead of producing a number.
Record error_record(std::string name, std::string anchor, const std::exception& error);

/// Plot-ready numeric table emitted as CSV next to the report.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Report {
  std::string version = kArtifactVersion;
  nlohmann::json config = nlohmann::json::object();
  Tolerances tolerances;
  std::vector<Record> records;
  std::vector<Table> tables;
};

struct Summary {
  std::size_t records = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t soft = 0;
  std::size_t soft_failed = 0;
  double max_violation = 0.0;  ///< largest excess past the bound among hard records
};

Summary summarize(const Report& report);

/// 0 when every hard record passes, 1 otherwise.
int exit_code(const Report& report);

/// JSON (sorted keys, shortest round-trip floats) or CSV
/// (`check,anchor,measured,bound,pass`, RFC-4180 quoting, LF endings).
std::string emit_report(const Report& report, Format format);
std::string emit_table(const Table& table);

/// Inverse of the JSON emitter. Throws ParseError.
Report parse_report(const std::string& text);

/// Human-readable summary block printed on stdout.
std::string summary_block(const Report& report);

}  // namespace symplecta
