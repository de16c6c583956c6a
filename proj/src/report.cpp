#include "symplecta/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace symplecta {

using nlohmann::json;

Record make_record(std::string name, std::string anchor, double measured, double bound, std::string relation,
                   bool soft) {
  Record r;
  r.name = std::move(name);
  r.anchor = std::move(anchor);
  r.measured = measured;
  r.bound = bound;
  r.soft = soft;
  if (relation == "<=") {
    r.pass = measured <= bound;
  } else if (relation == ">=") {
    r.pass = measured >= bound;
  } else {
    throw Error(ErrorCode::InvalidArgument, "relation must be <= or >=");
  }
  r.relation = std::move(relation);
  return r;
}

Record error_record(std::string name, std::string anchor, const std::exception& error) {
  Record r;
  r.name = std::move(name);
  r.anchor = std::move(anchor);
  r.measured = std::nan("");
  r.bound = std::nan("");
  r.note = error.what();
  return r;
}

namespace {

double violation(const Record& r) {
  if (std::isnan(r.measured) || std::isnan(r.bound)) return std::numeric_limits<double>::infinity();
  return r.relation == ">=" ? r.bound - r.measured : r.measured - r.bound;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double null_or_number(const json& v) { return v.is_null() ? std::nan("") : v.get<double>(); }

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

Summary summarize(const Report& report) {
  Summary s;
  s.records = report.records.size();
  bool any_hard = false;
  for (const auto& r : report.records) {
    if (r.soft) {
      ++s.soft;
      if (!r.pass) ++s.soft_failed;
      continue;
    }
    r.pass ? ++s.passed : ++s.failed;
    const double v = violation(r);
    s.max_violation = any_hard ? std::max(s.max_violation, v) : v;
    any_hard = true;
  }
  return s;
}

int exit_code(const Report& report) { return summarize(report).failed == 0 ? 0 : 1; }

std::string emit_report(const Report& report, Format format) {
  std::vector<const Record*> sorted;
  for (const auto& r : report.records) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(), [](const Record* a, const Record* b) { return a->name < b->name; });

  if (format == Format::Csv) {
    std::string out = "check,anchor,measured,bound,pass\n";
    for (const Record* r : sorted) {
      out += csv_field(r->name) + "," + csv_field(r->anchor) + "," + format_double(r->measured) + "," +
             format_double(r->bound) + "," + (r->pass ? "true" : "false") + "\n";
    }
    return out;
  }
  if (format != Format::Json) throw Error(ErrorCode::UnsupportedFormat, "unknown report format");

  json doc;
  doc["header"] = {{"artifact", "symplecta"},
                   {"version", report.version},
                   {"config", report.config},
                   {"tolerances",
                    {{"degeneracy", report.tolerances.degeneracy},
                     {"domination", report.tolerances.domination},
                     {"classification", report.tolerances.classification},
                     {"metric", report.tolerances.metric},
                     {"verification", report.tolerances.verification}}}};
  doc["records"] = json::array();
  for (const Record* r : sorted) {
    json rec = {{"name", r->name},         {"anchor", r->anchor}, {"measured", number_or_null(r->measured)},
                {"bound", number_or_null(r->bound)}, {"relation", r->relation}, {"pass", r->pass},
                {"soft", r->soft}};
    if (!r->note.empty()) rec["note"] = r->note;
    doc["records"].push_back(std::move(rec));
  }
  const Summary s = summarize(report);
  doc["summary"] = {{"records", s.records},         {"passed", s.passed}, {"failed", s.failed},
                    {"soft", s.soft},               {"soft_failed", s.soft_failed},
                    {"max_violation", number_or_null(s.max_violation)}};
  return doc.dump(2) + "\n";
}

std::string emit_table(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) out += (i ? "," : "") + csv_field(table.columns[i]);
  out += "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_double(row[i]);
    out += "\n";
  }
  return out;
}

Report parse_report(const std::string& text) {
  try {
    const json doc = json::parse(text);
    Report rep;
    const json& h = doc.at("header");
    rep.version = h.at("version").get<std::string>();
    rep.config = h.at("config");
    const json& t = h.at("tolerances");
    rep.tolerances.degeneracy = t.at("degeneracy").get<double>();
    rep.tolerances.domination = t.at("domination").get<double>();
    rep.tolerances.classification = t.at("classification").get<double>();
    rep.tolerances.metric = t.at("metric").get<double>();
    rep.tolerances.verification = t.at("verification").get<double>();
    for (const auto& r : doc.at("records")) {
      Record rec;
      rec.name = r.at("name").get<std::string>();
      rec.anchor = r.at("anchor").get<std::string>();
      rec.measured = null_or_number(r.at("measured"));
      rec.bound = null_or_number(r.at("bound"));
      rec.relation = r.at("relation").get<std::string>();
      rec.pass = r.at("pass").get<bool>();
      rec.soft = r.at("soft").get<bool>();
      if (r.contains("note")) rec.note = r["note"].get<std::string>();
      rep.records.push_back(std::move(rec));
    }
    return rep;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

std::string summary_block(const Report& report) {
  const Summary s = summarize(report);
  std::ostringstream out;
  out << "symplecta " << report.version << "\n";
  out << "records: " << s.records << "  passed: " << s.passed << "  failed: " << s.failed << "  soft: " << s.soft
      << " (" << s.soft_failed << " outside bound)\n";
  out << "max violation: " << format_double(s.max_violation) << "\n";
  for (const auto& r : report.records) {
    if (!r.pass && !r.soft) out << "FAILED " << r.name << " (" << r.anchor << ")" << (r.note.empty() ? "" : ": ")
                                << r.note << "\n";
  }
  out << (s.failed == 0 ? "status: PASS" : "status: FAIL") << "\n";
  return out.str();
}

}  // namespace symplecta
