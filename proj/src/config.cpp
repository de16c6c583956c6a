#include "symplecta/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace symplecta {

using nlohmann::json;

std::string_view to_string(Suite suite) noexcept {
  switch (suite) {
    case Suite::Core: return "core";
    case Suite::Continuity: return "continuity";
    case Suite::Gallery: return "gallery";
    case Suite::Kg: return "kg";
    case Suite::Probe: return "probe";
    case Suite::All: return "all";
  }
  return "all";
}

std::string_view to_string(Format format) noexcept { return format == Format::Csv ? "csv" : "json"; }

Suite parse_suite(std::string_view name) {
  for (Suite s : {Suite::Core, Suite::Continuity, Suite::Gallery, Suite::Kg, Suite::Probe, Suite::All}) {
    if (to_string(s) == name) return s;
  }
  throw Error(ErrorCode::InvalidValue, "unknown suite '" + std::string(name) + "'");
}

Format parse_format(std::string_view name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  throw Error(ErrorCode::UnsupportedFormat, "unknown format '" + std::string(name) + "'");
}

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw Error(ErrorCode::UnknownKey, where + key);
  }
}

[[noreturn]] void invalid(const std::string& key, const std::string& why) {
  throw Error(ErrorCode::InvalidValue, key + ": " + why);
}

double number(const json& v, const std::string& key) {
  if (!v.is_number()) invalid(key, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) invalid(key, "must be finite");
  return d;
}

std::int64_t integer(const json& v, const std::string& key) {
  if (!v.is_number_integer()) invalid(key, "expected an integer");
  return v.get<std::int64_t>();
}

std::vector<double> number_list(const json& v, const std::string& key) {
  if (!v.is_array()) invalid(key, "expected an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) out.push_back(number(e, key));
  return out;
}

std::vector<double> grid(const json& v, const std::string& key, double lo, double hi) {
  auto out = number_list(v, key);
  if (out.empty()) invalid(key, "must not be empty");
  for (double d : out) {
    if (d < lo || d > hi) invalid(key, "entries must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return out;
}

}  // namespace

SuiteConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::InvalidValue, "configuration must be a JSON object");
  reject_unknown(doc,
                 {"version", "suite", "seed", "instances", "max_dim", "N", "L", "s_grid", "tau_grid", "potential",
                  "region", "chi", "time", "tolerances", "output"},
                 "");
  SuiteConfig c;
  if (doc.contains("version")) {
    c.version = static_cast<int>(integer(doc["version"], "version"));
    if (c.version != 1) invalid("version", "only version 1 is supported");
  }
  if (doc.contains("suite")) {
    if (!doc["suite"].is_string()) invalid("suite", "expected a string");
    c.suite = parse_suite(doc["suite"].get<std::string>());
  }
  if (doc.contains("seed")) {
    const auto s = integer(doc["seed"], "seed");
    if (s < 0) invalid("seed", "must be non-negative");
    c.seed = static_cast<std::uint64_t>(s);
  }
  if (doc.contains("instances")) {
    const auto v = integer(doc["instances"], "instances");
    if (v < 1 || v > 100000) invalid("instances", "must lie in [1, 100000]");
    c.instances = static_cast<int>(v);
  }
  if (doc.contains("max_dim")) {
    const auto v = integer(doc["max_dim"], "max_dim");
    if (v < 2 || v > 400) invalid("max_dim", "must lie in [2, 400]");
    c.max_dim = v;
  }
  if (doc.contains("N")) {
    const json& v = doc["N"];
    std::vector<json> items = v.is_array() ? std::vector<json>(v.begin(), v.end()) : std::vector<json>{v};
    if (items.empty()) invalid("N", "must not be empty");
    for (const auto& e : items) {
      const auto n = integer(e, "N");
      if (n < 8 || n > 4096) invalid("N", "entries must lie in [8, 4096]");
      c.n.push_back(n);
    }
  }
  if (doc.contains("L")) {
    c.l = number(doc["L"], "L");
    if (!(*c.l > 0.0)) invalid("L", "must be positive");
  }
  if (doc.contains("s_grid")) c.s_grid = grid(doc["s_grid"], "s_grid", 0.0, 2.0);
  if (doc.contains("tau_grid")) c.tau_grid = grid(doc["tau_grid"], "tau_grid", 0.0, 1.0);
  if (doc.contains("potential")) {
    const json& v = doc["potential"];
    if (!v.is_array() || v.empty()) invalid("potential", "expected a non-empty array of pieces");
    for (const auto& piece : v) {
      if (!piece.is_object()) invalid("potential", "pieces must be objects");
      reject_unknown(piece, {"t", "r"}, "potential.");
      if (!piece.contains("t") || !piece.contains("r")) invalid("potential", "pieces need 't' and 'r'");
      PotentialSpec p;
      p.t = number(piece["t"], "potential.t");
      p.r = piece["r"].is_array() ? number_list(piece["r"], "potential.r")
                                  : std::vector<double>{number(piece["r"], "potential.r")};
      if (p.r.empty()) invalid("potential.r", "must not be empty");
      for (double r : p.r) {
        if (!(r > 0.0)) invalid("potential.r", "must be positive");
      }
      if (!c.potential.empty() && !(p.t > c.potential.back().t)) invalid("potential.t", "must increase");
      c.potential.push_back(std::move(p));
    }
  }
  if (doc.contains("region")) {
    const auto r = number_list(doc["region"], "region");
    if (r.size() != 2 || !(r[0] >= 0.0) || !(r[1] <= 1.0) || !(r[0] < r[1])) {
      invalid("region", "expected [start, end) fractions with 0 <= start < end <= 1");
    }
    c.region = std::make_pair(r[0], r[1]);
  }
  if (doc.contains("chi")) {
    c.chi = number_list(doc["chi"], "chi");
    for (double x : c.chi) {
      if (x < 0.0 || x > 1.0) invalid("chi", "entries must lie in [0, 1]");
    }
  }
  if (doc.contains("time")) {
    const json& t = doc["time"];
    if (!t.is_object()) invalid("time", "expected an object");
    reject_unknown(t, {"t0", "t1"}, "time.");
    if (t.contains("t0")) c.t0 = number(t["t0"], "time.t0");
    if (t.contains("t1")) c.t1 = number(t["t1"], "time.t1");
    if (c.t0 && c.t1 && *c.t1 < *c.t0) invalid("time", "t1 must not precede t0");
  }
  if (doc.contains("tolerances")) {
    const json& t = doc["tolerances"];
    if (!t.is_object()) invalid("tolerances", "expected an object");
    reject_unknown(t, {"degeneracy", "domination", "classification", "metric", "verification"}, "tolerances.");
    const auto set = [&](const char* key, double& field) {
      if (!t.contains(key)) return;
      field = number(t[key], std::string("tolerances.") + key);
      if (!(field > 0.0)) invalid(std::string("tolerances.") + key, "must be positive");
    };
    set("degeneracy", c.tolerances.degeneracy);
    set("domination", c.tolerances.domination);
    set("classification", c.tolerances.classification);
    set("metric", c.tolerances.metric);
    set("verification", c.tolerances.verification);
  }
  if (doc.contains("output")) {
    const json& o = doc["output"];
    if (!o.is_object()) invalid("output", "expected an object");
    reject_unknown(o, {"path", "format"}, "output.");
    if (o.contains("path")) {
      if (!o["path"].is_string() || o["path"].get<std::string>().empty()) invalid("output.path", "expected a path");
      c.output_path = o["path"].get<std::string>();
    }
    if (o.contains("format")) {
      if (!o["format"].is_string()) invalid("output.format", "expected a string");
      c.output_format = parse_format(o["format"].get<std::string>());
    }
  }
  return c;
}

SuiteConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  json doc;
  try {
    doc = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  return parse_config(doc);
}

json to_json(const SuiteConfig& c) {
  json j;
  j["version"] = c.version;
  j["suite"] = std::string(to_string(c.suite));
  j["seed"] = c.seed;
  j["instances"] = c.instances ? json(*c.instances) : json(nullptr);
  j["max_dim"] = c.max_dim ? json(*c.max_dim) : json(nullptr);
  j["N"] = c.n;
  j["L"] = c.l ? json(*c.l) : json(nullptr);
  j["s_grid"] = c.s_grid;
  j["tau_grid"] = c.tau_grid;
  j["potential"] = json::array();
  for (const auto& p : c.potential) j["potential"].push_back({{"t", p.t}, {"r", p.r}});
  j["region"] = c.region ? json::array({c.region->first, c.region->second}) : json(nullptr);
  j["chi"] = c.chi;
  j["time"] = {{"t0", c.t0 ? json(*c.t0) : json(nullptr)}, {"t1", c.t1 ? json(*c.t1) : json(nullptr)}};
  j["tolerances"] = {{"degeneracy", c.tolerances.degeneracy},
                     {"domination", c.tolerances.domination},
                     {"classification", c.tolerances.classification},
                     {"metric", c.tolerances.metric},
                     {"verification", c.tolerances.verification}};
  j["output"] = {{"path", c.output_path}, {"format", std::string(to_string(c.output_format))}};
  return j;
}

}  // namespace symplecta
