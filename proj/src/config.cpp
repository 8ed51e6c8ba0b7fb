#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "akepler/errors.hpp"
#include "akepler/harness.hpp"
#include "akepler/log.hpp"

namespace akepler {
namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.contains(key)) {
      throw ConfigError("unknown config key '" + where + key + "'");
    }
  }
}

double number(const json& obj, const char* key) {
  const auto& v = obj.at(key);
  if (!v.is_number()) {
    throw ConfigError(std::string("config key '") + key + "' must be a number");
  }
  return v.get<double>();
}

std::string text(const json& obj, const char* key) {
  const auto& v = obj.at(key);
  if (!v.is_string()) {
    throw ConfigError(std::string("config key '") + key + "' must be a string");
  }
  return v.get<std::string>();
}

Vec3 vector3(const json& v, const char* key) {
  if (!v.is_array() || v.size() != 3) {
    throw ConfigError(std::string("config key '") + key +
                      "' must be a number or a 3-element array");
  }
  Vec3 out;
  for (int i = 0; i < 3; ++i) {
    if (!v[i].is_number()) {
      throw ConfigError(std::string("config key '") + key +
                        "' has a non-numeric component");
    }
    out[i] = v[i].get<double>();
  }
  return out;
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  reject_unknown(doc,
                 {"variant", "m", "q", "omega0", "r_min_guard", "r0", "v0",
                  "theta", "tau", "settle_orbits", "steps_per_orbit", "dt",
                  "orbits", "scheme", "nucleus", "output", "workers"},
                 "");

  ExperimentConfig c;
  if (doc.contains("variant")) c.variant = variant_from_string(text(doc, "variant"));
  if (doc.contains("m")) c.kepler.m = number(doc, "m");
  if (doc.contains("q")) c.kepler.q = number(doc, "q");
  if (doc.contains("omega0")) c.omega0 = number(doc, "omega0");
  if (doc.contains("r_min_guard")) c.r_min_guard = number(doc, "r_min_guard");
  if (doc.contains("theta")) c.theta = number(doc, "theta");
  if (doc.contains("tau")) c.tau = number(doc, "tau");
  if (doc.contains("settle_orbits")) c.settle_orbits = number(doc, "settle_orbits");
  if (doc.contains("steps_per_orbit")) {
    c.steps_per_orbit = number(doc, "steps_per_orbit");
  }
  if (doc.contains("dt")) c.dt = number(doc, "dt");
  if (doc.contains("orbits")) c.orbits = number(doc, "orbits");
  if (doc.contains("scheme")) c.scheme = scheme_from_string(text(doc, "scheme"));
  if (doc.contains("workers")) {
    const auto& w = doc.at("workers");
    if (!w.is_number_integer() || w.get<int>() < 1) {
      throw ConfigError("config key 'workers' must be an integer >= 1");
    }
    c.workers = w.get<int>();
  }

  for (const char* key : {"r0", "v0"}) {
    if (!doc.contains(key)) continue;
    const auto& v = doc.at(key);
    const bool is_r = key[0] == 'r';
    if (v.is_number()) {
      (is_r ? c.r0 : c.v0) = v.get<double>();
    } else {
      (is_r ? c.r0_vec : c.v0_vec) = vector3(v, key);
    }
  }
  if (c.r0_vec.has_value() != c.v0_vec.has_value()) {
    throw ConfigError("'r0' and 'v0' must both be vectors or both be numbers");
  }

  if (doc.contains("nucleus")) {
    const auto& n = doc.at("nucleus");
    if (!n.is_object()) throw ConfigError("'nucleus' must be an object");
    reject_unknown(n, {"rho", "t_loop_orbits"}, "nucleus.");
    if (n.contains("rho")) c.nucleus.rho = number(n, "rho");
    if (n.contains("t_loop_orbits")) {
      c.nucleus.t_loop_orbits = number(n, "t_loop_orbits");
    }
  }
  if (doc.contains("output")) {
    const auto& o = doc.at("output");
    if (!o.is_object()) throw ConfigError("'output' must be an object");
    reject_unknown(o, {"csv", "svg"}, "output.");
    if (o.contains("csv")) c.output.csv = text(o, "csv");
    if (o.contains("svg")) c.output.svg = text(o, "svg");
  }

  if (!(c.steps_per_orbit > 0.0)) {
    throw ConfigError("'steps_per_orbit' must be positive");
  }
  if (c.steps_per_orbit < 200.0) {
    warn("steps_per_orbit = " + std::to_string(c.steps_per_orbit) +
         " is below 200");
  }
  if (c.dt && !(*c.dt > 0.0)) throw ConfigError("'dt' must be positive");
  if (!(c.orbits > 0.0)) throw ConfigError("'orbits' must be positive");
  if (!(c.settle_orbits >= 0.0)) {
    throw ConfigError("'settle_orbits' must be non-negative");
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace akepler
