// SPDX-License-Identifier: Apache-2.0
#include "pdc/config.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "pdc/errors.hpp"
#include "pdc/meanfield.hpp"

namespace pdc {

using json = nlohmann::json;

cplx SimConfig::coupling() const { return std::polar(K, -gauge_phase); }

cplx SimConfig::pump_amplitude() const { return std::polar(std::sqrt(std::max(n2_0, 0.0)), gauge_phase); }

double SimConfig::time_scale() const {
  const double k = std::abs(K);
  return n2_0 > 0.0 ? k * std::sqrt(n2_0) : k;
}

double SimConfig::t_end_scaled() const {
  if (t_max_scaled > 0.0) return raw_time ? t_max_scaled * time_scale() : t_max_scaled;
  return n2_0 > 0.0 ? 2.0 * t_conv(n2_0) : 10.0;
}

namespace {

template <class E>
struct EnumName {
  E value;
  std::string_view name;
};

constexpr EnumName<Method> kMethods[] = {{Method::classical, "classical"},
                                         {Method::linearized, "linearized"},
                                         {Method::meanfield, "meanfield"},
                                         {Method::exact, "exact"},
                                         {Method::adaptive, "adaptive"}};
constexpr EnumName<PropagatorMethod> kPropagators[] = {{PropagatorMethod::sector_ode, "sector_ode"},
                                                       {PropagatorMethod::sector_expm, "sector_expm"},
                                                       {PropagatorMethod::adaptive_frame, "adaptive_frame"}};
constexpr EnumName<SqueezeTracking> kTracking[] = {{SqueezeTracking::pump_integral, "pump_integral"},
                                                   {SqueezeTracking::covariance, "covariance"}};

template <class E, std::size_t N>
std::string_view name_of(const EnumName<E> (&table)[N], E v) {
  for (const auto& e : table)
    if (e.value == v) return e.name;
  return "?";
}

template <class E, std::size_t N>
E parse_enum(const EnumName<E> (&table)[N], std::string_view s, const char* key) {
  for (const auto& e : table)
    if (e.name == s) return e.value;
  std::ostringstream msg;
  msg << key << ": unknown value '" << s << "' (expected";
  for (const auto& e : table) msg << ' ' << e.name;
  msg << ')';
  throw ConfigError(msg.str());
}

[[noreturn]] void bad(const std::string& key, const std::string& why) { throw ConfigError(key + ": " + why); }

double get_number(const json& v, const std::string& key) {
  if (!v.is_number()) bad(key, "expected a number");
  return v.get<double>();
}

int get_int(const json& v, const std::string& key) {
  if (v.is_number_integer()) return v.get<int>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d == std::floor(d) && std::abs(d) < 2e9) return static_cast<int>(d);
  }
  bad(key, "expected an integer");
}

bool get_bool(const json& v, const std::string& key) {
  if (!v.is_boolean()) bad(key, "expected true or false");
  return v.get<bool>();
}

std::string get_string(const json& v, const std::string& key) {
  if (!v.is_string()) bad(key, "expected a string");
  return v.get<std::string>();
}

cplx get_complex(const json& v, const std::string& key) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  if (v.is_string()) {
    try {
      return parse_complex(v.get<std::string>());
    } catch (const ConfigError& e) {
      bad(key, e.what());
    }
  }
  bad(key, "expected a number, [re, im] or \"re,im\"");
}

using Setter = std::function<void(SimConfig&, const json&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"method", [](SimConfig& c, const json& v, const std::string& k) { c.method = parse_enum(kMethods, get_string(v, k), k.c_str()); }},
      {"K", [](SimConfig& c, const json& v, const std::string& k) { c.K = get_number(v, k); }},
      {"n2_0", [](SimConfig& c, const json& v, const std::string& k) { c.n2_0 = get_number(v, k); }},
      {"seed_alpha1", [](SimConfig& c, const json& v, const std::string& k) { c.seed_alpha1 = get_complex(v, k); }},
      {"gauge_phase", [](SimConfig& c, const json& v, const std::string& k) { c.gauge_phase = get_number(v, k); }},
      {"t_max_scaled", [](SimConfig& c, const json& v, const std::string& k) { c.t_max_scaled = get_number(v, k); }},
      {"n_points", [](SimConfig& c, const json& v, const std::string& k) { c.n_points = get_int(v, k); }},
      {"raw_time", [](SimConfig& c, const json& v, const std::string& k) { c.raw_time = get_bool(v, k); }},
      {"threads", [](SimConfig& c, const json& v, const std::string& k) { c.threads = get_int(v, k); }},
      {"meanfield_tol", [](SimConfig& c, const json& v, const std::string& k) { c.meanfield_tol = get_number(v, k); }},
      {"truncation.n2_max", [](SimConfig& c, const json& v, const std::string& k) { c.truncation.n2_max = get_int(v, k); }},
      {"truncation.sigma_mult", [](SimConfig& c, const json& v, const std::string& k) { c.truncation.sigma_mult = get_number(v, k); }},
      {"truncation.leak_tol", [](SimConfig& c, const json& v, const std::string& k) { c.truncation.leak_tol = get_number(v, k); }},
      {"truncation.norm_tol", [](SimConfig& c, const json& v, const std::string& k) { c.truncation.norm_tol = get_number(v, k); }},
      {"propagator.method", [](SimConfig& c, const json& v, const std::string& k) { c.propagator.method = parse_enum(kPropagators, get_string(v, k), k.c_str()); }},
      {"propagator.dt", [](SimConfig& c, const json& v, const std::string& k) { c.propagator.dt = get_number(v, k); }},
      {"propagator.step_tol", [](SimConfig& c, const json& v, const std::string& k) { c.propagator.step_tol = get_number(v, k); }},
      {"propagator.rebase_threshold", [](SimConfig& c, const json& v, const std::string& k) { c.propagator.rebase_threshold = get_number(v, k); }},
      {"propagator.squeeze_tracking", [](SimConfig& c, const json& v, const std::string& k) { c.propagator.squeeze_tracking = parse_enum(kTracking, get_string(v, k), k.c_str()); }},
      {"propagator.pump_frame_dim", [](SimConfig& c, const json& v, const std::string& k) { c.propagator.pump_frame_dim = get_int(v, k); }},
      {"propagator.sub_frame_dim", [](SimConfig& c, const json& v, const std::string& k) { c.propagator.sub_frame_dim = get_int(v, k); }},
      {"propagator.frame_leak_limit", [](SimConfig& c, const json& v, const std::string& k) { c.propagator.frame_leak_limit = get_number(v, k); }},
  };
  return table;
}

void apply_object(SimConfig& cfg, const json& obj, const std::string& prefix) {
  if (!obj.is_object()) bad(prefix.empty() ? "config" : prefix, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    const std::string full = prefix.empty() ? key : prefix + "." + key;
    if (prefix.empty() && (key == "truncation" || key == "propagator")) {
      apply_object(cfg, value, key);
      continue;
    }
    const auto& table = setters();
    const auto it = table.find(full);
    if (it == table.end()) bad(full, "unknown key");
    it->second(cfg, value, full);
  }
}

void require(bool ok, const char* key, const char* what) {
  if (!ok) bad(key, what);
}

bool finite(double x) { return std::isfinite(x); }

}  // namespace

std::string_view to_string(Method m) { return name_of(kMethods, m); }
std::string_view to_string(PropagatorMethod m) { return name_of(kPropagators, m); }
std::string_view to_string(SqueezeTracking m) { return name_of(kTracking, m); }
Method parse_method(std::string_view s) { return parse_enum(kMethods, s, "method"); }
PropagatorMethod parse_propagator_method(std::string_view s) { return parse_enum(kPropagators, s, "propagator.method"); }
SqueezeTracking parse_squeeze_tracking(std::string_view s) { return parse_enum(kTracking, s, "propagator.squeeze_tracking"); }

void validate(const SimConfig& c) {
  require(finite(c.K) && c.K > 0.0, "K", "must be finite and > 0");
  require(finite(c.n2_0) && c.n2_0 >= 0.0, "n2_0", "must be finite and >= 0");
  require(finite(c.seed_alpha1.real()) && finite(c.seed_alpha1.imag()), "seed_alpha1", "must be finite");
  require(finite(c.gauge_phase), "gauge_phase", "must be finite");
  require(finite(c.t_max_scaled) && c.t_max_scaled >= 0.0, "t_max_scaled", "must be > 0 (or 0 for the default)");
  require(c.n_points >= 2, "n_points", "must be >= 2");
  require(c.threads >= 1, "threads", "must be >= 1");
  require(finite(c.meanfield_tol) && c.meanfield_tol > 0.0, "meanfield_tol", "must be > 0");
  const auto& t = c.truncation;
  require(t.n2_max >= 0, "truncation.n2_max", "must be >= 0");
  require(finite(t.sigma_mult) && t.sigma_mult > 0.0, "truncation.sigma_mult", "must be > 0");
  require(t.leak_tol > 0.0 && t.leak_tol < 1.0, "truncation.leak_tol", "must lie in (0, 1)");
  require(finite(t.norm_tol) && t.norm_tol > 0.0, "truncation.norm_tol", "must be > 0");
  const auto& p = c.propagator;
  require(finite(p.dt) && p.dt > 0.0, "propagator.dt", "must be > 0");
  require(finite(p.step_tol) && p.step_tol > 0.0, "propagator.step_tol", "must be > 0");
  require(finite(p.rebase_threshold) && p.rebase_threshold > 0.0, "propagator.rebase_threshold", "must be > 0");
  require(p.pump_frame_dim >= 4, "propagator.pump_frame_dim", "must be >= 4");
  require(p.sub_frame_dim >= 4, "propagator.sub_frame_dim", "must be >= 4");
  require(p.frame_leak_limit > 0.0 && p.frame_leak_limit < 1.0, "propagator.frame_leak_limit", "must lie in (0, 1)");
}

SimConfig parse_config_json(std::string_view text, const SimConfig& base) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: malformed JSON: ") + e.what());
  }
  SimConfig cfg = base;
  apply_object(cfg, doc, "");
  validate(cfg);
  return cfg;
}

SimConfig load_config_file(const std::string& path, const SimConfig& base) {
  std::ifstream in(path);
  if (!in) throw IoError("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_json(ss.str(), base);
}

std::string config_to_json(const SimConfig& c, int indent) {
  // Key order is fixed (ordered_json) so the echo is byte-stable.
  nlohmann::ordered_json j;
  j["method"] = std::string(to_string(c.method));
  j["K"] = c.K;
  j["n2_0"] = c.n2_0;
  j["seed_alpha1"] = {c.seed_alpha1.real(), c.seed_alpha1.imag()};
  j["gauge_phase"] = c.gauge_phase;
  j["t_max_scaled"] = c.t_max_scaled;
  j["n_points"] = c.n_points;
  j["raw_time"] = c.raw_time;
  j["threads"] = c.threads;
  j["meanfield_tol"] = c.meanfield_tol;
  j["truncation"] = {{"n2_max", c.truncation.n2_max},
                     {"sigma_mult", c.truncation.sigma_mult},
                     {"leak_tol", c.truncation.leak_tol},
                     {"norm_tol", c.truncation.norm_tol}};
  const auto& p = c.propagator;
  j["propagator"] = {{"method", std::string(to_string(p.method))},
                     {"dt", p.dt},
                     {"step_tol", p.step_tol},
                     {"rebase_threshold", p.rebase_threshold},
                     {"squeeze_tracking", std::string(to_string(p.squeeze_tracking))},
                     {"pump_frame_dim", p.pump_frame_dim},
                     {"sub_frame_dim", p.sub_frame_dim},
                     {"frame_leak_limit", p.frame_leak_limit}};
  return j.dump(indent);
}

void set_config_value(SimConfig& cfg, std::string_view key, std::string_view value) {
  const std::string k(key);
  const auto& table = setters();
  const auto it = table.find(k);
  if (it == table.end()) bad(k, "unknown key");
  // Bare words such as sector_ode are not JSON; treat them as strings.
  json v = json::parse(value.begin(), value.end(), nullptr, false);
  if (v.is_discarded()) v = std::string(value);
  it->second(cfg, v, k);
}

cplx parse_complex(std::string_view s) {
  const std::string text(s);
  const auto comma = text.find(',');
  auto number = [&](const std::string& part) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(part, &used);
    } catch (const std::exception&) {
      throw ConfigError("cannot parse complex number '" + text + "'");
    }
    while (used < part.size() && std::isspace(static_cast<unsigned char>(part[used]))) ++used;
    if (used != part.size()) throw ConfigError("cannot parse complex number '" + text + "'");
    return x;
  };
  if (comma == std::string::npos) return {number(text), 0.0};
  return {number(text.substr(0, comma)), number(text.substr(comma + 1))};
}

}  // namespace pdc
