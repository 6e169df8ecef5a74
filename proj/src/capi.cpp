// SPDX-License-Identifier: Apache-2.0
#include "pdc/pdc.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "pdc/analysis.hpp"
#include "pdc/driver.hpp"
#include "pdc/errors.hpp"
#include "pdc/exactdyn.hpp"
#include "pdc/selftest.hpp"
#include "pdc/serialize.hpp"

struct pdc_config {
  pdc::SimConfig cfg;
};

struct pdc_trajectory {
  pdc::Trajectory traj;
  pdc::TrajectoryFeatures features;
};

namespace {

thread_local std::string g_last_error;

pdc_status fail(pdc_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <class F>
pdc_status guarded(F&& f) {
  try {
    g_last_error.clear();
    f();
    return PDC_OK;
  } catch (const pdc::Error& e) {
    return fail(static_cast<pdc_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return fail(PDC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PDC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(PDC_ERR_INTERNAL, "unknown exception");
  }
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void need(const void* p, const char* what) {
  if (!p) throw pdc::ArgumentError(std::string(what) + " must not be null");
}

}  // namespace

extern "C" {

const char* pdc_version(void) { return pdc::version(); }

const char* pdc_last_error(void) { return g_last_error.c_str(); }

const char* pdc_status_name(pdc_status s) {
  switch (s) {
    case PDC_OK: return "ok";
    case PDC_ERR_CONFIG: return "config";
    case PDC_ERR_TRUNCATION: return "truncation";
    case PDC_ERR_INTEGRATION: return "integration";
    case PDC_ERR_INTEGRITY: return "integrity";
    case PDC_ERR_DOMAIN: return "domain";
    case PDC_ERR_BASIS_TOO_SMALL: return "basis_too_small";
    case PDC_ERR_IO: return "io";
    case PDC_ERR_ARGUMENT: return "argument";
    case PDC_ERR_SYMMETRY: return "symmetry";
    case PDC_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void pdc_string_free(char* s) { std::free(s); }

pdc_status pdc_config_create(pdc_config** out) {
  return guarded([&] {
    need(out, "out");
    *out = new pdc_config{};
  });
}

pdc_status pdc_config_load_file(const char* path, pdc_config** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = nullptr;
    auto c = std::make_unique<pdc_config>();
    c->cfg = pdc::load_config_file(path);
    *out = c.release();
  });
}

pdc_status pdc_config_load_json(const char* json, pdc_config** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    *out = nullptr;
    auto c = std::make_unique<pdc_config>();
    c->cfg = pdc::parse_config_json(json);
    *out = c.release();
  });
}

pdc_status pdc_config_set(pdc_config* cfg, const char* key, const char* value) {
  return guarded([&] {
    need(cfg, "cfg");
    need(key, "key");
    need(value, "value");
    pdc::SimConfig next = cfg->cfg;
    pdc::set_config_value(next, key, value);
    cfg->cfg = next;
  });
}

pdc_status pdc_config_to_json(const pdc_config* cfg, char** out) {
  return guarded([&] {
    need(cfg, "cfg");
    need(out, "out");
    *out = dup_string(pdc::config_to_json(cfg->cfg));
  });
}

void pdc_config_destroy(pdc_config* cfg) { delete cfg; }

pdc_status pdc_run(const pdc_config* cfg, pdc_trajectory** out) {
  return guarded([&] {
    need(cfg, "cfg");
    need(out, "out");
    *out = nullptr;
    auto t = std::make_unique<pdc_trajectory>();
    t->traj = pdc::simulate(cfg->cfg);
    t->features = pdc::extract_features(t->traj);
    *out = t.release();
  });
}

size_t pdc_trajectory_size(const pdc_trajectory* traj) { return traj ? traj->traj.size() : 0; }

pdc_status pdc_trajectory_get(const pdc_trajectory* traj, size_t index, pdc_observables* out) {
  return guarded([&] {
    need(traj, "traj");
    need(out, "out");
    if (index >= traj->traj.size()) throw pdc::ArgumentError("index out of range");
    const pdc::Observables& o = traj->traj.points[index];
    *out = pdc_observables{traj->traj.tau[index], o.n1, o.n2, o.a1.real(), o.a1.imag(), o.a2.real(), o.a2.imag(),
                           o.a1sq.real(), o.a1sq.imag(), o.var_x1, o.var_p1, o.var_x2, o.var_p2, o.norm2,
                           o.manley_rowe};
  });
}

pdc_status pdc_trajectory_features(const pdc_trajectory* traj, pdc_features* out) {
  return guarded([&] {
    need(traj, "traj");
    need(out, "out");
    const auto& f = traj->features;
    *out = pdc_features{f.max_conversion_efficiency, f.t_of_max_conversion, f.min_var_p1, f.t_of_min_var_p1,
                        f.max_var_x2, f.t_of_max_var_x2, f.pump_amplitude_min, f.t_of_pump_amplitude_min,
                        f.var_x2_at_max_conversion, traj->traj.manley_rowe_drift,
                        static_cast<int>(f.warnings.size())};
  });
}

pdc_status pdc_trajectory_csv(const pdc_trajectory* traj, char** out) {
  return guarded([&] {
    need(traj, "traj");
    need(out, "out");
    *out = dup_string(pdc::trajectory_csv(traj->traj));
  });
}

pdc_status pdc_trajectory_features_json(const pdc_trajectory* traj, char** out) {
  return guarded([&] {
    need(traj, "traj");
    need(out, "out");
    *out = dup_string(pdc::features_json(traj->features, traj->traj));
  });
}

void pdc_trajectory_destroy(pdc_trajectory* traj) { delete traj; }

pdc_status pdc_compare(const pdc_config* cfg, const char* methods, char** csv_out, char** report_out) {
  return guarded([&] {
    need(cfg, "cfg");
    need(methods, "methods");
    std::vector<std::string> list;
    std::stringstream ss(methods);
    for (std::string item; std::getline(ss, item, ',');)
      if (!item.empty()) list.push_back(item);
    const pdc::CompareResult res = pdc::compare_methods(cfg->cfg, list);
    if (res.runs.empty()) {
      std::string msg = "compare: every method failed";
      for (const auto& [m, why] : res.failures) msg += "; " + m + ": " + why;
      throw pdc::ArgumentError(msg);
    }
    if (csv_out) *csv_out = dup_string(pdc::compare_csv(res));
    if (report_out) *report_out = dup_string(pdc::compare_report_json(res));
  });
}

pdc_status pdc_sweep(const pdc_config* cfg, const double* n2_values, size_t count, char** csv_out) {
  return guarded([&] {
    need(cfg, "cfg");
    need(n2_values, "n2_values");
    need(csv_out, "csv_out");
    const std::vector<double> list(n2_values, n2_values + count);
    *csv_out = dup_string(pdc::sweep_csv(pdc::efficiency_sweep(list, cfg->cfg)));
  });
}

pdc_status pdc_gauge_check(const pdc_config* cfg, double phase, double tol, double* max_deviation, int* passed) {
  return guarded([&] {
    need(cfg, "cfg");
    const pdc::GaugeReport r = pdc::gauge_check(cfg->cfg, phase, tol);
    if (max_deviation) *max_deviation = r.max_deviation;
    if (passed) *passed = r.passed ? 1 : 0;
  });
}

pdc_status pdc_selftest(char** report_out, int* failures) {
  return guarded([&] {
    const auto checks = pdc::run_selftest();
    std::ostringstream out;
    int bad = 0;
    for (const auto& c : checks) {
      out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
      if (!c.passed) ++bad;
    }
    if (failures) *failures = bad;
    if (report_out) *report_out = dup_string(out.str());
  });
}

}  // extern "C"
