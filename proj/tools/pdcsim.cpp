// SPDX-License-Identifier: Apache-2.0
//
// pdcsim: command-line front end over the C interface.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pdc/pdc.h"

namespace {

struct Failure {
  int exit_code;
};

void check(pdc_status s, const char* what) {
  if (s == PDC_OK) return;
  std::cerr << "pdcsim: " << what << " failed [" << pdc_status_name(s) << "]: " << pdc_last_error() << '\n';
  throw Failure{static_cast<int>(s) == 99 ? 99 : 10 + static_cast<int>(s)};
}

struct StringDeleter {
  void operator()(char* s) const { pdc_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct ConfigDeleter {
  void operator()(pdc_config* c) const { pdc_config_destroy(c); }
};
using OwnedConfig = std::unique_ptr<pdc_config, ConfigDeleter>;

struct TrajectoryDeleter {
  void operator()(pdc_trajectory* t) const { pdc_trajectory_destroy(t); }
};

void emit(const std::string& path, const char* text) {
  if (path.empty() || path == "-") {
    std::fputs(text, stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "pdcsim: cannot write '" << path << "'\n";
    throw Failure{17};
  }
  out << text;
}

// Options shared by run, compare and sweep.
struct Common {
  std::string config_path;
  std::optional<std::string> method;
  std::optional<double> n2;
  std::optional<double> tmax;
  std::optional<int> points;
  std::optional<int> threads;
  std::optional<std::string> seed;
  bool raw_time = false;
  std::vector<std::string> overrides;
  std::string out;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON configuration file");
    cmd->add_option("--method", method, "classical | linearized | meanfield | exact | adaptive");
    cmd->add_option("--n2", n2, "mean initial pump photon number");
    cmd->add_option("--tmax", tmax, "end time (scaled unless --raw-time)");
    cmd->add_option("--points", points, "number of output times");
    cmd->add_option("--threads", threads, "worker threads for sector propagation");
    cmd->add_option("--seed-alpha1", seed, "sub-harmonic seed amplitude, re or re,im");
    cmd->add_flag("--raw-time", raw_time, "time in units of 1/K instead of scaled time");
    cmd->add_option("--set", overrides, "key=value override, e.g. propagator.method=sector_ode");
    cmd->add_option("--out", out, "output CSV (default stdout)");
  }

  OwnedConfig build() const {
    pdc_config* raw = nullptr;
    if (config_path.empty()) check(pdc_config_create(&raw), "config");
    else check(pdc_config_load_file(config_path.c_str(), &raw), "config");
    OwnedConfig cfg(raw);
    auto set = [&](const char* key, const std::string& value) { check(pdc_config_set(cfg.get(), key, value.c_str()), key); };
    auto number = [](double x) {
      std::ostringstream ss;
      ss.precision(17);
      ss << x;
      return ss.str();
    };
    for (const auto& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) {
        std::cerr << "pdcsim: --set expects key=value, got '" << kv << "'\n";
        throw Failure{18};
      }
      set(kv.substr(0, eq).c_str(), kv.substr(eq + 1));
    }
    if (method) set("method", *method);
    if (n2) set("n2_0", number(*n2));
    if (tmax) set("t_max_scaled", number(*tmax));
    if (points) set("n_points", std::to_string(*points));
    if (threads) set("threads", std::to_string(*threads));
    if (seed) set("seed_alpha1", "\"" + *seed + "\"");
    if (raw_time) set("raw_time", "true");
    return cfg;
  }
};

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      std::cerr << "pdcsim: cannot parse '" << item << "' as a number\n";
      throw Failure{18};
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Degenerate parametric down-conversion simulator"};
  app.set_version_flag("--version", pdc_version());
  app.require_subcommand(1);

  Common run_opts;
  std::string features_out;
  auto* run = app.add_subcommand("run", "simulate one method and write the trajectory CSV");
  run_opts.attach(run);
  run->add_option("--features-out", features_out, "features JSON file");

  Common cmp_opts;
  std::string methods = "meanfield,exact";
  std::string report_out;
  auto* cmp = app.add_subcommand("compare", "run several methods on a shared grid");
  cmp_opts.attach(cmp);
  cmp->add_option("--methods", methods, "comma-separated method list");
  cmp->add_option("--report-out", report_out, "divergence report JSON (default stderr)");

  Common sweep_opts;
  std::string n2_list = "50,100,200";
  auto* sweep = app.add_subcommand("sweep", "maximum conversion efficiency versus n2_0");
  sweep_opts.attach(sweep);
  sweep->add_option("--n2-list", n2_list, "comma-separated n2_0 values");

  auto* selftest = app.add_subcommand("selftest", "run the invariant suite on small instances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*run) {
      OwnedConfig cfg = run_opts.build();
      pdc_trajectory* raw = nullptr;
      check(pdc_run(cfg.get(), &raw), "run");
      std::unique_ptr<pdc_trajectory, TrajectoryDeleter> traj(raw);
      char* csv = nullptr;
      check(pdc_trajectory_csv(traj.get(), &csv), "csv");
      OwnedString csv_owned(csv);
      emit(run_opts.out, csv);
      if (!features_out.empty()) {
        char* js = nullptr;
        check(pdc_trajectory_features_json(traj.get(), &js), "features");
        OwnedString js_owned(js);
        const std::string text = std::string(js) + "\n";
        emit(features_out, text.c_str());
      }
    } else if (*cmp) {
      OwnedConfig cfg = cmp_opts.build();
      char* csv = nullptr;
      char* report = nullptr;
      check(pdc_compare(cfg.get(), methods.c_str(), &csv, &report), "compare");
      OwnedString a(csv), b(report);
      emit(cmp_opts.out, csv);
      const std::string text = std::string(report) + "\n";
      if (report_out.empty()) std::fputs(text.c_str(), stderr);
      else emit(report_out, text.c_str());
    } else if (*sweep) {
      OwnedConfig cfg = sweep_opts.build();
      const auto list = parse_list(n2_list);
      char* csv = nullptr;
      check(pdc_sweep(cfg.get(), list.data(), list.size(), &csv), "sweep");
      OwnedString a(csv);
      emit(sweep_opts.out, csv);
    } else if (*selftest) {
      char* report = nullptr;
      int failures = 0;
      check(pdc_selftest(&report, &failures), "selftest");
      OwnedString a(report);
      std::fputs(report, stdout);
      return failures == 0 ? 0 : 1;
    }
  } catch (const Failure& f) {
    return f.exit_code;
  }
  return 0;
}
