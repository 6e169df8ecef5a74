// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>

#include "pdc/fockspace.hpp"

namespace pdc {

enum class Method { classical, linearized, meanfield, exact, adaptive };
enum class PropagatorMethod { sector_ode, sector_expm, adaptive_frame };

// How the squeeze parameter of the adaptive frame is advanced between steps.
enum class SqueezeTracking {
  pump_integral,  // eta += K <a2> dt
  covariance,     // eta fitted to the sub-harmonic second moments
};

struct PropagatorSpec {
  PropagatorMethod method = PropagatorMethod::sector_expm;
  double dt = 0.01;              // scaled-time step of the adaptive frame
  double step_tol = 1e-10;       // local error tolerance (ODE, Krylov)
  double rebase_threshold = 0.05;
  SqueezeTracking squeeze_tracking = SqueezeTracking::covariance;
  int pump_frame_dim = 32;
  int sub_frame_dim = 32;
  double frame_leak_limit = 1e-4;
};

struct SimConfig {
  Method method = Method::exact;
  double K = 1.0;
  double n2_0 = 200.0;
  cplx seed_alpha1{};
  double gauge_phase = 0.0;     // pump phase phi, paired with K -> K e^{-i phi}
  double t_max_scaled = 0.0;    // <= 0 selects 2 * tau_conv (or 10 when n2_0 == 0)
  int n_points = 400;
  bool raw_time = false;        // t_max and the CSV time column in units of 1/K
  int threads = 1;
  double meanfield_tol = 1e-10;
  TruncationSpec truncation;
  PropagatorSpec propagator;

  // Complex coupling and initial pump amplitude after the gauge rotation.
  cplx coupling() const;
  cplx pump_amplitude() const;
  // tau = time_scale() * t; |K| sqrt(n2_0), or |K| for an empty pump.
  double time_scale() const;
  // Resolved scaled end time (applies the defaults above).
  double t_end_scaled() const;
};

std::string_view to_string(Method m);
std::string_view to_string(PropagatorMethod m);
std::string_view to_string(SqueezeTracking m);
Method parse_method(std::string_view s);
PropagatorMethod parse_propagator_method(std::string_view s);
SqueezeTracking parse_squeeze_tracking(std::string_view s);

// Throws ConfigError naming the offending key.
void validate(const SimConfig& cfg);

// JSON document with optional "truncation" and "propagator" objects.
// Unknown keys are rejected. Keys absent from the document keep the values in `base`.
SimConfig parse_config_json(std::string_view text, const SimConfig& base = {});
SimConfig load_config_file(const std::string& path, const SimConfig& base = {});
std::string config_to_json(const SimConfig& cfg, int indent = 2);

// Sets one key from its textual value, e.g. "n2_0" = "200" or
// "propagator.method" = "sector_ode". Used for command-line overrides.
void set_config_value(SimConfig& cfg, std::string_view key, std::string_view value);

// "re" or "re,im".
cplx parse_complex(std::string_view s);

}  // namespace pdc
