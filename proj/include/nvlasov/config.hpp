#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "nvlasov/initial_data.hpp"
#include "nvlasov/solver1d.hpp"

namespace nvlasov {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class RunMode { solve1d, picard1d, blowup3d, kernelcheck };

// Validated scenario configuration. Parsed from a flat "key = value" text
// document; see parse_config for the key set.
struct SimConfig {
  RunMode mode = RunMode::solve1d;
  FieldSign sign = FieldSign::attractive;

  // 1D lattice: nx/np are cell counts, dt = (x_max - x_min)/nx enforced
  double x_min = -8.0, x_max = 8.0;
  int nx = 0;
  double p_min = -6.0, p_max = 6.0;
  int np = 0;
  double dt = 0.0;
  double t_final = 0.0;
  int snapshot_every = 0;
  std::string out_dir = "out";

  FDataSpec f_data;
  FieldDataSpec phi0_data, phi1_data;

  double picard_tol = 1e-10;
  int picard_max_iter = 25;

  // homogeneous blow-up scenario; the profile amplitude is normalized so the
  // quadrature value of mu(0) equals blowup.mu0
  double bu_mu0 = 2.0;
  double bu_p0 = 1.0;
  int bu_quad_n = 2048;
  double bu_phi0 = 0.0;
  double bu_phidot0 = 0.0;
  double bu_r = 1.0;
  double bu_phi_max = 1e3;
  double bu_dt = 1e-3;
  long bu_max_steps = 2000000;

  uint64_t kc_seed = 12345;
  long kc_samples = 1000000;
  double kc_p_max = 1e3;

  SolverOptions solver;

  Axis x_axis() const { return Axis(x_min, x_max, nx); }
  Axis p_axis() const { return Axis(p_min, p_max, np); }
};

// Parse and validate. Unknown keys are rejected (no silent defaults for
// misspellings); every violated invariant is reported with its key path.
SimConfig parse_config(const std::string& text);

// Canonical text form; parse_config(serialize_config(c)) reproduces c.
std::string serialize_config(const SimConfig& cfg);

}  // namespace nvlasov
