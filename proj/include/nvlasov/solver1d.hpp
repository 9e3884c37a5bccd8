#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nvlasov/diagnostics.hpp"
#include "nvlasov/field1d.hpp"
#include "nvlasov/grid.hpp"
#include "nvlasov/interp.hpp"

namespace nvlasov {

// Raised when a run cannot continue (support reaching the grid boundary,
// non-finite values). The message carries the step report.
struct SolverAbort : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverOptions {
  int rk_order = 2;          // backward tracing order inside the step loop
  int substeps = 1;          // tracing substeps per dt
  InterpOrder f_interp = InterpOrder::cubic;
  InterpOrder field_interp = InterpOrder::cubic;
  int corrector_iters = 1;   // predictor-corrector passes per step
};

// Trapezoidal quadrature of f/sqrt(1+p^2) over the p-lattice; exact zero
// outside the support box.
SourceSlice compute_mu(const PhaseGrid& f);

// Full state of the coupled evolution at one time level.
struct SimState {
  int step = 0;
  double t = 0.0;
  PhaseGrid f;
  FieldState1D field;
  SourceSlice mu;
  RunningSup monitor;
  DiagnosticsRecord diag;
};

// Build the level-0 state: scans support, computes mu and the initial
// diagnostics. Throws SolverAbort if the support margin is already violated.
SimState make_sim_state(PhaseGrid f0, FieldState1D field0, const SolverOptions& opts);

// One step of the coupled system: predictor field step with mu_next = mu_now,
// semi-Lagrangian transport of f along backward characteristics of the
// time-interpolated field with the multiplicative update
//   f^{n+1}(x,p) = f^n(X,P) exp[2(phi^{n+1}(x) - phi^n(X))],
// then corrector passes that recompute mu^{n+1} from the transported f and
// redo field step and transport. CFL-free since |dx/ds| < 1 = dx/dt.
SimState coupled_step(const SimState& state, const SolverOptions& opts);

struct RunResult {
  std::vector<DiagnosticsRecord> records;
  SimState final_state;
  bool aborted = false;
  std::string abort_reason;
};

// Step until t_final (or abort, keeping the last valid state). on_snapshot,
// when set, fires at level 0 and every snapshot_every steps.
RunResult run(SimState state, double t_final, const SolverOptions& opts,
              int snapshot_every = 0,
              const std::function<void(const SimState&)>& on_snapshot = {});

struct PicardDeltas {
  double df;     // sup |f^(k) - f^(k-1)| over all levels
  double dphi;   // sup |phi^(k) - phi^(k-1)|
  double ddphi;  // sup over dt/dx derivative differences
  double total() const { return df + dphi + ddphi; }
};

struct PicardReport {
  std::vector<PicardDeltas> deltas;
  int iterations = 0;
  bool converged = false;
  bool diverged = false;
};

struct PicardResult {
  PicardReport report;
  PhaseGrid f_final;        // last iterate at t = T
  FieldState1D field_final;
};

// Iteration mirroring the existence scheme: iterate 0 freezes (f^in, phi0);
// iterate k transports f along the characteristics of the previous iterate's
// field (including the multiplicative factor from the previous phi) and then
// solves the wave equation sourced by its own mu. Divergence (three
// consecutive growing deltas) is reported, not thrown.
PicardResult picard_solve(const PhaseGrid& f0, const FieldState1D& field0,
                          double T, double tol, int max_iter,
                          const SolverOptions& opts);

}  // namespace nvlasov
