#pragma once

#include <functional>
#include <string>
#include <vector>

namespace nvlasov {

// Isotropic initial profile f^in(|p|) tabulated on [0, P0]; compact support,
// nonnegative. The tabulation doubles as the quadrature lattice for mu.
struct MomentumProfile {
  double p0 = 1.0;            // support radius
  std::vector<double> values; // f^in at q_k = k * p0/(n-1)

  int resolution() const { return static_cast<int>(values.size()); }
};

// C^1 bump amplitude * (1 - (q/P0)^2)^2 on [0, P0].
MomentumProfile make_bump_profile(double p0, double amplitude, int resolution = 2048);

// Scale the profile so the quadrature value of mu at delta = 0 equals target.
void normalize_to_mu0(MomentumProfile& profile, double target);

// mu as a function of the field shift delta = phi(t) - phi(0):
//   mu(delta) = e^delta 4 pi int_0^{P0} f^in(q) q^2 / sqrt(1 + q^2 e^{-2 delta}) dq
// (substitution q = p e^delta in the momentum integral of the transported f).
// Every quadrature term is nondecreasing in delta, so the discrete value
// inherits mu(delta) >= mu(0) e^delta exactly.
double mu_of_delta(const MomentumProfile& profile, double delta);

// (phi, dot phi) plus the shift delta for the homogeneous repulsive system.
struct HomogeneousState {
  double t = 0.0;
  double phi = 0.0;
  double phi_dot = 0.0;
  double phi_ref = 0.0;  // phi(0), fixing delta = phi - phi_ref
};

struct HomogeneousControls {
  double dt_base = 1e-3;
  double phi_max = 1e3;      // blow-up threshold on phi
  long max_steps = 2000000;
  double halve_when = 0.1;   // halve dt while |phi_dot| dt exceeds this
};

enum class BlowupOutcome { blew_up, inconclusive };

struct HomPoint {
  double t, phi, phi_dot, mu;
};

struct BlowupReport {
  BlowupOutcome outcome = BlowupOutcome::inconclusive;
  double t_star = 0.0;       // estimate from extrapolating e^{-phi/2} to zero
  double bracket_lo = 0.0;   // threshold-crossing time
  double bracket_hi = 0.0;   // crossing time + analytic remaining-time bound
  long steps = 0;
  double phi_final = 0.0;
  double phi_dot_final = 0.0;

  // worst per-step slack of the proof's inequalities along the trajectory,
  // relative to the local scale (nonnegative slack = inequality held)
  double lyapunov_worst_slack = 0.0;    // monotone (phi_dot)^2 - lambda e^phi
  double mu_growth_worst_slack = 0.0;   // mu_{k+1} >= mu_k e^{dphi}
  double mu_lower_worst_slack = 0.0;    // mu(t) >= mu(0) e^{delta}
  bool phi_dot_monotone = true;         // ddot phi = mu >= 0
};

struct HomTrajectory {
  std::vector<HomPoint> points;
  BlowupReport report;
};

// RK4 on (phi, phi_dot) with ddot phi = mu(delta) (repulsive sign), step size
// halved whenever |phi_dot| dt exceeds the control threshold. Stops at the phi
// threshold (capped at 600 so mu(delta) stays representable; the analytic
// remaining-time bound pi/sqrt(2 mu) closes the bracket from there, far below
// any reportable width) or when max_steps is exhausted (inconclusive).
HomTrajectory integrate_homogeneous(const HomogeneousState& state0,
                                    const MomentumProfile& profile,
                                    const HomogeneousControls& controls);

struct Theorem2Report {
  double r = 0.0;
  double mu0 = 0.0;
  double phi0 = 0.0;
  double phi_dot0 = 0.0;
  bool hyp_radius = false;    // R^2 mu(0) >= 2
  bool hyp_velocity = false;  // phi_dot(0) >= sqrt(2 mu(0))
  bool applicable = false;
  double lambda = 0.0;        // 2 mu(0) e^{-phi0}
  double t_bound = 0.0;       // 2 e^{-phi0/2} / sqrt(lambda)
  BlowupReport blowup;
  bool bound_satisfied = false;  // t* <= min(t_bound, R), asserted when applicable
  std::string summary() const;
};

// Check the blow-up hypotheses, integrate (always), and compare the numeric
// blow-up time against the analytic bound. Inapplicable hypotheses produce a
// report, never an error.
Theorem2Report verify_theorem2(double r, const MomentumProfile& profile,
                               double phi0, double phi_dot0,
                               const HomogeneousControls& controls = {});

}  // namespace nvlasov
