#pragma once

#include <functional>
#include <vector>

#include "nvlasov/grid.hpp"
#include "nvlasov/interp.hpp"

namespace nvlasov {

// Per-step scalars recorded along a run.
struct DiagnosticsRecord {
  double t = 0.0;
  double total_energy = 0.0;    // kinetic_energy + field_energy
  double field_energy = 0.0;
  double kinetic_energy = 0.0;
  double rest_mass = 0.0;
  double p_sup = 0.0;           // running max of |p| on supp f
  double q_sup = 0.0;           // running max of |phi| on the x-support of f
  double lambda = 0.0;          // p_sup + q_sup
  double f_sup = 0.0;
  double mu_sup = 0.0;
  double energy_residual_sup = 0.0;  // centered residual at the previous level
  double mu_bound_slack = 0.0;  // 2 |f|_inf asinh(P) - |mu|_inf
};

struct EnergyMoments {
  std::vector<double> energy_density;    // int sqrt(1+p^2) f dp + (dtphi^2 + dxphi^2)/2
  std::vector<double> momentum_density;  // int p f dp - dtphi dxphi
  double kinetic_total = 0.0;
  double field_total = 0.0;
  double total = 0.0;
};

// Trapezoid-in-p moments plus field terms; totals by trapezoid-in-x.
EnergyMoments energy_moments(const PhaseGrid& f, const std::vector<double>& dt_phi,
                             const std::vector<double>& dx_phi);

// Conserved rest mass: double trapezoid of f exp(-phi).
double rest_mass(const PhaseGrid& f, const std::vector<double>& phi);

// Running suprema feeding the continuation quantities.
struct RunningSup {
  double p_sup = 0.0;
  double q_sup = 0.0;
  bool initialized = false;
};

struct SupportMonitor {
  double p_sup, q_sup, lambda;
};

// Update the running maxima from the current nonzero cells of f: P from |p_j|
// over supported momenta, Q from |phi_i| over supported columns. The sup over
// an empty support keeps the history (initial data define the t = 0 values).
SupportMonitor support_monitor(const PhaseGrid& f, const std::vector<double>& phi,
                               RunningSup& history);

// sup_i |(e^{n+1} - e^{n-1})/(2 dt) + (p_{i+1} - p_{i-1})/(2 dx)| over
// interior nodes, the discrete form of dt e + dx p = 0.
double local_conservation_residual(const std::vector<double>& e_prev,
                                   const std::vector<double>& e_next,
                                   const std::vector<double>& p_now,
                                   double dt, double dx);

// Frame conversions: the unweighted density frak = exp(-(1+N) phi) f, and the
// mass-shell density evaluated by sampling frak at momentum exp(phi(x)) p.
struct PhysicalFrames {
  PhaseGrid frak;
  std::function<double(double x, double p)> frak_ph;
};

PhysicalFrames to_physical(const PhaseGrid& f, const std::vector<double>& phi, int dim,
                           InterpOrder order = InterpOrder::cubic);

// 2 |f|_inf asinh(P) - |mu|_inf; nonnegative up to quadrature error.
double mu_bound_slack(double f_sup, double p_sup, double mu_sup);

}  // namespace nvlasov
