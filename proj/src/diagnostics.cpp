#include "nvlasov/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

namespace nvlasov {

namespace {
inline double trap_w(int j, int last) { return (j == 0 || j == last) ? 0.5 : 1.0; }
}  // namespace

EnergyMoments energy_moments(const PhaseGrid& f, const std::vector<double>& dt_phi,
                             const std::vector<double>& dx_phi) {
  const int nx = f.x.nodes(), np = f.p.nodes();
  if (static_cast<int>(dt_phi.size()) != nx || static_cast<int>(dx_phi.size()) != nx)
    throw std::invalid_argument("energy_moments: field arrays must share the x-lattice");

  EnergyMoments m;
  m.energy_density.resize(nx);
  m.momentum_density.resize(nx);
  const double dp = f.p.step, dx = f.x.step;
  for (int i = 0; i < nx; ++i) {
    double kin = 0.0, flux = 0.0;
    for (int j = 0; j < np; ++j) {
      const double fij = f.at(i, j);
      if (fij == 0.0) continue;
      const double pj = f.p.coord(j);
      const double w = trap_w(j, np - 1) * dp;
      kin += w * std::sqrt(1.0 + pj * pj) * fij;
      flux += w * pj * fij;
    }
    const double fld = 0.5 * (dt_phi[i] * dt_phi[i] + dx_phi[i] * dx_phi[i]);
    m.energy_density[i] = kin + fld;
    m.momentum_density[i] = flux - dt_phi[i] * dx_phi[i];
    const double wx = trap_w(i, nx - 1) * dx;
    m.kinetic_total += wx * kin;
    m.field_total += wx * fld;
  }
  m.total = m.kinetic_total + m.field_total;
  return m;
}

double rest_mass(const PhaseGrid& f, const std::vector<double>& phi) {
  const int nx = f.x.nodes(), np = f.p.nodes();
  if (static_cast<int>(phi.size()) != nx)
    throw std::invalid_argument("rest_mass: phi must share the x-lattice");
  double total = 0.0;
  for (int i = 0; i < nx; ++i) {
    double col = 0.0;
    for (int j = 0; j < np; ++j) {
      const double fij = f.at(i, j);
      if (fij != 0.0) col += trap_w(j, np - 1) * fij;
    }
    if (col != 0.0)
      total += trap_w(i, nx - 1) * col * std::exp(-phi[i]);
  }
  return total * f.x.step * f.p.step;
}

SupportMonitor support_monitor(const PhaseGrid& f, const std::vector<double>& phi,
                               RunningSup& history) {
  if (!f.support.empty()) {
    for (int j = f.support.j_lo; j <= f.support.j_hi; ++j) {
      bool used = false;
      for (int i = f.support.i_lo; i <= f.support.i_hi && !used; ++i)
        used = f.at(i, j) != 0.0;
      if (used) history.p_sup = std::max(history.p_sup, std::fabs(f.p.coord(j)));
    }
    for (int i = f.support.i_lo; i <= f.support.i_hi; ++i) {
      bool used = false;
      for (int j = f.support.j_lo; j <= f.support.j_hi && !used; ++j)
        used = f.at(i, j) != 0.0;
      if (used) history.q_sup = std::max(history.q_sup, std::fabs(phi[i]));
    }
  }
  history.initialized = true;
  return {history.p_sup, history.q_sup, history.p_sup + history.q_sup};
}

double local_conservation_residual(const std::vector<double>& e_prev,
                                   const std::vector<double>& e_next,
                                   const std::vector<double>& p_now,
                                   double dt, double dx) {
  const size_t n = p_now.size();
  if (e_prev.size() != n || e_next.size() != n)
    throw std::invalid_argument("local_conservation_residual: level size mismatch");
  double sup = 0.0;
  for (size_t i = 1; i + 1 < n; ++i) {
    const double r = (e_next[i] - e_prev[i]) / (2.0 * dt) +
                     (p_now[i + 1] - p_now[i - 1]) / (2.0 * dx);
    sup = std::max(sup, std::fabs(r));
  }
  return sup;
}

PhysicalFrames to_physical(const PhaseGrid& f, const std::vector<double>& phi, int dim,
                           InterpOrder order) {
  if (static_cast<int>(phi.size()) != f.x.nodes())
    throw std::invalid_argument("to_physical: phi must share the x-lattice");
  PhysicalFrames out;
  out.frak = f;
  for (int i = 0; i < f.x.nodes(); ++i) {
    const double w = std::exp(-(1.0 + dim) * phi[i]);
    for (int j = 0; j < f.p.nodes(); ++j) out.frak.at(i, j) = w * f.at(i, j);
  }
  out.frak.rescan_support();
  // capture by value: the evaluation rule outlives this call
  const Axis xaxis = f.x;
  const std::vector<double> phi_copy = phi;
  const PhaseGrid frak_copy = out.frak;
  out.frak_ph = [frak_copy, phi_copy, xaxis, order](double x, double p) {
    const double phix = interp1(phi_copy, xaxis, std::clamp(x, xaxis.min, xaxis.max()), order);
    return interp_density(frak_copy, x, std::exp(phix) * p, order);
  };
  return out;
}

double mu_bound_slack(double f_sup, double p_sup, double mu_sup) {
  return 2.0 * f_sup * std::asinh(p_sup) - mu_sup;
}

}  // namespace nvlasov
