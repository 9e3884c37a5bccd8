#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "nvlasov/characteristics.hpp"
#include "nvlasov/grid.hpp"
#include "nvlasov/interp.hpp"

namespace nvlasov {

enum class FieldSign { attractive, repulsive };

// -1 for the attractive source -mu, +1 for the repulsive source +mu.
inline double source_sign(FieldSign s) { return s == FieldSign::attractive ? -1.0 : 1.0; }

// Analytic wave initial data (phi0, phi1) together with the exact derivative
// and antiderivative the characteristic scheme needs for boundary inflow.
struct WaveData1D {
  std::function<double(double)> phi0;
  std::function<double(double)> dphi0;
  std::function<double(double)> phi1;
  std::function<double(double)> phi1_prim;  // antiderivative of phi1
};

WaveData1D zero_wave_data();

// Closed-form free solution of dtt phi - dxx phi = 0 with data (phi0, phi1):
//   phi  = [phi0(x+t) + phi0(x-t)]/2 + [Phi1(x+t) - Phi1(x-t)]/2
//   u/v  = (dt+dx / dt-dx) phi advect the initial invariants exactly.
FieldSample<1> free_dalembert(const WaveData1D& data, double t, double x);

// mu(x_i) at a fixed time level; mu >= 0 since it integrates f >= 0 against a
// positive weight.
using SourceSlice = std::vector<double>;

// Scalar field phi and its Riemann invariants u = dt phi + dx phi,
// v = dt phi - dx phi on the spatial lattice. The coupled solver enforces the
// magic timestep dt = dx under which u, v advect by exact lattice shifts.
//
// phi itself is advanced by the characteristic parallelogram identity
//   phi(t+dt, x) = phi(t, x+dx) + phi(t, x-dx) - phi(t-dt, x) + sgn dt^2 mu(t, x),
// exact for every solution of the free equation on the dt = dx lattice and
// second order in the source (midpoint quadrature over the characteristic
// diamond, exact for constant mu). The first step, which has no previous
// level, uses the d'Alembert triangle formula with the exact antiderivative
// of phi1. phi_prev holds the retarded level once stepping has begun.
//
// Boundary nodes take phi, u, v from the free evolution of the initial data.
// That is exact as long as the forward lightcone of supp f^in stays inside
// the grid, which run setup checks; field_step additionally aborts if the
// source support comes within one cell of the boundary.
struct FieldState1D {
  Axis x;
  double t = 0.0;
  FieldSign sign = FieldSign::attractive;
  std::vector<double> phi, u, v;
  std::vector<double> phi_prev;  // empty before the first step
  WaveData1D data;

  std::vector<double> dt_phi() const;
  std::vector<double> dx_phi() const;
};

FieldState1D make_field_state(const Axis& x, const WaveData1D& data, FieldSign sign);

// One lattice step of the sourced wave equation. mu_next may be a predictor;
// the coupled loop re-runs the step with the corrected value.
FieldState1D field_step(const FieldState1D& state, const SourceSlice& mu_now,
                        const SourceSlice& mu_next, double dt);

// Riemann-invariant reconstruction ((u+v)/2, (u-v)/2) = (dt phi, dx phi).
std::pair<std::vector<double>, std::vector<double>> derivatives(const FieldState1D& state);

// Field sampler between two stored levels: linear in t, configurable order in
// x (clamped at the lattice edges, where f vanishes anyway).
struct InterpolatedField1D {
  const FieldState1D* lo = nullptr;
  const FieldState1D* hi = nullptr;
  InterpOrder order = InterpOrder::cubic;

  bool covers(double a, double b) const {
    const double pad = 1e-12 * (1.0 + std::fabs(hi->t));
    return a >= lo->t - pad && b <= hi->t + pad;
  }

  FieldSample<1> operator()(double t, const Vec1& x) const;
};

}  // namespace nvlasov
