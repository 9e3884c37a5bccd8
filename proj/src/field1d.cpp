#include "nvlasov/field1d.hpp"

#include <cmath>
#include <stdexcept>

namespace nvlasov {

WaveData1D zero_wave_data() {
  auto zero = [](double) { return 0.0; };
  return {zero, zero, zero, zero};
}

FieldSample<1> free_dalembert(const WaveData1D& data, double t, double x) {
  const double xp = x + t, xm = x - t;
  const double u0 = data.phi1(xp) + data.dphi0(xp);   // invariant carried leftward
  const double v0 = data.phi1(xm) - data.dphi0(xm);   // invariant carried rightward
  FieldSample<1> s;
  s.phi = 0.5 * (data.phi0(xp) + data.phi0(xm)) +
          0.5 * (data.phi1_prim(xp) - data.phi1_prim(xm));
  s.dt_phi = 0.5 * (u0 + v0);
  s.grad[0] = 0.5 * (u0 - v0);
  return s;
}

std::vector<double> FieldState1D::dt_phi() const {
  std::vector<double> out(phi.size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = 0.5 * (u[i] + v[i]);
  return out;
}

std::vector<double> FieldState1D::dx_phi() const {
  std::vector<double> out(phi.size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = 0.5 * (u[i] - v[i]);
  return out;
}

FieldState1D make_field_state(const Axis& x, const WaveData1D& data, FieldSign sign) {
  FieldState1D st;
  st.x = x;
  st.t = 0.0;
  st.sign = sign;
  st.data = data;
  const int n = x.nodes();
  st.phi.resize(n);
  st.u.resize(n);
  st.v.resize(n);
  for (int i = 0; i < n; ++i) {
    const double xi = x.coord(i);
    st.phi[i] = data.phi0(xi);
    st.u[i] = data.phi1(xi) + data.dphi0(xi);
    st.v[i] = data.phi1(xi) - data.dphi0(xi);
  }
  return st;
}

FieldState1D field_step(const FieldState1D& state, const SourceSlice& mu_now,
                        const SourceSlice& mu_next, double dt) {
  const int n = state.x.nodes();
  if (dt != state.x.step)
    throw std::invalid_argument("field_step: dt must equal the lattice spacing dx");
  if (static_cast<int>(mu_now.size()) != n || static_cast<int>(mu_next.size()) != n)
    throw std::invalid_argument("field_step: source slice size mismatch");
  for (int i : {0, 1, n - 2, n - 1})
    if (mu_now[i] != 0.0 || mu_next[i] != 0.0)
      throw std::runtime_error("field_step: source support within one cell of the boundary, domain too small");

  const double sgn = source_sign(state.sign);
  const double t_new = state.t + dt;

  FieldState1D out;
  out.x = state.x;
  out.t = t_new;
  out.sign = state.sign;
  out.data = state.data;
  out.phi.resize(n);
  out.u.resize(n);
  out.v.resize(n);

  // u advects leftward, v rightward, one cell per step; trapezoidal source
  // along each characteristic segment.
  for (int i = 0; i < n - 1; ++i)
    out.u[i] = state.u[i + 1] + sgn * 0.5 * dt * (mu_now[i + 1] + mu_next[i]);
  for (int i = 1; i < n; ++i)
    out.v[i] = state.v[i - 1] + sgn * 0.5 * dt * (mu_now[i - 1] + mu_next[i]);

  // inflow values from the free evolution of the initial data
  const double x_lo = state.x.min, x_hi = state.x.max();
  out.u[n - 1] = state.data.phi1(x_hi + t_new) + state.data.dphi0(x_hi + t_new);
  out.v[0] = state.data.phi1(x_lo - t_new) - state.data.dphi0(x_lo - t_new);

  if (state.phi_prev.empty()) {
    // first step: d'Alembert triangle formula based at t = 0; the source
    // integral over the triangle weights the two levels 2:1, exact for
    // constant mu and O(dt^3) once overall
    for (int i = 1; i < n - 1; ++i) {
      const double xi = state.x.coord(i);
      const double free_part =
          0.5 * (state.data.phi0(xi + dt) + state.data.phi0(xi - dt)) +
          0.5 * (state.data.phi1_prim(xi + dt) - state.data.phi1_prim(xi - dt));
      const double tri =
          dt * dt *
          (2.0 * (mu_now[i - 1] + 2.0 * mu_now[i] + mu_now[i + 1]) / 4.0 + mu_next[i]) / 3.0;
      out.phi[i] = free_part + sgn * 0.5 * tri;
    }
  } else {
    // characteristic parallelogram identity with midpoint diamond quadrature
    for (int i = 1; i < n - 1; ++i)
      out.phi[i] = state.phi[i + 1] + state.phi[i - 1] - state.phi_prev[i] +
                   sgn * dt * dt * mu_now[i];
  }
  out.phi[0] = free_dalembert(state.data, t_new, x_lo).phi;
  out.phi[n - 1] = free_dalembert(state.data, t_new, x_hi).phi;

  out.phi_prev = state.phi;
  return out;
}

std::pair<std::vector<double>, std::vector<double>> derivatives(const FieldState1D& state) {
  return {state.dt_phi(), state.dx_phi()};
}

FieldSample<1> InterpolatedField1D::operator()(double t, const Vec1& x) const {
  const double span = hi->t - lo->t;
  double th = span > 0.0 ? (t - lo->t) / span : 0.0;
  th = std::clamp(th, 0.0, 1.0);
  const double xq = std::clamp(x[0], lo->x.min, lo->x.max());

  auto blend = [&](const std::vector<double>& a, const std::vector<double>& b) {
    return (1.0 - th) * interp1(a, lo->x, xq, order) + th * interp1(b, hi->x, xq, order);
  };
  const double u_q = blend(lo->u, hi->u);
  const double v_q = blend(lo->v, hi->v);
  FieldSample<1> s;
  s.phi = blend(lo->phi, hi->phi);
  s.dt_phi = 0.5 * (u_q + v_q);
  s.grad[0] = 0.5 * (u_q - v_q);
  return s;
}

}  // namespace nvlasov
