#include <doctest.h>

#include <cmath>

#include "nvlasov/field1d.hpp"
#include "nvlasov/initial_data.hpp"

using namespace nvlasov;

namespace {

WaveData1D standing_wave_data() {
  return make_wave_data({FieldDataSpec::Family::sine, 1.0, 1.0, 0.0, 1.0},
                        {FieldDataSpec::Family::zero, 0.0, 1.0, 0.0, 1.0});
}

WaveData1D gaussian_wave_data() {
  return make_wave_data({FieldDataSpec::Family::gaussian, 0.7, 1.0, 0.3, 1.1},
                        {FieldDataSpec::Family::gaussian, -0.4, 1.0, -0.5, 0.8});
}

}  // namespace

TEST_CASE("free d'Alembert: standing wave") {
  const WaveData1D d = standing_wave_data();
  for (double t : {0.0, 0.4, 1.7}) {
    for (double x : {-1.0, 0.3, 2.2}) {
      const FieldSample<1> s = free_dalembert(d, t, x);
      CHECK(s.phi == doctest::Approx(std::sin(x) * std::cos(t)).epsilon(1e-14));
      CHECK(s.dt_phi == doctest::Approx(-std::sin(x) * std::sin(t)).epsilon(1e-13));
      CHECK(s.grad[0] == doctest::Approx(std::cos(x) * std::cos(t)).epsilon(1e-13));
    }
  }
}

TEST_CASE("free d'Alembert: uniform velocity data gives phi = t") {
  WaveData1D d = zero_wave_data();
  d.phi1 = [](double) { return 1.0; };
  d.phi1_prim = [](double x) { return x; };
  const FieldSample<1> s = free_dalembert(d, 2.5, -0.7);
  CHECK(s.phi == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(s.dt_phi == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s.grad[0] == doctest::Approx(0.0));
}

TEST_CASE("free d'Alembert: gaussian hump value at the origin") {
  WaveData1D d = zero_wave_data();
  d.phi0 = [](double x) { return std::exp(-x * x); };
  d.dphi0 = [](double x) { return -2.0 * x * std::exp(-x * x); };
  const FieldSample<1> s = free_dalembert(d, 1.0, 0.0);
  CHECK(s.phi == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(s.phi == doctest::Approx(0.36787944117144233).epsilon(1e-15));
}

TEST_CASE("derivatives reconstruct dt/dx phi from the invariants") {
  FieldState1D st = make_field_state(Axis(0.0, 1.0, 8), zero_wave_data(), FieldSign::attractive);
  for (auto& u : st.u) u = 3.0;
  for (auto& v : st.v) v = 1.0;
  const auto [dt, dx] = derivatives(st);
  CHECK(dt[4] == doctest::Approx(2.0));
  CHECK(dx[4] == doctest::Approx(1.0));

  for (auto& v : st.v) v = 3.0;  // u = v kills dx phi
  CHECK(derivatives(st).second[2] == doctest::Approx(0.0));
  for (auto& v : st.v) v = -3.0;  // u = -v kills dt phi
  CHECK(derivatives(st).first[2] == doctest::Approx(0.0));
}

TEST_CASE("vacuum invariants advect by exact lattice shifts") {
  const Axis ax(-M_PI, M_PI, 64);
  FieldState1D st = make_field_state(ax, standing_wave_data(), FieldSign::attractive);
  const std::vector<double> u0 = st.u, v0 = st.v;
  const SourceSlice mu(ax.nodes(), 0.0);
  const int steps = 20;
  for (int k = 0; k < steps; ++k) st = field_step(st, mu, mu, ax.step);
  for (int i = 0; i + steps < ax.nodes(); ++i)
    CHECK(st.u[i] == u0[i + steps]);  // bit-stable
  for (int i = steps; i < ax.nodes(); ++i)
    CHECK(st.v[i] == v0[i - steps]);
}

TEST_CASE("vacuum standing wave is exact at grid points") {
  const Axis ax(-M_PI, M_PI, 128);
  FieldState1D st = make_field_state(ax, standing_wave_data(), FieldSign::attractive);
  const SourceSlice mu(ax.nodes(), 0.0);
  for (int k = 0; k < 200; ++k) st = field_step(st, mu, mu, ax.step);
  for (int i = 0; i < ax.nodes(); ++i) {
    CHECK(std::fabs(st.phi[i] - std::sin(ax.coord(i)) * std::cos(st.t)) < 1e-12);
    const double dtphi = 0.5 * (st.u[i] + st.v[i]);
    CHECK(std::fabs(dtphi + std::sin(ax.coord(i)) * std::sin(st.t)) < 1e-12);
  }
}

TEST_CASE("vacuum evolution of generic data matches the closed-form solution") {
  const Axis ax(-8.0, 8.0, 128);
  const WaveData1D data = gaussian_wave_data();
  FieldState1D st = make_field_state(ax, data, FieldSign::attractive);
  const SourceSlice mu(ax.nodes(), 0.0);
  for (int k = 0; k < 50; ++k) st = field_step(st, mu, mu, ax.step);
  for (int i = 0; i < ax.nodes(); ++i) {
    const FieldSample<1> exact = free_dalembert(data, st.t, ax.coord(i));
    CHECK(std::fabs(st.phi[i] - exact.phi) < 1e-12);
    CHECK(std::fabs(0.5 * (st.u[i] + st.v[i]) - exact.dt_phi) < 1e-12);
    CHECK(std::fabs(0.5 * (st.u[i] - st.v[i]) - exact.grad[0]) < 1e-12);
  }
}

TEST_CASE("homogeneous source: phi = -t^2/2 exactly inside the plateau lightcone") {
  const Axis ax(-4.0, 4.0, 128);
  const int n = ax.nodes();
  SourceSlice mu(n, 1.0);
  for (int i : {0, 1, n - 2, n - 1}) mu[i] = 0.0;  // compact support, boundary clear

  for (FieldSign sign : {FieldSign::attractive, FieldSign::repulsive}) {
    FieldState1D st = make_field_state(ax, zero_wave_data(), sign);
    const int steps = 24;  // plateau covers the center for this many steps
    for (int k = 0; k < steps; ++k) st = field_step(st, mu, mu, ax.step);
    const double expect = (sign == FieldSign::attractive ? -1.0 : 1.0) * st.t * st.t / 2.0;
    const double expect_dt = (sign == FieldSign::attractive ? -1.0 : 1.0) * st.t;
    const int c = n / 2;
    CHECK(st.phi[c] == doctest::Approx(expect).epsilon(1e-13));
    CHECK(0.5 * (st.u[c] + st.v[c]) == doctest::Approx(expect_dt).epsilon(1e-13));
    CHECK(0.5 * (st.u[c] - st.v[c]) == doctest::Approx(0.0));
  }
}

TEST_CASE("time-varying homogeneous source integrates at trapezoid accuracy") {
  // mu(t) = 1 + t on the plateau: phi = -(t^2/2 + t^3/6) for the attractive sign
  auto run_error = [](int nx) {
    const Axis ax(-4.0, 4.0, nx);
    const int n = ax.nodes();
    FieldState1D st = make_field_state(ax, zero_wave_data(), FieldSign::attractive);
    const int steps = nx / 8;
    for (int k = 0; k < steps; ++k) {
      auto level = [&](double t) {
        SourceSlice m(n, 1.0 + t);
        for (int i : {0, 1, n - 2, n - 1}) m[i] = 0.0;
        return m;
      };
      st = field_step(st, level(st.t), level(st.t + ax.step), ax.step);
    }
    const double exact = -(st.t * st.t / 2.0 + st.t * st.t * st.t / 6.0);
    return std::fabs(st.phi[n / 2] - exact);
  };
  const double e1 = run_error(64), e2 = run_error(128);
  CHECK(e1 < 1e-3);
  CHECK(e1 / e2 > 3.0);  // second order in dt
}

TEST_CASE("discrete wave residual vanishes identically for the lattice scheme") {
  const Axis ax(-6.0, 6.0, 96);
  const int n = ax.nodes();
  auto mu_at = [&](double t) {
    SourceSlice m(n, 0.0);
    for (int i = 2; i < n - 2; ++i) {
      const double x = ax.coord(i);
      m[i] = std::exp(-x * x) * (1.0 + 0.3 * std::sin(t));
    }
    return m;
  };
  FieldState1D prev = make_field_state(ax, gaussian_wave_data(), FieldSign::attractive);
  FieldState1D cur = field_step(prev, mu_at(0.0), mu_at(ax.step), ax.step);
  for (int k = 0; k < 10; ++k) {
    const SourceSlice mu_now = mu_at(cur.t);
    FieldState1D next = field_step(cur, mu_now, mu_at(cur.t + ax.step), ax.step);
    const double dt2 = ax.step * ax.step;
    for (int i = 1; i < n - 1; ++i) {
      const double disc_tt = (next.phi[i] - 2.0 * cur.phi[i] + prev.phi[i]) / dt2;
      const double disc_xx = (cur.phi[i + 1] - 2.0 * cur.phi[i] + cur.phi[i - 1]) / dt2;
      CHECK(std::fabs(disc_tt - disc_xx + mu_now[i]) < 1e-10);
    }
    prev = std::move(cur);
    cur = std::move(next);
  }
}

TEST_CASE("field_step validates the magic timestep and the source support") {
  const Axis ax(0.0, 1.0, 16);
  FieldState1D st = make_field_state(ax, zero_wave_data(), FieldSign::attractive);
  const SourceSlice mu(ax.nodes(), 0.0);
  CHECK_THROWS_AS(field_step(st, mu, mu, 0.9 * ax.step), std::invalid_argument);

  SourceSlice bad(ax.nodes(), 0.0);
  bad[0] = 0.5;
  CHECK_THROWS_AS(field_step(st, bad, mu, ax.step), std::runtime_error);
  SourceSlice bad2(ax.nodes(), 0.0);
  bad2[ax.nodes() - 2] = 0.5;
  CHECK_THROWS_AS(field_step(st, mu, bad2, ax.step), std::runtime_error);
}

TEST_CASE("two-level sampler interpolates linearly in time") {
  const Axis ax(-M_PI, M_PI, 64);
  FieldState1D lo = make_field_state(ax, standing_wave_data(), FieldSign::attractive);
  const SourceSlice mu(ax.nodes(), 0.0);
  FieldState1D hi = field_step(lo, mu, mu, ax.step);

  const InterpolatedField1D sampler{&lo, &hi, InterpOrder::cubic};
  const double xq = ax.coord(20);
  const FieldSample<1> at_lo = sampler(lo.t, {xq});
  CHECK(at_lo.phi == doctest::Approx(lo.phi[20]).epsilon(1e-14));
  const FieldSample<1> mid = sampler(lo.t + 0.5 * ax.step, {xq});
  CHECK(mid.phi == doctest::Approx(0.5 * (lo.phi[20] + hi.phi[20])).epsilon(1e-13));
  CHECK(sampler.covers(lo.t, hi.t));
  CHECK(!sampler.covers(lo.t - 1.0, hi.t));
}
