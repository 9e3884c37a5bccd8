#include <doctest.h>

#include <cmath>

#include "nvlasov/blowup3d.hpp"

using namespace nvlasov;

namespace {

const double kPi = std::acos(-1.0);

MomentumProfile unit_profile(double mu0_target) {
  MomentumProfile prof = make_bump_profile(1.0, 1.0, 2048);
  normalize_to_mu0(prof, mu0_target);
  return prof;
}

// direct trapezoid quadrature of the defining momentum integral at delta = 0
double mu0_direct(const MomentumProfile& prof) {
  const int n = prof.resolution();
  const double dq = prof.p0 / (n - 1);
  double s = 0.0;
  for (int k = 0; k < n; ++k) {
    const double q = dq * k;
    const double w = (k == 0 || k == n - 1) ? 0.5 : 1.0;
    s += w * prof.values[k] * q * q / std::sqrt(1.0 + q * q);
  }
  return 4.0 * kPi * s * dq;
}

double number_density(const MomentumProfile& prof) {
  const int n = prof.resolution();
  const double dq = prof.p0 / (n - 1);
  double s = 0.0;
  for (int k = 0; k < n; ++k) {
    const double q = dq * k;
    const double w = (k == 0 || k == n - 1) ? 0.5 : 1.0;
    s += w * prof.values[k] * q * q;
  }
  return 4.0 * kPi * s * dq;
}

}  // namespace

TEST_CASE("mu at delta = 0 equals the direct quadrature") {
  const MomentumProfile prof = make_bump_profile(1.5, 0.7, 1024);
  CHECK(mu_of_delta(prof, 0.0) == doctest::Approx(mu0_direct(prof)).epsilon(1e-14));
}

TEST_CASE("normalization pins mu(0) to the target") {
  for (double target : {0.5, 2.0, 8.0}) {
    const MomentumProfile prof = unit_profile(target);
    CHECK(std::fabs(mu_of_delta(prof, 0.0) - target) <= 1e-10);
  }
}

TEST_CASE("large-shift limit approaches the number density") {
  const MomentumProfile prof = unit_profile(2.0);
  const double n0 = number_density(prof);
  const double ratio = mu_of_delta(prof, 10.0) / std::exp(10.0);
  CHECK(std::fabs(ratio - n0) / n0 < 1e-8);
}

TEST_CASE("mu(delta) dominates mu(0) e^delta") {
  const MomentumProfile prof = unit_profile(2.0);
  const double mu0 = mu_of_delta(prof, 0.0);
  for (double delta = 0.0; delta <= 10.0; delta += 0.25)
    CHECK(mu_of_delta(prof, delta) >= mu0 * std::exp(delta) * (1.0 - 1e-14));
}

TEST_CASE("zero profile gives linear growth and no blow-up claim") {
  const MomentumProfile prof = make_bump_profile(1.0, 0.0, 128);
  HomogeneousState s0;
  s0.phi = 0.1;
  s0.phi_ref = 0.1;
  s0.phi_dot = 0.5;
  HomogeneousControls c;
  c.max_steps = 5000;
  const HomTrajectory traj = integrate_homogeneous(s0, prof, c);
  CHECK(traj.report.outcome == BlowupOutcome::inconclusive);
  const HomPoint& last = traj.points.back();
  CHECK(last.phi == doctest::Approx(0.1 + 0.5 * last.t).epsilon(1e-12));
}

TEST_CASE("theorem instance mu0 = 2, phidot0 = 2, R = 1") {
  const MomentumProfile prof = unit_profile(2.0);
  const Theorem2Report rep = verify_theorem2(1.0, prof, 0.0, 2.0);
  CHECK(rep.hyp_radius);
  CHECK(rep.hyp_velocity);
  CHECK(rep.applicable);
  CHECK(rep.t_bound == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.blowup.outcome == BlowupOutcome::blew_up);
  CHECK(rep.blowup.bracket_hi <= 1.0);
  CHECK(rep.blowup.bracket_hi - rep.blowup.bracket_lo <= 1e-3);
  CHECK(rep.bound_satisfied);
  // per-step inequality slacks within the relative allowance
  CHECK(rep.blowup.lyapunov_worst_slack >= -1e-8);
  CHECK(rep.blowup.mu_growth_worst_slack >= -1e-8);
  CHECK(rep.blowup.mu_lower_worst_slack >= -1e-8);
  CHECK(rep.blowup.phi_dot_monotone);
}

TEST_CASE("hypothesis failure is reported, integration still runs") {
  const MomentumProfile prof = unit_profile(2.0);
  const Theorem2Report rep = verify_theorem2(1.0, prof, 0.0, 0.0);
  CHECK(rep.hyp_radius);
  CHECK(!rep.hyp_velocity);
  CHECK(!rep.applicable);
  CHECK(rep.blowup.steps > 0);  // integrated anyway, no bound asserted
}

TEST_CASE("theorem instance mu0 = 8, phidot0 = 4, R = 0.5") {
  const MomentumProfile prof = unit_profile(8.0);
  const Theorem2Report rep = verify_theorem2(0.5, prof, 0.0, 4.0);
  CHECK(rep.applicable);
  CHECK(rep.t_bound == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rep.blowup.outcome == BlowupOutcome::blew_up);
  CHECK(rep.blowup.bracket_hi <= 0.5);
  CHECK(rep.bound_satisfied);
}

TEST_CASE("blow-up time converges under step refinement") {
  const MomentumProfile prof = unit_profile(2.0);
  HomogeneousState s0;
  s0.phi_dot = 2.0;
  auto t_star = [&](double dt) {
    HomogeneousControls c;
    c.dt_base = dt;
    return integrate_homogeneous(s0, prof, c).report.t_star;
  };
  const double t1 = t_star(4e-3), t2 = t_star(2e-3), t3 = t_star(1e-3);
  CHECK(std::fabs(t1 - t3) < 1e-5);
  CHECK(std::fabs(t2 - t3) <= std::fabs(t1 - t3) + 1e-12);
}

TEST_CASE("phi_dot never decreases along a sourced trajectory") {
  const MomentumProfile prof = unit_profile(0.5);
  HomogeneousState s0;
  s0.phi_dot = -1.0;  // starts contracting, the source still pushes phi_dot up
  HomogeneousControls c;
  c.max_steps = 20000;
  const HomTrajectory traj = integrate_homogeneous(s0, prof, c);
  CHECK(traj.report.phi_dot_monotone);
  for (size_t k = 1; k < traj.points.size(); ++k)
    CHECK(traj.points[k].phi_dot >= traj.points[k - 1].phi_dot - 1e-12);
}
