#include <doctest.h>

#include <cmath>

#include "nvlasov/kernels3d.hpp"

using namespace nvlasov;

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kPi = std::acos(-1.0);

// Finite-difference oracle for the second-derivative kernel: evaluates the
// defining expression -r^3 phat . grad_y [ a^{phi_t} / ((1+omega.phat) r^2) ]
// at x = 0, y = omega (so r = 1) by central differences.
double phi_tt_fd_oracle(const Vec3& omega, const Vec3& p, double h) {
  auto g = [&p](const Vec3& y) {
    const double r = norm(y);
    const Vec3 w = scale(1.0 / r, y);
    const double denom = 1.0 + dot(w, unit_momentum(p));
    return phi_t_kernels({w, p}).a / (denom * r * r);
  };
  const Vec3 phat = unit_momentum(p);
  double acc = 0.0;
  for (int j = 0; j < 3; ++j) {
    Vec3 yp = omega, ym = omega;
    yp[j] += h;
    ym[j] -= h;
    acc += phat[j] * (g(yp) - g(ym)) / (2.0 * h);
  }
  return -acc;
}

}  // namespace

TEST_CASE("vm kernels at p = 0") {
  const Vec3 omega{0.0, 1.0, 0.0};
  const VmKernels k = vm_kernels({omega, {0.0, 0.0, 0.0}});
  for (int i = 0; i < 3; ++i) {
    CHECK(k.a_e[i] == doctest::Approx(omega[i]).epsilon(1e-15));
    CHECK(k.a_e_tilde[i] == doctest::Approx(omega[i]).epsilon(1e-15));
    CHECK(k.a_b[i] == 0.0);
    CHECK(k.a_b_tilde[i] == 0.0);
  }
}

TEST_CASE("magnetic kernels vanish for omega parallel to p") {
  const Vec3 p{0.0, 0.0, 3.0};
  const VmKernels k = vm_kernels({{0.0, 0.0, 1.0}, p});
  CHECK(norm(k.a_b) == 0.0);
  CHECK(norm(k.a_b_tilde) == 0.0);
}

TEST_CASE("electric kernel for orthogonal omega, |p| = sqrt(3)") {
  // phat = (sqrt(3)/2) e2, omega.phat = 0, 1 + p^2 = 4
  const VmKernels k = vm_kernels({{1.0, 0.0, 0.0}, {0.0, std::sqrt(3.0), 0.0}});
  CHECK(k.a_e[0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(k.a_e[1] == doctest::Approx(0.21650635094610965).epsilon(1e-14));
  CHECK(k.a_e[2] == 0.0);
}

TEST_CASE("phi_t kernels at p = 0") {
  const Vec3 omega{0.0, 0.0, 1.0};
  const PhiTKernels k = phi_t_kernels({omega, {0.0, 0.0, 0.0}});
  CHECK(k.a == 0.0);
  CHECK(k.b == doctest::Approx(1.0).epsilon(1e-15));
  for (int i = 0; i < 3; ++i) CHECK(k.c[i] == doctest::Approx(omega[i]).epsilon(1e-15));
}

TEST_CASE("phi_t scalar kernel for omega = p direction") {
  // omega = e1, p = e1: a = -(1 + 1/sqrt2)(1/sqrt2) / (sqrt2 (1+1/sqrt2)^2)
  //                       = 1/sqrt2 - 1 = -1/(2+sqrt2)
  const PhiTKernels k = phi_t_kernels({{1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}});
  CHECK(k.a == doctest::Approx(1.0 / kSqrt2 - 1.0).epsilon(1e-14));
  CHECK(k.a == doctest::Approx(-0.29289321881345254).epsilon(1e-14));
}

TEST_CASE("phi_x kernels at p = 0 compose the trivial cases") {
  const Vec3 omega{0.6, 0.8, 0.0};
  const PhiXKernels k = phi_x_kernels({omega, {0.0, 0.0, 0.0}});
  for (int i = 0; i < 3; ++i) {
    CHECK(k.a[i] == doctest::Approx(omega[i]).epsilon(1e-15));
    CHECK(k.b[i] == doctest::Approx(omega[i]).epsilon(1e-15));
    for (int j = 0; j < 3; ++j)
      CHECK(k.c[i][j] == doctest::Approx(omega[i] * omega[j]).epsilon(1e-15));
  }
}

TEST_CASE("phi_x spatial kernel against the expanded closed form") {
  // a^{phi_x} = omega/(gamma^3 (1+n)^2) + phat/(gamma (1+n)), carrying out the
  // cross product by hand; checked away from the degenerate antipodal zone
  KernelSampler sampler(99, 10.0);
  for (int k = 0; k < 20000; ++k) {
    const KernelInput in = sampler.next();
    const PhiXKernels px = phi_x_kernels(in);
    const double gamma = std::sqrt(1.0 + dot(in.p, in.p));
    const Vec3 phat = unit_momentum(in.p);
    const double n = dot(in.omega, phat);
    for (int i = 0; i < 3; ++i) {
      const double expanded = in.omega[i] / (gamma * gamma * gamma * (1.0 + n) * (1.0 + n)) +
                              phat[i] / (gamma * (1.0 + n));
      CHECK(px.a[i] == doctest::Approx(expanded).epsilon(1e-12));
    }
  }
}

TEST_CASE("phi_x kernel cross-product term, componentwise oracle at omega perp phat") {
  const Vec3 omega{1.0, 0.0, 0.0};
  const Vec3 p{0.0, 2.0, 0.0};
  const VmKernels vm = vm_kernels({omega, p});
  const Vec3 phat = unit_momentum(p);
  // independent componentwise cross product
  const Vec3 pxab{phat[1] * vm.a_b[2] - phat[2] * vm.a_b[1],
                  phat[2] * vm.a_b[0] - phat[0] * vm.a_b[2],
                  phat[0] * vm.a_b[1] - phat[1] * vm.a_b[0]};
  const PhiXKernels px = phi_x_kernels({omega, p});
  const double gamma = std::sqrt(1.0 + dot(p, p));
  for (int i = 0; i < 3; ++i)
    CHECK(px.a[i] == doctest::Approx(gamma * (vm.a_e[i] - pxab[i])).epsilon(1e-14));
}

TEST_CASE("phi_tt kernel vanishes at p = 0") {
  CHECK(phi_tt_kernel({{0.0, 1.0, 0.0}, {0.0, 0.0, 0.0}}) == 0.0);
}

TEST_CASE("phi_tt kernel matches the finite-difference defining expression") {
  const Vec3 omegas[] = {{1.0, 0.0, 0.0},
                         {0.0, 0.6, 0.8},
                         {-0.40824829046386307, 0.81649658092772603, 0.40824829046386307}};
  const Vec3 ps[] = {{0.5, 0.0, 0.0}, {0.3, -1.2, 0.7}, {0.0, 0.0, 2.0}};
  for (const Vec3& omega : omegas) {
    for (const Vec3& p : ps) {
      const double closed = phi_tt_kernel({omega, p});
      const double e1 = std::fabs(phi_tt_fd_oracle(omega, p, 1e-3) - closed);
      const double e2 = std::fabs(phi_tt_fd_oracle(omega, p, 5e-4) - closed);
      CHECK(e1 < 1e-4);
      if (e1 > 1e-11) {  // rate 2 where truncation still dominates roundoff
        CHECK(e1 / e2 > 3.0);
        CHECK(e1 / e2 < 5.0);
      }
    }
  }
}

TEST_CASE("phi_tt kernel has zero omega-average") {
  const Vec3 ps[] = {{0.5, 0.0, 0.0}, {0.0, 0.0, 2.0}, {1.0, 1.0, 1.0}, {1.0, 0.5, -0.25}};
  for (const Vec3& p : ps) {
    const auto r = sphere_average(
        [&p](const Vec3& omega) { return phi_tt_kernel({omega, p}); }, 64);
    CHECK(std::fabs(r.value) < 1e-8);
  }
}

TEST_CASE("sphere quadrature: constants and odd functions") {
  const auto c = sphere_average([](const Vec3&) { return 1.0; }, 16);
  CHECK(c.value == doctest::Approx(4.0 * kPi).epsilon(1e-13));
  const auto odd = sphere_average([](const Vec3& w) { return w[2]; }, 16);
  CHECK(std::fabs(odd.value) < 1e-12);
}

TEST_CASE("gauss-legendre nodes integrate polynomials exactly") {
  std::vector<double> x, w;
  gauss_legendre(8, x, w);
  double m0 = 0.0, m2 = 0.0, m8 = 0.0;
  for (int i = 0; i < 8; ++i) {
    m0 += w[i];
    m2 += w[i] * x[i] * x[i];
    m8 += w[i] * std::pow(x[i], 8);
  }
  CHECK(m0 == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(m2 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(m8 == doctest::Approx(2.0 / 9.0).epsilon(1e-13));
}

TEST_CASE("momentum inequalities at the trivial points") {
  const MomentumInequalities z = momentum_inequalities({{1.0, 0.0, 0.0}, {0.0, 0.0, 0.0}});
  CHECK(z.lhs1 == 1.0);
  CHECK(z.rhs1 == 0.5);
  CHECK(z.lhs2 == doctest::Approx(1.0));
  CHECK(z.rhs2 == doctest::Approx(2.0));
  CHECK(z.both_hold);

  // omega perpendicular to p, |p| = 1: lhs1 = 1, rhs1 = (1+1)/4
  const MomentumInequalities o = momentum_inequalities({{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}});
  CHECK(o.lhs1 == doctest::Approx(1.0));
  CHECK(o.rhs1 == doctest::Approx(0.5));
  CHECK(o.both_hold);
}

TEST_CASE("inequalities and identities hold on a seeded random sweep") {
  const KernelSweepResult r = kernel_property_sweep(2024, 100000, 1e3);
  CHECK(r.inequality_violations == 0);
  CHECK(r.max_rel_err_a_phit <= 1e-13);
  CHECK(r.max_rel_err_a_phix <= 1e-13);
  CHECK(r.max_rel_err_b_phix <= 1e-13);
  CHECK(r.max_rel_err_c_phix <= 1e-13);
  // paper-style bounds with the empirical constant c = 4
  CHECK(r.max_ratio_a <= 4.0);
  CHECK(r.max_ratio_b <= 4.0);
  CHECK(r.max_ratio_c <= 4.0);
  CHECK(r.max_ratio_a_phix <= 4.0);
  CHECK(r.max_ratio_b_phix <= 4.0);
}

TEST_CASE("sampler is deterministic and emits unit directions") {
  KernelSampler a(42, 1e3), b(42, 1e3);
  for (int k = 0; k < 1000; ++k) {
    const KernelInput ia = a.next(), ib = b.next();
    CHECK(ia.omega == ib.omega);
    CHECK(ia.p == ib.p);
    CHECK(std::fabs(norm(ia.omega) - 1.0) <= 1e-12);
  }
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(vm_kernels({{1.1, 0.0, 0.0}, {0.0, 0.0, 0.0}}), std::invalid_argument);
  const double nan = std::nan("");
  CHECK_THROWS_AS(phi_tt_kernel({{1.0, 0.0, 0.0}, {nan, 0.0, 0.0}}), std::invalid_argument);
}
