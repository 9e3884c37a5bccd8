#include "nvlasov/kernels3d.hpp"

#include <cmath>
#include <stdexcept>

namespace nvlasov {

void validate_kernel_input(const KernelInput& in) {
  if (!all_finite(in.omega) || !all_finite(in.p))
    throw std::invalid_argument("kernel input not finite");
  if (std::fabs(norm(in.omega) - 1.0) > 1e-12)
    throw std::invalid_argument("omega is not a unit vector");
}

VmKernels vm_kernels(const KernelInput& in) {
  validate_kernel_input(in);
  const double p2 = dot(in.p, in.p);
  const Vec3 phat = unit_momentum(in.p);
  const double denom = 1.0 + dot(in.omega, phat);
  const Vec3 wp = add(in.omega, phat);
  const Vec3 wxp = cross(in.omega, phat);
  const double c2 = 1.0 / ((1.0 + p2) * denom * denom);
  VmKernels k;
  k.a_e = scale(c2, wp);
  k.a_e_tilde = scale(1.0 / denom, wp);
  k.a_b = scale(c2, wxp);
  k.a_b_tilde = scale(1.0 / denom, wxp);
  return k;
}

PhiTKernels phi_t_kernels(const KernelInput& in) {
  validate_kernel_input(in);
  const double p2 = dot(in.p, in.p);
  const double gamma = std::sqrt(1.0 + p2);
  const Vec3 phat = unit_momentum(in.p);
  const double denom = 1.0 + dot(in.omega, phat);
  const Vec3 wp = add(in.omega, phat);

  PhiTKernels k;
  k.a = -dot(wp, phat) / (gamma * denom * denom);
  k.b = dot(wp, wp) / (gamma * denom * denom);
  k.c = scale(1.0 / (std::pow(1.0 + p2, 1.5) * denom * denom), wp);

  // a^{phi_t} must coincide with -a^E.p; a gross mismatch means the two
  // formula paths disagree, which is a programming error. The scale guard
  // covers the kernel's zero crossing at omega.phat = -|phat|^2.
  const Vec3 a_e = vm_kernels(in).a_e;
  const double via_ae = -dot(a_e, in.p);
  const double scale_ref =
      std::max({std::fabs(k.a), std::fabs(via_ae), norm(a_e) * norm(in.p), 1e-300});
  if (std::fabs(k.a - via_ae) > 1e-10 * scale_ref)
    throw std::logic_error("phi_t kernel identity a = -a^E.p violated");
  return k;
}

PhiXKernels phi_x_kernels(const KernelInput& in) {
  const VmKernels vm = vm_kernels(in);
  const PhiTKernels pt = phi_t_kernels(in);
  const double gamma = std::sqrt(1.0 + dot(in.p, in.p));
  const Vec3 phat = unit_momentum(in.p);

  PhiXKernels k;
  k.a = scale(gamma, sub(vm.a_e, cross(phat, vm.a_b)));
  k.b = scale(pt.b, in.omega);
  for (int i = 0; i < 3; ++i) k.c[i] = scale(in.omega[i], pt.c);
  return k;
}

double phi_tt_kernel(const KernelInput& in) {
  validate_kernel_input(in);
  const double p2 = dot(in.p, in.p);
  const double gamma = std::sqrt(1.0 + p2);
  const Vec3 phat = unit_momentum(in.p);
  const double n = dot(in.omega, phat);
  const double s = dot(phat, phat);
  const double d = 1.0 + n;
  const double num = s + n * n * s - 4.0 * n * s - 3.0 * s * s - 3.0 * n * n;
  return num / (gamma * d * d * d * d);
}

MomentumInequalities momentum_inequalities(const KernelInput& in) {
  validate_kernel_input(in);
  const double p2 = dot(in.p, in.p);
  const Vec3 phat = unit_momentum(in.p);
  const Vec3 wxp = cross(in.omega, in.p);
  const Vec3 wp = add(in.omega, phat);

  MomentumInequalities r;
  r.lhs1 = 1.0 + dot(in.omega, phat);
  r.rhs1 = (1.0 + dot(wxp, wxp)) / (2.0 * (1.0 + p2));
  r.lhs2 = dot(wp, wp);
  r.rhs2 = 2.0 * (1.0 + dot(in.omega, phat));
  r.both_hold = (r.lhs1 >= r.rhs1) && (r.lhs2 <= r.rhs2);
  return r;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const double pi = std::acos(-1.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Chebyshev-based initial guess, then Newton on P_n.
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
}

static double sphere_integral_at_order(
    const std::function<double(const Vec3&)>& kernel, int order) {
  std::vector<double> ct, w;
  gauss_legendre(order, ct, w);
  const int n_az = 2 * order;
  const double pi = std::acos(-1.0);
  const double dphi = 2.0 * pi / n_az;
  double total = 0.0;
  for (int i = 0; i < order; ++i) {
    const double c = ct[i];
    const double st = std::sqrt(std::max(0.0, 1.0 - c * c));
    double ring = 0.0;
    for (int j = 0; j < n_az; ++j) {
      const double az = dphi * j;
      ring += kernel({st * std::cos(az), st * std::sin(az), c});
    }
    total += w[i] * ring * dphi;
  }
  return total;
}

SphereIntegral sphere_average(const std::function<double(const Vec3&)>& kernel,
                              int order) {
  if (order < 2) throw std::invalid_argument("sphere_average: order must be >= 2");
  const double fine = sphere_integral_at_order(kernel, order);
  const double coarse = sphere_integral_at_order(kernel, std::max(2, order / 2));
  return {fine, std::fabs(fine - coarse)};
}

KernelSampler::KernelSampler(uint64_t seed, double p_max)
    : state_(seed ? seed : 0x9e3779b97f4a7c15ULL), p_max_(p_max) {}

double KernelSampler::uniform() {
  // splitmix64; portable determinism matters for byte-identical reruns
  state_ += 0x9e3779b97f4a7c15ULL;
  uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return (z >> 11) * 0x1.0p-53;
}

Vec3 KernelSampler::random_unit() {
  const double pi = std::acos(-1.0);
  double z = 1.0 - 2.0 * uniform();
  double az = 2.0 * pi * uniform();
  double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {r * std::cos(az), r * std::sin(az), z};
}

KernelInput KernelSampler::next() {
  ++count_;
  const double pmag = 1e-3 * std::pow(p_max_ / 1e-3, uniform());
  const Vec3 p = scale(pmag, random_unit());
  Vec3 omega;
  if (count_ % 10 == 0 && pmag > 0.0) {
    // near-antipodal direction: omega ~ -phat, the worst case for 1+omega.phat
    const Vec3 phat = unit_momentum(p);
    const double eps = 1e-12 * std::pow(1e11, uniform());
    Vec3 w = axpy(scale(-1.0, phat), eps, random_unit());
    omega = scale(1.0 / norm(w), w);
  } else {
    omega = random_unit();
  }
  return {omega, p};
}

namespace {

inline double rel_err(double a, double b) {
  const double scale = std::max(std::fabs(a), std::fabs(b));
  return scale > 0.0 ? std::fabs(a - b) / scale : 0.0;
}

inline double rel_err_vec(const Vec3& a, const Vec3& b) {
  const double scale = std::max(norm(a), norm(b));
  return scale > 0.0 ? norm(sub(a, b)) / scale : 0.0;
}

}  // namespace

KernelSweepResult kernel_property_sweep(uint64_t seed, long samples, double p_max) {
  KernelSampler sampler(seed, p_max);
  KernelSweepResult r;
  r.samples = samples;
  for (long k = 0; k < samples; ++k) {
    const KernelInput in = sampler.next();
    const MomentumInequalities mi = momentum_inequalities(in);
    if (!mi.both_hold) ++r.inequality_violations;

    const VmKernels vm = vm_kernels(in);
    const PhiTKernels pt = phi_t_kernels(in);
    const PhiXKernels px = phi_x_kernels(in);

    const double p2 = dot(in.p, in.p);
    const double gamma = std::sqrt(1.0 + p2);
    const Vec3 phat = unit_momentum(in.p);

    // a^{phi_t} crosses zero on omega.phat = -|phat|^2; measure the route
    // difference against the dot-product scale, not the (vanishing) value
    const double a_via_ae = -dot(vm.a_e, in.p);
    const double a_scale =
        std::max({std::fabs(pt.a), std::fabs(a_via_ae), norm(vm.a_e) * norm(in.p)});
    r.max_rel_err_a_phit = std::max(
        r.max_rel_err_a_phit,
        a_scale > 0.0 ? std::fabs(pt.a - a_via_ae) / a_scale : 0.0);
    r.max_rel_err_a_phix = std::max(
        r.max_rel_err_a_phix,
        rel_err_vec(px.a, scale(gamma, sub(vm.a_e, cross(phat, vm.a_b)))));
    r.max_rel_err_b_phix =
        std::max(r.max_rel_err_b_phix, rel_err_vec(px.b, scale(pt.b, in.omega)));
    for (int i = 0; i < 3; ++i)
      r.max_rel_err_c_phix =
          std::max(r.max_rel_err_c_phix, rel_err_vec(px.c[i], scale(in.omega[i], pt.c)));

    r.max_ratio_a = std::max(r.max_ratio_a, std::fabs(pt.a) / (1.0 + p2));
    r.max_ratio_b = std::max(r.max_ratio_b, std::fabs(pt.b) / gamma);
    r.max_ratio_c = std::max(r.max_ratio_c, norm(pt.c));
    r.max_ratio_a_phix = std::max(r.max_ratio_a_phix, norm(px.a) / (1.0 + p2));
    r.max_ratio_b_phix = std::max(r.max_ratio_b_phix, norm(px.b) / gamma);
  }
  return r;
}

}  // namespace nvlasov
