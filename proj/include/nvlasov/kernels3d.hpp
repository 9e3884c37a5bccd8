#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "nvlasov/vec.hpp"

namespace nvlasov {

// Direction/momentum pair entering the lightcone representation kernels.
// omega must be a unit vector; the derived velocity p/sqrt(1+p^2) has norm < 1,
// so 1 + omega.phat > 0 and every kernel below is finite.
struct KernelInput {
  Vec3 omega;
  Vec3 p;
};

// throws std::invalid_argument unless ||omega| - 1| <= 1e-12 and p is finite
void validate_kernel_input(const KernelInput& in);

struct VmKernels {
  Vec3 a_e, a_e_tilde;
  Vec3 a_b, a_b_tilde;
};

// Electromagnetic-field kernels a^E, a~^E, a^B, a~^B.
VmKernels vm_kernels(const KernelInput& in);

struct PhiTKernels {
  double a;  // a^{phi_t}, equals -a^E . p
  double b;  // b^{phi_t}
  Vec3 c;    // c^{phi_t}
};

// Kernels of the time-derivative field representation. The identity
// a^{phi_t} = -a^E.p is cross-checked on every call.
PhiTKernels phi_t_kernels(const KernelInput& in);

struct PhiXKernels {
  Vec3 a;       // a^{phi_x} = sqrt(1+p^2) [a^E - phat x a^B]
  Vec3 b;       // b^{phi_x} = b^{phi_t} omega
  Vec3 c[3];    // row i holds c^{phi_x}_i = omega_i c^{phi_t}
};

// Kernels of the spatial-derivative field representation, assembled from the
// composition identities on top of vm_kernels / phi_t_kernels.
PhiXKernels phi_x_kernels(const KernelInput& in);

// Most singular kernel of the second time derivative, in closed form:
//   a^{phi_tt} = (s + n^2 s - 4 n s - 3 s^2 - 3 n^2) / (sqrt(1+p^2) (1+n)^4)
// with n = omega.phat, s = |phat|^2. Carrying out the defining y-gradient
//   -r^3 phat . grad_y [ a^{phi_t} / ((1+omega.phat) r^2) ]
// with d(omega_i)/d(y_j) = (delta_ij - omega_i omega_j)/r and dr/dy_j = omega_j
// cancels every r factor and yields exactly this expression; the finite
// difference form of the gradient is kept as a test oracle.
double phi_tt_kernel(const KernelInput& in);

struct MomentumInequalities {
  double lhs1, rhs1;  // 1 + omega.phat  >=  (1 + |omega x p|^2) / (2(1+p^2))
  double lhs2, rhs2;  // |omega + phat|^2  <=  2 (1 + omega.phat)
  bool both_hold;
};

MomentumInequalities momentum_inequalities(const KernelInput& in);

struct SphereIntegral {
  double value;           // integral over the unit sphere
  double error_estimate;  // |value(order) - value(order/2)|
};

// Product quadrature on the unit sphere: Gauss-Legendre in the polar cosine
// (order nodes) x equal-angle azimuth (2*order nodes). Exact to roundoff for
// constants; spectrally accurate for kernels smooth on the sphere.
SphereIntegral sphere_average(const std::function<double(const Vec3&)>& kernel,
                              int order);

// Gauss-Legendre nodes/weights on [-1,1] (Newton on the Legendre recurrence).
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// Deterministic sampler for kernel property sweeps: uniform directions,
// log-uniform |p| in [1e-3, p_max], and a fraction of near-antipodal pairs
// omega ~ -phat where the inequality margins degenerate.
class KernelSampler {
 public:
  KernelSampler(uint64_t seed, double p_max);
  KernelInput next();

 private:
  double uniform();
  Vec3 random_unit();
  uint64_t state_;
  double p_max_;
  uint64_t count_ = 0;
};

struct KernelSweepResult {
  long samples = 0;
  long inequality_violations = 0;
  double max_rel_err_a_phit = 0.0;   // a^{phi_t} vs -a^E.p, two formula routes
  double max_rel_err_a_phix = 0.0;   // a^{phi_x} vs recomposed sqrt(1+p^2)[a^E - phat x a^B]
  double max_rel_err_b_phix = 0.0;   // b^{phi_x} vs b^{phi_t} omega
  double max_rel_err_c_phix = 0.0;   // c^{phi_x}_i vs omega_i c^{phi_t}
  double max_ratio_a = 0.0;          // |a^{phi_t}| / (1+p^2)
  double max_ratio_b = 0.0;          // |b^{phi_t}| / sqrt(1+p^2)
  double max_ratio_c = 0.0;          // |c^{phi_t}|
  double max_ratio_a_phix = 0.0;     // |a^{phi_x}| / (1+p^2)
  double max_ratio_b_phix = 0.0;     // |b^{phi_x}| / sqrt(1+p^2)
};

// Seeded randomized sweep of the inequalities, composition identities and
// kernel bound ratios. Deterministic for a fixed seed.
KernelSweepResult kernel_property_sweep(uint64_t seed, long samples, double p_max);

}  // namespace nvlasov
