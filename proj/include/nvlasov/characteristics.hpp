#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "nvlasov/vec.hpp"

namespace nvlasov {

// Phase-space point carried along a characteristic trajectory.
template <std::size_t N>
struct CharPoint {
  Vec<N> x;
  Vec<N> p;
};

// (phi, dt phi, grad_x phi) returned by a field sampler at one event.
template <std::size_t N>
struct FieldSample {
  double phi = 0.0;
  double dt_phi = 0.0;
  Vec<N> grad{};
};

// Field evaluation contract for the characteristic ODE right-hand side.
// Implementations declare a time window; evaluation inside it never fails.
// This one wraps analytic test fields; the 1D solver has its own lattice-
// backed sampler (see field1d.hpp) satisfying the same shape.
template <std::size_t N>
struct AnalyticField {
  std::function<FieldSample<N>(double, const Vec<N>&)> eval;
  double t_min = -std::numeric_limits<double>::infinity();
  double t_max = std::numeric_limits<double>::infinity();

  FieldSample<N> operator()(double t, const Vec<N>& x) const { return eval(t, x); }
  bool covers(double a, double b) const { return a >= t_min && b <= t_max; }
};

template <std::size_t N>
struct CharRhs {
  Vec<N> dx;  // p/sqrt(1+p^2)
  Vec<N> dp;  // -(S phi) p - grad phi / sqrt(1+p^2)
};

// Characteristic system right-hand side. S phi = dt phi + phat . grad phi is
// assembled from the sampled derivatives, never finite-differenced from phi.
template <std::size_t N>
CharRhs<N> char_rhs(const Vec<N>& p, const FieldSample<N>& field) {
  if (!std::isfinite(field.dt_phi) || !all_finite(field.grad))
    throw std::invalid_argument("char_rhs: field sample not finite");
  const double inv_gamma = 1.0 / std::sqrt(1.0 + dot(p, p));
  const Vec<N> phat = scale(inv_gamma, p);
  const double s_phi = field.dt_phi + dot(phat, field.grad);
  CharRhs<N> r;
  r.dx = phat;
  for (std::size_t i = 0; i < N; ++i) r.dp[i] = -s_phi * p[i] - inv_gamma * field.grad[i];
  return r;
}

// Fixed-step explicit RK integration of the characteristic system from t_from
// to t_to (either direction). order 2 = explicit midpoint, order 4 = classic RK4.
template <std::size_t N, class Sampler>
CharPoint<N> integrate_characteristic(double t_from, double t_to,
                                      CharPoint<N> y, const Sampler& field,
                                      int substeps, int order = 2) {
  if (substeps < 1) throw std::invalid_argument("integrate_characteristic: substeps < 1");
  if (order != 2 && order != 4) throw std::invalid_argument("integrate_characteristic: order must be 2 or 4");
  const double h = (t_to - t_from) / substeps;
  double t = t_from;
  for (int k = 0; k < substeps; ++k) {
    if (order == 2) {
      const auto k1 = char_rhs(y.p, field(t, y.x));
      CharPoint<N> mid{axpy(y.x, 0.5 * h, k1.dx), axpy(y.p, 0.5 * h, k1.dp)};
      const auto k2 = char_rhs(mid.p, field(t + 0.5 * h, mid.x));
      y.x = axpy(y.x, h, k2.dx);
      y.p = axpy(y.p, h, k2.dp);
    } else {
      const auto k1 = char_rhs(y.p, field(t, y.x));
      CharPoint<N> a{axpy(y.x, 0.5 * h, k1.dx), axpy(y.p, 0.5 * h, k1.dp)};
      const auto k2 = char_rhs(a.p, field(t + 0.5 * h, a.x));
      CharPoint<N> b{axpy(y.x, 0.5 * h, k2.dx), axpy(y.p, 0.5 * h, k2.dp)};
      const auto k3 = char_rhs(b.p, field(t + 0.5 * h, b.x));
      CharPoint<N> c{axpy(y.x, h, k3.dx), axpy(y.p, h, k3.dp)};
      const auto k4 = char_rhs(c.p, field(t + h, c.x));
      for (std::size_t i = 0; i < N; ++i) {
        y.x[i] += h / 6.0 * (k1.dx[i] + 2.0 * k2.dx[i] + 2.0 * k3.dx[i] + k4.dx[i]);
        y.p[i] += h / 6.0 * (k1.dp[i] + 2.0 * k2.dp[i] + 2.0 * k3.dp[i] + k4.dp[i]);
      }
    }
    t = t_from + (k + 1) * h;
  }
  return y;
}

// Trace the characteristic through (t_end, point) back to t_start.
// The sampler window must cover [t_start, t_end].
template <std::size_t N, class Sampler>
CharPoint<N> trace_backward(double t_end, double t_start, const CharPoint<N>& point,
                            const Sampler& field, int substeps, int order = 4) {
  if (!(t_start <= t_end)) throw std::invalid_argument("trace_backward: t_start > t_end");
  if (!field.covers(t_start, t_end))
    throw std::invalid_argument("trace_backward: sampler window does not cover the interval");
  return integrate_characteristic(t_end, t_start, point, field, substeps, order);
}

// Multiplicative transport relation: exp[(1+N)(phi_end - phi_start)], so that
// f(t) = f(t0, X(t0), P(t0)) * transport_factor(phi(t, x), phi(t0, X(t0)), N).
inline double transport_factor(double phi_end, double phi_start, int dim) {
  if (!std::isfinite(phi_end) || !std::isfinite(phi_start))
    throw std::invalid_argument("transport_factor: non-finite input");
  return std::exp((1.0 + dim) * (phi_end - phi_start));
}

template <std::size_t N>
struct JacobianResult {
  double numeric;    // det of the finite-difference Jacobian of (x,p) -> (X,P)(t_start)
  double analytic;   // exp[N (phi(t,x) - phi(t_start, X(t_start)))]
  double condition;  // |pivot|_min / |pivot|_max from the LU elimination
};

namespace detail {

// determinant by Gaussian elimination with partial pivoting, m is 2N x 2N
template <std::size_t M>
inline double small_det(double a[M][M], double* condition) {
  double det = 1.0, piv_min = std::numeric_limits<double>::infinity(), piv_max = 0.0;
  for (std::size_t c = 0; c < M; ++c) {
    int piv = c;
    for (std::size_t r = c + 1; r < M; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
    if (piv != c) {
      for (std::size_t k = 0; k < M; ++k) std::swap(a[piv][k], a[c][k]);
      det = -det;
    }
    const double d = a[c][c];
    piv_min = std::min(piv_min, std::fabs(d));
    piv_max = std::max(piv_max, std::fabs(d));
    if (d == 0.0) {
      *condition = 0.0;
      return 0.0;
    }
    det *= d;
    for (std::size_t r = c + 1; r < M; ++r) {
      const double m = a[r][c] / d;
      for (std::size_t k = c; k < M; ++k) a[r][k] -= m * a[c][k];
    }
  }
  *condition = piv_max > 0.0 ? piv_min / piv_max : 0.0;
  return det;
}

}  // namespace detail

// Compare the finite-difference determinant of the backward characteristic
// flow map against its closed form exp[N(phi(t,x) - phi(t_start, X(t_start)))].
// Central differences in each of the 2N phase-space directions.
template <std::size_t N, class Sampler>
JacobianResult<N> jacobian_det(double t, const CharPoint<N>& point,
                               const Sampler& field, double fd_step,
                               int substeps = 256, int order = 4,
                               double t_start = 0.0) {
  if (!(fd_step > 0.0)) throw std::invalid_argument("jacobian_det: fd_step must be > 0");
  auto flow = [&](const CharPoint<N>& q) {
    return trace_backward(t, t_start, q, field, substeps, order);
  };

  double jac[2 * N][2 * N];
  for (std::size_t c = 0; c < 2 * N; ++c) {
    CharPoint<N> plus = point, minus = point;
    double* pc = c < N ? &plus.x[c] : &plus.p[c - N];
    double* mc = c < N ? &minus.x[c] : &minus.p[c - N];
    *pc += fd_step;
    *mc -= fd_step;
    const CharPoint<N> fp = flow(plus), fm = flow(minus);
    for (std::size_t r = 0; r < N; ++r) {
      jac[r][c] = (fp.x[r] - fm.x[r]) / (2.0 * fd_step);
      jac[N + r][c] = (fp.p[r] - fm.p[r]) / (2.0 * fd_step);
    }
  }

  JacobianResult<N> res;
  res.numeric = detail::small_det<2 * N>(jac, &res.condition);
  const CharPoint<N> x0 = flow(point);
  res.analytic = std::exp(N * (field(t, point.x).phi - field(t_start, x0.x).phi));
  return res;
}

}  // namespace nvlasov
