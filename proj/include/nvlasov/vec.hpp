#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace nvlasov {

// Small fixed-size vectors for phase-space coordinates, N in {1, 3}.
template <std::size_t N>
using Vec = std::array<double, N>;

using Vec1 = Vec<1>;
using Vec3 = Vec<3>;

template <std::size_t N>
inline double dot(const Vec<N>& a, const Vec<N>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i) s += a[i] * b[i];
  return s;
}

template <std::size_t N>
inline double norm(const Vec<N>& a) {
  return std::sqrt(dot(a, a));
}

template <std::size_t N>
inline Vec<N> add(const Vec<N>& a, const Vec<N>& b) {
  Vec<N> r;
  for (std::size_t i = 0; i < N; ++i) r[i] = a[i] + b[i];
  return r;
}

template <std::size_t N>
inline Vec<N> sub(const Vec<N>& a, const Vec<N>& b) {
  Vec<N> r;
  for (std::size_t i = 0; i < N; ++i) r[i] = a[i] - b[i];
  return r;
}

template <std::size_t N>
inline Vec<N> scale(double c, const Vec<N>& a) {
  Vec<N> r;
  for (std::size_t i = 0; i < N; ++i) r[i] = c * a[i];
  return r;
}

// a + c*b
template <std::size_t N>
inline Vec<N> axpy(const Vec<N>& a, double c, const Vec<N>& b) {
  Vec<N> r;
  for (std::size_t i = 0; i < N; ++i) r[i] = a[i] + c * b[i];
  return r;
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1],
          a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

template <std::size_t N>
inline bool all_finite(const Vec<N>& a) {
  for (std::size_t i = 0; i < N; ++i)
    if (!std::isfinite(a[i])) return false;
  return true;
}

// relativistic velocity p/sqrt(1+p^2)
template <std::size_t N>
inline Vec<N> unit_momentum(const Vec<N>& p) {
  return scale(1.0 / std::sqrt(1.0 + dot(p, p)), p);
}

}  // namespace nvlasov
