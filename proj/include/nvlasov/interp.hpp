#pragma once

#include <algorithm>
#include <cmath>
#include <span>

#include "nvlasov/grid.hpp"

namespace nvlasov {

enum class InterpOrder { linear, cubic };

namespace detail {

// Lagrange weights for a 4-node uniform stencil, th = query offset from the
// stencil start in units of the grid step (0 <= th <= 3 for clamped stencils).
struct CubicWeights {
  double w[4];
  explicit CubicWeights(double th) {
    w[0] = -(th - 1.0) * (th - 2.0) * (th - 3.0) / 6.0;
    w[1] = th * (th - 2.0) * (th - 3.0) / 2.0;
    w[2] = -th * (th - 1.0) * (th - 3.0) / 2.0;
    w[3] = th * (th - 1.0) * (th - 2.0) / 6.0;
  }
};

struct Stencil {
  int start;   // first node index (4 nodes for cubic, 2 for linear)
  double frac; // offset from start in grid units
};

inline Stencil locate(const Axis& ax, double q, int width) {
  double u = (q - ax.min) / ax.step;
  int k = static_cast<int>(std::floor(u));
  int start = std::clamp(k - (width - 2) / 2, 0, ax.nodes() - width);
  return {start, u - start};
}

}  // namespace detail

// Interpolate lattice values at q with a clamped stencil. Queries outside the
// axis extrapolate from the edge stencil; callers guard where that matters.
inline double interp1(std::span<const double> vals, const Axis& ax, double q,
                      InterpOrder order) {
  if (order == InterpOrder::linear || ax.nodes() < 4) {
    auto s = detail::locate(ax, q, 2);
    double th = std::clamp(s.frac, 0.0, 1.0);
    return (1.0 - th) * vals[s.start] + th * vals[s.start + 1];
  }
  auto s = detail::locate(ax, q, 4);
  detail::CubicWeights cw(s.frac);
  return cw.w[0] * vals[s.start] + cw.w[1] * vals[s.start + 1] +
         cw.w[2] * vals[s.start + 2] + cw.w[3] * vals[s.start + 3];
}

// Tensor-product interpolation of a phase-space density. Exactly zero outside
// the lattice; negative undershoot is clipped so f >= 0 is preserved.
inline double interp_density(const PhaseGrid& g, double xq, double pq,
                             InterpOrder order) {
  if (!g.x.contains(xq) || !g.p.contains(pq)) return 0.0;
  const int npn = g.p.nodes();
  double out = 0.0;
  if (order == InterpOrder::linear || g.x.nodes() < 4 || npn < 4) {
    auto sx = detail::locate(g.x, xq, 2);
    auto sp = detail::locate(g.p, pq, 2);
    double tx = std::clamp(sx.frac, 0.0, 1.0), tp = std::clamp(sp.frac, 0.0, 1.0);
    const double* row0 = g.f.data() + static_cast<size_t>(sx.start) * npn + sp.start;
    const double* row1 = row0 + npn;
    out = (1 - tx) * ((1 - tp) * row0[0] + tp * row0[1]) +
          tx * ((1 - tp) * row1[0] + tp * row1[1]);
  } else {
    auto sx = detail::locate(g.x, xq, 4);
    auto sp = detail::locate(g.p, pq, 4);
    detail::CubicWeights wx(sx.frac), wp(sp.frac);
    for (int a = 0; a < 4; ++a) {
      const double* row = g.f.data() + static_cast<size_t>(sx.start + a) * npn + sp.start;
      out += wx.w[a] * (wp.w[0] * row[0] + wp.w[1] * row[1] +
                        wp.w[2] * row[2] + wp.w[3] * row[3]);
    }
  }
  return out > 0.0 ? out : 0.0;
}

}  // namespace nvlasov
