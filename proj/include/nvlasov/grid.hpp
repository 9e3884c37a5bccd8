#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace nvlasov {

// Uniform 1D lattice: nodes coord(i) = min + i*step, i = 0..cells.
struct Axis {
  double min = 0.0;
  double step = 1.0;
  int cells = 0;

  Axis() = default;
  Axis(double lo, double hi, int ncells)
      : min(lo), step((hi - lo) / ncells), cells(ncells) {
    if (ncells < 1 || !(hi > lo)) throw std::invalid_argument("Axis: bad range");
  }

  int nodes() const { return cells + 1; }
  double max() const { return min + step * cells; }
  double coord(int i) const { return min + step * i; }
  bool contains(double x) const { return x >= min && x <= max(); }
};

// Index box of the nonzero cells of a phase-space density. empty == no support.
struct SupportBox {
  int i_lo = 0, i_hi = -1;  // x-node index range, inclusive
  int j_lo = 0, j_hi = -1;  // p-node index range, inclusive
  bool empty() const { return i_hi < i_lo || j_hi < j_lo; }
  void include(int i, int j) {
    if (empty()) {
      i_lo = i_hi = i;
      j_lo = j_hi = j;
    } else {
      if (i < i_lo) i_lo = i;
      if (i > i_hi) i_hi = i;
      if (j < j_lo) j_lo = j;
      if (j > j_hi) j_hi = j;
    }
  }
};

// Discretized particle density f(x_i, p_j) >= 0 on a rectangular lattice,
// row-major with x outer. The support box is kept tight to the nonzero cells.
struct PhaseGrid {
  Axis x;
  Axis p;
  std::vector<double> f;
  SupportBox support;

  PhaseGrid() = default;
  PhaseGrid(const Axis& xa, const Axis& pa)
      : x(xa), p(pa), f(static_cast<size_t>(xa.nodes()) * pa.nodes(), 0.0) {}

  double& at(int i, int j) { return f[static_cast<size_t>(i) * p.nodes() + j]; }
  double at(int i, int j) const { return f[static_cast<size_t>(i) * p.nodes() + j]; }

  void rescan_support() {
    support = SupportBox{};
    for (int i = 0; i < x.nodes(); ++i)
      for (int j = 0; j < p.nodes(); ++j)
        if (at(i, j) != 0.0) support.include(i, j);
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : f) m = std::max(m, std::fabs(v));
    return m;
  }

  bool finite() const {
    for (double v : f)
      if (!std::isfinite(v)) return false;
    return true;
  }
};

}  // namespace nvlasov
