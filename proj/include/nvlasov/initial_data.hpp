#pragma once

#include <functional>

#include "nvlasov/field1d.hpp"
#include "nvlasov/grid.hpp"

namespace nvlasov {

// Compactly supported phase-space data families.
//   gaussian: A exp(-s^2/2) (1 - (s/c)^2)^2 with the elliptical radius
//             s^2 = ((x-x0)/sx)^2 + ((p-p0)/sp)^2, cut off at s = c (C^1)
//   box:      A on |x-x0| <= sx, |p-p0| <= sp
struct FDataSpec {
  enum class Family { zero, gaussian, box };
  Family family = Family::zero;
  double x0 = 0.0, p0 = 0.0;
  double sigma_x = 1.0, sigma_p = 1.0;
  double amplitude = 1.0;
  double cutoff = 3.0;
};

std::function<double(double, double)> make_f_function(const FDataSpec& spec);

PhaseGrid fill_phase_grid(const Axis& x, const Axis& p,
                          const std::function<double(double, double)>& f);

// Analytic field data families with exact derivative and antiderivative,
// which the lattice scheme needs for boundary inflow.
//   sine:     A sin(k x)
//   gaussian: A exp(-((x-x0)/sigma)^2)
struct FieldDataSpec {
  enum class Family { zero, sine, gaussian };
  Family family = Family::zero;
  double amplitude = 0.0;
  double k = 1.0;
  double x0 = 0.0;
  double sigma = 1.0;
};

WaveData1D make_wave_data(const FieldDataSpec& phi0, const FieldDataSpec& phi1);

}  // namespace nvlasov
