#include "nvlasov/initial_data.hpp"

#include <cmath>
#include <stdexcept>

namespace nvlasov {

std::function<double(double, double)> make_f_function(const FDataSpec& spec) {
  switch (spec.family) {
    case FDataSpec::Family::zero:
      return [](double, double) { return 0.0; };
    case FDataSpec::Family::gaussian: {
      if (!(spec.sigma_x > 0.0) || !(spec.sigma_p > 0.0) || !(spec.cutoff > 0.0))
        throw std::invalid_argument("gaussian f data: widths and cutoff must be positive");
      const FDataSpec s = spec;
      return [s](double x, double p) {
        const double ax = (x - s.x0) / s.sigma_x;
        const double ap = (p - s.p0) / s.sigma_p;
        const double r2 = ax * ax + ap * ap;
        const double c2 = s.cutoff * s.cutoff;
        if (r2 >= c2) return 0.0;
        const double w = 1.0 - r2 / c2;
        return s.amplitude * std::exp(-0.5 * r2) * w * w;
      };
    }
    case FDataSpec::Family::box: {
      const FDataSpec s = spec;
      return [s](double x, double p) {
        return (std::fabs(x - s.x0) <= s.sigma_x && std::fabs(p - s.p0) <= s.sigma_p)
                   ? s.amplitude
                   : 0.0;
      };
    }
  }
  throw std::logic_error("make_f_function: unknown family");
}

PhaseGrid fill_phase_grid(const Axis& x, const Axis& p,
                          const std::function<double(double, double)>& f) {
  PhaseGrid g(x, p);
  for (int i = 0; i < x.nodes(); ++i)
    for (int j = 0; j < p.nodes(); ++j) {
      const double v = f(x.coord(i), p.coord(j));
      if (v < 0.0) throw std::invalid_argument("fill_phase_grid: f must be nonnegative");
      g.at(i, j) = v;
    }
  g.rescan_support();
  return g;
}

namespace {

struct Fns {
  std::function<double(double)> val, deriv, prim;
};

Fns build(const FieldDataSpec& s) {
  switch (s.family) {
    case FieldDataSpec::Family::zero: {
      auto zero = [](double) { return 0.0; };
      return {zero, zero, zero};
    }
    case FieldDataSpec::Family::sine: {
      if (s.k == 0.0) throw std::invalid_argument("sine field data: k must be nonzero");
      const double a = s.amplitude, k = s.k;
      return {[a, k](double x) { return a * std::sin(k * x); },
              [a, k](double x) { return a * k * std::cos(k * x); },
              [a, k](double x) { return -a / k * std::cos(k * x); }};
    }
    case FieldDataSpec::Family::gaussian: {
      if (!(s.sigma > 0.0)) throw std::invalid_argument("gaussian field data: sigma must be positive");
      const double a = s.amplitude, x0 = s.x0, sg = s.sigma;
      const double sqrt_pi = std::sqrt(3.14159265358979323846);
      return {[a, x0, sg](double x) {
                const double u = (x - x0) / sg;
                return a * std::exp(-u * u);
              },
              [a, x0, sg](double x) {
                const double u = (x - x0) / sg;
                return -2.0 * a * u / sg * std::exp(-u * u);
              },
              [a, x0, sg, sqrt_pi](double x) {
                return a * sg * 0.5 * sqrt_pi * std::erf((x - x0) / sg);
              }};
    }
  }
  throw std::logic_error("field data: unknown family");
}

}  // namespace

WaveData1D make_wave_data(const FieldDataSpec& phi0, const FieldDataSpec& phi1) {
  const Fns f0 = build(phi0);
  const Fns f1 = build(phi1);
  WaveData1D d;
  d.phi0 = f0.val;
  d.dphi0 = f0.deriv;
  d.phi1 = f1.val;
  d.phi1_prim = f1.prim;
  return d;
}

}  // namespace nvlasov
