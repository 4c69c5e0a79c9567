#pragma once

// Deterministic nested trapezoid quadrature for 1D hard rods on a periodic box.

#include <cmath>

namespace oracle {

inline double rod_zeta(double x, double y, double sigma, double L) {
  double d = x - y;
  d -= L * std::round(d / L);
  return std::fabs(d) < sigma ? -1.0 : 0.0;
}

// Midpoint grids; the inner grid is offset by a quarter step so no node or
// node difference lands on a contact distance when L / (steps * sigma) is rational.

// int over x in [-L/2, L/2] of zeta(0, x): the single-edge weight.
inline double pair_weight(double sigma, double L, int steps) {
  const double h = L / steps;
  double s = 0.0;
  for (int i = 0; i < steps; ++i) s += rod_zeta(0.0, -L / 2 + (i + 0.5) * h, sigma, L);
  return s * h;
}

// int int zeta(0,x) zeta(0,y) zeta(x,y) dx dy over [-L/2, L/2]^2: the triangle weight.
inline double triangle_weight(double sigma, double L, int steps) {
  const double h = L / steps;
  double outer = 0.0;
  for (int i = 0; i < steps; ++i) {
    const double x = -L / 2 + (i + 0.5) * h;
    const double zx = rod_zeta(0.0, x, sigma, L);
    if (zx == 0.0) continue;
    double inner = 0.0;
    for (int j = 0; j < steps; ++j) {
      const double y = -L / 2 + (j + 0.25) * h;
      inner += rod_zeta(0.0, y, sigma, L) * rod_zeta(x, y, sigma, L);
    }
    outer += zx * inner * h;
  }
  return outer * h;
}

}  // namespace oracle
