#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "mortarfem/assembly.hpp"
#include "mortarfem/errors.hpp"

namespace mortarfem {

/// Closed-form solution with the derivatives needed to manufacture sources,
/// interface flux data, and initial values. All built-in presets vanish on
/// the boundary of their intended domain.
struct ManufacturedSolution {
  std::string name;
  ScalarField u;
  ScalarField ux, uy; // spatial gradient
  ScalarField ut;     // time derivative
  ScalarField lap;    // Laplacian

  /// Parabolic source on a subdomain with diffusion coefficient a.
  double source(double x, double y, double t, double a) const {
    return ut(x, y, t) - a * lap(x, y, t);
  }

  /// Elliptic source (no time derivative term).
  double elliptic_source(double x, double y, double t, double a) const {
    return -a * lap(x, y, t);
  }

  GradientField gradient() const {
    return [this](double x, double y, double t) {
      return std::pair<double, double>(ux(x, y, t), uy(x, y, t));
    };
  }
};

/// u = x y (1-x^2) (1-y^2) e^t. Vanishes on the boundary of [-1,1]^2 and of
/// the L-shaped domain; the interface normal derivatives are nonzero there.
inline ManufacturedSolution exp_bubble_cubic() {
  ManufacturedSolution m;
  m.name = "exp-bubble-cubic";
  m.u = [](double x, double y, double t) {
    return x * y * (1.0 - x * x) * (1.0 - y * y) * std::exp(t);
  };
  m.ux = [](double x, double y, double t) {
    return y * (1.0 - 3.0 * x * x) * (1.0 - y * y) * std::exp(t);
  };
  m.uy = [](double x, double y, double t) {
    return x * (1.0 - x * x) * (1.0 - 3.0 * y * y) * std::exp(t);
  };
  m.ut = [](double x, double y, double t) {
    return x * y * (1.0 - x * x) * (1.0 - y * y) * std::exp(t);
  };
  m.lap = [](double x, double y, double t) {
    return -6.0 * x * y * (2.0 - x * x - y * y) * std::exp(t);
  };
  return m;
}

/// u = x y (1-x^2) (1-y^2), the steady version of exp_bubble_cubic.
inline ManufacturedSolution bubble_cubic() {
  ManufacturedSolution m = exp_bubble_cubic();
  m.name = "bubble-cubic";
  auto freeze = [](const ScalarField& f) {
    return [f](double x, double y, double) { return f(x, y, 0.0); };
  };
  m.u = freeze(m.u);
  m.ux = freeze(m.ux);
  m.uy = freeze(m.uy);
  m.lap = freeze(m.lap);
  m.ut = [](double, double, double) { return 0.0; };
  return m;
}

/// u = x (1-x) y (1-y) e^t on the unit square: degree 2 per direction, so a
/// degree-2 discretization represents the spatial part exactly.
inline ManufacturedSolution exp_bubble_quad() {
  ManufacturedSolution m;
  m.name = "exp-bubble-quad";
  m.u = [](double x, double y, double t) {
    return x * (1.0 - x) * y * (1.0 - y) * std::exp(t);
  };
  m.ux = [](double x, double y, double t) {
    return (1.0 - 2.0 * x) * y * (1.0 - y) * std::exp(t);
  };
  m.uy = [](double x, double y, double t) {
    return x * (1.0 - x) * (1.0 - 2.0 * y) * std::exp(t);
  };
  m.ut = [](double x, double y, double t) {
    return x * (1.0 - x) * y * (1.0 - y) * std::exp(t);
  };
  m.lap = [](double x, double y, double t) {
    return -2.0 * (y * (1.0 - y) + x * (1.0 - x)) * std::exp(t);
  };
  return m;
}

/// u = x (1-x) y (1-y), the steady version of exp_bubble_quad.
inline ManufacturedSolution bubble_quad() {
  ManufacturedSolution m = exp_bubble_quad();
  m.name = "bubble-quad";
  auto freeze = [](const ScalarField& f) {
    return [f](double x, double y, double) { return f(x, y, 0.0); };
  };
  m.u = freeze(m.u);
  m.ux = freeze(m.ux);
  m.uy = freeze(m.uy);
  m.lap = freeze(m.lap);
  m.ut = [](double, double, double) { return 0.0; };
  return m;
}

/// u = e^x sin(pi x) sin(pi y) on the unit square, steady. Smooth,
/// non-polynomial, with a nonzero normal derivative across x = 1/2.
inline ManufacturedSolution sine_exp() {
  ManufacturedSolution m;
  m.name = "sine-exp";
  const double pi = M_PI;
  m.u = [pi](double x, double y, double) {
    return std::exp(x) * std::sin(pi * x) * std::sin(pi * y);
  };
  m.ux = [pi](double x, double y, double) {
    return std::exp(x) * (std::sin(pi * x) + pi * std::cos(pi * x)) * std::sin(pi * y);
  };
  m.uy = [pi](double x, double y, double) {
    return pi * std::exp(x) * std::sin(pi * x) * std::cos(pi * y);
  };
  m.ut = [](double, double, double) { return 0.0; };
  m.lap = [pi](double x, double y, double) {
    return std::exp(x) *
           ((1.0 - 2.0 * pi * pi) * std::sin(pi * x) + 2.0 * pi * std::cos(pi * x)) *
           std::sin(pi * y);
  };
  return m;
}

/// u = 0: zero source and zero initial data, for decay and no-op checks.
inline ManufacturedSolution zero_solution() {
  ManufacturedSolution m;
  m.name = "zero";
  const ScalarField z = [](double, double, double) { return 0.0; };
  m.u = z;
  m.ux = z;
  m.uy = z;
  m.ut = z;
  m.lap = z;
  return m;
}

inline ManufacturedSolution manufactured_preset(const std::string& name) {
  if (name == "exp-bubble-cubic") return exp_bubble_cubic();
  if (name == "bubble-cubic") return bubble_cubic();
  if (name == "exp-bubble-quad") return exp_bubble_quad();
  if (name == "bubble-quad") return bubble_quad();
  if (name == "sine-exp") return sine_exp();
  if (name == "zero") return zero_solution();
  throw ValidationError("manufactured_preset: unknown solution '" + name + "'");
}

} // namespace mortarfem
