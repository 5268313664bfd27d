#pragma once

#include <array>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "qseries/quaternion.hpp"
#include "qseries/series.hpp"

namespace qseries {

/// Canonical coordinates of a point of the sphere x + S y: real part x,
/// imaginary magnitude y >= 0, and the unit selecting the slice.
struct SlicePoint {
  double x;
  double y;
  ImaginaryUnit unit;

  Quaternion point() const { return unit.embed(x, y); }
};

/// Canonical decomposition q = x + I y with y >= 0. Throws when q is real
/// (every unit would do and none is canonical).
SlicePoint slice_point_of(const Quaternion& q);

/// Anything with point evaluation plus a declared sigma-domain. Truncated
/// series are the built-in case; hand-written closures (conjugation,
/// indicators, ...) are registered by the tests.
struct Evaluable {
  std::function<Quaternion(const Quaternion&)> fn;
  Quaternion domain_center;
  double domain_radius = std::numeric_limits<double>::infinity();

  Quaternion operator()(const Quaternion& q) const { return fn(q); }
  bool point_in_domain(const Quaternion& q) const;
  /// Whole sphere x + S y inside the domain (sup over the sphere is omega).
  bool sphere_in_domain(double x, double y) const;
};

/// Series as an evaluable over its declared sigma-ball (the whole space when
/// no radius is declared).
Evaluable make_evaluable(const RegularSeries& f);

/// The sphere decomposition f(x + I y) = b + I c with
/// b = (f(x+Iy) + f(x-Iy))/2 and c = -I (f(x+Iy) - f(x-Iy))/2.
/// The pair is I-independent for regular series; that is tested, not assumed.
/// Throws std::domain_error when x + S y exits the declared domain.
std::pair<Quaternion, Quaternion> split_bc(const Evaluable& f, double x,
                                           double y, const ImaginaryUnit& I);

/// Two-point reconstruction (1 - JI)/2 f(x+Iy) + (1 + JI)/2 f(x-Iy); must
/// equal f(x + Jy) for regular series.
Quaternion representation_eval(const Evaluable& f, double x, double y,
                               const ImaginaryUnit& I, const ImaginaryUnit& J);

/// Max modulus over the grid of the central-difference estimate of
/// dbar_I f = 1/2 (d/dx + I d/dy) f restricted to L_I. Grid coordinates are
/// taken in L_I; all stencil points must be inside the domain. O(h^2) for
/// series-defined f. The overload without h uses the per-point default step.
double dbar_check(const Evaluable& f, const ImaginaryUnit& I,
                  const std::vector<std::array<double, 2>>& grid, double h);
double dbar_check(const Evaluable& f, const ImaginaryUnit& I,
                  const std::vector<std::array<double, 2>>& grid);

/// Max deviation over the grid between the central-difference slice
/// derivative 1/2 (d/dx - I d/dy) f and the evaluated formal derivative.
double slice_derivative_check(const RegularSeries& f, const ImaginaryUnit& I,
                              const std::vector<std::array<double, 2>>& grid,
                              double h);
double slice_derivative_check(const RegularSeries& f, const ImaginaryUnit& I,
                              const std::vector<std::array<double, 2>>& grid);

/// Default finite-difference step 1e-4 * max(1, |point|).
double default_fd_step(double x, double y);

}  // namespace qseries
