#pragma once

#include <array>
#include <optional>
#include <vector>

#include "qseries/quaternion.hpp"

namespace qseries {

/// |sigma(s, p) - R| below this (times max(1, R)) classifies s as a boundary
/// point of the sigma-ball. The Euclidean closure of Sigma(p, R) is exactly
/// the closed ball {sigma <= R}, so a crisp tie rule suffices.
inline constexpr double kBoundaryTol = 1e-9;

/// omega(q, p) = sqrt([Re q - Re p]^2 + [|Im q| + |Im p|]^2).
/// Symmetric, always >= |q - p|; not a distance (omega(q, q) = 2 |Im q|).
double omega(const Quaternion& q, const Quaternion& p);

/// Euclidean distance when p, q share a complex line, omega otherwise.
/// Satisfies |q - p| <= sigma(q, p) <= omega(q, p) and the metric axioms.
double sigma(const Quaternion& q, const Quaternion& p,
             double realness_tol = kRealnessTol, double align_tol = kAlignTol);

/// Descriptor of the ball Sigma(p, R) = {q : sigma(q, p) < R} together with
/// the slice through its center. Decomposes as Omega(p, R) u B_I(p, R):
/// the symmetric open set {omega < R} plus the disc of radius R in L_I.
class SigmaBall {
 public:
  /// radius must be > 0; slice is derived from the center (nullopt when the
  /// center is real, meaning every slice qualifies).
  SigmaBall(const Quaternion& center, double radius);

  const Quaternion& center() const { return center_; }
  double radius() const { return radius_; }
  const std::optional<ImaginaryUnit>& slice() const { return slice_; }

 private:
  Quaternion center_;
  double radius_;
  std::optional<ImaginaryUnit> slice_;
};

enum class Membership { inside_omega, inside_slice_disc, boundary, outside };

/// Classification of s against Sigma(p, R). inside_omega and
/// inside_slice_disc together make up the ball; boundary means
/// sigma(s, p) = R within kBoundaryTol * max(1, R).
Membership classify(const SigmaBall& ball, const Quaternion& s);

/// Omega(p, R) is empty iff R <= |Im p|.
bool omega_ball_nonempty(const SigmaBall& ball);

/// Omega(p, R) contains p iff R > 2 |Im p|. Since Omega is the Euclidean
/// interior of Sigma, this decides whether the sigma-ball is a Euclidean
/// neighborhood of its own center.
bool omega_ball_contains_center(const SigmaBall& ball);

/// Membership of p in the quaternionic-analyticity region of B(0, R):
/// 2 |Im p| < R - |p|. Requires R > 0.
bool in_analyticity_region_ball(double R, const Quaternion& p);

/// Membership of s in the analyticity region of Sigma(p, R), the union of
/// the region for Omega(p, R) and the one for the slice disc B_I(p, R):
/// on the slice of p the test is 2 |Im s| < R - |s - p|, off it
/// 2 |Im s| < R - omega(s, p). Throws std::domain_error when Omega(p, R) is
/// empty (the region is defined only for R > |Im p|).
bool in_analyticity_region_sigma(const SigmaBall& ball, const Quaternion& s);

// --------------------------------------------------------------------------
// Cross-section sampling in (x, y) = (Re s, |Im s|) coordinates.
// --------------------------------------------------------------------------

enum class CurveTag { none, hyperbola_h, hyperbola_k, circle };

struct RegionPoint {
  double x = 0.0;
  double y = 0.0;
  CurveTag curve = CurveTag::none;
  bool inside = false;
};

struct RegionSample {
  std::vector<RegionPoint> points;
};

/// Residual of the boundary quadratic of the analyticity region of
/// B(x0, R), x0 real: x'^2 - 3 (y - 2R/3)^2 + R^2/3 with x' = x - x0.
double hyperbola_h_residual(double x0, double y0, double R, double x,
                            double y);

/// Residual of the slice-disc boundary quadratic for center x0 + I y0:
/// (x - x0)^2 - 3 (y + (y0 - 2R)/3)^2 + (2 y0 - R)^2 / 3.
double hyperbola_k_residual(double x0, double y0, double R, double x,
                            double y);

/// Points on the hyperbola arc bounding the analyticity region of
/// Omega(x0 + I y0, R); with y0 = 0 this is the arc for B(x0, R). The arc is
/// parameterized by y over the subrange of [0, R - y0] where the quadratic
/// has real roots, and both symmetric roots are emitted. Requires
/// n_points >= 2 and y0 < R.
std::vector<std::array<double, 2>> sample_hyperbola_h(double x0, double y0,
                                                      double R, int n_points);

/// Points on the arc bounding the analyticity region of the slice disc
/// B_I(x0 + I y0, R). Requires n_points >= 2 and 0 < y0 < R.
std::vector<std::array<double, 2>> sample_hyperbola_k(double x0, double y0,
                                                      double R, int n_points);

struct RegionSpec {
  enum class Kind { sigma_ball, analyticity_ball, analyticity_sigma };
  Kind kind = Kind::sigma_ball;
  Quaternion center;
  double radius = 1.0;
};

/// Membership grid plus boundary curves for the cross-section of the region
/// at slice J: grid point (x, y) is tested at s = x + J y. Grid covers
/// [cx - 1.25 R, cx + 1.25 R] x [0, 1.25 R]. Throws std::domain_error when
/// the requested region is empty (analyticity_sigma with Omega empty, or an
/// analyticity_ball descriptor with nonreal center).
RegionSample sample_region(const RegionSpec& spec, const ImaginaryUnit& J,
                           int grid_n, int curve_n);

}  // namespace qseries
