#include "qseries/sigma.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qseries {

double omega(const Quaternion& q, const Quaternion& p) {
  return std::hypot(q.re() - p.re(), q.imag_norm() + p.imag_norm());
}

double sigma(const Quaternion& q, const Quaternion& p, double realness_tol,
             double align_tol) {
  if (same_slice(p, q, realness_tol, align_tol)) return (q - p).norm();
  return omega(q, p);
}

SigmaBall::SigmaBall(const Quaternion& center, double radius)
    : center_(center), radius_(radius), slice_(imaginary_unit_of(center)) {
  if (!(radius > 0.0)) {
    throw std::invalid_argument("SigmaBall: radius must be positive");
  }
}

Membership classify(const SigmaBall& ball, const Quaternion& s) {
  const Quaternion& p = ball.center();
  const double R = ball.radius();
  if (omega(s, p) < R) return Membership::inside_omega;
  if (same_slice(p, s) && (s - p).norm() < R) {
    return Membership::inside_slice_disc;
  }
  if (std::abs(sigma(s, p) - R) <= kBoundaryTol * std::max(1.0, R)) {
    return Membership::boundary;
  }
  return Membership::outside;
}

bool omega_ball_nonempty(const SigmaBall& ball) {
  return ball.radius() > ball.center().imag_norm();
}

bool omega_ball_contains_center(const SigmaBall& ball) {
  return ball.radius() > 2.0 * ball.center().imag_norm();
}

bool in_analyticity_region_ball(double R, const Quaternion& p) {
  if (!(R > 0.0)) {
    throw std::invalid_argument("in_analyticity_region_ball: R must be > 0");
  }
  return 2.0 * p.imag_norm() < R - p.norm();
}

bool in_analyticity_region_sigma(const SigmaBall& ball, const Quaternion& s) {
  if (!omega_ball_nonempty(ball)) {
    throw std::domain_error(
        "in_analyticity_region_sigma: Omega(p, R) is empty (R <= |Im p|)");
  }
  const Quaternion& p = ball.center();
  const double R = ball.radius();
  const double two_im = 2.0 * s.imag_norm();
  if (same_slice(p, s)) return two_im < R - (s - p).norm();
  return two_im < R - omega(s, p);
}

double hyperbola_h_residual(double x0, double y0, double R, double x,
                            double y) {
  const double dx = x - x0;
  const double t = y - (y0 + 2.0 * R) / 3.0;
  const double c = 2.0 * y0 + R;
  return dx * dx - 3.0 * t * t + c * c / 3.0;
}

double hyperbola_k_residual(double x0, double y0, double R, double x,
                            double y) {
  const double dx = x - x0;
  const double t = y + (y0 - 2.0 * R) / 3.0;
  const double c = 2.0 * y0 - R;
  return dx * dx - 3.0 * t * t + c * c / 3.0;
}

namespace {

// Sweeps y over [0, y_max] and emits the two symmetric roots of
// dx^2 = 3 (y - apex)^2 - gap^2 / 3. Both boundary quadratics are of this
// shape, so solving in closed form avoids root-finder tolerance stacking.
std::vector<std::array<double, 2>> sweep_quadratic(double x0, double apex,
                                                   double gap, double y_max,
                                                   int n_points) {
  if (n_points < 2) {
    throw std::invalid_argument("sample_boundary: n_points must be >= 2");
  }
  std::vector<std::array<double, 2>> pts;
  pts.reserve(2 * static_cast<std::size_t>(n_points));
  for (int k = 0; k < n_points; ++k) {
    const double y = y_max * static_cast<double>(k) /
                     static_cast<double>(n_points - 1);
    const double t = y - apex;
    double disc = 3.0 * t * t - gap * gap / 3.0;
    if (disc < 0.0) {
      // Endpoint rounding only; interior y stay nonnegative by construction.
      if (disc < -1e-12 * std::max(1.0, gap * gap)) continue;
      disc = 0.0;
    }
    const double r = std::sqrt(disc);
    pts.push_back({x0 - r, y});
    if (r > 0.0) pts.push_back({x0 + r, y});
  }
  if (pts.empty()) {
    throw std::domain_error("sample_boundary: constraints admit no points");
  }
  return pts;
}

}  // namespace

std::vector<std::array<double, 2>> sample_hyperbola_h(double x0, double y0,
                                                      double R,
                                                      int n_points) {
  if (!(y0 >= 0.0) || !(y0 < R)) {
    throw std::domain_error("sample_hyperbola_h: requires 0 <= y0 < R");
  }
  // Real roots exist for y in [0, (R - y0)/3]; the stated range 0 <= y <= R-y0
  // (0 <= y < R when y0 = 0) contains it.
  return sweep_quadratic(x0, (y0 + 2.0 * R) / 3.0, 2.0 * y0 + R,
                         (R - y0) / 3.0, n_points);
}

std::vector<std::array<double, 2>> sample_hyperbola_k(double x0, double y0,
                                                      double R,
                                                      int n_points) {
  if (!(y0 > 0.0) || !(y0 < R)) {
    throw std::domain_error("sample_hyperbola_k: requires 0 < y0 < R");
  }
  const double y_max = std::min((R + y0) / 3.0, R - y0);
  return sweep_quadratic(x0, (2.0 * R - y0) / 3.0, 2.0 * y0 - R, y_max,
                         n_points);
}

namespace {

// Arc of the circle (x - cx)^2 + (y - cy)^2 = R^2 restricted to y >= 0.
void append_circle_arc(std::vector<std::array<double, 2>>& pts, double cx,
                       double cy, double R, int n_points) {
  if (cy <= -R) return;
  double lo = 0.0;
  double hi = std::numbers::pi;
  if (cy < R) {
    // y = cy + R sin(theta) >= 0 on [theta0, pi - theta0].
    const double theta0 = std::asin(std::clamp(-cy / R, -1.0, 1.0));
    lo = theta0;
    hi = std::numbers::pi - theta0;
  } else {
    lo = -std::numbers::pi;  // whole circle sits above the axis
    hi = std::numbers::pi;
  }
  for (int k = 0; k < n_points; ++k) {
    const double th =
        lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n_points - 1);
    pts.push_back({cx + R * std::cos(th), cy + R * std::sin(th)});
  }
}

bool region_member(const RegionSpec& spec, const SigmaBall& ball,
                   const Quaternion& s) {
  switch (spec.kind) {
    case RegionSpec::Kind::sigma_ball: {
      const Membership m = classify(ball, s);
      return m == Membership::inside_omega ||
             m == Membership::inside_slice_disc;
    }
    case RegionSpec::Kind::analyticity_ball:
      // Real center x0: membership in the region of B(x0, R) is the
      // origin-centered test applied to s - x0.
      return in_analyticity_region_ball(
          spec.radius, s - Quaternion::real(spec.center.re()));
    case RegionSpec::Kind::analyticity_sigma:
      return in_analyticity_region_sigma(ball, s);
  }
  return false;
}

}  // namespace

RegionSample sample_region(const RegionSpec& spec, const ImaginaryUnit& J,
                           int grid_n, int curve_n) {
  if (grid_n < 2 || curve_n < 2) {
    throw std::invalid_argument("sample_region: grid_n and curve_n must be >= 2");
  }
  const double R = spec.radius;
  if (!(R > 0.0)) {
    throw std::invalid_argument("sample_region: radius must be positive");
  }
  const double x0 = spec.center.re();
  const double y0 = spec.center.imag_norm();

  if (spec.kind == RegionSpec::Kind::analyticity_ball && y0 > 0.0) {
    throw std::invalid_argument(
        "sample_region: analyticity_ball requires a real center");
  }
  const SigmaBall ball(spec.center, R);
  if (spec.kind == RegionSpec::Kind::analyticity_sigma &&
      !omega_ball_nonempty(ball)) {
    throw std::domain_error(
        "sample_region: Omega(p, R) is empty (R <= |Im p|); the analyticity "
        "region of Sigma(p, R) is undefined");
  }

  RegionSample out;

  // Membership grid.
  const double ext = 1.25 * R;
  for (int iy = 0; iy < grid_n; ++iy) {
    const double y =
        ext * static_cast<double>(iy) / static_cast<double>(grid_n - 1);
    for (int ix = 0; ix < grid_n; ++ix) {
      const double x = x0 - ext + 2.0 * ext * static_cast<double>(ix) /
                                      static_cast<double>(grid_n - 1);
      const Quaternion s = J.embed(x, y);
      out.points.push_back({x, y, CurveTag::none, region_member(spec, ball, s)});
    }
  }

  // Boundary curves.
  auto push_curve = [&](const std::vector<std::array<double, 2>>& xy,
                        CurveTag tag) {
    for (const auto& pt : xy) {
      const Quaternion s = J.embed(pt[0], pt[1]);
      out.points.push_back({pt[0], pt[1], tag, region_member(spec, ball, s)});
    }
  };

  switch (spec.kind) {
    case RegionSpec::Kind::sigma_ball: {
      std::vector<std::array<double, 2>> arc;
      append_circle_arc(arc, x0, y0, R, curve_n);
      if (y0 > 0.0) append_circle_arc(arc, x0, -y0, R, curve_n);
      push_curve(arc, CurveTag::circle);
      break;
    }
    case RegionSpec::Kind::analyticity_ball: {
      push_curve(sample_hyperbola_h(x0, 0.0, R, curve_n),
                 CurveTag::hyperbola_h);
      std::vector<std::array<double, 2>> arc;
      append_circle_arc(arc, x0, 0.0, R, curve_n);
      push_curve(arc, CurveTag::circle);
      break;
    }
    case RegionSpec::Kind::analyticity_sigma: {
      push_curve(sample_hyperbola_h(x0, y0, R, curve_n),
                 CurveTag::hyperbola_h);
      if (y0 > 0.0) {
        push_curve(sample_hyperbola_k(x0, y0, R, curve_n),
                   CurveTag::hyperbola_k);
      }
      std::vector<std::array<double, 2>> arc;
      append_circle_arc(arc, x0, y0, R, curve_n);
      if (y0 > 0.0) append_circle_arc(arc, x0, -y0, R, curve_n);
      push_curve(arc, CurveTag::circle);
      break;
    }
  }
  return out;
}

}  // namespace qseries
