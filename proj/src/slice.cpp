#include "qseries/slice.hpp"

#include <cmath>
#include <stdexcept>

#include "qseries/sigma.hpp"

namespace qseries {

SlicePoint slice_point_of(const Quaternion& q) {
  const auto unit = imaginary_unit_of(q);
  if (!unit) {
    throw std::domain_error("slice_point_of: real points have no canonical slice");
  }
  return {q.re(), q.imag_norm(), *unit};
}

bool Evaluable::point_in_domain(const Quaternion& q) const {
  return sigma(q, domain_center) < domain_radius;
}

bool Evaluable::sphere_in_domain(double x, double y) const {
  // sup_{I} sigma(x + I y, center) = omega of any representative.
  const double om = std::hypot(x - domain_center.re(),
                               std::abs(y) + domain_center.imag_norm());
  return om < domain_radius;
}

Evaluable make_evaluable(const RegularSeries& f) {
  Evaluable e;
  e.fn = [f](const Quaternion& q) { return evaluate(f, q).value; };
  e.domain_center = f.center();
  if (f.declared_radius()) e.domain_radius = *f.declared_radius();
  return e;
}

std::pair<Quaternion, Quaternion> split_bc(const Evaluable& f, double x,
                                           double y, const ImaginaryUnit& I) {
  if (!f.sphere_in_domain(x, y)) {
    throw std::domain_error("split_bc: x + S y exits the declared domain");
  }
  const Quaternion fp = f(I.embed(x, y));
  const Quaternion fm = f(I.embed(x, -y));
  const Quaternion b = (fp + fm) * 0.5;
  const Quaternion c = -I.direction() * ((fp - fm) * 0.5);
  return {b, c};
}

Quaternion representation_eval(const Evaluable& f, double x, double y,
                               const ImaginaryUnit& I,
                               const ImaginaryUnit& J) {
  if (!f.sphere_in_domain(x, y)) {
    throw std::domain_error(
        "representation_eval: x + S y exits the declared domain");
  }
  const Quaternion ji = J.direction() * I.direction();
  return (kOne - ji) * 0.5 * f(I.embed(x, y)) +
         (kOne + ji) * 0.5 * f(I.embed(x, -y));
}

namespace {

struct Stencil {
  Quaternion ddx;
  Quaternion ddy;
};

Stencil central_differences(const Evaluable& f, const ImaginaryUnit& I,
                            double x, double y, double h) {
  const Quaternion px = I.embed(x + h, y);
  const Quaternion mx = I.embed(x - h, y);
  const Quaternion py = I.embed(x, y + h);
  const Quaternion my = I.embed(x, y - h);
  for (const Quaternion& s : {px, mx, py, my}) {
    if (!f.point_in_domain(s)) {
      throw std::domain_error(
          "dbar/slice-derivative check: stencil exits the declared domain");
    }
  }
  const double inv = 1.0 / (2.0 * h);
  return {(f(px) - f(mx)) * inv, (f(py) - f(my)) * inv};
}

}  // namespace

double dbar_check(const Evaluable& f, const ImaginaryUnit& I,
                  const std::vector<std::array<double, 2>>& grid, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("dbar_check: h must be > 0");
  double worst = 0.0;
  for (const auto& pt : grid) {
    const Stencil d = central_differences(f, I, pt[0], pt[1], h);
    const Quaternion dbar = (d.ddx + I.direction() * d.ddy) * 0.5;
    worst = std::max(worst, dbar.norm());
  }
  return worst;
}

double dbar_check(const Evaluable& f, const ImaginaryUnit& I,
                  const std::vector<std::array<double, 2>>& grid) {
  double worst = 0.0;
  for (const auto& pt : grid) {
    worst = std::max(
        worst, dbar_check(f, I, {pt}, default_fd_step(pt[0], pt[1])));
  }
  return worst;
}

double slice_derivative_check(const RegularSeries& f, const ImaginaryUnit& I,
                              const std::vector<std::array<double, 2>>& grid,
                              double h) {
  if (!(h > 0.0)) {
    throw std::invalid_argument("slice_derivative_check: h must be > 0");
  }
  const Evaluable e = make_evaluable(f);
  const RegularSeries df = formal_derivative(f);
  double worst = 0.0;
  for (const auto& pt : grid) {
    const Stencil d = central_differences(e, I, pt[0], pt[1], h);
    const Quaternion slice_d = (d.ddx - I.direction() * d.ddy) * 0.5;
    const Quaternion formal = evaluate(df, I.embed(pt[0], pt[1])).value;
    worst = std::max(worst, (slice_d - formal).norm());
  }
  return worst;
}

double slice_derivative_check(const RegularSeries& f, const ImaginaryUnit& I,
                              const std::vector<std::array<double, 2>>& grid) {
  double worst = 0.0;
  for (const auto& pt : grid) {
    worst = std::max(worst, slice_derivative_check(
                                f, I, {pt}, default_fd_step(pt[0], pt[1])));
  }
  return worst;
}

double default_fd_step(double x, double y) {
  return 1e-4 * std::max(1.0, std::hypot(x, y));
}

}  // namespace qseries
