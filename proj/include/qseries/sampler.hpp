#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <utility>

#include "qseries/quaternion.hpp"

namespace qseries {

/// Seeded draws for the verification sweeps. Every random choice flows
/// through the engine so a seed fully determines a run. Plain uniform
/// sampling almost never lands two points on one complex line, so pair and
/// triple draws force a share of same-slice and real samples to exercise all
/// sigma branches: 20% of draws share a slice, and each remaining point is
/// real with probability 10%.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  /// Uniform in [0, 1) with 53 random bits; avoids distribution objects so
  /// the stream is stable across standard libraries.
  double unit() {
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  bool chance(double p) { return unit() < p; }

  int index(int n) {
    if (n <= 1) return 0;
    return static_cast<int>(rng_() % static_cast<std::uint64_t>(n));
  }

  /// Componentwise uniform in [-half_width, half_width].
  Quaternion box(double half_width) {
    const double a = uniform(-half_width, half_width);
    const double b = uniform(-half_width, half_width);
    const double c = uniform(-half_width, half_width);
    const double d = uniform(-half_width, half_width);
    return {a, b, c, d};
  }

  /// Uniform in the solid ball |q| <= radius (rejection from the box).
  Quaternion ball(double radius) {
    for (;;) {
      const Quaternion q = box(radius);
      if (q.norm() <= radius) return q;
    }
  }

  ImaginaryUnit unit_imaginary() {
    for (;;) {
      const Quaternion q = box(1.0);
      const double n = q.imag().norm();
      if (n > 1e-3 && n <= 1.0) {
        return ImaginaryUnit(q.imag() / n);
      }
    }
  }

  /// 10% real, otherwise componentwise uniform.
  Quaternion mixed(double half_width) {
    if (chance(0.1)) return Quaternion::real(uniform(-half_width, half_width));
    return box(half_width);
  }

  /// x + I y with signed y: uniform over the slice rectangle.
  Quaternion on_slice(const ImaginaryUnit& I, double half_width) {
    return I.embed(uniform(-half_width, half_width),
                   uniform(-half_width, half_width));
  }

  std::pair<Quaternion, Quaternion> pair_mixed(double half_width) {
    if (chance(0.2)) {
      const ImaginaryUnit I = unit_imaginary();
      return {on_slice(I, half_width), on_slice(I, half_width)};
    }
    return {mixed(half_width), mixed(half_width)};
  }

  std::array<Quaternion, 3> triple_mixed(double half_width) {
    if (chance(0.2)) {
      const ImaginaryUnit I = unit_imaginary();
      return {on_slice(I, half_width), on_slice(I, half_width),
              on_slice(I, half_width)};
    }
    return {mixed(half_width), mixed(half_width), mixed(half_width)};
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace qseries
