#include "qseries/quaternion.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qseries {

Quaternion inverse(const Quaternion& q) {
  const double n2 = q.norm_sq();
  if (n2 == 0.0) {
    throw std::domain_error("inverse: zero quaternion is not invertible");
  }
  return q.conj() / n2;
}

Quaternion pow_int(Quaternion q, unsigned long n) {
  Quaternion acc = kOne;
  while (n > 0) {
    if (n & 1UL) acc = acc * q;
    q = q * q;
    n >>= 1UL;
  }
  return acc;
}

bool is_real(const Quaternion& q, double realness_tol) {
  return q.imag_norm() <= realness_tol * std::max(1.0, q.norm());
}

std::array<double, 4> recover_components(const Quaternion& q) {
  const Quaternion iqi = kUnitI * q * kUnitI;
  const Quaternion jqj = kUnitJ * q * kUnitJ;
  const Quaternion kqk = kUnitK * q * kUnitK;

  const Quaternion nums[4] = {
      q - iqi - jqj - kqk,
      q - iqi + jqj + kqk,
      q + iqi - jqj + kqk,
      q + iqi + jqj - kqk,
  };
  const Quaternion divisors[4] = {kOne * 4.0, kUnitI * 4.0, kUnitJ * 4.0,
                                  kUnitK * 4.0};

  const double residue_tol = 1e-10 * std::max(1.0, q.norm());
  std::array<double, 4> out{};
  for (int c = 0; c < 4; ++c) {
    const Quaternion r = inverse(divisors[c]) * nums[c];
    if (r.imag_norm() > residue_tol) {
      throw std::runtime_error(
          "recover_components: nonreal residue; quaternion product is "
          "inconsistent");
    }
    out[static_cast<std::size_t>(c)] = r.re();
  }
  return out;
}

ImaginaryUnit::ImaginaryUnit(const Quaternion& direction) : dir_(direction) {
  const Quaternion sq = direction * direction;
  if ((sq + kOne).norm() > 1e-12) {
    throw std::invalid_argument(
        "ImaginaryUnit: direction does not square to -1");
  }
}

ImaginaryUnit ImaginaryUnit::negated() const {
  return ImaginaryUnit(-dir_, Trusted{});
}

Quaternion ImaginaryUnit::embed(double x, double y) const {
  return Quaternion::real(x) + dir_ * y;
}

std::optional<ImaginaryUnit> imaginary_unit_of(const Quaternion& q,
                                               double realness_tol) {
  if (is_real(q, realness_tol)) return std::nullopt;
  const Quaternion im = q.imag();
  return ImaginaryUnit(im / im.norm(), ImaginaryUnit::Trusted{});
}

double slice_alignment_deviation(const Quaternion& p, const Quaternion& q,
                                 double realness_tol) {
  if (is_real(p, realness_tol) || is_real(q, realness_tol)) {
    return std::numeric_limits<double>::infinity();
  }
  const Quaternion u = p.imag() / p.imag_norm();
  const Quaternion v = q.imag() / q.imag_norm();
  return std::min((u - v).norm(), (u + v).norm());
}

bool same_slice(const Quaternion& p, const Quaternion& q, double realness_tol,
                double align_tol) {
  if (is_real(p, realness_tol) || is_real(q, realness_tol)) return true;
  return slice_alignment_deviation(p, q, realness_tol) <= align_tol;
}

}  // namespace qseries
