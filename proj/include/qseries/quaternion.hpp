#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>

namespace qseries {

/// Scale-relative threshold below which a point counts as real; applied as
/// realness_tol * max(1, |q|). Real points lie on every complex line, so
/// predicates built on top of this stay stable near the real axis.
inline constexpr double kRealnessTol = 1e-12;

/// Threshold on min(||u - v||, ||u + v||) between normalized imaginary parts
/// when deciding whether two points share a complex line (L_I = L_{-I}).
/// The sigma distance is discontinuous across this predicate.
inline constexpr double kAlignTol = 1e-10;

/// Hamilton quaternion w + x i + y j + z k. Plain value type: every operation
/// returns a fresh value, nothing mutates in place, safe to share across
/// threads.
struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_, double x_, double y_, double z_)
      : w(w_), x(x_), y(y_), z(z_) {}

  static constexpr Quaternion real(double r) { return {r, 0.0, 0.0, 0.0}; }

  constexpr double re() const { return w; }
  constexpr Quaternion imag() const { return {0.0, x, y, z}; }
  constexpr Quaternion conj() const { return {w, -x, -y, -z}; }

  constexpr double norm_sq() const { return w * w + x * x + y * y + z * z; }

  /// Euclidean modulus, with max-scaling when the squared sum would
  /// over- or underflow.
  double norm() const {
    const double n2 = norm_sq();
    if (n2 > 0.0 && n2 < std::numeric_limits<double>::infinity()) {
      return std::sqrt(n2);
    }
    return scaled_norm(w, x, y, z);
  }

  double imag_norm() const {
    const double n2 = x * x + y * y + z * z;
    if (n2 > 0.0 && n2 < std::numeric_limits<double>::infinity()) {
      return std::sqrt(n2);
    }
    return scaled_norm(0.0, x, y, z);
  }

 private:
  static double scaled_norm(double a, double b, double c, double d) {
    const double m =
        std::max(std::max(std::abs(a), std::abs(b)),
                 std::max(std::abs(c), std::abs(d)));
    if (m == 0.0 || !(m < std::numeric_limits<double>::infinity())) {
      return m;  // zero, infinity, or NaN propagates
    }
    a /= m;
    b /= m;
    c /= m;
    d /= m;
    return m * std::sqrt(a * a + b * b + c * c + d * d);
  }

 public:
  friend constexpr bool operator==(const Quaternion&,
                                   const Quaternion&) = default;
};

constexpr Quaternion operator+(const Quaternion& a, const Quaternion& b) {
  return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
}

constexpr Quaternion operator-(const Quaternion& a, const Quaternion& b) {
  return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
}

constexpr Quaternion operator-(const Quaternion& a) {
  return {-a.w, -a.x, -a.y, -a.z};
}

/// Hamilton product. Non-commutative, associative, distributes over +.
constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

constexpr Quaternion operator*(const Quaternion& a, double s) {
  return {a.w * s, a.x * s, a.y * s, a.z * s};
}

constexpr Quaternion operator*(double s, const Quaternion& a) { return a * s; }

constexpr Quaternion operator/(const Quaternion& a, double s) {
  return {a.w / s, a.x / s, a.y / s, a.z / s};
}

inline constexpr Quaternion kOne{1.0, 0.0, 0.0, 0.0};
inline constexpr Quaternion kUnitI{0.0, 1.0, 0.0, 0.0};
inline constexpr Quaternion kUnitJ{0.0, 0.0, 1.0, 0.0};
inline constexpr Quaternion kUnitK{0.0, 0.0, 0.0, 1.0};

/// conj(q) / |q|^2. Throws std::domain_error when q == 0.
Quaternion inverse(const Quaternion& q);

/// q^n by binary exponentiation, O(log n) products.
Quaternion pow_int(Quaternion q, unsigned long n);

bool is_real(const Quaternion& q, double realness_tol = kRealnessTol);

/// Recovers (x0, x1, x2, x3) from q using quaternion products only:
/// x0 = (q - iqi - jqj - kqk)/4 and the three companion identities. This is a
/// self-test of the arithmetic, not an accessor; throws std::runtime_error if
/// an intermediate carries a nonreal residue above 1e-10 * max(1, |q|),
/// which would indicate broken multiplication.
std::array<double, 4> recover_components(const Quaternion& q);

/// A point I of the sphere of imaginary units, selecting the complex line
/// L_I = R + I R. The unit and its negation denote the same line.
class ImaginaryUnit {
 public:
  /// direction must satisfy |direction^2 + 1| <= 1e-12; throws otherwise.
  explicit ImaginaryUnit(const Quaternion& direction);

  const Quaternion& direction() const { return dir_; }
  ImaginaryUnit negated() const;

  /// x + I y as a quaternion.
  Quaternion embed(double x, double y) const;
  Quaternion embed(std::complex<double> zc) const {
    return embed(zc.real(), zc.imag());
  }

 private:
  struct Trusted {};
  ImaginaryUnit(const Quaternion& dir, Trusted) : dir_(dir) {}
  Quaternion dir_;

  friend std::optional<ImaginaryUnit> imaginary_unit_of(const Quaternion&,
                                                        double);
};

/// Im(q)/|Im(q)| when q is nonreal; nullopt when q counts as real (and hence
/// lies on every complex line).
std::optional<ImaginaryUnit> imaginary_unit_of(
    const Quaternion& q, double realness_tol = kRealnessTol);

/// min(||u - v||, ||u + v||) between the normalized imaginary parts of p and
/// q; +inf when either point counts as real.
double slice_alignment_deviation(const Quaternion& p, const Quaternion& q,
                                 double realness_tol = kRealnessTol);

/// True iff p and q lie on a common complex line: either point real, or the
/// normalized imaginary parts parallel/antiparallel within align_tol.
bool same_slice(const Quaternion& p, const Quaternion& q,
                double realness_tol = kRealnessTol,
                double align_tol = kAlignTol);

}  // namespace qseries
