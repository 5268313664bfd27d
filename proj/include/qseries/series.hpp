#pragma once

#include <optional>
#include <vector>

#include "qseries/quaternion.hpp"

namespace qseries {

/// Truncated regular power series sum_{n=0..N} (q - p)^{*n} a_n: a center p
/// and a finite coefficient sequence, with an optional user-asserted
/// sigma-radius of convergence of the underlying infinite series.
///
/// Coefficients sit on the right of the star powers. Series are immutable;
/// all operations below return fresh values. Coefficient storage is dense
/// (lacunary series carry explicit zeros) and capped at degree 2^16.
class RegularSeries {
 public:
  RegularSeries(const Quaternion& center, std::vector<Quaternion> coeffs,
                std::optional<double> declared_radius = std::nullopt);

  const Quaternion& center() const { return center_; }
  const std::vector<Quaternion>& coeffs() const { return coeffs_; }
  /// -1 for the empty (identically zero) series.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::optional<double>& declared_radius() const { return radius_; }

 private:
  Quaternion center_;
  std::vector<Quaternion> coeffs_;
  std::optional<double> radius_;
};

/// A point value plus a rigorous bound on the truncated tail (+inf when no
/// bound is derivable).
struct EvalResult {
  Quaternion value;
  double tail_bound = 0.0;
};

/// Sum of two series with the same center (exact match required; throws
/// std::invalid_argument otherwise). Declared radius of the result is the
/// smaller of the two when both are declared, nothing otherwise.
RegularSeries series_add(const RegularSeries& f, const RegularSeries& g);

/// Regular (star) product: coefficient convolution c_n = sum a_k b_{n-k},
/// truncated at order N_f + N_g. Centers must match bitwise; no automatic
/// re-centering, since re-centering changes convergence domains. Associative
/// and distributive but not commutative.
RegularSeries star_multiply(const RegularSeries& f, const RegularSeries& g);

/// (q - p)^{*n} expanded as a degree-n series centered at 0, built by
/// repeated star multiplication of the binomial (-p, 1).
RegularSeries star_power_series(const Quaternion& p, int n);

/// Evaluates (q - p)^{*n} in O(log n) products. On a shared slice this is
/// the plain power (q - p)^n; otherwise, writing q = x + J y and z = x + I y
/// with I the slice of p, it is (1 - JI)/2 (z - p)^n + (1 + JI)/2 (zbar - p)^n.
Quaternion star_power_eval(const Quaternion& p, unsigned long n,
                           const Quaternion& q);

/// log |(q - p)^{*n}|, computed without overflow for large n (used for
/// n-th-root limit checks; may return -inf when the power vanishes).
double star_power_log_abs(const Quaternion& p, unsigned long n,
                          const Quaternion& q);

/// q^m re-centered at p: sum_{k=0..m} (q - p)^{*k} p^{m-k} C(m, k).
/// Evaluating the result at any q reproduces q^m.
RegularSeries binomial_expand(int m, const Quaternion& p);

/// Coefficient shift a_n -> a_{n+1} (n+1); order drops by one, the empty
/// series stays empty, the center and declared radius are preserved.
RegularSeries formal_derivative(const RegularSeries& f);

/// Finite-sample proxy for 1 / limsup |a_n|^{1/n}: the reciprocal of the
/// largest |a_n|^{1/n} over the last `window` indices; +inf when they are
/// all zero. An estimate, not a certificate. Requires N >= window >= 2.
double radius_estimate(const RegularSeries& f, int window);

/// Evaluates the series at q with one slice decomposition and two
/// scalar-complex Horner recursions (not N separate star multiplications).
///
/// The tail bound combines the star-power estimate |(q-p)^{*n}| <= 2 sigma^n
/// with a geometric coefficient model |a_n| <= C rho^n fitted to the last
/// `tail_window` nonzero coefficients (2x safety factor):
/// 2 C (rho sigma)^{N+1} / (1 - rho sigma). It is +inf when no radius is
/// declared, when sigma(q, p) >= declared radius, or when rho sigma >= 1;
/// it is exactly 0 at q = p. The bound is rigorous under the fitted
/// envelope; no finite coefficient window can certify an arbitrary tail,
/// and slower-than-geometric decay evaluated within ~1e-6 of the declared
/// radius can exceed it.
EvalResult evaluate(const RegularSeries& f, const Quaternion& q,
                    int tail_window = 10);

/// Re-centers a series given at 0 onto p: g_n = f^(n)(p) / n! via the
/// derivative formula sum_m p^m a_{m+n} (m+n)! / (m! n!), with
/// g.declared_radius = declared_radius - |p|. Requires center 0,
/// 0 <= order <= N, and |p| < declared radius when one is declared.
RegularSeries reexpand(const RegularSeries& f, const Quaternion& p,
                       int order);

}  // namespace qseries
