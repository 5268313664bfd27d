#include "qseries/series.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "qseries/sigma.hpp"

namespace qseries {

namespace {

constexpr std::size_t kMaxCoeffs = (1u << 16) + 1;  // dense storage cap
constexpr double kInf = std::numeric_limits<double>::infinity();

std::complex<double> cpow(std::complex<double> b, unsigned long n) {
  std::complex<double> acc{1.0, 0.0};
  while (n > 0) {
    if (n & 1UL) acc *= b;
    b *= b;
    n >>= 1UL;
  }
  return acc;
}

/// sum_n w^n a_n with the w powers multiplied from the left.
Quaternion horner_left(const std::vector<Quaternion>& a, const Quaternion& w) {
  if (a.empty()) return {};
  Quaternion s = a.back();
  for (std::size_t i = a.size() - 1; i-- > 0;) {
    s = a[i] + w * s;
  }
  return s;
}

/// sum_n |w|^n |a_n|, the conditioning scale of the Horner sum above.
double horner_abs_scale(const std::vector<Quaternion>& a, double wn) {
  double s = 0.0;
  for (std::size_t i = a.size(); i-- > 0;) {
    s = a[i].norm() + wn * s;
  }
  return s;
}

struct SliceWeights {
  Quaternion half_minus;  // (1 - JI)/2
  Quaternion half_plus;   // (1 + JI)/2
};

SliceWeights slice_weights(const ImaginaryUnit& J, const ImaginaryUnit& I) {
  const Quaternion ji = J.direction() * I.direction();
  return {(kOne - ji) * 0.5, (kOne + ji) * 0.5};
}

/// Evaluation through the representation formula: q = x + Jy off the slice
/// of p, z = x + Iy on it, value = (1-JI)/2 f_I(z) + (1+JI)/2 f_I(zbar).
Quaternion eval_off_slice(const RegularSeries& f, const Quaternion& q) {
  const ImaginaryUnit I = *imaginary_unit_of(f.center());
  const ImaginaryUnit J = *imaginary_unit_of(q);
  const std::complex<double> pc{f.center().re(), f.center().imag_norm()};
  const std::complex<double> zc{q.re(), q.imag_norm()};
  const Quaternion s1 = horner_left(f.coeffs(), I.embed(zc - pc));
  const Quaternion s2 = horner_left(f.coeffs(), I.embed(std::conj(zc) - pc));
  const SliceWeights wts = slice_weights(J, I);
  return wts.half_minus * s1 + wts.half_plus * s2;
}

Quaternion eval_value(const RegularSeries& f, const Quaternion& q) {
  if (f.coeffs().empty()) return {};
  const Quaternion& p = f.center();
  if (!same_slice(p, q)) return eval_off_slice(f, q);

  const Quaternion v_on = horner_left(f.coeffs(), q - p);
  if (!is_real(p) && !is_real(q)) {
    // q sits within align_tol of the slice of p: the commuting-case value and
    // the representation-formula value must coincide by continuity along the
    // slice. Compare them unless cancellation makes the comparison
    // meaningless (roundoff of order eps * scale above the 1e-6 threshold).
    const double scale = horner_abs_scale(f.coeffs(), (q - p).norm());
    const double thresh = 1e-6 * std::max(1.0, v_on.norm());
    if (1e-12 * scale < thresh) {
      const Quaternion v_off = eval_off_slice(f, q);
      if ((v_on - v_off).norm() > thresh) {
        throw std::runtime_error(
            "evaluate: on-slice and representation-formula branches disagree "
            "at a near-aligned input");
      }
    }
  }
  return v_on;
}

struct TailFit {
  bool empty = false;   // no nonzero coefficients in the window
  double log_rho = 0.0;
  double log_c = 0.0;   // includes the 2x safety factor
};

TailFit fit_tail(const RegularSeries& f, double declared_radius, int window) {
  std::vector<std::pair<int, double>> pts;  // (n, log |a_n|)
  for (int n = f.degree(); n >= 0 && static_cast<int>(pts.size()) < window;
       --n) {
    const double a = f.coeffs()[static_cast<std::size_t>(n)].norm();
    if (a > 0.0) pts.emplace_back(n, std::log(a));
  }
  if (pts.empty()) return {.empty = true, .log_rho = 0.0, .log_c = 0.0};

  TailFit fit;
  if (pts.size() == 1) {
    // No decay information; fall back onto the asserted radius.
    fit.log_rho = -std::log(declared_radius);
  } else {
    double mean_n = 0.0;
    double mean_l = 0.0;
    for (const auto& [n, l] : pts) {
      mean_n += n;
      mean_l += l;
    }
    mean_n /= static_cast<double>(pts.size());
    mean_l /= static_cast<double>(pts.size());
    double num = 0.0;
    double den = 0.0;
    for (const auto& [n, l] : pts) {
      num += (n - mean_n) * (l - mean_l);
      den += (n - mean_n) * (n - mean_n);
    }
    fit.log_rho = num / den;
  }
  double log_c = -kInf;
  for (const auto& [n, l] : pts) {
    log_c = std::max(log_c, l - n * fit.log_rho);
  }
  fit.log_c = log_c + std::log(2.0);
  return fit;
}

double tail_bound(const RegularSeries& f, double sig, int window) {
  if (sig == 0.0) return 0.0;
  if (!f.declared_radius()) return kInf;
  const double R = *f.declared_radius();
  if (!(sig < R)) return kInf;

  const TailFit fit = fit_tail(f, R, window);
  if (fit.empty) return 0.0;
  const double lr = fit.log_rho + std::log(sig);
  if (!(lr < 0.0)) return kInf;
  const double log_tail = std::log(2.0) + fit.log_c +
                          static_cast<double>(f.degree() + 1) * lr -
                          std::log1p(-std::exp(lr));
  return std::exp(log_tail);
}

}  // namespace

RegularSeries::RegularSeries(const Quaternion& center,
                             std::vector<Quaternion> coeffs,
                             std::optional<double> declared_radius)
    : center_(center), coeffs_(std::move(coeffs)), radius_(declared_radius) {
  if (coeffs_.size() > kMaxCoeffs) {
    throw std::invalid_argument("RegularSeries: degree exceeds 2^16");
  }
  if (radius_ && !(*radius_ > 0.0)) {
    throw std::invalid_argument("RegularSeries: declared radius must be > 0");
  }
}

namespace {

std::optional<double> merged_radius(const RegularSeries& f,
                                    const RegularSeries& g) {
  if (f.declared_radius() && g.declared_radius()) {
    return std::min(*f.declared_radius(), *g.declared_radius());
  }
  return std::nullopt;
}

void require_same_center(const RegularSeries& f, const RegularSeries& g,
                         const char* op) {
  if (!(f.center() == g.center())) {
    throw std::invalid_argument(std::string(op) +
                                ": centers must match exactly");
  }
}

}  // namespace

RegularSeries series_add(const RegularSeries& f, const RegularSeries& g) {
  require_same_center(f, g, "series_add");
  std::vector<Quaternion> c(std::max(f.coeffs().size(), g.coeffs().size()));
  for (std::size_t n = 0; n < c.size(); ++n) {
    Quaternion s{};
    if (n < f.coeffs().size()) s = s + f.coeffs()[n];
    if (n < g.coeffs().size()) s = s + g.coeffs()[n];
    c[n] = s;
  }
  return {f.center(), std::move(c), merged_radius(f, g)};
}

RegularSeries star_multiply(const RegularSeries& f, const RegularSeries& g) {
  require_same_center(f, g, "star_multiply");
  if (f.coeffs().empty() || g.coeffs().empty()) {
    return {f.center(), {}, merged_radius(f, g)};
  }
  std::vector<Quaternion> c(f.coeffs().size() + g.coeffs().size() - 1);
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    for (std::size_t j = 0; j < g.coeffs().size(); ++j) {
      c[i + j] = c[i + j] + f.coeffs()[i] * g.coeffs()[j];
    }
  }
  return {f.center(), std::move(c), merged_radius(f, g)};
}

RegularSeries star_power_series(const Quaternion& p, int n) {
  if (n < 0) throw std::invalid_argument("star_power_series: n must be >= 0");
  RegularSeries acc(Quaternion{}, {kOne}, kInf);
  if (n == 0) return acc;
  const RegularSeries binom(Quaternion{}, {-p, kOne}, kInf);
  for (int k = 0; k < n; ++k) acc = star_multiply(acc, binom);
  return acc;
}

Quaternion star_power_eval(const Quaternion& p, unsigned long n,
                           const Quaternion& q) {
  if (same_slice(p, q)) return pow_int(q - p, n);
  const ImaginaryUnit I = *imaginary_unit_of(p);
  const ImaginaryUnit J = *imaginary_unit_of(q);
  const std::complex<double> pc{p.re(), p.imag_norm()};
  const std::complex<double> zc{q.re(), q.imag_norm()};
  const SliceWeights wts = slice_weights(J, I);
  return wts.half_minus * I.embed(cpow(zc - pc, n)) +
         wts.half_plus * I.embed(cpow(std::conj(zc) - pc, n));
}

double star_power_log_abs(const Quaternion& p, unsigned long n,
                          const Quaternion& q) {
  if (n == 0) return 0.0;
  if (same_slice(p, q)) {
    return static_cast<double>(n) * std::log((q - p).norm());
  }
  const ImaginaryUnit I = *imaginary_unit_of(p);
  const ImaginaryUnit J = *imaginary_unit_of(q);
  const std::complex<double> pc{p.re(), p.imag_norm()};
  const std::complex<double> zc{q.re(), q.imag_norm()};
  const std::complex<double> w1 = zc - pc;
  const std::complex<double> w2 = std::conj(zc) - pc;
  const SliceWeights wts = slice_weights(J, I);

  // Factor out the dominant power so the remaining ratio stays bounded.
  Quaternion bracket;
  double log_big;
  if (std::abs(w2) >= std::abs(w1)) {
    bracket = wts.half_minus * I.embed(cpow(w1 / w2, n)) + wts.half_plus;
    log_big = std::log(std::abs(w2));
  } else {
    bracket = wts.half_minus + wts.half_plus * I.embed(cpow(w2 / w1, n));
    log_big = std::log(std::abs(w1));
  }
  return std::log(bracket.norm()) + static_cast<double>(n) * log_big;
}

RegularSeries binomial_expand(int m, const Quaternion& p) {
  if (m < 0) throw std::invalid_argument("binomial_expand: m must be >= 0");
  std::vector<Quaternion> c(static_cast<std::size_t>(m) + 1);
  // Walk down from c_m = 1 with c_{k-1} = c_k p k / (m - k + 1), keeping the
  // power and the binomial factor fused so neither can over/underflow alone.
  Quaternion term = kOne;
  c[static_cast<std::size_t>(m)] = term;
  for (int k = m; k > 0; --k) {
    term = term * p *
           (static_cast<double>(k) / static_cast<double>(m - k + 1));
    c[static_cast<std::size_t>(k - 1)] = term;
  }
  return {p, std::move(c), kInf};
}

RegularSeries formal_derivative(const RegularSeries& f) {
  if (f.coeffs().size() <= 1) {
    return {f.center(), {}, f.declared_radius()};
  }
  std::vector<Quaternion> c(f.coeffs().size() - 1);
  for (std::size_t n = 0; n < c.size(); ++n) {
    c[n] = f.coeffs()[n + 1] * static_cast<double>(n + 1);
  }
  return {f.center(), std::move(c), f.declared_radius()};
}

double radius_estimate(const RegularSeries& f, int window) {
  const int N = f.degree();
  if (window < 2 || N < window) {
    throw std::invalid_argument("radius_estimate: requires N >= window >= 2");
  }
  double root_max = 0.0;
  for (int n = N - window + 1; n <= N; ++n) {
    const double a = f.coeffs()[static_cast<std::size_t>(n)].norm();
    if (a > 0.0) {
      root_max = std::max(root_max, std::exp(std::log(a) / n));
    }
  }
  if (root_max == 0.0) return kInf;
  return 1.0 / root_max;
}

EvalResult evaluate(const RegularSeries& f, const Quaternion& q,
                    int tail_window) {
  if (tail_window < 1) {
    throw std::invalid_argument("evaluate: tail_window must be >= 1");
  }
  EvalResult out;
  out.value = eval_value(f, q);
  out.tail_bound = tail_bound(f, sigma(q, f.center()), tail_window);
  return out;
}

RegularSeries reexpand(const RegularSeries& f, const Quaternion& p,
                       int order) {
  if (!(f.center() == Quaternion{})) {
    throw std::invalid_argument("reexpand: series must be centered at 0");
  }
  const int N = f.degree();
  if (order < 0 || order > N) {
    throw std::invalid_argument("reexpand: requires 0 <= order <= N");
  }
  if (f.declared_radius() && !(p.norm() < *f.declared_radius())) {
    throw std::invalid_argument(
        "reexpand: |p| must be below the declared radius");
  }

  std::vector<Quaternion> b(static_cast<std::size_t>(order) + 1);
  for (int k = 0; k <= order; ++k) {
    Quaternion acc{};
    // term = p^m C(m + k, k), fused so the power and the binomial factor
    // cannot over/underflow separately; p commutes with its own powers.
    Quaternion term = kOne;
    for (int m = 0; m <= N - k; ++m) {
      if (m > 0) {
        term = term * p *
               (static_cast<double>(m + k) / static_cast<double>(m));
      }
      acc = acc + term * f.coeffs()[static_cast<std::size_t>(m) +
                                    static_cast<std::size_t>(k)];
    }
    b[static_cast<std::size_t>(k)] = acc;
  }
  std::optional<double> r;
  if (f.declared_radius()) r = *f.declared_radius() - p.norm();
  return {p, std::move(b), r};
}

}  // namespace qseries
