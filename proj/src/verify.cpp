#include "qseries/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "qseries/io.hpp"
#include "qseries/sampler.hpp"
#include "qseries/series.hpp"
#include "qseries/sigma.hpp"
#include "qseries/slice.hpp"

namespace qseries {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

/// Tracks the worst residual seen and the note describing where.
class Worst {
 public:
  void update(double residual, const std::string& note) {
    if (residual > value_) {
      value_ = residual;
      note_ = note;
    }
  }
  double value() const { return value_; }
  const std::string& note() const { return note_; }

 private:
  double value_ = -kInf;
  std::string note_;
};

PropertyResult finish(const std::string& name, const Worst& worst, double tol,
                      long samples, const Stopwatch& clock) {
  PropertyResult r;
  r.name = name;
  r.max_residual = worst.value() == -kInf ? 0.0 : worst.value();
  r.tolerance = tol;
  r.samples = samples;
  r.pass = r.max_residual <= tol;
  r.seconds = clock.seconds();
  if (!r.pass) r.worst_note = worst.note();
  return r;
}

std::string pq_note(const Quaternion& p, const Quaternion& q) {
  return "p=" + format_quaternion(p) + " q=" + format_quaternion(q);
}

/// Plain Horner for sum_n q^n c_n together with the magnitude scale
/// sum_n |q|^n |c_n|. This is the convolution-route oracle: it never touches
/// the slice decomposition used by star_power_eval/evaluate.
struct HornerEval {
  Quaternion value;
  double scale = 0.0;
};

HornerEval horner_eval_at(const std::vector<Quaternion>& coeffs,
                          const Quaternion& q) {
  HornerEval out;
  const double qn = q.norm();
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    out.value = coeffs[i] + q * out.value;
    out.scale = coeffs[i].norm() + qn * out.scale;
  }
  return out;
}

RegularSeries geometric_series(int degree, double radius) {
  std::vector<Quaternion> ones(static_cast<std::size_t>(degree) + 1, kOne);
  return {Quaternion{}, std::move(ones), radius};
}

// ---------------------------------------------------------------------- //

void metric_axioms(Sampler& s, long n, SuiteReport& report) {
  Worst symmetry, identity, triangle;
  const Stopwatch clock;
  for (long k = 0; k < n; ++k) {
    const auto [q, o, p] = s.triple_mixed(2.0);

    const double sqp = sigma(q, p);
    symmetry.update(std::abs(sqp - sigma(p, q)), pq_note(p, q));
    identity.update(sigma(q, q), "q=" + format_quaternion(q));
    if (!(q == p)) {
      identity.update(sqp > 0.0 ? 0.0 : 1.0, pq_note(p, q));
    }
    triangle.update(sqp - sigma(q, o) - sigma(o, p),
                    pq_note(p, q) + " o=" + format_quaternion(o));
  }
  report.results.push_back(
      finish("sigma symmetry (exact)", symmetry, 0.0, n, clock));
  report.results.push_back(
      finish("sigma identity of indiscernibles (exact)", identity, 0.0, n,
             clock));
  report.results.push_back(
      finish("sigma triangle inequality", triangle, 1e-10, n, clock));
}

void metric_order_relations(Sampler& s, long n, SuiteReport& report) {
  Worst sandwich, cross;
  const Stopwatch clock;
  long cross_samples = 0;
  for (long k = 0; k < n; ++k) {
    const auto [p, q] = s.pair_mixed(2.0);
    const double om = omega(q, p);
    const double sg = sigma(q, p);
    const double eu = (q - p).norm();
    const double scale = std::max(1.0, om);
    sandwich.update(std::max(eu - sg, sg - om) / scale, pq_note(p, q));

    if (!same_slice(p, q)) {
      // q = x + Jy off the slice of p; z = x + Iy on it. sigma must equal
      // max(|z - p|, |zbar - p|).
      const std::complex<double> pc{p.re(), p.imag_norm()};
      const std::complex<double> zc{q.re(), q.imag_norm()};
      const double m = std::max(std::abs(zc - pc), std::abs(std::conj(zc) - pc));
      cross.update(std::abs(sg - m) / std::max(1.0, sg), pq_note(p, q));
      ++cross_samples;
    }
  }
  report.results.push_back(
      finish("sandwich |q-p| <= sigma <= omega", sandwich, 1e-12, n, clock));
  report.results.push_back(finish("cross-slice formula max(|z-p|, |zbar-p|)",
                                  cross, 1e-12, cross_samples, clock));
}

void metric_ball_geometry(Sampler& s, long n, SuiteReport& report) {
  Worst nesting, axial, decomposition, region_nesting;
  const Stopwatch clock;
  for (long k = 0; k < n; ++k) {
    const Quaternion p = s.mixed(1.0);
    const double R = s.uniform(0.05, 2.0);
    const Quaternion v = s.mixed(1.5);
    const SigmaBall ball(p, R);

    const double om = omega(v, p);
    const double sg = sigma(v, p);
    const double eu = (v - p).norm();
    // Omega subset Sigma subset B, pointwise.
    nesting.update((om < R && !(sg < R)) || (sg < R && !(eu < R)) ? 1.0 : 0.0,
                   pq_note(p, v));

    // Membership of x + Jy in Omega(p, R) must not depend on J.
    const double xx = v.re();
    const double yy = v.imag_norm();
    const bool in_omega_ref = om < R;
    for (int t = 0; t < 8; ++t) {
      const Quaternion u = s.unit_imaginary().embed(xx, yy);
      axial.update((omega(u, p) < R) != in_omega_ref ? 1.0 : 0.0,
                   pq_note(p, v));
    }

    // Sigma = Omega u B_I away from the boundary band.
    const Membership m = classify(ball, v);
    if (std::abs(sg - R) > kBoundaryTol * std::max(1.0, R)) {
      const bool in_parts = m == Membership::inside_omega ||
                            m == Membership::inside_slice_disc;
      decomposition.update(in_parts != (sg < R) ? 1.0 : 0.0, pq_note(p, v));
    }

    // A(Omega) on the slice of p is covered by A(B_I).
    if (const auto I = imaginary_unit_of(p); I && omega_ball_nonempty(ball)) {
      const Quaternion sl = I->embed(p.re() + s.uniform(-R, R),
                                     s.uniform(0.0, p.imag_norm() + R));
      const bool in_a_omega = 2.0 * sl.imag_norm() < R - omega(sl, p);
      const bool in_a_bi = 2.0 * sl.imag_norm() < R - (sl - p).norm();
      region_nesting.update(in_a_omega && !in_a_bi ? 1.0 : 0.0, pq_note(p, sl));
    }
  }
  report.results.push_back(
      finish("ball nesting Omega in Sigma in B", nesting, 0.0, n, clock));
  report.results.push_back(
      finish("Omega membership is slice-independent", axial, 0.0, 8 * n,
             clock));
  report.results.push_back(finish("Sigma splits into Omega and slice disc",
                                  decomposition, 0.0, n, clock));
  report.results.push_back(finish("A(Omega) on-slice lies inside A(B_I)",
                                  region_nesting, 0.0, n, clock));
}

// ---------------------------------------------------------------------- //

void star_power_bound(Sampler& s, long pairs, SuiteReport& report) {
  Worst worst;
  const Stopwatch clock;
  for (long k = 0; k < pairs; ++k) {
    const auto [p, q] = s.pair_mixed(2.0);
    const double sg = sigma(q, p);
    Quaternion power = kOne;
    const Quaternion base = q - p;
    const bool on_slice = same_slice(p, q);
    double sg_n = 1.0;
    for (int n = 1; n <= 50; ++n) {
      sg_n *= sg;
      double mag;
      if (on_slice) {
        power = power * base;  // plain powers on a shared slice
        mag = power.norm();
      } else {
        mag = star_power_eval(p, static_cast<unsigned long>(n), q).norm();
      }
      if (sg_n == 0.0) {
        worst.update(mag, pq_note(p, q));
      } else {
        worst.update(mag / (2.0 * sg_n) - 1.0,
                     pq_note(p, q) + " n=" + std::to_string(n));
      }
    }
  }
  report.results.push_back(finish("bound |(q-p)^{*n}| <= 2 sigma^n, n <= 50",
                                  worst, 1e-12, pairs * 50, clock));
}

void star_power_limit(Sampler& s, long n_samples, SuiteReport& report) {
  Worst worst;
  const Stopwatch clock;
  constexpr unsigned long kN = 1000;
  for (long k = 0; k < n_samples; ++k) {
    Quaternion p, q;
    // Off-slice samples with |z - p| / |zbar - p| bounded away from 1.
    for (;;) {
      p = s.mixed(2.0);
      q = s.mixed(2.0);
      if (same_slice(p, q)) continue;
      const std::complex<double> pc{p.re(), p.imag_norm()};
      const std::complex<double> zc{q.re(), q.imag_norm()};
      const double m1 = std::abs(zc - pc);
      const double m2 = std::abs(std::conj(zc) - pc);
      const double big = std::max(m1, m2);
      if (big == 0.0) continue;
      if (std::min(m1, m2) / big <= 0.9) break;
    }
    const double sg = sigma(q, p);
    const double root =
        std::exp(star_power_log_abs(p, kN, q) / static_cast<double>(kN));
    worst.update(std::abs(root - sg) / sg, pq_note(p, q));
  }
  report.results.push_back(
      finish("limit | |(q-p)^{*n}|^{1/n} - sigma | at n = 1000", worst, 0.02,
             n_samples, clock));
}

void star_power_consistency(Sampler& s, long pairs, SuiteReport& report) {
  Worst worst;
  const Stopwatch clock;
  for (long k = 0; k < pairs; ++k) {
    Quaternion p = s.mixed(2.0);
    Quaternion q = s.mixed(2.0);
    if (p.norm() > 2.0) p = p * (2.0 / p.norm());
    if (q.norm() > 2.0) q = q * (2.0 / q.norm());
    RegularSeries acc(Quaternion{}, {kOne}, kInf);
    const RegularSeries binom(Quaternion{}, {-p, kOne}, kInf);
    for (int n = 1; n <= 30; ++n) {
      acc = star_multiply(acc, binom);
      const HornerEval oracle = horner_eval_at(acc.coeffs(), q);
      const Quaternion closed =
          star_power_eval(p, static_cast<unsigned long>(n), q);
      // Residual relative to the conditioning scale of the expanded
      // evaluation; a convolution defect would show up at scale 1.
      worst.update((oracle.value - closed).norm() / std::max(1.0, oracle.scale),
                   pq_note(p, q) + " n=" + std::to_string(n));
    }
  }
  report.results.push_back(finish("closed form matches convolution, n <= 30",
                                  worst, 1e-10, pairs * 30, clock));
}

// ---------------------------------------------------------------------- //

void binomial_identity(Sampler& s, long n_samples, SuiteReport& report) {
  Worst worst;
  const Stopwatch clock;
  for (long k = 0; k < n_samples; ++k) {
    // Half-width 0.75 keeps the evaluation's cancellation below the 1e-9
    // absolute floor of the tolerance; see the star-power bound for the
    // large-magnitude regime.
    const auto [p, q] = s.pair_mixed(0.75);
    const int m = s.index(11);
    const Quaternion direct = pow_int(q, static_cast<unsigned long>(m));
    const Quaternion via_series =
        evaluate(binomial_expand(m, p), q).value;
    const double scale = std::max(1.0, std::pow(q.norm(), m));
    worst.update((via_series - direct).norm() / scale,
                 pq_note(p, q) + " m=" + std::to_string(m));
  }
  report.results.push_back(finish("binomial re-centering reproduces q^m",
                                  worst, 1e-9, n_samples, clock));
}

// ---------------------------------------------------------------------- //

void leibniz_rule(Sampler& s, long n_pairs, SuiteReport& report) {
  Worst worst;
  const Stopwatch clock;
  for (long k = 0; k < n_pairs; ++k) {
    std::vector<Quaternion> fc(static_cast<std::size_t>(s.index(21)) + 1);
    std::vector<Quaternion> gc(static_cast<std::size_t>(s.index(21)) + 1);
    for (auto& c : fc) c = s.box(2.0);
    for (auto& c : gc) c = s.box(2.0);
    const RegularSeries f(Quaternion{}, fc);
    const RegularSeries g(Quaternion{}, gc);

    const RegularSeries lhs = formal_derivative(star_multiply(f, g));
    const RegularSeries rhs = series_add(
        star_multiply(formal_derivative(f), g),
        star_multiply(f, formal_derivative(g)));

    const std::size_t width = std::max(lhs.coeffs().size(), rhs.coeffs().size());
    for (std::size_t n = 0; n < width; ++n) {
      const Quaternion l =
          n < lhs.coeffs().size() ? lhs.coeffs()[n] : Quaternion{};
      const Quaternion r =
          n < rhs.coeffs().size() ? rhs.coeffs()[n] : Quaternion{};
      worst.update((l - r).norm() / std::max({1.0, l.norm(), r.norm()}),
                   "pair " + std::to_string(k) + " n=" + std::to_string(n));
    }
  }
  report.results.push_back(finish("Leibniz rule (f*g)' = f'*g + f*g'", worst,
                                  1e-12, n_pairs, clock));
}

// ---------------------------------------------------------------------- //

void representation_formula(Sampler& s, long n_samples, SuiteReport& report) {
  Worst independence, reconstruction;
  const Stopwatch clock;

  std::vector<Quaternion> random_coeffs(31);
  for (auto& c : random_coeffs) c = s.ball(1.0);
  const RegularSeries functions[2] = {
      geometric_series(60, 1.0),
      RegularSeries(Quaternion{}, random_coeffs, 1.0),
  };
  const Evaluable evals[2] = {make_evaluable(functions[0]),
                              make_evaluable(functions[1])};

  for (long k = 0; k < n_samples; ++k) {
    const Evaluable& f = evals[k % 2];
    // x + S y inside 0.8x the convergence ball.
    const double r = 0.8 * std::sqrt(s.unit());
    const double phi = s.uniform(0.0, 2.0 * std::acos(-1.0));
    const double xx = r * std::cos(phi);
    const double yy = std::abs(r * std::sin(phi));

    const auto [b0, c0] = split_bc(f, xx, yy, s.unit_imaginary());
    for (int t = 0; t < 7; ++t) {
      const auto [b, c] = split_bc(f, xx, yy, s.unit_imaginary());
      independence.update((b - b0).norm() / std::max(1.0, b0.norm()),
                          "x=" + format_double(xx) + " y=" + format_double(yy));
      independence.update((c - c0).norm() / std::max(1.0, c0.norm()),
                          "x=" + format_double(xx) + " y=" + format_double(yy));
    }

    const ImaginaryUnit I = s.unit_imaginary();
    const ImaginaryUnit J = s.unit_imaginary();
    const Quaternion via_pair = representation_eval(f, xx, yy, I, J);
    const Quaternion direct = f(J.embed(xx, yy));
    reconstruction.update(
        (via_pair - direct).norm() / std::max(1.0, direct.norm()),
        "x=" + format_double(xx) + " y=" + format_double(yy));
  }
  report.results.push_back(finish("split f(x+Iy) = b + I c is I-independent",
                                  independence, 1e-9, n_samples * 8, clock));
  report.results.push_back(finish("two-point reconstruction at x + Jy",
                                  reconstruction, 1e-9, n_samples, clock));
}

// ---------------------------------------------------------------------- //

/// Largest n for which the truncated coefficient sum_{m <= N-n} p^m C(m+n, n)
/// provably sits within ~1e-10 relative of the full sum (1-p)^{-(n+1)}.
/// Two effects are bounded against the signed target: the dropped tail,
/// starting at t = |p|^{M+1} C(M+1+n, n) with term ratio below
/// r = |p| (M+n+2)/(M+2) < 1 (M = N - n), and the roundoff of the computed
/// sum, of order eps * sum |p|^m C(m+n, n) <= eps (1-|p|)^{-(n+1)}; the
/// latter matters when p < 0 and the sum cancels.
int clean_coefficient_cutoff(double p, int N) {
  if (p == 0.0) return N;
  const double ap = std::abs(p);
  int best = -1;
  for (int n = 0; n <= N; ++n) {
    const double M = static_cast<double>(N - n);
    const double r = ap * (M + n + 2.0) / (M + 2.0);
    if (r >= 1.0) break;
    const double log_target =
        std::log(0.5e-10) - (n + 1.0) * std::log1p(-p);
    const double log_t = (M + 1.0) * std::log(ap) + std::lgamma(M + n + 2.0) -
                         std::lgamma(M + 2.0) - std::lgamma(n + 1.0);
    const double log_trunc = log_t - std::log1p(-r);
    const double log_round = std::log(1e-14) - (n + 1.0) * std::log1p(-ap);
    if (log_trunc <= log_target && log_round <= log_target) {
      best = n;
    } else {
      break;
    }
  }
  return best;
}

void reexpand_agreement(Sampler& s, long n_centers, SuiteReport& report) {
  Worst agreement, coefficients, radius_growth;
  const Stopwatch clock;
  const int N = 60;
  const double R = 1.0;
  const RegularSeries f = geometric_series(N, R);

  long q_samples = 0;
  long coeff_samples = 0;
  for (long k = 0; k < n_centers; ++k) {
    const Quaternion p =
        (k % 3 == 0) ? Quaternion::real(s.uniform(-0.6, 0.6)) : s.ball(0.6);
    const double rr = 0.95 * (R - p.norm());  // stay inside Sigma(p, R - |p|)
    const RegularSeries g = reexpand(f, p, N);

    const auto slice_of_p = imaginary_unit_of(p);
    for (int t = 0; t < 100; ++t) {
      Quaternion q;
      const ImaginaryUnit I =
          slice_of_p ? *slice_of_p : s.unit_imaginary();
      if (s.chance(0.5)) {
        // On the slice of p, anywhere in the disc of radius rr.
        const double rad = rr * std::sqrt(s.unit());
        const double phi = s.uniform(0.0, 2.0 * std::acos(-1.0));
        q = p + I.embed(rad * std::cos(phi), rad * std::sin(phi));
      } else {
        // Off slice: omega(q, p) < rr requires |Im q| < rr - |Im p| after
        // accounting for the real offset.
        const double dx = s.uniform(-rr, rr);
        const double ymax =
            std::sqrt(std::max(rr * rr - dx * dx, 0.0)) - p.imag_norm();
        if (ymax <= 0.0) {
          const double rad = rr * std::sqrt(s.unit());
          const double phi = s.uniform(0.0, 2.0 * std::acos(-1.0));
          q = p + I.embed(rad * std::cos(phi), rad * std::sin(phi));
        } else {
          q = Quaternion::real(p.re() + dx) +
              s.unit_imaginary().direction() * s.uniform(0.0, ymax);
        }
      }
      const EvalResult fv = evaluate(f, q);
      const EvalResult gv = evaluate(g, q);
      // Truncated re-expansion at full order is an exact change of basis, so
      // the residual beyond the two tail bounds is pure roundoff; the
      // tolerance provides that numerical floor.
      const double gap =
          (fv.value - gv.value).norm() - fv.tail_bound - gv.tail_bound;
      agreement.update(gap / (1.0 + fv.value.norm()), pq_note(p, q));
      ++q_samples;
    }

    if (is_real(p)) {
      const double pr = p.re();
      const int cutoff = clean_coefficient_cutoff(pr, N);
      for (int n = 0; n <= cutoff; ++n) {
        const double closed = std::pow(1.0 - pr, -(n + 1));
        const double got = g.coeffs()[static_cast<std::size_t>(n)].w;
        const double im = g.coeffs()[static_cast<std::size_t>(n)].imag_norm();
        coefficients.update(
            (std::abs(got - closed) + im) / std::abs(closed),
            "p=" + format_double(pr) + " n=" + std::to_string(n));
        ++coeff_samples;
      }

      // Declared radius of the re-expansion (R - |p|) is a lower bound for
      // the observed coefficient decay; estimate over a clean window.
      if (std::abs(pr) <= 0.55) {
        std::vector<Quaternion> head(g.coeffs().begin(),
                                     g.coeffs().begin() + 41);
        const RegularSeries head_series(p, std::move(head));
        const double est = radius_estimate(head_series, 10);
        const double target = R - std::abs(pr);
        radius_growth.update((target - est) / target,
                             "p=" + format_double(pr));
      }
    }
  }
  report.results.push_back(finish("re-expansion agrees within tail bounds",
                                  agreement, 1e-10, q_samples, clock));
  report.results.push_back(
      finish("real-center coefficients match (1-p)^-(n+1)", coefficients,
             1e-9, coeff_samples, clock));
  report.results.push_back(
      finish("re-expanded coefficient decay respects R - |p|", radius_growth,
             0.05, n_centers, clock));
}

// ---------------------------------------------------------------------- //

void dbar_suite(Sampler& s, long grid_points, double fd_step,
                SuiteReport& report) {
  const Stopwatch clock;
  const RegularSeries f = geometric_series(40, 1.0);
  const Evaluable fe = make_evaluable(f);
  const ImaginaryUnit I = s.unit_imaginary();

  std::vector<std::array<double, 2>> grid;
  for (long k = 0; k < grid_points; ++k) {
    const double r = 0.15 + 0.35 * s.unit();
    const double phi = s.uniform(0.0, 2.0 * std::acos(-1.0));
    grid.push_back({r * std::cos(phi), r * std::sin(phi)});
  }

  Worst order;
  const double r1 = dbar_check(fe, I, grid, fd_step);
  const double r2 = dbar_check(fe, I, grid, 0.5 * fd_step);
  const double r3 = dbar_check(fe, I, grid, 0.25 * fd_step);
  const double o21 = std::log2(r1 / r2);
  const double o32 = std::log2(r2 / r3);
  order.update(1.9 - std::min(o21, o32),
               "residuals " + format_double(r1) + " " + format_double(r2) +
                   " " + format_double(r3));
  report.results.push_back(finish(
      "dbar residual order >= 1.9 under h-halving", order, 0.0, 3, clock));

  Worst match;
  match.update(slice_derivative_check(f, I, grid, fd_step), "geometric series");
  report.results.push_back(
      finish("slice derivative matches formal derivative", match, 1e-6,
             grid_points, clock));

  Worst regular;
  const Evaluable square{[](const Quaternion& q) { return q * q; },
                         Quaternion{}, kInf};
  regular.update(dbar_check(square, I, grid, fd_step), "f(q) = q^2");
  report.results.push_back(
      finish("dbar vanishes on q^2", regular, 1e-6, grid_points, clock));

  Worst nonregular;
  const Evaluable conjugation{[](const Quaternion& q) { return q.conj(); },
                              Quaternion{}, kInf};
  nonregular.update(std::abs(dbar_check(conjugation, I, grid, fd_step) - 1.0),
                    "f(q) = conj(q)");
  report.results.push_back(finish("dbar flags conj(q) as non-regular (== 1)",
                                  nonregular, 1e-10, grid_points, clock));
}

}  // namespace

bool SuiteReport::passed() const {
  return std::all_of(results.begin(), results.end(),
                     [](const PropertyResult& r) { return r.pass; });
}

SuiteReport verify_metric(std::uint64_t seed, long samples) {
  SuiteReport report{"metric", {}};
  Sampler s(seed);
  const long n = samples > 0 ? samples : 100000;
  metric_axioms(s, n, report);
  metric_order_relations(s, std::max(n / 10, 1000L), report);
  metric_ball_geometry(s, std::max(n / 50, 500L), report);
  return report;
}

SuiteReport verify_star_power(std::uint64_t seed, long samples) {
  SuiteReport report{"star-power", {}};
  Sampler s(seed);
  const long pairs = samples > 0 ? samples : 10000;
  star_power_bound(s, pairs, report);
  star_power_limit(s, std::max(pairs / 10, 100L), report);
  star_power_consistency(s, std::max(pairs / 10, 100L), report);
  return report;
}

SuiteReport verify_binomial(std::uint64_t seed, long samples) {
  SuiteReport report{"binomial", {}};
  Sampler s(seed);
  binomial_identity(s, samples > 0 ? samples : 1000, report);
  return report;
}

SuiteReport verify_leibniz(std::uint64_t seed, long samples) {
  SuiteReport report{"leibniz", {}};
  Sampler s(seed);
  leibniz_rule(s, samples > 0 ? samples : 100, report);
  return report;
}

SuiteReport verify_representation(std::uint64_t seed, long samples) {
  SuiteReport report{"representation", {}};
  Sampler s(seed);
  representation_formula(s, samples > 0 ? samples : 1000, report);
  return report;
}

SuiteReport verify_reexpand(std::uint64_t seed, long samples) {
  SuiteReport report{"reexpand", {}};
  Sampler s(seed);
  reexpand_agreement(s, samples > 0 ? samples : 50, report);
  return report;
}

SuiteReport verify_dbar(std::uint64_t seed, long samples, double fd_step) {
  SuiteReport report{"dbar", {}};
  if (!(fd_step > 0.0)) {
    throw std::invalid_argument("verify_dbar: fd_step must be > 0");
  }
  Sampler s(seed);
  dbar_suite(s, samples > 0 ? std::min(samples, 200L) : 12, fd_step, report);
  return report;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "metric",  "star-power",     "binomial", "leibniz",
      "representation", "reexpand", "dbar"};
  return names;
}

std::vector<SuiteReport> run_suites(const std::string& which,
                                    std::uint64_t seed, long samples,
                                    double fd_step) {
  using Runner = SuiteReport (*)(std::uint64_t, long);
  static const std::pair<const char*, Runner> table[] = {
      {"metric", verify_metric},
      {"star-power", verify_star_power},
      {"binomial", verify_binomial},
      {"leibniz", verify_leibniz},
      {"representation", verify_representation},
      {"reexpand", verify_reexpand},
  };
  std::vector<SuiteReport> out;
  for (const auto& [name, runner] : table) {
    if (which == "all" || which == name) out.push_back(runner(seed, samples));
  }
  if (which == "all" || which == "dbar") {
    out.push_back(
        verify_dbar(seed, samples, fd_step > 0.0 ? fd_step : 1e-4));
  }
  if (out.empty()) {
    throw std::invalid_argument("unknown verify suite: " + which);
  }
  return out;
}

std::string format_reports(const std::vector<SuiteReport>& reports,
                           std::uint64_t seed, long samples) {
  std::string out = "# qseries verify  seed=" + std::to_string(seed) +
                    "  samples=" +
                    (samples > 0 ? std::to_string(samples) : "default") + "\n";
  int checked = 0;
  int failed = 0;
  char line[256];
  for (const SuiteReport& suite : reports) {
    for (const PropertyResult& r : suite.results) {
      std::snprintf(line, sizeof(line),
                    "[%-14s] %-52s max %13.6e  tol %13.6e  n %-8ld %s\n",
                    suite.suite.c_str(), r.name.c_str(), r.max_residual,
                    r.tolerance, r.samples, r.pass ? "PASS" : "FAIL");
      out += line;
      if (!r.pass) {
        out += "                 worst: " + r.worst_note + "\n";
        ++failed;
      }
      ++checked;
    }
  }
  out += "RESULT: ";
  out += failed == 0 ? "PASS" : "FAIL";
  out += " (" + std::to_string(checked - failed) + "/" +
         std::to_string(checked) + " properties)\n";
  return out;
}

}  // namespace qseries
