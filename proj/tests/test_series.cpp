#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "qseries/sampler.hpp"
#include "qseries/series.hpp"
#include "qseries/sigma.hpp"

using namespace qseries;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

RegularSeries geometric(int degree, double radius) {
  std::vector<Quaternion> ones(static_cast<std::size_t>(degree) + 1, kOne);
  return {Quaternion{}, std::move(ones), radius};
}

/// Term-by-term evaluation sum_n q^n c_n of a center-0 coefficient list;
/// independent of the slice-decomposition path used by evaluate().
Quaternion plain_horner(const std::vector<Quaternion>& coeffs,
                        const Quaternion& q) {
  Quaternion v{};
  for (std::size_t i = coeffs.size(); i-- > 0;) v = coeffs[i] + q * v;
  return v;
}

}  // namespace

TEST_CASE("star product convolution") {
  // (1 + q i) * (q j) = q j + q^2 k
  const RegularSeries f(Quaternion{}, {kOne, kUnitI});
  const RegularSeries g(Quaternion{}, {Quaternion{}, kUnitJ});
  const RegularSeries fg = star_multiply(f, g);
  REQUIRE(fg.degree() == 2);
  CHECK(fg.coeffs()[0] == Quaternion{});
  CHECK(fg.coeffs()[1] == kUnitJ);
  CHECK(fg.coeffs()[2] == kUnitK);

  // Multiplicative identity.
  const RegularSeries one(Quaternion{}, {kOne});
  const RegularSeries f1 = star_multiply(f, one);
  CHECK(f1.coeffs() == f.coeffs());

  // Non-commutativity: (q i) * (q j) = q^2 k, (q j) * (q i) = -q^2 k.
  const RegularSeries qi(Quaternion{}, {Quaternion{}, kUnitI});
  const RegularSeries qj(Quaternion{}, {Quaternion{}, kUnitJ});
  CHECK(star_multiply(qi, qj).coeffs()[2] == kUnitK);
  CHECK(star_multiply(qj, qi).coeffs()[2] == -kUnitK);

  // Centers must match exactly.
  const RegularSeries centered(kUnitI, {kOne});
  CHECK_THROWS_AS(star_multiply(f, centered), std::invalid_argument);
  CHECK_THROWS_AS(series_add(f, centered), std::invalid_argument);
}

TEST_CASE("star powers of the binomial") {
  const RegularSeries sq = star_power_series(kUnitI, 2);
  REQUIRE(sq.degree() == 2);
  CHECK(sq.coeffs()[0] == -kOne);            // p^2 = -1
  CHECK(sq.coeffs()[1] == kUnitI * -2.0);    // -2p
  CHECK(sq.coeffs()[2] == kOne);

  // Real center: plain signed binomial coefficients, exactly.
  const RegularSeries cube = star_power_series(Quaternion::real(0.5), 3);
  REQUIRE(cube.degree() == 3);
  CHECK(cube.coeffs()[0] == Quaternion::real(-0.125));
  CHECK(cube.coeffs()[1] == Quaternion::real(0.75));
  CHECK(cube.coeffs()[2] == Quaternion::real(-1.5));
  CHECK(cube.coeffs()[3] == Quaternion::real(1.0));

  CHECK(star_power_series(kUnitJ, 0).coeffs() ==
        std::vector<Quaternion>{kOne});
}

TEST_CASE("closed-form star power evaluation") {
  // (q - i)^{*2} at q = j: z = i, z - p = 0, zbar - p = -2i,
  // (1 + ji)/2 (-2i)^2 = (1 - k)/2 * (-4) = -2 + 2k.
  const Quaternion got = star_power_eval(kUnitI, 2, kUnitJ);
  CHECK((got - Quaternion{-2, 0, 0, 2}).norm() <= 1e-14);

  // Cross-check: evaluate q^2 - 2qi - 1 at q = j directly.
  const Quaternion direct = kUnitJ * kUnitJ - 2.0 * (kUnitJ * kUnitI) - kOne;
  CHECK((got - direct).norm() <= 1e-14);

  // Linear term is slice-independent.
  CHECK((star_power_eval(kUnitI, 1, kUnitJ) - (kUnitJ - kUnitI)).norm() <=
        1e-15);

  // Commuting case: real center.
  const Quaternion q{0.3, 0.1, -0.7, 0.2};
  const Quaternion base = q - Quaternion::real(0.4);
  CHECK((star_power_eval(Quaternion::real(0.4), 5, q) -
         base * base * base * base * base)
            .norm() <= 1e-13);
}

TEST_CASE("star-power closed form matches the convolution route") {
  Sampler s(31);
  for (int trial = 0; trial < 200; ++trial) {
    Quaternion p = s.mixed(2.0);
    Quaternion q = s.mixed(2.0);
    if (p.norm() > 2.0) p = p * (2.0 / p.norm());
    if (q.norm() > 2.0) q = q * (2.0 / q.norm());
    RegularSeries acc(Quaternion{}, {kOne}, kInf);
    const RegularSeries binom(Quaternion{}, {-p, kOne}, kInf);
    for (int n = 1; n <= 20; ++n) {
      acc = star_multiply(acc, binom);
      const Quaternion via_series = plain_horner(acc.coeffs(), q);
      const Quaternion closed = star_power_eval(p, n, q);
      double scale = 1.0;
      for (const Quaternion& c : acc.coeffs()) scale += c.norm();
      CHECK((via_series - closed).norm() <=
            1e-10 * scale * std::max(1.0, std::pow(q.norm(), n)));
    }
  }
}

TEST_CASE("star-power modulus bound") {
  Sampler s(32);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto [p, q] = s.pair_mixed(2.0);
    const double sg = sigma(q, p);
    double sg_n = 1.0;
    for (int n = 1; n <= 30; ++n) {
      sg_n *= sg;
      const double mag = star_power_eval(p, n, q).norm();
      CHECK(mag <= 2.0 * sg_n * (1.0 + 1e-12) + 1e-300);
    }
  }
}

TEST_CASE("binomial re-centering") {
  const RegularSeries b2 = binomial_expand(2, kUnitI);
  REQUIRE(b2.degree() == 2);
  CHECK(b2.coeffs()[0] == -kOne);
  CHECK(b2.coeffs()[1] == kUnitI * 2.0);
  CHECK(b2.coeffs()[2] == kOne);
  CHECK(b2.center() == kUnitI);

  // Evaluated at q = j it reproduces j^2 = -1.
  const Quaternion at_j = evaluate(b2, kUnitJ).value;
  CHECK((at_j - Quaternion::real(-1)).norm() <= 1e-14);

  CHECK(binomial_expand(0, kUnitJ).coeffs() == std::vector<Quaternion>{kOne});

  const RegularSeries real_case = binomial_expand(2, Quaternion::real(0.5));
  CHECK(real_case.coeffs()[0] == Quaternion::real(0.25));
  CHECK(real_case.coeffs()[1] == Quaternion::real(1.0));
  CHECK(real_case.coeffs()[2] == Quaternion::real(1.0));

  Sampler s(33);
  for (int trial = 0; trial < 300; ++trial) {
    const auto [p, q] = s.pair_mixed(0.75);
    const int m = s.index(7);
    const Quaternion direct = pow_int(q, static_cast<unsigned long>(m));
    const Quaternion via = evaluate(binomial_expand(m, p), q).value;
    CHECK((via - direct).norm() <=
          1e-9 * std::max(1.0, std::pow(q.norm(), m)));
  }
}

TEST_CASE("formal derivative") {
  const RegularSeries f = geometric(5, kInf);
  const RegularSeries d1 = formal_derivative(f);
  REQUIRE(d1.degree() == 4);
  for (int n = 0; n <= 4; ++n) {
    CHECK(d1.coeffs()[static_cast<std::size_t>(n)] ==
          Quaternion::real(n + 1.0));
  }
  const RegularSeries d2 = formal_derivative(d1);
  REQUIRE(d2.degree() == 3);
  CHECK(d2.coeffs()[0] == Quaternion::real(2));
  CHECK(d2.coeffs()[1] == Quaternion::real(6));
  CHECK(d2.coeffs()[2] == Quaternion::real(12));
  CHECK(d2.coeffs()[3] == Quaternion::real(20));

  const RegularSeries constant(Quaternion{}, {Quaternion{4, 1, 0, 0}});
  CHECK(formal_derivative(constant).coeffs().empty());
  CHECK(formal_derivative(formal_derivative(constant)).coeffs().empty());
}

TEST_CASE("Leibniz rule at coefficient level") {
  Sampler s(34);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Quaternion> fc(static_cast<std::size_t>(s.index(21)) + 1);
    std::vector<Quaternion> gc(static_cast<std::size_t>(s.index(21)) + 1);
    for (auto& c : fc) c = s.box(2.0);
    for (auto& c : gc) c = s.box(2.0);
    const RegularSeries f(Quaternion{}, fc);
    const RegularSeries g(Quaternion{}, gc);
    const RegularSeries lhs = formal_derivative(star_multiply(f, g));
    const RegularSeries rhs =
        series_add(star_multiply(formal_derivative(f), g),
                   star_multiply(f, formal_derivative(g)));
    const std::size_t width =
        std::max(lhs.coeffs().size(), rhs.coeffs().size());
    for (std::size_t n = 0; n < width; ++n) {
      const Quaternion l =
          n < lhs.coeffs().size() ? lhs.coeffs()[n] : Quaternion{};
      const Quaternion r =
          n < rhs.coeffs().size() ? rhs.coeffs()[n] : Quaternion{};
      CHECK((l - r).norm() <= 1e-12 * std::max({1.0, l.norm(), r.norm()}));
    }
  }
}

TEST_CASE("radius estimation") {
  CHECK(radius_estimate(geometric(60, 1.0), 20) == doctest::Approx(1.0));

  std::vector<Quaternion> doubling(41);
  for (std::size_t n = 0; n < doubling.size(); ++n) {
    doubling[n] = Quaternion::real(std::pow(2.0, static_cast<double>(n)));
  }
  CHECK(radius_estimate(RegularSeries(Quaternion{}, doubling), 20) ==
        doctest::Approx(0.5).epsilon(1e-12));

  const RegularSeries zero(Quaternion{}, std::vector<Quaternion>(41));
  CHECK(radius_estimate(zero, 20) == kInf);

  CHECK_THROWS_AS(radius_estimate(geometric(10, 1.0), 20),
                  std::invalid_argument);
  CHECK_THROWS_AS(radius_estimate(geometric(10, 1.0), 1),
                  std::invalid_argument);

  // Lacunary gap series sum q^(2^n) truncated at 2^10 terms.
  std::vector<Quaternion> lac(1025);
  for (int e = 1; e <= 1024; e *= 2) {
    lac[static_cast<std::size_t>(e)] = kOne;
  }
  CHECK(radius_estimate(RegularSeries(Quaternion{}, lac, 1.0), 20) ==
        doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("evaluation of the truncated geometric series") {
  const RegularSeries f = geometric(60, 1.0);

  SUBCASE("real point against the closed-form sum") {
    const EvalResult r = evaluate(f, Quaternion::real(0.5));
    CHECK((r.value - Quaternion::real(2.0)).norm() <= 1e-15);
    CHECK((r.value - Quaternion::real(2.0)).norm() <= r.tail_bound);
    // Fitted model: rho = 1, C = 2 -> 2*2*0.5^61/0.5 = 2^-58.
    CHECK(r.tail_bound == doctest::Approx(std::pow(2.0, -58)).epsilon(1e-12));
  }

  SUBCASE("slice point against (1 - q)^-1 in L_j") {
    const EvalResult r = evaluate(f, kUnitJ * 0.5);
    CHECK((r.value - Quaternion{0.8, 0, 0.4, 0}).norm() <= 1e-15);
  }

  SUBCASE("center evaluation is exact with zero tail") {
    const EvalResult r = evaluate(f, Quaternion{});
    CHECK(r.value == kOne);
    CHECK(r.tail_bound == 0.0);
  }

  SUBCASE("outside the declared radius the tail bound is infinite") {
    const EvalResult r = evaluate(f, Quaternion{0, 2, 0, 0});
    CHECK(r.tail_bound == kInf);
  }

  SUBCASE("no declared radius means no bound away from the center") {
    const RegularSeries bare(Quaternion{}, f.coeffs());
    CHECK(evaluate(bare, Quaternion::real(0.5)).tail_bound == kInf);
    CHECK(evaluate(bare, Quaternion{}).tail_bound == 0.0);
  }
}

// The tail bound's geometric envelope, fitted on the last nonzero
// coefficients with a 2x safety factor, must cover the true truncation tail
// for representative decay shapes. (No finite window can certify an
// arbitrary tail; adversarial sub-geometric decay evaluated within ~1e-6 of
// the declared radius can undershoot. At these points the margin is >= 3x.)
TEST_CASE("tail bound covers the true tail across coefficient families") {
  const int N = 60;
  const double r = 0.8;  // coefficient scale; sigma-radius of the family 1/r
  using CoeffFn = double (*)(int, double);
  const CoeffFn families[] = {
      [](int n, double rr) { return std::pow(rr, n); },
      [](int n, double rr) { return std::pow(-rr, n); },
      [](int n, double rr) { return (n + 1) * std::pow(rr, n); },
      [](int n, double rr) { return std::pow(rr, n) / (n + 1); },
      [](int n, double rr) { return std::pow(rr, n) / std::tgamma(n + 1.0); },
  };
  for (const CoeffFn a : families) {
    std::vector<Quaternion> c(static_cast<std::size_t>(N) + 1);
    for (int n = 0; n <= N; ++n) {
      c[static_cast<std::size_t>(n)] = Quaternion::real(a(n, r));
    }
    const RegularSeries f(Quaternion{}, c, 1.0 / r);
    for (const double x : {0.5, 0.9, 1.1, 1.2, 1.234}) {
      const EvalResult res = evaluate(f, Quaternion::real(x));
      double true_tail = 0.0;
      for (int n = N + 1; n < 40000; ++n) {
        const double t = std::abs(a(n, r)) * std::pow(x, n);
        true_tail += t;
        if (t < 1e-300) break;
      }
      CHECK(res.tail_bound >= true_tail);
    }
  }
}

TEST_CASE("evaluation off the center slice") {
  Sampler s(35);
  std::vector<Quaternion> coeffs(11);
  for (auto& c : coeffs) c = s.ball(1.0);
  const RegularSeries f(kUnitI, coeffs);  // centered at i

  for (int trial = 0; trial < 100; ++trial) {
    const Quaternion q = s.mixed(1.5);
    const Quaternion got = evaluate(f, q).value;
    // Independent route: expand each (q - p)^{*n} as a center-0 polynomial
    // and accumulate term by term.
    Quaternion want{};
    for (int n = 0; n <= f.degree(); ++n) {
      const RegularSeries pw = star_power_series(kUnitI, n);
      want = want + plain_horner(pw.coeffs(), q) *
                        f.coeffs()[static_cast<std::size_t>(n)];
    }
    CHECK((got - want).norm() <= 1e-10 * std::max(1.0, want.norm()));
  }
}

TEST_CASE("empty and degenerate series") {
  const RegularSeries empty(Quaternion{}, {});
  CHECK(empty.degree() == -1);
  CHECK(evaluate(empty, Quaternion::real(0.3)).value == Quaternion{});
  CHECK(star_multiply(empty, geometric(3, kInf)).coeffs().empty());

  CHECK_THROWS_AS(
      RegularSeries(Quaternion{}, std::vector<Quaternion>(70000)),
      std::invalid_argument);
  CHECK_THROWS_AS(RegularSeries(Quaternion{}, {kOne}, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(evaluate(geometric(3, kInf), kOne, 0),
                  std::invalid_argument);
}

TEST_CASE("re-expansion of the geometric series at a real center") {
  const RegularSeries f = geometric(60, 1.0);
  const RegularSeries g = reexpand(f, Quaternion::real(0.5), 60);

  REQUIRE(g.degree() == 60);
  CHECK(g.center() == Quaternion::real(0.5));
  REQUIRE(g.declared_radius().has_value());
  CHECK(*g.declared_radius() == doctest::Approx(0.5));

  // Clean leading coefficients match (1 - p)^-(n+1) = 2^(n+1).
  for (int n = 0; n <= 6; ++n) {
    const double expect = std::pow(2.0, n + 1);
    CHECK(g.coeffs()[static_cast<std::size_t>(n)].w ==
          doctest::Approx(expect).epsilon(1e-9));
    CHECK(g.coeffs()[static_cast<std::size_t>(n)].imag_norm() <=
          1e-9 * expect);
  }

  // Both expansions agree at q = 0.7 and match 1/(1 - 0.7).
  const Quaternion q = Quaternion::real(0.7);
  const EvalResult fv = evaluate(f, q);
  const EvalResult gv = evaluate(g, q);
  CHECK((fv.value - gv.value).norm() <= 1e-12);
  CHECK((fv.value - Quaternion::real(10.0 / 3.0)).norm() <= 3e-9);
}

TEST_CASE("re-expansion reproduces the binomial expansion of q^2") {
  const RegularSeries q2(Quaternion{}, {Quaternion{}, Quaternion{}, kOne});
  const RegularSeries g = reexpand(q2, kUnitI, 2);
  const RegularSeries want = binomial_expand(2, kUnitI);
  REQUIRE(g.degree() == 2);
  for (std::size_t n = 0; n < 3; ++n) {
    CHECK((g.coeffs()[n] - want.coeffs()[n]).norm() <= 1e-15);
  }
}

// Fused power-times-binomial recurrences: neither factor may blow up alone
// (p^m can underflow to 0 while C(m+k, k) overflows, which would breed NaNs
// if they were formed separately).
TEST_CASE("high-order expansions stay finite") {
  const RegularSeries big = binomial_expand(1500, Quaternion::real(0.5));
  REQUIRE(big.degree() == 1500);
  for (const Quaternion& c : big.coeffs()) {
    CHECK(std::isfinite(c.norm()));
  }
  CHECK(big.coeffs()[1500] == kOne);
  CHECK(big.coeffs()[1499] == Quaternion::real(750.0));

  std::vector<Quaternion> ones(301, kOne);
  const RegularSeries f(Quaternion{}, ones, 1.0);
  const RegularSeries g = reexpand(f, kUnitI * 0.5, 300);
  for (const Quaternion& c : g.coeffs()) {
    CHECK(std::isfinite(c.norm()));
  }
}

TEST_CASE("re-expansion at zero is the identity") {
  const RegularSeries f = geometric(20, 1.0);
  const RegularSeries g = reexpand(f, Quaternion{}, 20);
  CHECK(g.coeffs() == f.coeffs());
}

TEST_CASE("re-expansion preconditions") {
  const RegularSeries f = geometric(20, 1.0);
  const RegularSeries off_center(kUnitI, f.coeffs(), 1.0);
  CHECK_THROWS_AS(reexpand(off_center, Quaternion{}, 5),
                  std::invalid_argument);
  CHECK_THROWS_AS(reexpand(f, Quaternion::real(1.5), 5),
                  std::invalid_argument);
  CHECK_THROWS_AS(reexpand(f, Quaternion::real(0.5), 21),
                  std::invalid_argument);
  CHECK_THROWS_AS(reexpand(f, Quaternion::real(0.5), -1),
                  std::invalid_argument);
}

TEST_CASE("evaluation agrees across re-expansion inside the sigma ball") {
  Sampler s(36);
  const RegularSeries f = geometric(60, 1.0);
  const Quaternion p = s.ball(0.5);
  const RegularSeries g = reexpand(f, p, 60);
  const auto I = imaginary_unit_of(p);
  const double rr = 0.9 * (1.0 - p.norm());
  for (int trial = 0; trial < 200; ++trial) {
    // Points on the slice disc of p cover the sigma ball for any center.
    const ImaginaryUnit unit = I ? *I : s.unit_imaginary();
    const double rad = rr * std::sqrt(s.unit());
    const double phi = s.uniform(0.0, 6.283185307179586);
    const Quaternion q =
        p + unit.embed(rad * std::cos(phi), rad * std::sin(phi));
    const EvalResult fv = evaluate(f, q);
    const EvalResult gv = evaluate(g, q);
    CHECK((fv.value - gv.value).norm() <=
          fv.tail_bound + gv.tail_bound + 1e-10 * (1.0 + fv.value.norm()));
  }
}
