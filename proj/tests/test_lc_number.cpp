#include <cmath>
#include <numbers>
#include <vector>

#include "cauchy/lc_number.hpp"
#include "doctest.h"
#include "test_helpers.hpp"

using namespace cauchy;
using cauchy::testing::random_dyadic;
using cauchy::testing::random_tame;

namespace {
const TruncationContext kCtx{};

LCNumber lc(const char* text) { return parse_lc(text); }
}  // namespace

TEST_CASE("from_real embeds constants") {
  const LCNumber three = from_real(3.0);
  REQUIRE(three.terms().size() == 1);
  CHECK(three.coefficient(Rational(0)) == 3.0);

  CHECK(from_real(0.0).is_zero());
  CHECK(from_real(-2.5).coefficient(Rational(0)) == -2.5);

  CHECK_THROWS_AS(from_real(std::numeric_limits<double>::infinity()), DomainError);
  CHECK_THROWS_AS(from_real(std::nan("")), DomainError);
}

TEST_CASE("epsilon is a positive infinitesimal below every positive real") {
  const LCNumber e = epsilon();
  CHECK(e == lc("eps"));
  CHECK(is_infinitesimal(e));
  CHECK(lc_compare(e, from_real(0.0)) == std::strong_ordering::greater);
  CHECK(lc_compare(e, from_real(1e-300)) == std::strong_ordering::less);
}

TEST_CASE("ring arithmetic on small series") {
  const LCNumber e = epsilon();
  const LCNumber one = from_real(1.0);

  CHECK(mul(add(one, e, kCtx), sub(one, e, kCtx), kCtx) == lc("1 - eps^2"));
  CHECK(add(e, neg(e), kCtx).is_zero());

  const LCNumber half = lc("eps^1/2");
  CHECK(mul(half, half, kCtx) == e);
}

TEST_CASE("inverse expands the geometric series") {
  CHECK(inverse(epsilon(), kCtx) == lc("eps^-1"));

  const LCNumber inv = inverse(lc("1 + eps"), kCtx);
  // 1/(1+eps) = 1 - eps + eps^2 - ... out to the window
  for (std::int64_t k = 0; k <= 8; ++k)
    CHECK(inv.coefficient(Rational(k)) == ((k % 2) ? -1.0 : 1.0));
  CHECK(inv.coefficient(Rational(9)) == 0.0);

  CHECK(standard_part(mul(lc("2 + eps"), inverse(lc("2 + eps"), kCtx), kCtx)) == 1.0);
  CHECK_THROWS_AS(inverse(LCNumber{}, kCtx), DomainError);
}

TEST_CASE("square roots including fractional exponents") {
  CHECK(lc_sqrt(lc("eps^2"), kCtx) == epsilon());
  CHECK(lc_sqrt(epsilon(), kCtx) == lc("eps^1/2"));

  // Binomial oracle: sqrt(4(1+eps)) = 2 * sum binom(1/2,k) eps^k.
  const LCNumber r = lc_sqrt(lc("4 + 4*eps"), kCtx);
  double binom = 1.0;
  for (int k = 0; k <= 8; ++k) {
    if (k > 0) binom *= (0.5 - (k - 1)) / k;
    CHECK(r.coefficient(Rational(k)) == doctest::Approx(2.0 * binom).epsilon(1e-14));
  }
  CHECK(r.coefficient(Rational(1)) == doctest::Approx(1.0));
  CHECK(r.coefficient(Rational(2)) == doctest::Approx(-0.25));

  CHECK_THROWS_AS(lc_sqrt(lc("-1 + eps"), kCtx), DomainError);
  CHECK_THROWS_AS(lc_sqrt(LCNumber{}, kCtx), DomainError);
}

TEST_CASE("analytic lifts compose Taylor series with the infinitesimal part") {
  const LCNumber s = lift_analytic(AnalyticFn::Sin, epsilon(), kCtx);
  CHECK(s.coefficient(Rational(1)) == 1.0);
  CHECK(s.coefficient(Rational(3)) == doctest::Approx(-1.0 / 6.0));
  CHECK(s.coefficient(Rational(5)) == doctest::Approx(1.0 / 120.0));
  CHECK(s.coefficient(Rational(2)) == 0.0);

  CHECK(standard_part(lift_analytic(AnalyticFn::Exp, lc("1 + eps"), kCtx)) ==
        doctest::Approx(std::numbers::e).epsilon(1e-15));

  // cos(pi/2 + eps): Taylor about pi/2 gives -eps + eps^3/6 - ... so that
  // sin(pi/2 +- eps) stays infinitely close to 1.
  const double x0 = std::numbers::pi / 2;
  const LCNumber c =
      lift_analytic(AnalyticFn::Cos, add(from_real(x0), epsilon(), kCtx), kCtx);
  const double oracle[5] = {std::cos(x0), -std::sin(x0), -std::cos(x0) / 2,
                            std::sin(x0) / 6, std::cos(x0) / 24};
  for (int k = 0; k < 5; ++k)
    CHECK(c.coefficient(Rational(k)) == doctest::Approx(oracle[k]).epsilon(1e-14));

  const LCNumber sin_lift =
      lift_analytic(AnalyticFn::Sin, add(from_real(x0), epsilon(), kCtx), kCtx);
  CHECK(infinitely_close(sin_lift, from_real(1.0)));

  CHECK_THROWS_AS(lift_analytic(AnalyticFn::Exp, lc("eps^-1"), kCtx), InfiniteNumberError);
  CHECK_THROWS_AS(lift_analytic(AnalyticFn::Log, lc("eps"), kCtx), DomainError);
  CHECK_THROWS_AS(lift_analytic(AnalyticFn::Log, lc("-1 + eps"), kCtx), DomainError);
}

TEST_CASE("comparison prefers leading terms") {
  CHECK(lc_compare(epsilon(), LCNumber{}) == std::strong_ordering::greater);
  CHECK(lc_compare(lc("1 - eps"), from_real(1.0)) == std::strong_ordering::less);
  CHECK(lc_compare(lc("eps^-1"), from_real(1e100)) == std::strong_ordering::greater);
}

TEST_CASE("standard part is partial on infinite numbers") {
  CHECK(standard_part(lc("3 + 5*eps - eps^2")) == 3.0);
  CHECK(standard_part(epsilon()) == 0.0);
  CHECK(standard_part(LCNumber{}) == 0.0);
  CHECK_THROWS_AS(standard_part(lc("eps^-1")), InfiniteNumberError);
}

TEST_CASE("finiteness predicates and infinite proximity") {
  CHECK(infinitely_close(lc("1 + eps"), from_real(1.0)));
  CHECK(infinitely_close(epsilon(), lc("eps^2")));
  CHECK(is_infinite(inverse(epsilon(), kCtx)));
  CHECK(is_finite(lc("2 + eps")));
  CHECK(!is_finite(lc("eps^-1/2")));
  CHECK(is_infinitesimal(LCNumber{}));
}

TEST_CASE("rendering round-trips through the parser") {
  CHECK(to_string(LCNumber{}) == "0");
  CHECK(to_string(from_real(3.0)) == "3");
  CHECK(to_string(lc("2 + 1*eps^1/2 - 0.25*eps^2")) == "2 + 1*eps^1/2 - 0.25*eps^2");
  CHECK(parse_lc("-eps^-3/2 + 2.5e-3*eps") ==
        LCNumber::from_terms({{Rational(-3, 2), -1.0}, {Rational(1), 2.5e-3}}));

  CHECK_THROWS_AS(parse_lc(""), DomainError);
  CHECK_THROWS_AS(parse_lc("2 +* 3"), DomainError);
  CHECK_THROWS_AS(parse_lc("foo"), DomainError);

  SplitMix64 rng(0x5eed);
  for (int i = 0; i < 200; ++i) {
    const LCNumber a = random_dyadic(rng);
    CHECK(parse_lc(to_string(a)) == a);
  }
}

TEST_CASE("series helpers differentiate and integrate termwise") {
  const LCNumber jet = lc("1 + 2*eps + 3*eps^2");
  CHECK(series_derivative(jet) == lc("2 + 6*eps"));
  CHECK(series_antiderivative(jet) == lc("eps + 1*eps^2 + 1*eps^3"));
  CHECK_THROWS_AS(series_antiderivative(lc("eps^-1")), DomainError);
  CHECK(strip_standard_term(jet) == lc("2*eps + 3*eps^2"));
  CHECK(scale_div(lc("2 + 4*eps"), 2.0) == lc("1 + 2*eps"));
  CHECK(shift_exponents(epsilon(), Rational(-1)) == from_real(1.0));
}

// --- property suite -----------------------------------------------------------

TEST_CASE("field laws hold exactly on dyadic samples") {
  SplitMix64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    const LCNumber a = random_dyadic(rng);
    const LCNumber b = random_dyadic(rng);
    const LCNumber c = random_dyadic(rng);

    CHECK(add(add(a, b, kCtx), c, kCtx) == add(a, add(b, c, kCtx), kCtx));
    CHECK(add(a, b, kCtx) == add(b, a, kCtx));
    CHECK(mul(a, b, kCtx) == mul(b, a, kCtx));

    const LCNumber lhs = mul(a, add(b, c, kCtx), kCtx);
    const LCNumber rhs = add(mul(a, b, kCtx), mul(a, c, kCtx), kCtx);
    const LCNumber diff = sub_exact(lhs, rhs);
    for (const auto& t : diff.terms()) {
      const double ref = std::fabs(lhs.coefficient(t.exponent));
      CHECK(std::fabs(t.coefficient) <= 1e-12 * (1.0 + ref));
    }
  }
}

TEST_CASE("multiplicative inverses cancel within the window") {
  SplitMix64 rng(2);
  const TruncationContext ctx{64, Rational(8)};
  for (int i = 0; i < 1000; ++i) {
    const LCNumber a = random_tame(rng);
    const LCNumber prod = mul(a, inverse(a, ctx), ctx);
    CHECK(std::fabs(prod.coefficient(Rational(0)) - 1.0) <= 1e-12);
    for (const auto& t : prod.terms()) {
      if (t.exponent == Rational(0)) continue;
      if (t.exponent < ctx.exponent_window) CHECK(std::fabs(t.coefficient) <= 1e-12);
    }
  }
}

TEST_CASE("standard part is a ring homomorphism on finite numbers") {
  SplitMix64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const LCNumber a = random_dyadic(rng, 4, /*finite_only=*/true);
    const LCNumber b = random_dyadic(rng, 4, /*finite_only=*/true);
    CHECK(standard_part(add(a, b, kCtx)) == standard_part(a) + standard_part(b));
    const double sa = standard_part(a), sb = standard_part(b);
    CHECK(std::fabs(standard_part(mul(a, b, kCtx)) - sa * sb) <=
          1e-12 * (1.0 + std::fabs(sa * sb)));
  }
}

TEST_CASE("infinite proximity is an equivalence on finite numbers") {
  SplitMix64 rng(4);
  for (int i = 0; i < 1000; ++i) {
    const LCNumber a = random_dyadic(rng, 4, true);
    const LCNumber b = random_dyadic(rng, 4, true);
    const LCNumber c = random_dyadic(rng, 4, true);

    CHECK(infinitely_close(a, a));
    CHECK(infinitely_close(a, b) == infinitely_close(b, a));
    if (infinitely_close(a, b) && infinitely_close(b, c)) CHECK(infinitely_close(a, c));

    // Sanity: proximity is equivalent to equal standard parts here.
    CHECK(infinitely_close(a, b) == (standard_part(a) == standard_part(b)));
  }
}

TEST_CASE("order is compatible with multiplication by positives") {
  SplitMix64 rng(5);
  for (int i = 0; i < 1000; ++i) {
    const LCNumber a = random_dyadic(rng);
    const LCNumber b = random_dyadic(rng);
    LCNumber c = random_dyadic(rng);
    if (c.is_zero()) c = epsilon();
    c = lc_abs(c);
    if (lc_compare(a, b) == std::strong_ordering::less)
      CHECK(lc_compare(mul(a, c, kCtx), mul(b, c, kCtx)) == std::strong_ordering::less);
  }
}

TEST_CASE("analytic lifts commute with the standard part") {
  SplitMix64 rng(6);
  const AnalyticFn fns[] = {AnalyticFn::Sin, AnalyticFn::Cos, AnalyticFn::Tan,
                            AnalyticFn::Exp, AnalyticFn::Log, AnalyticFn::Atan};
  for (int i = 0; i < 1000; ++i) {
    // Standard parts kept in (0.1, 1.4): inside log's domain, away from
    // tan's pole.
    const double x0 = 0.1 + 1.3 * rng.next_unit();
    const double u = (rng.next_unit() - 0.5) / 4.0;
    const LCNumber a = add_exact(
        from_real(x0),
        LCNumber::from_terms({{Rational(1 + static_cast<std::int64_t>(rng.next_below(3))), u}}));
    for (const AnalyticFn f : fns) {
      const double lifted = standard_part(lift_analytic(f, a, kCtx));
      double direct = 0.0;
      switch (f) {
        case AnalyticFn::Sin: direct = std::sin(x0); break;
        case AnalyticFn::Cos: direct = std::cos(x0); break;
        case AnalyticFn::Tan: direct = std::tan(x0); break;
        case AnalyticFn::Exp: direct = std::exp(x0); break;
        case AnalyticFn::Log: direct = std::log(x0); break;
        case AnalyticFn::Atan: direct = std::atan(x0); break;
      }
      CHECK(std::fabs(lifted - direct) <= 1e-12 * (1.0 + std::fabs(direct)));
    }
  }
}

TEST_CASE("a larger window never changes retained coefficients") {
  SplitMix64 rng(7);
  const TruncationContext narrow{64, Rational(5)};
  const TruncationContext wide{64, Rational(11)};
  for (int i = 0; i < 400; ++i) {
    LCNumber a = random_tame(rng);
    const LCNumber inv_n = inverse(a, narrow);
    const LCNumber inv_w = inverse(a, wide);
    const Rational cutoff = inv_n.leading_exponent() + narrow.exponent_window;
    for (const auto& t : inv_n.terms()) {
      if (t.exponent > cutoff) continue;
      CHECK(inv_w.coefficient(t.exponent) == t.coefficient);
    }

    const LCNumber pos = lc_abs(a);
    const LCNumber sq_n = lc_sqrt(pos, narrow);
    const LCNumber sq_w = lc_sqrt(pos, wide);
    const Rational cut2 = sq_n.leading_exponent() + narrow.exponent_window;
    for (const auto& t : sq_n.terms()) {
      if (t.exponent > cut2) continue;
      CHECK(sq_w.coefficient(t.exponent) == t.coefficient);
    }
  }
}
