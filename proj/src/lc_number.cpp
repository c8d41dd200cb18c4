#include "cauchy/lc_number.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>

namespace cauchy {

namespace {

using Term = LCNumber::Term;

std::vector<Term> truncated(std::vector<Term> terms, const TruncationContext& ctx) {
  if (terms.empty()) return terms;
  const Rational cutoff = terms.front().exponent + ctx.exponent_window;
  while (!terms.empty() && terms.back().exponent > cutoff) terms.pop_back();
  if (static_cast<int>(terms.size()) > ctx.term_budget)
    terms.resize(static_cast<std::size_t>(ctx.term_budget));
  return terms;
}

std::vector<Term> merge_terms(std::span<const Term> a, std::span<const Term> b) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].exponent < b[j].exponent) {
      out.push_back(a[i++]);
    } else if (b[j].exponent < a[i].exponent) {
      out.push_back(b[j++]);
    } else {
      const double c = a[i].coefficient + b[j].coefficient;
      if (c != 0.0) out.push_back({a[i].exponent, c});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.push_back(b[j]);
  return out;
}

LCNumber from_sorted(std::vector<Term> terms) {
  return LCNumber::from_terms(std::move(terms));
}

// a = c * eps^q * (1 + u). The remainder u is formed by coefficient division,
// so its would-be constant term is exactly c/c - 1 = 0 and u is structurally
// infinitesimal.
struct Decomposition {
  double lead_coef;
  Rational lead_exp;
  LCNumber u;
};

Decomposition decompose(const LCNumber& a) {
  Decomposition d;
  d.lead_coef = a.leading_coefficient();
  d.lead_exp = a.leading_exponent();
  std::vector<Term> rest;
  const auto terms = a.terms();
  rest.reserve(terms.size() - 1);
  for (std::size_t i = 1; i < terms.size(); ++i)
    rest.push_back({terms[i].exponent - d.lead_exp, terms[i].coefficient / d.lead_coef});
  d.u = from_sorted(std::move(rest));
  return d;
}

// Largest power k with k * delta <= window; series in an infinitesimal u of
// leading exponent delta need no terms beyond it.
int series_order(const Rational& delta, const TruncationContext& ctx) {
  const __int128 num =
      static_cast<__int128>(ctx.exponent_window.num) * delta.den;
  const __int128 den =
      static_cast<__int128>(ctx.exponent_window.den) * delta.num;
  if (den <= 0) return 0;
  __int128 k = num / den;
  if (k < 0) k = 0;
  if (k > 256) k = 256;
  return static_cast<int>(k);
}

// sum_k coefs[k] * u^k with u infinitesimal.
LCNumber power_series(std::span<const double> coefs, const LCNumber& u,
                      const TruncationContext& ctx) {
  LCNumber acc = from_real(coefs[0]);
  LCNumber p = from_real(1.0);
  for (std::size_t k = 1; k < coefs.size(); ++k) {
    p = mul(p, u, ctx);
    if (p.is_zero()) break;
    if (coefs[k] != 0.0) acc = add(acc, scale(p, coefs[k]), ctx);
  }
  return acc;
}

// Taylor coefficients of f about x0: c[k] = f^(k)(x0) / k!.
std::vector<double> taylor_about(AnalyticFn f, double x0, int order) {
  std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
  switch (f) {
    case AnalyticFn::Sin:
    case AnalyticFn::Cos: {
      const double s = std::sin(x0), co = std::cos(x0);
      const double cycle_sin[4] = {s, co, -s, -co};
      const double* cycle = cycle_sin;
      double cycle_cos[4] = {co, -s, -co, s};
      if (f == AnalyticFn::Cos) cycle = cycle_cos;
      double fact = 1.0;
      for (int k = 0; k <= order; ++k) {
        if (k > 0) fact *= k;
        c[static_cast<std::size_t>(k)] = cycle[k % 4] / fact;
      }
      break;
    }
    case AnalyticFn::Exp: {
      const double e0 = std::exp(x0);
      double fact = 1.0;
      for (int k = 0; k <= order; ++k) {
        if (k > 0) fact *= k;
        c[static_cast<std::size_t>(k)] = e0 / fact;
      }
      break;
    }
    case AnalyticFn::Log: {
      if (x0 <= 0.0) throw DomainError("log: standard part must be positive");
      c[0] = std::log(x0);
      double p = 1.0;
      for (int k = 1; k <= order; ++k) {
        p *= x0;
        c[static_cast<std::size_t>(k)] = ((k % 2) ? 1.0 : -1.0) / (k * p);
      }
      break;
    }
    case AnalyticFn::Atan: {
      // Integrate the series of 1/(1 + (x0+t)^2) termwise.
      const double d0 = 1.0 + x0 * x0, d1 = 2.0 * x0, d2 = 1.0;
      std::vector<double> g(static_cast<std::size_t>(std::max(order, 1)), 0.0);
      g[0] = 1.0 / d0;
      if (g.size() > 1) g[1] = -d1 * g[0] / d0;
      for (std::size_t k = 2; k < g.size(); ++k)
        g[k] = -(d1 * g[k - 1] + d2 * g[k - 2]) / d0;
      c[0] = std::atan(x0);
      for (int k = 1; k <= order; ++k)
        c[static_cast<std::size_t>(k)] = g[static_cast<std::size_t>(k) - 1] / k;
      break;
    }
    case AnalyticFn::Tan: {
      // T' = 1 + T^2 gives (k+1) c[k+1] = [t^k](1 + T^2).
      c[0] = std::tan(x0);
      for (int k = 0; k < order; ++k) {
        double conv = (k == 0) ? 1.0 : 0.0;
        for (int i = 0; i <= k; ++i)
          conv += c[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(k - i)];
        c[static_cast<std::size_t>(k) + 1] = conv / (k + 1);
      }
      break;
    }
  }
  return c;
}

}  // namespace

LCNumber LCNumber::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (const Term& t : terms) {
    if (!out.empty() && out.back().exponent == t.exponent) {
      out.back().coefficient += t.coefficient;
      if (out.back().coefficient == 0.0) out.pop_back();
    } else if (t.coefficient != 0.0) {
      out.push_back(t);
    }
  }
  LCNumber n;
  n.terms_ = std::move(out);
  return n;
}

double LCNumber::coefficient(const Rational& q) const {
  for (const Term& t : terms_) {
    if (t.exponent == q) return t.coefficient;
    if (t.exponent > q) break;
  }
  return 0.0;
}

bool operator==(const LCNumber& a, const LCNumber& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].exponent == b.terms_[i].exponent)) return false;
    if (a.terms_[i].coefficient != b.terms_[i].coefficient) return false;
  }
  return true;
}

LCNumber from_real(double r) {
  if (!std::isfinite(r)) throw DomainError("from_real: non-finite value");
  if (r == 0.0) return LCNumber{};
  return LCNumber::from_terms({{Rational(0), r}});
}

LCNumber epsilon() { return LCNumber::from_terms({{Rational(1), 1.0}}); }

LCNumber neg(const LCNumber& a) {
  std::vector<Term> t(a.terms().begin(), a.terms().end());
  for (Term& term : t) term.coefficient = -term.coefficient;
  return LCNumber::from_terms(std::move(t));
}

LCNumber add(const LCNumber& a, const LCNumber& b, const TruncationContext& ctx) {
  return LCNumber::from_terms(truncated(merge_terms(a.terms(), b.terms()), ctx));
}

LCNumber sub(const LCNumber& a, const LCNumber& b, const TruncationContext& ctx) {
  return add(a, neg(b), ctx);
}

LCNumber add_exact(const LCNumber& a, const LCNumber& b) {
  return LCNumber::from_terms(merge_terms(a.terms(), b.terms()));
}

LCNumber sub_exact(const LCNumber& a, const LCNumber& b) { return add_exact(a, neg(b)); }

LCNumber mul(const LCNumber& a, const LCNumber& b, const TruncationContext& ctx) {
  if (a.is_zero() || b.is_zero()) return LCNumber{};
  std::map<Rational, double> acc;
  for (const Term& x : a.terms())
    for (const Term& y : b.terms()) acc[x.exponent + y.exponent] += x.coefficient * y.coefficient;
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (const auto& [q, c] : acc)
    if (c != 0.0) terms.push_back({q, c});
  return LCNumber::from_terms(truncated(std::move(terms), ctx));
}

LCNumber inverse(const LCNumber& a, const TruncationContext& ctx) {
  ctx.validate();
  if (a.is_zero()) throw DomainError("inverse: division by zero");
  const Decomposition d = decompose(a);
  const int order = d.u.is_zero() ? 0 : series_order(d.u.leading_exponent(), ctx);
  std::vector<double> coefs(static_cast<std::size_t>(order) + 1);
  for (int k = 0; k <= order; ++k) coefs[static_cast<std::size_t>(k)] = (k % 2) ? -1.0 : 1.0;
  const LCNumber s = power_series(coefs, d.u, ctx);
  return shift_exponents(scale_div(s, d.lead_coef), -d.lead_exp);
}

LCNumber lc_pow(const LCNumber& a, const Rational& q, const TruncationContext& ctx) {
  ctx.validate();
  if (q.num == 0) return from_real(1.0);
  if (a.is_zero()) {
    if (q.num < 0) throw DomainError("pow: zero raised to a negative power");
    return LCNumber{};
  }
  if (q.is_integer()) {
    const bool negative = q.num < 0;
    unsigned long long m = negative ? -static_cast<unsigned long long>(q.num)
                                    : static_cast<unsigned long long>(q.num);
    LCNumber base = negative ? inverse(a, ctx) : a;
    LCNumber result = from_real(1.0);
    while (m != 0) {
      if (m & 1ull) result = mul(result, base, ctx);
      m >>= 1;
      if (m != 0) base = mul(base, base, ctx);
    }
    return result;
  }
  const Decomposition d = decompose(a);
  if (d.lead_coef < 0.0)
    throw DomainError("pow: fractional power needs a positive leading coefficient");
  const int order = d.u.is_zero() ? 0 : series_order(d.u.leading_exponent(), ctx);
  std::vector<double> coefs(static_cast<std::size_t>(order) + 1);
  coefs[0] = 1.0;
  const double qd = q.to_double();
  for (int k = 1; k <= order; ++k)
    coefs[static_cast<std::size_t>(k)] =
        coefs[static_cast<std::size_t>(k) - 1] * (qd - (k - 1)) / k;
  const LCNumber s = power_series(coefs, d.u, ctx);
  return shift_exponents(scale(s, pow_rational(d.lead_coef, q)), d.lead_exp * q);
}

LCNumber lc_sqrt(const LCNumber& a, const TruncationContext& ctx) {
  if (a.is_zero()) throw DomainError("sqrt: argument is zero");
  if (a.leading_coefficient() <= 0.0)
    throw DomainError("sqrt: leading coefficient must be positive");
  return lc_pow(a, Rational(1, 2), ctx);
}

LCNumber lift_analytic(AnalyticFn f, const LCNumber& a, const TruncationContext& ctx) {
  ctx.validate();
  if (!is_finite(a)) throw InfiniteNumberError("analytic lift of an infinite number");
  const double a0 = a.is_zero() ? 0.0 : a.coefficient(Rational(0));
  const LCNumber da = strip_standard_term(a);
  const int order = da.is_zero() ? 0 : series_order(da.leading_exponent(), ctx);
  const std::vector<double> coefs = taylor_about(f, a0, order);
  return power_series(coefs, da, ctx);
}

LCNumber lc_abs(const LCNumber& a) {
  if (a.is_zero()) return a;
  return a.leading_coefficient() < 0.0 ? neg(a) : a;
}

std::strong_ordering lc_compare(const LCNumber& a, const LCNumber& b) {
  const LCNumber d = sub_exact(a, b);
  if (d.is_zero()) return std::strong_ordering::equal;
  return d.leading_coefficient() > 0.0 ? std::strong_ordering::greater
                                       : std::strong_ordering::less;
}

double standard_part(const LCNumber& a) {
  if (a.is_zero()) return 0.0;
  if (a.leading_exponent() < Rational(0))
    throw InfiniteNumberError("standard part of an infinite number");
  return a.coefficient(Rational(0));
}

bool is_infinitesimal(const LCNumber& a) {
  return a.is_zero() || a.leading_exponent() > Rational(0);
}

bool is_finite(const LCNumber& a) {
  return a.is_zero() || a.leading_exponent() >= Rational(0);
}

bool is_infinite(const LCNumber& a) { return !is_finite(a); }

bool infinitely_close(const LCNumber& a, const LCNumber& b) {
  return is_infinitesimal(sub_exact(a, b));
}

LCNumber scale(const LCNumber& a, double factor) {
  if (!std::isfinite(factor)) throw DomainError("scale: non-finite factor");
  std::vector<Term> t(a.terms().begin(), a.terms().end());
  for (Term& term : t) term.coefficient *= factor;
  return LCNumber::from_terms(std::move(t));
}

LCNumber scale_div(const LCNumber& a, double divisor) {
  if (divisor == 0.0 || !std::isfinite(divisor)) throw DomainError("scale_div: bad divisor");
  std::vector<Term> t(a.terms().begin(), a.terms().end());
  for (Term& term : t) term.coefficient /= divisor;
  return LCNumber::from_terms(std::move(t));
}

LCNumber shift_exponents(const LCNumber& a, const Rational& q) {
  std::vector<Term> t(a.terms().begin(), a.terms().end());
  for (Term& term : t) term.exponent = term.exponent + q;
  return LCNumber::from_terms(std::move(t));
}

LCNumber strip_standard_term(const LCNumber& a) {
  std::vector<Term> t;
  t.reserve(a.terms().size());
  for (const Term& term : a.terms())
    if (!(term.exponent == Rational(0))) t.push_back(term);
  return LCNumber::from_terms(std::move(t));
}

LCNumber series_derivative(const LCNumber& a) {
  std::vector<Term> t;
  t.reserve(a.terms().size());
  for (const Term& term : a.terms()) {
    if (term.exponent == Rational(0)) continue;
    t.push_back({term.exponent - Rational(1), term.coefficient * term.exponent.to_double()});
  }
  return LCNumber::from_terms(std::move(t));
}

LCNumber series_antiderivative(const LCNumber& a) {
  std::vector<Term> t;
  t.reserve(a.terms().size());
  for (const Term& term : a.terms()) {
    if (term.exponent == Rational(-1))
      throw DomainError("series_antiderivative: exponent -1 has no series antiderivative");
    const Rational q = term.exponent + Rational(1);
    t.push_back({q, term.coefficient / q.to_double()});
  }
  return LCNumber::from_terms(std::move(t));
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string to_string(const LCNumber& a) {
  if (a.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : a.terms()) {
    double c = t.coefficient;
    if (first) {
      if (c < 0) {
        out += "-";
        c = -c;
      }
    } else {
      out += (c < 0) ? " - " : " + ";
      c = std::fabs(c);
    }
    out += format_double(c);
    if (!(t.exponent == Rational(0))) {
      out += "*eps";
      if (!(t.exponent == Rational(1))) {
        out += "^";
        out += t.exponent.to_string();
      }
    }
    first = false;
  }
  return out;
}

LCNumber parse_lc(std::string_view text) {
  std::size_t i = 0;
  const auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  const auto fail = [&](const char* msg) -> void {
    throw DomainError("series parse error at offset " + std::to_string(i) + ": " + msg);
  };
  const auto parse_int = [&](std::int64_t& out) {
    const char* begin = text.data() + i;
    const char* end = text.data() + text.size();
    const auto res = std::from_chars(begin, end, out);
    if (res.ec != std::errc{}) fail("expected an integer");
    i = static_cast<std::size_t>(res.ptr - text.data());
  };

  std::vector<Term> terms;
  skip();
  if (i == text.size()) throw DomainError("series parse error at offset 0: empty input");
  bool first = true;
  while (i < text.size()) {
    double sign = 1.0;
    if (!first) {
      if (text[i] == '+') {
        ++i;
      } else if (text[i] == '-') {
        sign = -1.0;
        ++i;
      } else {
        fail("expected '+' or '-'");
      }
      skip();
    } else if (text[i] == '+' || text[i] == '-') {
      if (text[i] == '-') sign = -1.0;
      ++i;
      skip();
    }

    double coef = 1.0;
    bool have_coef = false;
    if (i < text.size() &&
        (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '.')) {
      const char* begin = text.data() + i;
      const char* end = text.data() + text.size();
      double v = 0.0;
      const auto res = std::from_chars(begin, end, v);
      if (res.ec != std::errc{} || !std::isfinite(v)) fail("bad coefficient");
      i = static_cast<std::size_t>(res.ptr - text.data());
      coef = v;
      have_coef = true;
      skip();
      if (i < text.size() && text[i] == '*') {
        ++i;
        skip();
        if (text.compare(i, 3, "eps") != 0) fail("expected 'eps' after '*'");
      }
    }

    Rational expo(0);
    if (text.compare(i, 3, "eps") == 0) {
      i += 3;
      expo = Rational(1);
      skip();
      if (i < text.size() && text[i] == '^') {
        ++i;
        skip();
        std::int64_t num = 0;
        parse_int(num);
        std::int64_t den = 1;
        if (i < text.size() && text[i] == '/') {
          ++i;
          parse_int(den);
          if (den <= 0) fail("denominator must be positive");
        }
        expo = Rational(num, den);
      }
    } else if (!have_coef) {
      fail("expected a coefficient or 'eps'");
    }

    terms.push_back({expo, sign * coef});
    first = false;
    skip();
  }
  return LCNumber::from_terms(std::move(terms));
}

double pow_rational(double x, const Rational& q) {
  if (x == 0.0) {
    if (q.num < 0) throw DomainError("pow: zero raised to a negative power");
    return q.num == 0 ? 1.0 : 0.0;
  }
  if (q.den == 1) return std::pow(x, static_cast<double>(q.num));
  if (x < 0.0) {
    if (q.den % 2 == 0) throw DomainError("pow: fractional power of a negative number");
    const double mag = pow_rational(-x, q);
    return (q.num % 2 == 0) ? mag : -mag;
  }
  if (q.den == 2) return std::sqrt(std::pow(x, static_cast<double>(q.num)));
  return std::pow(x, q.to_double());
}

}  // namespace cauchy
