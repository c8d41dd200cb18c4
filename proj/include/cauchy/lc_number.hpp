#pragma once

#include <compare>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cauchy/rational.hpp"

namespace cauchy {

/// Base class for numeric errors raised by the infinitesimal field.
class LCError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an operation needs a finite number but the argument has a
/// negative leading exponent (no standard part exists).
class InfiniteNumberError : public LCError {
 public:
  using LCError::LCError;
};

/// Domain violations: division by zero, sqrt of a series with nonpositive
/// leading coefficient, log at a point with nonpositive standard part, ...
class DomainError : public LCError {
 public:
  using LCError::LCError;
};

/// Precision policy for all series arithmetic. Terms are kept while their
/// exponent is within `exponent_window` of the leading (smallest) exponent
/// and while at most `term_budget` terms survive. Truncation is relative to
/// the leading exponent, so infinitesimal and infinite numbers keep the same
/// relative precision.
struct TruncationContext {
  int term_budget = 32;
  Rational exponent_window{8};

  void validate() const {
    if (term_budget < 1) throw std::invalid_argument("term_budget must be positive");
    if (exponent_window <= Rational(0))
      throw std::invalid_argument("exponent_window must be positive");
  }
};

/// A truncated Levi-Civita number: a finite formal series sum c_q * eps^q
/// with rational exponents q, kept sorted by strictly ascending exponent.
/// The empty series is zero; no stored coefficient is exactly zero.
class LCNumber {
 public:
  struct Term {
    Rational exponent;
    double coefficient;
  };

  LCNumber() = default;

  /// Builds from arbitrary terms: sorts, merges equal exponents, prunes
  /// exact zeros. No truncation is applied.
  static LCNumber from_terms(std::vector<Term> terms);

  bool is_zero() const { return terms_.empty(); }
  std::span<const Term> terms() const { return terms_; }

  /// Smallest exponent present. Pre: not zero.
  const Rational& leading_exponent() const { return terms_.front().exponent; }
  double leading_coefficient() const { return terms_.front().coefficient; }

  /// Coefficient at exponent q, 0.0 when the term is absent.
  double coefficient(const Rational& q) const;

  friend bool operator==(const LCNumber& a, const LCNumber& b);

 private:
  std::vector<Term> terms_;
};

// --- construction -----------------------------------------------------------

/// Embeds a real as a constant-term series; from_real(0) is the empty zero.
/// Rejects non-finite input.
LCNumber from_real(double r);

/// The generator: {eps^1: 1}, positive yet smaller than every positive real.
LCNumber epsilon();

// --- field arithmetic (truncated per context) --------------------------------

LCNumber neg(const LCNumber& a);
LCNumber add(const LCNumber& a, const LCNumber& b, const TruncationContext& ctx);
LCNumber sub(const LCNumber& a, const LCNumber& b, const TruncationContext& ctx);
LCNumber mul(const LCNumber& a, const LCNumber& b, const TruncationContext& ctx);

/// Multiplicative inverse. Writes a = c * eps^q * (1 + u) with u infinitesimal
/// and expands the geometric series of (1+u)^-1 to the context window.
LCNumber inverse(const LCNumber& a, const TruncationContext& ctx);

/// Principal square root via the binomial series; the leading coefficient
/// must be strictly positive.
LCNumber lc_sqrt(const LCNumber& a, const TruncationContext& ctx);

/// a^q for exact rational q. Integer exponents work for any nonzero a;
/// fractional exponents need a positive leading coefficient.
LCNumber lc_pow(const LCNumber& a, const Rational& q, const TruncationContext& ctx);

enum class AnalyticFn { Sin, Cos, Tan, Exp, Log, Atan };

/// Applies an analytic function to a finite argument by expanding its Taylor
/// series about the standard part and composing with the infinitesimal part.
LCNumber lift_analytic(AnalyticFn f, const LCNumber& a, const TruncationContext& ctx);

/// |a| in the field order.
LCNumber lc_abs(const LCNumber& a);

// --- order and structure -----------------------------------------------------

/// Total order extending the real order: a > b iff the leading coefficient
/// of a - b is positive.
std::strong_ordering lc_compare(const LCNumber& a, const LCNumber& b);

/// The eps^0 coefficient of a finite number. Raises InfiniteNumberError when
/// a has a negative exponent.
double standard_part(const LCNumber& a);

bool is_infinitesimal(const LCNumber& a);
bool is_finite(const LCNumber& a);
bool is_infinite(const LCNumber& a);

/// a and b differ by an infinitesimal.
bool infinitely_close(const LCNumber& a, const LCNumber& b);

// --- exact series helpers (no truncation) ------------------------------------
//
// These keep every term and never round exponents; they are the plumbing for
// jet manipulation (differentiating/integrating a series in eps) and for
// exact cancellation in increment computations.

LCNumber add_exact(const LCNumber& a, const LCNumber& b);
LCNumber sub_exact(const LCNumber& a, const LCNumber& b);
LCNumber scale(const LCNumber& a, double factor);
LCNumber scale_div(const LCNumber& a, double divisor);
LCNumber shift_exponents(const LCNumber& a, const Rational& q);
/// Drops the eps^0 term; the infinitesimal (and infinite) remainder.
LCNumber strip_standard_term(const LCNumber& a);
/// Termwise d/d(eps): q c eps^q  ->  q c eps^(q-1).
LCNumber series_derivative(const LCNumber& a);
/// Termwise antiderivative with zero constant term. Rejects exponent -1.
LCNumber series_antiderivative(const LCNumber& a);

// --- text ---------------------------------------------------------------------

/// Shortest round-trip decimal rendering of a double.
std::string format_double(double v);

/// Renders "c0 + c1*eps^q1 + ..." with exponents as reduced fractions and
/// shortest round-trip coefficients.
std::string to_string(const LCNumber& a);

/// Parses the to_string format (signs, optional coefficients, eps powers).
/// Raises DomainError with the offending offset in the message.
LCNumber parse_lc(std::string_view text);

/// x^q with exact rational exponent; shared by the real and series evaluation
/// paths so both compute identical leading coefficients.
double pow_rational(double x, const Rational& q);

}  // namespace cauchy
