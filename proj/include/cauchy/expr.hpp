#pragma once

#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cauchy/lc_number.hpp"

namespace cauchy {

/// Syntax error with the character offset of the offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, const std::string& message)
      : std::runtime_error("parse error at offset " + std::to_string(offset) + ": " + message),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

enum class UnaryOp { Neg, Sin, Cos, Tan, Exp, Log, Sqrt, Atan, Abs };
enum class BinaryOp { Add, Sub, Mul, Div };

/// Parsed expression tree, evaluable over reals and over the infinitesimal
/// field with identical structure. Immutable and cheap to copy.
///
/// Grammar: precedence ^ > unary minus > *,/ > +,-; ^ is right-associative
/// and its exponent must fold to a rational constant at parse time; function
/// application is f(expr); constants pi and e; decimal and scientific
/// literals; whitespace is insignificant.
class Expr {
 public:
  /// Parses `source`, allowing exactly the given variable names.
  static Expr parse(std::string_view source, std::span<const std::string> variables);

  double eval_real(const std::map<std::string, double>& bindings) const;
  LCNumber eval_lc(const std::map<std::string, LCNumber>& bindings,
                   const TruncationContext& ctx) const;

  /// Re-emits source text that parses back to a structurally equal tree.
  std::string render() const;

  /// Sorted unique free variables appearing in the tree.
  std::vector<std::string> variables() const;

  friend bool operator==(const Expr& a, const Expr& b);

  struct Node;

 private:
  using NodePtr = std::shared_ptr<const Node>;
  explicit Expr(NodePtr root) : root_(std::move(root)) {}
  NodePtr root_;
};

}  // namespace cauchy
