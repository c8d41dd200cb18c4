#include "cauchy/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <variant>

namespace cauchy {

struct Expr::Node {
  struct Constant {
    double value;
    std::optional<Rational> exact;  // set when the literal is an exact rational
  };
  struct Variable {
    std::string name;
  };
  struct Unary {
    UnaryOp op;
    NodePtr child;
  };
  struct Binary {
    BinaryOp op;
    NodePtr lhs, rhs;
  };
  struct Power {
    NodePtr base;
    Rational exponent;
  };

  std::variant<Constant, Variable, Unary, Binary, Power> v;
};

namespace {

using Node = Expr::Node;
using NodePtr = std::shared_ptr<const Node>;

template <class T>
NodePtr make(T&& payload) {
  return std::make_shared<Node>(Node{std::forward<T>(payload)});
}

std::optional<UnaryOp> function_named(std::string_view name) {
  if (name == "sin") return UnaryOp::Sin;
  if (name == "cos") return UnaryOp::Cos;
  if (name == "tan") return UnaryOp::Tan;
  if (name == "exp") return UnaryOp::Exp;
  if (name == "log") return UnaryOp::Log;
  if (name == "sqrt") return UnaryOp::Sqrt;
  if (name == "atan") return UnaryOp::Atan;
  if (name == "abs") return UnaryOp::Abs;
  return std::nullopt;
}

// Exact rational value of a decimal/scientific literal, when it fits i64.
std::optional<Rational> exact_of_literal(std::string_view text) {
  __int128 mantissa = 0;
  int frac_digits = 0;
  long long exp10 = 0;
  std::size_t i = 0;
  bool any = false;
  const auto too_big = [](__int128 v) { return v > (static_cast<__int128>(1) << 62); };
  for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
    mantissa = mantissa * 10 + (text[i] - '0');
    if (too_big(mantissa)) return std::nullopt;
    any = true;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
      mantissa = mantissa * 10 + (text[i] - '0');
      if (too_big(mantissa)) return std::nullopt;
      ++frac_digits;
      any = true;
    }
  }
  if (!any) return std::nullopt;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool negexp = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) negexp = text[i++] == '-';
    long long e = 0;
    bool got = false;
    for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
      e = e * 10 + (text[i] - '0');
      if (e > 40) return std::nullopt;
      got = true;
    }
    if (!got) return std::nullopt;
    exp10 = negexp ? -e : e;
  }
  if (i != text.size()) return std::nullopt;
  const long long net = exp10 - frac_digits;
  __int128 num = mantissa, den = 1;
  for (long long k = 0; k < (net > 0 ? net : -net); ++k) {
    (net > 0 ? num : den) *= 10;
    if (too_big(num) || too_big(den)) return std::nullopt;
  }
  return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

std::optional<Rational> fold_rational(const NodePtr& node) {
  try {
    if (const auto* c = std::get_if<Node::Constant>(&node->v)) return c->exact;
    if (const auto* u = std::get_if<Node::Unary>(&node->v)) {
      if (u->op != UnaryOp::Neg) return std::nullopt;
      const auto inner = fold_rational(u->child);
      if (!inner) return std::nullopt;
      return -*inner;
    }
    if (const auto* b = std::get_if<Node::Binary>(&node->v)) {
      const auto l = fold_rational(b->lhs), r = fold_rational(b->rhs);
      if (!l || !r) return std::nullopt;
      switch (b->op) {
        case BinaryOp::Add: return *l + *r;
        case BinaryOp::Sub: return *l - *r;
        case BinaryOp::Mul: return *l * *r;
        case BinaryOp::Div: return *l / *r;
      }
    }
    if (const auto* p = std::get_if<Node::Power>(&node->v)) {
      const auto base = fold_rational(p->base);
      if (!base || !p->exponent.is_integer()) return std::nullopt;
      const std::int64_t n = p->exponent.num;
      if (n < -64 || n > 64) return std::nullopt;
      Rational acc(1);
      const Rational b = n < 0 ? Rational(1) / *base : *base;
      for (std::int64_t k = 0; k < (n < 0 ? -n : n); ++k) acc = acc * b;
      return acc;
    }
  } catch (const std::exception&) {
    return std::nullopt;  // division by zero or overflow while folding
  }
  return std::nullopt;
}

class Parser {
 public:
  Parser(std::string_view source, std::span<const std::string> variables)
      : src_(source), vars_(variables) {}

  NodePtr run() {
    NodePtr e = expression();
    skip();
    if (pos_ != src_.size()) throw ParseError(pos_, "unexpected trailing input");
    return e;
  }

 private:
  std::string_view src_;
  std::span<const std::string> vars_;
  std::size_t pos_ = 0;

  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }
  void expect(char c, const char* what) {
    if (peek() != c) throw ParseError(pos_, std::string("expected ") + what);
    ++pos_;
  }

  NodePtr expression() {
    NodePtr lhs = term();
    while (true) {
      const char c = peek();
      if (c != '+' && c != '-') return lhs;
      ++pos_;
      lhs = make(Node::Binary{c == '+' ? BinaryOp::Add : BinaryOp::Sub, lhs, term()});
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    while (true) {
      const char c = peek();
      if (c != '*' && c != '/') return lhs;
      ++pos_;
      lhs = make(Node::Binary{c == '*' ? BinaryOp::Mul : BinaryOp::Div, lhs, unary()});
    }
  }

  NodePtr unary() {
    const char c = peek();
    if (c == '-') {
      ++pos_;
      return make(Node::Unary{UnaryOp::Neg, unary()});
    }
    if (c == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    skip();
    if (pos_ < src_.size() && src_[pos_] == '^') {
      const std::size_t caret = pos_;
      ++pos_;
      NodePtr exponent = unary();  // right-associative, unary signs allowed
      const std::optional<Rational> folded = fold_rational(exponent);
      if (!folded) throw ParseError(caret, "exponent must fold to a rational constant");
      return make(Node::Power{base, *folded});
    }
    return base;
  }

  NodePtr primary() {
    skip();
    if (pos_ >= src_.size()) throw ParseError(pos_, "expected a value");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = expression();
      expect(')', "')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    throw ParseError(pos_, "expected a value");
  }

  NodePtr number() {
    const char* begin = src_.data() + pos_;
    const char* end = src_.data() + src_.size();
    double value = 0.0;
    const auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc{} || !std::isfinite(value))
      throw ParseError(pos_, "malformed number");
    const std::size_t len = static_cast<std::size_t>(res.ptr - begin);
    const std::optional<Rational> exact = exact_of_literal({begin, len});
    pos_ += len;
    return make(Node::Constant{value, exact});
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    const std::string_view name = src_.substr(start, pos_ - start);
    if (const auto fn = function_named(name)) {
      expect('(', "'(' after function name");
      NodePtr arg = expression();
      expect(')', "')'");
      return make(Node::Unary{*fn, arg});
    }
    for (const std::string& v : vars_)
      if (name == v) return make(Node::Variable{std::string(name)});
    if (name == "pi") return make(Node::Constant{std::numbers::pi, std::nullopt});
    if (name == "e") return make(Node::Constant{std::numbers::e, std::nullopt});
    throw ParseError(start, "unknown identifier '" + std::string(name) + "'");
  }
};

double eval_real_node(const Node& node, const std::map<std::string, double>& bindings) {
  if (const auto* c = std::get_if<Node::Constant>(&node.v)) return c->value;
  if (const auto* var = std::get_if<Node::Variable>(&node.v)) {
    const auto it = bindings.find(var->name);
    if (it == bindings.end()) throw std::invalid_argument("unbound variable '" + var->name + "'");
    return it->second;
  }
  if (const auto* u = std::get_if<Node::Unary>(&node.v)) {
    const double v = eval_real_node(*u->child, bindings);
    switch (u->op) {
      case UnaryOp::Neg: return -v;
      case UnaryOp::Sin: return std::sin(v);
      case UnaryOp::Cos: return std::cos(v);
      case UnaryOp::Tan: return std::tan(v);
      case UnaryOp::Exp: return std::exp(v);
      case UnaryOp::Log:
        if (v <= 0.0) throw DomainError("log of a nonpositive value");
        return std::log(v);
      case UnaryOp::Sqrt:
        if (v < 0.0) throw DomainError("sqrt of a negative value");
        return std::sqrt(v);
      case UnaryOp::Atan: return std::atan(v);
      case UnaryOp::Abs: return std::fabs(v);
    }
  }
  if (const auto* b = std::get_if<Node::Binary>(&node.v)) {
    const double l = eval_real_node(*b->lhs, bindings);
    const double r = eval_real_node(*b->rhs, bindings);
    switch (b->op) {
      case BinaryOp::Add: return l + r;
      case BinaryOp::Sub: return l - r;
      case BinaryOp::Mul: return l * r;
      case BinaryOp::Div:
        if (r == 0.0) throw DomainError("division by zero");
        return l / r;
    }
  }
  const auto& p = std::get<Node::Power>(node.v);
  return pow_rational(eval_real_node(*p.base, bindings), p.exponent);
}

LCNumber eval_lc_node(const Node& node, const std::map<std::string, LCNumber>& bindings,
                      const TruncationContext& ctx) {
  if (const auto* c = std::get_if<Node::Constant>(&node.v)) return from_real(c->value);
  if (const auto* var = std::get_if<Node::Variable>(&node.v)) {
    const auto it = bindings.find(var->name);
    if (it == bindings.end()) throw std::invalid_argument("unbound variable '" + var->name + "'");
    return it->second;
  }
  if (const auto* u = std::get_if<Node::Unary>(&node.v)) {
    const LCNumber v = eval_lc_node(*u->child, bindings, ctx);
    switch (u->op) {
      case UnaryOp::Neg: return neg(v);
      case UnaryOp::Sin: return lift_analytic(AnalyticFn::Sin, v, ctx);
      case UnaryOp::Cos: return lift_analytic(AnalyticFn::Cos, v, ctx);
      case UnaryOp::Tan: return lift_analytic(AnalyticFn::Tan, v, ctx);
      case UnaryOp::Exp: return lift_analytic(AnalyticFn::Exp, v, ctx);
      case UnaryOp::Log: return lift_analytic(AnalyticFn::Log, v, ctx);
      case UnaryOp::Sqrt: return v.is_zero() ? LCNumber{} : lc_sqrt(v, ctx);
      case UnaryOp::Atan: return lift_analytic(AnalyticFn::Atan, v, ctx);
      case UnaryOp::Abs: return lc_abs(v);
    }
  }
  if (const auto* b = std::get_if<Node::Binary>(&node.v)) {
    const LCNumber l = eval_lc_node(*b->lhs, bindings, ctx);
    const LCNumber r = eval_lc_node(*b->rhs, bindings, ctx);
    switch (b->op) {
      case BinaryOp::Add: return add(l, r, ctx);
      case BinaryOp::Sub: return sub(l, r, ctx);
      case BinaryOp::Mul: return mul(l, r, ctx);
      case BinaryOp::Div: return mul(l, inverse(r, ctx), ctx);
    }
  }
  const auto& p = std::get<Node::Power>(node.v);
  return lc_pow(eval_lc_node(*p.base, bindings, ctx), p.exponent, ctx);
}

// Precedence levels for rendering: additive 1, multiplicative 2, unary 3,
// power 4, atoms 5.
int node_level(const Node& node) {
  if (const auto* u = std::get_if<Node::Unary>(&node.v))
    return u->op == UnaryOp::Neg ? 3 : 5;
  if (const auto* b = std::get_if<Node::Binary>(&node.v))
    return (b->op == BinaryOp::Add || b->op == BinaryOp::Sub) ? 1 : 2;
  if (std::holds_alternative<Node::Power>(node.v)) return 4;
  return 5;
}

const char* function_name(UnaryOp op) {
  switch (op) {
    case UnaryOp::Sin: return "sin";
    case UnaryOp::Cos: return "cos";
    case UnaryOp::Tan: return "tan";
    case UnaryOp::Exp: return "exp";
    case UnaryOp::Log: return "log";
    case UnaryOp::Sqrt: return "sqrt";
    case UnaryOp::Atan: return "atan";
    case UnaryOp::Abs: return "abs";
    case UnaryOp::Neg: break;
  }
  return "";
}

void render_node(const Node& node, int min_level, std::string& out) {
  const int level = node_level(node);
  const bool parens = level < min_level;
  if (parens) out += '(';
  if (const auto* c = std::get_if<Node::Constant>(&node.v)) {
    out += format_double(c->value);
  } else if (const auto* var = std::get_if<Node::Variable>(&node.v)) {
    out += var->name;
  } else if (const auto* u = std::get_if<Node::Unary>(&node.v)) {
    if (u->op == UnaryOp::Neg) {
      out += '-';
      render_node(*u->child, 3, out);
    } else {
      out += function_name(u->op);
      out += '(';
      render_node(*u->child, 0, out);
      out += ')';
    }
  } else if (const auto* b = std::get_if<Node::Binary>(&node.v)) {
    render_node(*b->lhs, level, out);
    switch (b->op) {
      case BinaryOp::Add: out += " + "; break;
      case BinaryOp::Sub: out += " - "; break;
      case BinaryOp::Mul: out += "*"; break;
      case BinaryOp::Div: out += "/"; break;
    }
    const bool strict_rhs = b->op == BinaryOp::Sub || b->op == BinaryOp::Div;
    render_node(*b->rhs, level + (strict_rhs ? 1 : 0), out);
  } else {
    const auto& p = std::get<Node::Power>(node.v);
    render_node(*p.base, 5, out);
    out += '^';
    if (p.exponent.is_integer() && p.exponent.num >= 0) {
      out += std::to_string(p.exponent.num);
    } else {
      out += '(';
      out += std::to_string(p.exponent.num);
      if (p.exponent.den != 1) {
        out += '/';
        out += std::to_string(p.exponent.den);
      }
      out += ')';
    }
  }
  if (parens) out += ')';
}

void collect_variables(const Node& node, std::vector<std::string>& out) {
  if (const auto* var = std::get_if<Node::Variable>(&node.v)) {
    out.push_back(var->name);
  } else if (const auto* u = std::get_if<Node::Unary>(&node.v)) {
    collect_variables(*u->child, out);
  } else if (const auto* b = std::get_if<Node::Binary>(&node.v)) {
    collect_variables(*b->lhs, out);
    collect_variables(*b->rhs, out);
  } else if (const auto* p = std::get_if<Node::Power>(&node.v)) {
    collect_variables(*p->base, out);
  }
}

bool nodes_equal(const Node& a, const Node& b) {
  if (a.v.index() != b.v.index()) return false;
  if (const auto* c = std::get_if<Node::Constant>(&a.v))
    return c->value == std::get<Node::Constant>(b.v).value;
  if (const auto* var = std::get_if<Node::Variable>(&a.v))
    return var->name == std::get<Node::Variable>(b.v).name;
  if (const auto* u = std::get_if<Node::Unary>(&a.v)) {
    const auto& o = std::get<Node::Unary>(b.v);
    return u->op == o.op && nodes_equal(*u->child, *o.child);
  }
  if (const auto* bin = std::get_if<Node::Binary>(&a.v)) {
    const auto& o = std::get<Node::Binary>(b.v);
    return bin->op == o.op && nodes_equal(*bin->lhs, *o.lhs) && nodes_equal(*bin->rhs, *o.rhs);
  }
  const auto& p = std::get<Node::Power>(a.v);
  const auto& o = std::get<Node::Power>(b.v);
  return p.exponent == o.exponent && nodes_equal(*p.base, *o.base);
}

}  // namespace

Expr Expr::parse(std::string_view source, std::span<const std::string> variables) {
  return Expr(Parser(source, variables).run());
}

double Expr::eval_real(const std::map<std::string, double>& bindings) const {
  return eval_real_node(*root_, bindings);
}

LCNumber Expr::eval_lc(const std::map<std::string, LCNumber>& bindings,
                       const TruncationContext& ctx) const {
  return eval_lc_node(*root_, bindings, ctx);
}

std::string Expr::render() const {
  std::string out;
  render_node(*root_, 0, out);
  return out;
}

std::vector<std::string> Expr::variables() const {
  std::vector<std::string> names;
  collect_variables(*root_, names);
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return names;
}

bool operator==(const Expr& a, const Expr& b) { return nodes_equal(*a.root_, *b.root_); }

}  // namespace cauchy
