#include "cfode/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <utility>

namespace cfode {

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make_number(double v) {
  return std::make_shared<ExprNode>(ExprNode{ExprKind::Number, v, Builtin::Exp, nullptr, nullptr});
}

NodePtr make_node(ExprKind kind, NodePtr lhs, NodePtr rhs = nullptr) {
  return std::make_shared<ExprNode>(
      ExprNode{kind, 0.0, Builtin::Exp, std::move(lhs), std::move(rhs)});
}

NodePtr make_call(Builtin func, NodePtr arg0, NodePtr arg1 = nullptr) {
  return std::make_shared<ExprNode>(
      ExprNode{ExprKind::Call, 0.0, func, std::move(arg0), std::move(arg1)});
}

struct BuiltinInfo {
  std::string_view name;
  Builtin func;
  int arity;
};

constexpr std::array<BuiltinInfo, 7> kBuiltins{{
    {"exp", Builtin::Exp, 1},
    {"log", Builtin::Log, 1},
    {"sin", Builtin::Sin, 1},
    {"cos", Builtin::Cos, 1},
    {"sqrt", Builtin::Sqrt, 1},
    {"abs", Builtin::Abs, 1},
    {"pow", Builtin::Pow, 2},
}};

class Parser {
public:
  explicit Parser(std::string_view src) : src_(src) {}

  NodePtr run() {
    NodePtr root = parse_expression();
    skip_ws();
    if (pos_ != src_.size()) {
      fail("unexpected trailing input");
    }
    return root;
  }

private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
      ++pos_;
    }
  }

  // The character at the cursor after whitespace, or '\0' at end.
  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  bool consume(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr parse_expression() {
    NodePtr lhs = parse_term();
    for (;;) {
      if (consume('+')) {
        lhs = make_node(ExprKind::Add, std::move(lhs), parse_term());
      } else if (consume('-')) {
        lhs = make_node(ExprKind::Sub, std::move(lhs), parse_term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_factor();
    for (;;) {
      if (consume('*')) {
        lhs = make_node(ExprKind::Mul, std::move(lhs), parse_factor());
      } else if (consume('/')) {
        lhs = make_node(ExprKind::Div, std::move(lhs), parse_factor());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_factor() {
    if (consume('-')) {
      return make_node(ExprKind::Negate, parse_factor());
    }
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (consume('^')) {
      // Exponent parses at factor level, so 2^3^2 = 2^(3^2) and 2^-3 works.
      return make_node(ExprKind::Pow, std::move(base), parse_factor());
    }
    return base;
  }

  NodePtr parse_primary() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      NodePtr inner = parse_expression();
      if (!consume(')')) {
        fail("expected ')'");
      }
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return parse_number();
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      return parse_identifier();
    }
    if (c == '\0') {
      fail("unexpected end of input");
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  NodePtr parse_number() {
    double value = 0.0;
    const char* begin = src_.data() + pos_;
    const char* end = src_.data() + src_.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr == begin) {
      fail("malformed number literal");
    }
    pos_ += static_cast<std::size_t>(ptr - begin);
    return make_number(value);
  }

  NodePtr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = src_.substr(start, pos_ - start);

    if (name == "t") return make_node(ExprKind::VarT, nullptr);
    if (name == "y") return make_node(ExprKind::VarY, nullptr);
    if (name == "pi") return make_number(std::numbers::pi);
    if (name == "e") return make_number(std::numbers::e);

    for (const BuiltinInfo& entry : kBuiltins) {
      if (name == entry.name) {
        if (!consume('(')) {
          pos_ = start;
          fail("function '" + std::string(name) + "' requires an argument list");
        }
        NodePtr arg0 = parse_expression();
        NodePtr arg1;
        int arity = 1;
        if (consume(',')) {
          arg1 = parse_expression();
          arity = 2;
        }
        if (!consume(')')) {
          fail("expected ')'");
        }
        if (arity != entry.arity) {
          pos_ = start;
          fail("function '" + std::string(name) + "' expects " + std::to_string(entry.arity) +
               (entry.arity == 1 ? " argument" : " arguments"));
        }
        return make_call(entry.func, std::move(arg0), std::move(arg1));
      }
    }

    pos_ = start;
    fail("unknown identifier '" + std::string(name) + "'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

double eval_node(const ExprNode& n, double t, double y) {
  switch (n.kind) {
    case ExprKind::Number:
      return n.number;
    case ExprKind::VarT:
      return t;
    case ExprKind::VarY:
      return y;
    case ExprKind::Negate:
      return -eval_node(*n.lhs, t, y);
    case ExprKind::Add:
      return eval_node(*n.lhs, t, y) + eval_node(*n.rhs, t, y);
    case ExprKind::Sub:
      return eval_node(*n.lhs, t, y) - eval_node(*n.rhs, t, y);
    case ExprKind::Mul:
      return eval_node(*n.lhs, t, y) * eval_node(*n.rhs, t, y);
    case ExprKind::Div:
      return eval_node(*n.lhs, t, y) / eval_node(*n.rhs, t, y);
    case ExprKind::Pow:
      return std::pow(eval_node(*n.lhs, t, y), eval_node(*n.rhs, t, y));
    case ExprKind::Call: {
      const double a = eval_node(*n.lhs, t, y);
      switch (n.func) {
        case Builtin::Exp:
          return std::exp(a);
        case Builtin::Log:
          return std::log(a);
        case Builtin::Sin:
          return std::sin(a);
        case Builtin::Cos:
          return std::cos(a);
        case Builtin::Sqrt:
          return std::sqrt(a);
        case Builtin::Abs:
          return std::abs(a);
        case Builtin::Pow:
          return std::pow(a, eval_node(*n.rhs, t, y));
      }
      break;
    }
  }
  return std::numeric_limits<double>::quiet_NaN();  // unreachable
}

std::string_view builtin_name(Builtin func) {
  for (const BuiltinInfo& entry : kBuiltins) {
    if (entry.func == func) return entry.name;
  }
  return "?";
}

// Binding strength used when deciding where str() must parenthesize.
int precedence(const ExprNode& n) {
  switch (n.kind) {
    case ExprKind::Add:
    case ExprKind::Sub:
      return 1;
    case ExprKind::Mul:
    case ExprKind::Div:
      return 2;
    case ExprKind::Negate:
      return 3;
    case ExprKind::Pow:
      return 4;
    default:
      return 5;
  }
}

std::string shortest_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void print_node(const ExprNode& n, std::string& out);

void print_child(const ExprNode& child, int min_prec, std::string& out) {
  if (precedence(child) < min_prec) {
    out += '(';
    print_node(child, out);
    out += ')';
  } else {
    print_node(child, out);
  }
}

void print_node(const ExprNode& n, std::string& out) {
  switch (n.kind) {
    case ExprKind::Number:
      out += shortest_double(n.number);
      return;
    case ExprKind::VarT:
      out += 't';
      return;
    case ExprKind::VarY:
      out += 'y';
      return;
    case ExprKind::Negate:
      out += '-';
      print_child(*n.lhs, 3, out);
      return;
    case ExprKind::Add:
    case ExprKind::Sub:
      print_child(*n.lhs, 1, out);
      out += n.kind == ExprKind::Add ? '+' : '-';
      print_child(*n.rhs, 2, out);  // a-(b+c) != a-b-c
      return;
    case ExprKind::Mul:
    case ExprKind::Div:
      print_child(*n.lhs, 2, out);
      out += n.kind == ExprKind::Mul ? '*' : '/';
      print_child(*n.rhs, 3, out);
      return;
    case ExprKind::Pow:
      print_child(*n.lhs, 5, out);  // (2^3)^2 and (-2)^3 need the parens
      out += '^';
      print_child(*n.rhs, 3, out);  // exponent re-parses at factor level
      return;
    case ExprKind::Call:
      out += builtin_name(n.func);
      out += '(';
      print_node(*n.lhs, out);
      if (n.rhs) {
        out += ',';
        print_node(*n.rhs, out);
      }
      out += ')';
      return;
  }
}

bool nodes_equal(const ExprNode* a, const ExprNode* b) {
  if (a == b) return true;
  if (a == nullptr || b == nullptr) return false;
  if (a->kind != b->kind) return false;
  if (a->kind == ExprKind::Number && a->number != b->number) return false;
  if (a->kind == ExprKind::Call && a->func != b->func) return false;
  return nodes_equal(a->lhs.get(), b->lhs.get()) && nodes_equal(a->rhs.get(), b->rhs.get());
}

}  // namespace

ParseError::ParseError(const std::string& what, std::size_t position)
    : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
      position_(position) {}

Expr Expr::parse(std::string_view source) { return Expr(Parser(source).run()); }

double Expr::eval(double t, double y) const { return eval_node(*root_, t, y); }

std::string Expr::str() const {
  std::string out;
  print_node(*root_, out);
  return out;
}

bool structurally_equal(const Expr& a, const Expr& b) {
  return nodes_equal(&a.root(), &b.root());
}

}  // namespace cfode
