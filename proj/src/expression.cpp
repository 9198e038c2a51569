#include "sres/expression.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sres/errors.hpp"

namespace sres {

enum class Op { Number, Var, Neg, Add, Sub, Mul, Div, Pow, Sin, Cos, Exp, Sqrt, Log };

struct ExprNode {
  Op op;
  double number = 0.0;
  int var = 0;
  std::shared_ptr<const ExprNode> lhs, rhs;
};

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr leaf_number(double v) {
  auto node = std::make_shared<ExprNode>();
  node->op = Op::Number;
  node->number = v;
  return node;
}

NodePtr make(Op op, NodePtr lhs, NodePtr rhs = nullptr) {
  auto node = std::make_shared<ExprNode>();
  node->op = op;
  node->lhs = std::move(lhs);
  node->rhs = std::move(rhs);
  return node;
}

// Recursive descent:
//   expr   := term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*
//   unary  := '-' unary | '+' unary | power
//   power  := atom ('^' unary)?
//   atom   := number | 'pi' | 'x'k | func '(' expr ')' | '(' expr ')'
class Parser {
 public:
  Parser(const std::string& s, int n) : s_(s), n_(n) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  const std::string& s_;
  int n_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("expression '" + s_ + "' at column " + std::to_string(pos_ + 1) + ": " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr e = term();
    for (;;) {
      if (accept('+')) e = make(Op::Add, e, term());
      else if (accept('-')) e = make(Op::Sub, e, term());
      else return e;
    }
  }

  NodePtr term() {
    NodePtr e = unary();
    for (;;) {
      if (accept('*')) e = make(Op::Mul, e, unary());
      else if (accept('/')) e = make(Op::Div, e, unary());
      else return e;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Op::Neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    if (accept('^')) return make(Op::Pow, base, unary());
    return base;
  }

  NodePtr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (accept('(')) {
      NodePtr e = expr();
      if (!accept(')')) fail("missing ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(s_.substr(pos_), &used);
      } catch (const std::exception&) {
        fail("bad number");
      }
      pos_ += used;
      return leaf_number(v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < s_.size() && std::isalnum(static_cast<unsigned char>(s_[end]))) ++end;
      const std::string word = s_.substr(pos_, end - pos_);
      pos_ = end;
      if (word == "pi") return leaf_number(std::numbers::pi);
      if (word.size() > 1 && word[0] == 'x' &&
          word.find_first_not_of("0123456789", 1) == std::string::npos) {
        const int k = std::stoi(word.substr(1));
        if (k < 1 || k > n_) fail("variable " + word + " outside x1..x" + std::to_string(n_));
        auto node = std::make_shared<ExprNode>();
        node->op = Op::Var;
        node->var = k - 1;
        return node;
      }
      Op op;
      if (word == "sin") op = Op::Sin;
      else if (word == "cos") op = Op::Cos;
      else if (word == "exp") op = Op::Exp;
      else if (word == "sqrt") op = Op::Sqrt;
      else if (word == "log") op = Op::Log;
      else fail("unknown name '" + word + "'");
      if (!accept('(')) fail("expected '(' after " + word);
      NodePtr arg = expr();
      if (!accept(')')) fail("missing ')'");
      return make(op, arg);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }
};

// Value plus gradient; grad is scratch storage sized n.
struct Dual {
  double v;
  std::vector<double> g;
};

Dual eval(const ExprNode& e, std::span<const double> x, int n) {
  switch (e.op) {
    case Op::Number:
      return {e.number, std::vector<double>(n, 0.0)};
    case Op::Var: {
      Dual d{x[e.var], std::vector<double>(n, 0.0)};
      d.g[e.var] = 1.0;
      return d;
    }
    default:
      break;
  }
  Dual a = eval(*e.lhs, x, n);
  auto scale = [](Dual d, double v, double f) {
    for (double& g : d.g) g *= f;
    d.v = v;
    return d;
  };
  switch (e.op) {
    case Op::Neg:
      return scale(std::move(a), -a.v, -1.0);
    case Op::Sin:
      return scale(std::move(a), std::sin(a.v), std::cos(a.v));
    case Op::Cos:
      return scale(std::move(a), std::cos(a.v), -std::sin(a.v));
    case Op::Exp: {
      const double v = std::exp(a.v);
      return scale(std::move(a), v, v);
    }
    case Op::Sqrt: {
      const double v = std::sqrt(a.v);
      return scale(std::move(a), v, v > 0.0 ? 0.5 / v : 0.0);
    }
    case Op::Log:
      return scale(std::move(a), std::log(a.v), 1.0 / a.v);
    default:
      break;
  }
  Dual b = eval(*e.rhs, x, n);
  Dual out{0.0, std::vector<double>(n, 0.0)};
  switch (e.op) {
    case Op::Add:
      out.v = a.v + b.v;
      for (int i = 0; i < n; ++i) out.g[i] = a.g[i] + b.g[i];
      break;
    case Op::Sub:
      out.v = a.v - b.v;
      for (int i = 0; i < n; ++i) out.g[i] = a.g[i] - b.g[i];
      break;
    case Op::Mul:
      out.v = a.v * b.v;
      for (int i = 0; i < n; ++i) out.g[i] = a.g[i] * b.v + a.v * b.g[i];
      break;
    case Op::Div:
      out.v = a.v / b.v;
      for (int i = 0; i < n; ++i) out.g[i] = (a.g[i] * b.v - a.v * b.g[i]) / (b.v * b.v);
      break;
    case Op::Pow: {
      out.v = std::pow(a.v, b.v);
      const bool const_exp = std::all_of(b.g.begin(), b.g.end(), [](double g) { return g == 0.0; });
      // Constant exponents are allowed on negative bases.
      const double da = b.v == 0.0 ? 0.0 : b.v * std::pow(a.v, b.v - 1.0);
      const double db = const_exp ? 0.0 : out.v * std::log(a.v);
      for (int i = 0; i < n; ++i) out.g[i] = da * a.g[i] + db * b.g[i];
      break;
    }
    default:
      break;
  }
  return out;
}

bool has_variable(const ExprNode& e) {
  if (e.op == Op::Var) return true;
  if (e.lhs && has_variable(*e.lhs)) return true;
  return e.rhs && has_variable(*e.rhs);
}

}  // namespace

Expression::Expression(const std::string& source, int n) : source_(source), n_(n) {
  if (n < 1) throw InputError("expression dimension must be positive");
  root_ = Parser(source_, n_).parse();
}

Expression Expression::constant(double value, int n) {
  Expression e("0", n);
  e.root_ = leaf_number(value);
  std::ostringstream os;
  os.precision(17);
  os << value;
  e.source_ = os.str();
  return e;
}

double Expression::value(std::span<const double> x) const {
  return eval(*root_, x, n_).v;
}

double Expression::value_and_gradient(std::span<const double> x, std::span<double> grad) const {
  Dual d = eval(*root_, x, n_);
  std::copy(d.g.begin(), d.g.end(), grad.begin());
  return d.v;
}

bool Expression::is_constant() const { return !has_variable(*root_); }

}  // namespace sres
