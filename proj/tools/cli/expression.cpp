#include "expression.hpp"

#include <cctype>
#include <cmath>
#include <functional>
#include <map>

#include "lpmult/errors.hpp"

namespace lpmult::cli {

struct ExprNode {
  std::function<Complex(const std::vector<int>&)> eval;
  bool is_vector = false;
};

namespace {

using Node = std::shared_ptr<const ExprNode>;

Node make(std::function<Complex(const std::vector<int>&)> f) {
  auto n = std::make_shared<ExprNode>();
  n->eval = std::move(f);
  return n;
}

Complex complex_sign(Complex z) {
  if (z.imag() == 0.0) return z.real() > 0 ? 1.0 : (z.real() < 0 ? -1.0 : 0.0);
  const double a = std::abs(z);
  return a == 0.0 ? Complex(0.0) : z / a;
}

const std::map<std::string, Complex (*)(Complex)>& functions() {
  static const std::map<std::string, Complex (*)(Complex)> f = {
      {"abs", [](Complex z) { return Complex(std::abs(z)); }},
      {"sqrt", [](Complex z) { return std::sqrt(z); }},
      {"log", [](Complex z) { return std::log(z); }},
      {"exp", [](Complex z) { return std::exp(z); }},
      {"sin", [](Complex z) { return std::sin(z); }},
      {"cos", [](Complex z) { return std::cos(z); }},
      {"sign", complex_sign},
  };
  return f;
}

class Parser {
 public:
  Parser(const std::string& s, int n) : s_(s), n_(n) {}

  Node parse() {
    Node e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw MathInputError("torus expression '" + s_ + "': " + what + " at position " + std::to_string(pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Node scalar(Node n) const {
    if (n->is_vector) throw MathInputError("torus expression '" + s_ + "': the vector k is only allowed inside abs()");
    return n;
  }

  Node expr() {
    Node a = term();
    for (;;) {
      if (eat('+')) {
        Node l = scalar(a), r = scalar(term());
        a = make([l, r](const std::vector<int>& k) { return l->eval(k) + r->eval(k); });
      } else if (eat('-')) {
        Node l = scalar(a), r = scalar(term());
        a = make([l, r](const std::vector<int>& k) { return l->eval(k) - r->eval(k); });
      } else {
        return a;
      }
    }
  }

  Node term() {
    Node a = unary();
    for (;;) {
      if (eat('*')) {
        Node l = scalar(a), r = scalar(unary());
        a = make([l, r](const std::vector<int>& k) { return l->eval(k) * r->eval(k); });
      } else if (eat('/')) {
        Node l = scalar(a), r = scalar(unary());
        a = make([l, r](const std::vector<int>& k) { return l->eval(k) / r->eval(k); });
      } else {
        return a;
      }
    }
  }

  Node unary() {
    if (eat('-')) {
      Node a = scalar(unary());
      return make([a](const std::vector<int>& k) { return -a->eval(k); });
    }
    if (eat('+')) return scalar(unary());
    return power();
  }

  Node power() {
    Node base = primary();
    if (!eat('^')) return base;
    Node b = scalar(base), e = scalar(unary());
    return make([b, e](const std::vector<int>& k) {
      const Complex x = b->eval(k), y = e->eval(k);
      if (y.imag() == 0.0 && x.imag() == 0.0 && (x.real() >= 0.0 || y.real() == std::round(y.real())))
        return Complex(std::pow(x.real(), y.real()));
      return std::pow(x, y);
    });
  }

  Node primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Node e = expr();
      if (!eat(')')) fail("missing ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(s_.substr(pos_), &used);
      } catch (const std::exception&) {
        fail("malformed number");
      }
      pos_ += used;
      // Imaginary literal such as 0.5i.
      if (pos_ < s_.size() && s_[pos_] == 'i' &&
          (pos_ + 1 == s_.size() || !std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])))) {
        ++pos_;
        return make([v](const std::vector<int>&) { return Complex(0.0, v); });
      }
      return make([v](const std::vector<int>&) { return Complex(v); });
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail("unexpected '" + std::string(1, c) + "'");
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    const std::string id = s_.substr(start, pos_ - start);
    if (id == "i") return make([](const std::vector<int>&) { return Complex(0.0, 1.0); });
    if (id == "pi") return make([](const std::vector<int>&) { return Complex(kPi); });
    if (id == "k") {
      auto n = std::make_shared<ExprNode>();
      n->is_vector = true;
      return n;
    }
    if (id.size() > 1 && id[0] == 'k' && id.find_first_not_of("0123456789", 1) == std::string::npos) {
      const int j = std::stoi(id.substr(1));
      if (j < 1 || j > n_) fail("variable " + id + " out of range for torus-" + std::to_string(n_));
      return make([j](const std::vector<int>& k) { return Complex(k[static_cast<std::size_t>(j - 1)]); });
    }
    const auto it = functions().find(id);
    if (it == functions().end()) fail("unknown identifier '" + id + "'");
    if (!eat('(')) fail("expected '(' after " + id);
    Node arg = expr();
    if (!eat(')')) fail("missing ')'");
    if (arg->is_vector) {
      if (id != "abs") fail("the vector k is only allowed inside abs()");
      return make([](const std::vector<int>& k) {
        double s = 0.0;
        for (int x : k) s += double(x) * x;
        return Complex(std::sqrt(s));
      });
    }
    const auto f = it->second;
    return make([f, arg](const std::vector<int>& k) { return f(arg->eval(k)); });
  }

  const std::string& s_;
  int n_;
  std::size_t pos_ = 0;
};

}  // namespace

TorusExpression::TorusExpression(const std::string& text, int dimension) : text_(text), dimension_(dimension) {
  if (dimension < 1) throw MathInputError("torus dimension must be positive");
  root_ = Parser(text_, dimension_).parse();
  if (root_->is_vector) throw MathInputError("torus expression '" + text_ + "': the vector k is only allowed inside abs()");
}

Complex TorusExpression::operator()(const std::vector<int>& k) const { return root_->eval(k); }

}  // namespace lpmult::cli
