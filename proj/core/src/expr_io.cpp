#include <cctype>

#include "crystalforge/exactalg.hpp"

namespace cf {

VarNames defaultNames(int n, const std::string& prefix) {
  VarNames v;
  for (int i = 0; i < n; ++i) v.push_back(prefix + std::to_string(i + 1));
  return v;
}

std::string toString(const Rational& q) { return q.get_str(); }

namespace {

std::string varName(const VarNames& names, int i) {
  if (i < int(names.size())) return names[i];
  return "x" + std::to_string(i + 1);
}

std::string termString(const Int& absc, const Monomial& m, const VarNames& names) {
  std::vector<std::string> factors;
  if (absc != 1 || m.isOne()) factors.push_back(absc.get_str());
  for (int i = 0; i < kMaxVars; ++i) {
    if (!m.e[i]) continue;
    std::string v = varName(names, i);
    if (m.e[i] > 1) v = "(" + v + "^" + std::to_string(m.e[i]) + ")";
    factors.push_back(v);
  }
  std::string acc = factors[0];
  for (size_t k = 1; k < factors.size(); ++k) acc = "(" + acc + "*" + factors[k] + ")";
  return acc;
}

}  // namespace

std::string toString(const ZPoly& p, const VarNames& names) {
  if (p.isZero()) return "0";
  std::string acc;
  bool first = true;
  for (const auto& t : p.terms()) {
    std::string ts = termString(abs(t.c), t.m, names);
    if (first) {
      acc = sgn(t.c) < 0 ? "(-" + ts + ")" : ts;
      first = false;
    } else {
      acc = "(" + acc + (sgn(t.c) < 0 ? " - " : " + ") + ts + ")";
    }
  }
  return acc;
}

std::string toString(const RatFunc& f, const VarNames& names) {
  if (f.den().isOne()) return toString(f.num(), names);
  return "(" + toString(f.num(), names) + "/" + toString(f.den(), names) + ")";
}

namespace {

class Parser {
 public:
  Parser(const std::string& s, const VarNames& names) : s_(s), names_(names) {}

  RatFunc parseAll() {
    RatFunc r = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return r;
  }

 private:
  const std::string& s_;
  const VarNames& names_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError("parse error at offset " + std::to_string(pos_) + ": " + msg);
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

  RatFunc expr() {
    RatFunc acc = term();
    for (;;) {
      if (accept('+'))
        acc = arith(ArithOp::Add, acc, term(), Reduce::Content);
      else if (accept('-'))
        acc = arith(ArithOp::Sub, acc, term(), Reduce::Content);
      else
        return acc;
    }
  }
  RatFunc term() {
    RatFunc acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = arith(ArithOp::Mul, acc, unary(), Reduce::Content);
      } else if (accept('/')) {
        RatFunc d = unary();
        if (d.isZero()) throw DivisionByZeroFunction();
        acc = arith(ArithOp::Div, acc, d, Reduce::Content);
      } else {
        return acc;
      }
    }
  }
  RatFunc unary() {
    if (accept('-')) return -unary();
    return power();
  }
  long exponent() {
    skip();
    bool paren = accept('(');
    bool neg = accept('-');
    skip();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    long e = std::stol(s_.substr(start, pos_ - start));
    if (paren && !accept(')')) fail("expected ')'");
    return neg ? -e : e;
  }
  RatFunc power() {
    RatFunc base = atom();
    if (accept('^')) {
      long e = exponent();
      if (e < 0 && base.isZero()) throw DivisionByZeroFunction();
      return base.pow(e);
    }
    return base;
  }
  RatFunc atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RatFunc r = expr();
      if (!accept(')')) fail("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return RatFunc(Rational(Int(s_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                                  s_[pos_] == '_' || s_[pos_] == '\''))
        ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      for (size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return RatFunc::var(int(i), int(names_.size()));
      fail("unknown variable '" + name + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

RatFunc parseRatFunc(const std::string& text, const VarNames& names) {
  if (int(names.size()) > kMaxVars) throw ParseError("too many variables");
  return Parser(text, names).parseAll();
}

}  // namespace cf
