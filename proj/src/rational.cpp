#include "drinfeld/rational.hpp"

#include <cctype>

#include "drinfeld/errors.hpp"

namespace drinfeld {

RationalFunc::RationalFunc(const PolyA& num) : num_(num), den_(PolyA::constant(num.field(), 1)) {}

RationalFunc::RationalFunc(const PolyA& num, const PolyA& den) {
  if (den.is_zero()) throw DomainError("rational function with zero denominator");
  const Fq& F = den.field();
  if (num.is_zero()) {
    num_ = PolyA(F);
    den_ = PolyA::constant(F, 1);
    return;
  }
  PolyA g = gcd(num, den);
  PolyA n = num / g, d = den / g;
  auto inv = F.inv(d.lead());
  num_ = n.scaled(inv);
  den_ = d.scaled(inv);
}

int RationalFunc::valuation_inf() const {
  if (is_zero()) return INT_MAX;
  return den_.degree() - num_.degree();
}

int RationalFunc::ord(const PolyA& l) const {
  if (is_zero()) return INT_MAX;
  return drinfeld::ord(num_, l) - drinfeld::ord(den_, l);
}

RationalFunc RationalFunc::operator-() const { return RationalFunc(-num_, den_, true); }

RationalFunc operator+(const RationalFunc& a, const RationalFunc& b) {
  if (a.den_ == b.den_) return RationalFunc(a.num_ + b.num_, a.den_);
  return RationalFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunc operator-(const RationalFunc& a, const RationalFunc& b) { return a + (-b); }

RationalFunc operator*(const RationalFunc& a, const RationalFunc& b) {
  if (a.is_zero() || b.is_zero()) return RationalFunc(a.field());
  // cross-cancel to keep the factors small
  PolyA g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
  PolyA n = (a.num_ / g1) * (b.num_ / g2);
  PolyA d = (a.den_ / g2) * (b.den_ / g1);
  const Fq& F = a.field();
  auto inv = F.inv(d.lead());
  return RationalFunc(n.scaled(inv), d.scaled(inv), true);
}

RationalFunc RationalFunc::inv() const {
  if (is_zero()) throw DomainError("inverse of zero rational function");
  return RationalFunc(den_, num_);
}

RationalFunc operator/(const RationalFunc& a, const RationalFunc& b) { return a * b.inv(); }

RationalFunc RationalFunc::pow(long long n) const {
  if (n < 0) return inv().pow(-n);
  return RationalFunc(num_.pow(static_cast<std::uint64_t>(n)), den_.pow(static_cast<std::uint64_t>(n)), true);
}

std::string RationalFunc::to_string() const {
  if (den_.is_one()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

RationalFunc RationalFunc::parse(const Fq& F, std::string_view s) {
  std::string t;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  int depth = 0;
  std::size_t slash = std::string::npos;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] == '(') ++depth;
    if (t[i] == ')') --depth;
    if (depth == 0 && t[i] == '/') {
      if (slash != std::string::npos) throw ParseError("more than one '/' in '" + t + "'");
      slash = i;
    }
  }
  auto strip = [](std::string x) {
    // drop one pair of enclosing parentheses if they match each other
    if (x.size() >= 2 && x.front() == '(' && x.back() == ')') {
      int d = 0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == '(') ++d;
        if (x[i] == ')') --d;
        if (d == 0 && i + 1 < x.size()) return x;
      }
      return x.substr(1, x.size() - 2);
    }
    return x;
  };
  if (slash == std::string::npos) return RationalFunc(PolyA::parse(F, strip(t)));
  return RationalFunc(PolyA::parse(F, strip(t.substr(0, slash))),
                      PolyA::parse(F, strip(t.substr(slash + 1))));
}

}  // namespace drinfeld
