#pragma once

#include <climits>
#include <string>
#include <string_view>

#include "drinfeld/poly_a.hpp"

namespace drinfeld {

// Element of F = F_q(T): num/den with gcd 1 and den monic.
class RationalFunc {
 public:
  RationalFunc() = default;
  explicit RationalFunc(const Fq& F) : num_(F), den_(PolyA::constant(F, 1)) {}
  RationalFunc(const PolyA& num);  // NOLINT: polynomials embed in F
  RationalFunc(const PolyA& num, const PolyA& den);

  const Fq& field() const { return den_.field(); }
  const PolyA& num() const { return num_; }
  const PolyA& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }

  // Valuation at infinity: deg den - deg num; INT_MAX for zero.
  int valuation_inf() const;
  // Exponent of the prime l.
  int ord(const PolyA& l) const;

  RationalFunc operator-() const;
  friend RationalFunc operator+(const RationalFunc& a, const RationalFunc& b);
  friend RationalFunc operator-(const RationalFunc& a, const RationalFunc& b);
  friend RationalFunc operator*(const RationalFunc& a, const RationalFunc& b);
  friend RationalFunc operator/(const RationalFunc& a, const RationalFunc& b);
  friend bool operator==(const RationalFunc& a, const RationalFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalFunc& a, const RationalFunc& b) { return !(a == b); }
  RationalFunc inv() const;
  RationalFunc frob() const { return RationalFunc(num_.frob(), den_.frob(), true); }
  RationalFunc pow(long long n) const;

  // "num" when den = 1, else "(num)/(den)".
  std::string to_string() const;
  static RationalFunc parse(const Fq& F, std::string_view s);

 private:
  RationalFunc(PolyA num, PolyA den, bool /*normalized*/) : num_(std::move(num)), den_(std::move(den)) {}
  PolyA num_, den_;
};

}  // namespace drinfeld
