#pragma once

#include <concepts>
#include <string>

#include "drinfeld/gf.hpp"
#include "drinfeld/laurent.hpp"
#include "drinfeld/rational.hpp"

namespace drinfeld {

// Coefficient field for skew polynomials: field operations plus the
// q-th power map (q = order of the constant field F_q).
template <class K>
concept CoefficientField = requires(const K& k, const typename K::Elem& a) {
  { k.zero() } -> std::convertible_to<typename K::Elem>;
  { k.one() } -> std::convertible_to<typename K::Elem>;
  { k.add(a, a) } -> std::convertible_to<typename K::Elem>;
  { k.sub(a, a) } -> std::convertible_to<typename K::Elem>;
  { k.neg(a) } -> std::convertible_to<typename K::Elem>;
  { k.mul(a, a) } -> std::convertible_to<typename K::Elem>;
  { k.inv(a) } -> std::convertible_to<typename K::Elem>;
  { k.is_zero(a) } -> std::convertible_to<bool>;
  { k.eq(a, a) } -> std::convertible_to<bool>;
  { k.frob(a) } -> std::convertible_to<typename K::Elem>;
  { k.from_fq(Fq::Elem{}) } -> std::convertible_to<typename K::Elem>;
  { k.to_string(a) } -> std::convertible_to<std::string>;
  { k.base() } -> std::convertible_to<const Fq&>;
};

// F = F_q(T).
class FracField {
 public:
  using Elem = RationalFunc;
  explicit FracField(const Fq& F) : F_(&F) {}
  const Fq& base() const { return *F_; }
  Elem zero() const { return RationalFunc(*F_); }
  Elem one() const { return RationalFunc(PolyA::constant(*F_, 1)); }
  Elem T() const { return RationalFunc(PolyA::T(*F_)); }
  Elem from_fq(Fq::Elem c) const { return RationalFunc(PolyA::constant(*F_, c)); }
  Elem from_poly(const PolyA& a) const { return RationalFunc(a); }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inv(const Elem& a) const { return a.inv(); }
  Elem div(const Elem& a, const Elem& b) const { return a / b; }
  bool is_zero(const Elem& a) const { return a.is_zero(); }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  Elem frob(const Elem& a) const { return a.frob(); }
  std::string to_string(const Elem& a) const { return a.to_string(); }
  std::string descriptor() const { return "F(" + F_->descriptor() + ")"; }

 private:
  const Fq* F_;
};

// F_inf = F_q((1/T)) at a working precision: constants are created with
// absolute precision `prec` and results never claim more than that.
class LaurentField {
 public:
  using Elem = LaurentSeries;
  LaurentField(const Fq& F, int prec) : F_(&F), prec_(prec) {}
  const Fq& base() const { return *F_; }
  int precision() const { return prec_; }
  Elem zero() const { return LaurentSeries(*F_, prec_); }
  Elem one() const { return LaurentSeries::constant(*F_, 1, prec_); }
  Elem from_fq(Fq::Elem c) const { return LaurentSeries::constant(*F_, c, prec_); }
  Elem from_poly(const PolyA& a) const { return LaurentSeries::from_poly(a, prec_); }
  Elem from_rational(const RationalFunc& x) const { return LaurentSeries::expand(x, prec_); }
  Elem add(const Elem& a, const Elem& b) const { return cap(a + b); }
  Elem sub(const Elem& a, const Elem& b) const { return cap(a - b); }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return cap(a * b); }
  Elem inv(const Elem& a) const { return cap(a.inv()); }
  Elem div(const Elem& a, const Elem& b) const { return cap(a / b); }
  // Zero within precision.
  bool is_zero(const Elem& a) const { return a.is_zero(); }
  // Equal on every coefficient both sides know.
  bool eq(const Elem& a, const Elem& b) const { return a.agrees_with(b); }
  Elem frob(const Elem& a) const { return cap(a.frob()); }
  std::string to_string(const Elem& a) const { return a.to_string(); }

 private:
  Elem cap(const Elem& a) const { return a.precision() > prec_ ? a.truncated(prec_) : a; }
  const Fq* F_;
  int prec_;
};

static_assert(CoefficientField<GF>);
static_assert(CoefficientField<FracField>);
static_assert(CoefficientField<LaurentField>);

}  // namespace drinfeld
