#pragma once

#include <string>
#include <utility>
#include <vector>

#include "drinfeld/errors.hpp"
#include "drinfeld/fields.hpp"

namespace drinfeld {

// Univariate polynomial in an auxiliary variable over a coefficient field K.
template <CoefficientField K>
class UPoly {
 public:
  using Elem = typename K::Elem;
  UPoly() = default;
  explicit UPoly(const K& k) : k_(&k) {}
  UPoly(const K& k, std::vector<Elem> c) : k_(&k), c_(std::move(c)) { trim(); }
  static UPoly constant(const K& k, const Elem& c) { return UPoly(k, {c}); }
  static UPoly var(const K& k) { return UPoly(k, {k.zero(), k.one()}); }

  const K& field() const { return *k_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return c_.empty() ? -1 : static_cast<int>(c_.size()) - 1; }
  const Elem& lead() const { return c_.back(); }
  const std::vector<Elem>& coeffs() const { return c_; }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    const K& k = a.k_ ? *a.k_ : *b.k_;
    std::vector<Elem> r(std::max(a.c_.size(), b.c_.size()), k.zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] = k.add(r[i], b.c_[i]);
    return UPoly(k, std::move(r));
  }
  UPoly operator-() const {
    UPoly r(*this);
    for (auto& x : r.c_) x = k_->neg(x);
    return r;
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    const K& k = a.k_ ? *a.k_ : *b.k_;
    if (a.is_zero() || b.is_zero()) return UPoly(k);
    std::vector<Elem> r(a.c_.size() + b.c_.size() - 1, k.zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = k.add(r[i + j], k.mul(a.c_[i], b.c_[j]));
    return UPoly(k, std::move(r));
  }
  UPoly scaled(const Elem& s) const {
    UPoly r(*this);
    for (auto& x : r.c_) x = k_->mul(x, s);
    r.trim();
    return r;
  }
  UPoly monic() const { return is_zero() ? *this : scaled(k_->inv(lead())); }
  bool equals(const UPoly& b) const { return (*this - b).is_zero(); }

  // Coefficients raised to the q-th power and the variable to its q-th power.
  UPoly frob() const {
    if (is_zero()) return *this;
    unsigned q = k_->base().q();
    std::vector<Elem> r((c_.size() - 1) * q + 1, k_->zero());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i * q] = k_->frob(c_[i]);
    return UPoly(*k_, std::move(r));
  }

  std::string to_string(const std::string& var = "a") const {
    if (c_.empty()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
      if (k_->is_zero(c_[i])) continue;
      if (!out.empty()) out += " + ";
      std::string cs = "(" + k_->to_string(c_[i]) + ")";
      out += i == 0 ? cs : cs + "*" + var + (i > 1 ? "^" + std::to_string(i) : "");
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && k_->is_zero(c_.back())) c_.pop_back();
  }
  const K* k_ = nullptr;
  std::vector<Elem> c_;
};

template <CoefficientField K>
std::pair<UPoly<K>, UPoly<K>> divmod(const UPoly<K>& a, const UPoly<K>& b) {
  if (b.is_zero()) throw DomainError("division by zero polynomial");
  const K& k = b.field();
  std::vector<typename K::Elem> r = a.coeffs();
  int db = b.degree();
  if (a.degree() < db) return {UPoly<K>(k), a};
  std::vector<typename K::Elem> q(a.degree() - db + 1, k.zero());
  auto inv = k.inv(b.lead());
  for (int i = a.degree(); i >= db; --i) {
    auto c = k.mul(r[i], inv);
    q[i - db] = c;
    for (int j = 0; j <= db; ++j) r[i - db + j] = k.sub(r[i - db + j], k.mul(c, b.coeffs()[j]));
  }
  r.resize(db);
  return {UPoly<K>(k, q), UPoly<K>(k, r)};
}

template <CoefficientField K>
UPoly<K> gcd(UPoly<K> a, UPoly<K> b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// K(a): rational functions in one variable over K, reduced with monic
// denominator.
template <CoefficientField K>
class RationalFunctionField {
 public:
  struct Elem {
    UPoly<K> num, den;
  };
  explicit RationalFunctionField(const K& k) : k_(&k) {}
  const K& coefficients() const { return *k_; }
  const Fq& base() const { return k_->base(); }

  Elem make(const UPoly<K>& n, const UPoly<K>& d) const {
    if (d.is_zero()) throw DomainError("zero denominator");
    if (n.is_zero()) return zero();
    UPoly<K> g = gcd(n, d);
    UPoly<K> nn = divmod(n, g).first, dd = divmod(d, g).first;
    auto inv = k_->inv(dd.lead());
    return {nn.scaled(inv), dd.scaled(inv)};
  }
  Elem var() const { return {UPoly<K>::var(*k_), UPoly<K>::constant(*k_, k_->one())}; }
  Elem lift(const typename K::Elem& c) const {
    return make(UPoly<K>::constant(*k_, c), UPoly<K>::constant(*k_, k_->one()));
  }
  Elem zero() const { return {UPoly<K>(*k_), UPoly<K>::constant(*k_, k_->one())}; }
  Elem one() const { return lift(k_->one()); }
  Elem from_fq(Fq::Elem c) const { return lift(k_->from_fq(c)); }
  Elem add(const Elem& a, const Elem& b) const { return make(a.num * b.den + b.num * a.den, a.den * b.den); }
  Elem sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }
  Elem neg(const Elem& a) const { return {-a.num, a.den}; }
  Elem mul(const Elem& a, const Elem& b) const { return make(a.num * b.num, a.den * b.den); }
  Elem inv(const Elem& a) const {
    if (a.num.is_zero()) throw DomainError("inverse of zero");
    return make(a.den, a.num);
  }
  bool is_zero(const Elem& a) const { return a.num.is_zero(); }
  bool eq(const Elem& a, const Elem& b) const { return is_zero(sub(a, b)); }
  Elem frob(const Elem& a) const { return {a.num.frob(), a.den.frob()}; }
  std::string to_string(const Elem& a) const {
    return "[" + a.num.to_string() + "]/[" + a.den.to_string() + "]";
  }

 private:
  const K* k_;
};

}  // namespace drinfeld
