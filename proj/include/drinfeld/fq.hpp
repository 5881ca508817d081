#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace drinfeld {

// The finite field F_q, q = p^e, as an interned immutable context.
// Elements are integer codes: sum c_i p^i for the coordinates c_i of the
// element in the basis 1, z, ..., z^{e-1}, where z is a root of modulus().
class FiniteField {
 public:
  using Elem = std::uint32_t;

  static const FiniteField& get(unsigned p, unsigned e);
  // q must be a prime power.
  static const FiniteField& of_order(unsigned q);

  FiniteField(const FiniteField&) = delete;
  FiniteField& operator=(const FiniteField&) = delete;

  unsigned p() const { return p_; }
  unsigned e() const { return e_; }
  unsigned q() const { return q_; }
  // Coefficients over F_p, ascending, monic of degree e. Empty when e == 1.
  const std::vector<unsigned>& modulus() const { return modulus_; }
  // "Fq(p,e,modulus)"; modulus printed as a z-polynomial or "-" when e == 1.
  std::string descriptor() const;

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem add(Elem a, Elem b) const { return add_[a * q_ + b]; }
  Elem sub(Elem a, Elem b) const { return add_[a * q_ + neg_[b]]; }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem mul(Elem a, Elem b) const { return mul_[a * q_ + b]; }
  Elem inv(Elem a) const;  // throws DomainError on 0
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t n) const;
  // Image of an integer in the prime field.
  Elem from_int(long long n) const;
  // Primitive element (generator of the unit group).
  Elem generator() const { return gen_; }
  // z^i, i < e: an F_p-basis of F_q.
  Elem basis(unsigned i) const;

  std::string to_string(Elem a) const;
  Elem parse(std::string_view s) const;

 private:
  FiniteField(unsigned p, unsigned e);
  Elem mul_slow(Elem a, Elem b) const;

  unsigned p_, e_, q_;
  std::vector<unsigned> modulus_;
  std::vector<Elem> add_, mul_, neg_, inv_;
  Elem gen_ = 1;
};

using Fq = FiniteField;

bool is_prime_u64(std::uint64_t n);

}  // namespace drinfeld
