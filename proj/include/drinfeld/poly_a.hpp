#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "drinfeld/fq.hpp"

namespace drinfeld {

// Element of A = F_q[T]. Coefficients ascending in T, no trailing zeros.
class PolyA {
 public:
  using Elem = Fq::Elem;
  // deg(0); compares below every real degree.
  static constexpr int kDegZero = std::numeric_limits<int>::min();

  PolyA() = default;  // only for containers; has no field
  explicit PolyA(const Fq& F) : F_(&F) {}
  PolyA(const Fq& F, std::vector<Elem> c);

  static PolyA constant(const Fq& F, Elem c);
  static PolyA T(const Fq& F);
  static PolyA monomial(const Fq& F, Elem c, int k);
  // Inverse of code(): base-q digits, lowest coefficient first.
  static PolyA from_code(const Fq& F, std::uint64_t code);
  // Monic polynomial of degree d whose lower coefficients have the given code.
  static PolyA monic_from_code(const Fq& F, int d, std::uint64_t code);

  const Fq& field() const { return *F_; }
  bool has_field() const { return F_ != nullptr; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  int degree() const { return c_.empty() ? kDegZero : static_cast<int>(c_.size()) - 1; }
  Elem lead() const { return c_.empty() ? 0 : c_.back(); }
  Elem operator[](int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : 0;
  }
  const std::vector<Elem>& coeffs() const { return c_; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  PolyA monic() const;
  std::uint64_t code() const;
  // |a| = q^deg a, and |0| = 0.
  std::uint64_t norm() const;

  PolyA operator-() const;
  PolyA& operator+=(const PolyA& b);
  PolyA& operator-=(const PolyA& b);
  PolyA& operator*=(const PolyA& b);
  friend PolyA operator+(PolyA a, const PolyA& b) { return a += b; }
  friend PolyA operator-(PolyA a, const PolyA& b) { return a -= b; }
  friend PolyA operator*(const PolyA& a, const PolyA& b);
  PolyA scaled(Elem c) const;
  PolyA shifted(int k) const;  // times T^k, k >= 0
  friend bool operator==(const PolyA& a, const PolyA& b) { return a.c_ == b.c_; }
  friend bool operator!=(const PolyA& a, const PolyA& b) { return a.c_ != b.c_; }
  // Graded lexicographic order: by degree, then coefficients from the top.
  friend bool operator<(const PolyA& a, const PolyA& b);

  Elem eval(Elem x) const;
  PolyA derivative() const;
  // a^q, which over F_q is sum c_i T^{qi}.
  PolyA frob() const;
  PolyA pow(std::uint64_t n) const;
  // Substitute T -> v (v a polynomial).
  PolyA compose(const PolyA& v) const;

  std::string to_string() const;
  static PolyA parse(const Fq& F, std::string_view s);

 private:
  void trim();
  const Fq* F_ = nullptr;
  std::vector<Elem> c_;
};

struct PolyAHash {
  std::size_t operator()(const PolyA& a) const {
    std::size_t h = 1469598103934665603ull;
    for (auto c : a.coeffs()) h = (h ^ c) * 1099511628211ull;
    return h;
  }
};

// Division with remainder: a = s*b + r, deg r < deg b.
std::pair<PolyA, PolyA> divmod(const PolyA& a, const PolyA& b);
PolyA operator/(const PolyA& a, const PolyA& b);  // exact quotient part
PolyA operator%(const PolyA& a, const PolyA& b);
PolyA gcd(const PolyA& a, const PolyA& b);  // monic, gcd(0,0) = 0
// Returns (g, s, t) with s*a + t*b = g monic.
struct XGcd {
  PolyA g, s, t;
};
XGcd xgcd(const PolyA& a, const PolyA& b);
PolyA lcm(const PolyA& a, const PolyA& b);
PolyA mulmod(const PolyA& a, const PolyA& b, const PolyA& m);
PolyA powmod(const PolyA& a, const mpz_class& n, const PolyA& m);
PolyA powmod(const PolyA& a, std::uint64_t n, const PolyA& m);
// Inverse of a modulo m; throws DomainError if not a unit.
PolyA invmod(const PolyA& a, const PolyA& m);

bool is_irreducible(const PolyA& f);
// Monic irreducibles of degree d in graded lexicographic order.
std::vector<PolyA> monic_irreducibles(const Fq& F, int d);
// Monic polynomials of degree d, same order.
std::vector<PolyA> monic_polys(const Fq& F, int d);
// Calls fn on every polynomial of degree <= d (including 0), in code order.
void for_each_poly_upto(const Fq& F, int d, const std::function<void(const PolyA&)>& fn);
// Monic prime factorization, primes sorted; the unit leading coefficient is dropped.
std::vector<std::pair<PolyA, int>> factor(const PolyA& f);
// Exponent of the prime l in a (a != 0).
int ord(const PolyA& a, const PolyA& l);
bool is_squarefree(const PolyA& f);
// Monic divisors of a (sorted).
std::vector<PolyA> monic_divisors(const PolyA& a);

}  // namespace drinfeld
