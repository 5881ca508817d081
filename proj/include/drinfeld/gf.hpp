#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "drinfeld/fq_matrix.hpp"
#include "drinfeld/poly_a.hpp"

namespace drinfeld {

// Finite field F_q[X]/(h), h monic irreducible. Used both as A/p (h = p,
// the image of T being X) and as extensions of such fields.
class GF {
 public:
  using Elem = PolyA;

  static std::shared_ptr<const GF> make(const PolyA& h);
  GF(const GF&) = delete;
  GF& operator=(const GF&) = delete;

  const Fq& base() const { return h_.field(); }
  const PolyA& modulus() const { return h_; }
  int degree() const { return h_.degree(); }
  // q^degree; throws DomainError when it does not fit in 63 bits.
  std::uint64_t size() const;
  std::string descriptor() const;

  Elem zero() const { return PolyA(base()); }
  Elem one() const { return PolyA::constant(base(), 1); }
  Elem gen() const { return PolyA::T(base()) % h_; }
  Elem from_fq(Fq::Elem c) const { return PolyA::constant(base(), c); }
  Elem from_poly(const PolyA& a) const { return a % h_; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return (a * b) % h_; }
  Elem inv(const Elem& a) const;
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
  bool is_zero(const Elem& a) const { return a.is_zero(); }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  Elem pow(const Elem& a, std::uint64_t n) const { return powmod(a, n, h_); }
  Elem frob(const Elem& a) const;  // a^q
  Elem frob_n(const Elem& a, int n) const;
  std::string to_string(const Elem& a) const { return a.to_string(); }

  std::vector<Fq::Elem> coordinates(const Elem& a) const;
  Elem from_coordinates(const std::vector<Fq::Elem>& c) const { return PolyA(base(), c); }
  // Dense enumeration: element with index i has coordinates = base-q digits of i.
  Elem element(std::uint64_t i) const { return PolyA::from_code(base(), i); }
  std::uint64_t index(const Elem& a) const { return a.code(); }

  // Matrix of x -> x^q on coordinates (computed once, thread-safe).
  const FqMatrix& frobenius_matrix() const;
  // F_q-basis of the subfield of degree d (d | degree()).
  std::vector<Elem> subfield_basis(int d) const;
  // Minimal polynomial of a over F_q.
  PolyA minimal_polynomial(const Elem& a) const;

 private:
  explicit GF(const PolyA& h);
  PolyA h_;
  mutable std::once_flag frob_once_;
  mutable std::unique_ptr<FqMatrix> frob_;
};

using GFPtr = std::shared_ptr<const GF>;

// Field embedding src -> dst determined by the image of X.
struct GFEmbedding {
  GFPtr src, dst;
  PolyA image;
  GF::Elem map(const GF::Elem& a) const;
  static GFEmbedding identity(const GFPtr& K);
};

// Degree-m extension of K with the embedding K -> K'.
struct GFExtension {
  GFPtr field;
  GFEmbedding embedding;
};
GFExtension extend(const GFPtr& K, int m);
// First monic irreducible of degree d over F_q in graded lexicographic order.
PolyA first_irreducible(const Fq& F, int d);

// All roots in K of the polynomial sum c_i Y^i (coefficients in K), by
// exhaustive search; K must have at most 2^22 elements.
std::vector<GF::Elem> roots_in(const GF& K, const std::vector<GF::Elem>& c);

}  // namespace drinfeld
