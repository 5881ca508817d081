#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "drinfeld/skew_poly.hpp"

namespace drinfeld {

// A field K with gamma: A -> K, T -> t. characteristic is the prime
// ker(gamma), or empty for A-characteristic zero.
template <CoefficientField K>
struct AField {
  std::shared_ptr<const K> field;
  typename K::Elem t;
  std::optional<PolyA> characteristic;

  typename K::Elem gamma(const PolyA& a) const {
    typename K::Elem r = field->zero();
    for (int i = a.degree(); i >= 0; --i) r = field->add(field->mul(r, t), field->from_fq(a[i]));
    return r;
  }
};

// A/p with t = T mod p.
AField<GF> residue_afield(const PolyA& p);
// Any finite field with a chosen image t; the characteristic is the
// minimal polynomial of t.
AField<GF> finite_afield(const GFPtr& K, const GF::Elem& t);
// F = F_q(T) with t = T.
AField<FracField> rational_afield(const Fq& F);

template <CoefficientField K>
class DrinfeldModule {
 public:
  using Elem = typename K::Elem;

  // g = (g_1, ..., g_r), g_r != 0.
  DrinfeldModule(AField<K> base, std::vector<Elem> g) : base_(std::move(base)), g_(std::move(g)) {
    if (g_.empty() || base_.field->is_zero(g_.back()))
      throw DomainError("a Drinfeld module needs rank >= 1 and nonzero top coefficient");
  }

  const AField<K>& base() const { return base_; }
  const K& field() const { return *base_.field; }
  int rank() const { return static_cast<int>(g_.size()); }
  const std::vector<Elem>& coefficients() const { return g_; }
  const Elem& g(int i) const { return g_.at(i - 1); }

  SkewPoly<K> phi_T() const {
    std::vector<Elem> d{base_.t};
    d.insert(d.end(), g_.begin(), g_.end());
    return SkewPoly<K>(field(), d);
  }
  // phi_a by Horner in phi_T.
  SkewPoly<K> phi(const PolyA& a) const {
    const K& k = field();
    SkewPoly<K> r(k);
    if (a.is_zero()) return r;
    SkewPoly<K> pT = phi_T();
    for (int i = a.degree(); i >= 0; --i) {
      r = pT.compose(r) + SkewPoly<K>::monomial(k, k.from_fq(a[i]), 0);
    }
    return r;
  }
  // H = Ht(phi_p)/deg p for the A-characteristic p.
  int height() const {
    if (!base_.characteristic) throw DomainError("height needs positive A-characteristic");
    const PolyA& p = *base_.characteristic;
    int ht = phi(p).height();
    if (ht % p.degree() != 0) throw DomainError("height not divisible by deg p");
    return ht / p.degree();
  }

  std::string to_string() const { return "phi_T = " + phi_T().to_string(); }

 private:
  AField<K> base_;
  std::vector<Elem> g_;
};

// g_1^{q+1}/g_2 for rank 2.
template <CoefficientField K>
typename K::Elem j_invariant(const DrinfeldModule<K>& phi) {
  if (phi.rank() != 2) throw DomainError("j-invariant is defined here for rank 2 only");
  const K& k = phi.field();
  auto g1 = phi.g(1);
  auto g1q = k.frob(g1);
  return k.mul(k.mul(g1q, g1), k.inv(phi.g(2)));
}

// Module with coefficients h_i = g_i c^{1-q^i}, isomorphic to phi via c.
template <CoefficientField K>
DrinfeldModule<K> twist(const DrinfeldModule<K>& phi, const typename K::Elem& c) {
  const K& k = phi.field();
  std::vector<typename K::Elem> h;
  auto cq = c;  // c^{q^i}
  for (int i = 1; i <= phi.rank(); ++i) {
    cq = k.frob(cq);
    h.push_back(k.mul(phi.g(i), k.mul(c, k.inv(cq))));
  }
  return DrinfeldModule<K>(phi.base(), h);
}

// True when g_i = h_i c^{q^i - 1} for all i.
template <CoefficientField K>
bool is_isomorphism(const DrinfeldModule<K>& phi, const DrinfeldModule<K>& psi, const typename K::Elem& c) {
  if (phi.rank() != psi.rank() || phi.field().is_zero(c)) return false;
  const K& k = phi.field();
  auto cq = c;
  for (int i = 1; i <= phi.rank(); ++i) {
    cq = k.frob(cq);
    auto e = k.mul(cq, k.inv(c));  // c^{q^i - 1}
    if (!k.eq(phi.g(i), k.mul(psi.g(i), e))) return false;
  }
  return true;
}

// Over the algebraic closure: equal j in rank 2, always in rank 1.
template <CoefficientField K>
bool isomorphic_over_closure(const DrinfeldModule<K>& phi, const DrinfeldModule<K>& psi) {
  if (phi.rank() != psi.rank()) return false;
  if (phi.rank() == 1) return true;
  if (phi.rank() == 2) return phi.field().eq(j_invariant(phi), j_invariant(psi));
  throw DomainError("closure isomorphism test implemented for rank <= 2");
}

// Returns psi with psi_T o u = u o phi_T, checking that u o phi_T is right
// divisible by u.
template <CoefficientField K>
DrinfeldModule<K> factor_isogeny(const DrinfeldModule<K>& phi, const SkewPoly<K>& u) {
  const K& k = phi.field();
  if (u.is_zero() || k.is_zero(u.constant_term()))
    throw DomainError("isogeny kernel polynomial must be separable (nonzero constant term)");
  auto [h, r] = right_divide(u.compose(phi.phi_T()), u);
  if (!r.is_zero()) throw DomainError("kernel is not a phi-submodule: remainder " + r.to_string());
  if (h.qdeg() != phi.rank()) throw DomainError("quotient has the wrong rank");
  std::vector<typename K::Elem> g;
  for (int i = 1; i <= h.qdeg(); ++i) g.push_back(h.coeff(i));
  return DrinfeldModule<K>(phi.base(), g);
}

using DrinfeldF = DrinfeldModule<FracField>;
using DrinfeldGF = DrinfeldModule<GF>;

// Elementary divisor chain d_1 | d_2 | ... (monic, nontrivial).
struct TorsionStructure {
  std::vector<PolyA> divisors;
  std::uint64_t order() const;
  std::string to_string() const;
};

struct TorsionResult {
  TorsionStructure structure;
  int extension_degree = 0;  // over the base field
  int dimension = 0;         // F_q-dimension of phi[a]
  struct PrimePowerDim {
    PolyA prime;
    int exponent;
    int dimension;  // F_q-dimension of phi[prime^exponent]
  };
  std::vector<PrimePowerDim> prime_power_dims;
};

// phi[a] over the algebraic closure; cap bounds the relative extension degree.
TorsionResult torsion_module(const DrinfeldGF& phi, const PolyA& a, int cap = 4096);

// Isomorphism element in an extension (exhaustive search over emb.dst).
std::optional<GF::Elem> twist_element(const DrinfeldGF& phi, const DrinfeldGF& psi, const GFEmbedding& emb);
DrinfeldGF base_change(const DrinfeldGF& phi, const GFEmbedding& emb);
// Over the base field F: c in F with g_i = h_i c^{q^i-1}.
std::optional<RationalFunc> isomorphism_over_F(const DrinfeldF& phi, const DrinfeldF& psi);

bool good_reduction_at(const DrinfeldF& phi, const PolyA& l);
// Reduction of a coefficient / point at l (must be l-integral).
GF::Elem reduce_mod(const RationalFunc& x, const GF& Kl);
DrinfeldGF reduce_at(const DrinfeldF& phi, const PolyA& l);

struct RationalTorsionReport {
  PolyA annihilator;                 // bound from reductions (gcd with target)
  std::vector<RationalFunc> points;  // certified torsion points, sorted
  TorsionStructure structure;
  int bound = 0;                     // degree bound B
  std::vector<PolyA> primes_used;
  std::vector<PolyA> bad_primes;
  bool closed_within_bound = true;   // generated module needed no point beyond B
};

// Torsion of phi over F killed by the annihilator bound (and by target, if
// given); complete for points of height <= B.
RationalTorsionReport rational_torsion_search(const DrinfeldF& phi, int B = -1, int prime_budget = 4,
                                              const std::optional<PolyA>& target = std::nullopt);

// True when P -> (P mod l1, P mod l2) separates all points.
bool reduction_separates(const std::vector<RationalFunc>& points, const PolyA& l1, const PolyA& l2);

// phi_T = T x prod_{0 != v in V} (1 - x/v) for V spanned by basis (F_q-independent).
DrinfeldF full_level_module(const Fq& F, const std::vector<RationalFunc>& basis);

// Universal rank-2 family phi_T = T x + x^q + j^{-1} x^{q^2}: checks over
// F(alpha) that x - alpha^{-1} x^q right-divides phi_T when
// T + alpha + j^{-1} alpha^{q+1} = 0.
bool x0_universal_check(const Fq& F);

struct X0Report {
  int samples = 0;
  int passed = 0;
  int attempts = 0;
  std::vector<std::string> failures;
};
// Sample alpha over A/l, solve for beta with equal j, and check the
// X_0(T(T+1)) relation plus both kernel factorizations.
X0Report x0_product_relation(const PolyA& l, int samples, unsigned long long seed);
// Single X_0(T) instance over a finite A-field: j from alpha, then
// x - alpha^{-1} x^q must right-divide phi_T. alpha = 0 is rejected.
bool x0_T_instance(const AField<GF>& base, const GF::Elem& alpha);

}  // namespace drinfeld
