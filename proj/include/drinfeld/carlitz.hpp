#pragma once

#include <vector>

#include "drinfeld/drinfeld.hpp"
#include "drinfeld/laurent.hpp"

namespace drinfeld {

// Rank-1 lattice cA in F_inf-bar, kept through w = c^{q-1}; the lattice
// sums of weight divisible by q-1 only depend on w.
struct LatticeRank1 {
  LaurentSeries w;

  static LatticeRank1 from_generator(const LaurentSeries& c);
  static LatticeRank1 from_power(const LaurentSeries& w) { return {w}; }
  // The lattice A itself.
  static LatticeRank1 standard(const Fq& F, int prec);
};

// sum over monic a with deg a <= D of a^{-n}; the omitted terms have
// valuation >= n(D+1), which is the returned precision.
LaurentSeries monic_power_sum(const Fq& F, long long n, int D);

// E_n(cA) truncated to 0 != a in A with deg a <= D.
LaurentSeries eisenstein_sum(const LatticeRank1& L, long long n, int D);

// e_0..e_N of the lattice exponential from the Eisenstein recursion
// e_n = E_{q^n-1} + sum_{0<i<n} e_i E_{q^{n-i}-1}^{q^i}.
std::vector<LaurentSeries> exp_coeffs_from_eisenstein(const LatticeRank1& L, int N, int D);

// -(T^q - T) sum_{a monic, deg a <= D} a^{1-q}, approximating the (q-1)-th
// power of the Carlitz period; precision (q-1)(D+1) - q.
LaurentSeries carlitz_period_power(const Fq& F, int D);

// Exponential coefficients of phi from (t^{q^n} - t) e_n = sum_i g_i e_{n-i}^{q^i}.
template <CoefficientField K>
std::vector<typename K::Elem> exp_coeffs_from_phi(const DrinfeldModule<K>& phi, int N) {
  if (phi.base().characteristic)
    throw DomainError("exponential needs A-characteristic zero, got " + phi.base().characteristic->to_string());
  const K& k = phi.field();
  const auto& t = phi.base().t;
  std::vector<typename K::Elem> e{k.one()};
  auto tq = t;  // t^{q^n}
  for (int n = 1; n <= N; ++n) {
    tq = k.frob(tq);
    auto div = k.sub(tq, t);
    if (k.is_zero(div)) throw DomainError("t^{q^n} = t at n = " + std::to_string(n));
    auto s = k.zero();
    for (int i = 1; i <= std::min(n, phi.rank()); ++i) {
      auto x = e[n - i];
      for (int j = 0; j < i; ++j) x = k.frob(x);
      s = k.add(s, k.mul(phi.g(i), x));
    }
    e.push_back(k.mul(s, k.inv(div)));
  }
  return e;
}

// First index n <= N where e(t x) and phi_T(e(x)) differ at x^{q^n}, or -1.
template <CoefficientField K>
int functional_equation_mismatch(const DrinfeldModule<K>& phi, const std::vector<typename K::Elem>& e, int N) {
  const K& k = phi.field();
  if (static_cast<int>(e.size()) <= N) throw DomainError("exponential known only to index " + std::to_string(e.size() - 1));
  SkewPoly<K> es(k, std::vector<typename K::Elem>(e.begin(), e.begin() + N + 1));
  auto lhs = es.compose(SkewPoly<K>::monomial(k, phi.base().t, 0));
  auto rhs = phi.phi_T().compose(es);
  for (int n = 0; n <= N; ++n)
    if (!k.eq(lhs.coeff(n), rhs.coeff(n))) return n;
  return -1;
}

template <CoefficientField K>
bool functional_equation_check(const DrinfeldModule<K>& phi, const std::vector<typename K::Elem>& e, int N) {
  return functional_equation_mismatch(phi, e, N) < 0;
}

}  // namespace drinfeld
