#include "drinfeld/carlitz.hpp"

namespace drinfeld {

LatticeRank1 LatticeRank1::from_generator(const LaurentSeries& c) {
  return {c.pow(static_cast<long long>(c.field().q()) - 1)};
}

LatticeRank1 LatticeRank1::standard(const Fq& F, int prec) { return {LaurentSeries::constant(F, 1, prec)}; }

LaurentSeries monic_power_sum(const Fq& F, long long n, int D) {
  if (n < 1 || D < 0) throw DomainError("monic power sum needs n >= 1 and D >= 0");
  long long prec = n * (D + 1);
  if (prec > (1 << 20)) throw PrecisionError("monic power sum precision too large");
  int P = static_cast<int>(prec);
  LaurentSeries s(F, P);
  for (int d = 0; d <= D; ++d)
    for (auto& a : monic_polys(F, d))
      s = s + LaurentSeries::expand(RationalFunc(PolyA::constant(F, 1), a.pow(static_cast<std::uint64_t>(n))), P);
  return s;
}

LaurentSeries eisenstein_sum(const LatticeRank1& L, long long n, int D) {
  const Fq& F = L.w.field();
  long long q1 = static_cast<long long>(F.q()) - 1;
  if (n < 1) throw DomainError("Eisenstein sum needs n >= 1");
  // F_q^x-multiples cancel unless (q-1) | n
  if (n % q1 != 0) return LaurentSeries(F, static_cast<int>(n * (D + 1)));
  // sum over c in F_q^x of c^{-n} is q - 1 = -1
  LaurentSeries EA = -monic_power_sum(F, n, D);
  return EA * L.w.pow(-(n / q1));
}

std::vector<LaurentSeries> exp_coeffs_from_eisenstein(const LatticeRank1& L, int N, int D) {
  const Fq& F = L.w.field();
  long long q = F.q();
  std::vector<LaurentSeries> E(N + 1);  // E[k] = E_{q^k - 1}
  long long qk = 1;
  for (int k = 1; k <= N; ++k) {
    qk *= q;
    E[k] = eisenstein_sum(L, qk - 1, D);
  }
  std::vector<LaurentSeries> e{LaurentSeries::constant(F, 1, 1)};
  for (int n = 1; n <= N; ++n) {
    LaurentSeries s = E[n];
    for (int i = 1; i < n; ++i) {
      LaurentSeries x = E[n - i];
      for (int j = 0; j < i; ++j) x = x.frob();
      s = s + e[i] * x;
    }
    if (s.is_zero()) throw PrecisionError("e_" + std::to_string(n) + " is zero within precision; raise D");
    e.push_back(s);
  }
  // e_0 = 1 exactly; give it the precision of its neighbours for display
  e[0] = LaurentSeries::constant(F, 1, N >= 1 ? e[1].precision() : 1);
  return e;
}

LaurentSeries carlitz_period_power(const Fq& F, int D) {
  if (D < 1) throw DomainError("period approximation needs D >= 1");
  long long q = F.q();
  LaurentSeries s = monic_power_sum(F, q - 1, D);
  PolyA Tq = PolyA::monomial(F, 1, static_cast<int>(q)) - PolyA::T(F);
  int prec = static_cast<int>((q - 1) * (D + 1) - q);
  return (-(LaurentSeries::from_poly(Tq, prec) * s)).truncated(prec);
}

}  // namespace drinfeld
