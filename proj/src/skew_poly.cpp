#include "drinfeld/skew_poly.hpp"

#include <numeric>

namespace drinfeld {

// Separable part s with f = s^{(q^h)} o x^{q^h}: same roots as f.
SkewPoly<GF> separable_part(const SkewPoly<GF>& f) {
  const GF& K = f.field();
  int h = f.height();
  int k = K.degree();
  int back = ((k - h % k) % k);  // inverse of frob^h on K
  std::vector<GF::Elem> d;
  for (int i = h; i <= f.qdeg(); ++i) d.push_back(K.frob_n(f.coeff(i), back));
  return SkewPoly<GF>(K, d);
}


FqMatrix action_matrix(const SkewPoly<GF>& f, const GFEmbedding& emb) {
  const GF& L = *emb.dst;
  int n = L.degree();
  std::vector<std::pair<int, GF::Elem>> mapped;
  for (auto& [i, c] : f.terms()) mapped.emplace_back(i, emb.map(c));
  FqMatrix M(L.base(), n, n);
  for (int j = 0; j < n; ++j) {
    GF::Elem x = PolyA::monomial(L.base(), 1, j) % L.modulus();
    GF::Elem v = L.zero(), p = x;
    int level = 0;
    for (auto& [i, c] : mapped) {
      while (level < i) {
        p = L.frob(p);
        ++level;
      }
      v = L.add(v, L.mul(c, p));
    }
    auto col = L.coordinates(v);
    for (int r = 0; r < n; ++r) M.at(r, j) = col[r];
  }
  return M;
}

std::vector<GF::Elem> kernel_over(const SkewPoly<GF>& f, const GFEmbedding& emb) {
  std::vector<GF::Elem> out;
  for (auto& v : action_matrix(f, emb).nullspace()) out.push_back(emb.dst->from_coordinates(v));
  return out;
}

int splitting_degree(const SkewPoly<GF>& f, int cap) {
  if (f.is_zero()) throw DomainError("splitting degree of the zero polynomial");
  const GF& K = f.field();
  SkewPoly<GF> s = separable_part(f);
  int d = K.degree();
  if (s.qdeg() == 0) return d;
  // r_n = x^{q^n} mod_right s; the roots lie in F_{q^n} iff r_n = x.
  auto x = SkewPoly<GF>::identity(K);
  auto tau = SkewPoly<GF>::monomial(K, K.one(), 1);
  SkewPoly<GF> r = x;
  long long limit = static_cast<long long>(cap) * d;
  for (long long n = 1; n <= limit; ++n) {
    r = right_divide(tau.compose(r), s).second;
    if (r.equals(x)) {
      long long N = std::lcm(n, static_cast<long long>(d));
      if (N / d > cap) break;
      return static_cast<int>(N);
    }
  }
  throw PrecisionError("insufficient extension: roots do not split within relative degree " + std::to_string(cap));
}

}  // namespace drinfeld
