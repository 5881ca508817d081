#include "drinfeld/drinfeld.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "drinfeld/upoly.hpp"

namespace drinfeld {

AField<GF> residue_afield(const PolyA& p) {
  if (!is_irreducible(p)) throw DomainError("not a prime: " + p.to_string());
  auto K = GF::make(p.monic());
  return AField<GF>{K, K->gen(), p.monic()};
}

AField<GF> finite_afield(const GFPtr& K, const GF::Elem& t) {
  return AField<GF>{K, t, K->minimal_polynomial(t)};
}

AField<FracField> rational_afield(const Fq& F) {
  auto K = std::make_shared<const FracField>(F);
  return AField<FracField>{K, K->T(), std::nullopt};
}

std::uint64_t TorsionStructure::order() const {
  std::uint64_t n = 1;
  for (auto& d : divisors) n *= d.norm();
  return n;
}

std::string TorsionStructure::to_string() const {
  if (divisors.empty()) return "0";
  std::string s;
  for (auto& d : divisors) {
    if (!s.empty()) s += " + ";
    s += "A/(" + d.to_string() + ")";
  }
  return s;
}

namespace {

// Coordinates of each w in terms of the F_q-independent vectors basis (all in L).
FqMatrix coordinates_in(const GF& L, const std::vector<GF::Elem>& basis, const std::vector<GF::Elem>& ws) {
  int n = L.degree(), b = static_cast<int>(basis.size()), m = static_cast<int>(ws.size());
  FqMatrix aug(L.base(), n, b + m);
  for (int j = 0; j < b; ++j) {
    auto c = L.coordinates(basis[j]);
    for (int i = 0; i < n; ++i) aug.at(i, j) = c[i];
  }
  for (int j = 0; j < m; ++j) {
    auto c = L.coordinates(ws[j]);
    for (int i = 0; i < n; ++i) aug.at(i, b + j) = c[i];
  }
  auto piv = aug.rref();
  FqMatrix out(L.base(), b, m);
  for (std::size_t r = 0; r < piv.size(); ++r) {
    if (piv[r] >= b) throw DomainError("vector outside the span of the kernel basis");
    for (int j = 0; j < m; ++j) out.at(piv[r], j) = aug.at(static_cast<int>(r), b + j);
  }
  return out;
}

FqMatrix poly_of_matrix(const PolyA& p, const FqMatrix& M) {
  const Fq& F = M.field();
  int n = M.rows();
  FqMatrix R(F, n, n);
  for (int i = p.degree(); i >= 0; --i) {
    R = R * M;
    for (int d = 0; d < n; ++d) R.at(d, d) = F.add(R.at(d, d), p[i]);
  }
  return R;
}

}  // namespace

TorsionResult torsion_module(const DrinfeldGF& phi, const PolyA& a, int cap) {
  if (a.is_zero()) throw DomainError("torsion for a = 0");
  const GF& K = phi.field();
  auto Kp = phi.base().field;
  auto fa = phi.phi(a);
  int N = splitting_degree(fa, cap);
  auto ext = extend(Kp, N / K.degree());
  const GF& L = *ext.field;
  auto basis = kernel_over(fa, ext.embedding);
  TorsionResult res;
  res.extension_degree = N;
  res.dimension = static_cast<int>(basis.size());

  int expected = phi.rank() * a.degree();
  const auto& p = *phi.base().characteristic;
  int e = ord(a, p);
  if (e > 0) expected -= phi.height() * e * p.degree();
  if (res.dimension != expected)
    throw DomainError("kernel dimension " + std::to_string(res.dimension) + " differs from expected " +
                      std::to_string(expected));
  if (basis.empty()) return res;

  // action of phi_T on the kernel
  SkewPoly<GF> pT(L, [&] {
    std::vector<GF::Elem> d;
    for (auto& c : phi.phi_T().dense()) d.push_back(ext.embedding.map(c));
    return d;
  }());
  std::vector<GF::Elem> images;
  for (auto& v : basis) images.push_back(pT.evaluate(v));
  FqMatrix M = coordinates_in(L, basis, images);
  res.structure.divisors = invariant_factors(M);

  for (auto& [P, k] : factor(a)) {
    for (int i = 1; i <= k; ++i) {
      FqMatrix Pi = poly_of_matrix(P.pow(i), M);
      res.prime_power_dims.push_back({P, i, static_cast<int>(Pi.nullspace().size())});
    }
  }
  return res;
}

DrinfeldGF base_change(const DrinfeldGF& phi, const GFEmbedding& emb) {
  AField<GF> b{emb.dst, emb.map(phi.base().t), phi.base().characteristic};
  std::vector<GF::Elem> g;
  for (auto& c : phi.coefficients()) g.push_back(emb.map(c));
  return DrinfeldGF(b, g);
}

std::optional<GF::Elem> twist_element(const DrinfeldGF& phi, const DrinfeldGF& psi, const GFEmbedding& emb) {
  if (phi.rank() != psi.rank()) return std::nullopt;
  auto a = base_change(phi, emb), b = base_change(psi, emb);
  const GF& L = *emb.dst;
  std::uint64_t n = L.size();
  if (n > (1ull << 22)) throw DomainError("twist search field too large: " + L.descriptor());
  for (std::uint64_t i = 1; i < n; ++i) {
    auto c = L.element(i);
    if (is_isomorphism(a, b, c)) return c;
  }
  return std::nullopt;
}

namespace {

// All c in F with c^k = u (u != 0).
std::vector<RationalFunc> kth_roots(const RationalFunc& u, std::uint64_t k) {
  const Fq& F = u.field();
  auto root_poly = [&](const PolyA& f, PolyA& out) {
    out = PolyA::constant(F, 1);
    if (f.degree() <= 0) return true;
    for (auto& [P, e] : factor(f)) {
      if (e % k != 0) return false;
      out = out * P.pow(e / k);
    }
    return true;
  };
  PolyA rn, rd;
  if (!root_poly(u.num(), rn) || !root_poly(u.den(), rd)) return {};
  // remaining unit: u.num = lead * rn^k
  Fq::Elem lead = u.num().lead();
  std::vector<RationalFunc> out;
  for (Fq::Elem c = 1; c < F.q(); ++c) {
    if (F.pow(c, k) == lead) out.emplace_back(rn.scaled(c), rd);
  }
  return out;
}

}  // namespace

std::optional<RationalFunc> isomorphism_over_F(const DrinfeldF& phi, const DrinfeldF& psi) {
  if (phi.rank() != psi.rank()) return std::nullopt;
  int r = phi.rank();
  for (int i = 1; i <= r; ++i)
    if (phi.g(i).is_zero() != psi.g(i).is_zero()) return std::nullopt;
  std::uint64_t q = phi.field().base().q();
  std::uint64_t k = 1;
  for (int i = 0; i < r; ++i) k *= q;
  for (auto& c : kth_roots(phi.g(r) / psi.g(r), k - 1))
    if (is_isomorphism(phi, psi, c)) return c;
  return std::nullopt;
}

bool good_reduction_at(const DrinfeldF& phi, const PolyA& l) {
  for (int i = 1; i <= phi.rank(); ++i)
    if (phi.g(i).ord(l) < 0) return false;
  return phi.g(phi.rank()).ord(l) == 0;
}

GF::Elem reduce_mod(const RationalFunc& x, const GF& Kl) {
  if (x.ord(Kl.modulus()) < 0) throw DomainError("not integral at " + Kl.modulus().to_string() + ": " + x.to_string());
  return Kl.mul(Kl.from_poly(x.num()), Kl.inv(Kl.from_poly(x.den())));
}

DrinfeldGF reduce_at(const DrinfeldF& phi, const PolyA& l) {
  if (!good_reduction_at(phi, l))
    throw DomainError("bad reduction at " + l.to_string() + " for " + phi.to_string());
  auto base = residue_afield(l);
  std::vector<GF::Elem> g;
  for (auto& c : phi.coefficients()) g.push_back(reduce_mod(c, *base.field));
  return DrinfeldGF(base, g);
}

bool reduction_separates(const std::vector<RationalFunc>& points, const PolyA& l1, const PolyA& l2) {
  auto K1 = GF::make(l1), K2 = GF::make(l2);
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  for (auto& P : points) {
    auto key = std::make_pair(K1->index(reduce_mod(P, *K1)), K2->index(reduce_mod(P, *K2)));
    if (!seen.insert(key).second) return false;
  }
  return true;
}

namespace {

struct RFHash {
  std::size_t operator()(const RationalFunc& x) const {
    return PolyAHash{}(x.num()) * 31 + PolyAHash{}(x.den());
  }
};

bool rf_less(const RationalFunc& a, const RationalFunc& b) {
  if (a.den() != b.den()) return a.den() < b.den();
  return a.num() < b.num();
}

// Prime factors of all denominators and of the numerator of g_r.
std::vector<PolyA> bad_primes_of(const DrinfeldF& phi) {
  std::set<PolyA> out;
  auto add = [&](const PolyA& f) {
    if (f.degree() <= 0) return;
    for (auto& [P, e] : factor(f)) out.insert(P);
  };
  for (auto& c : phi.coefficients()) add(c.den());
  add(phi.g(phi.rank()).num());
  return {out.begin(), out.end()};
}

// F_q-span of a point set closed under phi_T, with coordinates.
class TorsionSpan {
 public:
  TorsionSpan(const DrinfeldF& phi) : phi_(phi), F_(phi.field().base()) {
    pts_.emplace(RationalFunc(F_), std::vector<Fq::Elem>{});
  }
  bool contains(const RationalFunc& p) const { return pts_.count(p) > 0; }
  void add_generator(const RationalFunc& p) {
    if (contains(p)) return;
    basis_.push_back(p);
    std::vector<std::pair<RationalFunc, std::vector<Fq::Elem>>> fresh;
    for (auto& [x, co] : pts_) {
      for (Fq::Elem c = 1; c < F_.q(); ++c) {
        auto y = x + RationalFunc(PolyA::constant(F_, c)) * p;
        auto cy = co;
        cy.push_back(c);
        fresh.emplace_back(y, cy);
      }
    }
    for (auto& [y, cy] : fresh) pts_.emplace(y, cy);
  }
  // Adds phi_T-images until closed.
  void close() {
    auto pT = phi_.phi_T();
    for (std::size_t i = 0; i < basis_.size(); ++i) add_generator(pT.evaluate(basis_[i]));
  }
  std::vector<RationalFunc> points() const {
    std::vector<RationalFunc> out;
    for (auto& [x, c] : pts_) out.push_back(x);
    std::sort(out.begin(), out.end(), rf_less);
    return out;
  }
  TorsionStructure structure() const {
    int n = static_cast<int>(basis_.size());
    if (n == 0) return {};
    auto pT = phi_.phi_T();
    FqMatrix M(F_, n, n);
    for (int j = 0; j < n; ++j) {
      auto co = pts_.at(pT.evaluate(basis_[j]));
      for (std::size_t i = 0; i < co.size(); ++i) M.at(static_cast<int>(i), j) = co[i];
    }
    return {invariant_factors(M)};
  }

 private:
  const DrinfeldF& phi_;
  const Fq& F_;
  std::vector<RationalFunc> basis_;
  std::unordered_map<RationalFunc, std::vector<Fq::Elem>, RFHash> pts_;
};

// Monic polynomials of degree <= B supported on the given primes.
std::vector<PolyA> supported_denominators(const Fq& F, const std::vector<PolyA>& primes, int B) {
  std::vector<PolyA> out{PolyA::constant(F, 1)};
  for (auto& P : primes) {
    std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) {
      PolyA v = out[i] * P;
      while (v.degree() <= B) {
        out.push_back(v);
        v = v * P;
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

RationalTorsionReport rational_torsion_search(const DrinfeldF& phi, int B, int prime_budget,
                                              const std::optional<PolyA>& target) {
  const Fq& F = phi.field().base();
  RationalTorsionReport rep;
  rep.bad_primes = bad_primes_of(phi);
  std::set<PolyA> bad(rep.bad_primes.begin(), rep.bad_primes.end());

  // good primes in graded order
  for (int d = 1; static_cast<int>(rep.primes_used.size()) < prime_budget && d <= 12; ++d)
    for (auto& l : monic_irreducibles(F, d)) {
      if (static_cast<int>(rep.primes_used.size()) >= prime_budget) break;
      if (!bad.count(l) && good_reduction_at(phi, l)) rep.primes_used.push_back(l);
    }
  if (rep.primes_used.size() < 2)
    throw DomainError("need two good-reduction primes within the budget of " + std::to_string(prime_budget));

  // reduction at l embeds the prime-to-l torsion into the finite module over A/l
  std::vector<DrinfeldGF> red;
  std::vector<PolyA> minpolys;
  for (auto& l : rep.primes_used) {
    red.push_back(reduce_at(phi, l));
    auto& psi = red.back();
    auto M = action_matrix(psi.phi_T(), GFEmbedding::identity(psi.base().field));
    minpolys.push_back(minimal_polynomial(M));
  }
  std::set<PolyA> support;
  for (auto& m : minpolys)
    for (auto& [P, e] : factor(m)) support.insert(P);
  PolyA ann = PolyA::constant(F, 1);
  for (auto& P : support) {
    int best = INT_MAX;
    for (std::size_t i = 0; i < minpolys.size(); ++i)
      if (rep.primes_used[i] != P) best = std::min(best, ord(minpolys[i], P));
    if (best > 0 && best != INT_MAX) ann = ann * P.pow(best);
  }
  if (target) ann = gcd(ann, *target);
  rep.annihilator = ann;
  rep.bound = B >= 0 ? B : 2 * std::max(ann.degree(), 0) * phi.rank();

  TorsionSpan span(phi);
  if (ann.degree() > 0) {
    auto fa = phi.phi(ann);
    // reduced kernels for pruning
    std::vector<std::unordered_set<std::uint64_t>> allowed;
    for (auto& psi : red) {
      std::unordered_set<std::uint64_t> s;
      auto Kl = psi.base().field;
      auto basis = kernel_over(psi.phi(ann), GFEmbedding::identity(Kl));
      std::vector<GF::Elem> pts{Kl->zero()};
      for (auto& b : basis) {
        std::size_t n = pts.size();
        for (Fq::Elem c = 1; c < F.q(); ++c)
          for (std::size_t i = 0; i < n; ++i) pts.push_back(Kl->add(pts[i], b.scaled(c)));
      }
      for (auto& x : pts) s.insert(Kl->index(x));
      allowed.push_back(std::move(s));
    }
    for (auto& v : supported_denominators(F, rep.bad_primes, rep.bound)) {
      for_each_poly_upto(F, rep.bound, [&](const PolyA& u) {
        if (u.is_zero() || !gcd(u, v).is_one()) return;
        RationalFunc x(u, v);
        for (std::size_t i = 0; i < red.size(); ++i) {
          auto Kl = red[i].base().field;
          if (!allowed[i].count(Kl->index(reduce_mod(x, *Kl)))) return;
        }
        if (fa.evaluate(x).is_zero()) span.add_generator(x);
      });
    }
    std::size_t before = span.points().size();
    span.close();
    auto pts = span.points();
    rep.closed_within_bound = pts.size() == before;
  }
  rep.points = span.points();
  rep.structure = span.structure();
  return rep;
}

DrinfeldF full_level_module(const Fq& F, const std::vector<RationalFunc>& basis) {
  auto base = rational_afield(F);
  const FracField& k = *base.field;
  // subspace polynomial P_V, built one basis vector at a time
  auto P = SkewPoly<FracField>::identity(k);
  for (auto& v : basis) {
    auto pv = P.evaluate(v);
    if (pv.is_zero()) throw DomainError("basis vectors are not F_q-independent");
    auto step = SkewPoly<FracField>(k, {k.neg(pv.pow(F.q() - 1)), k.one()});
    P = step.compose(P);
  }
  auto scale = k.mul(k.T(), k.inv(P.constant_term()));
  auto pT = P.scaled(scale);
  std::vector<RationalFunc> g;
  for (int i = 1; i <= pT.qdeg(); ++i) g.push_back(pT.coeff(i));
  return DrinfeldF(base, g);
}

bool x0_universal_check(const Fq& F) {
  FracField K0(F);
  RationalFunctionField<FracField> R(K0);
  using RE = RationalFunctionField<FracField>::Elem;
  RE alpha = R.var();
  RE T = R.lift(K0.T());
  RE aq1 = R.mul(alpha, R.frob(alpha));  // alpha^{q+1}
  RE jinv = R.neg(R.mul(R.add(T, alpha), R.inv(aq1)));
  SkewPoly<RationalFunctionField<FracField>> pT(R, {T, R.one(), jinv});
  SkewPoly<RationalFunctionField<FracField>> u(R, {R.one(), R.neg(R.inv(alpha))});
  auto [h, r] = right_divide(pT, u);
  if (!r.is_zero()) return false;
  // and the T-isogeny u: u o phi_T is right divisible by u as well
  auto [h2, r2] = right_divide(u.compose(pT), u);
  return r2.is_zero() && h2.qdeg() == 2;
}

bool x0_T_instance(const AField<GF>& base, const GF::Elem& alpha) {
  const GF& K = *base.field;
  if (K.is_zero(alpha)) throw DomainError("alpha = 0 gives an inseparable kernel");
  auto ta = K.add(base.t, alpha);
  if (K.is_zero(ta)) throw DomainError("alpha = -t gives j^{-1} = 0");
  auto jinv = K.neg(K.mul(ta, K.inv(K.mul(alpha, K.frob(alpha)))));
  DrinfeldGF phi(base, {K.one(), jinv});
  SkewPoly<GF> u(K, {K.one(), K.neg(K.inv(alpha))});
  auto [h, r] = right_divide(phi.phi_T(), u);
  if (!r.is_zero()) return false;
  try {
    factor_isogeny(phi, u);
  } catch (const DomainError&) {
    return false;
  }
  return true;
}

X0Report x0_product_relation(const PolyA& l, int samples, unsigned long long seed) {
  const Fq& F = l.field();
  PolyA T = PolyA::T(F), T1 = T + PolyA::constant(F, 1);
  if (!gcd(l, T * T1).is_one()) throw DomainError("characteristic must be prime to T(T+1)");
  auto base = residue_afield(l);
  const GF& K = *base.field;
  auto t = base.t, t1 = K.add(base.t, K.one());
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(1, K.size() - 1);
  X0Report rep;
  int max_attempts = samples * 200;
  while (rep.samples < samples && rep.attempts < max_attempts) {
    ++rep.attempts;
    auto alpha = K.element(pick(rng));
    if (K.is_zero(K.add(t, alpha))) continue;
    auto jinv = K.neg(K.mul(K.add(t, alpha), K.inv(K.mul(alpha, K.frob(alpha)))));
    // beta with the same j for the (T+1)-kernel: jinv beta^{q+1} + beta + t + 1 = 0
    std::vector<GF::Elem> c(F.q() + 2, K.zero());
    c[0] = t1;
    c[1] = K.one();
    c[F.q() + 1] = jinv;
    auto roots = roots_in(K, c);
    roots.erase(std::remove_if(roots.begin(), roots.end(), [&](auto& b) { return K.is_zero(b); }), roots.end());
    if (roots.empty()) continue;
    auto beta = roots.front();
    ++rep.samples;
    auto lhs = K.mul(K.mul(alpha, K.frob(alpha)), K.inv(K.add(t, alpha)));
    auto rhs = K.mul(K.mul(beta, K.frob(beta)), K.inv(K.add(t1, beta)));
    DrinfeldGF phi(base, {K.one(), jinv});
    SkewPoly<GF> uT(K, {K.one(), K.neg(K.inv(alpha))});
    SkewPoly<GF> uT1(K, {K.one(), K.neg(K.inv(beta))});
    bool okT = right_divide(phi.phi_T(), uT).second.is_zero();
    bool okT1 = right_divide(phi.phi(T1), uT1).second.is_zero();
    if (K.eq(lhs, rhs) && okT && okT1) {
      ++rep.passed;
    } else {
      rep.failures.push_back("alpha=" + K.to_string(alpha) + " beta=" + K.to_string(beta));
    }
  }
  return rep;
}

}  // namespace drinfeld
