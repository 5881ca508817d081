#include <random>

#include "doctest.h"
#include "drinfeld/drinfeld.hpp"
#include "oracles.hpp"

using namespace drinfeld;

namespace {

GF::Elem random_elem(const GF& K, std::mt19937_64& rng, bool nonzero = false) {
  std::uniform_int_distribution<std::uint64_t> pick(nonzero ? 1 : 0, K.size() - 1);
  return K.element(pick(rng));
}

DrinfeldGF random_rank2(const AField<GF>& base, std::mt19937_64& rng, bool g1_nonzero = false) {
  const GF& K = *base.field;
  return DrinfeldGF(base, {random_elem(K, rng, g1_nonzero), random_elem(K, rng, true)});
}

DrinfeldF carlitz(const Fq& F) {
  auto b = rational_afield(F);
  return DrinfeldF(b, {b.field->one()});
}

std::uint64_t qpow(std::uint64_t q, int n) {
  std::uint64_t r = 1;
  while (n-- > 0) r *= q;
  return r;
}

}  // namespace

TEST_CASE("Carlitz C_{T^2} and constants") {
  for (unsigned q : {2u, 3u}) {
    const Fq& F = Fq::of_order(q);
    auto C = carlitz(F);
    const FracField& k = C.field();
    auto T = k.T();
    SkewPoly<FracField> want(k, {T * T, T + T.pow(q), k.one()});
    CHECK(C.phi(PolyA::parse(F, "T^2")).equals(want));
    for (unsigned c = 0; c < q; ++c)
      CHECK(C.phi(PolyA::constant(F, c)).equals(SkewPoly<FracField>::monomial(k, k.from_fq(c), 0)));
  }
}

TEST_CASE("a -> phi_a is a ring homomorphism") {
  std::mt19937_64 rng(41);
  for (unsigned q : {2u, 3u}) {
    const Fq& F = Fq::of_order(q);
    auto base = residue_afield(first_irreducible(F, 3));
    for (int it = 0; it < 50; ++it) {
      auto phi = random_rank2(base, rng);
      auto a = oracle::random_poly(F, 3, rng), b = oracle::random_poly(F, 3, rng);
      CHECK(phi.phi(a + b).equals(phi.phi(a) + phi.phi(b)));
      CHECK(phi.phi(a * b).equals(phi.phi(a).compose(phi.phi(b))));
      CHECK(phi.phi(a).compose(phi.phi(b)).equals(phi.phi(b).compose(phi.phi(a))));
      if (!a.is_zero()) {
        CHECK(phi.phi(a).qdeg() == 2 * a.degree());
        CHECK(phi.phi(a).constant_term() == base.gamma(a));
      }
    }
    // over F as well
    auto fb = rational_afield(F);
    const FracField& k = *fb.field;
    DrinfeldF phi(fb, {k.T() + k.one(), RationalFunc(PolyA::constant(F, 1), PolyA::T(F))});
    for (int it = 0; it < 50; ++it) {
      auto a = oracle::random_poly(F, 2, rng), b = oracle::random_poly(F, 2, rng);
      CHECK(phi.phi(a + b).equals(phi.phi(a) + phi.phi(b)));
      CHECK(phi.phi(a * b).equals(phi.phi(a).compose(phi.phi(b))));
    }
    PolyA T = PolyA::T(F), T1 = T + PolyA::constant(F, 1);
    CHECK(phi.phi(T * T1).equals(phi.phi(T).compose(phi.phi(T1))));
    CHECK(phi.phi(T * T1).equals(phi.phi(T1).compose(phi.phi(T))));
  }
}

TEST_CASE("height") {
  std::mt19937_64 rng(43);
  for (unsigned q : {2u, 3u}) {
    const Fq& F = Fq::of_order(q);
    // phi_T = x^{q^2} over F_{q^2} with t = 0
    auto K = GF::make(first_irreducible(F, 2));
    auto base0 = finite_afield(K, K->zero());
    CHECK(*base0.characteristic == PolyA::T(F));
    DrinfeldGF ss(base0, {K->zero(), K->one()});
    CHECK(ss.height() == 2);

    for (int d = 1; d <= 3; ++d) {
      auto p = first_irreducible(F, d);
      auto base = residue_afield(p);
      DrinfeldGF C(base, {base.field->one()});
      CHECK(C.height() == 1);
      for (int it = 0; it < 5; ++it) {
        auto phi = random_rank2(base, rng, true);
        int H = phi.height();
        // at a degree-one prime phi_p = g_1 x^q + g_2 x^{q^2}, so g_1 != 0 means ordinary
        if (d == 1) CHECK(H == 1);
        CHECK((H == 1 || H == 2));
        // the p-torsion over the closure has dimension (2 - H) deg p
        CHECK(torsion_module(phi, p).dimension == (2 - H) * d);
        // Ht(phi_a) = H ord_p(a) deg p
        auto a = p * oracle::random_nonzero(F, 2, rng);
        CHECK(phi.phi(a).height() == H * ord(a, p) * p.degree());
      }
      if (d == 1) {
        DrinfeldGF s(base, {base.field->zero(), base.field->one()});
        CHECK(s.height() == 2);
      }
    }
  }
  CHECK_THROWS_AS(carlitz(Fq::of_order(2)).height(), DomainError);
}

TEST_CASE("torsion of Carlitz over A/(T^3+T+1) at T") {
  const Fq& F = Fq::of_order(2);
  auto base = residue_afield(PolyA::parse(F, "T^3+T+1"));
  DrinfeldGF C(base, {base.field->one()});
  auto res = torsion_module(C, PolyA::T(F));
  CHECK(res.dimension == 1);
  REQUIRE(res.structure.divisors.size() == 1);
  CHECK(res.structure.divisors[0] == PolyA::T(F));
  CHECK(res.structure.to_string() == "A/(T)");
}

TEST_CASE("torsion structures of random rank-2 modules") {
  std::mt19937_64 rng(47);
  for (unsigned q : {2u, 3u}) {
    const Fq& F = Fq::of_order(q);
    for (int it = 0; it < 6; ++it) {
      int dp = 1 + it % 3;
      auto p = monic_irreducibles(F, dp)[rng() % monic_irreducibles(F, dp).size()];
      auto base = residue_afield(p);
      auto phi = random_rank2(base, rng);
      PolyA a;
      do a = oracle::random_monic(F, 1 + static_cast<int>(rng() % 2), rng);
      while (ord(a, p) > 0);
      auto res = torsion_module(phi, a);
      CHECK(res.structure.divisors == std::vector<PolyA>{a, a});
      CHECK(res.structure.order() == qpow(q, 2 * a.degree()));
      for (auto& pp : res.prime_power_dims) CHECK(pp.dimension == 2 * pp.exponent * pp.prime.degree());

      // along the characteristic: (A/p^n)^{2-H}
      int H = phi.height();
      for (int n = 1; n <= (dp == 1 ? 2 : 1); ++n) {
        auto r = torsion_module(phi, p.pow(n));
        std::vector<PolyA> want(2 - H, p.pow(n));
        CHECK(r.structure.divisors == want);
        CHECK(r.dimension == (2 - H) * n * dp);
      }
    }
  }
}

TEST_CASE("torsion point count agrees with brute force") {
  std::mt19937_64 rng(53);
  const Fq& F = Fq::of_order(2);
  auto base = residue_afield(PolyA::parse(F, "T^2+T+1"));
  for (int it = 0; it < 4; ++it) {
    auto phi = random_rank2(base, rng);
    auto a = PolyA::parse(F, "T");
    auto res = torsion_module(phi, a);
    auto ext = extend(base.field, res.extension_degree / base.field->degree());
    const GF& L = *ext.field;
    REQUIRE(L.size() <= (1u << 16));
    std::vector<GF::Elem> c;
    for (auto& x : phi.phi(a).dense()) c.push_back(ext.embedding.map(x));
    SkewPoly<GF> f(L, c);
    std::uint64_t zeros = 0;
    for (std::uint64_t i = 0; i < L.size(); ++i) zeros += f.evaluate(L.element(i)).is_zero();
    CHECK(zeros == res.structure.order());
  }
}

TEST_CASE("insufficient extension is reported") {
  const Fq& F = Fq::of_order(3);
  auto base = residue_afield(PolyA::parse(F, "T^2+1"));
  const GF& K = *base.field;
  DrinfeldGF phi(base, {K.one(), K.gen()});
  auto a = PolyA::parse(F, "T^2+T+2");
  CHECK_THROWS_AS(torsion_module(phi, a, 1), PrecisionError);
}

TEST_CASE("rational torsion of Carlitz at q=2") {
  const Fq& F = Fq::of_order(2);
  auto C = carlitz(F);
  auto T = PolyA::T(F);
  auto rep = rational_torsion_search(C, -1, 4, T);
  REQUIRE(rep.points.size() == 2);
  CHECK(rep.points[0].is_zero());
  CHECK(rep.points[1] == RationalFunc(T));
  CHECK(rep.structure.divisors == std::vector<PolyA>{T});

  // without a target the full torsion {0, 1, T, T+1} appears
  auto full = rational_torsion_search(C, 3, 4);
  CHECK(full.points.size() == 4);
  CHECK(full.structure.divisors == std::vector<PolyA>{T * (T + PolyA::constant(F, 1))});
  // injective under pairs of good reductions
  CHECK(reduction_separates(full.points, full.primes_used[0], full.primes_used[1]));
  // but not at a single degree-one prime: 4 points against |T| = 2
  CHECK(full.points.size() > T.norm());
  // the prime-to-l part does fit: points of A-order prime to T+1 (those killed by T)
  CHECK(rep.points.size() <= (T + PolyA::constant(F, 1)).norm());
}

TEST_CASE("full level construction gives (A/T)^r") {
  for (unsigned q : {2u, 3u}) {
    const Fq& F = Fq::of_order(q);
    for (int r : {2, 3}) {
      if (q == 3 && r == 3) continue;
      std::vector<RationalFunc> V;
      for (int i = 0; i < r; ++i) V.emplace_back(PolyA::monomial(F, 1, i));
      auto phi = full_level_module(F, V);
      CHECK(phi.rank() == r);
      auto pT = phi.phi_T();
      for (auto& v : V) CHECK(pT.evaluate(v).is_zero());
      auto T = PolyA::T(F);
      auto rep = rational_torsion_search(phi, -1, 4, T);
      CHECK(rep.points.size() == qpow(q, r));
      CHECK(rep.structure.divisors == std::vector<PolyA>(r, T));
      for (auto& v : V) CHECK(std::find(rep.points.begin(), rep.points.end(), v) != rep.points.end());
      CHECK(reduction_separates(rep.points, rep.primes_used[0], rep.primes_used[1]));
    }
  }
}

TEST_CASE("good and bad reduction") {
  const Fq& F = Fq::of_order(3);
  auto C = carlitz(F);
  for (int d = 1; d <= 2; ++d)
    for (auto& l : monic_irreducibles(F, d)) {
      CHECK(good_reduction_at(C, l));
      CHECK(reduce_at(C, l).rank() == 1);
    }
  auto l = PolyA::parse(F, "T^2+1");
  auto b = rational_afield(F);
  const FracField& k = *b.field;
  DrinfeldF phi(b, {k.one(), RationalFunc(PolyA::constant(F, 1), l)});
  CHECK_FALSE(good_reduction_at(phi, l));
  CHECK(good_reduction_at(phi, PolyA::T(F)));
  CHECK_THROWS_AS(reduce_at(phi, l), DomainError);
  // ord_l(g_r) > 0 is bad too
  DrinfeldF psi(b, {k.one(), RationalFunc(l)});
  CHECK_FALSE(good_reduction_at(psi, l));
}

TEST_CASE("j-invariant and twists") {
  std::mt19937_64 rng(59);
  const Fq& F = Fq::of_order(3);
  auto b = rational_afield(F);
  const FracField& k = *b.field;
  DrinfeldF phi(b, {k.one(), k.one()});
  CHECK(j_invariant(phi).is_one());
  for (int it = 0; it < 10; ++it) {
    RationalFunc c(oracle::random_nonzero(F, 2, rng), oracle::random_monic(F, 1, rng));
    DrinfeldF psi(b, {RationalFunc(oracle::random_nonzero(F, 2, rng)), RationalFunc(oracle::random_nonzero(F, 2, rng))});
    auto tw = twist(psi, c);
    CHECK(j_invariant(tw) == j_invariant(psi));
    CHECK(is_isomorphism(psi, tw, c));
    auto found = isomorphism_over_F(psi, tw);
    REQUIRE(found.has_value());
    CHECK(is_isomorphism(psi, tw, *found));
  }
  // same j, no isomorphism over F: scale g_1 by a non-square unit
  DrinfeldF a(b, {k.one(), k.one()});
  DrinfeldF a2(b, {k.T(), k.T() * k.T() * k.T() * k.T()});
  CHECK(j_invariant(a) == j_invariant(a2));
  CHECK_FALSE(isomorphism_over_F(a, a2).has_value());
}

TEST_CASE("closure isomorphism agrees with j over finite A-fields") {
  std::mt19937_64 rng(61);
  for (unsigned q : {2u, 3u}) {
    const Fq& F = Fq::of_order(q);
    auto base = residue_afield(first_irreducible(F, 2));
    const GF& K = *base.field;
    auto ext = extend(base.field, static_cast<int>(q - 1));
    for (int it = 0; it < 8; ++it) {
      auto phi = random_rank2(base, rng, true);
      auto j = j_invariant(phi);
      // psi with the same j, and chi with j moved
      auto h1 = random_elem(K, rng, true);
      auto h2 = K.mul(K.mul(h1, K.frob(h1)), K.inv(j));
      DrinfeldGF psi(base, {h1, h2});
      CHECK(isomorphic_over_closure(phi, psi));
      CHECK(twist_element(phi, psi, ext.embedding).has_value());
      auto h2b = K.add(h2, K.one());
      if (K.is_zero(h2b)) continue;
      DrinfeldGF chi(base, {h1, h2b});
      if (!K.eq(j_invariant(chi), j)) {
        CHECK_FALSE(isomorphic_over_closure(phi, chi));
        CHECK_FALSE(twist_element(phi, chi, ext.embedding).has_value());
      }
    }
    // rank 1 becomes isomorphic over the degree q-1 extension
    auto e1 = extend(base.field, static_cast<int>(q - 1));
    for (int it = 0; it < 5; ++it) {
      DrinfeldGF r1(base, {random_elem(K, rng, true)}), r2(base, {random_elem(K, rng, true)});
      CHECK(twist_element(r1, r2, e1.embedding).has_value());
    }
  }
}

TEST_CASE("isomorphism is an equivalence relation") {
  std::mt19937_64 rng(67);
  const Fq& F = Fq::of_order(3);
  auto base = residue_afield(first_irreducible(F, 2));
  const GF& K = *base.field;
  auto id = GFEmbedding::identity(base.field);
  for (int it = 0; it < 10; ++it) {
    auto phi = random_rank2(base, rng, true);
    auto c1 = random_elem(K, rng, true), c2 = random_elem(K, rng, true);
    auto psi = twist(phi, c1), chi = twist(psi, c2);
    CHECK(twist_element(phi, phi, id).has_value());
    auto f = twist_element(phi, psi, id), g = twist_element(psi, phi, id), h = twist_element(phi, chi, id);
    CHECK(f.has_value());
    CHECK(g.has_value());
    CHECK(h.has_value());
    CHECK(is_isomorphism(psi, phi, K.inv(*f)));
  }
}

TEST_CASE("isogeny factorization") {
  const Fq& F = Fq::of_order(2);
  auto base = residue_afield(PolyA::parse(F, "T^3+T+1"));
  const GF& K = *base.field;
  DrinfeldGF phi(base, {K.gen(), K.one()});
  auto same = factor_isogeny(phi, SkewPoly<GF>::identity(K));
  CHECK(same.coefficients() == phi.coefficients());
  // x + t x^q: kernel {0, 1/t} is not phi_T-stable
  SkewPoly<GF> bad(K, {K.one(), K.gen()});
  CHECK_FALSE(right_divide(bad.compose(phi.phi_T()), bad).second.is_zero());
  CHECK_THROWS_WITH_AS(factor_isogeny(phi, bad), doctest::Contains("remainder"), DomainError);
  // x + x^q: kernel F_2, and phi_T(1) = 1, so this one is a submodule
  SkewPoly<GF> good(K, {K.one(), K.one()});
  auto psi = factor_isogeny(phi, good);
  CHECK(good.compose(phi.phi_T()).equals(psi.phi_T().compose(good)));
  CHECK_THROWS_AS(factor_isogeny(phi, SkewPoly<GF>::monomial(K, K.one(), 1)), DomainError);
}

TEST_CASE("X_0(T) universal relation") {
  for (unsigned q : {2u, 3u, 4u}) CHECK(x0_universal_check(Fq::of_order(q)));
}

TEST_CASE("X_0(T) numerically and the sign convention") {
  for (unsigned q : {2u, 3u}) {
    const Fq& F = Fq::of_order(q);
    auto base = residue_afield(first_irreducible(F, 3));
    const GF& K = *base.field;
    for (std::uint64_t i = 1; i < K.size(); ++i) {
      auto alpha = K.element(i);
      if (K.is_zero(K.add(base.t, alpha))) continue;
      CHECK(x0_T_instance(base, alpha));
      if (q == 3) {
        // flipping the sign of j^{-1} breaks the factorization
        auto jinv = K.mul(K.add(base.t, alpha), K.inv(K.mul(alpha, K.frob(alpha))));
        SkewPoly<GF> pT(K, {base.t, K.one(), jinv});
        SkewPoly<GF> u(K, {K.one(), K.neg(K.inv(alpha))});
        CHECK_FALSE(right_divide(pT, u).second.is_zero());
      }
    }
    CHECK_THROWS_AS(x0_T_instance(base, K.zero()), DomainError);
  }
}

TEST_CASE("X_0(T(T+1)) product relation") {
  for (unsigned q : {2u, 3u}) {
    const Fq& F = Fq::of_order(q);
    for (auto& l : monic_irreducibles(F, 3)) {
      auto rep = x0_product_relation(l, 50, 1234);
      CHECK(rep.samples == 50);
      CHECK(rep.passed == rep.samples);
      CHECK(rep.failures.empty());
    }
  }
  const Fq& F = Fq::of_order(2);
  CHECK_THROWS_AS(x0_product_relation(PolyA::T(F), 5, 1), DomainError);
}
