#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "drinfeld/errors.hpp"
#include "drinfeld/quotient.hpp"
#include "oracles.hpp"

using namespace drinfeld;

namespace {

RationalFunc rf(const Fq& F, const char* s) { return RationalFunc::parse(F, s); }
RationalFunc cst(const Fq& F, Fq::Elem c) { return RationalFunc(PolyA::constant(F, c)); }

// Random element of GL_2(O_inf) as a matrix over F.
Mat2F random_iwahori_free_k(const Fq& F, std::mt19937_64& rng) {
  auto small = [&] {
    PolyA num = oracle::random_poly(F, 2, rng);
    PolyA den = oracle::random_monic(F, 2, rng);
    return RationalFunc(num, den);  // valuation >= 0
  };
  std::uniform_int_distribution<unsigned> unit(1, F.q() - 1);
  Mat2F up{cst(F, 1), small(), RationalFunc(F), cst(F, 1)};
  Mat2F lo{cst(F, 1), RationalFunc(F), small(), cst(F, 1)};
  Mat2F dg{cst(F, unit(rng)), RationalFunc(F), RationalFunc(F), cst(F, unit(rng))};
  return up * dg * lo;
}

Mat2F random_gl2f(const Fq& F, std::mt19937_64& rng) {
  for (;;) {
    auto r = [&] { return RationalFunc(oracle::random_poly(F, 3, rng), oracle::random_monic(F, 2, rng)); };
    Mat2F g{r(), r(), r(), r()};
    if (!g.det().is_zero()) return g;
  }
}

Mat2A random_gamma0(const PolyA& n, std::mt19937_64& rng) {
  const Fq& F = n.field();
  Mat2A g = mat2a(F, 1, 0, 0, 1);
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_int_distribution<unsigned> unit(1, F.q() - 1);
  for (int i = 0; i < 6; ++i) {
    Mat2A s = mat2a(F, 1, 0, 0, 1);
    switch (kind(rng)) {
      case 0: s.b = oracle::random_poly(F, 2, rng); break;
      case 1: s.c = n * oracle::random_poly(F, 1, rng); break;
      default: s = mat2a(F, unit(rng), 0, 0, unit(rng));
    }
    g = g * s;
  }
  return g;
}

int graph_edge(const Gamma0Quotient& Q, const QuotientGraph& G, const EdgeClass& c) {
  (void)Q;
  for (int i = 0; i < static_cast<int>(G.edges.size()); ++i)
    if (G.edges[i].level == c.level && G.edges[i].orbit == c.orbit) return i;
  return -1;
}

// prime-level genus: (q^d - q^2)/(q^2 - 1) for even d, (q^d - q)/(q^2 - 1) for odd d
long long genus_oracle(unsigned q, int d) {
  long long qd = 1;
  for (int i = 0; i < d; ++i) qd *= q;
  long long Q = q;
  return (d % 2 == 0 ? qd - Q * Q : qd - Q) / (Q * Q - 1);
}

}  // namespace

TEST_CASE("vertex normal form is invariant under GL_2(O_inf) and scalars") {
  std::mt19937_64 rng(101);
  for (unsigned q : {2u, 3u, 4u}) {
    const Fq& F = Fq::of_order(q);
    for (int it = 0; it < 40; ++it) {
      Mat2F g = random_gl2f(F, rng);
      auto v = vertex_normal_form(g);
      CHECK(vertex_normal_form(g * random_iwahori_free_k(F, rng)) == v);
      RationalFunc s(oracle::random_nonzero(F, 2, rng), oracle::random_monic(F, 1, rng));
      CHECK(vertex_normal_form(Mat2F{s * g.a, s * g.b, s * g.c, s * g.d}) == v);
      CHECK(vertex_normal_form(vertex_matrix(F, v)) == v);
      // u only has exponents < k
      CHECK((v.u.is_zero() || v.u.valuation_inf() < v.k));
      CHECK(truncate_below(v.u, v.k) == v.u);
    }
  }
}

TEST_CASE("edges: normal form round trip, reversal, local structure") {
  std::mt19937_64 rng(103);
  for (unsigned q : {2u, 3u}) {
    const Fq& F = Fq::of_order(q);
    for (int it = 0; it < 30; ++it) {
      Mat2F g = random_gl2f(F, rng);
      EdgeNF e = edge_normal_form(g);
      CHECK(edge_normal_form(edge_matrix(F, e)) == e);
      CHECK(reverse(reverse(e)) == e);
      CHECK(origin(reverse(e)) == terminus(e));
      CHECK(vertex_normal_form(g) == origin(e));
      VertexNF v = origin(e);
      auto nb = neighbors(F, v);
      CHECK(nb.size() == q + 1);
      std::set<std::string> distinct;
      for (auto& w : nb) {
        distinct.insert(w.to_string());
        auto back = neighbors(F, w);
        CHECK(std::count(back.begin(), back.end(), v) == 1);
      }
      CHECK(distinct.size() == q + 1);
      auto out = edges_from(F, v);
      REQUIRE(out.size() == q + 1);
      for (std::size_t i = 0; i < out.size(); ++i) {
        CHECK(origin(out[i]) == v);
        CHECK(terminus(out[i]) == nb[i]);
      }
    }
    // plus(k, u) goes from (k, u) to (k-1, u mod pi^{k-1})
    auto e = plus_edge(F, 3, rf(F, "(T+1)/T^2"));
    CHECK(origin(e) == VertexNF{3, rf(F, "(T+1)/T^2")});
    CHECK(terminus(e) == VertexNF{2, rf(F, "1/T")});
  }
}

TEST_CASE("GL_2(F) acts on the tree") {
  std::mt19937_64 rng(107);
  const Fq& F = Fq::of_order(3);
  for (int it = 0; it < 30; ++it) {
    Mat2F g1 = random_gl2f(F, rng), g2 = random_gl2f(F, rng);
    EdgeNF e = edge_normal_form(random_gl2f(F, rng));
    CHECK(act(g1 * g2, e) == act(g1, act(g2, e)));
    CHECK(act(g1, reverse(e)) == reverse(act(g1, e)));
    CHECK(origin(act(g1, e)) == act(g1, origin(e)));
  }
}

TEST_CASE("prime level of degree 3: Figure 1 combinatorics") {
  for (unsigned q : {2u, 3u}) {
    const Fq& F = Fq::of_order(q);
    for (auto& p : monic_irreducibles(F, 3)) {
      Gamma0Quotient Q(p);
      auto G = Q.graph();
      CHECK(G.finite_vertices().size() == 4);
      CHECK(G.finite_edges().size() == q + 3);
      CHECK(G.cusps() == 2);
      CHECK(G.genus == static_cast<int>(q));
      // genus also from the finite part alone
      CHECK(static_cast<int>(G.finite_edges().size() - G.finite_vertices().size()) + 1 == G.genus);

      // the named edges: s are on the cusp rays, the rest are the q+3 finite edges
      RationalFunc zero(F), pi = pi_power(F, 1), pi2 = pi_power(F, 2);
      std::vector<EdgeNF> finite{plus_edge(F, 2, pi), plus_edge(F, 3, pi2), plus_edge(F, 2, zero)};
      for (Fq::Elem u = 0; u < q; ++u) finite.push_back(plus_edge(F, 3, pi + cst(F, u) * pi2));
      std::set<int> seen;
      for (auto& e : finite) {
        int i = graph_edge(Q, G, Q.classify(e).cls);
        REQUIRE(i >= 0);
        CHECK_FALSE(G.on_ray[G.edges[i].from]);
        CHECK_FALSE(G.on_ray[G.edges[i].to]);
        seen.insert(i);
      }
      CHECK(seen.size() == q + 3);
      for (auto& e : {plus_edge(F, 1, zero), plus_edge(F, 3, zero)}) {
        int i = graph_edge(Q, G, Q.classify(e).cls);
        REQUIRE(i >= 0);
        CHECK((G.on_ray[G.edges[i].from] || G.on_ray[G.edges[i].to]));
      }
      // a_inf and a_1 end where d_inf starts and ends
      auto o = [&](const EdgeNF& e) {
        auto c = Q.classify(e).cls;
        int i = graph_edge(Q, G, c);
        return c.up ? G.edges[i].from : G.edges[i].to;
      };
      auto t = [&](const EdgeNF& e) { return o(reverse(e)); };
      CHECK(t(finite[0]) == t(finite[2]));
      CHECK(t(finite[0]) == o(plus_edge(F, 1, zero)));
      CHECK(t(plus_edge(F, 3, zero)) == o(finite[2]));
      CHECK(t(finite[1]) == o(finite[2]));
      for (std::size_t i = 3; i < finite.size(); ++i) {
        CHECK(o(finite[i]) == o(finite[1]));
        CHECK(t(finite[i]) == o(finite[0]));
      }
    }
  }
}

TEST_CASE("quotient genus and cusps against the prime-level formula") {
  for (unsigned q : {2u, 3u}) {
    const Fq& F = Fq::of_order(q);
    for (int d = 1; d <= (q == 2 ? 5 : 4); ++d) {
      auto primes = monic_irreducibles(F, d);
      for (std::size_t i = 0; i < std::min<std::size_t>(primes.size(), 2); ++i) {
        auto G = Gamma0Quotient(primes[i]).graph();
        CHECK(G.genus == genus_oracle(q, d));
        CHECK(G.cusps() == 2);
      }
    }
  }
  // level T: a line through the two cusps
  const Fq& F = Fq::of_order(2);
  auto G = Gamma0Quotient(PolyA::T(F)).graph();
  CHECK(G.genus == 0);
  CHECK(G.cusps() == 2);
  for (auto& v : G.vertices) {
    int deg = 0;
    for (auto& e : G.edges) deg += (e.from == &v - &G.vertices[0]) + (e.to == &v - &G.vertices[0]);
    CHECK(deg <= 2);
  }
  CHECK_THROWS_AS(Gamma0Quotient(PolyA::T(F)).graph(2), PrecisionError);
}

TEST_CASE("classification is Gamma_0(n)-invariant and witnessed") {
  std::mt19937_64 rng(109);
  for (unsigned q : {2u, 3u}) {
    const Fq& F = Fq::of_order(q);
    for (const char* ns : {"T^3+T+1", "T^2", "T^2+T"}) {
      PolyA n = PolyA::parse(F, ns);
      if (q == 3 && n.degree() == 3) n = monic_irreducibles(F, 3)[0];
      Gamma0Quotient Q(n);
      for (int it = 0; it < 25; ++it) {
        EdgeNF e = edge_normal_form(random_gl2f(F, rng));
        auto c = Q.classify(e);
        // the witness reproduces the edge
        Mat2F std_edge = c.cls.up ? edge_matrix(F, {false, c.cls.level + 1, RationalFunc(F)})
                                  : edge_matrix(F, {true, c.cls.level + 1, RationalFunc(F)});
        CHECK(edge_normal_form(to_F(c.h) * std_edge) == e);
        CHECK(Q.classify(reverse(e)).cls == EdgeClass{!c.cls.up, c.cls.level, c.cls.orbit});
        Mat2A g = random_gamma0(n, rng);
        EdgeNF ge = act(to_F(g), e);
        CHECK(Q.classify(ge).cls == c.cls);
        auto w = Q.equivalent(e, ge);
        REQUIRE(w.has_value());
        CHECK((w->c % n).is_zero());
        CHECK(w->det().degree() == 0);
        CHECK(act(to_F(*w), e) == ge);
        // representative of the class is in the class
        CHECK(Q.classify(to_F(Q.representative(c.cls))).cls == c.cls);
      }
    }
  }
}

TEST_CASE("no Gamma_0(T) element of small degree joins different classes") {
  const Fq& F = Fq::of_order(2);
  PolyA n = PolyA::T(F);
  Gamma0Quotient Q(n);
  // edges around v(1)
  std::vector<EdgeNF> ball;
  VertexNF v1{1, RationalFunc(F)};
  for (auto& e : edges_from(F, v1)) {
    ball.push_back(e);
    for (auto& f : edges_from(F, terminus(e))) ball.push_back(f);
  }
  std::vector<Mat2A> group;
  for (std::uint64_t a = 0; a < 8; ++a)
    for (std::uint64_t b = 0; b < 8; ++b)
      for (std::uint64_t c = 0; c < 4; ++c)
        for (std::uint64_t d = 0; d < 8; ++d) {
          Mat2A g{PolyA::from_code(F, a), PolyA::from_code(F, b), n * PolyA::from_code(F, c), PolyA::from_code(F, d)};
          if (g.det().degree() == 0) group.push_back(g);
        }
  REQUIRE(group.size() > 10);
  for (auto& e1 : ball)
    for (auto& e2 : ball) {
      bool same = Q.classify(e1).cls == Q.classify(e2).cls;
      bool found = false;
      for (auto& g : group)
        if (act(to_F(g), e1) == e2) {
          found = true;
          break;
        }
      if (found) CHECK(same);
      if (same) CHECK(Q.equivalent(e1, e2).has_value());
    }
}

TEST_CASE("unfolded degree: lifted stars match the quotient incidences") {
  for (unsigned q : {2u, 3u}) {
    const Fq& F = Fq::of_order(q);
    for (const char* ns : {"T^3+T+1", "T^2"}) {
      PolyA n = PolyA::parse(F, ns);
      if (q == 3 && n.degree() == 3) n = monic_irreducibles(F, 3)[0];
      Gamma0Quotient Q(n);
      auto G = Q.graph();
      for (int vi = 0; vi < static_cast<int>(G.vertices.size()); ++vi) {
        auto& V = G.vertices[vi];
        if (V.level >= G.top_level) continue;
        // count by stabilizer ratios
        mpz_class total = 0;
        std::map<int, mpz_class> expect;
        for (int ei = 0; ei < static_cast<int>(G.edges.size()); ++ei) {
          auto& E = G.edges[ei];
          if (E.from == vi) expect[ei] += V.stabilizer / E.stabilizer;
          if (E.to == vi) expect[ei] += V.stabilizer / E.stabilizer;
        }
        for (auto& [k, m] : expect) total += m;
        CHECK(total == q + 1);
        // classify the star of a lift
        int point = -1;
        for (int p = 0; p < Q.p1().size(); ++p)
          if (Q.vertex_orbit(V.level, p) == V.orbit) {
            point = p;
            break;
          }
        Mat2A h = Q.lift(point);
        VertexNF lifted = act(to_F(h), VertexNF{V.level, RationalFunc(F)});
        std::map<int, mpz_class> got;
        for (auto& e : edges_from(F, lifted)) got[graph_edge(Q, G, Q.classify(e).cls)] += 1;
        CHECK(got == expect);
      }
    }
  }
}

TEST_CASE("P^1(A/n) sizes and DOT output") {
  const Fq& F = Fq::of_order(3);
  CHECK(P1Space(PolyA::parse(F, "T^2+1")).size() == 10);
  CHECK(P1Space(PolyA::parse(F, "T^2")).size() == 12);   // |n| prod (1 + 1/|p|)
  CHECK(P1Space(PolyA::parse(F, "T^2+T")).size() == 16);
  CHECK_THROWS_AS(P1Space(PolyA::constant(F, 1)), DomainError);
  auto dot = Gamma0Quotient(PolyA::parse(F, "T^2+1")).graph().to_dot();
  CHECK(dot.find("graph quotient") == 0);
  CHECK(dot.find("--") != std::string::npos);
}
