#include "drinfeld/bt_tree.hpp"

#include <utility>

#include "drinfeld/errors.hpp"
#include "drinfeld/laurent.hpp"

namespace drinfeld {

Mat2F to_F(const Mat2A& m) { return {m.a, m.b, m.c, m.d}; }

Mat2A clear_denominators(const Mat2F& m) {
  PolyA l = lcm(lcm(m.a.den(), m.b.den()), lcm(m.c.den(), m.d.den()));
  auto f = [&](const RationalFunc& x) { return x.num() * (l / x.den()); };
  return {f(m.a), f(m.b), f(m.c), f(m.d)};
}

Mat2A inverse_gl2a(const Mat2A& m) {
  PolyA det = m.det();
  if (det.degree() != 0) throw DomainError("matrix is not in GL_2(A): det " + det.to_string());
  Fq::Elem di = det.field().inv(det.lead());
  auto adj = m.adj();
  return {adj.a.scaled(di), adj.b.scaled(di), adj.c.scaled(di), adj.d.scaled(di)};
}

Mat2A mat2a(const Fq& F, Fq::Elem a, Fq::Elem b, Fq::Elem c, Fq::Elem d) {
  return {PolyA::constant(F, a), PolyA::constant(F, b), PolyA::constant(F, c), PolyA::constant(F, d)};
}

std::string to_string(const Mat2A& m) {
  return "[" + m.a.to_string() + ", " + m.b.to_string() + "; " + m.c.to_string() + ", " + m.d.to_string() + "]";
}
std::string to_string(const Mat2F& m) {
  return "[" + m.a.to_string() + ", " + m.b.to_string() + "; " + m.c.to_string() + ", " + m.d.to_string() + "]";
}

std::string VertexNF::to_string() const { return "(" + std::to_string(k) + ", " + u.to_string() + ")"; }
std::string EdgeNF::to_string() const {
  return std::string(plus ? "+" : "-") + "(" + std::to_string(k) + ", " + u.to_string() + ")";
}

RationalFunc pi_power(const Fq& F, int k) { return RationalFunc(PolyA::T(F)).pow(-k); }

RationalFunc truncate_below(const RationalFunc& x, int k) {
  const Fq& F = x.field();
  if (x.is_zero() || x.valuation_inf() >= k) return RationalFunc(F);
  auto s = LaurentSeries::expand(x, k);
  int v = s.valuation();
  int M = std::max(0, k - 1);
  std::vector<Fq::Elem> c(static_cast<std::size_t>(M - v + 1), 0);
  for (int j = v; j < k; ++j) c[static_cast<std::size_t>(M - j)] = s.coeff(j);
  return RationalFunc(PolyA(F, c), PolyA::monomial(F, 1, M));
}

VertexNF vertex_normal_form(const Mat2F& g0) {
  Mat2F g = g0;
  if (g.det().is_zero()) throw DomainError("singular matrix has no vertex");
  if (!g.c.is_zero() && (g.d.is_zero() || g.c.valuation_inf() < g.d.valuation_inf())) {
    std::swap(g.a, g.b);
    std::swap(g.c, g.d);
  }
  RationalFunc a1 = g.a - g.b * g.c / g.d;
  RationalFunc x = a1 / g.d;
  int k = x.valuation_inf();
  return {k, truncate_below(g.b / g.d, k)};
}

Mat2F vertex_matrix(const Fq& F, const VertexNF& v) {
  return {pi_power(F, v.k), v.u, RationalFunc(F), RationalFunc(PolyA::constant(F, 1))};
}

VertexNF parent(const VertexNF& v) { return {v.k - 1, truncate_below(v.u, v.k - 1)}; }

EdgeNF plus_edge(const Fq& F, int k, const RationalFunc& u) {
  (void)F;
  return {true, k, truncate_below(u, k)};
}

EdgeNF edge_normal_form(const Mat2F& g) {
  const Fq& F = g.a.is_zero() ? g.b.field() : g.a.field();
  RationalFunc zero(F), one(PolyA::constant(F, 1)), T(PolyA::T(F));
  VertexNF o = vertex_normal_form(g);
  VertexNF t = vertex_normal_form(g * Mat2F{T, zero, zero, one});
  if (t == parent(o)) return {true, o.k, o.u};
  if (o == parent(t)) return {false, t.k, t.u};
  throw DomainError("edge endpoints are not adjacent");
}

Mat2F edge_matrix(const Fq& F, const EdgeNF& e) {
  Mat2F p = vertex_matrix(F, {e.k, e.u});
  if (e.plus) return p;
  RationalFunc zero(F), one(PolyA::constant(F, 1));
  return p * Mat2F{zero, one, pi_power(F, 1), zero};
}

EdgeNF reverse(const EdgeNF& e) { return {!e.plus, e.k, e.u}; }

VertexNF origin(const EdgeNF& e) {
  VertexNF v{e.k, e.u};
  return e.plus ? v : parent(v);
}
VertexNF terminus(const EdgeNF& e) {
  VertexNF v{e.k, e.u};
  return e.plus ? parent(v) : v;
}

std::vector<VertexNF> neighbors(const Fq& F, const VertexNF& v) {
  std::vector<VertexNF> out{parent(v)};
  for (Fq::Elem c = 0; c < F.q(); ++c)
    out.push_back({v.k + 1, v.u + RationalFunc(PolyA::constant(F, c)) * pi_power(F, v.k)});
  return out;
}

std::vector<EdgeNF> edges_from(const Fq& F, const VertexNF& v) {
  std::vector<EdgeNF> out{{true, v.k, v.u}};
  for (auto& w : neighbors(F, v))
    if (w.k == v.k + 1) out.push_back({false, w.k, w.u});
  return out;
}

VertexNF act(const Mat2F& g, const VertexNF& v) {
  return vertex_normal_form(g * vertex_matrix(g.a.is_zero() ? g.b.field() : g.a.field(), v));
}
EdgeNF act(const Mat2F& g, const EdgeNF& e) {
  return edge_normal_form(g * edge_matrix(g.a.is_zero() ? g.b.field() : g.a.field(), e));
}

}  // namespace drinfeld
