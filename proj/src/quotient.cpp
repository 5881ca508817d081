#include "drinfeld/quotient.hpp"

#include <deque>
#include <sstream>

#include "drinfeld/errors.hpp"

namespace drinfeld {

namespace {

mpz_class upow(unsigned q, int k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), q, static_cast<unsigned long>(k));
  return r;
}

Mat2A identity2(const Fq& F) { return mat2a(F, 1, 0, 0, 1); }

}  // namespace

P1Space::P1Space(const PolyA& n) : R_(n) {
  if (n.degree() < 1 || !n.is_monic()) throw DomainError("level must be monic of positive degree");
  std::uint64_t N = R_.size();
  std::vector<PolyA> units;
  for (std::uint64_t i = 1; i < N; ++i)
    if (R_.is_unit(R_.element(i))) units.push_back(R_.element(i));
  lookup_.assign(N * N, -1);
  for (std::uint64_t xi = 0; xi < N; ++xi)
    for (std::uint64_t yi = 0; yi < N; ++yi) {
      if (lookup_[xi * N + yi] >= 0) continue;
      PolyA x = R_.element(xi), y = R_.element(yi);
      if (!gcd(gcd(x, y), n).is_one()) continue;
      int id = static_cast<int>(points_.size());
      points_.emplace_back(x, y);
      for (auto& u : units) lookup_[R_.mul(u, x).code() * N + R_.mul(u, y).code()] = id;
    }
}

int P1Space::index(const PolyA& x, const PolyA& y) const {
  std::uint64_t N = R_.size();
  int id = lookup_[R_.reduce(x).code() * N + R_.reduce(y).code()];
  if (id < 0) throw DomainError("(" + x.to_string() + " : " + y.to_string() + ") is not in P^1(A/n)");
  return id;
}

int P1Space::act(int i, const Mat2A& g) const {
  auto& [x, y] = points_[i];
  return index(x * g.a + y * g.c, x * g.b + y * g.d);
}

std::string EdgeClass::to_string() const {
  return std::string(up ? "up" : "down") + "(" + std::to_string(level) + "," + std::to_string(orbit) + ")";
}

Gamma0Quotient::Gamma0Quotient(const PolyA& n) : n_(n), P_(std::make_shared<P1Space>(n)) {
  stable_ = n.degree() + 1;
  for (int k = 0; k <= stable_; ++k) {
    edge_orbits_.push_back(compute_orbits(k, false));
    vertex_orbits_.push_back(k == 0 ? compute_orbits(0, true) : edge_orbits_.back());
  }
}

Gamma0Quotient::Orbits Gamma0Quotient::compute_orbits(int k, bool vertex_group) const {
  const Fq& F = field();
  std::vector<Mat2A> gens;
  Fq::Elem g = F.generator();
  gens.push_back(mat2a(F, g, 0, 0, 1));
  gens.push_back(mat2a(F, 1, 0, 0, g));
  for (unsigned b = 0; b < F.e(); ++b)
    for (int i = 0; i <= k; ++i) {
      Mat2A m = identity2(F);
      m.c = PolyA::monomial(F, F.basis(b), i);
      gens.push_back(m);
    }
  if (vertex_group) gens.push_back(mat2a(F, 0, 1, 1, 0));

  Orbits o;
  int N = P_->size();
  o.of.assign(N, -1);
  o.witness.assign(N, Mat2A{});
  for (int s = 0; s < N; ++s) {
    if (o.of[s] >= 0) continue;
    int id = static_cast<int>(o.rep.size());
    o.rep.push_back(s);
    o.size.push_back(0);
    o.of[s] = id;
    o.witness[s] = identity2(F);
    std::deque<int> queue{s};
    while (!queue.empty()) {
      int p = queue.front();
      queue.pop_front();
      ++o.size[id];
      for (auto& gen : gens) {
        int t = P_->act(p, gen);
        if (o.of[t] >= 0) continue;
        o.of[t] = id;
        o.witness[t] = o.witness[p] * gen;
        queue.push_back(t);
      }
    }
  }
  return o;
}

int Gamma0Quotient::edge_orbit_count(int k) const { return static_cast<int>(edges_at(k).rep.size()); }
int Gamma0Quotient::edge_orbit(int k, int point) const { return edges_at(k).of[point]; }
int Gamma0Quotient::edge_orbit_size(int k, int orbit) const { return edges_at(k).size[orbit]; }
int Gamma0Quotient::edge_orbit_rep(int k, int orbit) const { return edges_at(k).rep[orbit]; }
int Gamma0Quotient::vertex_orbit_count(int k) const { return static_cast<int>(vertices_at(k).rep.size()); }
int Gamma0Quotient::vertex_orbit(int k, int point) const { return vertices_at(k).of[point]; }
int Gamma0Quotient::vertex_orbit_size(int k, int orbit) const { return vertices_at(k).size[orbit]; }

mpz_class Gamma0Quotient::edge_group_order(int k) const {
  unsigned q = field().q();
  return mpz_class((q - 1) * (q - 1)) * upow(q, k + 1);
}
mpz_class Gamma0Quotient::vertex_group_order(int k) const {
  unsigned q = field().q();
  if (k == 0) return mpz_class(q * q - 1) * mpz_class(q * q - q);
  return edge_group_order(k);
}
mpz_class Gamma0Quotient::edge_stabilizer(int k, int orbit) const {
  return edge_group_order(k) / edge_orbit_size(k, orbit);
}
mpz_class Gamma0Quotient::vertex_stabilizer(int k, int orbit) const {
  return vertex_group_order(k) / vertex_orbit_size(k, orbit);
}

namespace {

struct ColumnReduced {
  Mat2A h;
  int k;
};

int col_degree(const PolyA& x, const PolyA& y) { return std::max(x.degree(), y.degree()); }

// h in GL_2(A) with X K = h v(k), by reducing the columns of adj(X) at infinity.
ColumnReduced reduce_vertex(const Mat2A& X) {
  const Fq& F = X.det().field();
  Mat2A N = X.adj();
  Mat2A h = mat2a(F, 1, 0, 0, 1);
  for (;;) {
    int d1 = col_degree(N.a, N.c), d2 = col_degree(N.b, N.d);
    Fq::Elem x1 = N.a[d1], y1 = N.c[d1], x2 = N.b[d2], y2 = N.d[d2];
    if (F.sub(F.mul(x1, y2), F.mul(y1, x2)) != 0) {
      if (d1 >= d2) return {h, d1 - d2};
      std::swap(h.a, h.b);
      std::swap(h.c, h.d);
      return {h, d2 - d1};
    }
    bool first_big = d1 >= d2;
    Fq::Elem xs = first_big ? x2 : x1, ys = first_big ? y2 : y1;
    Fq::Elem xb = first_big ? x1 : x2, yb = first_big ? y1 : y2;
    Fq::Elem c = xs != 0 ? F.div(xb, xs) : F.div(yb, ys);
    PolyA f = PolyA::monomial(F, c, first_big ? d1 - d2 : d2 - d1);
    if (first_big) {
      N.a -= f * N.b;
      N.c -= f * N.d;
      h.a -= f * h.b;
      h.c -= f * h.d;
    } else {
      N.b -= f * N.a;
      N.d -= f * N.c;
      h.b -= f * h.a;
      h.d -= f * h.c;
    }
  }
}

}  // namespace

ClassifiedEdge Gamma0Quotient::classify(const EdgeNF& e) const { return classify(edge_matrix(field(), e)); }

ClassifiedEdge Gamma0Quotient::classify(const Mat2F& g) const {
  const Fq& F = field();
  Mat2A X = clear_denominators(g);
  auto [h, k] = reduce_vertex(X);
  Mat2A Y = inverse_gl2a(h) * X;
  RationalFunc zero(F), one(PolyA::constant(F, 1)), T(PolyA::T(F));
  Mat2F YF = to_F(Y);
  VertexNF o = vertex_normal_form(YF);
  if (!(o == VertexNF{k, zero})) throw std::logic_error("vertex reduction failed: " + o.to_string());
  VertexNF t = vertex_normal_form(YF * Mat2F{T, zero, zero, one});

  bool up;
  int level;
  Mat2A hh = h;
  if (t.k == k + 1 && t.u.is_zero()) {
    up = true;
    level = k;
  } else if (k >= 1 && t.k == k - 1 && t.u.is_zero()) {
    up = false;
    level = k - 1;
  } else if (t.k == k + 1) {
    // t.u = c pi^k
    RationalFunc cr = t.u * RationalFunc(PolyA::monomial(F, 1, k));
    if (!cr.is_polynomial() || cr.num().degree() != 0) throw std::logic_error("unexpected neighbour " + t.to_string());
    Fq::Elem c = cr.num().lead();
    if (k == 0) {
      // sigma = (1, -c; 0, 1) sends the child to v(1)
      hh = h * mat2a(F, 1, c, 0, 1);
      up = true;
      level = 0;
    } else {
      // sigma = (1, 0; -T^k/c, 1) sends the child to the parent
      Mat2A sinv = mat2a(F, 1, 0, 0, 1);
      sinv.c = PolyA::monomial(F, F.inv(c), k);
      hh = h * sinv;
      up = false;
      level = k - 1;
    }
  } else if (k == 0 && t.k == -1 && t.u.is_zero()) {
    hh = h * mat2a(F, 0, 1, 1, 0);
    up = true;
    level = 0;
  } else {
    throw std::logic_error("unexpected neighbour " + t.to_string() + " of v(" + std::to_string(k) + ")");
  }
  int point = P_->index(hh.c, hh.d);
  return {{up, level, edge_orbit(level, point)}, hh, point};
}

std::optional<Mat2A> Gamma0Quotient::equivalent(const EdgeNF& e1, const EdgeNF& e2) const {
  auto c1 = classify(e1), c2 = classify(e2);
  if (!(c1.cls == c2.cls)) return std::nullopt;
  const Orbits& o = edges_at(c1.cls.level);
  Mat2A g = inverse_gl2a(o.witness[c1.point]) * o.witness[c2.point];
  Mat2A gamma = c2.h * inverse_gl2a(c1.h * g);
  if (!(gamma.c % n_).is_zero()) throw std::logic_error("equivalence witness not in Gamma_0(n)");
  return gamma;
}

Mat2A Gamma0Quotient::lift(int point) const {
  const Fq& F = field();
  auto [x, y] = P_->point(point);
  PolyA yy = y.is_zero() ? n_ : y;
  for (std::uint64_t code = 0;; ++code) {
    PolyA xx = x + PolyA::from_code(F, code) * n_;
    auto g = xgcd(xx, yy);
    if (g.g.is_one()) return {g.t, -g.s, xx, yy};
    if (code > 1000000) throw std::logic_error("no coprime lift found");
  }
}

Mat2A Gamma0Quotient::representative(const EdgeClass& c) const {
  const Fq& F = field();
  Mat2A h = lift(edge_orbit_rep(c.level, c.orbit));
  Mat2A E = c.up ? Mat2A{PolyA(F), PolyA::constant(F, 1), PolyA::monomial(F, 1, c.level), PolyA(F)}
                 : Mat2A{PolyA::constant(F, 1), PolyA(F), PolyA(F), PolyA::monomial(F, 1, c.level + 1)};
  return h * E;
}

std::vector<int> QuotientGraph::finite_vertices() const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(vertices.size()); ++i)
    if (!on_ray[i]) out.push_back(i);
  return out;
}

std::vector<int> QuotientGraph::finite_edges() const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(edges.size()); ++i)
    if (!on_ray[edges[i].from] && !on_ray[edges[i].to]) out.push_back(i);
  return out;
}

std::string QuotientGraph::to_dot() const {
  std::ostringstream os;
  os << "graph quotient {\n";
  for (std::size_t i = 0; i < vertices.size(); ++i)
    os << "  v" << i << " [label=\"" << vertices[i].level << ":" << vertices[i].orbit << "\""
       << (on_ray[i] ? ", style=dashed" : "") << "];\n";
  for (auto& e : edges)
    os << "  v" << e.from << " -- v" << e.to << " [label=\"" << e.level << ":" << e.orbit << "\""
       << ((on_ray[e.from] || on_ray[e.to]) ? ", style=dashed" : "") << "];\n";
  os << "}\n";
  return os.str();
}

QuotientGraph Gamma0Quotient::graph(int depth) const {
  if (depth < 0) depth = stable_ + 2;
  if (depth < stable_ + 2)
    throw PrecisionError("quotient depth " + std::to_string(depth) + " too small; need " + std::to_string(stable_ + 2));
  QuotientGraph G;
  G.top_level = depth;
  std::vector<std::vector<int>> vid(depth + 1);
  for (int k = 0; k <= depth; ++k)
    for (int o = 0; o < vertex_orbit_count(k); ++o) {
      vid[k].push_back(static_cast<int>(G.vertices.size()));
      G.vertices.push_back({k, o, vertex_stabilizer(k, o)});
    }
  for (int k = 0; k < depth; ++k)
    for (int o = 0; o < edge_orbit_count(k); ++o) {
      int rep = edge_orbit_rep(k, o);
      G.edges.push_back({k, o, vid[k][vertex_orbit(k, rep)], vid[k + 1][vertex_orbit(k + 1, rep)],
                         edge_stabilizer(k, o)});
    }
  int V = static_cast<int>(G.vertices.size());
  std::vector<std::vector<int>> inc(V);
  for (int i = 0; i < static_cast<int>(G.edges.size()); ++i) {
    inc[G.edges[i].from].push_back(i);
    inc[G.edges[i].to].push_back(i);
  }
  auto other = [&](int e, int v) { return G.edges[e].from == v ? G.edges[e].to : G.edges[e].from; };
  unsigned q = field().q();
  G.on_ray.assign(V, false);
  for (int top : vid[depth]) {
    std::vector<int> ray{top};
    G.on_ray[top] = true;
    if (inc[top].size() != 1) throw std::logic_error("top vertex of degree != 1");
    int cur = top, via = inc[top][0];
    for (;;) {
      int next = other(via, cur);
      if (G.on_ray[next] || inc[next].size() != 2) break;
      int out = inc[next][0] == via ? inc[next][1] : inc[next][0];
      int beyond = other(out, next);
      if (G.vertices[next].stabilizer != G.vertices[beyond].stabilizer * q) break;
      G.on_ray[next] = true;
      ray.push_back(next);
      cur = next;
      via = out;
    }
    G.rays.push_back(ray);
  }
  G.genus = static_cast<int>(G.edges.size()) - V + 1;
  return G;
}

}  // namespace drinfeld
