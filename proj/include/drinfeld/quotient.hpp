#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "drinfeld/bt_tree.hpp"
#include "drinfeld/residue.hpp"

namespace drinfeld {

// P^1(A/n): pairs (x : y) with (x, y, n) = 1 up to units of A/n.
class P1Space {
 public:
  explicit P1Space(const PolyA& n);
  const ResidueRing& ring() const { return R_; }
  int size() const { return static_cast<int>(points_.size()); }
  // Canonical representative of a point.
  std::pair<PolyA, PolyA> point(int i) const { return points_[i]; }
  // Point of (x : y); throws DomainError when (x, y, n) != 1.
  int index(const PolyA& x, const PolyA& y) const;
  // (x : y) * g.
  int act(int i, const Mat2A& g) const;

 private:
  ResidueRing R_;
  std::vector<std::pair<PolyA, PolyA>> points_;
  std::vector<int> lookup_;  // pair code -> point, or -1
};

// An edge of Gamma_0(n) \ T: `up` means the class of h e_k, where e_k runs
// from v(k) = (pi^k, 0; 0, 1) to v(k+1); otherwise h times its reverse.
struct EdgeClass {
  bool up = true;
  int level = 0;
  int orbit = 0;
  friend bool operator==(const EdgeClass& a, const EdgeClass& b) {
    return a.up == b.up && a.level == b.level && a.orbit == b.orbit;
  }
  friend bool operator<(const EdgeClass& a, const EdgeClass& b) {
    if (a.level != b.level) return a.level < b.level;
    if (a.orbit != b.orbit) return a.orbit < b.orbit;
    return a.up && !b.up;
  }
  std::string to_string() const;
};

struct ClassifiedEdge {
  EdgeClass cls;
  Mat2A h;    // the edge is h e_level (up) or h times its reverse
  int point;  // bottom row of h in P^1(A/n)
};

struct QuotientVertex {
  int level, orbit;
  mpz_class stabilizer;  // order of the Gamma_0(n)-stabilizer of a lift
};
struct QuotientEdge {
  int level, orbit;  // the class (up, level, orbit)
  int from, to;      // vertex indices (level and level+1)
  mpz_class stabilizer;
};

struct QuotientGraph {
  std::vector<QuotientVertex> vertices;
  std::vector<QuotientEdge> edges;  // one per unoriented edge, truncated at the top level
  std::vector<std::vector<int>> rays;  // vertex indices from the outermost inward
  std::vector<bool> on_ray;
  int top_level = 0;
  int genus = 0;
  int cusps() const { return static_cast<int>(rays.size()); }
  std::vector<int> finite_vertices() const;
  std::vector<int> finite_edges() const;
  std::string to_dot() const;
};

class Gamma0Quotient {
 public:
  explicit Gamma0Quotient(const PolyA& n);

  const Fq& field() const { return n_.field(); }
  const PolyA& level_ideal() const { return n_; }
  const P1Space& p1() const { return *P_; }
  // Level from which orbit partitions no longer change.
  int stable_level() const { return stable_; }

  // Orbits of the edge group G_k = {(a, 0; c, d) : deg c <= k}.
  int edge_orbit_count(int k) const;
  int edge_orbit(int k, int point) const;
  int edge_orbit_size(int k, int orbit) const;
  int edge_orbit_rep(int k, int orbit) const;
  // Vertex stabilizer of v(k): GL_2(F_q) at k = 0, G_k otherwise.
  int vertex_orbit_count(int k) const;
  int vertex_orbit(int k, int point) const;
  int vertex_orbit_size(int k, int orbit) const;

  mpz_class edge_group_order(int k) const;
  mpz_class vertex_group_order(int k) const;
  mpz_class edge_stabilizer(int k, int orbit) const;
  mpz_class vertex_stabilizer(int k, int orbit) const;

  ClassifiedEdge classify(const Mat2F& g) const;
  ClassifiedEdge classify(const EdgeNF& e) const;
  // gamma in Gamma_0(n) with gamma e1 = e2, if any.
  std::optional<Mat2A> equivalent(const EdgeNF& e1, const EdgeNF& e2) const;
  // Some h in GL_2(A) whose bottom row is the given point.
  Mat2A lift(int point) const;
  // A representative edge matrix over A of an edge class.
  Mat2A representative(const EdgeClass& c) const;

  // Graph through level `depth` (at least stable_level() + 2).
  QuotientGraph graph(int depth = -1) const;

 private:
  struct Orbits {
    std::vector<int> of;            // point -> orbit
    std::vector<int> rep, size;     // per orbit
    std::vector<Mat2A> witness;     // point p: rep * witness[p] = p
  };
  Orbits compute_orbits(int k, bool vertex_group) const;
  const Orbits& edges_at(int k) const { return edge_orbits_[std::min(k, stable_)]; }
  const Orbits& vertices_at(int k) const { return vertex_orbits_[std::min(k, stable_)]; }

  PolyA n_;
  std::shared_ptr<P1Space> P_;
  int stable_;
  std::vector<Orbits> edge_orbits_, vertex_orbits_;
};

}  // namespace drinfeld
