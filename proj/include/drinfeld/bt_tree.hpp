#pragma once

#include <string>
#include <vector>

#include "drinfeld/rational.hpp"

namespace drinfeld {

// 2x2 matrix over a commutative ring R (PolyA or RationalFunc).
template <class R>
struct Mat2 {
  R a, b, c, d;
  R det() const { return a * d - b * c; }
  Mat2 adj() const { return {d, -b, -c, a}; }
  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend bool operator==(const Mat2& x, const Mat2& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
};
using Mat2A = Mat2<PolyA>;
using Mat2F = Mat2<RationalFunc>;

Mat2F to_F(const Mat2A& m);
// Scalar multiple with polynomial entries (clears denominators).
Mat2A clear_denominators(const Mat2F& m);
// Inverse of an element of GL_2(A) (det a nonzero constant).
Mat2A inverse_gl2a(const Mat2A& m);
Mat2A mat2a(const Fq& F, Fq::Elem a, Fq::Elem b, Fq::Elem c, Fq::Elem d);
std::string to_string(const Mat2A& m);
std::string to_string(const Mat2F& m);

// pi = 1/T. A vertex is the class of (pi^k, u; 0, 1) with u a Laurent
// polynomial in pi having only exponents < k; u is stored exactly in F.
struct VertexNF {
  int k = 0;
  RationalFunc u;
  friend bool operator==(const VertexNF& x, const VertexNF& y) { return x.k == y.k && x.u == y.u; }
  std::string to_string() const;
};

// plus: the edge (pi^k, u; 0, 1) mod the Iwahori group, from (k, u) to its
// parent (k-1, u mod pi^{k-1}). minus: the same edge reversed.
struct EdgeNF {
  bool plus = true;
  int k = 0;
  RationalFunc u;
  friend bool operator==(const EdgeNF& x, const EdgeNF& y) {
    return x.plus == y.plus && x.k == y.k && x.u == y.u;
  }
  std::string to_string() const;
};

RationalFunc pi_power(const Fq& F, int k);
// Part of x with pi-exponent < k.
RationalFunc truncate_below(const RationalFunc& x, int k);

VertexNF vertex_normal_form(const Mat2F& g);
// Edge of g: origin gK, terminus g diag(1, pi) K.
EdgeNF edge_normal_form(const Mat2F& g);
Mat2F vertex_matrix(const Fq& F, const VertexNF& v);
Mat2F edge_matrix(const Fq& F, const EdgeNF& e);
EdgeNF plus_edge(const Fq& F, int k, const RationalFunc& u);
EdgeNF reverse(const EdgeNF& e);
VertexNF origin(const EdgeNF& e);
VertexNF terminus(const EdgeNF& e);
VertexNF parent(const VertexNF& v);
// Parent first, then the q children (k+1, u + c pi^k) in the order of c.
std::vector<VertexNF> neighbors(const Fq& F, const VertexNF& v);
// The q+1 edges with origin v, in the order of neighbors().
std::vector<EdgeNF> edges_from(const Fq& F, const VertexNF& v);
VertexNF act(const Mat2F& g, const VertexNF& v);
EdgeNF act(const Mat2F& g, const EdgeNF& e);

}  // namespace drinfeld
