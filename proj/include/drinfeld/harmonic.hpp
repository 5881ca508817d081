#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "drinfeld/linalg.hpp"
#include "drinfeld/quotient.hpp"

namespace drinfeld {

class Cochain;

// Gamma_0(n)-invariant cochains are determined by their values on the
// classes (up, k, O) for k <= S = deg n + 1; beyond S the value on
// (up, k, O) is q^{k-S} times the value at level S (orbit partitions no
// longer change there and the vertex sums force the factor q).
class HarmonicSpace {
 public:
  static std::shared_ptr<const HarmonicSpace> create(const PolyA& n);
  explicit HarmonicSpace(const PolyA& n);

  const Gamma0Quotient& quotient() const { return Q_; }
  const PolyA& level_ideal() const { return Q_.level_ideal(); }
  const Fq& field() const { return Q_.field(); }
  int stable_level() const { return S_; }
  int size() const { return static_cast<int>(classes_.size()); }
  int coord(int level, int orbit) const { return offset_[level] + orbit; }
  const EdgeClass& class_of(int coord) const { return classes_[coord]; }

  // One row per vertex condition (every point of P^1 at every level <= S).
  QMatrix harmonic_equations() const;

 private:
  Gamma0Quotient Q_;
  int S_;
  std::vector<int> offset_;
  std::vector<EdgeClass> classes_;
};

class Cochain {
 public:
  Cochain() = default;
  Cochain(std::shared_ptr<const HarmonicSpace> space, std::vector<Rat> values);
  static Cochain zero(std::shared_ptr<const HarmonicSpace> space);

  const HarmonicSpace& space() const { return *space_; }
  std::shared_ptr<const HarmonicSpace> space_ptr() const { return space_; }
  const std::vector<Rat>& values() const { return v_; }

  Rat value(const EdgeClass& c) const;
  Rat at(const EdgeNF& e) const;
  Rat at(const Mat2F& edge) const;
  // Compact support: the values at the stable level vanish.
  bool is_cuspidal() const;
  bool is_zero() const;
  // Every vertex condition holds.
  bool is_harmonic() const;

  friend Cochain operator+(const Cochain& a, const Cochain& b);
  friend Cochain operator-(const Cochain& a, const Cochain& b);
  Cochain scaled(const Rat& c) const;
  friend bool operator==(const Cochain& a, const Cochain& b) { return a.v_ == b.v_; }

 private:
  std::shared_ptr<const HarmonicSpace> space_;
  std::vector<Rat> v_;
};

// Saturated Z-basis of the harmonic cochains (cuspidal or all).
std::vector<Cochain> harmonic_basis(std::shared_ptr<const HarmonicSpace> space, bool cuspidal);

// S_m = {(a b; 0 d) : a, d monic, ad = m, (a, n) = 1, deg b < deg d}.
std::vector<Mat2A> hecke_representatives(const PolyA& m, const PolyA& n);
Cochain hecke_apply(const Cochain& f, const PolyA& m, int jobs = 1);

// Coordinates of f in the basis; throws DomainError when f is not in the span.
std::vector<Rat> coordinates(const Cochain& f, const std::vector<Cochain>& basis);
Cochain combination(const std::vector<Rat>& x, const std::vector<Cochain>& basis);

struct HeckeMatrix {
  PolyA m;
  ZMatrix matrix;  // column j: coordinates of basis[j] | T_m
};
HeckeMatrix hecke_matrix(const PolyA& m, const std::vector<Cochain>& basis, int jobs = 1);

// Smallest primes (degree, then graded-lex) not dividing n.
std::vector<PolyA> primes_not_dividing(const PolyA& n, int count);

// Common eigenline of T_Q with eigenvalue |Q|+1 for the two smallest primes
// Q not dividing n inside the full harmonic space. Gauge: E(s_inf) =
// (q^2+q+1)(q-1)^2 with s_inf = plus(1, 0) when deg n = 3, otherwise
// E*(1) = (q+1)(q-1)^2/q. Throws DomainError if the eigenspace is not a line.
Cochain eisenstein_cochain(std::shared_ptr<const HarmonicSpace> space, int jobs = 1);

// f on the edge (pi^k, u; 0, 1), u = sum_{i=1}^{k-1} u_i pi^i.
EdgeNF fourier_edge(const Fq& F, int k, const std::vector<Fq::Elem>& u);

// nu(m u): -1 if m u has a pi^1 term, q-1 otherwise.
int fourier_nu(const Fq& F, const PolyA& m, const std::vector<Fq::Elem>& u);

struct FourierTable {
  int K = 0;
  std::vector<Rat> f0;                           // f0[k] for k = 1..K (f0[0] unused)
  std::vector<std::pair<PolyA, Rat>> fstar;      // monic m, deg m <= K - 2, by degree then graded-lex
  Rat star(const PolyA& m) const;
};

// Inverts f(pi^k, u) = f0(k) + sum_{j <= k-2} q^{j+2-k} sum_{deg m = j} f*(m) nu(m u)
// level by level; throws DomainError when some level is inconsistent.
using FourierValues = std::function<Rat(int k, const std::vector<Fq::Elem>& u)>;
FourierTable fourier_invert(const Fq& F, int K, const FourierValues& values);
FourierTable fourier_coeffs(const Cochain& f, int K);
// The expansion evaluated from a table.
Rat fourier_synthesize(const Fq& F, const FourierTable& t, int k, const std::vector<Fq::Elem>& u);

// (f|T_m)*(1) == |m| f*(m).
bool check_first_coefficient(const Cochain& f, const PolyA& m);

// mu(e) = (q-1)/2 * #Stab(e).
Rat edge_weight(const HarmonicSpace& H, const EdgeClass& c);
// sum over oriented edges of f(e) g(e) / mu(e); cuspidal inputs only.
Rat petersson_pairing(const Cochain& f, const Cochain& g);

// Smallest K with f(plus(k, 0)) = 0 for all k >= K (cuspidal f).
int support_depth(const Cochain& f);

struct LPolynomial {
  std::vector<Rat> coeffs;  // U^0 .. U^D
  int support_depth = 0;
  // Empirical symmetry under U -> 1/(q^2 U): c_{D-j} = sign * q^{D-2j} c_j.
  bool symmetric = false;
  int sign = 0;
  std::string to_string() const;
};
LPolynomial l_polynomial(const Cochain& f);

struct WeilReport {
  PolyA prime;
  std::vector<Rat> charpoly;  // low to high
  std::vector<double> eigenvalues;
  double bound = 0;
  bool within = false;
};
// Eigenvalues of T_Q on the span of the basis, against 2 sqrt|Q|.
WeilReport weil_bound_check(const PolyA& Q, const std::vector<Cochain>& basis, double tol = 1e-9, int jobs = 1);

}  // namespace drinfeld
