#pragma once

#include <vector>

#include "drinfeld/poly_a.hpp"

namespace drinfeld {

// Dense matrix over F_q.
class FqMatrix {
 public:
  using Elem = Fq::Elem;
  FqMatrix(const Fq& F, int rows, int cols) : F_(&F), r_(rows), c_(cols), a_(rows * cols, 0) {}
  static FqMatrix identity(const Fq& F, int n);

  const Fq& field() const { return *F_; }
  int rows() const { return r_; }
  int cols() const { return c_; }
  Elem& at(int i, int j) { return a_[i * c_ + j]; }
  Elem at(int i, int j) const { return a_[i * c_ + j]; }
  friend bool operator==(const FqMatrix& a, const FqMatrix& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
  }

  FqMatrix operator*(const FqMatrix& b) const;
  FqMatrix operator+(const FqMatrix& b) const;
  FqMatrix operator-(const FqMatrix& b) const;
  FqMatrix pow(unsigned long long n) const;
  std::vector<Elem> apply(const std::vector<Elem>& x) const;

  int rank() const;
  // Basis of {x : M x = 0}.
  std::vector<std::vector<Elem>> nullspace() const;
  // Reduced row echelon form (in place) returning pivot columns.
  std::vector<int> rref();

 private:
  const Fq* F_;
  int r_, c_;
  std::vector<Elem> a_;
};

// Invariant factors (monic, ascending by divisibility, units dropped) of the
// F_q[T]-module F_q^n on which T acts by M.
std::vector<PolyA> invariant_factors(const FqMatrix& M);
// Minimal polynomial of M.
PolyA minimal_polynomial(const FqMatrix& M);

}  // namespace drinfeld
