#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace drinfeld {

using Int = mpz_class;
using Rat = mpq_class;

// Dense row-major matrix over Z or Q.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<std::size_t>(rows) * cols, T(0)) {}
  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }
  static Matrix from_rows(const std::vector<std::vector<T>>& rows, int cols = -1) {
    int c = cols >= 0 ? cols : (rows.empty() ? 0 : static_cast<int>(rows[0].size()));
    Matrix m(static_cast<int>(rows.size()), c);
    for (int i = 0; i < m.r_; ++i)
      for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    return m;
  }

  int rows() const { return r_; }
  int cols() const { return c_; }
  T& at(int i, int j) { return a_[static_cast<std::size_t>(i) * c_ + j]; }
  const T& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * c_ + j]; }
  std::vector<T> row(int i) const { return {a_.begin() + static_cast<long>(i) * c_, a_.begin() + static_cast<long>(i + 1) * c_}; }
  std::vector<T> col(int j) const {
    std::vector<T> v(r_);
    for (int i = 0; i < r_; ++i) v[i] = at(i, j);
    return v;
  }
  Matrix transpose() const {
    Matrix t(c_, r_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) t.at(j, i) = at(i, j);
    return t;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix m(a.r_, b.c_);
    for (int i = 0; i < a.r_; ++i)
      for (int k = 0; k < a.c_; ++k) {
        if (a.at(i, k) == 0) continue;
        for (int j = 0; j < b.c_; ++j) m.at(i, j) += a.at(i, k) * b.at(k, j);
      }
    return m;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] += b.a_[i];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] -= b.a_[i];
    return a;
  }
  Matrix scaled(const T& s) const {
    Matrix m(*this);
    for (auto& x : m.a_) x *= s;
    return m;
  }
  std::vector<T> apply(const std::vector<T>& x) const {
    std::vector<T> y(r_, T(0));
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) y[i] += at(i, j) * x[j];
    return y;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) { return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_; }
  bool is_zero() const {
    for (auto& x : a_)
      if (x != 0) return false;
    return true;
  }
  std::string to_string() const;

 private:
  int r_ = 0, c_ = 0;
  std::vector<T> a_;
};

using ZMatrix = Matrix<Int>;
using QMatrix = Matrix<Rat>;

QMatrix to_rational(const ZMatrix& m);
// Exact conversion; throws DomainError if an entry is not an integer.
ZMatrix to_integer(const QMatrix& m);

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(QMatrix& m);
int rank(const QMatrix& m);
// Basis of {x : m x = 0}.
std::vector<std::vector<Rat>> kernel(const QMatrix& m);
// Some solution of m x = b, if any.
std::optional<std::vector<Rat>> solve(const QMatrix& m, const std::vector<Rat>& b);
Rat determinant(QMatrix m);

struct SmithForm {
  ZMatrix U, V;            // unimodular with U * A * V = D
  std::vector<Int> diag;   // d_1 | d_2 | ..., nonnegative, length min(rows, cols)
  int rank() const;
};
SmithForm smith_normal_form(const ZMatrix& a);

// Row Hermite normal form of the row lattice (zero rows dropped, pivots
// positive, entries above each pivot reduced into [0, pivot)).
ZMatrix hermite_normal_form(const ZMatrix& a);

// Basis (as rows) of the saturation (Q-span of rows) intersected with Z^n.
ZMatrix saturate_rows(const ZMatrix& rows);

// Index [L : M] where both are given by generating rows with the same
// Q-span and M inside L; empty when M has smaller rank.
std::optional<Int> lattice_index(const ZMatrix& L, const ZMatrix& M);

// Characteristic polynomial det(x I - m), coefficients from x^0 up.
std::vector<Rat> characteristic_polynomial(const QMatrix& m);

std::string to_string(const Rat& x);

}  // namespace drinfeld
