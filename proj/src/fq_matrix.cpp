#include "drinfeld/fq_matrix.hpp"

#include <algorithm>

#include "drinfeld/errors.hpp"

namespace drinfeld {

FqMatrix FqMatrix::identity(const Fq& F, int n) {
  FqMatrix m(F, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

FqMatrix FqMatrix::operator*(const FqMatrix& b) const {
  if (c_ != b.r_) throw DomainError("matrix dimension mismatch");
  FqMatrix out(*F_, r_, b.c_);
  for (int i = 0; i < r_; ++i)
    for (int k = 0; k < c_; ++k) {
      Elem x = at(i, k);
      if (!x) continue;
      for (int j = 0; j < b.c_; ++j)
        out.at(i, j) = F_->add(out.at(i, j), F_->mul(x, b.at(k, j)));
    }
  return out;
}

FqMatrix FqMatrix::operator+(const FqMatrix& b) const {
  FqMatrix out(*this);
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = F_->add(a_[i], b.a_[i]);
  return out;
}

FqMatrix FqMatrix::operator-(const FqMatrix& b) const {
  FqMatrix out(*this);
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = F_->sub(a_[i], b.a_[i]);
  return out;
}

FqMatrix FqMatrix::pow(unsigned long long n) const {
  FqMatrix r = identity(*F_, r_), b = *this;
  while (n) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

std::vector<FqMatrix::Elem> FqMatrix::apply(const std::vector<Elem>& x) const {
  std::vector<Elem> y(r_, 0);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) y[i] = F_->add(y[i], F_->mul(at(i, j), x[j]));
  return y;
}

std::vector<int> FqMatrix::rref() {
  std::vector<int> piv;
  int row = 0;
  for (int col = 0; col < c_ && row < r_; ++col) {
    int sel = -1;
    for (int i = row; i < r_; ++i)
      if (at(i, col)) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != row)
      for (int j = 0; j < c_; ++j) std::swap(at(sel, j), at(row, j));
    Elem inv = F_->inv(at(row, col));
    for (int j = 0; j < c_; ++j) at(row, j) = F_->mul(at(row, j), inv);
    for (int i = 0; i < r_; ++i) {
      if (i == row || !at(i, col)) continue;
      Elem f = at(i, col);
      for (int j = 0; j < c_; ++j) at(i, j) = F_->sub(at(i, j), F_->mul(f, at(row, j)));
    }
    piv.push_back(col);
    ++row;
  }
  return piv;
}

int FqMatrix::rank() const {
  FqMatrix m(*this);
  return static_cast<int>(m.rref().size());
}

std::vector<std::vector<FqMatrix::Elem>> FqMatrix::nullspace() const {
  FqMatrix m(*this);
  auto piv = m.rref();
  std::vector<char> is_piv(c_, 0);
  for (int p : piv) is_piv[p] = 1;
  std::vector<std::vector<Elem>> basis;
  for (int f = 0; f < c_; ++f) {
    if (is_piv[f]) continue;
    std::vector<Elem> v(c_, 0);
    v[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = F_->neg(m.at(static_cast<int>(r), f));
    basis.push_back(std::move(v));
  }
  return basis;
}

namespace {

// Smith form over the Euclidean domain F_q[T], diagonal only.
std::vector<PolyA> smith_diagonal(std::vector<std::vector<PolyA>> a, const Fq& F) {
  int n = static_cast<int>(a.size());
  int m = n ? static_cast<int>(a[0].size()) : 0;
  std::vector<PolyA> diag;
  for (int t = 0; t < std::min(n, m); ++t) {
    for (;;) {
      // pivot: nonzero entry of least degree in the remaining block
      int pi = -1, pj = -1;
      for (int i = t; i < n; ++i)
        for (int j = t; j < m; ++j)
          if (!a[i][j].is_zero() && (pi < 0 || a[i][j].degree() < a[pi][pj].degree())) {
            pi = i;
            pj = j;
          }
      if (pi < 0) {
        for (int k = t; k < std::min(n, m); ++k) diag.push_back(PolyA(F));
        goto done;
      }
      std::swap(a[t], a[pi]);
      for (int i = 0; i < n; ++i) std::swap(a[i][t], a[i][pj]);
      bool clean = true;
      for (int i = t + 1; i < n; ++i) {
        if (a[i][t].is_zero()) continue;
        PolyA qq = a[i][t] / a[t][t];
        for (int j = t; j < m; ++j) a[i][j] -= qq * a[t][j];
        if (!a[i][t].is_zero()) clean = false;
      }
      for (int j = t + 1; j < m; ++j) {
        if (a[t][j].is_zero()) continue;
        PolyA qq = a[t][j] / a[t][t];
        for (int i = t; i < n; ++i) a[i][j] -= qq * a[i][t];
        if (!a[t][j].is_zero()) clean = false;
      }
      if (!clean) continue;
      // divisibility of the rest by the pivot
      int bad_i = -1;
      for (int i = t + 1; i < n && bad_i < 0; ++i)
        for (int j = t + 1; j < m; ++j)
          if (!(a[i][j] % a[t][t]).is_zero()) {
            bad_i = i;
            break;
          }
      if (bad_i >= 0) {
        for (int j = t; j < m; ++j) a[t][j] += a[bad_i][j];
        continue;
      }
      diag.push_back(a[t][t].monic());
      break;
    }
  }
done:
  return diag;
}

}  // namespace

std::vector<PolyA> invariant_factors(const FqMatrix& M) {
  const Fq& F = M.field();
  int n = M.rows();
  if (n != M.cols()) throw DomainError("invariant factors need a square matrix");
  std::vector<std::vector<PolyA>> a(n, std::vector<PolyA>(n, PolyA(F)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      PolyA e = PolyA::constant(F, F.neg(M.at(i, j)));
      if (i == j) e += PolyA::T(F);
      a[i][j] = e;
    }
  std::vector<PolyA> out;
  for (auto& d : smith_diagonal(std::move(a), F))
    if (d.degree() > 0) out.push_back(d);
  std::sort(out.begin(), out.end(), [](const PolyA& x, const PolyA& y) { return x.degree() < y.degree(); });
  return out;
}

PolyA minimal_polynomial(const FqMatrix& M) {
  const Fq& F = M.field();
  auto inv = invariant_factors(M);
  if (inv.empty()) return PolyA::constant(F, 1);
  return inv.back();
}

}  // namespace drinfeld
