#include "drinfeld/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "drinfeld/errors.hpp"

namespace drinfeld {

std::string to_string(const Rat& x) { return x.get_str(); }

template <class T>
std::string Matrix<T>::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < r_; ++i) {
    os << (i ? "; " : "");
    for (int j = 0; j < c_; ++j) os << (j ? " " : "") << at(i, j).get_str();
  }
  os << "]";
  return os.str();
}
template class Matrix<Int>;
template class Matrix<Rat>;

QMatrix to_rational(const ZMatrix& m) {
  QMatrix r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r.at(i, j) = m.at(i, j);
  return r;
}

ZMatrix to_integer(const QMatrix& m) {
  ZMatrix r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      if (m.at(i, j).get_den() != 1) throw DomainError("non-integral entry " + m.at(i, j).get_str());
      r.at(i, j) = m.at(i, j).get_num();
    }
  return r;
}

std::vector<int> rref(QMatrix& m) {
  std::vector<int> piv;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = -1;
    for (int i = r; i < m.rows(); ++i)
      if (m.at(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(r, j));
    Rat inv = 1 / m.at(r, c);
    for (int j = c; j < m.cols(); ++j) m.at(r, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      Rat f = m.at(i, c);
      for (int j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

int rank(const QMatrix& m) {
  QMatrix t(m);
  return static_cast<int>(rref(t).size());
}

std::vector<std::vector<Rat>> kernel(const QMatrix& m) {
  QMatrix t(m);
  auto piv = rref(t);
  std::vector<bool> is_piv(m.cols(), false);
  for (int c : piv) is_piv[c] = true;
  std::vector<std::vector<Rat>> out;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_piv[f]) continue;
    std::vector<Rat> v(m.cols(), Rat(0));
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -t.at(static_cast<int>(i), f);
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<std::vector<Rat>> solve(const QMatrix& m, const std::vector<Rat>& b) {
  QMatrix aug(m.rows(), m.cols() + 1);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols()) = b[i];
  }
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;
  std::vector<Rat> x(m.cols(), Rat(0));
  for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug.at(static_cast<int>(i), m.cols());
  return x;
}

Rat determinant(QMatrix m) {
  if (m.rows() != m.cols()) throw DomainError("determinant of a non-square matrix");
  int n = m.rows();
  Rat det = 1;
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (m.at(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) return 0;
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(m.at(p, j), m.at(c, j));
      det = -det;
    }
    det *= m.at(c, c);
    for (int i = c + 1; i < n; ++i) {
      if (m.at(i, c) == 0) continue;
      Rat f = m.at(i, c) / m.at(c, c);
      for (int j = c; j < n; ++j) m.at(i, j) -= f * m.at(c, j);
    }
  }
  return det;
}

int SmithForm::rank() const {
  int r = 0;
  for (auto& d : diag) r += (d != 0);
  return r;
}

namespace {

void swap_rows(ZMatrix& m, int a, int b) {
  if (a == b) return;
  for (int j = 0; j < m.cols(); ++j) std::swap(m.at(a, j), m.at(b, j));
}
void swap_cols(ZMatrix& m, int a, int b) {
  if (a == b) return;
  for (int i = 0; i < m.rows(); ++i) std::swap(m.at(i, a), m.at(i, b));
}
// row a += f * row b
void add_row(ZMatrix& m, int a, int b, const Int& f) {
  for (int j = 0; j < m.cols(); ++j) m.at(a, j) += f * m.at(b, j);
}
void add_col(ZMatrix& m, int a, int b, const Int& f) {
  for (int i = 0; i < m.rows(); ++i) m.at(i, a) += f * m.at(i, b);
}
void neg_row(ZMatrix& m, int a) {
  for (int j = 0; j < m.cols(); ++j) m.at(a, j) = -m.at(a, j);
}

Int fdiv(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

SmithForm smith_normal_form(const ZMatrix& a) {
  int m = a.rows(), n = a.cols();
  ZMatrix D(a), U = ZMatrix::identity(m), V = ZMatrix::identity(n);
  int t = 0;
  while (t < std::min(m, n)) {
    // smallest nonzero entry in the remaining block as pivot
    int pi = -1, pj = -1;
    for (int i = t; i < m; ++i)
      for (int j = t; j < n; ++j)
        if (D.at(i, j) != 0 && (pi < 0 || abs(D.at(i, j)) < abs(D.at(pi, pj)))) pi = i, pj = j;
    if (pi < 0) break;
    swap_rows(D, t, pi);
    swap_rows(U, t, pi);
    swap_cols(D, t, pj);
    swap_cols(V, t, pj);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = t + 1; i < m; ++i) {
        if (D.at(i, t) == 0) continue;
        Int f = -fdiv(D.at(i, t), D.at(t, t));
        add_row(D, i, t, f);
        add_row(U, i, t, f);
        if (D.at(i, t) != 0) {
          swap_rows(D, t, i);
          swap_rows(U, t, i);
          clean = false;
        }
      }
      for (int j = t + 1; j < n; ++j) {
        if (D.at(t, j) == 0) continue;
        Int f = -fdiv(D.at(t, j), D.at(t, t));
        add_col(D, j, t, f);
        add_col(V, j, t, f);
        if (D.at(t, j) != 0) {
          swap_cols(D, t, j);
          swap_cols(V, t, j);
          clean = false;
        }
      }
      if (!clean) continue;
      // divisibility: pivot must divide the rest of the block
      for (int i = t + 1; i < m && clean; ++i)
        for (int j = t + 1; j < n; ++j)
          if (D.at(i, j) % D.at(t, t) != 0) {
            add_row(D, t, i, 1);
            add_row(U, t, i, 1);
            clean = false;
            break;
          }
    }
    if (D.at(t, t) < 0) {
      neg_row(D, t);
      neg_row(U, t);
    }
    ++t;
  }
  SmithForm s{U, V, {}};
  for (int i = 0; i < std::min(m, n); ++i) s.diag.push_back(D.at(i, i));
  return s;
}

ZMatrix hermite_normal_form(const ZMatrix& a) {
  ZMatrix H(a);
  int m = H.rows(), n = H.cols();
  int r = 0;
  for (int c = 0; c < n && r < m; ++c) {
    // gcd-reduce column c over rows r..m-1
    for (;;) {
      int p = -1;
      for (int i = r; i < m; ++i)
        if (H.at(i, c) != 0 && (p < 0 || abs(H.at(i, c)) < abs(H.at(p, c)))) p = i;
      if (p < 0) break;
      swap_rows(H, r, p);
      bool done = true;
      for (int i = r + 1; i < m; ++i) {
        if (H.at(i, c) == 0) continue;
        add_row(H, i, r, -fdiv(H.at(i, c), H.at(r, c)));
        if (H.at(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (H.at(r, c) == 0) continue;
    if (H.at(r, c) < 0) neg_row(H, r);
    for (int i = 0; i < r; ++i) add_row(H, i, r, -fdiv(H.at(i, c), H.at(r, c)));
    ++r;
  }
  ZMatrix out(r, n);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < n; ++j) out.at(i, j) = H.at(i, j);
  return out;
}

ZMatrix saturate_rows(const ZMatrix& rows) {
  // rows = U^{-1} D V^{-1}; saturation is spanned by the first r rows of V^{-1}
  auto s = smith_normal_form(rows);
  int r = s.rank();
  QMatrix V = to_rational(s.V);
  int n = rows.cols();
  QMatrix aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = V.at(i, j);
    aug.at(i, n + i) = 1;
  }
  rref(aug);
  ZMatrix out(r, n);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < n; ++j) {
      const Rat& x = aug.at(i, n + j);
      if (x.get_den() != 1) throw DomainError("saturation: V not unimodular");
      out.at(i, j) = x.get_num();
    }
  return hermite_normal_form(out);
}

std::optional<Int> lattice_index(const ZMatrix& L, const ZMatrix& M) {
  ZMatrix Lb = hermite_normal_form(L);
  ZMatrix Mb = hermite_normal_form(M);
  if (Mb.rows() < Lb.rows()) return std::nullopt;
  // coordinates of M's rows in L's basis
  QMatrix LT = to_rational(Lb.transpose());
  ZMatrix C(Mb.rows(), Lb.rows());
  for (int i = 0; i < Mb.rows(); ++i) {
    std::vector<Rat> b(Mb.cols());
    for (int j = 0; j < Mb.cols(); ++j) b[j] = Mb.at(i, j);
    auto x = solve(LT, b);
    if (!x) throw DomainError("lattice_index: M not in the span of L");
    for (int j = 0; j < Lb.rows(); ++j) {
      if ((*x)[j].get_den() != 1) throw DomainError("lattice_index: M not contained in L");
      C.at(i, j) = (*x)[j].get_num();
    }
  }
  auto s = smith_normal_form(C);
  Int idx = 1;
  for (auto& d : s.diag) {
    if (d == 0) return std::nullopt;
    idx *= d;
  }
  return idx;
}

std::vector<Rat> characteristic_polynomial(const QMatrix& A) {
  // Faddeev-LeVerrier
  int n = A.rows();
  std::vector<Rat> c(n + 1, Rat(0));
  c[n] = 1;
  QMatrix M(n, n);
  QMatrix I = QMatrix::identity(n);
  for (int k = 1; k <= n; ++k) {
    M = A * M + I.scaled(c[n - k + 1]);
    QMatrix AM = A * M;
    Rat tr = 0;
    for (int i = 0; i < n; ++i) tr += AM.at(i, i);
    c[n - k] = -tr / k;
  }
  return c;
}

}  // namespace drinfeld
