#include "drinfeld/laurent.hpp"

#include <algorithm>

#include "drinfeld/errors.hpp"

namespace drinfeld {

LaurentSeries::LaurentSeries(const Fq& F, int prec) : F_(&F), v_(prec), prec_(prec) {}

LaurentSeries::LaurentSeries(const Fq& F, int v, std::vector<Elem> c, int prec)
    : F_(&F), v_(v), c_(std::move(c)), prec_(prec) {
  normalize();
}

void LaurentSeries::normalize() {
  std::size_t k = 0;
  while (k < c_.size() && c_[k] == 0) ++k;
  if (k > 0) {
    c_.erase(c_.begin(), c_.begin() + k);
    v_ += static_cast<int>(k);
  }
  if (v_ >= prec_) {
    c_.clear();
    v_ = prec_;
    return;
  }
  if (static_cast<int>(c_.size()) > prec_ - v_) c_.resize(prec_ - v_);
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
  if (c_.empty()) v_ = prec_;
}

LaurentSeries LaurentSeries::from_poly(const PolyA& a, int prec) {
  const Fq& F = a.field();
  if (a.is_zero()) return LaurentSeries(F, prec);
  std::vector<Elem> c(a.coeffs().rbegin(), a.coeffs().rend());
  return LaurentSeries(F, -a.degree(), std::move(c), prec);
}

LaurentSeries LaurentSeries::constant(const Fq& F, Elem c, int prec) {
  return LaurentSeries(F, 0, {c}, prec);
}

LaurentSeries LaurentSeries::expand(const RationalFunc& x, int prec) {
  const Fq& F = x.field();
  if (x.is_zero()) return LaurentSeries(F, prec);
  const PolyA& a = x.num();
  const PolyA& b = x.den();
  int v = b.degree() - a.degree();
  int n = prec - v;
  if (n <= 0) return LaurentSeries(F, prec);
  // reversed polynomials: a(T) = T^deg a * ahat(pi)
  std::vector<Elem> ah(n, 0), bh(b.degree() + 1);
  for (int i = 0; i <= a.degree() && i < n; ++i) ah[i] = a[a.degree() - i];
  for (int i = 0; i <= b.degree(); ++i) bh[i] = b[b.degree() - i];
  Elem binv = F.inv(bh[0]);
  std::vector<Elem> out(n, 0);
  for (int j = 0; j < n; ++j) {
    Elem s = ah[j];
    for (int i = 1; i <= b.degree() && i <= j; ++i) s = F.sub(s, F.mul(bh[i], out[j - i]));
    out[j] = F.mul(s, binv);
  }
  return LaurentSeries(F, v, std::move(out), prec);
}

int LaurentSeries::valuation() const {
  if (is_zero())
    throw PrecisionError("valuation of a series that vanishes modulo pi^" + std::to_string(prec_));
  return v_;
}

LaurentSeries::Elem LaurentSeries::coeff(int j) const {
  if (j >= prec_)
    throw PrecisionError("coefficient of pi^" + std::to_string(j) + " beyond precision " +
                         std::to_string(prec_));
  if (j < v_ || j - v_ >= static_cast<int>(c_.size())) return 0;
  return c_[j - v_];
}

LaurentSeries::Elem LaurentSeries::lead() const {
  valuation();
  return c_[0];
}

LaurentSeries LaurentSeries::operator-() const {
  LaurentSeries r(*this);
  for (auto& c : r.c_) c = F_->neg(c);
  return r;
}

LaurentSeries LaurentSeries::scaled(Elem c) const {
  LaurentSeries r(*this);
  for (auto& x : r.c_) x = F_->mul(x, c);
  r.normalize();
  return r;
}

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
  const Fq& F = *(a.F_ ? a.F_ : b.F_);
  int prec = std::min(a.prec_, b.prec_);
  int v = std::min(a.v_, b.v_);
  if (v >= prec) return LaurentSeries(F, prec);
  std::vector<LaurentSeries::Elem> c(prec - v, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    int j = a.v_ + static_cast<int>(i);
    if (j < prec) c[j - v] = F.add(c[j - v], a.c_[i]);
  }
  for (std::size_t i = 0; i < b.c_.size(); ++i) {
    int j = b.v_ + static_cast<int>(i);
    if (j < prec) c[j - v] = F.add(c[j - v], b.c_[i]);
  }
  return LaurentSeries(F, v, std::move(c), prec);
}

LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return a + (-b); }

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
  const Fq& F = *(a.F_ ? a.F_ : b.F_);
  int prec = std::min(a.v_ + b.prec_, b.v_ + a.prec_);
  int v = a.v_ + b.v_;
  if (a.is_zero() || b.is_zero() || v >= prec) return LaurentSeries(F, prec);
  int n = prec - v;
  std::vector<LaurentSeries::Elem> c(n, 0);
  for (int i = 0; i < static_cast<int>(a.c_.size()) && i < n; ++i) {
    auto ai = a.c_[i];
    if (ai == 0) continue;
    for (int j = 0; j < static_cast<int>(b.c_.size()) && i + j < n; ++j)
      c[i + j] = F.add(c[i + j], F.mul(ai, b.c_[j]));
  }
  return LaurentSeries(F, v, std::move(c), prec);
}

LaurentSeries LaurentSeries::inv() const {
  if (is_zero())
    throw PrecisionError("inverse of a series that vanishes modulo pi^" + std::to_string(prec_));
  int n = prec_ - v_;
  std::vector<Elem> out(n, 0);
  Elem i0 = F_->inv(c_[0]);
  for (int j = 0; j < n; ++j) {
    Elem s = j == 0 ? 1 : 0;
    for (int i = 1; i <= j && i < static_cast<int>(c_.size()); ++i)
      s = F_->sub(s, F_->mul(c_[i], out[j - i]));
    out[j] = F_->mul(s, i0);
  }
  return LaurentSeries(*F_, -v_, std::move(out), -v_ + n);
}

LaurentSeries operator/(const LaurentSeries& a, const LaurentSeries& b) { return a * b.inv(); }

LaurentSeries LaurentSeries::frob() const {
  int q = static_cast<int>(F_->q());
  if (is_zero()) return LaurentSeries(*F_, prec_ * q);
  std::vector<Elem> c((c_.size() - 1) * q + 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) c[i * q] = c_[i];
  return LaurentSeries(*F_, v_ * q, std::move(c), prec_ * q);
}

LaurentSeries LaurentSeries::pow(long long n) const {
  if (n < 0) return inv().pow(-n);
  LaurentSeries r = constant(*F_, 1, relative_precision());
  LaurentSeries b = *this;
  bool first = true;
  while (n) {
    if (n & 1) {
      r = first ? b : r * b;
      first = false;
    }
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

LaurentSeries LaurentSeries::truncated(int prec) const {
  LaurentSeries r(*this);
  if (prec < r.prec_) {
    r.prec_ = prec;
    r.normalize();
  }
  return r;
}

int LaurentSeries::first_difference(const LaurentSeries& b) const {
  int prec = std::min(prec_, b.prec_);
  int lo = std::min(v_, b.v_);
  for (int j = lo; j < prec; ++j)
    if (coeff(j) != b.coeff(j)) return j;
  return prec;
}

bool LaurentSeries::agrees_with(const LaurentSeries& b) const {
  return first_difference(b) == std::min(prec_, b.prec_);
}

std::string LaurentSeries::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    int j = v_ + static_cast<int>(i);
    if (!out.empty()) out += " + ";
    std::string cs = F_->to_string(c_[i]);
    if (cs.find('+') != std::string::npos) cs = "(" + cs + ")";
    if (j == 0)
      out += cs;
    else
      out += (c_[i] == 1 ? "" : cs + "*") + "pi^" + std::to_string(j);
  }
  if (!out.empty()) out += " + ";
  return out + "O(pi^" + std::to_string(prec_) + ")";
}

}  // namespace drinfeld
