#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "drinfeld/errors.hpp"
#include "drinfeld/fields.hpp"

namespace drinfeld {

// F_q-linear polynomial sum a_i x^{q^i} over K; product is composition.
// Terms are stored sparsely by q-power index, ascending, nonzero only.
template <CoefficientField K>
class SkewPoly {
 public:
  using Elem = typename K::Elem;
  using Term = std::pair<int, Elem>;

  explicit SkewPoly(const K& k) : k_(&k) {}
  // Dense coefficients a_0, a_1, ...
  SkewPoly(const K& k, const std::vector<Elem>& dense) : k_(&k) {
    for (std::size_t i = 0; i < dense.size(); ++i)
      if (!k.is_zero(dense[i])) t_.emplace_back(static_cast<int>(i), dense[i]);
  }
  static SkewPoly monomial(const K& k, const Elem& c, int i) {
    SkewPoly r(k);
    if (!k.is_zero(c)) r.t_.emplace_back(i, c);
    return r;
  }
  static SkewPoly identity(const K& k) { return monomial(k, k.one(), 0); }

  const K& field() const { return *k_; }
  bool is_zero() const { return t_.empty(); }
  int qdeg() const { return t_.empty() ? -1 : t_.back().first; }
  // Least index with nonzero coefficient.
  int height() const {
    if (t_.empty()) throw DomainError("height of the zero skew polynomial");
    return t_.front().first;
  }
  Elem coeff(int i) const {
    auto it = std::lower_bound(t_.begin(), t_.end(), i, [](const Term& t, int j) { return t.first < j; });
    if (it != t_.end() && it->first == i) return it->second;
    return k_->zero();
  }
  // The derivative f'(x) = a_0.
  Elem constant_term() const { return coeff(0); }
  Elem lead() const { return t_.empty() ? k_->zero() : t_.back().second; }
  const std::vector<Term>& terms() const { return t_; }
  std::vector<Elem> dense() const {
    std::vector<Elem> d(qdeg() + 1, k_->zero());
    for (auto& [i, c] : t_) d[i] = c;
    return d;
  }

  friend SkewPoly operator+(const SkewPoly& a, const SkewPoly& b) { return a.merge(b, false); }
  friend SkewPoly operator-(const SkewPoly& a, const SkewPoly& b) { return a.merge(b, true); }
  SkewPoly operator-() const {
    SkewPoly r(*k_);
    for (auto& [i, c] : t_) r.t_.emplace_back(i, k_->neg(c));
    return r;
  }
  // c * f (left scalar multiplication).
  SkewPoly scaled(const Elem& c) const {
    SkewPoly r(*k_);
    for (auto& [i, a] : t_) {
      Elem v = k_->mul(c, a);
      if (!k_->is_zero(v)) r.t_.emplace_back(i, v);
    }
    return r;
  }
  // f o g: coefficient of x^{q^k} is sum_{i+j=k} a_i b_j^{q^i}.
  SkewPoly compose(const SkewPoly& g) const {
    if (is_zero() || g.is_zero()) return SkewPoly(*k_);
    int n = qdeg() + g.qdeg();
    std::vector<Elem> acc(n + 1, k_->zero());
    std::vector<bool> touched(n + 1, false);
    // twisted copies of g's coefficients, advanced one Frobenius at a time
    std::vector<Elem> tw;
    for (auto& [j, b] : g.t_) tw.push_back(b);
    int level = 0;
    for (auto& [i, a] : t_) {
      while (level < i) {
        for (auto& b : tw) b = k_->frob(b);
        ++level;
      }
      for (std::size_t m = 0; m < g.t_.size(); ++m) {
        int idx = i + g.t_[m].first;
        acc[idx] = k_->add(acc[idx], k_->mul(a, tw[m]));
        touched[idx] = true;
      }
    }
    SkewPoly r(*k_);
    for (int idx = 0; idx <= n; ++idx)
      if (touched[idx] && !k_->is_zero(acc[idx])) r.t_.emplace_back(idx, acc[idx]);
    return r;
  }
  // f(alpha) = sum a_i alpha^{q^i}.
  Elem evaluate(const Elem& alpha) const {
    Elem r = k_->zero(), p = alpha;
    int level = 0;
    for (auto& [i, a] : t_) {
      while (level < i) {
        p = k_->frob(p);
        ++level;
      }
      r = k_->add(r, k_->mul(a, p));
    }
    return r;
  }
  // Through the difference, so approximate fields compare within precision.
  bool equals(const SkewPoly& b) const { return (*this - b).is_zero(); }

  // "a0*x + a1*x^q + a2*x^q2"; coefficients parenthesized unless atomic.
  std::string to_string() const {
    if (t_.empty()) return "0";
    std::string out;
    for (auto& [i, c] : t_) {
      if (!out.empty()) out += " + ";
      std::string cs = k_->to_string(c);
      bool atomic = cs.find_first_of("+-*/ ") == std::string::npos;
      std::string xs = i == 0 ? "x" : (i == 1 ? "x^q" : "x^q" + std::to_string(i));
      if (cs == "1")
        out += xs;
      else
        out += (atomic ? cs : "(" + cs + ")") + "*" + xs;
    }
    return out;
  }

 private:
  SkewPoly merge(const SkewPoly& b, bool subtract) const {
    SkewPoly r(*k_);
    std::size_t i = 0, j = 0;
    while (i < t_.size() || j < b.t_.size()) {
      if (j == b.t_.size() || (i < t_.size() && t_[i].first < b.t_[j].first)) {
        r.t_.push_back(t_[i++]);
      } else if (i == t_.size() || b.t_[j].first < t_[i].first) {
        r.t_.emplace_back(b.t_[j].first, subtract ? k_->neg(b.t_[j].second) : b.t_[j].second);
        ++j;
      } else {
        Elem v = subtract ? k_->sub(t_[i].second, b.t_[j].second) : k_->add(t_[i].second, b.t_[j].second);
        if (!k_->is_zero(v)) r.t_.emplace_back(t_[i].first, v);
        ++i;
        ++j;
      }
    }
    return r;
  }

  const K* k_;
  std::vector<Term> t_;
};

// f = h o g + r with qdeg r < qdeg g.
template <CoefficientField K>
std::pair<SkewPoly<K>, SkewPoly<K>> right_divide(const SkewPoly<K>& f, const SkewPoly<K>& g) {
  if (g.is_zero()) throw DomainError("right division by the zero skew polynomial");
  const K& k = f.field();
  SkewPoly<K> h(k), r = f;
  int dg = g.qdeg();
  // lead(g)^{q^d} for growing d
  std::vector<typename K::Elem> lead_tw{g.lead()};
  while (!r.is_zero() && r.qdeg() >= dg) {
    int d = r.qdeg() - dg;
    while (static_cast<int>(lead_tw.size()) <= d) lead_tw.push_back(k.frob(lead_tw.back()));
    auto c = k.mul(r.lead(), k.inv(lead_tw[d]));
    auto term = SkewPoly<K>::monomial(k, c, d);
    h = h + term;
    int before = r.qdeg();
    r = r - term.compose(g);
    if (!r.is_zero() && r.qdeg() >= before) {
      // leading coefficient did not cancel (approximate fields): drop it explicitly
      auto dense = r.dense();
      dense.resize(before);
      r = SkewPoly<K>(k, dense);
    }
  }
  return {h, r};
}

// Kernel of f in the extension K' (f over emb.src): an F_q-basis of the
// roots, from the null space of alpha -> f(alpha) on K' as an F_q-space.
std::vector<GF::Elem> kernel_over(const SkewPoly<GF>& f, const GFEmbedding& emb);

// Matrix over F_q of alpha -> f(alpha) on K' = emb.dst.
FqMatrix action_matrix(const SkewPoly<GF>& f, const GFEmbedding& emb);

// s with the same roots as f and nonzero constant term.
SkewPoly<GF> separable_part(const SkewPoly<GF>& f);
// Degree over F_q of the smallest extension of K (f's field) holding all
// roots of f; PrecisionError when the relative degree would exceed cap.
int splitting_degree(const SkewPoly<GF>& f, int cap);

}  // namespace drinfeld
