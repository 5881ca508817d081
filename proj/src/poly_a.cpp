#include "drinfeld/poly_a.hpp"

#include <algorithm>
#include <cctype>
#include <random>

#include "drinfeld/errors.hpp"

namespace drinfeld {

PolyA::PolyA(const Fq& F, std::vector<Elem> c) : F_(&F), c_(std::move(c)) { trim(); }

void PolyA::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

PolyA PolyA::constant(const Fq& F, Elem c) { return PolyA(F, {c}); }

PolyA PolyA::T(const Fq& F) { return PolyA(F, {0, 1}); }

PolyA PolyA::monomial(const Fq& F, Elem c, int k) {
  if (c == 0) return PolyA(F);
  std::vector<Elem> v(k + 1, 0);
  v[k] = c;
  return PolyA(F, std::move(v));
}

PolyA PolyA::from_code(const Fq& F, std::uint64_t code) {
  std::vector<Elem> v;
  while (code) {
    v.push_back(static_cast<Elem>(code % F.q()));
    code /= F.q();
  }
  return PolyA(F, std::move(v));
}

PolyA PolyA::monic_from_code(const Fq& F, int d, std::uint64_t code) {
  std::vector<Elem> v(d + 1, 0);
  for (int i = 0; i < d; ++i) {
    v[i] = static_cast<Elem>(code % F.q());
    code /= F.q();
  }
  v[d] = 1;
  return PolyA(F, std::move(v));
}

PolyA PolyA::monic() const {
  if (is_zero()) return *this;
  return scaled(F_->inv(lead()));
}

std::uint64_t PolyA::code() const {
  std::uint64_t r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * F_->q() + *it;
  return r;
}

std::uint64_t PolyA::norm() const {
  if (is_zero()) return 0;
  std::uint64_t r = 1;
  for (int i = 0; i < degree(); ++i) r *= F_->q();
  return r;
}

PolyA PolyA::operator-() const {
  PolyA r(*this);
  for (auto& c : r.c_) c = F_->neg(c);
  return r;
}

PolyA& PolyA::operator+=(const PolyA& b) {
  if (!F_) F_ = b.F_;
  if (b.c_.size() > c_.size()) c_.resize(b.c_.size(), 0);
  for (std::size_t i = 0; i < b.c_.size(); ++i) c_[i] = F_->add(c_[i], b.c_[i]);
  trim();
  return *this;
}

PolyA& PolyA::operator-=(const PolyA& b) {
  if (!F_) F_ = b.F_;
  if (b.c_.size() > c_.size()) c_.resize(b.c_.size(), 0);
  for (std::size_t i = 0; i < b.c_.size(); ++i) c_[i] = F_->sub(c_[i], b.c_[i]);
  trim();
  return *this;
}

PolyA operator*(const PolyA& a, const PolyA& b) {
  const Fq* F = a.F_ ? a.F_ : b.F_;
  if (a.is_zero() || b.is_zero()) return PolyA(*F);
  std::vector<PolyA::Elem> r(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    auto ai = a.c_[i];
    if (ai == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      r[i + j] = F->add(r[i + j], F->mul(ai, b.c_[j]));
  }
  return PolyA(*F, std::move(r));
}

PolyA& PolyA::operator*=(const PolyA& b) { return *this = *this * b; }

PolyA PolyA::scaled(Elem c) const {
  if (c == 0) return PolyA(*F_);
  PolyA r(*this);
  for (auto& x : r.c_) x = F_->mul(x, c);
  return r;
}

PolyA PolyA::shifted(int k) const {
  if (is_zero() || k == 0) return *this;
  PolyA r(*F_);
  r.c_.assign(k, 0);
  r.c_.insert(r.c_.end(), c_.begin(), c_.end());
  return r;
}

bool operator<(const PolyA& a, const PolyA& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i)
    if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
  return false;
}

PolyA::Elem PolyA::eval(Elem x) const {
  Elem r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = F_->add(F_->mul(r, x), *it);
  return r;
}

PolyA PolyA::derivative() const {
  if (c_.size() <= 1) return PolyA(*F_);
  std::vector<Elem> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i)
    r[i - 1] = F_->mul(F_->from_int(static_cast<long long>(i)), c_[i]);
  return PolyA(*F_, std::move(r));
}

PolyA PolyA::frob() const {
  if (is_zero()) return *this;
  unsigned q = F_->q();
  std::vector<Elem> r((c_.size() - 1) * q + 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) r[i * q] = c_[i];
  return PolyA(*F_, std::move(r));
}

PolyA PolyA::pow(std::uint64_t n) const {
  PolyA r = constant(*F_, 1), b = *this;
  while (n) {
    if (n & 1) r *= b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

PolyA PolyA::compose(const PolyA& v) const {
  PolyA r(*F_);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * v + constant(*F_, *it);
  return r;
}

std::string PolyA::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    Elem c = c_[i];
    if (c == 0) continue;
    if (!out.empty()) out += "+";
    std::string cs = F_->to_string(c);
    if (cs.find('+') != std::string::npos) cs = "(" + cs + ")";
    if (i == 0) {
      out += cs;
      continue;
    }
    if (c != 1) out += cs + "*";
    out += "T";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

PolyA PolyA::parse(const Fq& F, std::string_view s) {
  std::string t;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  if (t.empty()) throw ParseError("empty polynomial literal");
  // split into signed terms at top-level + and -
  std::vector<std::pair<bool, std::string>> terms;
  int depth = 0;
  std::string cur;
  bool neg = false;
  for (std::size_t i = 0; i < t.size(); ++i) {
    char ch = t[i];
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth == 0 && (ch == '+' || ch == '-') && i > 0 && t[i - 1] != '^') {
      if (cur.empty()) throw ParseError("empty term in '" + t + "'");
      terms.emplace_back(neg, cur);
      cur.clear();
      neg = ch == '-';
      continue;
    }
    if (i == 0 && (ch == '+' || ch == '-')) {
      neg = ch == '-';
      continue;
    }
    cur += ch;
  }
  if (depth != 0) throw ParseError("unbalanced parentheses in '" + t + "'");
  if (cur.empty()) throw ParseError("trailing operator in '" + t + "'");
  terms.emplace_back(neg, cur);

  PolyA r(F);
  for (auto& [negate, term] : terms) {
    std::size_t tpos = std::string::npos;
    int d2 = 0;
    for (std::size_t i = 0; i < term.size(); ++i) {
      if (term[i] == '(') ++d2;
      if (term[i] == ')') --d2;
      if (d2 == 0 && term[i] == 'T') tpos = i;
    }
    Elem c = 1;
    int k = 0;
    if (tpos == std::string::npos) {
      c = F.parse(term);
    } else {
      std::string coef = term.substr(0, tpos);
      std::string tp = term.substr(tpos + 1);
      if (!coef.empty()) {
        if (coef.back() != '*') throw ParseError("expected '*' before T in '" + term + "'");
        coef.pop_back();
        c = F.parse(coef);
      }
      k = 1;
      if (!tp.empty()) {
        if (tp[0] != '^' || tp.size() < 2) throw ParseError("bad exponent in '" + term + "'");
        for (std::size_t i = 1; i < tp.size(); ++i)
          if (!std::isdigit(static_cast<unsigned char>(tp[i])))
            throw ParseError("bad exponent in '" + term + "'");
        k = std::stoi(tp.substr(1));
      }
    }
    if (negate) c = F.neg(c);
    r += monomial(F, c, k);
  }
  return r;
}

std::pair<PolyA, PolyA> divmod(const PolyA& a, const PolyA& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  const Fq& F = b.field();
  if (a.degree() < b.degree()) return {PolyA(F), a.has_field() ? a : PolyA(F)};
  std::vector<PolyA::Elem> r = a.coeffs();
  int db = b.degree();
  std::vector<PolyA::Elem> q(a.degree() - db + 1, 0);
  auto inv = F.inv(b.lead());
  const auto& bc = b.coeffs();
  for (int k = a.degree(); k >= db; --k) {
    auto c = r[k];
    if (c == 0) continue;
    c = F.mul(c, inv);
    q[k - db] = c;
    for (int i = 0; i <= db; ++i) r[k - db + i] = F.sub(r[k - db + i], F.mul(c, bc[i]));
  }
  r.resize(db);
  return {PolyA(F, std::move(q)), PolyA(F, std::move(r))};
}

PolyA operator/(const PolyA& a, const PolyA& b) { return divmod(a, b).first; }

PolyA operator%(const PolyA& a, const PolyA& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  if (a.degree() < b.degree()) return a;
  return divmod(a, b).second;
}

PolyA gcd(const PolyA& a, const PolyA& b) {
  PolyA x = a, y = b;
  while (!y.is_zero()) {
    PolyA r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.is_zero() ? x : x.monic();
}

XGcd xgcd(const PolyA& a, const PolyA& b) {
  const Fq& F = a.has_field() ? a.field() : b.field();
  PolyA r0 = a, r1 = b, s0 = PolyA::constant(F, 1), s1(F), t0(F), t1 = PolyA::constant(F, 1);
  while (!r1.is_zero()) {
    auto [qq, rr] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(rr);
    PolyA s2 = s0 - qq * s1, t2 = t0 - qq * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  auto inv = F.inv(r0.lead());
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

PolyA lcm(const PolyA& a, const PolyA& b) {
  if (a.is_zero() || b.is_zero()) return PolyA(a.has_field() ? a.field() : b.field());
  return (a / gcd(a, b) * b).monic();
}

PolyA mulmod(const PolyA& a, const PolyA& b, const PolyA& m) { return (a * b) % m; }

PolyA powmod(const PolyA& a, const mpz_class& n, const PolyA& m) {
  const Fq& F = m.field();
  PolyA r = PolyA::constant(F, 1) % m, b = a % m;
  std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  if (n == 0) return r;
  for (std::size_t i = bits; i-- > 0;) {
    r = mulmod(r, r, m);
    if (mpz_tstbit(n.get_mpz_t(), i)) r = mulmod(r, b, m);
  }
  return r;
}

PolyA powmod(const PolyA& a, std::uint64_t n, const PolyA& m) {
  const Fq& F = m.field();
  PolyA r = PolyA::constant(F, 1) % m, b = a % m;
  while (n) {
    if (n & 1) r = mulmod(r, b, m);
    n >>= 1;
    if (n) b = mulmod(b, b, m);
  }
  return r;
}

PolyA invmod(const PolyA& a, const PolyA& m) {
  auto x = xgcd(a % m, m);
  if (!x.g.is_one()) throw DomainError(a.to_string() + " is not invertible modulo " + m.to_string());
  return x.s % m;
}

bool is_irreducible(const PolyA& f) {
  int d = f.degree();
  if (d < 1) return false;
  if (d == 1) return true;
  const Fq& F = f.field();
  PolyA X = PolyA::T(F);
  PolyA xp = X;
  for (int i = 1; i <= d / 2; ++i) {
    xp = powmod(xp, F.q(), f);
    if (!gcd(f, xp - X).is_one()) return false;
  }
  return true;
}

std::vector<PolyA> monic_polys(const Fq& F, int d) {
  std::vector<PolyA> out;
  std::uint64_t n = 1;
  for (int i = 0; i < d; ++i) n *= F.q();
  out.reserve(n);
  for (std::uint64_t c = 0; c < n; ++c) out.push_back(PolyA::monic_from_code(F, d, c));
  return out;
}

std::vector<PolyA> monic_irreducibles(const Fq& F, int d) {
  if (d < 1) throw DomainError("irreducible degree must be >= 1");
  std::vector<PolyA> out;
  for (auto& f : monic_polys(F, d))
    if (is_irreducible(f)) out.push_back(f);
  return out;
}

void for_each_poly_upto(const Fq& F, int d, const std::function<void(const PolyA&)>& fn) {
  std::uint64_t n = 1;
  for (int i = 0; i <= d; ++i) n *= F.q();
  for (std::uint64_t c = 0; c < n; ++c) fn(PolyA::from_code(F, c));
}

namespace {

// p-th root of a polynomial whose derivative vanishes.
PolyA pth_root(const PolyA& f) {
  const Fq& F = f.field();
  unsigned p = F.p();
  std::uint64_t e = F.q() / p;  // c^(q/p) is the p-th root of c
  std::vector<PolyA::Elem> r(f.degree() / p + 1, 0);
  for (int i = 0; i <= f.degree(); i += p) r[i / p] = F.pow(f[i], e);
  return PolyA(F, std::move(r));
}

void squarefree_parts(const PolyA& f, int mult, std::vector<std::pair<PolyA, int>>& out) {
  if (f.degree() < 1) return;
  const Fq& F = f.field();
  PolyA df = f.derivative();
  if (df.is_zero()) {
    squarefree_parts(pth_root(f), mult * static_cast<int>(F.p()), out);
    return;
  }
  PolyA c = gcd(f, df);
  PolyA w = f / c;
  int i = 1;
  while (!w.is_one()) {
    PolyA y = gcd(w, c);
    PolyA z = w / y;
    if (z.degree() > 0) out.emplace_back(z.monic(), i * mult);
    ++i;
    w = y;
    c = c / y;
  }
  if (c.degree() > 0) squarefree_parts(pth_root(c), mult * static_cast<int>(F.p()), out);
}

void equal_degree_split(const PolyA& f, int d, std::mt19937_64& rng, std::vector<PolyA>& out) {
  int n = f.degree();
  if (n == d) {
    out.push_back(f.monic());
    return;
  }
  const Fq& F = f.field();
  std::uniform_int_distribution<unsigned> coef(0, F.q() - 1);
  mpz_class qd;
  mpz_ui_pow_ui(qd.get_mpz_t(), F.q(), d);
  for (;;) {
    std::vector<PolyA::Elem> rc(n);
    for (auto& c : rc) c = coef(rng);
    PolyA a(F, rc);
    if (a.degree() < 1) continue;
    PolyA b(F);
    if (F.p() == 2) {
      // absolute trace to F_2 of F_{q^d}
      PolyA acc = a % f, t = acc;
      unsigned steps = d * F.e();
      for (unsigned i = 1; i < steps; ++i) {
        t = mulmod(t, t, f);
        acc += t;
      }
      b = acc;
    } else {
      b = powmod(a, mpz_class((qd - 1) / 2), f) - PolyA::constant(F, 1);
    }
    PolyA g = gcd(f, b);
    if (g.degree() > 0 && g.degree() < n) {
      equal_degree_split(g, d, rng, out);
      equal_degree_split(f / g, d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<std::pair<PolyA, int>> factor(const PolyA& f) {
  if (f.is_zero()) throw DomainError("cannot factor 0");
  std::vector<std::pair<PolyA, int>> sf;
  squarefree_parts(f.monic(), 1, sf);
  const Fq& F = f.field();
  std::mt19937_64 rng(0x5eed);
  std::vector<std::pair<PolyA, int>> out;
  PolyA X = PolyA::T(F);
  for (auto& [g, m] : sf) {
    PolyA rest = g;
    PolyA xp = X;
    for (int d = 1; rest.degree() >= 2 * d; ++d) {
      xp = powmod(xp, F.q(), rest);
      PolyA h = gcd(rest, xp - X);
      if (h.degree() > 0) {
        std::vector<PolyA> parts;
        equal_degree_split(h, d, rng, parts);
        for (auto& pp : parts) out.emplace_back(pp, m);
        rest = rest / h;
        xp = xp % rest;
      }
    }
    if (rest.degree() > 0) out.emplace_back(rest.monic(), m);
  }
  std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.first < b.first; });
  // merge equal primes (possible across square-free layers)
  std::vector<std::pair<PolyA, int>> merged;
  for (auto& pr : out) {
    if (!merged.empty() && merged.back().first == pr.first)
      merged.back().second += pr.second;
    else
      merged.push_back(pr);
  }
  return merged;
}

int ord(const PolyA& a, const PolyA& l) {
  if (a.is_zero()) throw DomainError("ord of 0");
  int k = 0;
  PolyA x = a;
  for (;;) {
    auto [qq, r] = divmod(x, l);
    if (!r.is_zero()) return k;
    x = std::move(qq);
    ++k;
  }
}

bool is_squarefree(const PolyA& f) {
  for (auto& [pr, m] : factor(f))
    if (m > 1) return false;
  return true;
}

std::vector<PolyA> monic_divisors(const PolyA& a) {
  const Fq& F = a.field();
  std::vector<PolyA> divs{PolyA::constant(F, 1)};
  for (auto& [pr, m] : factor(a)) {
    std::size_t n = divs.size();
    PolyA pk = PolyA::constant(F, 1);
    for (int k = 1; k <= m; ++k) {
      pk *= pr;
      for (std::size_t i = 0; i < n; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

}  // namespace drinfeld
