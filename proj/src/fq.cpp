#include "drinfeld/fq.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

#include "drinfeld/errors.hpp"

namespace drinfeld {

namespace {

constexpr unsigned kMaxOrder = 256;

std::vector<unsigned> digits(unsigned code, unsigned p, unsigned n) {
  std::vector<unsigned> d(n);
  for (unsigned i = 0; i < n; ++i) {
    d[i] = code % p;
    code /= p;
  }
  return d;
}

unsigned undigits(const std::vector<unsigned>& d, unsigned p) {
  unsigned c = 0;
  for (auto it = d.rbegin(); it != d.rend(); ++it) c = c * p + *it;
  return c;
}

// Product of two coordinate vectors modulo a monic modulus of degree e.
std::vector<unsigned> mulmod(const std::vector<unsigned>& a,
                             const std::vector<unsigned>& b,
                             const std::vector<unsigned>& mod, unsigned p) {
  unsigned e = static_cast<unsigned>(mod.size()) - 1;
  std::vector<unsigned> r(2 * e, 0);
  for (unsigned i = 0; i < e; ++i)
    for (unsigned j = 0; j < e; ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  for (unsigned k = 2 * e - 1; k >= e && k < 2 * e; --k) {
    unsigned c = r[k];
    if (c == 0) continue;
    r[k] = 0;
    for (unsigned i = 0; i < e; ++i)
      r[k - e + i] = (r[k - e + i] + (p - c) * mod[i]) % p;
  }
  r.resize(e);
  return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

const FiniteField& FiniteField::get(unsigned p, unsigned e) {
  static std::mutex mu;
  static std::map<std::pair<unsigned, unsigned>, std::unique_ptr<FiniteField>> cache;
  if (!is_prime_u64(p)) throw DomainError("characteristic " + std::to_string(p) + " is not prime");
  if (e == 0) throw DomainError("extension degree must be positive");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < e; ++i) {
    q *= p;
    if (q > kMaxOrder) throw DomainError("field order exceeds " + std::to_string(kMaxOrder));
  }
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{p, e}];
  if (!slot) slot.reset(new FiniteField(p, e));
  return *slot;
}

const FiniteField& FiniteField::of_order(unsigned q) {
  if (q < 2) throw DomainError("q must be a prime power >= 2");
  unsigned p = 2;
  while (q % p != 0) ++p;
  unsigned e = 0, r = q;
  while (r % p == 0) {
    r /= p;
    ++e;
  }
  if (r != 1) throw DomainError(std::to_string(q) + " is not a prime power");
  return get(p, e);
}

FiniteField::FiniteField(unsigned p, unsigned e) : p_(p), e_(e), q_(1) {
  for (unsigned i = 0; i < e; ++i) q_ *= p;
  if (e > 1) {
    // First monic irreducible of degree e (ordered by lower coefficients,
    // highest first) whose root generates the unit group.
    unsigned ncand = q_;
    bool found = false;
    for (unsigned code = 0; code < ncand && !found; ++code) {
      std::vector<unsigned> m = digits(code, p, e);
      m.push_back(1);
      if (m[0] == 0) continue;
      // order of z in (F_p[z]/m)^x must be q-1; this also forces irreducibility
      std::vector<unsigned> x(e, 0), one(e, 0);
      one[0] = 1;
      if (e >= 2) x[1] = 1;
      std::vector<unsigned> acc = x;
      unsigned ord = 1;
      while (acc != one && ord < q_) {
        acc = mulmod(acc, x, m, p);
        ++ord;
      }
      if (acc == one && ord == q_ - 1) {
        modulus_ = m;
        found = true;
      }
    }
    if (!found) throw DomainError("no primitive modulus found");
  }
  add_.resize(q_ * q_);
  mul_.resize(q_ * q_);
  neg_.resize(q_);
  inv_.assign(q_, 0);
  for (unsigned a = 0; a < q_; ++a) {
    auto da = digits(a, p, e);
    std::vector<unsigned> dn(e);
    for (unsigned i = 0; i < e; ++i) dn[i] = (p - da[i]) % p;
    neg_[a] = undigits(dn, p);
    for (unsigned b = 0; b < q_; ++b) {
      auto db = digits(b, p, e);
      std::vector<unsigned> ds(e);
      for (unsigned i = 0; i < e; ++i) ds[i] = (da[i] + db[i]) % p;
      add_[a * q_ + b] = undigits(ds, p);
      mul_[a * q_ + b] = mul_slow(a, b);
    }
  }
  for (unsigned a = 1; a < q_; ++a)
    for (unsigned b = 1; b < q_; ++b)
      if (mul_[a * q_ + b] == 1) inv_[a] = b;
  // primitive element
  for (unsigned g = 1; g < q_; ++g) {
    unsigned acc = g, ord = 1;
    while (acc != 1) {
      acc = mul_[acc * q_ + g];
      ++ord;
    }
    if (ord == q_ - 1) {
      gen_ = g;
      break;
    }
  }
}

FiniteField::Elem FiniteField::mul_slow(Elem a, Elem b) const {
  if (e_ == 1) return static_cast<Elem>((static_cast<std::uint64_t>(a) * b) % p_);
  return undigits(mulmod(digits(a, p_, e_), digits(b, p_, e_), modulus_, p_), p_);
}

FiniteField::Elem FiniteField::inv(Elem a) const {
  if (a == 0) throw DomainError("inverse of zero in " + descriptor());
  return inv_[a];
}

FiniteField::Elem FiniteField::pow(Elem a, std::uint64_t n) const {
  Elem r = 1;
  while (n) {
    if (n & 1) r = mul(r, a);
    a = mul(a, a);
    n >>= 1;
  }
  return r;
}

FiniteField::Elem FiniteField::from_int(long long n) const {
  long long r = n % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

FiniteField::Elem FiniteField::basis(unsigned i) const {
  Elem c = 1;
  for (unsigned k = 0; k < i; ++k) c *= p_;
  return c;
}

std::string FiniteField::to_string(Elem a) const {
  if (e_ == 1) return std::to_string(a);
  auto d = digits(a, p_, e_);
  std::string out;
  for (int i = static_cast<int>(e_) - 1; i >= 0; --i) {
    if (d[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(d[i]);
      continue;
    }
    if (d[i] != 1) out += std::to_string(d[i]) + "*";
    out += "z";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

FiniteField::Elem FiniteField::parse(std::string_view s) const {
  std::string t;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  if (!t.empty() && t.front() == '(' && t.back() == ')') t = t.substr(1, t.size() - 2);
  if (t.empty()) throw ParseError("empty field element");
  std::vector<unsigned> acc(e_, 0);
  std::size_t pos = 0;
  bool first = true;
  while (pos < t.size()) {
    bool negate = false;
    if (t[pos] == '+' || t[pos] == '-') {
      negate = t[pos] == '-';
      ++pos;
    } else if (!first) {
      throw ParseError("expected '+' in field element '" + t + "'");
    }
    first = false;
    long long coef = 1;
    bool have_coef = false;
    std::size_t start = pos;
    while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) ++pos;
    if (pos > start) {
      coef = std::stoll(t.substr(start, pos - start));
      have_coef = true;
    }
    unsigned deg = 0;
    if (pos < t.size() && t[pos] == '*') {
      if (!have_coef) throw ParseError("dangling '*' in '" + t + "'");
      ++pos;
    }
    if (pos < t.size() && t[pos] == 'z') {
      if (e_ == 1) throw ParseError("'z' used in a prime field: '" + t + "'");
      ++pos;
      deg = 1;
      if (pos < t.size() && t[pos] == '^') {
        ++pos;
        std::size_t s2 = pos;
        while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) ++pos;
        if (pos == s2) throw ParseError("missing exponent in '" + t + "'");
        deg = static_cast<unsigned>(std::stoul(t.substr(s2, pos - s2)));
      }
    } else if (!have_coef) {
      throw ParseError("cannot parse field element '" + t + "'");
    }
    // reduce z^deg via the field tables
    Elem term = from_int(negate ? -coef : coef);
    Elem zpow = pow(e_ == 1 ? 1 : static_cast<Elem>(p_), deg);
    Elem v = mul(term, zpow);
    auto dv = digits(v, p_, e_);
    for (unsigned i = 0; i < e_; ++i) acc[i] = (acc[i] + dv[i]) % p_;
  }
  return undigits(acc, p_);
}

std::string FiniteField::descriptor() const {
  std::string m = "-";
  if (e_ > 1) {
    std::string out;
    for (int i = static_cast<int>(e_); i >= 0; --i) {
      unsigned c = modulus_[i];
      if (c == 0) continue;
      if (!out.empty()) out += "+";
      if (i == 0) {
        out += std::to_string(c);
        continue;
      }
      if (c != 1) out += std::to_string(c) + "*";
      out += "z";
      if (i > 1) out += "^" + std::to_string(i);
    }
    m = out;
  }
  return "Fq(" + std::to_string(p_) + "," + std::to_string(e_) + "," + m + ")";
}

}  // namespace drinfeld
