#include "drinfeld/gf.hpp"

#include "drinfeld/errors.hpp"

namespace drinfeld {

std::shared_ptr<const GF> GF::make(const PolyA& h) {
  return std::shared_ptr<const GF>(new GF(h));
}

GF::GF(const PolyA& h) : h_(h) {
  if (!h_.is_monic() || !is_irreducible(h_))
    throw DomainError(h.to_string() + " is not a monic irreducible polynomial");
}

std::uint64_t GF::size() const {
  unsigned __int128 r = 1;
  for (int i = 0; i < degree(); ++i) {
    r *= base().q();
    if (r > (static_cast<unsigned __int128>(1) << 63))
      throw DomainError("field " + descriptor() + " too large to enumerate");
  }
  return static_cast<std::uint64_t>(r);
}

std::string GF::descriptor() const {
  return "GF(" + base().descriptor() + ";" + h_.to_string() + ")";
}

GF::Elem GF::inv(const Elem& a) const {
  if (a.is_zero()) throw DomainError("inverse of zero in " + descriptor());
  return invmod(a, h_);
}

GF::Elem GF::frob(const Elem& a) const {
  if (degree() > 6) {
    const auto& M = frobenius_matrix();
    return from_coordinates(M.apply(coordinates(a)));
  }
  return powmod(a, base().q(), h_);
}

GF::Elem GF::frob_n(const Elem& a, int n) const {
  Elem r = a;
  n %= degree();
  for (int i = 0; i < n; ++i) r = frob(r);
  return r;
}

std::vector<Fq::Elem> GF::coordinates(const Elem& a) const {
  std::vector<Fq::Elem> c(degree(), 0);
  for (int i = 0; i <= a.degree(); ++i) c[i] = a[i];
  return c;
}

const FqMatrix& GF::frobenius_matrix() const {
  std::call_once(frob_once_, [this] {
    int n = degree();
    auto M = std::make_unique<FqMatrix>(base(), n, n);
    PolyA xq = powmod(PolyA::T(base()), base().q(), h_);
    PolyA col = one();
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) M->at(i, j) = col[i];
      col = (col * xq) % h_;
    }
    frob_ = std::move(M);
  });
  return *frob_;
}

std::vector<GF::Elem> GF::subfield_basis(int d) const {
  if (d <= 0 || degree() % d != 0)
    throw DomainError("no subfield of degree " + std::to_string(d) + " in " + descriptor());
  FqMatrix A = frobenius_matrix().pow(d) - FqMatrix::identity(base(), degree());
  std::vector<Elem> out;
  for (auto& v : A.nullspace()) out.push_back(from_coordinates(v));
  return out;
}

PolyA GF::minimal_polynomial(const Elem& a) const {
  // product of (Y - a^{q^i}) over the Frobenius orbit; coefficients land in F_q
  std::vector<Elem> orbit{a};
  for (;;) {
    Elem nx = frob(orbit.back());
    if (nx == a) break;
    orbit.push_back(nx);
  }
  std::vector<Elem> poly{one()};
  for (auto& r : orbit) {
    std::vector<Elem> next(poly.size() + 1, zero());
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] = add(next[i + 1], poly[i]);
      next[i] = sub(next[i], mul(poly[i], r));
    }
    poly = std::move(next);
  }
  std::vector<Fq::Elem> c;
  for (auto& x : poly) {
    if (x.degree() > 0) throw DomainError("minimal polynomial not over F_q");
    c.push_back(x[0]);
  }
  return PolyA(base(), c);
}

GF::Elem GFEmbedding::map(const GF::Elem& a) const {
  GF::Elem r = dst->zero();
  for (int i = a.degree(); i >= 0; --i) r = dst->add(dst->mul(r, image), dst->from_fq(a[i]));
  return r;
}

GFEmbedding GFEmbedding::identity(const GFPtr& K) { return GFEmbedding{K, K, K->gen()}; }

PolyA first_irreducible(const Fq& F, int d) {
  std::uint64_t n = 1;
  for (int i = 0; i < d; ++i) {
    n *= F.q();
    if (n > (1ull << 62)) n = 1ull << 62;
  }
  // graded lexicographic: iterate lower-coefficient codes upward
  for (std::uint64_t c = 0; c < n; ++c) {
    PolyA f = PolyA::monic_from_code(F, d, c);
    if (f[0] == 0 && d > 1) continue;
    if (is_irreducible(f)) return f;
  }
  throw DomainError("no irreducible polynomial found");
}

std::vector<GF::Elem> roots_in(const GF& K, const std::vector<GF::Elem>& c) {
  std::uint64_t n = K.size();
  if (n > (1ull << 22)) throw DomainError("root search space too large in " + K.descriptor());
  std::vector<GF::Elem> out;
  for (std::uint64_t i = 0; i < n; ++i) {
    GF::Elem x = K.element(i);
    GF::Elem v = K.zero();
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = K.add(K.mul(v, x), *it);
    if (v.is_zero()) out.push_back(x);
  }
  return out;
}

GFExtension extend(const GFPtr& K, int m) {
  if (m < 1) throw DomainError("extension degree must be positive");
  if (m == 1) return {K, GFEmbedding::identity(K)};
  const Fq& F = K->base();
  int N = K->degree() * m;
  auto L = GF::make(first_irreducible(F, N));
  // a root of K's modulus inside the degree-deg(K) subfield of L
  int d = K->degree();
  auto basis = L->subfield_basis(d);
  std::uint64_t count = 1;
  for (int i = 0; i < d; ++i) count *= F.q();
  const PolyA& h = K->modulus();
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    GF::Elem x = L->zero();
    std::uint64_t t = idx;
    for (int i = 0; i < d; ++i) {
      x = L->add(x, basis[i].scaled(static_cast<Fq::Elem>(t % F.q())));
      t /= F.q();
    }
    GF::Elem v = L->zero();
    for (int i = h.degree(); i >= 0; --i) v = L->add(L->mul(v, x), L->from_fq(h[i]));
    if (v.is_zero()) return {L, GFEmbedding{K, L, x}};
  }
  throw DomainError("failed to embed " + K->descriptor());
}

}  // namespace drinfeld
