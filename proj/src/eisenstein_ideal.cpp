#include "drinfeld/eisenstein_ideal.hpp"

#include "drinfeld/errors.hpp"

namespace drinfeld {

namespace {

mpz_class upow(const mpz_class& b, int e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

mpz_class norm_of(const PolyA& p) { return upow(mpz_class(p.field().q()), p.degree()); }

ZMatrix flatten(const std::vector<ZMatrix>& ms) {
  if (ms.empty()) return {};
  int g = ms[0].rows();
  ZMatrix out(static_cast<int>(ms.size()), g * g);
  for (int i = 0; i < out.rows(); ++i)
    for (int a = 0; a < g; ++a)
      for (int b = 0; b < g; ++b) out.at(i, a * g + b) = ms[i].at(a, b);
  return out;
}

ZMatrix unflatten(const ZMatrix& rows, int i, int g) {
  ZMatrix m(g, g);
  for (int a = 0; a < g; ++a)
    for (int b = 0; b < g; ++b) m.at(a, b) = rows.at(i, a * g + b);
  return m;
}

bool in_lattice(const ZMatrix& hnf, const ZMatrix& extra) {
  ZMatrix both(hnf.rows() + extra.rows(), hnf.cols());
  for (int i = 0; i < hnf.rows(); ++i)
    for (int j = 0; j < hnf.cols(); ++j) both.at(i, j) = hnf.at(i, j);
  for (int i = 0; i < extra.rows(); ++i)
    for (int j = 0; j < hnf.cols(); ++j) both.at(hnf.rows() + i, j) = extra.at(i, j);
  return hermite_normal_form(both) == hnf;
}

int valuation(mpz_class x, const mpz_class& l) {
  if (x == 0) return 1 << 30;
  int v = 0;
  while (x % l == 0) {
    x /= l;
    ++v;
  }
  return v;
}

std::vector<mpz_class> prime_factors(mpz_class x) {
  std::vector<mpz_class> out;
  for (mpz_class d = 2; d * d <= x; ++d)
    if (x % d == 0) {
      out.push_back(d);
      while (x % d == 0) x /= d;
    }
  if (x > 1) out.push_back(x);
  return out;
}

}  // namespace

mpz_class cuspidal_order_rank2(const PolyA& p) { return cuspidal_order_rank_r(p, 2); }

mpz_class cuspidal_order_rank_r(const PolyA& p, int r) {
  if (r < 2) throw DomainError("rank must be at least 2");
  if (!is_irreducible(p) || !p.is_monic()) throw DomainError(p.to_string() + " is not a monic prime");
  mpz_class np = norm_of(p), q = p.field().q();
  mpz_class g = gcd(mpz_class(upow(q, r) - 1), mpz_class(np - 1));
  return (upow(np, r - 1) - 1) / g;
}

HeckeAlgebraLattice hecke_algebra(const std::vector<Cochain>& cusp_basis, int B, int jobs) {
  if (cusp_basis.empty()) throw DomainError("cuspidal space is zero");
  HeckeAlgebraLattice T;
  T.B = B;
  T.dim = static_cast<int>(cusp_basis.size());
  const Fq& F = cusp_basis[0].space().field();
  std::vector<ZMatrix> ms;
  for (int d = 0; d <= B; ++d)
    for (auto& m : monic_polys(F, d)) {
      T.generators.push_back(hecke_matrix(m, cusp_basis, jobs));
      ms.push_back(T.generators.back().matrix);
    }
  T.basis = hermite_normal_form(flatten(ms));
  std::vector<ZMatrix> prods;
  for (int i = 0; i < T.basis.rows(); ++i)
    for (int j = 0; j < T.basis.rows(); ++j)
      prods.push_back(unflatten(T.basis, i, T.dim) * unflatten(T.basis, j, T.dim));
  T.closed_under_products = in_lattice(T.basis, flatten(prods));
  return T;
}

namespace {

struct IndexData {
  mpz_class index;
  std::vector<mpz_class> divisors;
  ZMatrix coords;
};

IndexData ideal_index(const HeckeAlgebraLattice& T, const PolyA& n, int maxdeg, int jobs,
                      const std::vector<Cochain>& basis) {
  const Fq& F = n.field();
  int g = T.dim;
  std::vector<ZMatrix> gens;
  for (int d = 1; d <= maxdeg; ++d)
    for (auto& P : monic_irreducibles(F, d)) {
      if ((n % P).is_zero()) continue;
      ZMatrix eta = hecke_matrix(P, basis, jobs).matrix - ZMatrix::identity(g).scaled(Int(norm_of(P) + 1));
      for (int i = 0; i < T.basis.rows(); ++i) gens.push_back(eta * unflatten(T.basis, i, g));
    }
  ZMatrix M = flatten(gens);
  // coordinates of the generators in the HNF basis of T
  QMatrix LT = to_rational(T.basis.transpose());
  ZMatrix C(M.rows(), T.basis.rows());
  for (int i = 0; i < M.rows(); ++i) {
    std::vector<Rat> b(M.cols());
    for (int j = 0; j < M.cols(); ++j) b[j] = M.at(i, j);
    auto x = solve(LT, b);
    if (!x) throw DomainError("Eisenstein generator outside the Hecke algebra span");
    for (int j = 0; j < C.cols(); ++j) {
      if ((*x)[j].get_den() != 1) throw DomainError("Hecke algebra lattice is not closed");
      C.at(i, j) = (*x)[j].get_num();
    }
  }
  auto s = smith_normal_form(C);
  IndexData out{1, {}, C};
  for (auto& d : s.diag) {
    if (d == 0) throw DomainError("Eisenstein ideal has infinite index (rank deficient)");
    out.divisors.push_back(d);
    out.index *= d;
  }
  if (static_cast<int>(s.diag.size()) < T.basis.rows()) throw DomainError("Eisenstein ideal has infinite index");
  return out;
}

}  // namespace

EisensteinIdealReport eisenstein_index(const PolyA& n, int B_start, int B_max, int jobs) {
  if (B_start < 1) throw DomainError("generator degree bound must be >= 1");
  auto H = HarmonicSpace::create(n);
  auto cusp = harmonic_basis(H, true);
  if (cusp.empty()) throw DomainError("cuspidal space of level " + n.to_string() + " is zero; no Eisenstein index");
  EisensteinIdealReport R;
  R.level = n;
  auto prev = hecke_algebra(cusp, B_start, jobs);
  int B = B_start;
  for (;;) {
    if (B + 1 > B_max)
      throw PrecisionError("Hecke algebra lattice not stable by B = " + std::to_string(B_max) + " (rank " +
                           std::to_string(prev.basis.rows()) + ")");
    auto next = hecke_algebra(cusp, B + 1, jobs);
    if (next.basis == prev.basis) break;
    prev = next;
    ++B;
  }
  R.B = B;
  if (!prev.closed_under_products) throw DomainError("stable Hecke lattice is not a ring");
  auto a = ideal_index(prev, n, B + 1, jobs, cusp);
  auto b = ideal_index(prev, n, B + 2, jobs, cusp);
  R.index = a.index;
  R.index_at_next_B = b.index;
  R.elementary_divisors = a.divisors;
  R.coordinates = a.coords;
  R.odd_part = R.index;
  while (R.odd_part % 2 == 0 && R.odd_part != 0) R.odd_part /= 2;

  bool prime = is_irreducible(n);
  R.predicted_order = prime ? cuspidal_order_rank2(n) : mpz_class(0);
  mpz_class q = n.field().q(), p = n.field().p();
  std::vector<mpz_class> ells = prime_factors(R.index);
  for (auto& l : prime_factors(R.predicted_order))
    if (std::find(ells.begin(), ells.end(), l) == ells.end()) ells.push_back(l);
  std::sort(ells.begin(), ells.end());
  R.all_in_scope_match = prime;
  for (auto& l : ells) {
    PrimeComparison c;
    c.ell = l;
    c.index_exponent = valuation(R.index, l);
    c.predicted_exponent = prime ? valuation(R.predicted_order, l) : 0;
    c.in_scope = (p % l != 0) && ((q - 1) % l != 0);
    c.match = c.index_exponent == c.predicted_exponent;
    if (c.in_scope && !c.match) R.all_in_scope_match = false;
    R.primes.push_back(c);
  }
  try {
    auto E = eisenstein_cochain(H, jobs);
    R.eisenstein_constant = fourier_coeffs(E, 1).f0[1];
  } catch (const DomainError&) {
    R.eisenstein_constant = 0;
  }
  return R;
}

}  // namespace drinfeld
