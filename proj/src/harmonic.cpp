#include "drinfeld/harmonic.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <set>
#include <sstream>
#include <thread>

#include "drinfeld/errors.hpp"

namespace drinfeld {

namespace {

Rat qpow(unsigned q, int k) {
  Rat r = 1;
  for (int i = 0; i < std::abs(k); ++i) r *= q;
  return k >= 0 ? r : Rat(1) / r;
}

template <class Fn>
void parallel_for(int n, int jobs, Fn fn) {
  if (jobs <= 1 || n < 2) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  int J = std::min(jobs, n);
  for (int t = 0; t < J; ++t)
    pool.emplace_back([&, t] {
      for (int i = t; i < n; i += J) fn(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

// ---------------------------------------------------------------- space

std::shared_ptr<const HarmonicSpace> HarmonicSpace::create(const PolyA& n) {
  return std::make_shared<const HarmonicSpace>(n);
}

HarmonicSpace::HarmonicSpace(const PolyA& n) : Q_(n), S_(Q_.stable_level()) {
  for (int k = 0; k <= S_; ++k) {
    offset_.push_back(static_cast<int>(classes_.size()));
    for (int o = 0; o < Q_.edge_orbit_count(k); ++o) classes_.push_back({true, k, o});
  }
}

QMatrix HarmonicSpace::harmonic_equations() const {
  const Fq& F = field();
  const P1Space& P = Q_.p1();
  std::vector<std::vector<Rat>> rows;
  // level 0: the q+1 edges x s e_0, s in {(1 b; 0 1)} and w
  std::vector<Mat2A> star0;
  for (Fq::Elem b = 0; b < F.q(); ++b) star0.push_back(mat2a(F, 1, b, 0, 1));
  star0.push_back(mat2a(F, 0, 1, 1, 0));
  for (int k = 0; k <= S_; ++k) {
    std::set<int> done;
    for (int x = 0; x < P.size(); ++x) {
      int vo = Q_.vertex_orbit(k, x);
      if (!done.insert(vo).second) continue;
      std::vector<Rat> row(size(), Rat(0));
      if (k == 0) {
        for (auto& s : star0) row[coord(0, Q_.edge_orbit(0, P.act(x, s)))] += 1;
      } else {
        // x e_k and the q edges x (1 0; l T^k 1) reversed(e_{k-1})
        row[coord(k, Q_.edge_orbit(k, x))] += 1;
        for (Fq::Elem l = 0; l < F.q(); ++l) {
          Mat2A s = mat2a(F, 1, 0, 0, 1);
          s.c = PolyA::monomial(F, l, k);
          row[coord(k - 1, Q_.edge_orbit(k - 1, P.act(x, s)))] -= 1;
        }
      }
      rows.push_back(std::move(row));
    }
  }
  return QMatrix::from_rows(rows, size());
}

// ---------------------------------------------------------------- cochains

Cochain::Cochain(std::shared_ptr<const HarmonicSpace> space, std::vector<Rat> values)
    : space_(std::move(space)), v_(std::move(values)) {
  if (static_cast<int>(v_.size()) != space_->size()) throw DomainError("cochain has the wrong number of values");
}

Cochain Cochain::zero(std::shared_ptr<const HarmonicSpace> space) {
  int n = space->size();
  return Cochain(std::move(space), std::vector<Rat>(n, Rat(0)));
}

Rat Cochain::value(const EdgeClass& c) const {
  int S = space_->stable_level();
  Rat v = c.level <= S ? v_[space_->coord(c.level, c.orbit)]
                       : v_[space_->coord(S, c.orbit)] * qpow(space_->field().q(), c.level - S);
  return c.up ? v : Rat(-v);
}

Rat Cochain::at(const EdgeNF& e) const { return value(space_->quotient().classify(e).cls); }
Rat Cochain::at(const Mat2F& edge) const { return value(space_->quotient().classify(edge).cls); }

bool Cochain::is_cuspidal() const {
  int S = space_->stable_level();
  for (int o = 0; o < space_->quotient().edge_orbit_count(S); ++o)
    if (v_[space_->coord(S, o)] != 0) return false;
  return true;
}

bool Cochain::is_zero() const {
  for (auto& x : v_)
    if (x != 0) return false;
  return true;
}

bool Cochain::is_harmonic() const {
  auto r = space_->harmonic_equations().apply(v_);
  for (auto& x : r)
    if (x != 0) return false;
  return true;
}

Cochain operator+(const Cochain& a, const Cochain& b) {
  std::vector<Rat> v(a.v_);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += b.v_[i];
  return Cochain(a.space_, v);
}
Cochain operator-(const Cochain& a, const Cochain& b) {
  std::vector<Rat> v(a.v_);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= b.v_[i];
  return Cochain(a.space_, v);
}
Cochain Cochain::scaled(const Rat& c) const {
  std::vector<Rat> v(v_);
  for (auto& x : v) x *= c;
  return Cochain(space_, v);
}

std::vector<Cochain> harmonic_basis(std::shared_ptr<const HarmonicSpace> space, bool cuspidal) {
  QMatrix eq = space->harmonic_equations();
  if (cuspidal) {
    int S = space->stable_level();
    QMatrix ext(eq.rows() + space->quotient().edge_orbit_count(S), eq.cols());
    for (int i = 0; i < eq.rows(); ++i)
      for (int j = 0; j < eq.cols(); ++j) ext.at(i, j) = eq.at(i, j);
    for (int o = 0; o < space->quotient().edge_orbit_count(S); ++o) ext.at(eq.rows() + o, space->coord(S, o)) = 1;
    eq = ext;
  }
  auto ker = kernel(eq);
  std::vector<Cochain> out;
  if (ker.empty()) return out;
  ZMatrix rows(static_cast<int>(ker.size()), space->size());
  for (int i = 0; i < rows.rows(); ++i) {
    Int l = 1;
    for (auto& x : ker[i]) l = lcm(l, Int(x.get_den()));
    for (int j = 0; j < rows.cols(); ++j) rows.at(i, j) = Int(ker[i][j] * l);
  }
  ZMatrix sat = saturate_rows(rows);
  for (int i = 0; i < sat.rows(); ++i) {
    std::vector<Rat> v(space->size());
    for (int j = 0; j < sat.cols(); ++j) v[j] = sat.at(i, j);
    out.emplace_back(space, v);
  }
  return out;
}

// ---------------------------------------------------------------- Hecke

std::vector<Mat2A> hecke_representatives(const PolyA& m, const PolyA& n) {
  if (m.is_zero() || !m.is_monic()) throw DomainError("Hecke index must be monic");
  const Fq& F = m.field();
  std::vector<Mat2A> out;
  for (auto& a : monic_divisors(m)) {
    if (!gcd(a, n).is_one()) continue;
    PolyA d = m / a;
    std::uint64_t nb = d.norm();
    for (std::uint64_t code = 0; code < nb; ++code) out.push_back({a, PolyA::from_code(F, code), PolyA(F), d});
  }
  return out;
}

Cochain hecke_apply(const Cochain& f, const PolyA& m, int jobs) {
  const HarmonicSpace& H = f.space();
  auto reps = hecke_representatives(m, H.level_ideal());
  std::vector<Rat> out(H.size());
  parallel_for(H.size(), jobs, [&](int c) {
    Mat2A e = H.quotient().representative(H.class_of(c));
    Rat s = 0;
    for (auto& g : reps) s += f.at(to_F(g * e));
    out[c] = s;
  });
  return Cochain(f.space_ptr(), out);
}

std::vector<Rat> coordinates(const Cochain& f, const std::vector<Cochain>& basis) {
  int N = f.space().size(), r = static_cast<int>(basis.size());
  QMatrix M(N, r);
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < N; ++i) M.at(i, j) = basis[j].values()[i];
  auto x = solve(M, f.values());
  if (!x) throw DomainError("cochain is not in the span of the basis");
  return *x;
}

Cochain combination(const std::vector<Rat>& x, const std::vector<Cochain>& basis) {
  if (basis.empty()) throw DomainError("empty basis");
  Cochain out = Cochain::zero(basis[0].space_ptr());
  for (std::size_t j = 0; j < basis.size(); ++j) out = out + basis[j].scaled(x[j]);
  return out;
}

HeckeMatrix hecke_matrix(const PolyA& m, const std::vector<Cochain>& basis, int jobs) {
  int r = static_cast<int>(basis.size());
  QMatrix M(r, r);
  for (int j = 0; j < r; ++j) {
    auto x = coordinates(hecke_apply(basis[j], m, jobs), basis);
    for (int i = 0; i < r; ++i) M.at(i, j) = x[i];
  }
  return {m, to_integer(M)};
}

std::vector<PolyA> primes_not_dividing(const PolyA& n, int count) {
  std::vector<PolyA> out;
  for (int d = 1; static_cast<int>(out.size()) < count; ++d)
    for (auto& p : monic_irreducibles(n.field(), d)) {
      if ((n % p).is_zero()) continue;
      out.push_back(p);
      if (static_cast<int>(out.size()) == count) break;
    }
  return out;
}

Cochain eisenstein_cochain(std::shared_ptr<const HarmonicSpace> space, int jobs) {
  const Fq& F = space->field();
  unsigned q = F.q();
  auto basis = harmonic_basis(space, false);
  int r = static_cast<int>(basis.size());
  if (r == 0) throw DomainError("harmonic space is zero");
  auto primes = primes_not_dividing(space->level_ideal(), 2);
  QMatrix stack(2 * r, r);
  for (int t = 0; t < 2; ++t) {
    auto M = to_rational(hecke_matrix(primes[t], basis, jobs).matrix);
    Rat ev = Rat(static_cast<unsigned long>(primes[t].norm())) + 1;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) stack.at(t * r + i, j) = M.at(i, j) - (i == j ? ev : Rat(0));
  }
  auto ker = kernel(stack);
  if (ker.size() != 1)
    throw DomainError("Eisenstein eigenspace has dimension " + std::to_string(ker.size()) + ", expected 1");
  Cochain E = combination(ker[0], basis);
  Rat qq = q;
  if (space->level_ideal().degree() == 3) {
    Rat v = E.at(plus_edge(F, 1, RationalFunc(F)));
    if (v == 0) throw DomainError("Eisenstein cochain vanishes on s_inf");
    return E.scaled((qq * qq + qq + 1) * (qq - 1) * (qq - 1) / v);
  }
  Rat s = fourier_coeffs(E, 2).star(PolyA::constant(F, 1));
  if (s == 0) throw DomainError("Eisenstein cochain has f*(1) = 0");
  return E.scaled((qq + 1) * (qq - 1) * (qq - 1) / qq / s);
}

// ---------------------------------------------------------------- Fourier

EdgeNF fourier_edge(const Fq& F, int k, const std::vector<Fq::Elem>& u) {
  RationalFunc x(F);
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i]) x = x + RationalFunc(PolyA::constant(F, u[i])) * pi_power(F, static_cast<int>(i) + 1);
  return plus_edge(F, k, x);
}

int fourier_nu(const Fq& F, const PolyA& m, const std::vector<Fq::Elem>& u) {
  Fq::Elem s = 0;
  for (int j = 0; j <= m.degree(); ++j)
    if (j < static_cast<int>(u.size())) s = F.add(s, F.mul(m[j], u[j]));
  return s != 0 ? -1 : static_cast<int>(F.q()) - 1;
}

Rat FourierTable::star(const PolyA& m) const {
  for (auto& [mm, v] : fstar)
    if (mm == m) return v;
  throw PrecisionError("f*(" + m.to_string() + ") needs Fourier depth " + std::to_string(m.degree() + 2));
}

namespace {

void for_each_u(const Fq& F, int len, const std::function<void(const std::vector<Fq::Elem>&)>& fn) {
  std::vector<Fq::Elem> u(len, 0);
  for (;;) {
    fn(u);
    int i = 0;
    while (i < len && ++u[i] == F.q()) u[i++] = 0;
    if (i == len) return;
  }
}

}  // namespace

Rat fourier_synthesize(const Fq& F, const FourierTable& t, int k, const std::vector<Fq::Elem>& u) {
  Rat v = t.f0.at(k);
  for (auto& [m, c] : t.fstar)
    if (m.degree() <= k - 2) v += qpow(F.q(), m.degree() + 2 - k) * c * fourier_nu(F, m, u);
  return v;
}

FourierTable fourier_invert(const Fq& F, int K, const FourierValues& values) {
  FourierTable t;
  t.K = K;
  t.f0.assign(K + 1, Rat(0));
  for (int k = 1; k <= K; ++k) {
    std::vector<std::vector<Fq::Elem>> us;
    std::vector<Rat> vals;
    for_each_u(F, k - 1, [&](const std::vector<Fq::Elem>& u) {
      us.push_back(u);
      vals.push_back(values(k, u));
    });
    Rat avg = 0;
    for (auto& v : vals) avg += v;
    avg /= static_cast<long>(vals.size());
    t.f0[k] = avg;
    std::vector<Rat> resid(vals.size());
    for (std::size_t i = 0; i < us.size(); ++i) resid[i] = vals[i] - fourier_synthesize(F, t, k, us[i]);
    if (k == 1) {
      continue;
    }
    auto ms = monic_polys(F, k - 2);
    QMatrix A(static_cast<int>(us.size()), static_cast<int>(ms.size()));
    for (std::size_t i = 0; i < us.size(); ++i)
      for (std::size_t j = 0; j < ms.size(); ++j) A.at(static_cast<int>(i), static_cast<int>(j)) = fourier_nu(F, ms[j], us[i]);
    auto x = solve(A, resid);
    if (!x) throw DomainError("Fourier expansion inconsistent at level " + std::to_string(k) + " (input not harmonic?)");
    for (std::size_t j = 0; j < ms.size(); ++j) t.fstar.emplace_back(ms[j], (*x)[j]);
  }
  return t;
}

FourierTable fourier_coeffs(const Cochain& f, int K) {
  const Fq& F = f.space().field();
  return fourier_invert(F, K, [&](int k, const std::vector<Fq::Elem>& u) { return f.at(fourier_edge(F, k, u)); });
}

bool check_first_coefficient(const Cochain& f, const PolyA& m) {
  auto g = hecke_apply(f, m);
  Rat lhs = fourier_coeffs(g, 2).star(PolyA::constant(m.field(), 1));
  Rat rhs = Rat(static_cast<unsigned long>(m.norm())) * fourier_coeffs(f, m.degree() + 2).star(m);
  return lhs == rhs;
}

// ---------------------------------------------------------------- pairing

Rat edge_weight(const HarmonicSpace& H, const EdgeClass& c) {
  Rat st(H.quotient().edge_stabilizer(c.level, c.orbit));
  return Rat(static_cast<long>(H.field().q()) - 1) / 2 * st;
}

Rat petersson_pairing(const Cochain& f, const Cochain& g) {
  if (!f.is_cuspidal() || !g.is_cuspidal()) throw DomainError("pairing needs cuspidal cochains (finite support)");
  const HarmonicSpace& H = f.space();
  Rat s = 0;
  for (int c = 0; c < H.size(); ++c) {
    const Rat& a = f.values()[c];
    const Rat& b = g.values()[c];
    if (a == 0 || b == 0) continue;
    // both orientations contribute the same term
    s += 2 * a * b / edge_weight(H, H.class_of(c));
  }
  return s;
}

int support_depth(const Cochain& f) {
  if (!f.is_cuspidal()) throw DomainError("support depth needs a cuspidal cochain");
  const Fq& F = f.space().field();
  int S = f.space().stable_level();
  for (int k = S + 1; k >= 1; --k)
    if (f.at(plus_edge(F, k, RationalFunc(F))) != 0) return k + 1;
  return 1;
}

std::string LPolynomial::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t d = 0; d < coeffs.size(); ++d) {
    if (coeffs[d] == 0) continue;
    os << (first ? "" : " + ") << coeffs[d].get_str();
    if (d) os << "*U" << (d > 1 ? "^" + std::to_string(d) : "");
    first = false;
  }
  return first ? "0" : os.str();
}

LPolynomial l_polynomial(const Cochain& f) {
  LPolynomial L;
  L.support_depth = support_depth(f);
  int D = L.support_depth - 2;
  if (D < 0 || f.is_zero()) {
    L.symmetric = true;
    L.sign = 1;
    return L;
  }
  const Fq& F = f.space().field();
  auto t = fourier_coeffs(f, D + 2);
  L.coeffs.assign(D + 1, Rat(0));
  for (auto& [m, c] : t.fstar) L.coeffs[m.degree()] += c;
  for (int d = 0; d <= D; ++d) L.coeffs[d] *= qpow(F.q(), -d);
  while (!L.coeffs.empty() && L.coeffs.back() == 0) L.coeffs.pop_back();
  int deg = static_cast<int>(L.coeffs.size()) - 1;
  for (int eps : {1, -1}) {
    bool ok = deg >= 0;
    for (int j = 0; j <= deg && ok; ++j)
      ok = L.coeffs[deg - j] * eps == L.coeffs[j] * qpow(F.q(), deg - 2 * j);
    if (ok) {
      L.symmetric = true;
      L.sign = eps;
      break;
    }
  }
  return L;
}

WeilReport weil_bound_check(const PolyA& Q, const std::vector<Cochain>& basis, double tol, int jobs) {
  WeilReport w;
  w.prime = Q;
  w.bound = 2.0 * std::sqrt(static_cast<double>(Q.norm()));
  auto M = to_rational(hecke_matrix(Q, basis, jobs).matrix);
  w.charpoly = characteristic_polynomial(M);
  int n = M.rows();
  if (n == 0) {
    w.within = true;
    return w;
  }
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) C(i, i - 1) = 1;
  for (int i = 0; i < n; ++i) C(i, n - 1) = -w.charpoly[i].get_d();
  Eigen::EigenSolver<Eigen::MatrixXd> es(C);
  w.within = true;
  for (int i = 0; i < n; ++i) {
    auto z = es.eigenvalues()[i];
    w.eigenvalues.push_back(z.real());
    if (std::abs(z) > w.bound + tol) w.within = false;
  }
  std::sort(w.eigenvalues.begin(), w.eigenvalues.end());
  return w;
}

}  // namespace drinfeld
