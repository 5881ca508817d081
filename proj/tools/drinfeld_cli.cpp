#include <CLI11.hpp>
#include <json.hpp>

#include <iomanip>
#include <iostream>
#include <sstream>

#include "drinfeld/carlitz.hpp"
#include "drinfeld/eisenstein_ideal.hpp"
#include "drinfeld/errors.hpp"
#include "drinfeld/golden.hpp"
#include "drinfeld/quotient.hpp"

using namespace drinfeld;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exactness tags carried by every number in the output.
json exact(const std::string& s) { return json{{"exact", s}}; }
json exact(const Rat& x) { return exact(x.get_str()); }
json exact(const mpz_class& x) { return exact(x.get_str()); }
json exact(long long x) { return exact(std::to_string(x)); }
json truncated(const std::string& s, int precision) {
  return json{{"truncated", s}, {"certified_precision", precision}};
}
json approx(double x, double tol) {
  std::ostringstream o;
  o << std::setprecision(12) << x;
  return json{{"approx", o.str()}, {"tolerance", tol}};
}

bool is_tagged(const json& v) {
  return v.is_object() && (v.contains("exact") || v.contains("truncated") || v.contains("approx"));
}

std::string cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.contains("exact")) return v["exact"].get<std::string>() + " [exact]";
  if (v.contains("truncated"))
    return v["truncated"].get<std::string>() + " [truncated, precision " + v["certified_precision"].dump() + "]";
  if (v.contains("approx")) return v["approx"].get<std::string>() + " [approx, tol " + v["tolerance"].dump() + "]";
  return v.dump();
}

std::string csv_cell(const json& v) {
  std::string s = is_tagged(v) ? (v.contains("exact") ? v["exact"] : v.contains("truncated") ? v["truncated"] : v["approx"])
                                      .get<std::string>()
                               : v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  return s;
}

std::string tag_of(const json& v) {
  if (!is_tagged(v)) return "";
  return v.contains("exact") ? ":exact" : v.contains("truncated") ? ":truncated" : ":approx";
}

bool flat_rows(const json& a) {
  if (!a.is_array() || a.empty()) return false;
  for (auto& r : a) {
    if (!r.is_object() || is_tagged(r)) return false;
    for (auto& [k, v] : r.items())
      if (v.is_object() && !is_tagged(v)) return false;
  }
  return true;
}

void render_text(std::ostream& out, const json& v, const std::string& prefix) {
  if (flat_rows(v)) {
    out << prefix << ":\n";
    std::vector<std::string> keys;
    for (auto& [k, x] : v[0].items()) keys.push_back(k);
    std::vector<std::size_t> w(keys.size());
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < keys.size(); ++i) w[i] = keys[i].size();
    for (auto& r : v) {
      std::vector<std::string> row;
      for (std::size_t i = 0; i < keys.size(); ++i) {
        row.push_back(r.contains(keys[i]) ? cell(r[keys[i]]) : "");
        w[i] = std::max(w[i], row.back().size());
      }
      rows.push_back(row);
    }
    auto line = [&](const std::vector<std::string>& c) {
      out << "  ";
      for (std::size_t i = 0; i < c.size(); ++i) out << std::left << std::setw(static_cast<int>(w[i]) + 2) << c[i];
      out << "\n";
    };
    line(keys);
    for (auto& r : rows) line(r);
    return;
  }
  if (v.is_object() && !is_tagged(v)) {
    for (auto& [k, x] : v.items()) render_text(out, x, prefix.empty() ? k : prefix + "." + k);
    return;
  }
  if (v.is_array()) {
    bool scalars = std::all_of(v.begin(), v.end(), [](const json& x) { return !x.is_structured() || is_tagged(x); });
    if (scalars) {
      out << prefix << " = [";
      for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << cell(v[i]);
      out << "]\n";
      return;
    }
    for (std::size_t i = 0; i < v.size(); ++i) render_text(out, v[i], prefix + "[" + std::to_string(i) + "]");
    return;
  }
  if (v.is_string() && v.get<std::string>().find('\n') != std::string::npos) {
    out << prefix << ":\n" << v.get<std::string>();
    return;
  }
  out << prefix << " = " << cell(v) << "\n";
}

struct Global {
  unsigned q = 2;
  std::string format = "text";
  int jobs = 1;
  std::uint64_t seed = 0;
};

const Fq& field_of(const Global& g) { return Fq::of_order(g.q); }

json field_config(const Fq& F) {
  json m = json::array();
  for (auto c : F.modulus()) m.push_back(c);
  return json{{"p", F.p()}, {"e", F.e()}, {"order", F.q()}, {"modulus_low_to_high", m}, {"descriptor", F.descriptor()}};
}

PolyA poly(const Fq& F, const std::string& s) { return PolyA::parse(F, s); }

PolyA monic_prime(const Fq& F, const std::string& s) {
  auto p = poly(F, s);
  if (!p.is_monic() || !is_irreducible(p)) throw DomainError(p.to_string() + " is not a monic prime");
  return p;
}

PolyA level(const Fq& F, const std::string& s) {
  auto n = poly(F, s);
  if (n.is_zero() || n.degree() < 1 || !n.is_monic()) throw DomainError("level must be monic of positive degree, got " + n.to_string());
  return n;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  return out;
}

json matrix_json(const ZMatrix& M) {
  json rows = json::array();
  for (int i = 0; i < M.rows(); ++i) {
    json r = json::array();
    for (int j = 0; j < M.cols(); ++j) r.push_back(exact(M.at(i, j)));
    rows.push_back(r);
  }
  return rows;
}

json matrix_json(const QMatrix& M) {
  json rows = json::array();
  for (int i = 0; i < M.rows(); ++i) {
    json r = json::array();
    for (int j = 0; j < M.cols(); ++j) r.push_back(exact(M.at(i, j)));
    rows.push_back(r);
  }
  return rows;
}

json matrix_table(const ZMatrix& M) {
  json t = json::array();
  for (int i = 0; i < M.rows(); ++i) {
    json r;
    r["row"] = i + 1;
    for (int j = 0; j < M.cols(); ++j) r["c" + std::to_string(j + 1)] = exact(M.at(i, j));
    t.push_back(r);
  }
  return t;
}

json poly_list(const std::vector<Rat>& c) {
  json a = json::array();
  for (auto& x : c) a.push_back(exact(x));
  return a;
}

// ---------------------------------------------------------------- field

json cmd_field(const Global& g, int degree, const std::string& a, const std::string& b) {
  const Fq& F = field_of(g);
  if (degree < 1) throw DomainError("degree must be >= 1");
  json r;
  auto irr = monic_irreducibles(F, degree);
  r["degree"] = degree;
  r["irreducible_count"] = exact(static_cast<long long>(irr.size()));
  json t = json::array();
  for (auto& p : irr) t.push_back(json{{"irreducible", p.to_string()}, {"norm", exact(std::to_string(p.norm()))}});
  r["table"] = t;
  if (!a.empty()) {
    auto A = poly(F, a);
    json ar;
    ar["a"] = A.to_string();
    json fa = json::array();
    if (!A.is_zero())
      for (auto& [P, e] : factor(A)) fa.push_back(json{{"prime", P.to_string()}, {"exponent", e}});
    ar["factorization_of_a"] = fa;
    if (!b.empty()) {
      auto B = poly(F, b);
      ar["b"] = B.to_string();
      ar["a+b"] = (A + B).to_string();
      ar["a-b"] = (A - B).to_string();
      ar["a*b"] = (A * B).to_string();
      if (B.is_zero()) throw DomainError("division by the zero polynomial");
      auto [qq, rr] = divmod(A, B);
      ar["quotient"] = qq.to_string();
      ar["remainder"] = rr.to_string();
      ar["gcd"] = gcd(A, B).to_string();
    }
    r["arithmetic"] = ar;
  }
  return r;
}

// ---------------------------------------------------------------- analytic

AField<FracField> F_base(const Fq& F) { return rational_afield(F); }

DrinfeldF module_over_F(const Fq& F, const std::string& gs) {
  auto b = rational_afield(F);
  std::vector<RationalFunc> g;
  for (auto& s : split(gs)) g.push_back(RationalFunc::parse(F, s));
  return DrinfeldF(b, g);
}

json cmd_period(const Global& g, int D) {
  const Fq& F = field_of(g);
  if (D < 1) throw DomainError("D must be >= 1");
  auto w = carlitz_period_power(F, D);
  json r;
  r["quantity"] = "(q-1)-th power of the Carlitz period, as a series in 1/T";
  r["D"] = D;
  r["valuation"] = exact(static_cast<long long>(w.valuation()));
  r["series"] = truncated(w.to_string(), w.precision());
  return r;
}

json cmd_exp(const Global& g, const std::string& gs, int N, int D) {
  const Fq& F = field_of(g);
  auto phi = module_over_F(F, gs);
  auto e = exp_coeffs_from_phi(phi, N);
  json r;
  r["module"] = phi.to_string();
  json t = json::array();
  for (int n = 0; n <= N; ++n) t.push_back(json{{"n", n}, {"e_n", exact(e[n].to_string())}});
  r["table"] = t;
  if (phi.rank() == 1 && phi.g(1).is_one() && D > 0) {
    auto L = LatticeRank1::from_power(carlitz_period_power(F, D));
    auto es = exp_coeffs_from_eisenstein(L, N, D);
    json cmp = json::array();
    for (int n = 0; n <= N; ++n) {
      bool agree = es[n].agrees_with(LaurentSeries::expand(e[n], es[n].precision()));
      cmp.push_back(json{{"n", n}, {"from_lattice", truncated(es[n].to_string(), es[n].precision())}, {"agrees", agree}});
    }
    r["lattice_comparison"] = cmp;
  }
  return r;
}

json cmd_check(const Global& g, const std::string& gs, int N) {
  const Fq& F = field_of(g);
  auto phi = module_over_F(F, gs);
  auto e = exp_coeffs_from_phi(phi, N);
  int mm = functional_equation_mismatch(phi, e, N);
  json r;
  r["module"] = phi.to_string();
  r["N"] = N;
  r["functional_equation"] = mm < 0 ? "holds" : "fails";
  r["first_mismatch"] = exact(static_cast<long long>(mm));
  return r;
}

// ---------------------------------------------------------------- drinfeld

template <CoefficientField K>
json phi_a_json(const DrinfeldModule<K>& phi, const PolyA& a) {
  auto pa = phi.phi(a);
  return json{{"module", phi.to_string()}, {"a", a.to_string()}, {"phi_a", pa.to_string()}, {"q_degree", exact(static_cast<long long>(pa.qdeg()))}};
}

DrinfeldGF module_over_residue(const Fq& F, const std::string& prime, const std::string& gs) {
  auto p = monic_prime(F, prime);
  auto base = residue_afield(p);
  std::vector<GF::Elem> g;
  for (auto& s : split(gs)) g.push_back(reduce_mod(RationalFunc::parse(F, s), *base.field));
  return DrinfeldGF(base, g);
}

json cmd_phi_a(const Global& g, const std::string& gs, const std::string& prime, const std::string& a) {
  const Fq& F = field_of(g);
  auto A = poly(F, a);
  json r = prime.empty() ? phi_a_json(module_over_F(F, gs), A) : phi_a_json(module_over_residue(F, prime, gs), A);
  r["base"] = prime.empty() ? "F_q(T)" : "A/(" + prime + ")";
  return r;
}

json cmd_torsion(const Global& g, const std::string& gs, const std::string& prime, const std::string& a, int cap) {
  const Fq& F = field_of(g);
  if (prime.empty()) throw UsageError("torsion needs --prime (finite A-field)");
  auto phi = module_over_residue(F, prime, gs);
  auto res = torsion_module(phi, poly(F, a), cap);
  json r;
  r["module"] = phi.to_string();
  r["a"] = poly(F, a).to_string();
  r["structure"] = res.structure.to_string();
  json d = json::array();
  for (auto& x : res.structure.divisors) d.push_back(x.to_string());
  r["elementary_divisors"] = d;
  r["points"] = exact(std::to_string(res.structure.order()));
  r["dimension_over_Fq"] = exact(static_cast<long long>(res.dimension));
  r["extension_degree"] = exact(static_cast<long long>(res.extension_degree));
  try {
    r["height"] = exact(static_cast<long long>(phi.height()));
  } catch (const DomainError&) {
  }
  return r;
}

json cmd_j(const Global& g, const std::string& gs, const std::string& prime) {
  const Fq& F = field_of(g);
  json r;
  if (prime.empty()) {
    auto phi = module_over_F(F, gs);
    r["module"] = phi.to_string();
    r["j"] = exact(j_invariant(phi).to_string());
  } else {
    auto phi = module_over_residue(F, prime, gs);
    r["module"] = phi.to_string();
    r["j"] = exact(phi.field().to_string(j_invariant(phi)));
  }
  return r;
}

json cmd_reduce(const Global& g, const std::string& gs, const std::string& at) {
  const Fq& F = field_of(g);
  auto phi = module_over_F(F, gs);
  auto l = monic_prime(F, at);
  json r;
  r["module"] = phi.to_string();
  r["prime"] = l.to_string();
  r["good_reduction"] = good_reduction_at(phi, l);
  auto red = reduce_at(phi, l);
  r["reduction"] = red.to_string();
  r["height"] = exact(static_cast<long long>(red.height()));
  return r;
}

template <CoefficientField K>
json isogeny_json(const DrinfeldModule<K>& phi, const std::vector<typename K::Elem>& u) {
  SkewPoly<K> ker(phi.field(), u);
  auto psi = factor_isogeny(phi, ker);
  bool ok = psi.phi_T().compose(ker).equals(ker.compose(phi.phi_T()));
  return json{{"source", phi.to_string()}, {"kernel", ker.to_string()}, {"target", psi.to_string()}, {"intertwines", ok}};
}

json cmd_isogeny(const Global& g, const std::string& gs, const std::string& prime, const std::string& ks) {
  const Fq& F = field_of(g);
  if (prime.empty()) {
    auto phi = module_over_F(F, gs);
    std::vector<RationalFunc> u;
    for (auto& s : split(ks)) u.push_back(RationalFunc::parse(F, s));
    return isogeny_json(phi, u);
  }
  auto phi = module_over_residue(F, prime, gs);
  std::vector<GF::Elem> u;
  for (auto& s : split(ks)) u.push_back(reduce_mod(RationalFunc::parse(F, s), phi.field()));
  return isogeny_json(phi, u);
}

// ---------------------------------------------------------------- tree

json cmd_quotient(const Global& g, const std::string& lv, int depth) {
  const Fq& F = field_of(g);
  auto n = level(F, lv);
  Gamma0Quotient Q(n);
  auto G = depth > 0 ? Q.graph(depth) : Q.graph();
  json r;
  r["level"] = n.to_string();
  r["stable_level"] = exact(static_cast<long long>(Q.stable_level()));
  r["top_level"] = G.top_level;
  r["genus"] = exact(static_cast<long long>(G.genus));
  r["cusps"] = exact(static_cast<long long>(G.cusps()));
  r["finite_vertices"] = exact(static_cast<long long>(G.finite_vertices().size()));
  r["finite_edges"] = exact(static_cast<long long>(G.finite_edges().size()));
  json t = json::array();
  for (std::size_t i = 0; i < G.edges.size(); ++i) {
    auto& e = G.edges[i];
    t.push_back(json{{"edge", i},
                     {"class", EdgeClass{true, e.level, e.orbit}.to_string()},
                     {"from", e.from},
                     {"to", e.to},
                     {"stabilizer", exact(e.stabilizer)},
                     {"finite", !(G.on_ray[e.from] && G.on_ray[e.to])}});
  }
  r["table"] = t;
  json vs = json::array();
  for (std::size_t i = 0; i < G.vertices.size(); ++i) {
    auto& v = G.vertices[i];
    vs.push_back(json{{"vertex", i}, {"level", v.level}, {"orbit", v.orbit}, {"stabilizer", exact(v.stabilizer)}, {"on_ray", static_cast<bool>(G.on_ray[i])}});
  }
  r["vertices"] = vs;
  json rays = json::array();
  for (auto& ray : G.rays) rays.push_back(ray);
  r["rays"] = rays;
  r["dot"] = G.to_dot();
  return r;
}

// ---------------------------------------------------------------- hecke

struct LevelData {
  std::shared_ptr<const HarmonicSpace> H;
  std::vector<Cochain> basis;
};

LevelData load(const Global& g, const std::string& lv, bool cuspidal) {
  const Fq& F = field_of(g);
  auto H = HarmonicSpace::create(level(F, lv));
  return {H, harmonic_basis(H, cuspidal)};
}

json values_table(const HarmonicSpace& H, const std::vector<Cochain>& fs, const std::string& name) {
  json t = json::array();
  for (int i = 0; i < H.size(); ++i) {
    json r;
    r["class"] = H.class_of(i).to_string();
    for (std::size_t j = 0; j < fs.size(); ++j)
      r[fs.size() == 1 ? name : name + std::to_string(j + 1)] = exact(fs[j].values()[i]);
    t.push_back(r);
  }
  return t;
}

bool space_flag(const std::string& s) {
  if (s == "cuspidal") return true;
  if (s == "full") return false;
  throw UsageError("--space must be cuspidal or full");
}

json cmd_basis(const Global& g, const std::string& lv, const std::string& space) {
  auto L = load(g, lv, space_flag(space));
  json r;
  r["level"] = L.H->level_ideal().to_string();
  r["space"] = space;
  r["rank"] = exact(static_cast<long long>(L.basis.size()));
  r["stable_level"] = exact(static_cast<long long>(L.H->stable_level()));
  r["note"] = "values on up-edge classes at levels <= stable level; beyond it f(k) = q^(k-S) f(S)";
  r["table"] = values_table(*L.H, L.basis, "f");
  return r;
}

json cmd_matrix(const Global& g, const std::string& lv, const std::string& m, const std::string& space) {
  auto L = load(g, lv, space_flag(space));
  if (L.basis.empty()) throw DomainError("the " + space + " harmonic space at this level is zero");
  const Fq& F = L.H->field();
  auto M = poly(F, m);
  if (!M.is_monic()) throw DomainError("Hecke index must be monic, got " + M.to_string());
  auto T = hecke_matrix(M, L.basis, g.jobs);
  json r;
  r["level"] = L.H->level_ideal().to_string();
  r["m"] = M.to_string();
  r["space"] = space;
  r["convention"] = "column j holds the coordinates of basis[j] | T_m";
  r["table"] = matrix_table(T.matrix);
  if (space == "cuspidal" && M.degree() >= 1 && is_irreducible(M) && !(L.H->level_ideal() % M).is_zero()) {
    auto w = weil_bound_check(M, L.basis, 1e-9, g.jobs);
    json ev = json::array();
    for (double x : w.eigenvalues) ev.push_back(approx(x, 1e-9));
    r["characteristic_polynomial_low_to_high"] = poly_list(w.charpoly);
    r["eigenvalues"] = ev;
    r["weil_bound"] = approx(w.bound, 1e-9);
    r["within_weil_bound"] = w.within;
  }
  return r;
}

json cmd_eisenstein(const Global& g, const std::string& lv) {
  const Fq& F = field_of(g);
  auto H = HarmonicSpace::create(level(F, lv));
  auto E = eisenstein_cochain(H, g.jobs);
  auto t = fourier_coeffs(E, 3);
  json r;
  r["level"] = H->level_ideal().to_string();
  r["E0(pi)"] = exact(t.f0[1]);
  r["E*(1)"] = exact(t.star(PolyA::constant(F, 1)));
  r["table"] = values_table(*H, {E}, "E");
  return r;
}

Cochain pick(const Global& g, const std::string& lv, const std::string& which) {
  if (which == "eisenstein") {
    auto H = HarmonicSpace::create(level(field_of(g), lv));
    return eisenstein_cochain(H, g.jobs);
  }
  if (which.rfind("cusp:", 0) == 0) {
    int i = 0;
    try {
      i = std::stoi(which.substr(5));
    } catch (const std::exception&) {
      throw UsageError("--which cusp:<index> needs an integer index");
    }
    auto L = load(g, lv, true);
    if (i < 1 || i > static_cast<int>(L.basis.size()))
      throw DomainError("cuspidal basis has " + std::to_string(L.basis.size()) + " vectors, index " + std::to_string(i) + " out of range");
    return L.basis[i - 1];
  }
  throw UsageError("--which must be eisenstein or cusp:<index>");
}

json cmd_fourier(const Global& g, const std::string& lv, const std::string& which, int K) {
  if (K < 1) throw DomainError("K must be >= 1");
  auto f = pick(g, lv, which);
  auto t = fourier_coeffs(f, K);
  json r;
  r["level"] = f.space().level_ideal().to_string();
  r["cochain"] = which;
  r["K"] = K;
  json f0 = json::array();
  for (int k = 1; k <= K; ++k) f0.push_back(json{{"k", k}, {"f0(pi^k)", exact(t.f0[k])}});
  r["constant_term"] = f0;
  json tab = json::array();
  for (auto& [m, v] : t.fstar) tab.push_back(json{{"m", m.to_string()}, {"deg", m.degree()}, {"f*(m)", exact(v)}});
  r["table"] = tab;
  return r;
}

json cmd_lseries(const Global& g, const std::string& lv) {
  auto L = load(g, lv, true);
  if (L.basis.empty()) throw DomainError("cuspidal space at this level is zero");
  json r;
  r["level"] = L.H->level_ideal().to_string();
  r["note"] = "finite-part polynomial sum_d q^-d sum_{deg m = d} f*(m) U^d; symmetry is reported, not assumed";
  json t = json::array();
  for (std::size_t i = 0; i < L.basis.size(); ++i) {
    auto lp = l_polynomial(L.basis[i]);
    t.push_back(json{{"basis_vector", i + 1},
                     {"L", lp.to_string()},
                     {"support_depth", exact(static_cast<long long>(lp.support_depth))},
                     {"symmetric_under_U_to_1/(q^2U)", lp.symmetric}});
  }
  r["table"] = t;
  return r;
}

json cmd_pairing(const Global& g, const std::string& lv) {
  auto L = load(g, lv, true);
  if (L.basis.empty()) throw DomainError("cuspidal space at this level is zero");
  int n = static_cast<int>(L.basis.size());
  QMatrix G(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) G.at(i, j) = petersson_pairing(L.basis[i], L.basis[j]);
  json r;
  r["level"] = L.H->level_ideal().to_string();
  r["gram"] = matrix_json(G);
  r["determinant"] = exact(determinant(G));
  json w = json::array();
  const auto& Q = L.H->quotient();
  for (int k = 0; k <= L.H->stable_level(); ++k)
    for (int o = 0; o < Q.edge_orbit_count(k); ++o) {
      EdgeClass c{true, k, o};
      w.push_back(json{{"class", c.to_string()}, {"mu", exact(edge_weight(*L.H, c))}});
    }
  r["table"] = w;
  return r;
}

// ---------------------------------------------------------------- cuspidal

json cmd_order(const Global& g, const std::string& prime, int prime_degree, int rank) {
  const Fq& F = field_of(g);
  PolyA p;
  if (!prime.empty()) {
    p = monic_prime(F, prime);
  } else {
    if (prime_degree < 1) throw UsageError("give --prime or --prime-degree >= 1");
    p = first_irreducible(F, prime_degree);
  }
  json r;
  r["prime"] = p.to_string();
  r["rank"] = rank;
  r["order"] = exact(rank == 2 ? cuspidal_order_rank2(p) : cuspidal_order_rank_r(p, rank));
  return r;
}

json cmd_index(const Global& g, const std::string& lv, int bstart, int bmax) {
  const Fq& F = field_of(g);
  auto R = eisenstein_index(level(F, lv), bstart, bmax, g.jobs);
  json r;
  r["level"] = R.level.to_string();
  r["stable_B"] = exact(static_cast<long long>(R.B));
  r["index"] = exact(R.index);
  r["index_at_B_plus_1"] = exact(R.index_at_next_B);
  json d = json::array();
  for (auto& x : R.elementary_divisors) d.push_back(exact(x));
  r["elementary_divisors"] = d;
  r["odd_part"] = exact(R.odd_part);
  r["predicted_cuspidal_order"] = R.predicted_order == 0 ? json("n/a (composite level)") : exact(R.predicted_order);
  r["eisenstein_constant_E0(pi)"] = exact(R.eisenstein_constant);
  r["all_in_scope_primes_match"] = R.all_in_scope_match;
  json t = json::array();
  for (auto& c : R.primes)
    t.push_back(json{{"ell", exact(c.ell)},
                     {"index_exponent", exact(static_cast<long long>(c.index_exponent))},
                     {"predicted_exponent", exact(static_cast<long long>(c.predicted_exponent))},
                     {"ell_prime_to_p(q-1)", c.in_scope},
                     {"match", c.match}});
  r["table"] = t;
  return r;
}

// ---------------------------------------------------------------- paper-examples

json cmd_paper(const Global& g, bool& all_pass) {
  auto checks = paper_examples(g.q, g.jobs);
  json t = json::array();
  int passed = 0;
  for (auto& c : checks) {
    t.push_back(json{{"group", c.group}, {"check", c.name}, {"expected", c.expected}, {"observed", c.observed}, {"status", c.pass ? "PASS" : "FAIL"}});
    passed += c.pass;
  }
  all_pass = passed == static_cast<int>(checks.size());
  json r;
  r["passed"] = exact(static_cast<long long>(passed));
  r["total"] = exact(static_cast<long long>(checks.size()));
  r["table"] = t;
  return r;
}

// ---------------------------------------------------------------- output

json collect_params(CLI::App* sub) {
  json p;
  for (CLI::App* s = sub; s != nullptr;) {
    for (const CLI::Option* o : s->get_options()) {
      std::string key = o->get_single_name();
      if (key.empty() || key == "help") continue;
      if (o->count() > 0)
        p[key] = o->get_type_size() == 0 ? json(true) : json(o->results().back());
      else if (o->get_type_size() == 0)
        p[key] = false;
      else
        p[key] = o->get_default_str();
    }
    auto subs = s->get_subcommands();
    s = subs.empty() ? nullptr : subs[0];
  }
  return p;
}

void emit(const Global& g, const json& config, const json& result) {
  json prov{{"tool", "drinfeld"},
            {"version", kVersion},
            {"numbers", "tagged exact (rational), truncated (series with certified precision) or approx (floating, with tolerance)"}};
  std::ostream& out = std::cout;
  if (g.format == "json") {
    out << json{{"config", config}, {"result", result}, {"provenance", prov}}.dump(2) << "\n";
    return;
  }
  if (g.format == "dot") {
    if (!result.contains("dot")) throw UsageError("dot output is only available for `tree quotient`");
    out << "// config: " << config.dump() << "\n" << result["dot"].get<std::string>();
    return;
  }
  if (g.format == "csv") {
    if (!result.contains("table") || !flat_rows(result["table"])) throw UsageError("csv output needs a tabular result");
    out << "# config: " << config.dump() << "\n";
    const json& t = result["table"];
    bool first = true;
    for (auto& [k, v] : t[0].items()) {
      out << (first ? "" : ",") << k << tag_of(v);
      first = false;
    }
    out << "\n";
    for (auto& row : t) {
      first = true;
      for (auto& [k, v] : t[0].items()) {
        (void)v;
        out << (first ? "" : ",") << (row.contains(k) ? csv_cell(row[k]) : "");
        first = false;
      }
      out << "\n";
    }
    return;
  }
  out << "# config: " << config.dump() << "\n";
  json shown = result;
  shown.erase("dot");
  render_text(out, shown, "");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Drinfeld modules, Bruhat-Tits quotients and harmonic cochains over F_q[T]"};
  app.set_version_flag("--version", kVersion);
  app.fallthrough();
  app.require_subcommand(1);
  Global g;
  app.add_option("--q", g.q, "order of the constant field")->capture_default_str();
  app.add_option("--format", g.format, "json|csv|dot|text")
      ->check(CLI::IsMember({"json", "csv", "dot", "text"}))
      ->capture_default_str();
  app.add_option("--jobs", g.jobs, "worker threads (output does not depend on it)")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--seed", g.seed, "seed for randomized demos")->capture_default_str();

  std::function<json()> run;
  bool golden_ok = true;

  // field
  auto* field = app.add_subcommand("field", "irreducibles of a degree, arithmetic on --a/--b");
  int fdeg = 3;
  std::string fa, fb;
  field->add_option("--degree", fdeg, "list monic irreducibles of this degree")->capture_default_str();
  field->add_option("--a", fa, "polynomial a");
  field->add_option("--b", fb, "polynomial b");
  field->callback([&] { run = [&] { return cmd_field(g, fdeg, fa, fb); }; });

  // analytic
  auto* an = app.add_subcommand("analytic", "Carlitz period and exponentials");
  an->require_subcommand(1);
  int aD = 6, aN = 4;
  std::string ag = "1";
  auto* period = an->add_subcommand("period", "(q-1)-th power of the Carlitz period");
  period->add_option("--D", aD, "sum over monic a with deg a <= D")->capture_default_str();
  period->callback([&] { run = [&] { return cmd_period(g, aD); }; });
  auto* aexp = an->add_subcommand("exp", "exponential coefficients of phi over F_q(T)");
  aexp->add_option("--g", ag, "coefficients g_1,...,g_r")->capture_default_str();
  aexp->add_option("--N", aN, "last index")->capture_default_str();
  aexp->add_option("--D", aD, "lattice sum bound for the Carlitz comparison (0 = skip)")->capture_default_str();
  aexp->callback([&] { run = [&] { return cmd_exp(g, ag, aN, aD); }; });
  auto* acheck = an->add_subcommand("check", "functional equation e(tz) = phi_T(e(z)) through x^{q^N}");
  acheck->add_option("--g", ag, "coefficients g_1,...,g_r")->capture_default_str();
  acheck->add_option("--N", aN, "last index")->capture_default_str();
  acheck->callback([&] { run = [&] { return cmd_check(g, ag, aN); }; });

  // drinfeld
  auto* dr = app.add_subcommand("drinfeld", "Drinfeld modules phi_T = t x + g_1 x^q + ...");
  dr->require_subcommand(1);
  std::string dg = "1", dprime, da = "T", dat, dker;
  int dcap = 4096;
  auto module_opts = [&](CLI::App* s) {
    s->add_option("--g", dg, "coefficients g_1,...,g_r (elements of F_q(T))")->capture_default_str();
    s->add_option("--prime", dprime, "work over A/prime instead of F_q(T)");
  };
  auto* phia = dr->add_subcommand("phi-a", "the skew polynomial phi_a");
  module_opts(phia);
  phia->add_option("--a", da, "element of A")->capture_default_str();
  phia->callback([&] { run = [&] { return cmd_phi_a(g, dg, dprime, da); }; });
  auto* tor = dr->add_subcommand("torsion", "A-module structure of phi[a] over the closure of A/prime");
  module_opts(tor);
  tor->add_option("--a", da, "element of A")->capture_default_str();
  tor->add_option("--cap", dcap, "largest extension degree tried")->capture_default_str();
  tor->callback([&] { run = [&] { return cmd_torsion(g, dg, dprime, da, dcap); }; });
  auto* dj = dr->add_subcommand("j", "j-invariant of a rank-2 module");
  module_opts(dj);
  dj->callback([&] { run = [&] { return cmd_j(g, dg, dprime); }; });
  auto* dred = dr->add_subcommand("reduce", "reduction of a module over F_q(T) at a prime");
  dred->add_option("--g", dg, "coefficients g_1,...,g_r")->capture_default_str();
  dred->add_option("--at", dat, "prime of A")->required();
  dred->callback([&] { run = [&] { return cmd_reduce(g, dg, dat); }; });
  auto* diso = dr->add_subcommand("isogeny", "factor an isogeny with the given kernel polynomial");
  module_opts(diso);
  diso->add_option("--kernel", dker, "coefficients of u = u_0 x + u_1 x^q + ...")->required();
  diso->callback([&] { run = [&] { return cmd_isogeny(g, dg, dprime, dker); }; });

  // tree
  auto* tree = app.add_subcommand("tree", "Bruhat-Tits tree quotients");
  tree->require_subcommand(1);
  std::string tlevel = "T^3+T+1";
  int tdepth = 0;
  auto* quot = tree->add_subcommand("quotient", "the graph Gamma_0(n) \\ T");
  quot->add_option("--level", tlevel, "n")->capture_default_str();
  quot->add_option("--depth", tdepth, "top level of the drawn graph (0 = deg n + 3)")->capture_default_str();
  quot->callback([&] { run = [&] { return cmd_quotient(g, tlevel, tdepth); }; });

  // hecke
  auto* hk = app.add_subcommand("hecke", "harmonic cochains and Hecke operators");
  hk->require_subcommand(1);
  std::string hlevel = "T^3+T+1", hspace = "cuspidal", hm = "T", hwhich = "eisenstein";
  int hK = 4;
  auto* hb = hk->add_subcommand("basis", "integral basis of harmonic cochains");
  hb->add_option("--level", hlevel, "n")->capture_default_str();
  hb->add_option("--space", hspace, "cuspidal|full")->capture_default_str();
  hb->callback([&] { run = [&] { return cmd_basis(g, hlevel, hspace); }; });
  auto* hmx = hk->add_subcommand("matrix", "matrix of T_m on a basis");
  hmx->add_option("--level", hlevel, "n")->capture_default_str();
  hmx->add_option("--m", hm, "monic m")->capture_default_str();
  hmx->add_option("--space", hspace, "cuspidal|full")->capture_default_str();
  hmx->callback([&] { run = [&] { return cmd_matrix(g, hlevel, hm, hspace); }; });
  auto* he = hk->add_subcommand("eisenstein", "the Eisenstein cochain");
  he->add_option("--level", hlevel, "n")->capture_default_str();
  he->callback([&] { run = [&] { return cmd_eisenstein(g, hlevel); }; });
  auto* hf = hk->add_subcommand("fourier", "Fourier coefficients f0 and f*");
  hf->add_option("--level", hlevel, "n")->capture_default_str();
  hf->add_option("--which", hwhich, "eisenstein | cusp:<i>")->capture_default_str();
  hf->add_option("--K", hK, "deepest level used")->capture_default_str();
  hf->callback([&] { run = [&] { return cmd_fourier(g, hlevel, hwhich, hK); }; });
  auto* hl = hk->add_subcommand("lseries", "finite-part L-polynomials of the cuspidal basis");
  hl->add_option("--level", hlevel, "n")->capture_default_str();
  hl->callback([&] { run = [&] { return cmd_lseries(g, hlevel); }; });
  auto* hp = hk->add_subcommand("pairing", "Gram matrix of the weighted pairing");
  hp->add_option("--level", hlevel, "n")->capture_default_str();
  hp->callback([&] { run = [&] { return cmd_pairing(g, hlevel); }; });

  // cuspidal
  auto* cu = app.add_subcommand("cuspidal", "cuspidal divisor orders and the Eisenstein ideal");
  cu->require_subcommand(1);
  std::string cprime, clevel = "T^3+T+1";
  int cdeg = 0, crank = 2, cb0 = 1, cbmax = 6;
  auto* co = cu->add_subcommand("order", "closed-form order of the cuspidal divisor group");
  co->add_option("--prime", cprime, "monic prime p");
  co->add_option("--prime-degree", cdeg, "use the first monic prime of this degree")->capture_default_str();
  co->add_option("--rank", crank, "rank r >= 2")->capture_default_str();
  co->callback([&] { run = [&] { return cmd_order(g, cprime, cdeg, crank); }; });
  auto* ci = cu->add_subcommand("index", "index of the Eisenstein ideal in the Hecke algebra");
  ci->add_option("--level", clevel, "n")->capture_default_str();
  ci->add_option("--B", cb0, "starting generator degree")->capture_default_str();
  ci->add_option("--B-max", cbmax, "give up past this degree")->capture_default_str();
  ci->callback([&] { run = [&] { return cmd_index(g, clevel, cb0, cbmax); }; });

  // paper-examples
  auto* pe = app.add_subcommand("paper-examples", "golden values with closed forms, as a pass/fail table");
  pe->callback([&] { run = [&] { return cmd_paper(g, golden_ok); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    const Fq& F = field_of(g);
    std::string name;
    CLI::App* top = app.get_subcommands().at(0);
    for (CLI::App* s = top; s != nullptr;) {
      name += (name.empty() ? "" : " ") + s->get_name();
      auto subs = s->get_subcommands();
      s = subs.empty() ? nullptr : subs[0];
    }
    json config{{"field", field_config(F)},
                {"subcommand", name},
                {"parameters", collect_params(top)},
                {"format", g.format},
                {"jobs", g.jobs},
                {"seed", g.seed}};
    if (g.format == "dot" && name != "tree quotient") throw UsageError("dot output is only available for `tree quotient`");
    json result = run();
    emit(g, config, result);
    return golden_ok ? 0 : 1;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return 3;
  } catch (const PrecisionError& e) {
    std::cerr << "depth/precision exhausted: " << e.what() << "\n";
    return 4;
  }
}
