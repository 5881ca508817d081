#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "drinfeld/carlitz.hpp"
#include "drinfeld/eisenstein_ideal.hpp"
#include "drinfeld/errors.hpp"
#include "drinfeld/golden.hpp"

namespace py = pybind11;
using namespace drinfeld;

namespace {

py::object to_py(const mpz_class& x) { return py::module_::import("builtins").attr("int")(x.get_str()); }
py::object to_py(const Rat& x) {
  return py::module_::import("fractions").attr("Fraction")(to_py(x.get_num()), to_py(x.get_den()));
}
py::list to_py(const std::vector<Rat>& v) {
  py::list l;
  for (auto& x : v) l.append(to_py(x));
  return l;
}
py::list to_py(const ZMatrix& M) {
  py::list rows;
  for (int i = 0; i < M.rows(); ++i) {
    py::list r;
    for (int j = 0; j < M.cols(); ++j) r.append(to_py(M.at(i, j)));
    rows.append(r);
  }
  return rows;
}

std::vector<RationalFunc> parse_all(const Fq& F, const std::vector<std::string>& s) {
  std::vector<RationalFunc> out;
  for (auto& x : s) out.push_back(RationalFunc::parse(F, x));
  return out;
}

DrinfeldF module_F(unsigned q, const std::vector<std::string>& g) {
  const Fq& F = Fq::of_order(q);
  return DrinfeldF(rational_afield(F), parse_all(F, g));
}

// A level n with its harmonic space and integral bases, built once.
class Level {
 public:
  Level(unsigned q, const std::string& n)
      : H_(HarmonicSpace::create(PolyA::parse(Fq::of_order(q), n))),
        cusp_(harmonic_basis(H_, true)),
        full_(harmonic_basis(H_, false)),
        graph_(H_->quotient().graph()) {}

  std::string level() const { return H_->level_ideal().to_string(); }
  int genus() const { return graph_.genus; }
  int cusps() const { return graph_.cusps(); }
  int cuspidal_rank() const { return static_cast<int>(cusp_.size()); }
  int full_rank() const { return static_cast<int>(full_.size()); }
  std::vector<std::string> classes() const {
    std::vector<std::string> out;
    for (int i = 0; i < H_->size(); ++i) out.push_back(H_->class_of(i).to_string());
    return out;
  }
  py::list basis(bool cuspidal) const {
    py::list out;
    for (auto& f : cuspidal ? cusp_ : full_) out.append(to_py(f.values()));
    return out;
  }
  py::list hecke(const std::string& m, bool cuspidal, int jobs) const {
    return to_py(hecke_matrix(PolyA::parse(H_->field(), m), cuspidal ? cusp_ : full_, jobs).matrix);
  }
  py::list eisenstein(int jobs) const { return to_py(eisenstein_cochain(H_, jobs).values()); }
  py::dict fourier(const std::string& which, int K) const {
    Cochain f = which == "eisenstein" ? eisenstein_cochain(H_) : cochain_from(which);
    auto t = fourier_coeffs(f, K);
    py::dict d, star;
    d["f0"] = to_py(std::vector<Rat>(t.f0.begin() + 1, t.f0.end()));
    for (auto& [m, v] : t.fstar) star[py::str(m.to_string())] = to_py(v);
    d["fstar"] = star;
    return d;
  }
  py::list gram() const {
    py::list rows;
    for (auto& f : cusp_) {
      py::list r;
      for (auto& g : cusp_) r.append(to_py(petersson_pairing(f, g)));
      rows.append(r);
    }
    return rows;
  }
  py::list l_polynomials() const {
    py::list out;
    for (auto& f : cusp_) out.append(to_py(l_polynomial(f).coeffs));
    return out;
  }
  std::string dot() const { return graph_.to_dot(); }
  py::dict graph() const {
    py::dict d;
    d["genus"] = graph_.genus;
    d["cusps"] = graph_.cusps();
    d["finite_vertices"] = graph_.finite_vertices().size();
    d["finite_edges"] = graph_.finite_edges().size();
    d["vertices"] = graph_.vertices.size();
    d["edges"] = graph_.edges.size();
    return d;
  }

 private:
  Cochain cochain_from(const std::string& which) const {
    if (which.rfind("cusp:", 0) != 0) throw DomainError("which must be 'eisenstein' or 'cusp:<i>'");
    int i = std::stoi(which.substr(5));
    if (i < 1 || i > static_cast<int>(cusp_.size())) throw DomainError("cuspidal index out of range");
    return cusp_[i - 1];
  }

  std::shared_ptr<const HarmonicSpace> H_;
  std::vector<Cochain> cusp_, full_;
  QuotientGraph graph_;
};

}  // namespace

PYBIND11_MODULE(_drinfeld, m) {
  m.doc() = "Drinfeld modules and harmonic cochains over F_q[T]";
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<PrecisionError>(m, "PrecisionError", PyExc_ArithmeticError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  m.def("irreducibles", [](unsigned q, int d) {
    std::vector<std::string> out;
    for (auto& p : monic_irreducibles(Fq::of_order(q), d)) out.push_back(p.to_string());
    return out;
  }, py::arg("q"), py::arg("degree"));

  m.def("compose", [](unsigned q, const std::vector<std::string>& f, const std::vector<std::string>& g) {
    const Fq& F = Fq::of_order(q);
    FracField k(F);
    return SkewPoly<FracField>(k, parse_all(F, f)).compose(SkewPoly<FracField>(k, parse_all(F, g))).to_string();
  }, py::arg("q"), py::arg("f"), py::arg("g"), "f o g for skew polynomials given by dense coefficient lists");

  m.def("phi_a", [](unsigned q, const std::vector<std::string>& g, const std::string& a) {
    auto phi = module_F(q, g);
    return phi.phi(PolyA::parse(Fq::of_order(q), a)).to_string();
  }, py::arg("q"), py::arg("g"), py::arg("a"));

  m.def("j_invariant", [](unsigned q, const std::vector<std::string>& g) { return j_invariant(module_F(q, g)).to_string(); },
        py::arg("q"), py::arg("g"));

  m.def("torsion", [](unsigned q, const std::string& prime, const std::vector<std::string>& g, const std::string& a) {
    const Fq& F = Fq::of_order(q);
    auto base = residue_afield(PolyA::parse(F, prime));
    std::vector<GF::Elem> c;
    for (auto& x : g) c.push_back(reduce_mod(RationalFunc::parse(F, x), *base.field));
    auto res = torsion_module(DrinfeldGF(base, c), PolyA::parse(F, a));
    std::vector<std::string> d;
    for (auto& x : res.structure.divisors) d.push_back(x.to_string());
    return d;
  }, py::arg("q"), py::arg("prime"), py::arg("g"), py::arg("a"), "elementary divisors of phi[a] over the closure of A/prime");

  m.def("exp_coeffs", [](unsigned q, const std::vector<std::string>& g, int N) {
    std::vector<std::string> out;
    for (auto& e : exp_coeffs_from_phi(module_F(q, g), N)) out.push_back(e.to_string());
    return out;
  }, py::arg("q"), py::arg("g"), py::arg("N"));

  m.def("carlitz_period_power", [](unsigned q, int D) {
    auto w = carlitz_period_power(Fq::of_order(q), D);
    py::dict d;
    d["valuation"] = w.valuation();
    d["precision"] = w.precision();
    d["series"] = w.to_string();
    return d;
  }, py::arg("q"), py::arg("D"));

  m.def("cuspidal_order", [](unsigned q, const std::string& p, int r) {
    return to_py(cuspidal_order_rank_r(PolyA::parse(Fq::of_order(q), p), r));
  }, py::arg("q"), py::arg("prime"), py::arg("rank") = 2);

  m.def("eisenstein_index", [](unsigned q, const std::string& n, int jobs) {
    auto R = eisenstein_index(PolyA::parse(Fq::of_order(q), n), 1, 6, jobs);
    py::dict d;
    d["B"] = R.B;
    d["index"] = to_py(R.index);
    d["odd_part"] = to_py(R.odd_part);
    d["predicted_order"] = to_py(R.predicted_order);
    d["eisenstein_constant"] = to_py(R.eisenstein_constant);
    d["all_in_scope_match"] = R.all_in_scope_match;
    py::list ed;
    for (auto& x : R.elementary_divisors) ed.append(to_py(x));
    d["elementary_divisors"] = ed;
    return d;
  }, py::arg("q"), py::arg("level"), py::arg("jobs") = 1);

  m.def("paper_examples", [](unsigned q, int jobs) {
    py::list out;
    for (auto& c : paper_examples(q, jobs)) {
      py::dict d;
      d["group"] = c.group;
      d["name"] = c.name;
      d["expected"] = c.expected;
      d["observed"] = c.observed;
      d["pass"] = c.pass;
      out.append(d);
    }
    return out;
  }, py::arg("q"), py::arg("jobs") = 1);

  py::class_<Level>(m, "Level")
      .def(py::init<unsigned, const std::string&>(), py::arg("q"), py::arg("n"))
      .def_property_readonly("level", &Level::level)
      .def_property_readonly("genus", &Level::genus)
      .def_property_readonly("cusps", &Level::cusps)
      .def_property_readonly("cuspidal_rank", &Level::cuspidal_rank)
      .def_property_readonly("full_rank", &Level::full_rank)
      .def("classes", &Level::classes)
      .def("basis", &Level::basis, py::arg("cuspidal") = true)
      .def("hecke_matrix", &Level::hecke, py::arg("m"), py::arg("cuspidal") = true, py::arg("jobs") = 1)
      .def("eisenstein", &Level::eisenstein, py::arg("jobs") = 1)
      .def("fourier", &Level::fourier, py::arg("which") = "eisenstein", py::arg("K") = 4)
      .def("gram", &Level::gram)
      .def("l_polynomials", &Level::l_polynomials)
      .def("graph", &Level::graph)
      .def("dot", &Level::dot);
}
