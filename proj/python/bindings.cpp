#include "ffdep/acceptance.hpp"
#include "ffdep/locus.hpp"
#include "ffdep/relations.hpp"
#include "ffdep/semaev.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace ffdep;

namespace {

py::int_ to_py(const BigInt& n) { return py::int_(py::module_::import("builtins").attr("int")(n.get_str())); }

BigInt from_py(const py::int_& n) { return parse_bigint(py::str(n)); }

py::object rat_to_py(const BigRat& r) {
  return py::module_::import("fractions").attr("Fraction")(to_py(r.get_num()), to_py(r.get_den()));
}

py::list coeffs_to_py(const IntPoly& f) {
  py::list out;
  for (const auto& c : f.coeffs()) out.append(to_py(c));
  return out;
}

py::list coeffs_to_py(const RatPoly& f) {
  py::list out;
  for (const auto& c : f.coeffs()) out.append(rat_to_py(c));
  return out;
}

IntPoly poly_from_py(const std::vector<py::int_>& coeffs) {
  std::vector<BigInt> c;
  for (const auto& x : coeffs) c.push_back(from_py(x));
  return IntPoly(std::move(c));
}

py::object vec_to_py(const std::optional<ExponentVector>& v) {
  if (!v) return py::none();
  return py::tuple(py::cast(v->entries));
}

std::vector<FqElem> elems(const FieldPtr& F, const std::vector<long long>& xs) {
  std::vector<FqElem> out;
  for (auto x : xs) out.emplace_back(F, F->from_int(x));
  return out;
}

py::list division_polynomials(const std::string& curve, int nmax) {
  const DivPolyTable T(CurveQ::parse(curve), nmax);
  py::list out;
  for (int n = 1; n <= nmax; ++n) {
    const DivPoly d = T.get(n);
    py::dict row;
    row["n"] = n;
    row["psi"] = coeffs_to_py(d.psi_exact);
    row["phi"] = coeffs_to_py(d.phi_exact);
    row["psi_sq"] = coeffs_to_py(d.psi_sq_exact);
    out.append(row);
  }
  return out;
}

py::dict summation_polynomial(const std::string& curve, int n) {
  const MultiPoly s = summation_poly(CurveQ::parse(curve), n);
  py::list terms;
  std::istringstream in(s.serialize());
  std::string line;
  while (std::getline(in, line)) {
    const auto colon = line.find(':');
    py::list exps;
    std::istringstream es(line.substr(colon + 1));
    std::string e;
    while (std::getline(es, e, ',')) exps.append(std::stoul(e));
    terms.append(py::make_tuple(to_py(parse_bigint(line.substr(0, colon))), py::tuple(exps)));
  }
  py::list degrees;
  for (int i = 0; i < n; ++i) degrees.append(s.degree_in(i));
  py::dict out;
  out["n"] = n;
  out["terms"] = terms;
  out["degrees"] = degrees;
  out["height"] = to_py(s.max_abs_coefficient());
  return out;
}

RelationSystem make_system(const std::string& phis, const std::string& rhos, const std::optional<std::string>& curve,
                           const std::string& kind) {
  RelationSystem sys;
  sys.kind = parse_relation_kind(kind);
  if (!phis.empty()) sys.phis = parse_ratfunc_list(phis);
  if (!rhos.empty()) sys.rhos = parse_ratfunc_list(rhos);
  if (curve) sys.curve = CurveQ::parse(*curve);
  return sys;
}

py::dict table_to_py(const ResultantTable& t) {
  py::list records;
  for (const auto& r : t.records) {
    py::dict d;
    d["k"] = py::tuple(py::cast(r.k.entries));
    d["l"] = py::tuple(py::cast(r.l.entries));
    d["R"] = to_py(r.R);
    d["logR"] = r.logR;
    d["within_hadamard"] = r.within_hadamard;
    records.append(d);
  }
  py::list J;
  for (const auto& c : t.J) J.append(py::make_tuple(py::tuple(py::cast(c.k.entries)), to_py(c.value)));
  py::dict out;
  out["kind"] = to_string(t.kind);
  out["K"] = t.K;
  out["L"] = t.L;
  out["W"] = coeffs_to_py(t.W);
  out["T"] = to_py(t.T);
  out["logT"] = t.logT;
  out["J"] = J;
  out["content_product"] = to_py(t.content_product);
  out["hadamard_ok"] = t.hadamard_ok;
  out["records"] = records;
  return out;
}

py::dict locus(const std::string& set, std::uint64_t p, long K, long L, const std::string& phis,
               const std::string& rhos, const std::optional<std::string>& curve, unsigned degree, bool prediction,
               unsigned jobs) {
  LocusProblem problem;
  problem.set = parse_locus_set(set);
  if (!phis.empty()) problem.phis = parse_ratfunc_list(phis);
  if (!rhos.empty()) problem.rhos = parse_ratfunc_list(rhos);
  if (curve) problem.curve = CurveQ::parse(*curve);
  LocusReport rep = enumerate(problem, FieldCtx::make(p, degree), K, L, jobs);
  if (prediction) attach_prediction(rep, resultant_table(problem.prediction_system(), K, L, jobs));
  py::list elements;
  for (const auto& el : rep.elements) {
    py::dict d;
    d["alpha"] = el.alpha;
    py::list w;
    for (const auto& x : el.witnesses) {
      w.append(py::make_tuple(py::tuple(py::cast(x.vector.entries)),
                              x.second ? py::object(py::tuple(py::cast(x.second->entries))) : py::none()));
    }
    d["witnesses"] = w;
    if (prediction) d["root_of_W"] = el.root_of_W;
    elements.append(d);
  }
  py::dict out;
  out["set"] = to_string(rep.set);
  out["p"] = rep.p;
  out["d"] = rep.d;
  out["elements"] = elements;
  out["excluded"] = rep.excluded;
  if (prediction) {
    out["vp_T"] = rep.vp_T;
    out["deg_W"] = rep.deg_W;
    out["predicted_bound"] = rep.predicted_bound;
    out["unexplained"] = rep.unexplained;
    out["degenerate_prime"] = rep.degenerate_prime;
    out["within_bound"] = rep.within_bound();
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Division and summation polynomials, resultant tables and dependence loci";
  auto domain = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
  (void)domain;

  m.def("division_polynomials", &division_polynomials, py::arg("curve"), py::arg("nmax"),
        "Psi_n, phi_n, psi_n^2 for 1 <= n <= nmax as Fraction coefficient lists, constant term first.");
  m.def("summation_polynomial", &summation_polynomial, py::arg("curve"), py::arg("n"),
        "sigma_n as (coefficient, exponents) terms.");
  m.def(
      "resultant",
      [](const std::vector<py::int_>& f, const std::vector<py::int_>& g) {
        return to_py(resultant(poly_from_py(f), poly_from_py(g)));
      },
      py::arg("f"), py::arg("g"), "Res(f, g) for coefficient lists, constant term first.");
  m.def(
      "resultant_table",
      [](const std::string& phis, long K, long L, const std::string& kind, const std::string& rhos,
         const std::optional<std::string>& curve, unsigned jobs) {
        return table_to_py(resultant_table(make_system(phis, rhos, curve, kind), K, L, jobs));
      },
      py::arg("phis"), py::arg("K"), py::arg("L"), py::arg("kind") = "MULT_MULT", py::arg("rhos") = "",
      py::arg("curve") = py::none(), py::arg("jobs") = 1);
  m.def(
      "candidate_W",
      [](const std::string& phis, long K, long L, const std::string& kind, const std::string& rhos,
         const std::optional<std::string>& curve) {
        return coeffs_to_py(candidate_W(make_system(phis, rhos, curve, kind), K, L));
      },
      py::arg("phis"), py::arg("K"), py::arg("L"), py::arg("kind") = "MULT_MULT", py::arg("rhos") = "",
      py::arg("curve") = py::none());
  m.def("locus", &locus, py::arg("set"), py::arg("p"), py::arg("K"), py::arg("L"), py::arg("phis") = "",
        py::arg("rhos") = "", py::arg("curve") = py::none(), py::arg("degree") = 1, py::arg("prediction") = true,
        py::arg("jobs") = 1);
  m.def(
      "is_K_mult_dependent",
      [](std::uint64_t p, const std::vector<long long>& xs, long K) {
        return vec_to_py(is_K_mult_dependent(elems(FieldCtx::make(p), xs), K));
      },
      py::arg("p"), py::arg("xs"), py::arg("K"), "Least canonical k with prod x_i^k_i = 1 in F_p, or None.");
  m.def(
      "is_L_linear_dependent",
      [](std::uint64_t p, long long a, long long b, const std::vector<long long>& alphas, long L) {
        const auto F = FieldCtx::make(p);
        return vec_to_py(is_L_linear_dependent(elems(F, alphas), CurveFq(F, F->from_int(a), F->from_int(b)), L));
      },
      py::arg("p"), py::arg("a"), py::arg("b"), py::arg("alphas"), py::arg("L"));
  m.def(
      "run_acceptance",
      [](const std::vector<int>& criteria, std::uint64_t seed, const std::string& out_dir,
         const std::string& golden_dir, unsigned jobs) {
        AcceptanceOptions opt;
        opt.criteria = criteria;
        opt.seed = seed;
        opt.out_dir = out_dir;
        opt.golden_dir = golden_dir;
        opt.jobs = jobs;
        std::ostringstream log;
        const auto result = run_acceptance(opt, log);
        py::list out;
        for (const auto& r : result.results) {
          py::dict d;
          d["id"] = r.id;
          d["title"] = r.title;
          d["pass"] = r.pass;
          d["summary"] = r.summary;
          out.append(d);
        }
        return out;
      },
      py::arg("criteria"), py::arg("seed") = 1, py::arg("out_dir") = "acceptance_out", py::arg("golden_dir") = "",
      py::arg("jobs") = 1);
}
