#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "gvforge/bounds.hpp"
#include "gvforge/errors.hpp"
#include "gvforge/lenstra.hpp"
#include "gvforge/numtheory.hpp"
#include "gvforge/quadfield.hpp"
#include "gvforge/report.hpp"

namespace py = pybind11;
using namespace gvforge;

namespace {

BigInt to_big(const py::int_& x) { return BigInt(py::str(x).cast<std::string>()); }

py::int_ to_py(const BigInt& x) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(x.get_str().c_str(), nullptr, 10));
}

// "a/b" or a decimal string.
Rational to_rational(const std::string& text) {
  if (text.find('/') == std::string::npos) return parse_decimal(text);
  Rational r;
  if (r.set_str(text, 10) != 0 || r.get_den() == 0) throw ArgumentError("malformed rational '" + text + "'");
  r.canonicalize();
  return r;
}

py::dict witness_dict(const ParamWitness& w) {
  py::dict d;
  d["q"] = w.q;
  d["r"] = w.r;
  d["ell"] = w.ell;
  d["k"] = w.k;
  d["p_ell"] = w.p_ell;
  d["Nq"] = w.Nq_count;
  d["log_D"] = w.D_log;
  d["certified"] = w.certified;
  return d;
}

py::dict schedule_dict(const Schedule& s) {
  py::dict d;
  d["kind"] = to_string(s.kind);
  d["q"] = s.q;
  d["eps"] = s.eps ? py::cast(*s.eps) : py::none();
  d["r"] = s.r;
  d["ell"] = s.ell;
  d["k"] = s.k;
  d["eligible"] = s.eligible;
  d["valid"] = s.valid;
  d["note"] = s.note;
  return d;
}

std::string code_text(const LenstraCode& code) {
  std::ostringstream out;
  write_code(out, code);
  return out.str();
}

}  // namespace

PYBIND11_MODULE(_gvforge, m) {
  m.doc() = "Lenstra codes over quadratic fields and rate-bound certificates";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<CapacityError>(m, "CapacityError", PyExc_RuntimeError);
  py::register_exception<IndeterminateError>(m, "IndeterminateError", PyExc_ArithmeticError);

  py::class_<HighReal>(m, "Interval", "Rigorous enclosure [lower, upper] of a real number")
      .def_property_readonly("lower", &HighReal::lower)
      .def_property_readonly("upper", &HighReal::upper)
      .def_property_readonly("mid", &HighReal::mid)
      .def_property_readonly("width", &HighReal::width)
      .def("positive", &HighReal::positive)
      .def("negative", &HighReal::negative)
      .def("__float__", &HighReal::mid)
      .def("__str__", [](const HighReal& x) { return x.to_string(17); })
      .def("__repr__", [](const HighReal& x) { return "Interval" + x.bounds_string(17); });

  // Number theory.
  m.def("kronecker", [](const py::int_& a, const py::int_& n) { return kronecker_symbol(to_big(a), to_big(n)); },
        py::arg("a"), py::arg("n"));
  m.def(
      "primes_upto",
      [](std::uint64_t limit) {
        const PrimeTable t(limit);
        return std::vector<std::uint32_t>(t.primes().begin(), t.primes().end());
      },
      py::arg("limit"));
  m.def(
      "primorial_D",
      [](std::size_t ell) {
        const PrimeTable t(std::max<std::uint64_t>(64, static_cast<std::uint64_t>(ell) * 32));
        const auto p = primorial_D(t, ell);
        return py::make_tuple(to_py(p.value), p.log_value);
      },
      py::arg("ell"), "(4 p_1 ... p_ell, its logarithm)");

  // Quadratic fields.
  py::class_<QuadraticField>(m, "QuadraticField")
      .def_property_readonly("discriminant", [](const QuadraticField& f) { return to_py(f.discriminant()); })
      .def_property_readonly("radicand", [](const QuadraticField& f) { return to_py(f.radicand()); })
      .def_property_readonly("imaginary", &QuadraticField::imaginary)
      .def_property_readonly("infinite_places", &QuadraticField::infinite_places)
      .def_property_readonly("prime_divisors",
                             [](const QuadraticField& f) {
                               py::list out;
                               for (const auto& p : f.prime_divisors()) out.append(to_py(p));
                               return out;
                             })
      .def("__repr__", &QuadraticField::describe);
  m.def("make_field", [](const py::int_& disc) { return make_field(to_big(disc)); }, py::arg("disc"));
  m.def(
      "splitting_type",
      [](const QuadraticField& f, std::uint64_t p) {
        const auto recs = splitting_type(f, p);
        return std::string(to_string(recs.front().split_type));
      },
      py::arg("field"), py::arg("p"));
  m.def(
      "tower",
      [](const QuadraticField& f, std::uint64_t sc_size) {
        const TowerAnalysis t = analyze_tower(f, sc_size);
        py::dict d;
        d["d2"] = t.certificate.d2_lower;
        d["d2_exact"] = t.d2_exact;
        d["class_number"] = t.class_number ? py::cast(*t.class_number) : py::none();
        d["threshold"] = t.certificate.threshold;
        d["status"] = to_string(t.certificate.status);
        return d;
      },
      py::arg("field"), py::arg("sc_size") = 0);

  // Codes.
  py::class_<LenstraCode>(m, "LenstraCode")
      .def_property_readonly("n", &LenstraCode::n)
      .def_readonly("q", &LenstraCode::q)
      .def_readonly("r", &LenstraCode::r)
      .def_readonly("G", &LenstraCode::G)
      .def_readonly("codewords", &LenstraCode::codewords)
      .def_readonly("omega", &LenstraCode::omega_members)
      .def_property_readonly("tau", [](const LenstraCode& c) { return c.box.tau; })
      .def_property_readonly("M_bound", [](const LenstraCode& c) { return to_py(c.box.target); })
      .def(
          "verify",
          [](const LenstraCode& c, unsigned threads) {
            CodeVerification v;
            NormGapReport g;
            {
              py::gil_scoped_release release;
              v = verify_code(c, threads);
              g = norm_gap_check(c, threads);
            }
            py::dict d;
            d["M"] = v.M;
            d["d"] = v.d;
            d["M_bound"] = to_py(v.M_bound);
            d["d_bound"] = v.d_bound;
            d["injective"] = v.injective;
            d["consistent"] = v.consistent;
            d["norm_gap_ok"] = g.ok();
            d["ok"] = v.ok && g.ok();
            return d;
          },
          py::arg("threads") = 1)
      .def("to_text", &code_text);
  m.def(
      "build_code",
      [](const py::int_& disc, std::uint64_t r, std::uint64_t q, std::uint64_t G, std::uint64_t seed, unsigned threads) {
        const QuadraticField f = make_field(to_big(disc));
        BuildOptions opts;
        opts.threads = threads;
        opts.tau.seed = seed;
        py::gil_scoped_release release;
        return build_code(f, r, q, G, opts);
      },
      py::arg("disc"), py::arg("r"), py::arg("q"), py::arg("G"), py::arg("seed") = 0, py::arg("threads") = 1);
  m.def(
      "read_code",
      [](const std::string& text) {
        std::istringstream in(text);
        return read_code(in);
      },
      py::arg("text"));

  // Bounds.
  m.def("gv_bound", [](std::uint64_t q, const std::string& delta) { return gv_bound(q, to_rational(delta)); },
        py::arg("q"), py::arg("delta"));
  m.def("plotkin_bound", [](std::uint64_t q, const std::string& delta) { return plotkin_bound(q, to_rational(delta)); },
        py::arg("q"), py::arg("delta"));
  m.def(
      "check_conditions",
      [](std::uint64_t q, std::uint64_t r, std::uint64_t ell, std::uint64_t k) {
        const ConditionReport rep = check_conditions(q, r, ell, k);
        py::dict d;
        d["ok"] = rep.ok;
        d["failed_condition"] = rep.failed_condition;
        d["detail"] = rep.detail;
        d["witness"] = witness_dict(rep.witness);
        return d;
      },
      py::arg("q"), py::arg("r"), py::arg("ell"), py::arg("k"));
  m.def("theorem2_threshold", [] { return to_py(theorem2_threshold()); });
  m.def("theorem2_schedule", [](std::uint64_t q) { return schedule_dict(theorem2_schedule(q)); }, py::arg("q"));
  m.def(
      "certify_json",
      [](std::uint64_t q, std::uint64_t sieve_limit) {
        CertifyOptions opts;
        opts.sieve_limit = sieve_limit;
        py::gil_scoped_release release;
        return certificate_json(certify_theorem2(q, opts));
      },
      py::arg("q"), py::arg("sieve_limit") = 0);
  m.def(
      "search",
      [](std::uint64_t q, const std::string& delta, std::uint64_t budget) {
        SearchOptions opts;
        opts.budget = budget;
        const SearchResult s = search_params(q, to_rational(delta), opts);
        py::dict d;
        d["gv"] = s.gv;
        d["nfc"] = s.nfc ? py::cast(*s.nfc) : py::none();
        d["beats_gv"] = s.beats_gv;
        d["ell_explored"] = s.ell_explored;
        d["witness"] = s.best ? py::object(witness_dict(*s.best)) : py::none();
        return d;
      },
      py::arg("q"), py::arg("delta"), py::arg("budget") = 16);
  m.def(
      "bounds_csv",
      [](std::uint64_t q, const std::string& grid, std::uint64_t budget) {
        SearchOptions opts;
        opts.budget = budget;
        std::ostringstream out;
        write_bounds_csv(out, bound_table(q, parse_delta_grid(grid), opts));
        return out.str();
      },
      py::arg("q"), py::arg("grid"), py::arg("budget") = 16);
  m.def("final_inequality_margin", &final_inequality_margin, py::arg("ell"));
  m.def(
      "final_inequality_scan",
      [](std::uint64_t lo, std::uint64_t hi) {
        ScanResult s;
        {
          py::gil_scoped_release release;
          s = final_inequality_scan(lo, hi);
        }
        py::dict d;
        d["holds"] = s.holds;
        d["first_failure"] = s.first_failure ? py::cast(*s.first_failure) : py::none();
        d["argmin"] = s.argmin;
        d["min_margin"] = s.min_margin;
        return d;
      },
      py::arg("ell_min"), py::arg("ell_max"));
}
