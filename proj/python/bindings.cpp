#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "tuatara/cli.hpp"
#include "tuatara/complexity.hpp"
#include "tuatara/egyptian.hpp"
#include "tuatara/errors.hpp"
#include "tuatara/iota.hpp"
#include "tuatara/kraft.hpp"
#include "tuatara/machine_file.hpp"
#include "tuatara/machines.hpp"
#include "tuatara/numerics.hpp"
#include "tuatara/spectral.hpp"

namespace py = pybind11;
using namespace tuatara;

namespace {

// Hex crosses the boundary: Python limits decimal int/str conversion length.
py::object py_int(const BigInt& n) {
  return py::module_::import("builtins").attr("int")(n.get_str(16), 16);
}

BigInt to_bigint(const py::handle& h) {
  if (!py::isinstance<py::int_>(h)) throw InvalidArgument("expected an integer");
  std::string hex = py::module_::import("builtins").attr("hex")(h).cast<std::string>();
  const bool negative = hex[0] == '-';
  BigInt v(hex.substr(negative ? 3 : 2), 16);
  return negative ? BigInt(-v) : v;
}

py::object py_fraction(const Rational& q) {
  return py::module_::import("fractions").attr("Fraction")(py_int(q.num()), py_int(q.den()));
}

/// int, Fraction or a string such as "3/7" or "0.125".
Rational to_rational(const py::handle& h) {
  if (py::isinstance<py::float_>(h)) throw InvalidArgument("pass Fraction, int or str instead of float");
  if (py::isinstance<py::int_>(h)) return Rational(to_bigint(h));
  if (py::isinstance<py::str>(h)) return Rational::parse(h.cast<std::string>());
  if (py::hasattr(h, "numerator") && py::hasattr(h, "denominator"))
    return Rational(to_bigint(h.attr("numerator")), to_bigint(h.attr("denominator")));
  throw InvalidArgument("expected int, Fraction or str");
}

BitString to_bits(const std::string& s) { return BitString::parse(s); }

std::vector<BitString> to_bits(const std::vector<std::string>& xs) {
  std::vector<BitString> out;
  for (const auto& x : xs) out.push_back(to_bits(x));
  return out;
}

std::vector<std::string> from_bits(const std::vector<BitString>& xs) {
  std::vector<std::string> out;
  for (const auto& x : xs) out.push_back(x.str());
  return out;
}

py::list py_ints(const std::vector<BigInt>& xs) {
  py::list out;
  for (const auto& x : xs) out.append(py_int(x));
  return out;
}

py::object opt_int(const std::optional<BigInt>& v) { return v ? py_int(*v) : py::none(); }
py::object opt_fraction(const std::optional<Rational>& v) { return v ? py_fraction(*v) : py::none(); }

Measure to_measure(const std::string& name) {
  if (name == "plain") return Measure::Plain;
  if (name == "h") return Measure::ProgramSize;
  if (name == "nabla") return Measure::Nabla;
  if (name == "nabla-log") return Measure::NablaLog;
  throw InvalidArgument("measure must be plain, h, nabla or nabla-log, got " + name);
}

py::dict complexity_dict(const ComplexityValue& c) {
  py::dict d;
  d["value"] = opt_int(c.value);
  d["exact"] = c.exact;
  d["witness"] = c.witness ? py::object(py::str(c.witness->str())) : py::none();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Certified zeta and Omega numbers of machine domains";

  // Translators run newest first, so bases are registered before subclasses.
  const auto& error = py::register_exception<Error>(m, "Error");
  py::register_exception<InvalidArgument>(m, "InvalidArgument", error.ptr());
  py::register_exception<BudgetExhausted>(m, "BudgetExhausted", error.ptr());
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  static PyObject* kraft_violation = py::register_exception<KraftViolation>(m, "KraftViolation", error.ptr()).ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const KraftViolation& e) {
      // args = (message, 1-based index)
      PyErr_SetObject(kraft_violation, py::make_tuple(e.what(), e.index()).ptr());
    }
  });

  py::class_<Enclosure>(m, "Enclosure")
      .def_property_readonly("lo", [](const Enclosure& e) { return py_fraction(e.lo()); })
      .def_property_readonly("hi", [](const Enclosure& e) { return opt_fraction(e.hi()); })
      .def_property_readonly("bounded", &Enclosure::bounded)
      .def_property_readonly("width", [](const Enclosure& e) { return opt_fraction(e.width()); })
      .def("contains", [](const Enclosure& e, const py::object& x) { return e.contains(to_rational(x)); })
      .def("digits",
           [](const Enclosure& e, std::size_t n) { return digits(e, n).digits.str(); }, py::arg("n"))
      .def("__repr__", [](const Enclosure& e) { return "Enclosure(" + e.to_string() + ")"; });

  py::class_<MachineSpec>(m, "Machine")
      .def_static("finite", [](const std::vector<std::string>& dom) { return MachineSpec::finite(to_bits(dom)); })
      .def_static("mapped",
                  [](const std::map<std::string, std::string>& table) {
                    std::vector<std::pair<BitString, BitString>> rows;
                    for (const auto& [k, v] : table) rows.emplace_back(to_bits(k), to_bits(v));
                    return MachineSpec::finite_mapped(rows);
                  })
      .def_static("all_strings", &MachineSpec::all_strings)
      .def_static("lukasiewicz", &MachineSpec::lukasiewicz)
      .def_static("iota", &MachineSpec::iota, py::arg("steps") = 10000)
      .def_static(
          "geometric",
          [](std::uint64_t start, const std::vector<std::string>& extras) {
            return MachineSpec::geometric(start, to_bits(extras));
          },
          py::arg("start"), py::arg("extras") = std::vector<std::string>{})
      .def_static("product", &MachineSpec::product)
      .def_static("doubled", &MachineSpec::doubled)
      .def_static("tuatara_of", &MachineSpec::tuatara_of)
      .def_static("universal_tuatara", &MachineSpec::universal_tuatara)
      .def_static("universal_convergent",
                  [](std::vector<MachineSpec> members, const std::vector<py::object>& bounds) {
                    std::vector<Rational> bs;
                    for (const auto& b : bounds) bs.push_back(to_rational(b));
                    return MachineSpec::universal_convergent(std::move(members), std::move(bs));
                  })
      .def_static("prime_product", &MachineSpec::prime_product)
      .def_static("parse", [](const std::string& text) { return parse_machine_file(text); })
      .def("to_text", [](const MachineSpec& s) { return write_machine_file(s); })
      .def("describe", &MachineSpec::describe)
      .def("words",
           [](const MachineSpec& s, std::size_t count) {
             auto stream = domain_stream(s);
             std::vector<std::string> out;
             while (out.size() < count) {
               auto e = stream->next();
               if (!e) break;
               out.push_back(e->word.str());
             }
             return out;
           },
           py::arg("count"))
      .def("execute",
           [](const MachineSpec& s, const std::string& w) -> py::object {
             auto y = execute(s, to_bits(w));
             return y ? py::object(py::str(y->str())) : py::none();
           })
      .def("__repr__", [](const MachineSpec& s) { return "Machine(" + s.describe() + ")"; });

  // Strings and numbers.
  m.def("bin", [](const py::object& n) { return bin(to_bigint(n)).str(); });
  m.def("bin_inv", [](const std::string& x) { return py_int(bin_inv(to_bits(x))); });
  m.def("is_prefix_free", [](const std::vector<std::string>& xs) { return is_prefix_free(to_bits(xs)); });
  m.def("harmonic_segment",
        [](const py::object& i, const py::object& j) { return py_fraction(harmonic_segment(to_bigint(i), to_bigint(j))); });
  m.def("catalan", [](std::uint64_t k) { return py_int(catalan(k)); });
  m.def(
      "lambert_w",
      [](const py::object& x, const py::object& tol) { return lambert_w(to_rational(x), to_rational(tol)); },
      py::arg("x"), py::arg("tol") = "1/1099511627776");
  m.def(
      "w_ratio", [](std::uint64_t mm, const py::object& tol) { return w_ratio(mm, to_rational(tol)); }, py::arg("m"),
      py::arg("tol") = "1/1099511627776");
  m.def("e_bounds", &e_bounds, py::arg("terms") = 30);

  // Unit fractions and codes.
  m.def(
      "egyptian_floor",
      [](const py::object& q, const py::object& n) { return py_ints(egyptian_floor(to_rational(q), to_bigint(n)).denominators()); },
      py::arg("q"), py::arg("floor"));
  m.def("kraft_chaitin", [](const std::vector<std::uint64_t>& lengths) { return from_bits(kraft_chaitin(lengths).words); });
  m.def("dyadic_diagonal", [](const std::vector<py::object>& ms, std::size_t count) {
    std::vector<BigInt> den;
    for (const auto& x : ms) den.push_back(to_bigint(x));
    DyadicDiagonal grid(std::move(den));
    py::list out;
    for (std::size_t k = 0; k < count; ++k) {
      auto t = grid.next();
      if (!t) break;
      out.append(py_fraction(t->value()));
    }
    return out;
  });

  // Sums over domains.
  m.def("omega", &omega_enclosure, py::arg("machine"), py::arg("budget") = 100000);
  m.def("zeta", &zeta_enclosure, py::arg("machine"), py::arg("budget") = 100000);
  auto with_s = [&m](const char* name, Enclosure (*fn)(const MachineSpec&, const Rational&, std::uint64_t)) {
    m.def(
        name, [fn](const MachineSpec& mm, const py::object& s, std::uint64_t b) { return fn(mm, to_rational(s), b); },
        py::arg("machine"), py::arg("s"), py::arg("budget") = 100000);
  };
  with_s("omega_s", &omega_s);
  with_s("zeta_s", &zeta_s);
  with_s("kappa", &kappa);
  with_s("kappa_natural", &kappa_natural);
  m.def(
      "riemann_zeta", [](const py::object& s, std::uint64_t b) { return riemann_zeta(to_rational(s), b); },
      py::arg("s"), py::arg("budget") = 10000);
  m.def("dyadic_weight_sum", [](std::uint64_t l) { return py_fraction(dyadic_weight_sum(l)); });
  m.def("pnt_check", &pnt_check);
  m.def(
      "classify",
      [](const MachineSpec& mm, std::uint64_t b) {
        const auto c = classify(mm, b);
        return py::make_tuple(to_string(c.zeta.cls), to_string(c.omega.cls));
      },
      py::arg("machine"), py::arg("budget") = 100000);
  m.def("sanity_chain", [](const MachineSpec& mm) {
    const auto r = sanity_chain(mm);
    py::dict d;
    d["omega"] = py_fraction(r.omega);
    d["zeta"] = py_fraction(r.zeta);
    d["holds"] = r.holds;
    d["strict_expected"] = r.strict_expected;
    d["strict_holds"] = r.strict_holds;
    return d;
  });
  m.def("x_set", [](const std::string& p) { return from_bits(x_set(to_bits(p))); });
  m.def("j_pairing", [](std::uint64_t i, const py::object& b) { return py_int(j_pairing(i, to_bigint(b))); });
  m.def("density", [](const MachineSpec& mm, std::uint64_t n) { return density_enclosure(mm, n); });
  m.def(
      "fresh_index",
      [](const MachineSpec& mm, const std::string& y, std::uint64_t b) {
        const auto r = fresh_index(mm, to_bits(y), b);
        return py::make_tuple(r.word.str(), py_int(r.index));
      },
      py::arg("machine"), py::arg("y"), py::arg("budget") = 100000);

  // Complexity.
  m.def(
      "complexity",
      [](const MachineSpec& mm, const std::string& x, const std::string& kind, std::uint64_t b) {
        return complexity_dict(measure(to_measure(kind), mm, to_bits(x), b));
      },
      py::arg("machine"), py::arg("x"), py::arg("measure") = "plain", py::arg("budget") = 100000);

  // Iota.
  auto iota = m.def_submodule("iota", "Iota programs");
  iota.def("is_program", [](const std::string& bits) { return iota::is_program(to_bits(bits)); });
  iota.def("count_programs", [](std::uint64_t len) { return py_int(iota::count_programs(len)); });
  iota.def("encode", [](const std::string& x) { return iota::encode_bits(to_bits(x)).str(); });
  iota.def(
      "decode", [](const std::string& p, std::uint64_t steps) { return iota::decode_bits(to_bits(p), steps).str(); },
      py::arg("program"), py::arg("steps") = iota::kDefaultSteps);
  iota.def(
      "run",
      [](const std::string& p, std::uint64_t steps) -> py::object {
        const auto r = iota::reduce(iota::CombTerm::from_program(to_bits(p)), steps);
        if (!r.normal) return py::none();
        return py::str(r.term->to_string());
      },
      py::arg("program"), py::arg("steps") = iota::kDefaultSteps);
  iota.def("constants", [] {
    const auto& c = iota::constants();
    return py::make_tuple(c.f.str(), c.t.str(), c.pair.str());
  });

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
