#include "hkcob/chern.hpp"
#include "hkcob/cobordism.hpp"
#include "hkcob/genfun.hpp"
#include "hkcob/version.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace hkcob;

namespace {

py::object fraction_type() {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls;
}

py::object to_py(const Rational& q) {
  py::object num = py::int_(py::str(q.get_num().get_str()));
  py::object den = py::int_(py::str(q.get_den().get_str()));
  return fraction_type()(num, den);
}

Rational from_py(const py::handle& h) {
  if (py::isinstance<py::int_>(h)) return parse_rational(py::str(h).cast<std::string>());
  if (py::isinstance(h, fraction_type())) {
    return parse_rational(py::str(h.attr("numerator")).cast<std::string>() + "/" +
                          py::str(h.attr("denominator")).cast<std::string>());
  }
  if (py::isinstance<py::str>(h)) return parse_rational(h.cast<std::string>());
  throw py::type_error("expected int, fractions.Fraction or a 'p/q' string");
}

py::tuple key(const Partition& p) { return py::tuple(py::cast(p.parts())); }

Partition partition_from(const std::vector<int>& parts) { return Partition(parts); }

// ChernVector <-> {tuple(k-parts): Fraction}, values of ch_2k monomials.
py::dict vector_to_dict(const ChernVector& v) {
  py::dict out;
  for (const auto& ks : partitions_of(v.dim / 2)) out[key(ks)] = to_py(v.even(ks));
  return out;
}

ChernVector vector_from_dict(const py::dict& d) {
  ChernVector v;
  int n = -1;
  for (const auto& [k, val] : d) {
    const Partition ks = partition_from(k.cast<std::vector<int>>());
    if (n < 0) n = ks.size();
    if (ks.size() != n) throw py::value_error("partitions of different sizes");
    v.ch[ks.scaled(2)] = from_py(val);
  }
  if (n < 1) throw py::value_error("empty Chern vector");
  v.dim = 2 * n;
  v.validate();
  return v;
}

py::dict coeffs_to_dict(const std::map<Partition, Rational>& m) {
  py::dict out;
  for (const auto& [I, c] : m) out[key(I)] = to_py(c);
  return out;
}

SurfaceChoice surface_from(const py::object& c2) {
  if (c2.is_none()) return SurfaceChoice::k3();
  return SurfaceChoice::generic_c2(from_py(c2));
}

std::vector<py::object> list_to_py(const std::vector<Rational>& v) {
  std::vector<py::object> out;
  for (const auto& x : v) out.push_back(to_py(x));
  return out;
}

// Engine and basis bundled: one object per Python-side session.
class Engine {
public:
  explicit Engine(const std::string& correction)
      : engine_(std::make_shared<ChernEngine>(correction_by_name(correction), correction)), basis_(engine_) {}

  py::object hilb_ch(int n, const std::vector<int>& ks, const py::object& c2) {
    const auto surface = surface_from(c2);
    Rational r;
    {
      py::gil_scoped_release release;
      r = engine_->hilb_ch_number(n, partition_from(ks), surface);
    }
    return to_py(r);
  }
  py::object kummer_ch(int n, const std::vector<int>& ks) {
    Rational r;
    {
      py::gil_scoped_release release;
      r = engine_->kummer_ch_number(n, partition_from(ks));
    }
    return to_py(r);
  }
  py::dict vector(const std::string& family, int n) {
    const Family f = parse_family(family);
    ChernVector v;
    {
      py::gil_scoped_release release;
      v = basis_.generator(f, n);
    }
    return vector_to_dict(v);
  }
  py::dict expand(const py::dict& vec, const std::string& family) {
    const ChernVector v = vector_from_dict(vec);
    std::map<Partition, Rational> c;
    {
      py::gil_scoped_release release;
      c = basis_.expand(v, parse_family(family));
    }
    return coeffs_to_dict(c);
  }
  py::dict synthesize(const py::dict& coeffs, const std::string& family) {
    std::map<Partition, Rational> c;
    for (const auto& [k, val] : coeffs) c[partition_from(k.cast<std::vector<int>>())] = from_py(val);
    ChernVector v;
    {
      py::gil_scoped_release release;
      v = basis_.synthesize(c, parse_family(family));
    }
    return vector_to_dict(v);
  }
  py::object basis_determinant(int n, const std::string& family) {
    Rational d;
    {
      py::gil_scoped_release release;
      d = determinant(basis_.basis_matrix(n, parse_family(family)).entries);
    }
    return to_py(d);
  }

private:
  std::shared_ptr<ChernEngine> engine_;
  CobordismBasis basis_;
};

py::dict chern_numbers(const py::dict& vec) {
  const auto c = ch_to_c(vector_from_dict(vec));
  py::dict out;
  for (const auto& [nu, val] : c) {
    std::vector<int> half;
    for (int p : nu.parts()) half.push_back(p / 2);
    out[py::tuple(py::cast(half))] = to_py(val);
  }
  return out;
}

py::dict from_chern_numbers(const py::dict& cvals) {
  std::map<Partition, Rational> c;
  int n = -1;
  for (const auto& [k, val] : cvals) {
    const Partition ks = partition_from(k.cast<std::vector<int>>());
    n = ks.size();
    c[ks.scaled(2)] = from_py(val);
  }
  if (n < 1) throw py::value_error("empty input");
  return vector_to_dict(c_to_ch(2 * n, c, true));
}

py::object genus(const std::string& name, const py::dict& vec) {
  const ChernVector v = vector_from_dict(vec);
  if (name == "todd") return to_py(evaluate_genus(genus_polynomial(todd_series(), v.dim), v)[0]);
  if (name == "milnor") return to_py(milnor_genus(v));
  if (name == "chi_y" || name == "chi-y")
    return py::cast(list_to_py(signed_hodge_euler_list(evaluate_genus(genus_polynomial(chi_y_series(), v.dim), v))));
  throw py::value_error("unknown genus '" + name + "' (todd, chi_y, milnor)");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact Chern numbers of Hilbert schemes of points on K3 surfaces and generalized Kummer varieties";
  m.attr("__version__") = kEngineVersion;

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const std::domain_error& e) {
      PyErr_SetString(PyExc_ArithmeticError, e.what());
    }
  });

  py::class_<Engine>(m, "Engine", "Chern-number engine with memoised intermediate states")
      .def(py::init<const std::string&>(), py::arg("correction") = "sum_squares")
      .def("hilb_ch", &Engine::hilb_ch, py::arg("n"), py::arg("partition"), py::arg("c2") = py::none(),
           "int over S^[n] of prod ch_{2k}; K3 unless c2 is given")
      .def("kummer_ch", &Engine::kummer_ch, py::arg("n"), py::arg("partition"))
      .def("vector", &Engine::vector, py::arg("family"), py::arg("n"),
           "All ch_2k monomial integrals as {partition tuple: Fraction}")
      .def("expand", &Engine::expand, py::arg("vector"), py::arg("family"))
      .def("synthesize", &Engine::synthesize, py::arg("coefficients"), py::arg("family"))
      .def("basis_determinant", &Engine::basis_determinant, py::arg("n"), py::arg("family"));

  m.def("chern_numbers", &chern_numbers, py::arg("vector"), "ch_2k values to c_2k Chern numbers (keys in half-degrees)");
  m.def("from_chern_numbers", &from_chern_numbers, py::arg("chern_numbers"));
  m.def("genus", &genus, py::arg("name"), py::arg("vector"));
  m.def("euler_affine_check", [](const py::dict& coeffs, int n) {
    std::map<Partition, Rational> c;
    for (const auto& [k, val] : coeffs) c[partition_from(k.cast<std::vector<int>>())] = from_py(val);
    return euler_affine_check(c, n);
  });
  m.def("closed_form_hilb_top", [](int n, const py::object& c2) { return to_py(closed_form_hilb_top(n, from_py(c2))); },
        py::arg("n"), py::arg("c2") = 24);
  m.def("closed_form_kummer_top", [](int n) { return to_py(closed_form_kummer_top(n)); });
  m.def("closed_form_kummer_double", [](int n, int k) { return to_py(closed_form_kummer_double(n, k)); });
  m.def("gottsche_betti", [](const std::vector<long>& b, int n) {
    if (b.size() != 5) throw py::value_error("need five Betti numbers");
    BettiVector bv{{b[0], b[1], b[2], b[3], b[4]}};
    std::vector<py::object> out;
    for (const auto& x : gottsche_betti(bv, n)) out.push_back(py::int_(py::str(x.get_str())));
    return out;
  });
  m.def("gottsche_soergel_kummer_chi", [](int N) { return list_to_py(gottsche_soergel_kummer_chi(N).coefficients()); });
  m.def("conventions_hash", [](const std::string& c) { return conventions_hash(c); }, py::arg("correction") = "sum_squares");
}
