// Python bindings. Structured values cross the boundary as JSON text; the
// eqgeo package converts them to and from dicts.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <filesystem>

#include "eqgeo/backends.hpp"
#include "eqgeo/certificate.hpp"
#include "eqgeo/decomposition.hpp"
#include "eqgeo/dsl.hpp"
#include "eqgeo/errors.hpp"
#include "eqgeo/group_io.hpp"
#include "eqgeo/quotient.hpp"
#include "eqgeo/radical.hpp"
#include "eqgeo/topology.hpp"

namespace py = pybind11;
using namespace eqgeo;

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad JSON: ") + e.what());
  }
}

std::string dump(const json& j) { return j.dump(-1, ' ', false, json::error_handler_t::replace); }

class PyGroup {
 public:
  explicit PyGroup(GroupPtr g) : g_(std::move(g)) {}

  std::string kind() const { return g_->kind(); }
  bool is_finite() const { return g_->is_finite(); }
  bool is_abelian() const { return g_->is_abelian(); }
  std::uint64_t order() const {
    if (!g_->is_finite()) throw Undecided(g_->kind() + " backend is infinite");
    return g_->order();
  }
  std::vector<std::string> elements() const {
    std::vector<std::string> out;
    for (const auto& e : g_->elements()) out.push_back(g_->serialize(e));
    return out;
  }
  std::string op(const std::string& a, const std::string& b) const {
    return g_->serialize(g_->op(g_->parse_element(a), g_->parse_element(b)));
  }
  std::string inv(const std::string& a) const { return g_->serialize(g_->inv(g_->parse_element(a))); }
  std::string evaluate(const std::string& word, const std::vector<std::string>& tuple) const {
    Tuple v;
    for (const auto& x : tuple) v.push_back(g_->parse_element(x));
    return g_->serialize(eqgeo::evaluate(parse_word(word, g_, v.size()), v, *g_));
  }
  std::string normalize(const std::string& word, std::size_t arity) const { return print_word(parse_word(word, g_, arity)); }
  std::string hash() const { return group_hash(*g_); }
  std::string to_json() const { return dump(g_->to_json()); }
  const GroupPtr& ptr() const { return g_; }

 private:
  GroupPtr g_;
};

PyGroup load(const std::string& spec, const std::string& base_dir) {
  return PyGroup(group_from_json(parse_json(spec), base_dir));
}

std::string witness_json(const std::string& set, const std::string& method, std::size_t budget,
                         const std::string& base_dir) {
  CoefficientMode mode;
  auto e = TupleSet::from_json(parse_json(set), base_dir, &mode);
  WitnessCertificate c;
  if (method == "auto")
    c = witness(e, mode, budget);
  else if (method == "abelian")
    c = witness_abelian(e, mode);
  else if (method == "product")
    c = witness_product(e, mode, budget);
  else if (method == "finite-extension")
    c = witness_finite_extension(e, mode, budget);
  else
    throw ValidationError("unknown method '" + method + "'");
  return dump(c.to_json());
}

std::string check_json(const std::string& text) { return dump(check_certificate_text(text).to_json()); }

std::string canonical_text(const std::string& certificate) { return certificate_text(parse_json(certificate)); }

std::string decompose_json(const PyGroup& g, const std::string& word, const std::vector<std::string>& lambda) {
  auto a = std::dynamic_pointer_cast<const SemidirectGroup>(g.ptr());
  if (!a) throw ValidationError("decompose needs a semidirect group");
  Tuple s;
  for (const auto& x : lambda) s.push_back(a->top().parse_element(x));
  return dump(decompose_word(parse_word(word, g.ptr(), s.size()), s).to_json(*a));
}

std::string closure_json(const std::string& set, std::size_t budget, const std::string& base_dir) {
  CoefficientMode mode;
  auto e = TupleSet::from_json(parse_json(set), base_dir, &mode);
  auto j = closure(e, mode, budget).to_json();
  j["group"] = e.group()->to_json();
  return dump(j);
}

std::string chain_json(const std::vector<std::string>& sets, std::size_t window, std::size_t budget,
                       const std::string& base_dir) {
  std::vector<TupleSet> stream;
  CoefficientMode mode;
  for (const auto& s : sets) stream.push_back(TupleSet::from_json(parse_json(s), base_dir, &mode));
  return dump(chain_monitor(stream, mode, window, budget).to_json());
}

std::string qmodz_json(std::size_t k) {
  QmodZGroup q;
  return dump(qmodz_counterexample(k).to_json(q));
}

Word gt_word(const std::string& text, const RadicalUnion& r) { return parse_word(text, r.group, 1, {VarStyle::TX, 1}); }

bool quotient_eq_py(const std::string& un, const std::string& p, const std::string& q, const std::string& base_dir) {
  auto r = RadicalUnion::from_json(parse_json(un), base_dir);
  return quotient_eq(gt_word(p, r), gt_word(q, r), r);
}

std::string r_member_json(const std::string& un, const std::string& word, const std::string& base_dir) {
  auto r = RadicalUnion::from_json(parse_json(un), base_dir);
  return dump(r_membership(gt_word(word, r), r).to_json(*r.group));
}

}  // namespace

PYBIND11_MODULE(_eqgeo, m) {
  m.doc() = "Equations over groups: radicals, witnesses and certificates";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base.ptr());
  py::register_exception<Undecided>(m, "Undecided", base.ptr());

  py::class_<PyGroup>(m, "Group")
      .def_property_readonly("kind", &PyGroup::kind)
      .def_property_readonly("is_finite", &PyGroup::is_finite)
      .def_property_readonly("is_abelian", &PyGroup::is_abelian)
      .def("order", &PyGroup::order)
      .def("elements", &PyGroup::elements)
      .def("op", &PyGroup::op)
      .def("inv", &PyGroup::inv)
      .def("evaluate", &PyGroup::evaluate, py::arg("word"), py::arg("values"))
      .def("normalize", &PyGroup::normalize, py::arg("word"), py::arg("arity"))
      .def("hash", &PyGroup::hash)
      .def("to_json", &PyGroup::to_json);

  m.def("load_group", &load, py::arg("spec"), py::arg("base_dir") = "");
  m.def("load_group_file", [](const std::string& path) { return PyGroup(load_group(path)); }, py::arg("path"));
  m.def("witness", &witness_json, py::arg("set"), py::arg("method") = "auto", py::arg("budget") = 0,
        py::arg("base_dir") = "", py::call_guard<py::gil_scoped_release>());
  m.def("check", &check_json, py::arg("text"), py::call_guard<py::gil_scoped_release>());
  m.def("certificate_text", &canonical_text, py::arg("certificate"));
  m.def("decompose", &decompose_json, py::arg("group"), py::arg("word"), py::arg("lambda_"));
  m.def("closure", &closure_json, py::arg("set"), py::arg("budget") = 0, py::arg("base_dir") = "",
        py::call_guard<py::gil_scoped_release>());
  m.def("chain", &chain_json, py::arg("sets"), py::arg("window") = 16, py::arg("budget") = 0,
        py::arg("base_dir") = "", py::call_guard<py::gil_scoped_release>());
  m.def("qmodz_demo", &qmodz_json, py::arg("k"));
  m.def("quotient_eq", &quotient_eq_py, py::arg("union"), py::arg("p"), py::arg("q"), py::arg("base_dir") = "");
  m.def("r_member", &r_member_json, py::arg("union"), py::arg("word"), py::arg("base_dir") = "");
}
