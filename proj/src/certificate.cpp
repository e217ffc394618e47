#include "eqgeo/certificate.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "eqgeo/backends.hpp"
#include "eqgeo/closure.hpp"
#include "eqgeo/decomposition.hpp"
#include "eqgeo/errors.hpp"
#include "eqgeo/group_io.hpp"

namespace eqgeo {

std::string certificate_text(const json& certificate) { return certificate.dump(2) + "\n"; }

std::string certificate_text(const WitnessCertificate& certificate) {
  return certificate_text(certificate.to_json());
}

namespace {

struct Checker {
  std::vector<std::string> problems;

  void fail(const std::string& where, const std::string& what) { problems.push_back(where + ": " + what); }

  // Chain orders of Gamma(E0) and Gamma(E); E0 is a subset of E here.
  static bool closure_equal(const GroupPtr& h, std::size_t n, const std::vector<Tuple>& e0,
                            const std::vector<Tuple>& e, const CoefficientMode& mode) {
    const auto& table = h->cayley();
    auto coef = mode.generators(*h);
    CoordinateChain c0(table, e0.size(), coordinate_generators(table, e0, n, coef));
    CoordinateChain c1(table, e.size(), coordinate_generators(table, e, n, coef));
    return c0.order() == c1.order();
  }

  static bool redundant_by_closure(const GroupPtr& h, std::size_t n, std::vector<Tuple> prefix, const Tuple& added,
                                   const CoefficientMode& mode) {
    const auto& table = h->cayley();
    prefix.push_back(added);
    CoordinateChain c(table, prefix.size(), coordinate_generators(table, prefix, n, mode.generators(*h)));
    return c.level_sizes().back() == 1;
  }

  // Coefficients of a separator must come from the allowed subgroup.
  static bool coefficient_allowed(const GroupBackend& h, const CoefficientMode& mode, const Element& c) {
    switch (mode.kind) {
      case CoefficientMode::Kind::All:
        return true;
      case CoefficientMode::Kind::None:
        return h.is_identity(c);
      case CoefficientMode::Kind::List:
        break;
    }
    if (h.is_identity(c)) return true;
    if (auto model = h.linear_model([&] {
          auto v = mode.list;
          v.push_back(c);
          return v;
        }())) {
      const auto k = mode.list.size();
      IntMat a;
      IntVec b;
      for (std::size_t d = 0; d < model->moduli.size(); ++d) {
        IntVec row;
        for (std::size_t i = 0; i < k; ++i) row.push_back(model->coords[i][d]);
        a.push_back(std::move(row));
        b.push_back(model->coords[k][d]);
      }
      return solve_affine(a, b, model->moduli, k).solvable;
    }
    if (!h.is_finite()) return false;
    std::unordered_set<Element, ElementHash> seen{h.identity()};
    std::vector<Element> todo{h.identity()};
    while (!todo.empty()) {
      auto x = todo.back();
      todo.pop_back();
      for (const auto& g : mode.list) {
        auto y = h.op(x, g);
        if (seen.insert(y).second) todo.push_back(y);
      }
    }
    return seen.count(c) > 0;
  }

  void check_separator_coefficients(const std::string& where, const GroupBackend& h, const CoefficientMode& mode,
                                    const Separator& s) {
    if (s.linear) {
      if (!coefficient_allowed(h, mode, s.linear->c)) fail(where, "separator uses a coefficient outside the mode");
      return;
    }
    for (const auto& l : s.word->letters())
      if (!l.is_variable() && !coefficient_allowed(h, mode, l.coef)) {
        fail(where, "separator uses a coefficient outside the mode");
        return;
      }
  }

  void check(const json& j, const std::string& where) {
    try {
      check_inner(j, where);
    } catch (const std::exception& ex) {
      fail(where, ex.what());
    }
  }

  void check_inner(const json& j, const std::string& where) {
    if (!j.is_object()) return fail(where, "certificate is not an object");
    if (j.value("format", "") != "eqgeo-witness/1") return fail(where, "unknown format");
    {
      json body = j;
      body.erase("digest");
      if (!j.contains("digest") || j.at("digest") != hex64(fnv1a(body.dump()))) fail(where, "digest mismatch");
    }
    GroupPtr h = group_from_json(j.at("group"));
    if (j.at("group_hash") != group_hash(*h)) fail(where, "group hash mismatch");
    const auto mode = CoefficientMode::from_json(j.at("coefficients"), *h);
    const auto n = j.at("arity").get<std::size_t>();
    std::vector<Tuple> e;
    for (const auto& t : j.at("E")) e.push_back(parse_tuple(t, *h, n));
    const auto idx = j.at("E0_indices").get<std::vector<std::size_t>>();
    const auto kind = j.at("kind").get<std::string>();
    const auto oracle = j.at("oracle").get<std::string>();

    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (idx[i] >= e.size()) return fail(where, "E0 index out of range");
      if (i > 0 && idx[i] <= idx[i - 1]) return fail(where, "E0 indices are not increasing");
    }
    if (!e.empty() && (idx.empty() || idx[0] != 0)) return fail(where, "E0 must start with the first tuple of E");
    if (j.at("E0").size() != idx.size()) return fail(where, "E0 and its indices differ in length");
    std::vector<Tuple> e0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (parse_tuple(j.at("E0")[i], *h, n) != e[idx[i]]) return fail(where, "E0 does not match E at its indices");
      e0.push_back(e[idx[i]]);
    }

    // Steps: one per later member of E0, in order.
    const auto& steps = j.at("steps");
    if (steps.size() + (idx.empty() ? 0 : 1) != idx.size()) return fail(where, "steps do not cover E0");
    for (std::size_t s = 0; s < steps.size(); ++s) {
      const auto& st = steps[s];
      const auto pos = idx[s + 1];
      const std::string sw = where + ".steps[" + std::to_string(s) + "]";
      if (st.at("index").get<std::size_t>() != pos) {
        fail(sw, "step index does not match E0");
        continue;
      }
      if (parse_tuple(st.at("added"), *h, n) != e[pos]) fail(sw, "added tuple does not match E");
      if (st.at("checked") != true) fail(sw, "step not marked checked");
      std::vector<Tuple> prefix(e0.begin(), e0.begin() + static_cast<long>(s + 1));
      if (st.at("separator").is_null()) {
        if (oracle == "closure") {
          if (!redundant_by_closure(h, n, prefix, e[pos], mode)) fail(sw, "null separator on a separating step");
        } else if (oracle != "classwise" && oracle != "factorwise") {
          fail(sw, "missing separator");
        }
        continue;
      }
      auto sep = parse_separator(st.at("separator").get<std::string>(), h, n);
      check_separator_coefficients(sw, *h, mode, sep);
      for (const auto& t : prefix)
        if (!h->is_identity(sep.evaluate(t, *h))) {
          fail(sw, "separator does not vanish on the earlier members of E0");
          break;
        }
      if (h->is_identity(sep.evaluate(e[pos], *h))) fail(sw, "separator vanishes at the added tuple");
    }

    // Final equality under the named oracle.
    bool equal = false;
    if (oracle == "closure") {
      if (!h->is_finite()) return fail(where, "closure oracle on an infinite backend");
      equal = closure_equal(h, n, e0, e, mode);
    } else if (oracle == "lattice" || oracle == "congruence") {
      if (!h->linear_model({})) return fail(where, "lattice oracle on a backend without a linear model");
      equal = radical_equal(h, n, e0, e, mode);
    } else if (oracle == "factorwise") {
      if (h->kind() != "product") return fail(where, "factorwise oracle on a non-product backend");
      equal = radical_equal(h, n, e0, e, mode);
    } else if (oracle == "classwise") {
      if (h->kind() != "semidirect") return fail(where, "classwise oracle on a non-semidirect backend");
      equal = classwise_equal(h, n, e0, e, mode);
    } else {
      return fail(where, "unknown oracle '" + oracle + "'");
    }
    if (!equal) fail(where, "oracle '" + oracle + "' rejects Rad(E0) = Rad(E)");

    const auto& nested = j.at("nested");
    if (kind == "eliminated") check(nested.at("lifted"), where + ".lifted");
    if (kind == "product") {
      check(nested.at("left"), where + ".left");
      check(nested.at("right"), where + ".right");
    }
    if (kind == "finite_extension")
      for (std::size_t c = 0; c < nested.at("classes").size(); ++c)
        check(nested.at("classes")[c].at("certificate"), where + ".classes[" + std::to_string(c) + "]");
  }
};

}  // namespace

CheckResult check_certificate(const json& certificate) {
  Checker c;
  c.check(certificate, "certificate");
  return {c.problems.empty(), c.problems};
}

CheckResult check_certificate_text(std::string_view bytes) {
  json j;
  try {
    j = json::parse(bytes);
  } catch (const json::exception& ex) {
    return {false, {std::string("not valid JSON: ") + ex.what()}};
  }
  auto result = check_certificate(j);
  if (certificate_text(j) != bytes) {
    result.valid = false;
    result.problems.insert(result.problems.begin(), "text is not in canonical form");
  }
  return result;
}

}  // namespace eqgeo
