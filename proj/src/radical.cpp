#include "eqgeo/radical.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include <boost/multiprecision/cpp_int.hpp>

#include "eqgeo/backends.hpp"
#include "eqgeo/closure.hpp"
#include "eqgeo/decomposition.hpp"
#include "eqgeo/errors.hpp"
#include "eqgeo/group_io.hpp"

namespace eqgeo {

namespace {

std::size_t resolve_budget(std::size_t budget) { return budget ? budget : default_budget(); }

bool has_linear_model(const GroupBackend& h) { return h.linear_model({}).has_value(); }

std::vector<Tuple> pick(const std::vector<Tuple>& e, const std::vector<std::size_t>& idx) {
  std::vector<Tuple> out;
  for (auto i : idx) out.push_back(e[i]);
  return out;
}

// Per-tuple, per-variable integer coordinates under one shared model.
struct LinearData {
  std::vector<std::vector<IntVec>> coords;
  std::vector<BigInt> moduli;
};

LinearData linear_data(const GroupBackend& h, std::size_t n, const std::vector<Tuple>& e) {
  std::vector<Element> flat;
  for (const auto& t : e) flat.insert(flat.end(), t.begin(), t.end());
  auto model = h.linear_model(flat);
  if (!model) throw Undecided(h.kind() + " backend has no linear model");
  LinearData d;
  d.moduli = model->moduli;
  for (std::size_t j = 0; j < e.size(); ++j)
    d.coords.emplace_back(model->coords.begin() + static_cast<long>(j * n),
                          model->coords.begin() + static_cast<long>((j + 1) * n));
  return d;
}

std::vector<IntVec> difference(const std::vector<IntVec>& a, const std::vector<IntVec>& b) {
  auto out = a;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t k = 0; k < out[i].size(); ++k) out[i][k] -= b[i][k];
  return out;
}

// Kernel lattice of a tuple list in All or None mode.
KernelLattice lattice_of(const LinearData& d, std::size_t n, const std::vector<std::size_t>& idx, bool diophantine) {
  KernelLattice lat(n);
  if (idx.empty()) return lat;
  for (std::size_t pos = 0; pos < idx.size(); ++pos) {
    if (diophantine && pos == 0) continue;
    const auto& row = diophantine ? difference(d.coords[idx[pos]], d.coords[idx[0]]) : d.coords[idx[pos]];
    constrain_by_model(lat, row, d.moduli);
  }
  return lat;
}

std::string linear_oracle(const LinearData& d) {
  return std::any_of(d.moduli.begin(), d.moduli.end(), [](const BigInt& m) { return m != 0; }) ? "congruence"
                                                                                                : "lattice";
}

std::vector<Tuple> lift_tuples(const std::vector<Tuple>& e, const std::vector<Element>& coeffs) {
  std::vector<Tuple> out;
  for (auto t : e) {
    t.insert(t.end(), coeffs.begin(), coeffs.end());
    out.push_back(std::move(t));
  }
  return out;
}

CoefficientMode factor_mode(const CoefficientMode& mode, const ProductGroup& p, bool left) {
  if (mode.kind != CoefficientMode::Kind::List) return mode;
  std::vector<Element> gens;
  for (const auto& g : mode.list) {
    auto [a, b] = p.unpack(g);
    gens.push_back(left ? a : b);
  }
  return CoefficientMode::generated(std::move(gens));
}

std::vector<Tuple> project(const ProductGroup& p, const std::vector<Tuple>& e, bool left) {
  std::vector<Tuple> out;
  for (const auto& t : e) {
    Tuple r;
    for (const auto& x : t) {
      auto [a, b] = p.unpack(x);
      r.push_back(left ? a : b);
    }
    out.push_back(std::move(r));
  }
  return out;
}

WitnessCertificate base_certificate(std::string kind, const GroupPtr& h, std::size_t n, const std::vector<Tuple>& e,
                                    const CoefficientMode& mode) {
  WitnessCertificate c;
  c.kind = std::move(kind);
  c.group = h;
  c.mode = mode;
  c.arity = n;
  c.e = e;
  return c;
}

WitnessCertificate witness_finite(const GroupPtr& h, std::size_t n, const std::vector<Tuple>& e,
                                  const CoefficientMode& mode, std::size_t budget) {
  auto cert = base_certificate("greedy", h, n, e, mode);
  cert.oracle = "closure";
  if (e.empty()) return cert;
  const auto& table = h->cayley();
  auto gens = coordinate_generators(table, e, n, mode.generators(*h));
  CoordinateChain chain(table, e.size(), gens);
  auto sizes = chain.level_sizes();
  cert.e0_indices.push_back(0);
  for (std::size_t j = 1; j < e.size(); ++j)
    if (sizes[j] > 1) cert.e0_indices.push_back(j);
  cert.steps = closure_steps(h, n, e, cert.e0_indices, mode, budget);
  cert.nested = {{"order", to_string(chain.order())}};
  return cert;
}

WitnessCertificate witness_linear(const GroupPtr& h, std::size_t n, const std::vector<Tuple>& e,
                                  const CoefficientMode& mode) {
  auto cert = base_certificate("abelian", h, n, e, mode);
  if (e.empty()) {
    cert.oracle = "lattice";
    return cert;
  }
  const bool diophantine = mode.kind == CoefficientMode::Kind::All;
  auto d = linear_data(*h, n, e);
  cert.oracle = linear_oracle(d);
  KernelLattice lat(n);
  cert.e0_indices.push_back(0);
  if (!diophantine) constrain_by_model(lat, d.coords[0], d.moduli);
  for (std::size_t j = 1; j < e.size(); ++j) {
    auto row = diophantine ? difference(d.coords[j], d.coords[0]) : d.coords[j];
    auto beta = model_violator(lat, row, d.moduli);
    if (!beta) continue;
    LinearizedWord w{*beta, h->identity()};
    if (diophantine) w.c = h->inv(evaluate_linear(w, e[0], *h));
    bool ok = !h->is_identity(evaluate_linear(w, e[j], *h));
    for (auto i : cert.e0_indices) ok = ok && h->is_identity(evaluate_linear(w, e[i], *h));
    if (!ok) throw Error("internal: lattice separator failed re-evaluation");
    cert.steps.push_back({j, print_linear(w, *h), true});
    cert.e0_indices.push_back(j);
    constrain_by_model(lat, row, d.moduli);
  }
  cert.nested = {{"lattice", lat.to_json()}};
  return cert;
}

WitnessCertificate witness_eliminated(const GroupPtr& h, std::size_t n, const std::vector<Tuple>& e,
                                      const CoefficientMode& mode, std::size_t budget) {
  auto inner =
      witness_tuples(h, n + mode.list.size(), lift_tuples(e, mode.list), CoefficientMode::none(), budget);
  auto cert = base_certificate("eliminated", h, n, e, mode);
  cert.e0_indices = inner.e0_indices;
  cert.oracle = inner.oracle;
  // Map each lifted separator back: y_i -> a_i.
  for (const auto& s : inner.steps) {
    WitnessStep step{s.index, std::nullopt, s.checked};
    if (s.separator) {
      auto lifted = parse_separator(*s.separator, h, n + mode.list.size());
      Separator lowered;
      if (lifted.linear) {
        LinearizedWord lw{IntVec(lifted.linear->alpha.begin(), lifted.linear->alpha.begin() + static_cast<long>(n)),
                          lifted.linear->c};
        for (std::size_t i = 0; i < mode.list.size(); ++i)
          lw.c = h->op(lw.c, h->power(mode.list[i], lifted.linear->alpha[n + i]));
        lowered.linear = lw;
      } else {
        Elimination el{h, n, mode.list, {}};
        lowered.word = el.lower(*lifted.word);
      }
      step.separator = lowered.text(*h);
    }
    cert.steps.push_back(std::move(step));
  }
  cert.nested = {{"lifted", inner.to_json()}};
  return cert;
}

WitnessCertificate witness_product_impl(const GroupPtr& h, std::size_t n, const std::vector<Tuple>& e,
                                        const CoefficientMode& mode, std::size_t budget) {
  auto p = std::dynamic_pointer_cast<const ProductGroup>(h);
  if (!p) throw ValidationError("witness_product needs a product backend");
  auto left = witness_tuples(p->left(), n, project(*p, e, true), factor_mode(mode, *p, true), budget);
  auto right = witness_tuples(p->right(), n, project(*p, e, false), factor_mode(mode, *p, false), budget);
  auto cert = base_certificate("product", h, n, e, mode);
  std::set<std::size_t> idx(left.e0_indices.begin(), left.e0_indices.end());
  idx.insert(right.e0_indices.begin(), right.e0_indices.end());
  cert.e0_indices.assign(idx.begin(), idx.end());
  if (h->is_finite() && h->order() <= kMaxTabulatedOrder) {
    cert.oracle = "closure";
    cert.steps = closure_steps(h, n, e, cert.e0_indices, mode, budget);
  } else {
    cert.oracle = "factorwise";
    // Separators where the product itself has exact linear algebra; the
    // factor certificates carry the proof either way.
    std::vector<Tuple> prefix;
    for (std::size_t pos = 0; pos < cert.e0_indices.size(); ++pos) {
      const auto& t = e[cert.e0_indices[pos]];
      if (pos > 0) {
        WitnessStep step{cert.e0_indices[pos], std::nullopt, true};
        if (has_linear_model(*h))
          if (auto sep = separation(TupleSet(h, n, prefix), t, mode, budget)) step.separator = sep->text(*h);
        cert.steps.push_back(std::move(step));
      }
      if (std::find(prefix.begin(), prefix.end(), t) == prefix.end()) prefix.push_back(t);
    }
  }
  cert.nested = {{"left", left.to_json()}, {"right", right.to_json()}};
  return cert;
}

}  // namespace

std::vector<WitnessStep> closure_steps(const GroupPtr& h, std::size_t n, const std::vector<Tuple>& e,
                                       const std::vector<std::size_t>& e0, const CoefficientMode& mode,
                                       std::size_t budget) {
  const auto& table = h->cayley();
  const auto coef = mode.generators(*h);
  std::vector<WitnessStep> steps;
  std::vector<Tuple> prefix;
  for (std::size_t pos = 0; pos < e0.size(); ++pos) {
    if (pos == 0) {
      prefix.push_back(e[e0[0]]);
      continue;
    }
    auto tuples = prefix;
    tuples.push_back(e[e0[pos]]);
    auto gens = coordinate_generators(table, tuples, n, coef);
    CoordinateChain chain(table, tuples.size(), gens);
    WitnessStep step{e0[pos], std::nullopt, false};
    if (chain.level_sizes().back() > 1) {
      Word w = WordSearch(h, n, coef, tuples).separator(budget);
      bool ok = !h->is_identity(evaluate(w, e[e0[pos]]));
      for (const auto& t : prefix) ok = ok && h->is_identity(evaluate(w, t));
      if (!ok) throw Error("internal: separator failed re-evaluation");
      step.separator = print_word(w);
    }
    step.checked = true;
    steps.push_back(std::move(step));
    prefix.push_back(e[e0[pos]]);
  }
  return steps;
}

// ---------------------------------------------------------------- modes & sets

std::vector<Element> CoefficientMode::generators(const GroupBackend& h) const {
  switch (kind) {
    case Kind::All:
      return h.generators();
    case Kind::None:
      return {};
    case Kind::List:
      return list;
  }
  return {};
}

json CoefficientMode::to_json(const GroupBackend& h) const {
  switch (kind) {
    case Kind::All:
      return "all";
    case Kind::None:
      return "none";
    case Kind::List: {
      json j = json::array();
      for (const auto& g : list) j.push_back(h.serialize(g));
      return j;
    }
  }
  return nullptr;
}

CoefficientMode CoefficientMode::from_json(const json& j, const GroupBackend& h) {
  if (j.is_null() || j == "all") return all();
  if (j == "none") return none();
  if (j.is_array()) {
    std::vector<Element> gens;
    for (const auto& g : j) gens.push_back(h.parse_element(g.get<std::string>()));
    return generated(std::move(gens));
  }
  throw ValidationError("coefficients must be \"all\", \"none\" or a list of elements");
}

TupleSet::TupleSet(GroupPtr h, std::size_t arity, std::vector<Tuple> tuples)
    : h_(std::move(h)), arity_(arity), tuples_(std::move(tuples)) {
  std::unordered_set<Tuple, TupleHash> seen;
  for (const auto& t : tuples_) {
    if (t.size() != arity_) throw ArityError("tuple length differs from the declared arity");
    for (const auto& x : t) h_->validate(x);
    if (!seen.insert(t).second) throw ValidationError("tuple set contains a duplicate tuple");
  }
}

TupleSet TupleSet::from_json(const json& j, const std::filesystem::path& base_dir, CoefficientMode* mode_out) {
  try {
    if (!j.contains("group")) throw ValidationError("tuple set lacks 'group'");
    const auto& gref = j.at("group");
    GroupPtr h = gref.is_string() ? load_group(base_dir / gref.get<std::string>()) : group_from_json(gref, base_dir);
    auto arity = j.at("arity").get<std::size_t>();
    std::vector<Tuple> tuples;
    for (const auto& t : j.at("tuples")) tuples.push_back(parse_tuple(t, *h, arity));
    if (mode_out) *mode_out = CoefficientMode::from_json(j.value("coefficients", json()), *h);
    return TupleSet(h, arity, std::move(tuples));
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed tuple set: ") + e.what());
  }
}

json TupleSet::to_json() const {
  json tuples = json::array();
  for (const auto& t : tuples_) tuples.push_back(tuple_to_json(t, *h_));
  return {{"group", h_->to_json()}, {"arity", arity_}, {"tuples", tuples}};
}

bool TupleSet::contains(const Tuple& t) const { return std::find(tuples_.begin(), tuples_.end(), t) != tuples_.end(); }

bool radical_contains(const RadicalHandle& r, const Word& w) {
  if (w.arity() != r.base.arity()) throw ArityError("word arity differs from the radical's arity");
  const auto& h = *r.base.group();
  return std::all_of(r.base.tuples().begin(), r.base.tuples().end(),
                     [&](const Tuple& e) { return h.is_identity(evaluate(w, e, h)); });
}

bool radical_contains(const RadicalHandle& r, const LinearizedWord& w) {
  if (w.alpha.size() != r.base.arity()) throw ArityError("word arity differs from the radical's arity");
  const auto& h = *r.base.group();
  return std::all_of(r.base.tuples().begin(), r.base.tuples().end(),
                     [&](const Tuple& e) { return h.is_identity(evaluate_linear(w, e, h)); });
}

std::string Separator::text(const GroupBackend& h) const {
  if (linear) return print_linear(*linear, h);
  return print_word(*word);
}

Element Separator::evaluate(std::span<const Element> v, const GroupBackend& h) const {
  if (linear) return evaluate_linear(*linear, v, h);
  return eqgeo::evaluate(*word, v, h);
}

Separator parse_separator(std::string_view text, const GroupPtr& h, std::size_t arity) {
  Separator s;
  if (has_linear_model(*h))
    s.linear = parse_linear(text, *h, arity);
  else
    s.word = parse_word(text, h, arity);
  return s;
}

std::optional<Separator> separation(const TupleSet& e0, const Tuple& e, const CoefficientMode& mode,
                                    std::size_t budget) {
  const auto& h = e0.group();
  const auto n = e0.arity();
  if (e.size() != n) throw ArityError("query tuple has the wrong arity");
  if (e0.contains(e)) return std::nullopt;
  if (e0.size() == 0) {
    // Every word vanishes on the empty set.
    Separator s;
    for (std::uint32_t i = 0; i < n; ++i) {
      if (h->is_identity(e[i])) continue;
      s.word = Word::variable(h, n, i + 1);
      if (has_linear_model(*h)) s.linear = linearize(*s.word), s.word.reset();
      return s;
    }
    for (const auto& g : mode.generators(*h)) {
      if (h->is_identity(g)) continue;
      s.word = Word::coefficient(h, n, g);
      if (has_linear_model(*h)) s.linear = linearize(*s.word), s.word.reset();
      return s;
    }
    return std::nullopt;
  }
  auto tuples = e0.tuples();
  tuples.push_back(e);
  if (has_linear_model(*h)) {
    auto cert = witness_tuples(h, n, tuples, mode, budget);
    if (cert.steps.empty() || cert.e0_indices.back() != tuples.size() - 1) return std::nullopt;
    return parse_separator(*cert.steps.back().separator, h, n);
  }
  if (h->is_finite()) {
    const auto& table = h->cayley();
    auto coef = mode.generators(*h);
    CoordinateChain chain(table, tuples.size(), coordinate_generators(table, tuples, n, coef));
    if (chain.level_sizes().back() == 1) return std::nullopt;
    Separator s;
    s.word = WordSearch(h, n, coef, tuples).separator(resolve_budget(budget));
    return s;
  }
  throw Undecided("no exact separation method for " + h->kind() + " backends");
}

// ---------------------------------------------------------------- witness

std::vector<Tuple> WitnessCertificate::e0() const { return pick(e, e0_indices); }

json WitnessCertificate::to_json() const {
  json tuples = json::array(), e0j = json::array(), stepsj = json::array();
  for (const auto& t : e) tuples.push_back(tuple_to_json(t, *group));
  for (auto i : e0_indices) e0j.push_back(tuple_to_json(e[i], *group));
  for (const auto& s : steps) {
    stepsj.push_back({{"added", tuple_to_json(e[s.index], *group)},
                      {"index", s.index},
                      {"separator", s.separator ? json(*s.separator) : json(nullptr)},
                      {"checked", s.checked}});
  }
  json j = {{"format", "eqgeo-witness/1"},
            {"kind", kind},
            {"group", group->to_json()},
            {"group_hash", group_hash(*group)},
            {"coefficients", mode.to_json(*group)},
            {"arity", arity},
            {"E", tuples},
            {"E0", e0j},
            {"E0_indices", e0_indices},
            {"steps", stepsj},
            {"oracle", oracle},
            {"nested", nested}};
  j["digest"] = hex64(fnv1a(j.dump()));
  return j;
}

WitnessCertificate witness_tuples(const GroupPtr& h, std::size_t n, const std::vector<Tuple>& e,
                                  const CoefficientMode& mode, std::size_t budget) {
  budget = resolve_budget(budget);
  if (mode.kind == CoefficientMode::Kind::List && has_linear_model(*h))
    return witness_eliminated(h, n, e, mode, budget);
  if (has_linear_model(*h)) return witness_linear(h, n, e, mode);
  if (h->is_finite()) return witness_finite(h, n, e, mode, budget);
  if (h->kind() == "product") return witness_product_impl(h, n, e, mode, budget);
  if (h->kind() == "semidirect") return witness_finite_extension_tuples(h, n, e, mode, budget);
  throw Undecided("no exact witness method for " + h->kind() + " backends");
}

WitnessCertificate witness(const TupleSet& e, const CoefficientMode& mode, std::size_t budget) {
  return witness_tuples(e.group(), e.arity(), e.tuples(), mode, budget);
}

WitnessCertificate witness_abelian(const TupleSet& e, const CoefficientMode& mode) {
  if (!has_linear_model(*e.group())) throw ValidationError("witness_abelian needs an abelian backend with a linear model");
  if (mode.kind == CoefficientMode::Kind::List) return witness_eliminated(e.group(), e.arity(), e.tuples(), mode, 0);
  return witness_linear(e.group(), e.arity(), e.tuples(), mode);
}

WitnessCertificate witness_product(const TupleSet& e, const CoefficientMode& mode, std::size_t budget) {
  return witness_product_impl(e.group(), e.arity(), e.tuples(), mode, resolve_budget(budget));
}

bool radical_equal(const GroupPtr& h, std::size_t n, const std::vector<Tuple>& e0, const std::vector<Tuple>& e,
                   const CoefficientMode& mode) {
  if (e.empty() || e0.empty()) return e.empty() && e0.empty();
  if (mode.kind == CoefficientMode::Kind::List && has_linear_model(*h))
    return radical_equal(h, n + mode.list.size(), lift_tuples(e0, mode.list), lift_tuples(e, mode.list),
                         CoefficientMode::none());
  // Rad(E0 u E) lies in both; equal invariants with it force equality.
  std::vector<Tuple> all = e0;
  all.insert(all.end(), e.begin(), e.end());
  if (has_linear_model(*h)) {
    auto d = linear_data(*h, n, all);
    std::vector<std::size_t> i0, i1, i2;
    for (std::size_t i = 0; i < all.size(); ++i) (i < e0.size() ? i0 : i1).push_back(i);
    for (std::size_t i = 0; i < all.size(); ++i) i2.push_back(i);
    const bool dio = mode.kind == CoefficientMode::Kind::All;
    auto l2 = lattice_of(d, n, i2, dio);
    return lattice_of(d, n, i0, dio) == l2 && lattice_of(d, n, i1, dio) == l2;
  }
  if (h->is_finite()) {
    const auto& table = h->cayley();
    auto coef = mode.generators(*h);
    auto order = [&](const std::vector<Tuple>& t) {
      return CoordinateChain(table, t.size(), coordinate_generators(table, t, n, coef)).order();
    };
    auto o2 = order(all);
    return order(e0) == o2 && order(e) == o2;
  }
  if (auto p = std::dynamic_pointer_cast<const ProductGroup>(h)) {
    return radical_equal(p->left(), n, project(*p, e0, true), project(*p, e, true), factor_mode(mode, *p, true)) &&
           radical_equal(p->right(), n, project(*p, e0, false), project(*p, e, false), factor_mode(mode, *p, false));
  }
  if (h->kind() == "semidirect") {
    if (classwise_equal(h, n, e0, e, mode)) return true;
    throw Undecided("classwise comparison cannot refute radical equality over an infinite extension");
  }
  throw Undecided("no exact radical comparison for " + h->kind() + " backends");
}

// ---------------------------------------------------------------- elimination

Word Elimination::lift(const Word& w) const {
  const std::size_t k = coefficients.size();
  const std::size_t total = arity + k;
  // Expression of each coefficient as a word in y_1..y_k.
  std::function<Word(const Element&)> express;
  // Signed generator indices: +(i+1) for y_i, -(i+1) for y_i^-1.
  std::unordered_map<Element, std::vector<int>, ElementHash> paths;
  if (group->is_finite() && !has_linear_model(*group)) {
    // Breadth-first over words in the generators and their inverses, so each
    // coefficient gets a shortest expression (a_i itself becomes y_i).
    paths.emplace(group->identity(), std::vector<int>{});
    std::vector<Element> frontier{group->identity()};
    while (!frontier.empty()) {
      std::vector<Element> next;
      for (const auto& x : frontier) {
        for (std::size_t i = 0; i < k; ++i)
          for (int sign : {1, -1}) {
            Element y = group->op(x, sign > 0 ? coefficients[i] : group->inv(coefficients[i]));
            if (paths.count(y)) continue;
            auto p = paths.at(x);
            p.push_back(sign * static_cast<int>(i + 1));
            paths.emplace(y, std::move(p));
            next.push_back(y);
          }
      }
      frontier = std::move(next);
    }
    express = [&](const Element& c) {
      auto it = paths.find(c);
      if (it == paths.end())
        throw ValidationError("coefficient " + group->serialize(c) + " is not generated by the coefficient list");
      std::vector<Letter> raw;
      for (int i : it->second)
        raw.push_back(Letter::variable(static_cast<std::uint32_t>(arity + static_cast<std::size_t>(std::abs(i))),
                                       i > 0 ? 1 : -1));
      return Word::normalize(group, total, raw);
    };
  } else {
    express = [&](const Element& c) {
      std::vector<Element> flat = coefficients;
      flat.push_back(c);
      auto model = group->linear_model(flat);
      if (!model) throw Undecided("cannot express coefficients in this backend");
      IntMat a;
      IntVec b;
      for (std::size_t d = 0; d < model->moduli.size(); ++d) {
        IntVec row;
        for (std::size_t i = 0; i < k; ++i) row.push_back(model->coords[i][d]);
        a.push_back(std::move(row));
        b.push_back(model->coords[k][d]);
      }
      auto sol = solve_affine(a, b, model->moduli, k);
      if (!sol.solvable)
        throw ValidationError("coefficient " + group->serialize(c) + " is not generated by the coefficient list");
      LinearizedWord lw{IntVec(arity, 0), group->identity()};
      lw.alpha.insert(lw.alpha.end(), sol.particular.begin(), sol.particular.end());
      return expand_linear(lw, group);
    };
  }
  return map_word(
      w, group, total, [&](std::uint32_t i) { return Word::variable(group, total, i); }, express);
}

Word Elimination::lower(const Word& w) const {
  return map_word(
      w, group, arity,
      [&](std::uint32_t i) {
        return i <= arity ? Word::variable(group, arity, i) : Word::coefficient(group, arity, coefficients[i - arity - 1]);
      },
      [&](const Element& c) { return Word::coefficient(group, arity, c); });
}

Elimination eliminate_coefficients(const TupleSet& e, std::vector<Element> coefficients) {
  for (const auto& c : coefficients) e.group()->validate(c);
  Elimination el{e.group(), e.arity(), std::move(coefficients), {}};
  el.lifted = lift_tuples(e.tuples(), el.coefficients);
  return el;
}

// ---------------------------------------------------------------- algebraic sets

namespace {

using boost::multiprecision::cpp_rational;

std::vector<Tuple> combinations(const AlgebraicSet& s, std::size_t count) {
  const auto& h = *s.group;
  std::vector<Tuple> out;
  std::unordered_set<Tuple, TupleHash> seen;
  auto emit = [&](const std::vector<std::int64_t>& t) {
    Tuple p = s.particular;
    for (std::size_t d = 0; d < t.size(); ++d)
      if (t[d] != 0)
        for (std::size_t i = 0; i < p.size(); ++i) p[i] = h.op(p[i], h.power(s.directions[d][i], t[d]));
    if (seen.insert(p).second) out.push_back(std::move(p));
  };
  const std::size_t dim = s.directions.size();
  if (dim == 0) {
    emit({});
    return out;
  }
  // Shells of growing max-norm; within a shell coefficients run 0, 1, -1, 2, -2, ...
  for (std::int64_t r = 0; out.size() < count && r <= 64; ++r) {
    std::vector<std::int64_t> order{0};
    for (std::int64_t v = 1; v <= r; ++v) {
      order.push_back(v);
      order.push_back(-v);
    }
    std::vector<std::size_t> idx(dim, 0);
    while (true) {
      std::vector<std::int64_t> t(dim);
      std::int64_t norm = 0;
      for (std::size_t d = 0; d < dim; ++d) {
        t[d] = order[idx[d]];
        norm = std::max(norm, t[d] < 0 ? -t[d] : t[d]);
      }
      if (norm == r) emit(t);
      if (out.size() >= count) break;
      std::size_t d = dim;
      while (d-- > 0) {
        if (++idx[d] < order.size()) break;
        idx[d] = 0;
      }
      if (d == static_cast<std::size_t>(-1)) break;
    }
  }
  return out;
}

AlgebraicSet solve_field(const std::vector<LinearizedWord>& eqs, const GroupPtr& h, std::size_t n) {
  // Rows [alpha | -c] over Q, reduced row echelon form.
  std::vector<std::vector<cpp_rational>> m;
  for (const auto& w : eqs) {
    std::vector<cpp_rational> row;
    for (const auto& a : w.alpha) row.emplace_back(a);
    row.push_back(-cpp_rational(BigInt(w.c.data[0]), BigInt(w.c.data[1])));
    m.push_back(std::move(row));
  }
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    cpp_rational piv = m[r][c];
    for (auto& x : m[r]) x /= piv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      cpp_rational f = m[i][c];
      for (std::size_t k = 0; k <= n; ++k) m[i][k] -= f * m[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  AlgebraicSet s;
  s.group = h;
  s.arity = n;
  for (std::size_t i = r; i < m.size(); ++i)
    if (m[i][n] != 0) {
      s.empty = true;
      s.finite = true;
      return s;
    }
  auto elem = [](const cpp_rational& q) {
    return FieldAdditiveGroup::make(boost::multiprecision::numerator(q), boost::multiprecision::denominator(q));
  };
  std::vector<cpp_rational> part(n, 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) part[pivots[i]] = m[i][n];
  for (const auto& q : part) s.particular.push_back(elem(q));
  for (std::size_t f = 0; f < n; ++f) {
    if (std::find(pivots.begin(), pivots.end(), f) != pivots.end()) continue;
    std::vector<cpp_rational> dir(n, 0);
    dir[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) dir[pivots[i]] = -m[i][f];
    // Scale to integers so integer combinations stay on a lattice.
    BigInt l = 1;
    for (const auto& q : dir) l = lcm(l, boost::multiprecision::denominator(q));
    Tuple t;
    for (const auto& q : dir) t.push_back(elem(q * l));
    s.directions.push_back(std::move(t));
  }
  s.finite = s.directions.empty();
  if (s.finite) s.points = {s.particular};
  return s;
}

AlgebraicSet solve_fgabelian(const std::vector<LinearizedWord>& eqs, const GroupPtr& h, std::size_t n,
                             std::size_t budget) {
  const auto& ab = static_cast<const FgAbelianGroup&>(*h);
  AlgebraicSet s;
  s.group = h;
  s.arity = n;
  s.particular.assign(n, h->identity());
  std::vector<std::vector<std::int64_t>> part(n, std::vector<std::int64_t>(ab.width(), 0));
  bool infinite = false;
  for (std::size_t k = 0; k < ab.width(); ++k) {
    IntMat a;
    IntVec b, moduli;
    for (const auto& w : eqs) {
      a.push_back(w.alpha);
      b.push_back(-BigInt(w.c.data[k]));
      moduli.emplace_back(ab.modulus(k));
    }
    auto sol = solve_affine(a, b, moduli, n);
    if (!sol.solvable) {
      s.empty = true;
      s.finite = true;
      s.particular.clear();
      return s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      auto m = ab.modulus(k);
      part[i][k] = m == 0 ? to_int64(sol.particular[i]) : static_cast<std::int64_t>(floor_mod(sol.particular[i], m));
    }
    for (const auto& vec : sol.lattice) {
      Tuple dir;
      bool nonzero = false;
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<BigInt> c(ab.width(), 0);
        c[k] = vec[i];
        dir.push_back(ab.reduce(c));
        nonzero = nonzero || !h->is_identity(dir.back());
      }
      if (!nonzero) continue;
      if (ab.modulus(k) == 0) infinite = true;
      s.directions.push_back(std::move(dir));
    }
  }
  for (std::size_t i = 0; i < n; ++i) s.particular[i] = Element(part[i]);
  s.finite = !infinite;
  if (s.finite) {
    // Close the finite set under the (torsion) directions.
    std::unordered_set<Tuple, TupleHash> seen{s.particular};
    s.points = {s.particular};
    for (std::size_t cur = 0; cur < s.points.size(); ++cur) {
      for (const auto& d : s.directions) {
        Tuple p = s.points[cur];
        for (std::size_t i = 0; i < n; ++i) p[i] = h->op(p[i], d[i]);
        if (seen.insert(p).second) {
          s.points.push_back(std::move(p));
          if (s.points.size() > budget) throw BudgetExceeded("algebraic set larger than the budget");
        }
      }
    }
  }
  return s;
}

}  // namespace

std::vector<Tuple> AlgebraicSet::enumerate(std::size_t count) const {
  if (empty) return {};
  if (finite) return std::vector<Tuple>(points.begin(), points.begin() + static_cast<long>(std::min(count, points.size())));
  return combinations(*this, count);
}

json AlgebraicSet::to_json() const {
  json j = {{"arity", arity}, {"empty", empty}, {"finite", finite}};
  if (finite) {
    json pts = json::array();
    for (const auto& p : points) pts.push_back(tuple_to_json(p, *group));
    j["points"] = pts;
  } else {
    json dirs = json::array();
    for (const auto& d : directions) dirs.push_back(tuple_to_json(d, *group));
    j["particular"] = tuple_to_json(particular, *group);
    j["directions"] = dirs;
  }
  return j;
}

AlgebraicSet algebraic_set(const std::vector<Word>& system, const GroupPtr& h, std::size_t n, std::size_t budget) {
  budget = resolve_budget(budget);
  for (const auto& w : system)
    if (w.arity() != n) throw ArityError("equation arity differs from the requested arity");
  if (h->kind() != "fgabelian" && h->kind() != "field_q") {
    if (!h->is_finite()) throw Undecided("algebraic sets over " + h->kind() + " backends are not supported");
    auto elems = h->elements();
    BigInt total = boost::multiprecision::pow(BigInt(elems.size()), static_cast<unsigned>(n));
    if (total > budget) throw BudgetExceeded("H^n has more points than the budget allows");
    AlgebraicSet s;
    s.group = h;
    s.arity = n;
    std::vector<std::size_t> idx(n, 0);
    for (std::size_t c = 0; c < static_cast<std::size_t>(total); ++c) {
      Tuple v;
      for (auto i : idx) v.push_back(elems[i]);
      if (std::all_of(system.begin(), system.end(),
                      [&](const Word& w) { return h->is_identity(evaluate(w, v, *h)); }))
        s.points.push_back(std::move(v));
      for (std::size_t d = n; d-- > 0;) {
        if (++idx[d] < elems.size()) break;
        idx[d] = 0;
      }
    }
    s.empty = s.points.empty();
    return s;
  }
  std::vector<LinearizedWord> eqs;
  for (const auto& w : system) eqs.push_back(linearize(w));
  if (h->kind() == "fgabelian") return solve_fgabelian(eqs, h, n, budget);
  return solve_field(eqs, h, n);
}

RadicalHandle radical_of_system(const std::vector<Word>& system, const GroupPtr& h, std::size_t n,
                                std::size_t budget) {
  auto v = algebraic_set(system, h, n, budget);
  std::vector<Tuple> base;
  if (!v.empty) {
    if (v.finite) {
      base = v.points;
    } else {
      // Vanishing of a word on an abelian affine set is an affine condition,
      // so the particular point and its unit translates pin Rad down.
      base.push_back(v.particular);
      for (const auto& d : v.directions) {
        Tuple p = v.particular;
        for (std::size_t i = 0; i < n; ++i) p[i] = h->op(p[i], d[i]);
        if (std::find(base.begin(), base.end(), p) == base.end()) base.push_back(std::move(p));
      }
    }
  }
  RadicalHandle r{TupleSet(h, n, std::move(base))};
  for (const auto& w : system)
    if (!radical_contains(r, w)) throw Error("internal: equation missing from its own radical");
  return r;
}

CoordinateGroup coordinate_group(const TupleSet& e, const CoefficientMode& mode) {
  const auto& h = *e.group();
  if (!h.is_finite()) throw Undecided("coordinate groups are computed for finite backends only");
  if (e.size() == 0) return {1, {}};
  const auto& table = h.cayley();
  auto gens = coordinate_generators(table, e.tuples(), e.arity(), mode.generators(h));
  CoordinateChain chain(table, e.size(), gens);
  CoordinateGroup out{chain.order(), {}};
  for (const auto& p : gens) {
    Tuple t;
    for (auto x : p) t.push_back(table.elements[x]);
    out.generator_images.push_back(std::move(t));
  }
  return out;
}

}  // namespace eqgeo
