#include "eqgeo/decomposition.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "eqgeo/closure.hpp"
#include "eqgeo/dsl.hpp"
#include "eqgeo/errors.hpp"

namespace eqgeo {

namespace {

const SemidirectGroup& as_semidirect(const GroupBackend& g) {
  auto p = dynamic_cast<const SemidirectGroup*>(&g);
  if (!p) throw ValidationError("backend is not a semidirect product");
  return *p;
}

std::shared_ptr<const SemidirectGroup> as_semidirect_ptr(const GroupPtr& g) {
  auto p = std::dynamic_pointer_cast<const SemidirectGroup>(g);
  if (!p) throw ValidationError("backend is not a semidirect product");
  return p;
}

// One lambda class: the common T-tuple and the member indices into E.
struct LambdaClass {
  Tuple s;
  std::vector<std::size_t> members;
};

std::vector<LambdaClass> lambda_classes(const SemidirectGroup& a, const std::vector<Tuple>& e) {
  std::vector<LambdaClass> classes;
  std::map<Tuple, std::size_t> where;
  for (std::size_t j = 0; j < e.size(); ++j) {
    auto s = lambda_split(a, e[j]).s;
    auto [it, fresh] = where.emplace(s, classes.size());
    if (fresh) classes.push_back({s, {}});
    classes[it->second].members.push_back(j);
  }
  return classes;
}

std::vector<Tuple> primed_members(const SemidirectGroup& a, const std::vector<Tuple>& e,
                                  const std::vector<std::size_t>& members) {
  std::vector<Tuple> out;
  for (auto j : members) out.push_back(prime_tuple(a, lambda_split(a, e[j]).h));
  return out;
}

CoefficientMode normal_mode(const CoefficientMode& mode) {
  return mode.kind == CoefficientMode::Kind::None ? CoefficientMode::none() : CoefficientMode::all();
}

}  // namespace

LambdaSplit lambda_split(const SemidirectGroup& a, const Tuple& v) {
  LambdaSplit out;
  for (const auto& x : v) {
    auto [t, h] = a.split(x);
    out.s.push_back(std::move(t));
    out.h.push_back(std::move(h));
  }
  return out;
}

Tuple prime_tuple(const SemidirectGroup& a, const Tuple& h) {
  const auto k = a.top().order();
  Tuple out;
  out.reserve(h.size() * k);
  for (const auto& x : h)
    for (std::size_t j = 0; j < k; ++j) out.push_back(a.act(j, x));
  return out;
}

json SplitWordPair::to_json(const SemidirectGroup& a) const {
  return {{"wbar", print_word(wbar)},
          {"wprime", print_word(wprime, {VarStyle::Y, a.top().order()})},
          {"lambda", tuple_to_json(lambda, a.top())}};
}

Word bar_word(const Word& w) {
  const auto& a = as_semidirect(w.group());
  const auto top = a.top_ptr();
  const auto n = w.arity();
  return map_word(
      w, top, n, [&](std::uint32_t i) { return Word::variable(top, n, i); },
      [&](const Element& g) { return Word::coefficient(top, n, a.split(g).first); });
}

SplitWordPair decompose_word(const Word& w, const Tuple& s) {
  const auto& a = as_semidirect(w.group());
  const auto n = w.arity();
  if (s.size() != n) throw ArityError("lambda tuple has the wrong arity");
  for (const auto& t : s) a.top().validate(t);
  const auto k = a.top().order();
  const auto& top = a.top();
  const auto& normal = a.normal();

  // Rewrite into alternating T- and H-pieces, then sweep right to left
  // carrying the product tau of the T-pieces already passed.
  struct Piece {
    bool is_t;
    Element t;        // T-piece
    std::uint32_t y;  // H-piece variable index, 0 for a coefficient
    int exp;
    Element h;  // H-piece coefficient
  };
  std::vector<Piece> pieces;
  for (const auto& l : w.letters()) {
    if (l.is_variable()) {
      const auto& si = s[l.var - 1];
      if (l.exp > 0) {
        pieces.push_back({true, si, 0, 0, {}});
        pieces.push_back({false, {}, l.var, 1, {}});
      } else {
        pieces.push_back({false, {}, l.var, -1, {}});
        pieces.push_back({true, top.inv(si), 0, 0, {}});
      }
    } else {
      auto [r, b] = a.split(l.coef);
      pieces.push_back({true, r, 0, 0, {}});
      pieces.push_back({false, {}, 0, 1, b});
    }
  }
  auto hgroup = a.normal_ptr();
  const std::size_t arity = n * k;
  std::vector<Letter> out;
  Element tau = top.identity();
  for (auto it = pieces.rbegin(); it != pieces.rend(); ++it) {
    if (it->is_t) {
      tau = top.op(it->t, tau);
      continue;
    }
    const auto j = top.index(tau);
    if (it->y == 0) {
      auto c = a.act(j, it->h);
      if (!normal.is_identity(c)) out.push_back(Letter::coefficient(std::move(c)));
    } else {
      out.push_back(Letter::variable(static_cast<std::uint32_t>((it->y - 1) * k + j + 1), it->exp));
    }
  }
  std::reverse(out.begin(), out.end());
  return {bar_word(w), Word::normalize(hgroup, arity, out), s};
}

// ---------------------------------------------------------------- witness

WitnessCertificate witness_finite_extension_tuples(const GroupPtr& g, std::size_t n, const std::vector<Tuple>& e,
                                                   const CoefficientMode& mode, std::size_t budget) {
  auto ap = as_semidirect_ptr(g);
  const auto& a = *ap;
  if (!budget) budget = default_budget();
  const auto& hptr = a.normal_ptr();
  const auto hmode = normal_mode(mode);

  WitnessCertificate cert;
  cert.kind = "finite_extension";
  cert.group = g;
  cert.mode = mode;
  cert.arity = n;
  cert.e = e;

  json classes = json::array();
  std::vector<std::size_t> chosen;
  for (const auto& cls : lambda_classes(a, e)) {
    auto primed = primed_members(a, e, cls.members);
    auto sub = witness_tuples(hptr, n * a.top().order(), primed, hmode, budget);
    std::vector<std::size_t> picked;
    for (auto i : sub.e0_indices) picked.push_back(cls.members[i]);
    chosen.insert(chosen.end(), picked.begin(), picked.end());
    classes.push_back({{"lambda", tuple_to_json(cls.s, a.top())},
                       {"members", cls.members},
                       {"picked", picked},
                       {"certificate", sub.to_json()}});
  }
  std::sort(chosen.begin(), chosen.end());
  cert.e0_indices = chosen;
  if (g->is_finite() && g->order() <= kMaxTabulatedOrder) {
    cert.oracle = "closure";
    cert.steps = closure_steps(g, n, e, cert.e0_indices, mode, budget);
  } else {
    cert.oracle = "classwise";
    for (std::size_t pos = 1; pos < chosen.size(); ++pos) cert.steps.push_back({chosen[pos], std::nullopt, true});
  }
  cert.nested = {{"classes", classes}};
  return cert;
}

WitnessCertificate witness_finite_extension(const TupleSet& e, const CoefficientMode& mode, std::size_t budget) {
  return witness_finite_extension_tuples(e.group(), e.arity(), e.tuples(), mode, budget);
}

bool classwise_equal(const GroupPtr& g, std::size_t n, const std::vector<Tuple>& e0, const std::vector<Tuple>& e,
                     const CoefficientMode& mode) {
  const auto& a = as_semidirect(*g);
  auto c0 = lambda_classes(a, e0);
  auto c1 = lambda_classes(a, e);
  if (c0.size() != c1.size()) return false;
  const auto hmode = normal_mode(mode);
  for (const auto& cls : c1) {
    auto it = std::find_if(c0.begin(), c0.end(), [&](const LambdaClass& c) { return c.s == cls.s; });
    if (it == c0.end()) return false;
    if (!radical_equal(a.normal_ptr(), n * a.top().order(), primed_members(a, e0, it->members),
                       primed_members(a, e, cls.members), hmode))
      return false;
  }
  return true;
}

// ---------------------------------------------------------------- wreath

WreathEmbedding wreath_embed(const std::shared_ptr<const FiniteGroup>& a, const std::vector<Element>& hset) {
  const auto order = a->order();
  std::vector<char> in_h(order, 0);
  for (const auto& x : hset) {
    a->validate(x);
    in_h[a->index(x)] = 1;
  }
  if (!in_h[0]) throw ValidationError("subgroup must contain the identity");
  for (std::size_t x = 0; x < order; ++x)
    for (std::size_t y = 0; y < order; ++y)
      if (in_h[x] && in_h[y] && !in_h[a->mul(x, a->index(a->inv(Element{std::int64_t(y)})))])
        throw ValidationError("the given set is not a subgroup");

  // Core: elements lying in every conjugate g^-1 H g.
  std::vector<char> in_core = in_h;
  for (std::size_t g = 0; g < order; ++g) {
    auto gi = a->index(a->inv(Element{std::int64_t(g)}));
    for (std::size_t x = 0; x < order; ++x)
      if (in_core[x] && !in_h[a->mul(a->mul(g, x), gi)]) in_core[x] = 0;
  }
  std::vector<std::size_t> core;
  for (std::size_t x = 0; x < order; ++x)
    if (in_core[x]) core.push_back(x);

  // Cosets N c with c_1 = 1; coset_of[x] is the coset index of x.
  std::vector<std::size_t> reps, coset_of(order, SIZE_MAX);
  for (std::size_t x = 0; x < order; ++x) {
    if (coset_of[x] != SIZE_MAX) continue;
    for (auto nidx : core) coset_of[a->mul(nidx, x)] = reps.size();
    reps.push_back(x);
  }
  const std::size_t k = reps.size();
  std::vector<std::string> tnames;
  std::vector<std::vector<std::uint32_t>> ttable(k, std::vector<std::uint32_t>(k));
  for (std::size_t i = 0; i < k; ++i) {
    tnames.push_back(a->names()[reps[i]]);
    for (std::size_t j = 0; j < k; ++j) ttable[i][j] = static_cast<std::uint32_t>(coset_of[a->mul(reps[i], reps[j])]);
  }
  auto tgroup = std::make_shared<FiniteGroup>(tnames, ttable);

  // N^k, element index in mixed radix over positions in `core`.
  const std::size_t m = core.size();
  BigInt big = boost::multiprecision::pow(BigInt(m), static_cast<unsigned>(k));
  if (big > kMaxTabulatedOrder) throw BudgetExceeded("core^index exceeds the tabulation limit");
  const auto total = static_cast<std::size_t>(big);
  std::vector<std::size_t> core_pos(order, SIZE_MAX);
  for (std::size_t i = 0; i < m; ++i) core_pos[core[i]] = i;
  auto decode = [&](std::size_t idx) {
    std::vector<std::size_t> f(k);
    for (std::size_t j = 0; j < k; ++j) {
      f[j] = core[idx % m];
      idx /= m;
    }
    return f;
  };
  auto encode = [&](const std::vector<std::size_t>& f) {
    std::size_t idx = 0;
    for (std::size_t j = k; j-- > 0;) idx = idx * m + core_pos[f[j]];
    return idx;
  };
  std::vector<std::string> nnames;
  std::vector<std::vector<std::uint32_t>> ntable(total, std::vector<std::uint32_t>(total));
  for (std::size_t x = 0; x < total; ++x) {
    auto f = decode(x);
    if (k == 1) {
      nnames.push_back(a->names()[f[0]]);
    } else {
      std::string s = "(";
      for (std::size_t j = 0; j < k; ++j) s += (j ? "," : "") + a->names()[f[j]];
      nnames.push_back(s + ")");
    }
    for (std::size_t y = 0; y < total; ++y) {
      auto g = decode(y);
      std::vector<std::size_t> p(k);
      for (std::size_t j = 0; j < k; ++j) p[j] = a->mul(f[j], g[j]);
      ntable[x][y] = static_cast<std::uint32_t>(encode(p));
    }
  }
  auto ngroup = std::make_shared<FiniteGroup>(nnames, ntable);

  // act(t)(f)(j) = f(j t^-1).
  SemidirectAction action;
  for (std::size_t t = 0; t < k; ++t) {
    auto tinv = tgroup->index(tgroup->inv(Element{std::int64_t(t)}));
    std::vector<std::uint32_t> perm(total);
    for (std::size_t x = 0; x < total; ++x) {
      auto f = decode(x);
      std::vector<std::size_t> g(k);
      for (std::size_t j = 0; j < k; ++j) g[j] = f[ttable[j][tinv]];
      perm[x] = static_cast<std::uint32_t>(encode(g));
    }
    action.permutations.push_back(std::move(perm));
  }
  WreathEmbedding out;
  out.group = std::make_shared<SemidirectGroup>(tgroup, ngroup, action);
  for (auto x : core) out.core.push_back(Element{std::int64_t(x)});

  // phi(a) = (tau_a, g_a), g_a(j) = c_{j tau_a^-1} a c_j^-1.
  for (std::size_t x = 0; x < order; ++x) {
    const auto tau = coset_of[x];
    const auto tinv = tgroup->index(tgroup->inv(Element{std::int64_t(tau)}));
    std::vector<std::size_t> g(k);
    for (std::size_t j = 0; j < k; ++j) {
      auto cj_inv = a->index(a->inv(Element{std::int64_t(reps[j])}));
      g[j] = a->mul(a->mul(reps[ttable[j][tinv]], x), cj_inv);
    }
    out.images.push_back(out.group->build(Element{std::int64_t(tau)}, Element{std::int64_t(encode(g))}));
  }
  // Exhaustive homomorphism and injectivity check.
  std::set<Element> seen(out.images.begin(), out.images.end());
  if (seen.size() != order) throw Error("internal: wreath embedding is not injective");
  for (std::size_t x = 0; x < order; ++x)
    for (std::size_t y = 0; y < order; ++y)
      if (out.group->op(out.images[x], out.images[y]) != out.images[a->mul(x, y)])
        throw Error("internal: wreath embedding is not a homomorphism");
  return out;
}

}  // namespace eqgeo
