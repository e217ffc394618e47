#include "eqgeo/topology.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <unordered_set>

#include "eqgeo/backends.hpp"
#include "eqgeo/closure.hpp"
#include "eqgeo/errors.hpp"

namespace eqgeo {

json ChainReport::to_json() const {
  json steps = json::array();
  for (const auto& s : strict_steps) steps.push_back({{"index", s.index}, {"separator", s.separator}});
  json j = {{"length", length},
            {"strict_steps", steps},
            {"stabilized_at", stabilized_at ? json(*stabilized_at) : json(nullptr)},
            {"verdict", verdict},
            {"window", window}};
  if (!dimensions.empty()) j["dimensions"] = dimensions;
  return j;
}

namespace {

// A finite U with Rad(U) = Rad(H^n), when one is cheap to write down.
std::optional<std::vector<Tuple>> universal_set(const GroupBackend& h, std::size_t n) {
  if (h.kind() == "fgabelian" || h.kind() == "field_q") {
    std::vector<Tuple> u{Tuple(n, h.identity())};
    std::vector<Element> gens = h.generators();
    if (h.kind() == "field_q") gens = {h.parse_element("1")};
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& g : gens) {
        Tuple t(n, h.identity());
        t[i] = g;
        u.push_back(std::move(t));
      }
    return u;
  }
  if (h.is_finite() && !h.linear_model({})) {
    const auto elems = h.elements();
    double size = 1;
    for (std::size_t i = 0; i < n; ++i) size *= static_cast<double>(elems.size());
    if (size > 256) return std::nullopt;
    std::vector<Tuple> u{Tuple{}};
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Tuple> next;
      for (const auto& t : u)
        for (const auto& x : elems) {
          auto s = t;
          s.push_back(x);
          next.push_back(std::move(s));
        }
      u = std::move(next);
    }
    return u;
  }
  return std::nullopt;
}

void finish(ChainReport& r, bool exact, std::size_t window) {
  r.window = window;
  const std::size_t last = r.strict_steps.empty() ? 1 : r.strict_steps.back().index;
  if (exact) {
    r.verdict = "exact";
    r.stabilized_at = last;
  } else if (r.length >= last + window) {
    r.verdict = "window";
    r.stabilized_at = last;
  } else {
    r.verdict = "none";
    r.stabilized_at.reset();
  }
}

}  // namespace

ChainReport chain_monitor(const std::vector<TupleSet>& stream, const CoefficientMode& mode, std::size_t window,
                          std::size_t budget) {
  ChainReport r;
  r.length = stream.size();
  if (stream.empty()) {
    finish(r, false, window);
    return r;
  }
  const auto& h = stream[0].group();
  const auto n = stream[0].arity();
  for (const auto& s : stream)
    if (s.arity() != n || s.group()->to_json() != h->to_json())
      throw ValidationError("every set in a chain must share the backend and arity");
  auto universe = universal_set(*h, n);
  // Witness of the current set; radicals of the stream only shrink by
  // adding separated tuples to it.
  std::vector<Tuple> e0(stream[0].tuples().begin(),
                        stream[0].tuples().begin() + (stream[0].size() ? 1 : 0));
  for (std::size_t i = 1; i < stream[0].size(); ++i) {
    auto sep = separation(TupleSet(h, n, e0), stream[0][i], mode, budget);
    if (sep) e0.push_back(stream[0][i]);
  }
  auto at_minimum = [&] {
    if (!universe || e0.empty()) return false;
    std::vector<Tuple> both = e0;
    for (const auto& t : *universe)
      if (std::find(both.begin(), both.end(), t) == both.end()) both.push_back(t);
    return radical_equal(h, n, e0, both, mode);
  };
  bool exact = at_minimum();
  for (std::size_t j = 1; j < stream.size(); ++j) {
    const auto& prev = stream[j - 1];
    const auto& cur = stream[j];
    for (const auto& t : prev.tuples())
      if (!cur.contains(t))
        throw ValidationError("chain inclusion violated at position " + std::to_string(j + 1));
    std::optional<std::string> first;
    for (const auto& t : cur.tuples()) {
      if (prev.contains(t)) continue;
      if (e0.empty()) {
        // Rad(empty) is everything; the first tuple shrinks it unless it is
        // killed by every word, which only happens for a trivial H.
        auto sep = separation(TupleSet(h, n, {}), t, mode, budget);
        if (sep && !first) first = sep->text(*h);
        e0.push_back(t);
        continue;
      }
      if (exact) continue;
      auto sep = separation(TupleSet(h, n, e0), t, mode, budget);
      if (!sep) continue;
      if (!first) first = sep->text(*h);
      e0.push_back(t);
    }
    if (first) {
      r.strict_steps.push_back({j + 1, *first});
      exact = at_minimum();
    }
  }
  finish(r, exact, window);
  return r;
}

// ---------------------------------------------------------------- Q/Z

std::vector<std::int64_t> first_primes(std::size_t k) {
  std::vector<std::int64_t> out;
  for (std::int64_t c = 2; out.size() < k; ++c) {
    bool prime = true;
    for (auto p : out) {
      if (p * p > c) break;
      if (c % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) out.push_back(c);
  }
  return out;
}

QmodzDemo qmodz_counterexample(std::size_t k) {
  if (k < 2) throw ValidationError("the Q/Z demo needs at least two primes");
  QmodZGroup q;
  QmodzDemo d;
  d.primes = first_primes(k);
  d.verified = true;
  BigInt prod = 1;
  for (std::size_t j = 0; j + 1 < k; ++j) {
    prod *= d.primes[j];
    LinearizedWord w{{prod}, q.identity()};
    for (std::size_t i = 0; i <= j + 1; ++i) {
      Element x = QmodZGroup::make(1, d.primes[i]);
      bool zero = q.is_identity(evaluate_linear(w, std::span<const Element>(&x, 1), q));
      if (zero != (i <= j)) d.verified = false;
    }
    d.witnesses.push_back(std::move(w));
  }
  return d;
}

json QmodzDemo::to_json(const GroupBackend& q) const {
  json ws = json::array();
  for (std::size_t j = 0; j < witnesses.size(); ++j) {
    json evals = json::array();
    for (std::size_t i = 0; i <= j + 1 && i < primes.size(); ++i) {
      Element x = QmodZGroup::make(1, primes[i]);
      evals.push_back({{"at", q.serialize(x)},
                       {"value", q.serialize(evaluate_linear(witnesses[j], std::span<const Element>(&x, 1), q))}});
    }
    ws.push_back({{"j", j + 1}, {"word", print_linear(witnesses[j], q)}, {"evaluations", evals}});
  }
  return {{"primes", primes}, {"witnesses", ws}, {"verified", verified}};
}

// ---------------------------------------------------------------- affine demo

namespace {

// Particular point plus one translate per direction; pins down any affine
// condition on the set.
std::vector<Tuple> affine_base(const AlgebraicSet& v, const GroupBackend& h) {
  if (v.empty) return {};
  if (v.finite) return v.points;
  std::vector<Tuple> out{v.particular};
  for (const auto& d : v.directions) {
    Tuple p = v.particular;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = h.op(p[i], d[i]);
    out.push_back(std::move(p));
  }
  return out;
}

long affine_dim(const AlgebraicSet& v) { return v.empty ? -1 : static_cast<long>(v.directions.size()); }

}  // namespace

ChainReport affine_chain_demo(std::size_t n, const std::vector<std::vector<Word>>& systems, std::size_t window) {
  auto q = std::make_shared<FieldAdditiveGroup>();
  ChainReport r;
  r.length = systems.size();
  std::vector<AlgebraicSet> sets;
  for (const auto& s : systems) {
    for (const auto& w : s)
      if (w.group().kind() != "field_q") throw ValidationError("affine demo systems must be over field_q");
    sets.push_back(algebraic_set(s, q, n));
    r.dimensions.push_back(affine_dim(sets.back()));
  }
  auto satisfies = [&](const std::vector<Word>& s, const Tuple& p) {
    for (const auto& w : s)
      if (!q->is_identity(evaluate(w, p, *q))) return std::optional<Word>(w);
    return std::optional<Word>();
  };
  for (std::size_t j = 1; j < systems.size(); ++j) {
    for (const auto& p : affine_base(sets[j - 1], *q))
      if (satisfies(systems[j], p))
        throw ValidationError("affine chain is not ascending at position " + std::to_string(j + 1));
    for (const auto& p : affine_base(sets[j], *q))
      if (auto w = satisfies(systems[j - 1], p)) {
        r.strict_steps.push_back({j + 1, print_word(*w)});
        break;
      }
  }
  const bool exact = !sets.empty() && affine_dim(sets.back()) == static_cast<long>(n);
  finish(r, exact, window);
  return r;
}

// ---------------------------------------------------------------- cosets

json CosetCheck::to_json() const {
  json d = json::array();
  for (const auto& w : discrepancies) d.push_back(print_word(w));
  return {{"empty", empty},
          {"common", common ? json(print_word(*common)) : json(nullptr)},
          {"sampled", sampled},
          {"members", members},
          {"discrepancies", d}};
}

CosetCheck coset_intersection_check(const Word& u, const TupleSet& e1, const Word& v, const TupleSet& e2,
                                    const CoefficientMode& mode, std::size_t samples, std::size_t budget,
                                    std::uint64_t seed) {
  const auto& h = e1.group();
  const auto n = e1.arity();
  if (e2.arity() != n || u.arity() != n || v.arity() != n) throw ArityError("coset check needs one arity throughout");
  if (!h->is_finite()) throw Undecided("coset intersections are checked over finite backends only");
  if (!budget) budget = default_budget();
  const auto& table = h->cayley();
  auto coef = mode.generators(*h);

  std::vector<Tuple> all = e1.tuples();
  all.insert(all.end(), e2.tuples().begin(), e2.tuples().end());
  Point target;
  for (const auto& t : e1.tuples()) target.push_back(table.index_of(evaluate(u, t, *h)));
  for (const auto& t : e2.tuples()) target.push_back(table.index_of(evaluate(v, t, *h)));
  WordSearch search(h, n, coef, all);
  CosetCheck out;
  out.common = search.word_for(target, budget);
  if (!out.common) {
    out.empty = true;
    return out;
  }
  auto in_coset = [&](const Word& z, const Word& c, const std::vector<Tuple>& e) {
    return std::all_of(e.begin(), e.end(), [&](const Tuple& t) { return evaluate(z, t, *h) == evaluate(c, t, *h); });
  };

  // Samples: random words, and common times random members of Rad(E1 u E2)
  // (quotients of words with equal evaluations on E1 u E2).
  std::mt19937_64 rng(seed);
  std::vector<Letter> letters;
  for (std::uint32_t i = 1; i <= n; ++i) {
    letters.push_back(Letter::variable(i, 1));
    letters.push_back(Letter::variable(i, -1));
  }
  for (const auto& g : coef) letters.push_back(Letter::coefficient(g));
  std::uniform_int_distribution<std::size_t> len(0, 8), pick(0, letters.size() - 1);
  auto random_word = [&] {
    std::vector<Letter> raw;
    for (std::size_t i = len(rng); i > 0; --i) raw.push_back(letters[pick(rng)]);
    return Word::normalize(h, n, raw);
  };
  std::map<Point, Word> buckets;
  for (std::size_t s = 0; s < samples; ++s) {
    Word z = random_word();
    Point key;
    for (const auto& t : all) key.push_back(table.index_of(evaluate(z, t, *h)));
    auto [it, fresh] = buckets.emplace(key, z);
    Word candidate = (s % 2 == 0 || fresh) ? z : *out.common * (z * it->second.inverse());
    const bool lhs = in_coset(candidate, u, e1.tuples()) && in_coset(candidate, v, e2.tuples());
    const bool rhs = in_coset(candidate, *out.common, all);
    ++out.sampled;
    if (lhs) ++out.members;
    if (lhs != rhs) out.discrepancies.push_back(candidate);
  }
  return out;
}

// ---------------------------------------------------------------- closure

TupleSet closure(const TupleSet& e, const CoefficientMode& mode, std::size_t budget) {
  const auto& h = e.group();
  const auto n = e.arity();
  if (!h->is_finite()) throw Undecided("closure is computed over finite backends only");
  if (!budget) budget = default_budget();
  const auto& table = h->cayley();
  const auto elems = table.elements;
  BigInt total = boost::multiprecision::pow(BigInt(elems.size()), static_cast<unsigned>(n));
  if (total > budget) throw BudgetExceeded("H^n has more points than the budget allows");
  auto coef = mode.generators(*h);
  std::vector<Tuple> base = e.size() ? witness(e, mode, budget).e0() : std::vector<Tuple>{};
  std::vector<Tuple> out;
  std::vector<std::size_t> idx(n, 0);
  for (std::size_t c = 0; c < static_cast<std::size_t>(total); ++c) {
    Tuple v;
    for (auto i : idx) v.push_back(elems[i]);
    bool inside;
    if (base.empty()) {
      inside = !separation(TupleSet(h, n, {}), v, mode, budget).has_value();
    } else {
      auto tuples = base;
      tuples.push_back(v);
      CoordinateChain chain(table, tuples.size(), coordinate_generators(table, tuples, n, coef));
      inside = chain.level_sizes().back() == 1;
    }
    if (inside) out.push_back(std::move(v));
    for (std::size_t d = n; d-- > 0;) {
      if (++idx[d] < elems.size()) break;
      idx[d] = 0;
    }
  }
  return TupleSet(h, n, std::move(out));
}

}  // namespace eqgeo
