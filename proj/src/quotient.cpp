#include "eqgeo/quotient.hpp"

#include <map>

#include "eqgeo/dsl.hpp"
#include "eqgeo/errors.hpp"
#include "eqgeo/group_io.hpp"

namespace eqgeo {

RadicalUnion::RadicalUnion(GroupPtr g, std::vector<std::vector<Element>> p) : group(std::move(g)), parts(std::move(p)) {
  if (!group->is_finite()) throw ValidationError("radical unions need a finite coefficient group");
  if (parts.empty()) throw ValidationError("a radical union needs at least one part");
  for (const auto& k : parts) {
    if (k.empty()) throw ValidationError("every part of a radical union must be non-empty");
    for (const auto& x : k) group->validate(x);
  }
}

RadicalUnion RadicalUnion::from_json(const json& j, const std::filesystem::path& base_dir) {
  try {
    const auto& gref = j.at("group");
    GroupPtr g = gref.is_string() ? load_group(base_dir / gref.get<std::string>()) : group_from_json(gref, base_dir);
    std::vector<std::vector<Element>> parts;
    for (const auto& part : j.at("parts")) {
      std::vector<Element> k;
      for (const auto& x : part) k.push_back(g->parse_element(x.get<std::string>()));
      parts.push_back(std::move(k));
    }
    return RadicalUnion(g, std::move(parts));
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed radical union: ") + e.what());
  }
}

json RadicalUnion::to_json() const {
  json parts_j = json::array();
  for (const auto& k : parts) {
    json names = json::array();
    for (const auto& x : k) names.push_back(group->serialize(x));
    parts_j.push_back(names);
  }
  return {{"group", group->to_json()}, {"parts", parts_j}};
}

json Membership::to_json(const GroupBackend& g) const {
  json f = json::array();
  for (const auto& [at, value] : failures) f.push_back({{"t", g.serialize(at)}, {"value", g.serialize(value)}});
  return {{"member", member}, {"part", part ? json(*part) : json(nullptr)}, {"failures", f}};
}

Membership r_membership(const Word& u, const RadicalUnion& r) {
  if (u.arity() != 1) throw ArityError("words in G[t] have exactly one variable");
  const auto& g = *r.group;
  Membership m;
  for (std::size_t i = 0; i < r.parts.size(); ++i) {
    std::optional<std::pair<Element, Element>> bad;
    for (const auto& x : r.parts[i]) {
      auto v = evaluate(u, std::span<const Element>(&x, 1), g);
      if (!g.is_identity(v)) {
        bad.emplace(x, v);
        break;
      }
    }
    if (!bad) {
      m.member = true;
      m.part = i;
      m.failures.clear();
      return m;
    }
    m.failures.push_back(*bad);
  }
  return m;
}

namespace {

Word random_gt_word(const GroupPtr& g, std::mt19937_64& rng, std::size_t max_len) {
  const auto elems = g->elements();
  std::uniform_int_distribution<std::size_t> len(0, max_len), kind(0, 2), pick(0, elems.size() - 1);
  std::vector<Letter> raw;
  for (std::size_t i = len(rng); i > 0; --i) {
    switch (kind(rng)) {
      case 0:
        raw.push_back(Letter::variable(1, 1));
        break;
      case 1:
        raw.push_back(Letter::variable(1, -1));
        break;
      default:
        raw.push_back(Letter::coefficient(elems[pick(rng)]));
    }
  }
  return Word::normalize(g, 1, raw);
}

}  // namespace

UnionValidation validate_union(const RadicalUnion& r, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto& g = *r.group;
  // Members of each part: quotients of words agreeing on K_i.
  std::vector<Word> members;
  for (const auto& k : r.parts) {
    std::map<std::vector<Element>, std::vector<Word>> buckets;
    for (int i = 0; i < 96; ++i) {
      auto w = random_gt_word(r.group, rng, 6);
      std::vector<Element> key;
      for (const auto& x : k) key.push_back(evaluate(w, std::span<const Element>(&x, 1), g));
      buckets[key].push_back(std::move(w));
    }
    for (const auto& [key, words] : buckets)
      for (std::size_t a = 0; a + 1 < words.size(); ++a) {
        auto m = words[a] * words[a + 1].inverse();
        if (!m.empty()) members.push_back(std::move(m));
      }
  }
  UnionValidation out;
  if (members.empty()) return out;
  std::uniform_int_distribution<std::size_t> pick(0, members.size() - 1);
  for (std::size_t s = 0; s < samples; ++s) {
    const auto& a = members[pick(rng)];
    const auto& b = members[pick(rng)];
    if (!r_membership(a, r).member || !r_membership(b, r).member) throw Error("internal: sampled non-member");
    if (!r_membership(a * b, r).member) {
      out.closed = false;
      out.counterexample.emplace(a, b);
      return out;
    }
  }
  return out;
}

// ---------------------------------------------------------------- backend

QuotientGroup::QuotientGroup(RadicalUnion r, bool validate) : r_(std::move(r)) {
  const auto& g = *r_.group;
  for (const auto& x : g.elements()) {
    auto name = g.serialize(x);
    if (name == "t" || name == "t^-1") throw ValidationError("coefficient names must not clash with t");
  }
  if (validate) {
    auto v = validate_union(r_);
    if (!v.closed)
      throw ValidationError("radical union is not closed under products: " +
                            print_word(v.counterexample->first, {VarStyle::TX, 1}) + " and " +
                            print_word(v.counterexample->second, {VarStyle::TX, 1}));
  }
}

Word QuotientGroup::to_word(const Element& a) const {
  const auto& table = r_.group->cayley();
  std::vector<Letter> raw;
  raw.reserve(a.data.size());
  for (auto x : a.data) {
    if (x == -1)
      raw.push_back(Letter::variable(1, 1));
    else if (x == -2)
      raw.push_back(Letter::variable(1, -1));
    else if (x >= 0 && static_cast<std::size_t>(x) < table.order)
      raw.push_back(Letter::coefficient(table.elements[static_cast<std::size_t>(x)]));
    else
      throw ValidationError("malformed quotient element");
  }
  return Word::normalize(r_.group, 1, raw);
}

Element QuotientGroup::from_word(const Word& w) const {
  if (w.arity() != 1) throw ArityError("words in G[t] have exactly one variable");
  const auto& table = r_.group->cayley();
  Element out;
  for (const auto& l : w.letters())
    out.data.push_back(l.is_variable() ? (l.exp > 0 ? -1 : -2) : std::int64_t(table.index_of(l.coef)));
  return out;
}

Element QuotientGroup::op(const Element& a, const Element& b) const { return from_word(to_word(a) * to_word(b)); }
Element QuotientGroup::inv(const Element& a) const { return from_word(to_word(a).inverse()); }

bool QuotientGroup::eq(const Element& a, const Element& b) const {
  return r_membership(to_word(a).inverse() * to_word(b), r_).member;
}

Element QuotientGroup::power(const Element& a, const BigInt& k) const {
  return from_word(to_word(a).pow(to_int64(k)));
}

std::vector<Element> QuotientGroup::generators() const {
  std::vector<Element> out{Element{-1}};
  for (const auto& g : r_.group->generators()) out.push_back(from_word(Word::coefficient(r_.group, 1, g)));
  return out;
}

void QuotientGroup::validate(const Element& a) const {
  if (from_word(to_word(a)) != a) throw ValidationError("quotient element is not in normal form");
}

json QuotientGroup::to_json() const {
  auto j = r_.to_json();
  j["kind"] = "quotient";
  return j;
}

Element QuotientGroup::random_element(std::mt19937_64& rng) const {
  return from_word(random_gt_word(r_.group, rng, 4));
}

std::string QuotientGroup::literal(const Element& a) const {
  std::string s = "[";
  bool first = true;
  const Word w = to_word(a);
  for (const auto& l : w.letters()) {
    if (!first) s += ",";
    first = false;
    s += l.is_variable() ? (l.exp > 0 ? "t" : "t^-1") : r_.group->serialize(l.coef);
  }
  return s + "]";
}

Element QuotientGroup::parse_literal(std::string_view text) const {
  if (text.size() < 2 || text.front() != '[' || text.back() != ']')
    throw ValidationError("malformed quotient literal '" + std::string(text) + "'");
  auto inner = text.substr(1, text.size() - 2);
  std::vector<Letter> raw;
  if (!inner.empty())
    for (const auto& tok : split_top_level(inner)) {
      if (tok == "t")
        raw.push_back(Letter::variable(1, 1));
      else if (tok == "t^-1")
        raw.push_back(Letter::variable(1, -1));
      else
        raw.push_back(Letter::coefficient(r_.group->parse_element(tok)));
    }
  return from_word(Word::normalize(r_.group, 1, raw));
}

// ---------------------------------------------------------------- maps

bool quotient_eq(const Word& p, const Word& q, const RadicalUnion& r) {
  return r_membership(p.inverse() * q, r).member;
}

Word quotient_op(const Word& p, const Word& q) { return p * q; }
Word quotient_inv(const Word& p) { return p.inverse(); }

Word q_map(const Word& w, const std::shared_ptr<const QuotientGroup>& h) {
  if (w.arity() == 0) throw ArityError("words in G[t, X] need the variable t");
  const auto n = w.arity() - 1;
  const auto& g = h->radical_union().group;
  const Element t = h->from_word(Word::variable(g, 1, 1));
  return map_word(
      w, h, n,
      [&](std::uint32_t i) { return i == 1 ? Word::coefficient(h, n, t) : Word::variable(h, n, i - 1); },
      [&](const Element& c) { return Word::coefficient(h, n, h->from_word(Word::coefficient(g, 1, c))); });
}

Tuple psi_map(const std::vector<Word>& u, const QuotientGroup& h) {
  Tuple out;
  for (const auto& w : u) out.push_back(h.from_word(w));
  return out;
}

Word evaluate_in_gt(const Word& w, const std::vector<Word>& u) {
  if (w.arity() != u.size() + 1) throw ArityError("need one G[t] word per variable x_i");
  std::vector<Word> sigma{Word::variable(w.group_ptr(), 1, 1)};
  sigma.insert(sigma.end(), u.begin(), u.end());
  return substitute(w, sigma);
}

}  // namespace eqgeo
