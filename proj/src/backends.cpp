#include "eqgeo/backends.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>
#include <unordered_set>

#include "eqgeo/errors.hpp"

namespace eqgeo {

namespace {

std::string strip_parens(std::string_view text, char open, char close, std::string_view what) {
  if (text.size() < 2 || text.front() != open || text.back() != close)
    throw ValidationError("malformed " + std::string(what) + " literal '" + std::string(text) + "'");
  return std::string(text.substr(1, text.size() - 2));
}

std::pair<BigInt, BigInt> parse_fraction(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return {parse_bigint(text), BigInt(1)};
  BigInt num = parse_bigint(text.substr(0, slash));
  BigInt den = parse_bigint(text.substr(slash + 1));
  if (den == 0) throw ValidationError("zero denominator in '" + std::string(text) + "'");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return {num, den};
}

}  // namespace

// ---------------------------------------------------------------- finite

FiniteGroup::FiniteGroup(std::vector<std::string> names, std::vector<std::vector<std::uint32_t>> table,
                         std::vector<std::string> generator_names)
    : order_(names.size()), names_(std::move(names)) {
  if (order_ == 0) throw ValidationError("finite group needs at least one element");
  if (order_ > 65535) throw ValidationError("finite group too large");
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (!is_valid_element_name(n)) throw ValidationError("invalid element name '" + n + "'");
    if (!seen.insert(n).second) throw ValidationError("duplicate element name '" + n + "'");
  }
  if (table.size() != order_) throw ValidationError("Cayley table must be order x order");
  table_.reserve(order_ * order_);
  for (const auto& row : table) {
    if (row.size() != order_) throw ValidationError("Cayley table must be order x order");
    for (auto v : row) {
      if (v >= order_) throw ValidationError("Cayley table entry out of range");
      table_.push_back(v);
    }
  }
  for (std::size_t x = 0; x < order_; ++x)
    if (mul(0, x) != x || mul(x, 0) != x) throw ValidationError("row and column 0 must realize the identity");
  for (std::size_t a = 0; a < order_; ++a) {
    std::vector<char> row(order_, 0), col(order_, 0);
    for (std::size_t b = 0; b < order_; ++b) {
      if (row[mul(a, b)]++ || col[mul(b, a)]++) throw ValidationError("Cayley table is not a Latin square");
    }
  }
  auto assoc = [&](std::size_t a, std::size_t b, std::size_t c) {
    if (mul(mul(a, b), c) != mul(a, mul(b, c)))
      throw ValidationError("Cayley table is not associative at (" + names_[a] + "," + names_[b] + "," +
                            names_[c] + ")");
  };
  if (order_ <= 12) {
    for (std::size_t a = 0; a < order_; ++a)
      for (std::size_t b = 0; b < order_; ++b)
        for (std::size_t c = 0; c < order_; ++c) assoc(a, b, c);
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<std::size_t> pick(0, order_ - 1);
    for (int i = 0; i < 10000; ++i) assoc(pick(rng), pick(rng), pick(rng));
  }
  inverse_.resize(order_);
  for (std::size_t a = 0; a < order_; ++a)
    for (std::size_t b = 0; b < order_; ++b)
      if (mul(a, b) == 0) inverse_[a] = static_cast<std::uint32_t>(b);
  for (std::size_t a = 0; a < order_ && abelian_; ++a)
    for (std::size_t b = 0; b < a; ++b)
      if (mul(a, b) != mul(b, a)) {
        abelian_ = false;
        break;
      }

  auto closure_of = [&](const std::vector<std::size_t>& gens) {
    std::vector<char> in(order_, 0);
    std::vector<std::size_t> frontier{0};
    in[0] = 1;
    while (!frontier.empty()) {
      std::vector<std::size_t> next;
      for (auto x : frontier)
        for (auto g : gens)
          if (!in[mul(x, g)]) {
            in[mul(x, g)] = 1;
            next.push_back(mul(x, g));
          }
      frontier = std::move(next);
    }
    return in;
  };
  if (!generator_names.empty()) {
    for (const auto& n : generator_names) generators_.push_back(find(n));
    auto in = closure_of(generators_);
    if (std::count(in.begin(), in.end(), 1) != static_cast<long>(order_))
      throw ValidationError("listed generators do not generate the group");
  } else {
    std::vector<char> in(order_, 0);
    in[0] = 1;
    for (std::size_t x = 1; x < order_; ++x) {
      if (in[x]) continue;
      generators_.push_back(x);
      in = closure_of(generators_);
    }
  }
}

std::size_t FiniteGroup::find(std::string_view name) const {
  for (std::size_t i = 0; i < order_; ++i)
    if (names_[i] == name) return i;
  throw ValidationError("unknown element '" + std::string(name) + "'");
}

std::vector<Element> FiniteGroup::elements() const {
  std::vector<Element> out;
  out.reserve(order_);
  for (std::size_t i = 0; i < order_; ++i) out.push_back(Element{std::int64_t(i)});
  return out;
}

std::vector<Element> FiniteGroup::generators() const {
  std::vector<Element> out;
  for (auto g : generators_) out.push_back(Element{std::int64_t(g)});
  return out;
}

void FiniteGroup::validate(const Element& a) const {
  if (a.data.size() != 1 || a.data[0] < 0 || static_cast<std::size_t>(a.data[0]) >= order_)
    throw ValidationError("not an element of this finite group");
}

json FiniteGroup::to_json() const {
  json j;
  j["kind"] = "finite";
  j["names"] = names_;
  json rows = json::array();
  for (std::size_t a = 0; a < order_; ++a) {
    json row = json::array();
    for (std::size_t b = 0; b < order_; ++b) row.push_back(mul(a, b));
    rows.push_back(row);
  }
  j["table"] = rows;
  json gens = json::array();
  for (auto g : generators_) gens.push_back(names_[g]);
  j["generators"] = gens;
  if (!aliases().empty()) j["aliases"] = aliases_json();
  return j;
}

Element FiniteGroup::random_element(std::mt19937_64& rng) const {
  return Element{std::int64_t(std::uniform_int_distribution<std::size_t>(0, order_ - 1)(rng))};
}

Element FiniteGroup::parse_literal(std::string_view text) const { return Element{std::int64_t(find(text))}; }

// ---------------------------------------------------------------- fgabelian

FgAbelianGroup::FgAbelianGroup(std::size_t rank, std::vector<std::int64_t> torsion)
    : rank_(rank), torsion_(std::move(torsion)) {
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    if (torsion_[i] < 2) throw ValidationError("invariant factors must be at least 2");
    if (i > 0 && torsion_[i] % torsion_[i - 1] != 0)
      throw ValidationError("invariant factors must form a divisibility chain");
  }
}

Element FgAbelianGroup::reduce(const std::vector<BigInt>& coords) const {
  std::vector<std::int64_t> out(width());
  for (std::size_t k = 0; k < width(); ++k) {
    auto m = modulus(k);
    out[k] = m == 0 ? to_int64(coords[k]) : static_cast<std::int64_t>(floor_mod(coords[k], m));
  }
  return Element(std::move(out));
}

Element FgAbelianGroup::op(const Element& a, const Element& b) const {
  std::vector<std::int64_t> out(width());
  for (std::size_t k = 0; k < width(); ++k) {
    auto m = modulus(k);
    out[k] = m == 0 ? checked_add(a.data[k], b.data[k]) : (a.data[k] + b.data[k]) % m;
  }
  return Element(std::move(out));
}

Element FgAbelianGroup::inv(const Element& a) const {
  std::vector<std::int64_t> out(width());
  for (std::size_t k = 0; k < width(); ++k) {
    auto m = modulus(k);
    out[k] = m == 0 ? -a.data[k] : (m - a.data[k]) % m;
  }
  return Element(std::move(out));
}

Element FgAbelianGroup::power(const Element& a, const BigInt& k) const {
  std::vector<BigInt> c(width());
  for (std::size_t i = 0; i < width(); ++i) c[i] = k * a.data[i];
  return reduce(c);
}

std::uint64_t FgAbelianGroup::order() const {
  if (rank_ > 0) throw Undecided("free abelian part is infinite");
  std::uint64_t o = 1;
  for (auto d : torsion_) o = static_cast<std::uint64_t>(checked_mul(std::int64_t(o), d));
  return o;
}

std::vector<Element> FgAbelianGroup::elements() const {
  auto total = order();
  std::vector<Element> out;
  out.reserve(total);
  std::vector<std::int64_t> cur(width(), 0);
  for (std::uint64_t i = 0; i < total; ++i) {
    out.emplace_back(cur);
    for (std::size_t k = width(); k-- > 0;) {
      if (++cur[k] < torsion_[k]) break;
      cur[k] = 0;
    }
  }
  return out;
}

std::vector<Element> FgAbelianGroup::generators() const {
  std::vector<Element> out;
  for (std::size_t k = 0; k < width(); ++k) {
    std::vector<std::int64_t> v(width(), 0);
    v[k] = 1;
    out.emplace_back(std::move(v));
  }
  return out;
}

void FgAbelianGroup::validate(const Element& a) const {
  if (a.data.size() != width()) throw ValidationError("element has wrong number of coordinates");
  for (std::size_t k = rank_; k < width(); ++k)
    if (a.data[k] < 0 || a.data[k] >= modulus(k)) throw ValidationError("torsion coordinate not reduced");
}

json FgAbelianGroup::to_json() const {
  json j;
  j["kind"] = "fgabelian";
  j["rank"] = rank_;
  j["torsion"] = torsion_;
  if (!aliases().empty()) j["aliases"] = aliases_json();
  return j;
}

Element FgAbelianGroup::random_element(std::mt19937_64& rng) const {
  std::vector<std::int64_t> v(width());
  for (std::size_t k = 0; k < width(); ++k) {
    auto m = modulus(k);
    v[k] = m == 0 ? std::uniform_int_distribution<std::int64_t>(-4, 4)(rng)
                  : std::uniform_int_distribution<std::int64_t>(0, m - 1)(rng);
  }
  return Element(std::move(v));
}

std::optional<LinearModel> FgAbelianGroup::linear_model(std::span<const Element> elems) const {
  LinearModel model;
  for (std::size_t k = 0; k < width(); ++k) model.moduli.emplace_back(modulus(k));
  for (const auto& e : elems) {
    std::vector<BigInt> c;
    for (auto x : e.data) c.emplace_back(x);
    model.coords.push_back(std::move(c));
  }
  return model;
}

BigInt FgAbelianGroup::exponent() const {
  if (rank_ > 0) return 0;
  return torsion_.empty() ? BigInt(1) : BigInt(torsion_.back());
}

std::string FgAbelianGroup::literal(const Element& a) const {
  std::string s = "[";
  for (std::size_t k = 0; k < a.data.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(a.data[k]);
  }
  return s + "]";
}

Element FgAbelianGroup::parse_literal(std::string_view text) const {
  std::vector<BigInt> c;
  if (!text.empty() && text.front() == '[') {
    auto inner = strip_parens(text, '[', ']', "fgabelian");
    if (!inner.empty())
      for (const auto& p : split_top_level(inner)) c.push_back(parse_bigint(p));
  } else {
    c.push_back(parse_bigint(text));
  }
  if (c.size() != width()) throw ValidationError("element '" + std::string(text) + "' has wrong width");
  return reduce(c);
}

// ---------------------------------------------------------------- Q/Z

Element QmodZGroup::make(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw ValidationError("Q/Z denominator must be positive");
  std::int64_t a = ((num % den) + den) % den;
  std::int64_t g = std::gcd(a, den);
  if (a == 0) return Element{0, 1};
  return Element{a / g, den / g};
}

Element QmodZGroup::op(const Element& a, const Element& b) const {
  BigInt den = BigInt(a.data[1]) * b.data[1];
  BigInt num = BigInt(a.data[0]) * b.data[1] + BigInt(b.data[0]) * a.data[1];
  num = floor_mod(num, den);
  BigInt g = gcd(num, den);
  if (num == 0) return Element{0, 1};
  return Element{to_int64(num / g), to_int64(den / g)};
}

Element QmodZGroup::inv(const Element& a) const { return make(-a.data[0], a.data[1]); }

Element QmodZGroup::power(const Element& a, const BigInt& k) const {
  BigInt num = floor_mod(k * a.data[0], a.data[1]);
  return make(to_int64(num), a.data[1]);
}

void QmodZGroup::validate(const Element& a) const {
  if (a.data.size() != 2 || a.data[1] < 1 || a.data[0] < 0 || a.data[0] >= a.data[1] ||
      std::gcd(a.data[0], a.data[1]) != 1 || (a.data[0] == 0 && a.data[1] != 1))
    throw ValidationError("not a reduced element of Q/Z");
}

json QmodZGroup::to_json() const {
  json j;
  j["kind"] = "qmodz";
  if (!aliases().empty()) j["aliases"] = aliases_json();
  return j;
}

Element QmodZGroup::random_element(std::mt19937_64& rng) const {
  auto den = std::uniform_int_distribution<std::int64_t>(1, 12)(rng);
  auto num = std::uniform_int_distribution<std::int64_t>(0, den - 1)(rng);
  return make(num, den);
}

std::optional<LinearModel> QmodZGroup::linear_model(std::span<const Element> elems) const {
  BigInt common = 1;
  for (const auto& e : elems) common = lcm(common, BigInt(e.data[1]));
  LinearModel model;
  model.moduli.push_back(common);
  for (const auto& e : elems) model.coords.push_back({BigInt(e.data[0]) * (common / e.data[1])});
  return model;
}

std::string QmodZGroup::literal(const Element& a) const {
  if (a.data[0] == 0) return "0";
  return std::to_string(a.data[0]) + "/" + std::to_string(a.data[1]);
}

Element QmodZGroup::parse_literal(std::string_view text) const {
  auto [num, den] = parse_fraction(text);
  return make(static_cast<std::int64_t>(floor_mod(num, den)), to_int64(den));
}

// ---------------------------------------------------------------- Q

Element FieldAdditiveGroup::make(const BigInt& num, const BigInt& den) {
  if (den == 0) throw ValidationError("zero denominator");
  BigInt n = den < 0 ? BigInt(-num) : num;
  BigInt d = den < 0 ? BigInt(-den) : den;
  BigInt g = gcd(n, d);
  if (n == 0) return Element{0, 1};
  return Element{to_int64(n / g), to_int64(d / g)};
}

Element FieldAdditiveGroup::op(const Element& a, const Element& b) const {
  return make(BigInt(a.data[0]) * b.data[1] + BigInt(b.data[0]) * a.data[1], BigInt(a.data[1]) * b.data[1]);
}

Element FieldAdditiveGroup::inv(const Element& a) const { return make(-BigInt(a.data[0]), a.data[1]); }

Element FieldAdditiveGroup::power(const Element& a, const BigInt& k) const {
  return make(k * a.data[0], a.data[1]);
}

void FieldAdditiveGroup::validate(const Element& a) const {
  if (a.data.size() != 2 || a.data[1] < 1 || std::gcd(a.data[0], a.data[1]) != 1 ||
      (a.data[0] == 0 && a.data[1] != 1))
    throw ValidationError("not a reduced rational");
}

json FieldAdditiveGroup::to_json() const {
  json j;
  j["kind"] = "field_q";
  if (!aliases().empty()) j["aliases"] = aliases_json();
  return j;
}

Element FieldAdditiveGroup::random_element(std::mt19937_64& rng) const {
  return make(std::uniform_int_distribution<std::int64_t>(-6, 6)(rng),
              std::uniform_int_distribution<std::int64_t>(1, 4)(rng));
}

std::optional<LinearModel> FieldAdditiveGroup::linear_model(std::span<const Element> elems) const {
  BigInt common = 1;
  for (const auto& e : elems) common = lcm(common, BigInt(e.data[1]));
  LinearModel model;
  model.moduli.push_back(0);
  for (const auto& e : elems) model.coords.push_back({BigInt(e.data[0]) * (common / e.data[1])});
  return model;
}

std::string FieldAdditiveGroup::literal(const Element& a) const {
  if (a.data[1] == 1) return std::to_string(a.data[0]);
  return std::to_string(a.data[0]) + "/" + std::to_string(a.data[1]);
}

Element FieldAdditiveGroup::parse_literal(std::string_view text) const {
  auto [num, den] = parse_fraction(text);
  return make(num, den);
}

// ---------------------------------------------------------------- semidirect

SemidirectGroup::SemidirectGroup(std::shared_ptr<const FiniteGroup> top, GroupPtr normal, SemidirectAction action)
    : top_(std::move(top)), normal_(std::move(normal)), action_(std::move(action)) {
  validate_action();
}

void SemidirectGroup::validate_action() const {
  const auto k = top_->order();
  if (normal_->kind() == "finite") {
    const auto& h = static_cast<const FiniteGroup&>(*normal_);
    const auto n = h.order();
    if (action_.permutations.size() != k) throw ValidationError("need one permutation per element of T");
    for (const auto& p : action_.permutations) {
      if (p.size() != n) throw ValidationError("action permutation has wrong length");
      std::vector<char> hit(n, 0);
      for (auto v : p) {
        if (v >= n || hit[v]++) throw ValidationError("action is not a permutation of H");
      }
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (p[h.mul(a, b)] != h.mul(p[a], p[b])) throw ValidationError("action is not a homomorphism of H");
    }
  } else if (normal_->kind() == "fgabelian") {
    const auto& h = static_cast<const FgAbelianGroup&>(*normal_);
    const auto w = h.width();
    if (action_.matrices.size() != k) throw ValidationError("need one matrix per element of T");
    for (const auto& m : action_.matrices) {
      if (m.size() != w) throw ValidationError("action matrix has wrong shape");
      for (const auto& row : m)
        if (row.size() != w) throw ValidationError("action matrix has wrong shape");
      // column i must be killed by the order of coordinate i
      for (std::size_t i = h.rank(); i < w; ++i)
        for (std::size_t r = 0; r < w; ++r) {
          BigInt v = BigInt(m[r][i]) * h.modulus(i);
          auto mod = h.modulus(r);
          if (mod == 0 ? v != 0 : floor_mod(v, mod) != 0)
            throw ValidationError("action matrix does not respect torsion orders");
        }
    }
  } else {
    throw ValidationError("semidirect products need a finite or fgabelian normal subgroup");
  }
  // action(1) = id and action(t t') = action(t') o action(t), checked on generators
  auto gens = normal_->generators();
  for (const auto& g : gens) {
    if (act(0, g) != g) throw ValidationError("identity of T must act trivially");
    for (std::size_t t = 0; t < k; ++t)
      for (std::size_t u = 0; u < k; ++u)
        if (act(top_->mul(t, u), g) != act(u, act(t, g)))
          throw ValidationError("action is not compatible with multiplication in T");
  }
}

Element SemidirectGroup::act(std::size_t t, const Element& h) const {
  if (!action_.permutations.empty()) return Element{std::int64_t(action_.permutations[t][h.data[0]])};
  const auto& m = action_.matrices[t];
  const auto& ab = static_cast<const FgAbelianGroup&>(*normal_);
  std::vector<BigInt> out(ab.width(), 0);
  for (std::size_t r = 0; r < ab.width(); ++r)
    for (std::size_t c = 0; c < ab.width(); ++c) out[r] += BigInt(m[r][c]) * h.data[c];
  return ab.reduce(out);
}

Element SemidirectGroup::build(const Element& t, const Element& h) const {
  std::vector<std::int64_t> d;
  d.reserve(1 + h.data.size());
  d.push_back(t.data[0]);
  d.insert(d.end(), h.data.begin(), h.data.end());
  return Element(std::move(d));
}

std::pair<Element, Element> SemidirectGroup::split(const Element& a) const {
  return {Element{a.data[0]}, Element(std::vector<std::int64_t>(a.data.begin() + 1, a.data.end()))};
}

Element SemidirectGroup::identity() const { return build(top_->identity(), normal_->identity()); }

Element SemidirectGroup::op(const Element& a, const Element& b) const {
  auto [t, h] = split(a);
  auto [u, g] = split(b);
  return build(top_->op(t, u), normal_->op(act(top_->index(u), h), g));
}

Element SemidirectGroup::inv(const Element& a) const {
  auto [t, h] = split(a);
  auto ti = top_->inv(t);
  return build(ti, act(top_->index(ti), normal_->inv(h)));
}

bool SemidirectGroup::is_abelian() const {
  if (!top_->is_abelian() || !normal_->is_abelian()) return false;
  for (const auto& g : normal_->generators())
    for (std::size_t t = 0; t < top_->order(); ++t)
      if (act(t, g) != g) return false;
  return true;
}

std::vector<Element> SemidirectGroup::elements() const {
  std::vector<Element> out;
  auto hs = normal_->elements();
  for (const auto& t : top_->elements())
    for (const auto& h : hs) out.push_back(build(t, h));
  return out;
}

std::vector<Element> SemidirectGroup::generators() const {
  std::vector<Element> out;
  for (const auto& t : top_->generators()) out.push_back(build(t, normal_->identity()));
  for (const auto& h : normal_->generators()) out.push_back(build(top_->identity(), h));
  return out;
}

void SemidirectGroup::validate(const Element& a) const {
  if (a.data.empty()) throw ValidationError("empty semidirect element");
  auto [t, h] = split(a);
  top_->validate(t);
  normal_->validate(h);
}

json SemidirectGroup::to_json() const {
  json j;
  j["kind"] = "semidirect";
  j["T"] = top_->to_json();
  j["H"] = normal_->to_json();
  if (!action_.permutations.empty())
    j["action"] = action_.permutations;
  else
    j["action"] = action_.matrices;
  if (!aliases().empty()) j["aliases"] = aliases_json();
  return j;
}

Element SemidirectGroup::random_element(std::mt19937_64& rng) const {
  return build(top_->random_element(rng), normal_->random_element(rng));
}

std::string SemidirectGroup::literal(const Element& a) const {
  auto [t, h] = split(a);
  return "(" + top_->serialize(t) + "," + normal_->serialize(h) + ")";
}

Element SemidirectGroup::parse_literal(std::string_view text) const {
  auto parts = split_top_level(strip_parens(text, '(', ')', "semidirect"));
  if (parts.size() != 2) throw ValidationError("semidirect literal needs two parts: '" + std::string(text) + "'");
  return build(top_->parse_element(parts[0]), normal_->parse_element(parts[1]));
}

// ---------------------------------------------------------------- product

ProductGroup::ProductGroup(GroupPtr left, GroupPtr right) : left_(std::move(left)), right_(std::move(right)) {}

Element ProductGroup::pack(const Element& a, const Element& b) {
  std::vector<std::int64_t> d;
  d.reserve(1 + a.data.size() + b.data.size());
  d.push_back(static_cast<std::int64_t>(a.data.size()));
  d.insert(d.end(), a.data.begin(), a.data.end());
  d.insert(d.end(), b.data.begin(), b.data.end());
  return Element(std::move(d));
}

std::pair<Element, Element> ProductGroup::unpack(const Element& a) const {
  auto n = static_cast<std::size_t>(a.data.at(0));
  if (n + 1 > a.data.size()) throw ValidationError("malformed product element");
  return {Element(std::vector<std::int64_t>(a.data.begin() + 1, a.data.begin() + 1 + n)),
          Element(std::vector<std::int64_t>(a.data.begin() + 1 + n, a.data.end()))};
}

Element ProductGroup::op(const Element& a, const Element& b) const {
  auto [a1, a2] = unpack(a);
  auto [b1, b2] = unpack(b);
  return pack(left_->op(a1, b1), right_->op(a2, b2));
}

Element ProductGroup::inv(const Element& a) const {
  auto [a1, a2] = unpack(a);
  return pack(left_->inv(a1), right_->inv(a2));
}

bool ProductGroup::eq(const Element& a, const Element& b) const {
  auto [a1, a2] = unpack(a);
  auto [b1, b2] = unpack(b);
  return left_->eq(a1, b1) && right_->eq(a2, b2);
}

Element ProductGroup::power(const Element& a, const BigInt& k) const {
  auto [a1, a2] = unpack(a);
  return pack(left_->power(a1, k), right_->power(a2, k));
}

std::vector<Element> ProductGroup::elements() const {
  std::vector<Element> out;
  auto bs = right_->elements();
  for (const auto& a : left_->elements())
    for (const auto& b : bs) out.push_back(pack(a, b));
  return out;
}

std::vector<Element> ProductGroup::generators() const {
  std::vector<Element> out;
  for (const auto& a : left_->generators()) out.push_back(pack(a, right_->identity()));
  for (const auto& b : right_->generators()) out.push_back(pack(left_->identity(), b));
  return out;
}

void ProductGroup::validate(const Element& a) const {
  auto [a1, a2] = unpack(a);
  left_->validate(a1);
  right_->validate(a2);
}

json ProductGroup::to_json() const {
  json j;
  j["kind"] = "product";
  j["left"] = left_->to_json();
  j["right"] = right_->to_json();
  if (!aliases().empty()) j["aliases"] = aliases_json();
  return j;
}

Element ProductGroup::random_element(std::mt19937_64& rng) const {
  auto a = left_->random_element(rng);
  return pack(a, right_->random_element(rng));
}

std::optional<LinearModel> ProductGroup::linear_model(std::span<const Element> elems) const {
  std::vector<Element> as, bs;
  for (const auto& e : elems) {
    auto [a, b] = unpack(e);
    as.push_back(std::move(a));
    bs.push_back(std::move(b));
  }
  auto ma = left_->linear_model(as);
  auto mb = right_->linear_model(bs);
  if (!ma || !mb) return std::nullopt;
  LinearModel out;
  out.moduli = ma->moduli;
  out.moduli.insert(out.moduli.end(), mb->moduli.begin(), mb->moduli.end());
  for (std::size_t i = 0; i < elems.size(); ++i) {
    auto c = ma->coords[i];
    c.insert(c.end(), mb->coords[i].begin(), mb->coords[i].end());
    out.coords.push_back(std::move(c));
  }
  return out;
}

std::string ProductGroup::literal(const Element& a) const {
  auto [a1, a2] = unpack(a);
  return "(" + left_->serialize(a1) + "," + right_->serialize(a2) + ")";
}

Element ProductGroup::parse_literal(std::string_view text) const {
  auto parts = split_top_level(strip_parens(text, '(', ')', "product"));
  if (parts.size() != 2) throw ValidationError("product literal needs two parts: '" + std::string(text) + "'");
  return pack(left_->parse_element(parts[0]), right_->parse_element(parts[1]));
}

// ---------------------------------------------------------------- factories

std::shared_ptr<FiniteGroup> make_cyclic(std::size_t n, std::string generator) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i)
    names.push_back(i == 0 ? "e" : i == 1 ? generator : generator + std::to_string(i));
  std::vector<std::vector<std::uint32_t>> t(n, std::vector<std::uint32_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a][b] = static_cast<std::uint32_t>((a + b) % n);
  std::vector<std::string> gens;
  if (n > 1) gens.push_back(names[1]);
  return std::make_shared<FiniteGroup>(std::move(names), std::move(t), std::move(gens));
}

std::shared_ptr<FiniteGroup> make_dihedral(std::size_t n) {
  // index f*n + i stands for s^f r^i
  auto name = [n](std::size_t f, std::size_t i) -> std::string {
    std::string r = i == 0 ? "" : i == 1 ? "r" : "r" + std::to_string(i);
    if (f == 0) return i == 0 ? "e" : r;
    return "s" + r;
  };
  std::vector<std::string> names;
  for (std::size_t f = 0; f < 2; ++f)
    for (std::size_t i = 0; i < n; ++i) names.push_back(name(f, i));
  std::vector<std::vector<std::uint32_t>> t(2 * n, std::vector<std::uint32_t>(2 * n));
  for (std::size_t a = 0; a < 2 * n; ++a)
    for (std::size_t b = 0; b < 2 * n; ++b) {
      std::size_t fa = a / n, ia = a % n, fb = b / n, ib = b % n;
      std::size_t i = ((fb ? n - ia : ia) + ib) % n;
      t[a][b] = static_cast<std::uint32_t>(((fa + fb) % 2) * n + i);
    }
  return std::make_shared<FiniteGroup>(std::move(names), std::move(t), std::vector<std::string>{"r", "s"});
}

std::shared_ptr<FiniteGroup> make_symmetric3() {
  // permutations of {0,1,2}, composed left to right: (p*q)(x) = q(p(x))
  std::vector<std::array<int, 3>> perms = {{0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
  std::vector<std::string> names = {"e", "(12)", "(13)", "(23)", "(123)", "(132)"};
  std::vector<std::vector<std::uint32_t>> t(6, std::vector<std::uint32_t>(6));
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) {
      std::array<int, 3> c{};
      for (int x = 0; x < 3; ++x) c[x] = perms[b][perms[a][x]];
      t[a][b] = static_cast<std::uint32_t>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return std::make_shared<FiniteGroup>(std::move(names), std::move(t), std::vector<std::string>{"(12)", "(123)"});
}

std::shared_ptr<FiniteGroup> tabulate(const GroupBackend& g) {
  const auto& t = g.cayley();
  std::vector<std::string> names;
  for (const auto& e : t.elements) names.push_back(g.serialize(e));
  std::vector<std::vector<std::uint32_t>> rows(t.order, std::vector<std::uint32_t>(t.order));
  for (std::size_t a = 0; a < t.order; ++a)
    for (std::size_t b = 0; b < t.order; ++b) rows[a][b] = t.op(std::uint16_t(a), std::uint16_t(b));
  std::vector<std::string> gens;
  for (const auto& e : g.generators()) gens.push_back(g.serialize(e));
  return std::make_shared<FiniteGroup>(std::move(names), std::move(rows), std::move(gens));
}

std::shared_ptr<SemidirectGroup> make_dihedral_split(std::size_t n) {
  auto top = make_cyclic(2, "f");
  auto normal = make_cyclic(n, "r");
  SemidirectAction action;
  std::vector<std::uint32_t> id(n), neg(n);
  for (std::size_t i = 0; i < n; ++i) {
    id[i] = static_cast<std::uint32_t>(i);
    neg[i] = static_cast<std::uint32_t>((n - i) % n);
  }
  action.permutations = {id, neg};
  auto g = std::make_shared<SemidirectGroup>(top, normal, action);
  std::map<std::string, Element> aliases;
  for (std::size_t f = 0; f < 2; ++f)
    for (std::size_t i = 0; i < n; ++i) {
      std::string name = (f ? std::string("f") : std::string()) + (i ? normal->names()[i] : std::string());
      if (name.empty()) name = "e";
      aliases[name] = g->build(Element{std::int64_t(f)}, Element{std::int64_t(i)});
    }
  g->set_aliases(std::move(aliases));
  return g;
}

std::shared_ptr<SemidirectGroup> make_negation_split(std::size_t rank) {
  auto top = make_cyclic(2, "t");
  auto normal = std::make_shared<FgAbelianGroup>(rank, std::vector<std::int64_t>{});
  SemidirectAction action;
  std::vector<std::vector<std::int64_t>> id(rank, std::vector<std::int64_t>(rank, 0)), neg = id;
  for (std::size_t i = 0; i < rank; ++i) {
    id[i][i] = 1;
    neg[i][i] = -1;
  }
  action.matrices = {id, neg};
  return std::make_shared<SemidirectGroup>(top, normal, action);
}

}  // namespace eqgeo
