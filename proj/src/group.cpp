#include "eqgeo/group.hpp"

#include <cctype>
#include <cstdio>

#include "eqgeo/errors.hpp"

namespace eqgeo {

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::size_t ElementHash::operator()(const Element& e) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (auto x : e.data) {
    h ^= static_cast<std::uint64_t>(x);
    h *= 0x100000001b3ULL;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

std::size_t TupleHash::operator()(const Tuple& t) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  ElementHash eh;
  for (const auto& e : t) h = (h ^ eh(e)) * 0x100000001b3ULL;
  return h;
}

std::uint16_t CayleyTable::index_of(const Element& e) const {
  auto it = index.find(e);
  if (it == index.end()) throw ValidationError("element is not in the tabulated group");
  return it->second;
}

Element GroupBackend::power(const Element& a, const BigInt& k) const {
  Element base = k < 0 ? inv(a) : a;
  BigInt e = k < 0 ? BigInt(-k) : k;
  Element result = identity();
  while (e > 0) {
    if ((e & 1) != 0) result = op(result, base);
    e >>= 1;
    if (e > 0) base = op(base, base);
  }
  return result;
}

std::uint64_t GroupBackend::order() const {
  throw Undecided(kind() + " backend is infinite");
}

std::vector<Element> GroupBackend::elements() const {
  throw Undecided(kind() + " backend cannot enumerate its elements");
}

std::optional<LinearModel> GroupBackend::linear_model(std::span<const Element>) const { return std::nullopt; }

BigInt GroupBackend::exponent() const {
  if (!is_finite()) return 0;
  const auto& t = cayley();
  BigInt ex = 1;
  for (std::uint16_t a = 1; a < t.order; ++a) {
    std::uint64_t ord = 1;
    for (std::uint16_t x = a; x != 0; x = t.op(x, a)) ++ord;
    ex = lcm(ex, BigInt(ord));
  }
  return ex;
}

const CayleyTable& GroupBackend::cayley() const {
  std::call_once(table_once_, [this] {
    if (!is_finite()) throw Undecided(kind() + " backend is infinite; no Cayley table");
    auto elems = elements();
    if (elems.size() > kMaxTabulatedOrder)
      throw BudgetExceeded("group of order " + std::to_string(elems.size()) + " is too large to tabulate");
    auto t = std::make_unique<CayleyTable>();
    t->order = elems.size();
    t->elements = std::move(elems);
    for (std::size_t i = 0; i < t->order; ++i) t->index.emplace(t->elements[i], static_cast<std::uint16_t>(i));
    if (t->elements.empty() || !is_identity(t->elements[0]))
      throw ValidationError("elements() must list the identity first");
    t->mul.resize(t->order * t->order);
    t->inv.resize(t->order);
    for (std::size_t a = 0; a < t->order; ++a) {
      for (std::size_t b = 0; b < t->order; ++b)
        t->mul[a * t->order + b] = t->index_of(op(t->elements[a], t->elements[b]));
      t->inv[a] = t->index_of(inv(t->elements[a]));
    }
    table_ = std::move(t);
  });
  if (!table_) throw Undecided(kind() + " backend has no Cayley table");
  return *table_;
}

void GroupBackend::set_aliases(std::map<std::string, Element> aliases) {
  for (const auto& [name, e] : aliases) {
    if (!is_valid_element_name(name)) throw ValidationError("invalid element name '" + name + "'");
    validate(e);
  }
  aliases_ = std::move(aliases);
}

json GroupBackend::aliases_json() const {
  json j = json::object();
  for (const auto& [name, e] : aliases_) j[name] = literal(e);
  return j;
}

std::string GroupBackend::serialize(const Element& a) const {
  for (const auto& [name, e] : aliases_)
    if (e == a) return name;
  return literal(a);
}

Element GroupBackend::parse_element(std::string_view text) const {
  if (auto it = aliases_.find(std::string(text)); it != aliases_.end()) return it->second;
  Element e = parse_literal(text);
  validate(e);
  return e;
}

bool is_valid_element_name(std::string_view name) {
  if (name.empty()) return false;
  int depth = 0;
  for (char c : name) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '*' || c == '^' || c == '"') return false;
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (depth < 0) return false;
  }
  return depth == 0;
}

std::vector<std::string> split_top_level(std::string_view text, char separator) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : text) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == separator && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace eqgeo
