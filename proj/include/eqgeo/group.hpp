#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "eqgeo/bigint.hpp"

namespace eqgeo {

using json = nlohmann::json;

// Opaque handle for an element of some backend. Every backend keeps its
// handles canonical, so handle equality is element equality except for the
// quotient backend, which overrides GroupBackend::eq.
struct Element {
  std::vector<std::int64_t> data;

  Element() = default;
  explicit Element(std::vector<std::int64_t> d) : data(std::move(d)) {}
  Element(std::initializer_list<std::int64_t> d) : data(d) {}

  bool operator==(const Element&) const = default;
  auto operator<=>(const Element&) const = default;
};

struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept;
};

using Tuple = std::vector<Element>;

struct TupleHash {
  std::size_t operator()(const Tuple& t) const noexcept;
};

// Dense multiplication table of a finite backend, indexed by position in
// elements(). Index 0 is always the identity.
struct CayleyTable {
  std::size_t order = 0;
  std::vector<std::uint16_t> mul;
  std::vector<std::uint16_t> inv;
  std::vector<Element> elements;
  std::unordered_map<Element, std::uint16_t, ElementHash> index;

  std::uint16_t op(std::uint16_t a, std::uint16_t b) const { return mul[std::size_t(a) * order + b]; }
  std::uint16_t index_of(const Element& e) const;
};

// Integer coordinates for a finite family of elements of an abelian backend:
// sum_i a_i * e_i is trivial iff, for every coordinate k,
// sum_i a_i * coords[i][k] == 0 modulo moduli[k] (modulus 0 means over Z).
struct LinearModel {
  std::vector<std::vector<BigInt>> coords;
  std::vector<BigInt> moduli;
};

inline constexpr std::size_t kMaxTabulatedOrder = 4096;

class GroupBackend {
 public:
  virtual ~GroupBackend() = default;

  virtual std::string kind() const = 0;
  virtual Element identity() const = 0;
  virtual Element op(const Element& a, const Element& b) const = 0;
  virtual Element inv(const Element& a) const = 0;
  virtual bool eq(const Element& a, const Element& b) const { return a == b; }
  bool is_identity(const Element& a) const { return eq(a, identity()); }

  // a^k; negative k uses the inverse.
  virtual Element power(const Element& a, const BigInt& k) const;

  virtual bool is_finite() const = 0;
  virtual bool is_abelian() const = 0;
  // Only meaningful when is_finite().
  virtual std::uint64_t order() const;
  virtual std::vector<Element> elements() const;
  // A generating set; empty for backends that are not finitely generated.
  virtual std::vector<Element> generators() const = 0;

  virtual std::string serialize(const Element& a) const;
  virtual Element parse_element(std::string_view text) const;
  // Throws ValidationError if a is not a canonical handle of this backend.
  virtual void validate(const Element& a) const = 0;

  virtual json to_json() const = 0;

  virtual Element random_element(std::mt19937_64& rng) const = 0;

  // Abelian backends with exact integer linear algebra return a model.
  virtual std::optional<LinearModel> linear_model(std::span<const Element> elems) const;

  // Exponent of the group if known and finite, 0 when the group has elements
  // of infinite order.
  virtual BigInt exponent() const;

  // Lazily computed, thread-safe; throws if not finite or too large.
  const CayleyTable& cayley() const;

  void set_aliases(std::map<std::string, Element> aliases);
  const std::map<std::string, Element>& aliases() const { return aliases_; }

 protected:
  virtual std::string literal(const Element& a) const = 0;
  virtual Element parse_literal(std::string_view text) const = 0;
  json aliases_json() const;

 private:
  std::map<std::string, Element> aliases_;
  mutable std::once_flag table_once_;
  mutable std::unique_ptr<CayleyTable> table_;
};

using GroupPtr = std::shared_ptr<const GroupBackend>;

// True if name can appear after "g:" in word text.
bool is_valid_element_name(std::string_view name);

// Splits "a,b,(c,d)" at top-level commas.
std::vector<std::string> split_top_level(std::string_view text, char separator = ',');

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::string hex64(std::uint64_t v);

}  // namespace eqgeo
