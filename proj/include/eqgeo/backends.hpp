#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "eqgeo/group.hpp"

namespace eqgeo {

// Group given by its Cayley table. Element handle: {index}; index 0 is the
// identity.
class FiniteGroup final : public GroupBackend {
 public:
  FiniteGroup(std::vector<std::string> names, std::vector<std::vector<std::uint32_t>> table,
              std::vector<std::string> generator_names = {});

  std::string kind() const override { return "finite"; }
  Element identity() const override { return Element{0}; }
  Element op(const Element& a, const Element& b) const override {
    return Element{std::int64_t(table_[a.data[0] * order_ + b.data[0]])};
  }
  Element inv(const Element& a) const override { return Element{std::int64_t(inverse_[a.data[0]])}; }
  bool is_finite() const override { return true; }
  bool is_abelian() const override { return abelian_; }
  std::uint64_t order() const override { return order_; }
  std::vector<Element> elements() const override;
  std::vector<Element> generators() const override;
  void validate(const Element& a) const override;
  json to_json() const override;
  Element random_element(std::mt19937_64& rng) const override;

  std::size_t index(const Element& a) const { return static_cast<std::size_t>(a.data[0]); }
  const std::vector<std::string>& names() const { return names_; }
  std::uint32_t mul(std::size_t a, std::size_t b) const { return table_[a * order_ + b]; }
  std::size_t find(std::string_view name) const;

 protected:
  std::string literal(const Element& a) const override { return names_[index(a)]; }
  Element parse_literal(std::string_view text) const override;

 private:
  std::size_t order_;
  std::vector<std::string> names_;
  std::vector<std::uint32_t> table_;
  std::vector<std::uint32_t> inverse_;
  std::vector<std::size_t> generators_;
  bool abelian_ = true;
};

// Z^r + Z/d_1 + ... + Z/d_s with d_1 | d_2 | ... Element handle: the r+s
// coordinates, torsion coordinates reduced into [0, d_i).
class FgAbelianGroup final : public GroupBackend {
 public:
  FgAbelianGroup(std::size_t rank, std::vector<std::int64_t> torsion);

  std::string kind() const override { return "fgabelian"; }
  Element identity() const override { return Element(std::vector<std::int64_t>(width(), 0)); }
  Element op(const Element& a, const Element& b) const override;
  Element inv(const Element& a) const override;
  Element power(const Element& a, const BigInt& k) const override;
  bool is_finite() const override { return rank_ == 0; }
  bool is_abelian() const override { return true; }
  std::uint64_t order() const override;
  std::vector<Element> elements() const override;
  std::vector<Element> generators() const override;
  void validate(const Element& a) const override;
  json to_json() const override;
  Element random_element(std::mt19937_64& rng) const override;
  std::optional<LinearModel> linear_model(std::span<const Element> elems) const override;
  BigInt exponent() const override;

  std::size_t rank() const { return rank_; }
  const std::vector<std::int64_t>& torsion() const { return torsion_; }
  std::size_t width() const { return rank_ + torsion_.size(); }
  // 0 for free coordinates.
  std::int64_t modulus(std::size_t coord) const { return coord < rank_ ? 0 : torsion_[coord - rank_]; }
  // Reduces torsion coordinates; throws on overflow of free ones.
  Element reduce(const std::vector<BigInt>& coords) const;

 protected:
  std::string literal(const Element& a) const override;
  Element parse_literal(std::string_view text) const override;

 private:
  std::size_t rank_;
  std::vector<std::int64_t> torsion_;
};

// Additive group Q/Z. Element handle: {a, b} with 0 <= a < b, gcd(a, b) = 1.
class QmodZGroup final : public GroupBackend {
 public:
  QmodZGroup() = default;
  std::string kind() const override { return "qmodz"; }
  Element identity() const override { return Element{0, 1}; }
  Element op(const Element& a, const Element& b) const override;
  Element inv(const Element& a) const override;
  Element power(const Element& a, const BigInt& k) const override;
  bool is_finite() const override { return false; }
  bool is_abelian() const override { return true; }
  std::vector<Element> generators() const override { return {}; }
  void validate(const Element& a) const override;
  json to_json() const override;
  Element random_element(std::mt19937_64& rng) const override;
  std::optional<LinearModel> linear_model(std::span<const Element> elems) const override;

  static Element make(std::int64_t num, std::int64_t den);
  // Additive order of a: its reduced denominator.
  static std::int64_t element_order(const Element& a) { return a.data[1]; }

 protected:
  std::string literal(const Element& a) const override;
  Element parse_literal(std::string_view text) const override;
};

// Additive group of the rationals. Element handle: {num, den}, den > 0,
// gcd(num, den) = 1.
class FieldAdditiveGroup final : public GroupBackend {
 public:
  FieldAdditiveGroup() = default;
  std::string kind() const override { return "field_q"; }
  Element identity() const override { return Element{0, 1}; }
  Element op(const Element& a, const Element& b) const override;
  Element inv(const Element& a) const override;
  Element power(const Element& a, const BigInt& k) const override;
  bool is_finite() const override { return false; }
  bool is_abelian() const override { return true; }
  std::vector<Element> generators() const override { return {}; }
  void validate(const Element& a) const override;
  json to_json() const override;
  Element random_element(std::mt19937_64& rng) const override;
  std::optional<LinearModel> linear_model(std::span<const Element> elems) const override;

  static Element make(const BigInt& num, const BigInt& den);

 protected:
  std::string literal(const Element& a) const override;
  Element parse_literal(std::string_view text) const override;
};

// One automorphism of H per element of T, in T's index order.
struct SemidirectAction {
  // For finite H: action[t][h] = index of the image of h.
  std::vector<std::vector<std::uint32_t>> permutations;
  // For fgabelian H: square integer matrices acting on coordinate columns.
  std::vector<std::vector<std::vector<std::int64_t>>> matrices;
};

// T x| H with (t, h)(t', h') = (tt', action(t')(h) h'), i.e. t^-1 h t is
// action(t)(h). Element handle: {t index, h handle...}.
class SemidirectGroup final : public GroupBackend {
 public:
  SemidirectGroup(std::shared_ptr<const FiniteGroup> top, GroupPtr normal, SemidirectAction action);

  std::string kind() const override { return "semidirect"; }
  Element identity() const override;
  Element op(const Element& a, const Element& b) const override;
  Element inv(const Element& a) const override;
  bool is_finite() const override { return normal_->is_finite(); }
  bool is_abelian() const override;
  std::uint64_t order() const override { return top_->order() * normal_->order(); }
  std::vector<Element> elements() const override;
  std::vector<Element> generators() const override;
  void validate(const Element& a) const override;
  json to_json() const override;
  Element random_element(std::mt19937_64& rng) const override;

  const FiniteGroup& top() const { return *top_; }
  const std::shared_ptr<const FiniteGroup>& top_ptr() const { return top_; }
  const GroupBackend& normal() const { return *normal_; }
  const GroupPtr& normal_ptr() const { return normal_; }
  const SemidirectAction& action() const { return action_; }

  // action(t)(h) = t^-1 h t.
  Element act(std::size_t t, const Element& h) const;
  std::pair<Element, Element> split(const Element& a) const;
  Element build(const Element& t, const Element& h) const;

 protected:
  std::string literal(const Element& a) const override;
  Element parse_literal(std::string_view text) const override;

 private:
  void validate_action() const;

  std::shared_ptr<const FiniteGroup> top_;
  GroupPtr normal_;
  SemidirectAction action_;
};

// Direct product A x B. Element handle: {len(a), a..., b...}.
class ProductGroup final : public GroupBackend {
 public:
  ProductGroup(GroupPtr left, GroupPtr right);

  std::string kind() const override { return "product"; }
  Element identity() const override { return pack(left_->identity(), right_->identity()); }
  Element op(const Element& a, const Element& b) const override;
  Element inv(const Element& a) const override;
  bool eq(const Element& a, const Element& b) const override;
  Element power(const Element& a, const BigInt& k) const override;
  bool is_finite() const override { return left_->is_finite() && right_->is_finite(); }
  bool is_abelian() const override { return left_->is_abelian() && right_->is_abelian(); }
  std::uint64_t order() const override { return left_->order() * right_->order(); }
  std::vector<Element> elements() const override;
  std::vector<Element> generators() const override;
  void validate(const Element& a) const override;
  json to_json() const override;
  Element random_element(std::mt19937_64& rng) const override;
  std::optional<LinearModel> linear_model(std::span<const Element> elems) const override;

  const GroupPtr& left() const { return left_; }
  const GroupPtr& right() const { return right_; }
  static Element pack(const Element& a, const Element& b);
  std::pair<Element, Element> unpack(const Element& a) const;

 protected:
  std::string literal(const Element& a) const override;
  Element parse_literal(std::string_view text) const override;

 private:
  GroupPtr left_;
  GroupPtr right_;
};

// Convenience constructors used by tests, demos and the CLI.
std::shared_ptr<FiniteGroup> make_cyclic(std::size_t n, std::string generator = "a");
std::shared_ptr<FiniteGroup> make_dihedral(std::size_t n);  // order 2n, names r^i and s r^i
std::shared_ptr<FiniteGroup> make_symmetric3();             // S3 with cycle names
// Cayley table of any finite backend, element names from serialize().
std::shared_ptr<FiniteGroup> tabulate(const GroupBackend& g);
// Z/2 x| Z/n by inversion, T = {1, f}, H = Z/n written r^i.
std::shared_ptr<SemidirectGroup> make_dihedral_split(std::size_t n);
// Z/2 x| Z^rank with t acting by negation, T = {e, t}.
std::shared_ptr<SemidirectGroup> make_negation_split(std::size_t rank);

}  // namespace eqgeo
