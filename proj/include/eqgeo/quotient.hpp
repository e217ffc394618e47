#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "eqgeo/word.hpp"

namespace eqgeo {

// R = union of Rad_G(K_i) inside G[t] for finite G and finite non-empty K_i.
// Words in G[t] have arity 1; variable 1 is t.
struct RadicalUnion {
  GroupPtr group;
  std::vector<std::vector<Element>> parts;

  RadicalUnion(GroupPtr g, std::vector<std::vector<Element>> parts);
  // {"group": <inline or path>, "parts": [["a"], ["b", "ab"]]}
  static RadicalUnion from_json(const json& j, const std::filesystem::path& base_dir = {});
  json to_json() const;
};

struct Membership {
  bool member = false;
  std::optional<std::size_t> part;            // first part on which u vanishes
  std::vector<std::pair<Element, Element>> failures;  // per part: (g, u(g)) with u(g) != 1

  json to_json(const GroupBackend& g) const;
};

Membership r_membership(const Word& u, const RadicalUnion& r);

// Closure of R under products, tested on `samples` random member pairs.
struct UnionValidation {
  bool closed = true;
  std::optional<std::pair<Word, Word>> counterexample;
};
UnionValidation validate_union(const RadicalUnion& r, std::size_t samples = 10'000, std::uint64_t seed = 0x9e3779b9);

// G[t]/R as a backend. Handles encode a normalized word of G[t]:
// -1 for t, -2 for t^-1, otherwise the Cayley index of a coefficient.
// Equality is decided by r_membership, so handles are not canonical.
class QuotientGroup final : public GroupBackend {
 public:
  // Validates R by sampling; throws ValidationError with the failing pair.
  explicit QuotientGroup(RadicalUnion r, bool validate = true);

  std::string kind() const override { return "quotient"; }
  Element identity() const override { return Element{}; }
  Element op(const Element& a, const Element& b) const override;
  Element inv(const Element& a) const override;
  bool eq(const Element& a, const Element& b) const override;
  Element power(const Element& a, const BigInt& k) const override;
  bool is_finite() const override { return false; }
  bool is_abelian() const override { return false; }
  std::vector<Element> generators() const override;
  void validate(const Element& a) const override;
  json to_json() const override;
  Element random_element(std::mt19937_64& rng) const override;

  const RadicalUnion& radical_union() const { return r_; }
  Word to_word(const Element& a) const;
  Element from_word(const Word& w) const;

 protected:
  std::string literal(const Element& a) const override;
  Element parse_literal(std::string_view text) const override;

 private:
  RadicalUnion r_;
};

bool quotient_eq(const Word& p, const Word& q, const RadicalUnion& r);
Word quotient_op(const Word& p, const Word& q);
Word quotient_inv(const Word& p);

// q: G[t, X] -> H[X] with variable 1 of w being t and variable i+1 being x_i.
Word q_map(const Word& w, const std::shared_ptr<const QuotientGroup>& h);
Tuple psi_map(const std::vector<Word>& u, const QuotientGroup& h);

// w(u) computed in G[t]: x_i -> u_i, t kept.
Word evaluate_in_gt(const Word& w, const std::vector<Word>& u);

}  // namespace eqgeo
