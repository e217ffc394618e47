#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "eqgeo/group.hpp"

namespace eqgeo {

// A variable occurrence x_var^exp (var >= 1, exp = +-1) or a coefficient
// (var == 0).
struct Letter {
  std::uint32_t var = 0;
  std::int8_t exp = 1;
  Element coef;

  static Letter variable(std::uint32_t index, int exponent = 1) {
    return Letter{index, static_cast<std::int8_t>(exponent), {}};
  }
  static Letter coefficient(Element e) { return Letter{0, 1, std::move(e)}; }

  bool is_variable() const { return var != 0; }
  bool operator==(const Letter&) const = default;
};

// Element of G[X] = G * F(x_1..x_n) in free-product normal form. Immutable
// value type; every constructor path goes through normalize().
class Word {
 public:
  Word(GroupPtr group, std::size_t arity) : group_(std::move(group)), arity_(arity) {}

  // Free reduction plus coefficient merging. Throws ArityError for variables
  // beyond the arity.
  static Word normalize(GroupPtr group, std::size_t arity, std::span<const Letter> raw);
  static Word variable(GroupPtr group, std::size_t arity, std::uint32_t index, int exponent = 1);
  static Word coefficient(GroupPtr group, std::size_t arity, const Element& g);

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  std::size_t arity() const { return arity_; }
  const GroupBackend& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }

  Word operator*(const Word& other) const;
  Word inverse() const;
  Word pow(std::int64_t k) const;

  // Same arity and same letter sequence.
  bool operator==(const Word& other) const { return arity_ == other.arity_ && letters_ == other.letters_; }

 private:
  GroupPtr group_;
  std::size_t arity_;
  std::vector<Letter> letters_;
};

inline Word multiply(const Word& u, const Word& v) { return u * v; }
inline Word invert(const Word& u) { return u.inverse(); }

// Homomorphism G[X] -> G'[Y] given on letters. var_image(i) is the image of
// x_i; coef_image(g) the image of the coefficient g.
Word map_word(const Word& w, GroupPtr target, std::size_t target_arity,
              const std::function<Word(std::uint32_t)>& var_image,
              const std::function<Word(const Element&)>& coef_image);

// Replaces x_i by sigma[i-1]; coefficients are kept. All present images must
// share one arity; a variable of w without an image raises ValidationError.
Word substitute(const Word& w, const std::vector<std::optional<Word>>& sigma);
Word substitute(const Word& w, const std::vector<Word>& sigma);

// Coefficient embedding G -> H; an empty function means the identity map.
using Embedding = std::function<Element(const Element&)>;

Element evaluate(const Word& w, std::span<const Element> v, const GroupBackend& target,
                 const Embedding& iota = {});
// Diophantine evaluation (target = coefficient group).
Element evaluate(const Word& w, std::span<const Element> v);

// Net exponent of every variable.
std::vector<std::int64_t> exponent_sums(const Word& w);

}  // namespace eqgeo
