#pragma once

#include <span>
#include <string>
#include <string_view>

#include "eqgeo/word.hpp"

namespace eqgeo {

// How variable atoms are spelled.
//   X:  x1 .. xn
//   Y:  y:i:j, the flattened index (i-1)*k + j of a primed tuple
//   TX: t is variable 1 and xi is variable i+1 (words in G[t, X])
enum class VarStyle { X, Y, TX };

struct VarNaming {
  VarStyle style = VarStyle::X;
  std::size_t k = 1;
};

// Grammar: word := term { ("*" | ws) term } | "1"; term := atom ["^" integer].
// Integer exponents on variables are expanded into repeated letters (capped
// at kMaxExpandedLetters); exponents on coefficients are applied in G.
Word parse_word(std::string_view text, GroupPtr group, std::size_t arity, VarNaming naming = {});
std::string print_word(const Word& w, VarNaming naming = {});

inline constexpr std::size_t kMaxExpandedLetters = 1'000'000;

// w = x_1^alpha_1 ... x_n^alpha_n * c in an abelian target: evaluates to
// sum alpha_i v_i + c.
struct LinearizedWord {
  std::vector<BigInt> alpha;
  Element c;

  bool operator==(const LinearizedWord&) const = default;
};

// Parses word text over an abelian group without expanding exponents.
LinearizedWord parse_linear(std::string_view text, const GroupBackend& g, std::size_t arity);
LinearizedWord linearize(const Word& w);
std::string print_linear(const LinearizedWord& w, const GroupBackend& g);
Element evaluate_linear(const LinearizedWord& w, std::span<const Element> v, const GroupBackend& g);
// Expands into a word; fails with ValidationError past kMaxExpandedLetters.
Word expand_linear(const LinearizedWord& w, GroupPtr g);

// Tuples are JSON arrays of element literals; arity-1 tuples may be a bare
// literal.
Tuple parse_tuple(const json& j, const GroupBackend& g, std::size_t arity);
json tuple_to_json(const Tuple& t, const GroupBackend& g);
// Comma separated element literals, e.g. "(f,e),(e,r)".
Tuple parse_tuple_text(std::string_view text, const GroupBackend& g);

}  // namespace eqgeo
