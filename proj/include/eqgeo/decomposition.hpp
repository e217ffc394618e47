#pragma once

#include <memory>
#include <vector>

#include "eqgeo/backends.hpp"
#include "eqgeo/radical.hpp"
#include "eqgeo/word.hpp"

namespace eqgeo {

// v = (s_1 h_1, ..., s_n h_n) with s in T^n, h in H^n.
struct LambdaSplit {
  Tuple s;
  Tuple h;
};

LambdaSplit lambda_split(const SemidirectGroup& a, const Tuple& v);

// (h_11..h_1k, ..., h_n1..h_nk) with h_ij = t_j^-1 h_i t_j, t_j the (j-1)-th
// element of T (so t_1 = 1).
Tuple prime_tuple(const SemidirectGroup& a, const Tuple& h);

// w(v) = wbar(lambda(v)) * wprime(v') whenever lambda(v) = lambda.
struct SplitWordPair {
  Word wbar;    // over T, arity n
  Word wprime;  // over H, arity n*k, printed with y:i:j
  Tuple lambda;

  json to_json(const SemidirectGroup& a) const;
};

// T-image of w: variables kept, coefficients replaced by their T-parts.
Word bar_word(const Word& w);
SplitWordPair decompose_word(const Word& w, const Tuple& s);

// E0 as the union of per-lambda-class witnesses on primed tuples.
WitnessCertificate witness_finite_extension(const TupleSet& e, const CoefficientMode& mode = {},
                                            std::size_t budget = 0);
WitnessCertificate witness_finite_extension_tuples(const GroupPtr& a, std::size_t arity, const std::vector<Tuple>& e,
                                                   const CoefficientMode& mode, std::size_t budget);

// Sufficient test for Rad(E0) = Rad(E) over T x| H: same lambda classes and
// equal primed H-radicals class by class. False means "not shown".
bool classwise_equal(const GroupPtr& a, std::size_t arity, const std::vector<Tuple>& e0, const std::vector<Tuple>& e,
                     const CoefficientMode& mode);

// A embedded in core(H) wr A/core(H), realized as a semidirect product over
// the coset group with the coordinate-permuting action.
struct WreathEmbedding {
  std::shared_ptr<SemidirectGroup> group;
  std::vector<Element> core;    // elements of A
  std::vector<Element> images;  // images[i] is the image of A's i-th element

  Element operator()(const Element& a) const { return images[static_cast<std::size_t>(a.data[0])]; }
};

WreathEmbedding wreath_embed(const std::shared_ptr<const FiniteGroup>& a, const std::vector<Element>& h);

}  // namespace eqgeo
