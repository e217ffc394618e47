#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eqgeo/radical.hpp"

namespace eqgeo {

struct StrictStep {
  std::size_t index = 0;  // 1-based position in the stream
  std::string separator;  // vanishes on the previous set, not on the new one
};

struct ChainReport {
  std::size_t length = 0;
  std::vector<StrictStep> strict_steps;
  std::optional<std::size_t> stabilized_at;
  // "exact": the radical reached its minimum, no later drop is possible.
  // "window": at least `window` non-strict steps followed the last strict one.
  // "none": neither.
  std::string verdict = "none";
  std::size_t window = 16;
  std::vector<long> dimensions;  // affine demo only: -1 for the empty set

  json to_json() const;
};

// Stream of sets E(1) <= E(2) <= ... over one backend and arity.
ChainReport chain_monitor(const std::vector<TupleSet>& stream, const CoefficientMode& mode = {},
                          std::size_t window = 16, std::size_t budget = 0);

struct QmodzDemo {
  std::vector<std::int64_t> primes;
  std::vector<LinearizedWord> witnesses;  // w_j = x^(p_1...p_j)
  bool verified = false;

  json to_json(const GroupBackend& qmodz) const;
};
QmodzDemo qmodz_counterexample(std::size_t k);
std::vector<std::int64_t> first_primes(std::size_t k);

// Systems S(1), S(2), ... over Q whose solution sets ascend.
ChainReport affine_chain_demo(std::size_t arity, const std::vector<std::vector<Word>>& systems,
                              std::size_t window = 16);

struct CosetCheck {
  bool empty = false;
  std::optional<Word> common;  // u Rad(E1) n v Rad(E2) = common Rad(E1 u E2)
  std::size_t sampled = 0;
  std::size_t members = 0;  // sampled words lying in the intersection
  std::vector<Word> discrepancies;

  json to_json() const;
};
CosetCheck coset_intersection_check(const Word& u, const TupleSet& e1, const Word& v, const TupleSet& e2,
                                    const CoefficientMode& mode = {}, std::size_t samples = 2000,
                                    std::size_t budget = 0, std::uint64_t seed = 0xc05e7);

// V_H(Rad(E)) over a finite backend.
TupleSet closure(const TupleSet& e, const CoefficientMode& mode = {}, std::size_t budget = 0);

}  // namespace eqgeo
