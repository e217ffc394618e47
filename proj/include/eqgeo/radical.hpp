#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "eqgeo/dsl.hpp"
#include "eqgeo/lattice.hpp"
#include "eqgeo/word.hpp"

namespace eqgeo {

// Which coefficients words may carry: all of H (Diophantine), none
// (coefficient-free), or the subgroup generated by an explicit list.
struct CoefficientMode {
  enum class Kind { All, None, List };
  Kind kind = Kind::All;
  std::vector<Element> list;

  static CoefficientMode all() { return {}; }
  static CoefficientMode none() { return {Kind::None, {}}; }
  static CoefficientMode generated(std::vector<Element> gens) { return {Kind::List, std::move(gens)}; }

  // Generators of the coefficient subgroup inside h.
  std::vector<Element> generators(const GroupBackend& h) const;
  json to_json(const GroupBackend& h) const;
  static CoefficientMode from_json(const json& j, const GroupBackend& h);
  bool operator==(const CoefficientMode&) const = default;
};

// Finite E <= H^n with distinct tuples, in input order.
class TupleSet {
 public:
  TupleSet(GroupPtr h, std::size_t arity, std::vector<Tuple> tuples);

  // {"group": <inline or path>, "arity": n, "tuples": [...], "coefficients": ...}
  static TupleSet from_json(const json& j, const std::filesystem::path& base_dir = {},
                            CoefficientMode* mode_out = nullptr);
  json to_json() const;

  const GroupPtr& group() const { return h_; }
  std::size_t arity() const { return arity_; }
  const std::vector<Tuple>& tuples() const { return tuples_; }
  std::size_t size() const { return tuples_.size(); }
  const Tuple& operator[](std::size_t i) const { return tuples_[i]; }
  bool contains(const Tuple& t) const;

 private:
  GroupPtr h_;
  std::size_t arity_;
  std::vector<Tuple> tuples_;
};

// Rad(base): membership is evaluation at every base tuple.
struct RadicalHandle {
  TupleSet base;
};

bool radical_contains(const RadicalHandle& r, const Word& w);
bool radical_contains(const RadicalHandle& r, const LinearizedWord& w);

// A separating word in whichever form its backend needs: expanded words for
// finite groups, exponent vectors for abelian ones (exponents may be huge).
struct Separator {
  std::optional<Word> word;
  std::optional<LinearizedWord> linear;

  std::string text(const GroupBackend& h) const;
  Element evaluate(std::span<const Element> v, const GroupBackend& h) const;
};

// Parses separator text back, in the form appropriate for h.
Separator parse_separator(std::string_view text, const GroupPtr& h, std::size_t arity);

// A word vanishing on E0 but not at e, if one exists.
std::optional<Separator> separation(const TupleSet& e0, const Tuple& e, const CoefficientMode& mode = {},
                                    std::size_t budget = 0);

struct WitnessStep {
  std::size_t index = 0;  // position in E
  std::optional<std::string> separator;
  bool checked = false;
};

// E0 subset of E with Rad(E0) = Rad(E). The first tuple of E is always an
// implicit seed; steps cover the later members of E0 in order.
struct WitnessCertificate {
  std::string kind;  // greedy | abelian | product | finite_extension | eliminated
  GroupPtr group;
  CoefficientMode mode;
  std::size_t arity = 0;
  std::vector<Tuple> e;
  std::vector<std::size_t> e0_indices;
  std::vector<WitnessStep> steps;
  std::string oracle;  // closure | lattice | congruence | factorwise | classwise
  json nested = json::object();

  std::vector<Tuple> e0() const;
  json to_json() const;  // canonical, with digest
};

// Generic greedy witness; dispatches on the backend.
WitnessCertificate witness(const TupleSet& e, const CoefficientMode& mode = {}, std::size_t budget = 0);
WitnessCertificate witness_abelian(const TupleSet& e, const CoefficientMode& mode = {});
WitnessCertificate witness_product(const TupleSet& e, const CoefficientMode& mode = {}, std::size_t budget = 0);

// Same contracts, for callers that hold tuples with possible repetitions.
WitnessCertificate witness_tuples(const GroupPtr& h, std::size_t arity, const std::vector<Tuple>& e,
                                  const CoefficientMode& mode, std::size_t budget);

// Steps for E0 (indices into e) over a finite backend: a word-search
// separator where the added tuple separates from the earlier members of E0,
// a null separator where the closure chain shows it is redundant.
std::vector<WitnessStep> closure_steps(const GroupPtr& h, std::size_t arity, const std::vector<Tuple>& e,
                                       const std::vector<std::size_t>& e0, const CoefficientMode& mode,
                                       std::size_t budget);

// Exact Rad(E0) = Rad(E) decision for E0 subset of E.
bool radical_equal(const GroupPtr& h, std::size_t arity, const std::vector<Tuple>& e0, const std::vector<Tuple>& e,
                   const CoefficientMode& mode);

// T = E x {(a_1..a_k)} with coefficients turned into variables y_1..y_k.
struct Elimination {
  GroupPtr group;
  std::size_t arity = 0;  // n
  std::vector<Element> coefficients;
  std::vector<Tuple> lifted;  // arity n + k

  // Coefficients become words in y; throws if one is not in <a_1..a_k>.
  Word lift(const Word& w) const;
  // y_i -> a_i.
  Word lower(const Word& w) const;
};
Elimination eliminate_coefficients(const TupleSet& e, std::vector<Element> coefficients);

// V_H(S): explicit points when finite, otherwise particular + span(directions)
// over an abelian backend.
struct AlgebraicSet {
  GroupPtr group;
  std::size_t arity = 0;
  bool empty = false;
  bool finite = true;
  std::vector<Tuple> points;  // complete when finite
  Tuple particular;
  std::vector<Tuple> directions;

  // First count points (integer combinations by growing box when infinite).
  std::vector<Tuple> enumerate(std::size_t count) const;
  json to_json() const;
};
AlgebraicSet algebraic_set(const std::vector<Word>& system, const GroupPtr& h, std::size_t arity,
                           std::size_t budget = 0);
RadicalHandle radical_of_system(const std::vector<Word>& system, const GroupPtr& h, std::size_t arity,
                                std::size_t budget = 0);

struct CoordinateGroup {
  BigInt order;
  std::vector<Tuple> generator_images;  // points of H^|E|
};
CoordinateGroup coordinate_group(const TupleSet& e, const CoefficientMode& mode = {});

}  // namespace eqgeo
