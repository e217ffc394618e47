#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "eqgeo/group.hpp"
#include "eqgeo/word.hpp"

namespace eqgeo {

// A point of H^m as Cayley-table indices.
using Point = std::vector<std::uint16_t>;

struct PointHash {
  std::size_t operator()(const Point& p) const noexcept;
};

// Element budget for word searches; EQGEO_BUDGET overrides the default 10^6.
std::size_t default_budget();

// Stabilizer chain of a subgroup of H^m along the coordinate base 0..m-1.
// Level j holds the elements that are trivial on coordinates < j; its orbit
// is their projection L_j <= H to coordinate j, so the order is prod |L_j|.
class CoordinateChain {
 public:
  CoordinateChain(const CayleyTable& table, std::size_t m, std::span<const Point> generators);

  std::size_t coords() const { return m_; }
  // |L_j| for every coordinate.
  std::vector<std::size_t> level_sizes() const;
  BigInt order() const;
  bool contains(const Point& p) const;

 private:
  struct Level {
    std::vector<Point> gens;
    std::vector<std::int32_t> where;  // table index -> position in orbit, -1 if absent
    std::vector<std::uint16_t> orbit;
    std::vector<Point> trans;  // trans[a][j] == orbit[a]
    std::vector<std::vector<char>> done;
  };

  Point mul(const Point& a, const Point& b) const;
  Point inv(const Point& a) const;
  bool is_identity(const Point& p) const;
  // Returns the residue and the level where sifting stopped (m_ if it
  // sifted to the identity).
  std::pair<Point, std::size_t> sift(Point g, std::size_t from) const;
  void add_strong(const Point& r, std::size_t from, std::size_t to);
  void extend_orbit(Level& lvl, std::size_t j);
  void build();

  const CayleyTable& t_;
  std::size_t m_;
  std::vector<Level> levels_;
};

// Generator points of Gamma(E) <= H^|E|: the diagonal of every coefficient
// generator and the column of every variable.
std::vector<Point> coordinate_generators(const CayleyTable& t, std::span<const Tuple> tuples, std::size_t arity,
                                         std::span<const Element> coefficient_generators);

// Word search inside Gamma(E) for E = tuples, with the last tuple playing the
// role of the point to separate.
class WordSearch {
 public:
  WordSearch(GroupPtr h, std::size_t arity, std::span<const Element> coefficient_generators,
             std::span<const Tuple> tuples);

  // A word vanishing on tuples[0..m-2] but not on tuples[m-1]. Breadth-first
  // collision search on the projection to the first m-1 coordinates, then a
  // random-walk fallback; BudgetExceeded if neither finds one.
  Word separator(std::size_t budget) const;
  // A word whose evaluation vector on the tuples equals target, or nullopt if
  // the search exhausted the whole (finite) subgroup.
  std::optional<Word> word_for(const Point& target, std::size_t budget) const;

  const std::vector<Point>& generators() const { return gens_; }
  const CayleyTable& table() const { return table_; }

 private:
  Word word_from(const std::vector<std::uint32_t>& path) const;

  GroupPtr h_;
  const CayleyTable& table_;
  std::size_t arity_;
  std::size_t m_;
  std::vector<Point> gens_;
  std::vector<Letter> letters_;
};

Point to_point(const CayleyTable& t, std::span<const Element> values);

}  // namespace eqgeo
