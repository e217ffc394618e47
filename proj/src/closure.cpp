#include "eqgeo/closure.hpp"

#include <cstdlib>
#include <deque>
#include <numeric>
#include <random>
#include <unordered_map>

#include "eqgeo/errors.hpp"

namespace eqgeo {

std::size_t PointHash::operator()(const Point& p) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (auto x : p) {
    h ^= x;
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 32));
}

std::size_t default_budget() {
  if (const char* env = std::getenv("EQGEO_BUDGET")) {
    char* end = nullptr;
    auto v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    throw ValidationError("EQGEO_BUDGET must be a positive integer");
  }
  return 1'000'000;
}

Point to_point(const CayleyTable& t, std::span<const Element> values) {
  Point p;
  p.reserve(values.size());
  for (const auto& v : values) p.push_back(t.index_of(v));
  return p;
}

// ---------------------------------------------------------------- chain

CoordinateChain::CoordinateChain(const CayleyTable& table, std::size_t m, std::span<const Point> generators)
    : t_(table), m_(m), levels_(m) {
  for (auto& lvl : levels_) {
    lvl.where.assign(t_.order, -1);
    lvl.where[0] = 0;
    lvl.orbit = {0};
    lvl.trans = {Point(m_, 0)};
  }
  for (const auto& g : generators) {
    if (g.size() != m_) throw ValidationError("generator point has the wrong length");
    auto [r, level] = sift(g, 0);
    if (level < m_) add_strong(r, 0, level);
  }
  build();
}

Point CoordinateChain::mul(const Point& a, const Point& b) const {
  Point c(m_);
  for (std::size_t i = 0; i < m_; ++i) c[i] = t_.op(a[i], b[i]);
  return c;
}

Point CoordinateChain::inv(const Point& a) const {
  Point c(m_);
  for (std::size_t i = 0; i < m_; ++i) c[i] = t_.inv[a[i]];
  return c;
}

bool CoordinateChain::is_identity(const Point& p) const {
  return std::all_of(p.begin(), p.end(), [](std::uint16_t x) { return x == 0; });
}

std::pair<Point, std::size_t> CoordinateChain::sift(Point g, std::size_t from) const {
  for (std::size_t j = from; j < m_; ++j) {
    auto pos = levels_[j].where[g[j]];
    if (pos < 0) return {std::move(g), j};
    if (pos > 0) g = mul(g, inv(levels_[j].trans[pos]));
  }
  return {std::move(g), m_};
}

void CoordinateChain::extend_orbit(Level& lvl, std::size_t j) {
  for (std::size_t a = 0; a < lvl.orbit.size(); ++a) {
    for (const auto& s : lvl.gens) {
      auto q = t_.op(lvl.orbit[a], s[j]);
      if (lvl.where[q] >= 0) continue;
      lvl.where[q] = static_cast<std::int32_t>(lvl.orbit.size());
      lvl.orbit.push_back(q);
      lvl.trans.push_back(mul(lvl.trans[a], s));
    }
  }
}

void CoordinateChain::add_strong(const Point& r, std::size_t from, std::size_t to) {
  for (std::size_t i = from; i <= to; ++i) {
    levels_[i].gens.push_back(r);
    extend_orbit(levels_[i], i);
  }
}

void CoordinateChain::build() {
  std::size_t i = m_;
  while (i-- > 0) {
  restart:
    auto& lvl = levels_[i];
    lvl.done.resize(lvl.orbit.size());
    for (std::size_t a = 0; a < lvl.orbit.size(); ++a) {
      lvl.done.resize(lvl.orbit.size());
      auto& row = lvl.done[a];
      row.resize(lvl.gens.size(), 0);
      for (std::size_t s = 0; s < lvl.gens.size(); ++s) {
        if (row[s]) continue;
        row[s] = 1;
        const auto& gen = lvl.gens[s];
        auto target = lvl.where[t_.op(lvl.orbit[a], gen[i])];
        Point g = mul(mul(lvl.trans[a], gen), inv(lvl.trans[target]));
        auto [r, level] = sift(std::move(g), i + 1);
        if (level < m_) {
          add_strong(r, i + 1, level);
          i = level;
          goto restart;
        }
      }
    }
  }
}

std::vector<std::size_t> CoordinateChain::level_sizes() const {
  std::vector<std::size_t> out;
  for (const auto& l : levels_) out.push_back(l.orbit.size());
  return out;
}

BigInt CoordinateChain::order() const {
  BigInt o = 1;
  for (const auto& l : levels_) o *= l.orbit.size();
  return o;
}

bool CoordinateChain::contains(const Point& p) const {
  if (p.size() != m_) return false;
  return sift(p, 0).second == m_;
}

std::vector<Point> coordinate_generators(const CayleyTable& t, std::span<const Tuple> tuples, std::size_t arity,
                                         std::span<const Element> coefficient_generators) {
  const std::size_t m = tuples.size();
  std::vector<Point> gens;
  for (const auto& c : coefficient_generators) {
    auto idx = t.index_of(c);
    if (idx != 0) gens.emplace_back(m, idx);
  }
  for (std::size_t i = 0; i < arity; ++i) {
    Point p(m);
    for (std::size_t j = 0; j < m; ++j) p[j] = t.index_of(tuples[j][i]);
    gens.push_back(std::move(p));
  }
  return gens;
}

// ---------------------------------------------------------------- search

WordSearch::WordSearch(GroupPtr h, std::size_t arity, std::span<const Element> coefficient_generators,
                       std::span<const Tuple> tuples)
    : h_(std::move(h)), table_(h_->cayley()), arity_(arity), m_(tuples.size()) {
  for (const auto& c : coefficient_generators) {
    auto idx = table_.index_of(c);
    if (idx == 0) continue;
    gens_.emplace_back(m_, idx);
    letters_.push_back(Letter::coefficient(c));
  }
  for (std::size_t i = 0; i < arity; ++i) {
    Point p(m_);
    for (std::size_t j = 0; j < m_; ++j) p[j] = table_.index_of(tuples[j][i]);
    gens_.push_back(std::move(p));
    letters_.push_back(Letter::variable(static_cast<std::uint32_t>(i + 1)));
  }
}

Word WordSearch::word_from(const std::vector<std::uint32_t>& path) const {
  std::vector<Letter> raw;
  raw.reserve(path.size());
  for (auto g : path) raw.push_back(letters_[g]);
  return Word::normalize(h_, arity_, raw);
}

namespace {

struct Node {
  std::uint32_t parent;
  std::uint32_t gen;
};

std::vector<std::uint32_t> path_of(const std::vector<Node>& nodes, std::uint32_t id) {
  std::vector<std::uint32_t> path;
  while (id != 0) {
    path.push_back(nodes[id].gen);
    id = nodes[id].parent;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<std::uint64_t> element_orders(const CayleyTable& t) {
  std::vector<std::uint64_t> ord(t.order, 1);
  for (std::uint16_t a = 1; a < t.order; ++a)
    for (std::uint16_t x = a; x != 0; x = t.op(x, a)) ++ord[a];
  return ord;
}

}  // namespace

Word WordSearch::separator(std::size_t budget) const {
  if (m_ == 0) throw ValidationError("separator search needs at least one tuple");
  const std::size_t last = m_ - 1;
  const auto orders = element_orders(table_);
  auto mul = [&](const Point& a, const Point& b) {
    Point c(m_);
    for (std::size_t i = 0; i < m_; ++i) c[i] = table_.op(a[i], b[i]);
    return c;
  };
  auto head = [&](const Point& p) { return Point(p.begin(), p.begin() + static_cast<long>(last)); };
  // g^o with o the order of g's head is trivial on the head; it separates
  // when the last coordinate survives.
  auto power_witness = [&](const Point& p) -> std::uint64_t {
    std::uint64_t o = 1;
    for (std::size_t i = 0; i < last; ++i) o = std::lcm(o, orders[p[i]]);
    return o % orders[p[last]] != 0 ? o : 0;
  };

  std::vector<Node> nodes{{0, 0}};
  std::vector<Point> points{Point(m_, 0)};
  std::unordered_map<Point, std::uint32_t, PointHash> seen{{points[0], 0}};
  std::unordered_map<Point, std::uint32_t, PointHash> heads{{head(points[0]), 0}};
  for (std::size_t cur = 0; cur < points.size(); ++cur) {
    for (std::uint32_t g = 0; g < gens_.size(); ++g) {
      Point next = mul(points[cur], gens_[g]);
      if (seen.count(next)) continue;
      auto id = static_cast<std::uint32_t>(points.size());
      nodes.push_back({static_cast<std::uint32_t>(cur), g});
      if (auto o = power_witness(next)) return word_from(path_of(nodes, id)).pow(static_cast<std::int64_t>(o));
      auto [it, fresh] = heads.emplace(head(next), id);
      if (!fresh) return word_from(path_of(nodes, id)) * word_from(path_of(nodes, it->second)).inverse();
      seen.emplace(next, id);
      points.push_back(std::move(next));
      if (points.size() > budget) goto fallback;
    }
  }
  // The whole group was enumerated without a collision: nothing separates.
  throw ValidationError("no separating word exists for this tuple");

fallback : {
  std::mt19937_64 rng(0x5ea7c4);
  std::uniform_int_distribution<std::size_t> pick(0, gens_.size() - 1), len(1, 48);
  std::unordered_map<Point, std::vector<std::uint32_t>, PointHash> sampled;
  const std::size_t limit = std::min<std::size_t>(budget, 200'000);
  for (std::size_t s = 0; s < limit; ++s) {
    std::vector<std::uint32_t> path(len(rng));
    Point p(m_, 0);
    for (auto& g : path) {
      g = static_cast<std::uint32_t>(pick(rng));
      p = mul(p, gens_[g]);
    }
    if (auto o = power_witness(p)) return word_from(path).pow(static_cast<std::int64_t>(o));
    auto [it, fresh] = sampled.emplace(head(p), path);
    if (!fresh) {
      Point q(m_, 0);
      for (auto g : it->second) q = mul(q, gens_[g]);
      if (q[last] != p[last]) return word_from(path) * word_from(it->second).inverse();
    }
  }
}
  throw BudgetExceeded("separator search exceeded its budget of " + std::to_string(budget) + " elements");
}

std::optional<Word> WordSearch::word_for(const Point& target, std::size_t budget) const {
  auto mul = [&](const Point& a, const Point& b) {
    Point c(m_);
    for (std::size_t i = 0; i < m_; ++i) c[i] = table_.op(a[i], b[i]);
    return c;
  };
  std::vector<Node> nodes{{0, 0}};
  std::vector<Point> points{Point(m_, 0)};
  if (points[0] == target) return Word(h_, arity_);
  std::unordered_map<Point, std::uint32_t, PointHash> seen{{points[0], 0}};
  for (std::size_t cur = 0; cur < points.size(); ++cur) {
    for (std::uint32_t g = 0; g < gens_.size(); ++g) {
      Point next = mul(points[cur], gens_[g]);
      if (seen.count(next)) continue;
      auto id = static_cast<std::uint32_t>(points.size());
      nodes.push_back({static_cast<std::uint32_t>(cur), g});
      if (next == target) return word_from(path_of(nodes, id));
      seen.emplace(next, id);
      points.push_back(std::move(next));
      if (points.size() > budget)
        throw BudgetExceeded("word search exceeded its budget of " + std::to_string(budget) + " elements");
    }
  }
  return std::nullopt;
}

}  // namespace eqgeo
