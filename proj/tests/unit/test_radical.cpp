// Radical engine: membership, separation, witnesses, elimination, algebraic
// sets. Expected values come from exhaustive enumeration in the test itself
// (exponent spaces of small abelian groups, word enumeration) wherever the
// library's own decision procedure would otherwise be checking itself.
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>

#include "eqgeo/backends.hpp"
#include "eqgeo/certificate.hpp"
#include "eqgeo/dsl.hpp"
#include "eqgeo/errors.hpp"
#include "eqgeo/radical.hpp"

using namespace eqgeo;

namespace {

std::shared_ptr<FgAbelianGroup> integers() { return std::make_shared<FgAbelianGroup>(1, std::vector<std::int64_t>{}); }

Tuple ints(std::initializer_list<std::int64_t> xs) {
  Tuple t;
  for (auto x : xs) t.push_back(Element{x});
  return t;
}

// Over a finite abelian H of exponent m every word acts like
// x_1^k_1 ... x_n^k_n c with k in (Z/m)^n and c in H. Returns the set of
// such (k, c) vanishing on E: a complete description of Rad(E) modulo
// words that vanish everywhere.
std::set<std::pair<std::vector<int>, Element>> exponent_radical(const GroupBackend& h, std::size_t n, int m,
                                                                const std::vector<Tuple>& e, bool coefficients) {
  std::set<std::pair<std::vector<int>, Element>> out;
  std::vector<int> k(n, 0);
  std::vector<Element> cs = coefficients ? h.elements() : std::vector<Element>{h.identity()};
  while (true) {
    for (const auto& c : cs) {
      bool vanishes = true;
      for (const auto& t : e) {
        Element v = c;
        for (std::size_t i = 0; i < n; ++i) v = h.op(v, h.power(t[i], BigInt(k[i])));
        vanishes = vanishes && h.is_identity(v);
      }
      if (vanishes) out.insert({k, c});
    }
    std::size_t i = 0;
    while (i < n && ++k[i] == m) k[i++] = 0;
    if (i == n) break;
  }
  return out;
}

// All values (w(E0 tuples), w(e)) reached by words of length <= len over
// the letters x_i^(+-1) and the non-identity coefficients; reports whether
// some word vanishes on E0 but not at e.
bool brute_force_separates(const GroupBackend& h, const std::vector<Tuple>& e0, const Tuple& e, std::size_t n,
                           std::size_t len) {
  std::vector<Tuple> points = e0;
  points.push_back(e);
  // letter values per point
  std::vector<std::vector<Element>> letters;
  for (std::size_t i = 0; i < n; ++i)
    for (int s : {1, -1}) {
      std::vector<Element> v;
      for (const auto& p : points) v.push_back(s > 0 ? p[i] : h.inv(p[i]));
      letters.push_back(v);
    }
  for (const auto& c : h.elements())
    if (!h.is_identity(c)) letters.emplace_back(points.size(), c);
  bool found = false;
  std::vector<Element> start(points.size(), h.identity());
  std::function<void(const std::vector<Element>&, std::size_t)> walk = [&](const std::vector<Element>& cur,
                                                                           std::size_t depth) {
    if (found) return;
    bool zero = true;
    for (std::size_t j = 0; j + 1 < cur.size(); ++j) zero = zero && h.is_identity(cur[j]);
    if (zero && !h.is_identity(cur.back())) {
      found = true;
      return;
    }
    if (depth == len) return;
    for (const auto& l : letters) {
      std::vector<Element> next(cur.size());
      for (std::size_t j = 0; j < cur.size(); ++j) next[j] = h.op(cur[j], l[j]);
      walk(next, depth + 1);
    }
  };
  walk(start, 0);
  return found;
}

}  // namespace

TEST_CASE("radical membership") {
  auto q = std::make_shared<QmodZGroup>();
  RadicalHandle r{TupleSet(q, 1, {{QmodZGroup::make(1, 2)}, {QmodZGroup::make(1, 3)}})};
  CHECK(radical_contains(r, parse_word("x1^6", q, 1)));
  CHECK_FALSE(radical_contains(r, parse_word("x1^2", q, 1)));
  CHECK(radical_contains(r, parse_linear("x1^6000000000000000000000", *q, 1)));
  CHECK(radical_contains(r, Word(q, 1)));

  auto s = make_symmetric3();
  RadicalHandle r3{TupleSet(s, 1, {{s->parse_element("(123)")}})};
  CHECK(radical_contains(r3, parse_word("x1^3", s, 1)));
  CHECK(radical_contains(r3, parse_word("x1 * g:(132)", s, 1)));
  CHECK_FALSE(radical_contains(r3, parse_word("x1^2", s, 1)));
}

TEST_CASE("tuple sets reject bad input") {
  auto z = integers();
  CHECK_THROWS_AS(TupleSet(z, 2, {ints({1})}), ValidationError);
  CHECK_THROWS_AS(TupleSet(z, 1, {ints({1}), ints({1})}), ValidationError);
}

TEST_CASE("separation examples") {
  auto z = integers();
  CHECK_FALSE(separation(TupleSet(z, 1, {ints({1})}), ints({1})).has_value());
  auto sep = separation(TupleSet(z, 1, {ints({1})}), ints({2}));
  REQUIRE(sep.has_value());
  Tuple one = ints({1}), two = ints({2});
  CHECK(z->is_identity(sep->evaluate(one, *z)));
  CHECK_FALSE(z->is_identity(sep->evaluate(two, *z)));

  // coefficient-free: 1 and 2 in Z cannot be told apart by x^k alone
  // except through k = 0, so no separator exists
  CHECK_FALSE(separation(TupleSet(z, 1, {ints({1})}), ints({2}), CoefficientMode::none()).has_value());
}

TEST_CASE("separation agrees with word enumeration on small groups") {
  std::vector<GroupPtr> groups{make_cyclic(2), make_cyclic(3), make_cyclic(4),
                               std::make_shared<FgAbelianGroup>(0, std::vector<std::int64_t>{2, 2})};
  std::mt19937_64 rng(11);
  int agreements = 0;
  for (const auto& h : groups)
    for (int inst = 0; inst < 25; ++inst) {
      const std::size_t n = 1 + rng() % 2;
      std::vector<Tuple> e0;
      std::set<Tuple> seen;
      for (std::size_t k = 1 + rng() % 3; e0.size() < k;) {
        Tuple t;
        for (std::size_t i = 0; i < n; ++i) t.push_back(h->random_element(rng));
        if (seen.insert(t).second) e0.push_back(t);
        if (seen.size() >= std::pow(h->order(), n)) break;
      }
      Tuple e;
      for (std::size_t i = 0; i < n; ++i) e.push_back(h->random_element(rng));
      auto sep = separation(TupleSet(h, n, e0), e);
      const bool brute = brute_force_separates(*h, e0, e, n, 6);
      CHECK(sep.has_value() == brute);
      if (sep) {
        for (const auto& t : e0) CHECK(h->is_identity(sep->evaluate(t, *h)));
        CHECK_FALSE(h->is_identity(sep->evaluate(e, *h)));
      }
      agreements += sep.has_value() == brute;
    }
  MESSAGE("separation/enumeration agreements: " << agreements << " of 100");
}

TEST_CASE("greedy witness examples") {
  auto z2 = make_cyclic(2);
  auto a = z2->parse_element("a"), one = z2->identity();
  {
    auto c = witness(TupleSet(z2, 1, {{a}}));
    CHECK(c.e0_indices == std::vector<std::size_t>{0});
  }
  auto c = witness(TupleSet(z2, 1, {{a}, {one}}));
  CHECK(c.e0_indices == std::vector<std::size_t>{0, 1});
  // neither radical contains the other
  auto ra = exponent_radical(*z2, 1, 2, {{a}}, true);
  auto r1 = exponent_radical(*z2, 1, 2, {{one}}, true);
  CHECK_FALSE(std::includes(ra.begin(), ra.end(), r1.begin(), r1.end()));
  CHECK_FALSE(std::includes(r1.begin(), r1.end(), ra.begin(), ra.end()));
  CHECK(check_certificate(c.to_json()).valid);
}

TEST_CASE("abelian witness over Z") {
  auto z = integers();
  TupleSet e(z, 2, {ints({1, 2}), ints({2, 4}), ints({3, 6})});

  // Coefficient-free: kernel <(2,-1)> of the single row (1,2) already
  // annihilates (2,4) and (3,6).
  auto free = witness_abelian(e, CoefficientMode::none());
  CHECK(free.e0_indices == std::vector<std::size_t>{0});
  CHECK(free.oracle == "lattice");
  CHECK(free.to_json()["nested"]["lattice"] == json::parse("[[2,-1]]"));

  // With constants the word x1 * a^-1 vanishes at (1,2) but not at (2,4),
  // so the second tuple is needed; after that every word with the
  // constants has kernel spanned by (2,-1) and (3,6) adds nothing.
  auto dio = witness_abelian(e);
  CHECK(dio.e0_indices == std::vector<std::size_t>{0, 1});
  auto sep = parse_separator(*dio.steps.at(0).separator, z, 2);
  CHECK(z->is_identity(sep.evaluate(e[0], *z)));
  CHECK_FALSE(z->is_identity(sep.evaluate(e[1], *z)));
  CHECK(radical_equal(z, 2, dio.e0(), e.tuples(), CoefficientMode::all()));

  for (const auto& cert : {free, dio}) CHECK(check_certificate(cert.to_json()).valid);
}

TEST_CASE("abelian witness over Q/Z uses congruences") {
  auto q = std::make_shared<QmodZGroup>();
  TupleSet e(q, 1, {{QmodZGroup::make(1, 2)}, {QmodZGroup::make(1, 3)}, {QmodZGroup::make(1, 6)}});
  auto c = witness_abelian(e, CoefficientMode::none());
  // 1/6 is redundant: 6x kills 1/2 and 1/3 and hence 1/6
  CHECK(c.e0_indices == std::vector<std::size_t>{0, 1});
  CHECK(c.oracle == "congruence");
  CHECK(check_certificate(c.to_json()).valid);
}

TEST_CASE("abelian witness stays within n+1 tuples") {
  auto z = integers();
  std::mt19937_64 rng(5);
  for (int inst = 0; inst < 50; ++inst) {
    const std::size_t n = 1 + rng() % 4;
    std::vector<Tuple> e;
    std::set<Tuple> seen;
    for (int j = 0; j < 40; ++j) {
      Tuple t;
      for (std::size_t i = 0; i < n; ++i) t.push_back(Element{static_cast<std::int64_t>(rng() % 21) - 10});
      if (seen.insert(t).second) e.push_back(t);
    }
    auto c = witness_abelian(TupleSet(z, n, e));
    CHECK(c.e0_indices.size() <= n + 1);
  }
}

TEST_CASE("product witness examples") {
  auto z2 = make_cyclic(2);
  auto p = std::make_shared<ProductGroup>(z2, z2);
  auto el = [&](const char* s) { return p->parse_element(s); };
  TupleSet e(p, 1, {{el("(a,e)")}, {el("(e,a)")}, {el("(a,a)")}});
  auto c = witness_product(e);
  CHECK(c.e0_indices == std::vector<std::size_t>{0, 1});
  // exhaustive exponent space of (Z/2)^2
  CHECK(exponent_radical(*p, 1, 2, c.e0(), true) == exponent_radical(*p, 1, 2, e.tuples(), true));
  CHECK(check_certificate(c.to_json()).valid);

  // trivial right factor: same indices as the left factor alone
  auto one = make_cyclic(1);
  auto pl = std::make_shared<ProductGroup>(make_symmetric3(), one);
  std::vector<Tuple> tuples, left;
  for (const char* s : {"(123)", "(12)", "(132)", "e"}) {
    left.push_back({make_symmetric3()->parse_element(s)});
    tuples.push_back({ProductGroup::pack(left.back()[0], one->identity())});
  }
  CHECK(witness_product(TupleSet(pl, 1, tuples)).e0_indices == witness(TupleSet(make_symmetric3(), 1, left)).e0_indices);
}

TEST_CASE("product witness over Z x Z/2") {
  auto p = std::make_shared<ProductGroup>(integers(), make_cyclic(2, "b"));
  auto el = [&](const char* s) { return p->parse_element(s); };
  TupleSet e(p, 1, {{el("([1],b)")}, {el("([2],b)")}, {el("([3],e)")}});
  // Coefficient-free: x^k vanishes at a^1 only for k = 0.
  auto free = witness_product(e, CoefficientMode::none());
  CHECK(free.e0_indices == std::vector<std::size_t>{0});
  CHECK(free.oracle == "factorwise");
  // With constants the Z side needs a^1 and a^2, the Z/2 side b and 1.
  auto dio = witness_product(e);
  CHECK(dio.e0_indices == std::vector<std::size_t>{0, 1, 2});
  for (const auto& c : {free, dio}) CHECK(check_certificate(c.to_json()).valid);
}

TEST_CASE("witness is deterministic and permutation stable") {
  auto s = make_symmetric3();
  std::vector<Tuple> e;
  for (const auto& x : s->elements())
    for (const auto& y : {s->parse_element("e"), s->parse_element("(12)")}) e.push_back({x, y});
  auto c1 = witness(TupleSet(s, 2, e));
  auto c2 = witness(TupleSet(s, 2, e));
  CHECK(c1.to_json() == c2.to_json());
  std::mt19937_64 rng(2);
  for (int k = 0; k < 5; ++k) {
    std::shuffle(e.begin(), e.end(), rng);
    auto c = witness(TupleSet(s, 2, e));
    CHECK(radical_equal(s, 2, c.e0(), c1.e0(), CoefficientMode::all()));
  }
}

TEST_CASE("antitonicity on sampled words") {
  auto s = make_symmetric3();
  std::mt19937_64 rng(9);
  std::vector<Tuple> small{{s->parse_element("(123)")}};
  std::vector<Tuple> big{{s->parse_element("(123)")}, {s->parse_element("(12)")}};
  RadicalHandle r1{TupleSet(s, 1, small)}, r2{TupleSet(s, 1, big)};
  for (int i = 0; i < 500; ++i) {
    std::vector<Letter> raw;
    for (int j = rng() % 8; j > 0; --j)
      raw.push_back(rng() % 3 ? Letter::variable(1, rng() % 2 ? 1 : -1) : Letter::coefficient(s->random_element(rng)));
    auto w = Word::normalize(s, 1, raw);
    if (radical_contains(r2, w)) CHECK(radical_contains(r1, w));
  }
}

TEST_CASE("coefficient elimination") {
  auto s = make_symmetric3();
  auto a1 = s->parse_element("(12)"), a2 = s->parse_element("(123)");
  TupleSet e(s, 2, {{s->parse_element("(13)"), s->parse_element("e")}, {a2, a1}});
  auto none = eliminate_coefficients(e, {});
  CHECK(none.lifted == e.tuples());

  auto el = eliminate_coefficients(e, {a1, a2});
  auto w = parse_word("x1^2 * g:(12) * x2 * g:(123)^-1", s, 2);
  auto lw = el.lift(w);
  CHECK(print_word(lw) == "x1^2 * x3 * x2 * x4^-1");
  CHECK(el.lower(lw) == w);
  for (std::size_t j = 0; j < e.size(); ++j) CHECK(evaluate(lw, el.lifted[j], *s) == evaluate(w, e[j], *s));
  // (12) lies outside <(123)>
  auto el2 = eliminate_coefficients(e, {a2});
  CHECK_THROWS_AS(el2.lift(parse_word("x1 * g:(12)", s, 2)), ValidationError);
}

TEST_CASE("algebraic sets") {
  auto s = make_symmetric3();
  auto v = algebraic_set({parse_word("x1^2", s, 1)}, s, 1);
  std::set<std::string> names;
  for (const auto& p : v.points) names.insert(s->serialize(p[0]));
  CHECK(names == std::set<std::string>{"e", "(12)", "(13)", "(23)"});
  CHECK(algebraic_set({}, s, 1).points.size() == 6);

  auto z = integers();
  auto line = algebraic_set({parse_word("x1^2 * x2^-1", z, 2)}, z, 2);
  CHECK_FALSE(line.finite);
  auto pts = line.enumerate(3);
  std::set<Tuple> got(pts.begin(), pts.end());
  CHECK(got == std::set<Tuple>{ints({0, 0}), ints({1, 2}), ints({-1, -2})});

  auto q = std::make_shared<FieldAdditiveGroup>();
  auto plane = algebraic_set({parse_word("x1 * x2 * g:-3", q, 2)}, q, 2);
  CHECK_FALSE(plane.empty);
  for (const auto& p : plane.enumerate(5)) CHECK(q->serialize(q->op(p[0], p[1])) == "3");
  auto none = algebraic_set({parse_word("g:1", q, 1)}, q, 1);
  CHECK(none.empty);
}

TEST_CASE("radical of a system") {
  auto z2 = make_cyclic(2);
  auto r = radical_of_system({parse_word("x1^2", z2, 1)}, z2, 1);
  CHECK(r.base.size() == 2);
  // members are exactly the words with even exponent and trivial constant
  auto rad = exponent_radical(*z2, 1, 2, r.base.tuples(), true);
  CHECK(rad == std::set<std::pair<std::vector<int>, Element>>{{{0}, z2->identity()}});
  CHECK(radical_of_system({Word(z2, 1)}, z2, 1).base.size() == 2);
}

TEST_CASE("coordinate group orders") {
  auto z2 = make_cyclic(2);
  CHECK(coordinate_group(TupleSet(z2, 1, {{z2->parse_element("a")}})).order == 2);
  auto s = make_symmetric3();
  CHECK(coordinate_group(TupleSet(s, 1, {{s->parse_element("(123)")}})).order == 6);
  CHECK(coordinate_group(TupleSet(s, 1, {{s->parse_element("(123)")}}), CoefficientMode::none()).order == 3);
  CHECK(coordinate_group(TupleSet(s, 1, {})).order == 1);
}

TEST_CASE("undecided and budget errors") {
  auto f = std::make_shared<FieldAdditiveGroup>();
  // Q has a linear model, so witnesses are exact there
  CHECK_NOTHROW(witness(TupleSet(f, 1, {{f->parse_element("1/2")}, {f->parse_element("1/3")}})));
  // a separator exists but no search fits in a budget of 5 elements
  auto s = make_symmetric3();
  TupleSet e0(s, 2, {{s->parse_element("(12)"), s->parse_element("(123)")},
                     {s->parse_element("(13)"), s->parse_element("(132)")}});
  Tuple e{s->parse_element("(23)"), s->parse_element("(123)")};
  CHECK(separation(e0, e).has_value());
  CHECK_THROWS_AS(separation(e0, e, CoefficientMode::all(), 5), BudgetExceeded);
}
