// Chains, the Q/Z and Q demos, coset intersections and closure.
#include <doctest.h>

#include <algorithm>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

#include "eqgeo/backends.hpp"
#include "eqgeo/dsl.hpp"
#include "eqgeo/topology.hpp"

using namespace eqgeo;

namespace {

std::vector<TupleSet> prefixes(const GroupPtr& h, std::size_t n, const std::vector<Tuple>& all) {
  std::vector<TupleSet> out;
  for (std::size_t k = 1; k <= all.size(); ++k) out.emplace_back(h, n, std::vector<Tuple>(all.begin(), all.begin() + k));
  return out;
}

std::set<Tuple> as_set(const TupleSet& t) { return {t.tuples().begin(), t.tuples().end()}; }

// Every word of length <= len in one variable over S3, as its value on all
// six points; closure of E = points where all words vanishing on E vanish.
std::set<Tuple> closure_by_enumeration(const GroupBackend& s, const std::vector<Tuple>& e, std::size_t len) {
  auto pts = s.elements();
  std::vector<std::vector<Element>> letters;
  for (int sign : {1, -1}) {
    std::vector<Element> v;
    for (const auto& p : pts) v.push_back(sign > 0 ? p : s.inv(p));
    letters.push_back(v);
  }
  for (const auto& c : pts)
    if (!s.is_identity(c)) letters.emplace_back(pts.size(), c);
  std::vector<bool> keep(pts.size(), true);
  std::vector<std::vector<Element>> layer{std::vector<Element>(pts.size(), s.identity())};
  std::set<std::vector<Element>> seen(layer.begin(), layer.end());
  for (std::size_t d = 0; d < len; ++d) {
    std::vector<std::vector<Element>> next;
    for (const auto& cur : layer)
      for (const auto& l : letters) {
        std::vector<Element> v(pts.size());
        for (std::size_t j = 0; j < pts.size(); ++j) v[j] = s.op(cur[j], l[j]);
        if (seen.insert(v).second) next.push_back(v);
      }
    layer = std::move(next);
  }
  for (const auto& v : seen) {
    bool vanishes = true;
    for (const auto& t : e) vanishes = vanishes && s.is_identity(v[std::find(pts.begin(), pts.end(), t[0]) - pts.begin()]);
    if (!vanishes) continue;
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (!s.is_identity(v[j])) keep[j] = false;
  }
  std::set<Tuple> out;
  for (std::size_t j = 0; j < pts.size(); ++j)
    if (keep[j]) out.insert({pts[j]});
  return out;
}

}  // namespace

TEST_CASE("constant chain stabilizes at once") {
  auto s = make_symmetric3();
  TupleSet e(s, 1, {{s->parse_element("(12)")}});
  auto r = chain_monitor({e, e, e}, CoefficientMode::all(), 2);
  CHECK(r.strict_steps.empty());
  REQUIRE(r.stabilized_at.has_value());
  CHECK(*r.stabilized_at == 1);
  CHECK(r.verdict == "window");
  CHECK(chain_monitor({e, e, e}).verdict == "none");
}

TEST_CASE("chain over Z with constants") {
  auto z = std::make_shared<FgAbelianGroup>(1, std::vector<std::int64_t>{});
  std::vector<Tuple> all;
  for (int j = 1; j <= 8; ++j) all.push_back({Element{j}});
  auto r = chain_monitor(prefixes(z, 1, all));
  REQUIRE(r.strict_steps.size() == 1);
  CHECK(r.strict_steps[0].index == 2);
  REQUIRE(r.stabilized_at.has_value());
  CHECK(*r.stabilized_at == 2);
  CHECK(r.verdict == "exact");
}

TEST_CASE("window verdict needs enough trailing steps") {
  auto q = std::make_shared<QmodZGroup>();
  std::vector<Tuple> all{{QmodZGroup::make(1, 2)}, {QmodZGroup::make(1, 3)}};
  auto stream = prefixes(q, 1, all);
  for (int i = 0; i < 3; ++i) stream.push_back(stream.back());
  auto short_window = chain_monitor(stream, CoefficientMode::none(), 3);
  CHECK(short_window.verdict == "window");
  CHECK(*short_window.stabilized_at == 2);
  auto long_window = chain_monitor(stream, CoefficientMode::none(), 16);
  CHECK(long_window.verdict == "none");
  CHECK_FALSE(long_window.stabilized_at.has_value());
}

TEST_CASE("Q/Z counterexample") {
  auto demo = qmodz_counterexample(3);
  CHECK(demo.primes == std::vector<std::int64_t>{2, 3, 5});
  QmodZGroup q;
  CHECK(print_linear(demo.witnesses[0], q) == "x1^2");
  CHECK(print_linear(demo.witnesses[1], q) == "x1^6");
  CHECK(demo.verified);

  auto big = qmodz_counterexample(25);
  CHECK(big.verified);
  CHECK(big.witnesses.size() == 24);
  // independent check with rationals
  using boost::multiprecision::cpp_rational;
  for (std::size_t j = 0; j < big.witnesses.size(); ++j)
    for (std::size_t i = 0; i < big.primes.size(); ++i) {
      cpp_rational v = cpp_rational(big.witnesses[j].alpha[0]) / big.primes[i];
      CHECK((denominator(v) == 1) == (i <= j));
    }
}

TEST_CASE("affine chains over Q") {
  auto q = std::make_shared<FieldAdditiveGroup>();
  auto x1 = parse_word("x1", q, 2), x2 = parse_word("x2", q, 2);
  auto r = affine_chain_demo(2, {{x1, x2}, {x1}, {}});
  CHECK(r.strict_steps.size() == 2);
  CHECK(r.dimensions == std::vector<long>{0, 1, 2});
  CHECK(r.verdict == "exact");

  auto same = affine_chain_demo(2, {{x1}, {x1}, {x1}}, 2);
  CHECK(same.strict_steps.empty());
  REQUIRE(same.stabilized_at.has_value());
  CHECK(*same.stabilized_at == 1);

  // x1 = 1 and x1 = 2 is empty; dropping one makes a line
  auto inconsistent = affine_chain_demo(1, {{parse_word("x1 * g:-1", q, 1), parse_word("x1 * g:-2", q, 1)},
                                            {parse_word("x1 * g:-1", q, 1)}, {}});
  CHECK(inconsistent.dimensions == std::vector<long>{-1, 0, 1});
  CHECK(inconsistent.strict_steps.size() == 2);
}

TEST_CASE("coset intersections") {
  auto z2 = make_cyclic(2);
  TupleSet e1(z2, 1, {{z2->parse_element("a")}}), e2(z2, 1, {{z2->identity()}});
  Word empty(z2, 1);
  auto c = coset_intersection_check(empty, e1, empty, e2);
  CHECK_FALSE(c.empty);
  CHECK(c.discrepancies.empty());
  CHECK(c.members > 0);

  auto x = parse_word("x1", z2, 1);
  auto t = coset_intersection_check(x, e1, x, e2);
  CHECK_FALSE(t.empty);
  CHECK(t.discrepancies.empty());

  // translated cosets over a non-abelian group
  auto s = make_symmetric3();
  TupleSet f1(s, 1, {{s->parse_element("(12)")}}), f2(s, 1, {{s->parse_element("(123)")}});
  auto u = parse_word("x1", s, 1);
  auto r = coset_intersection_check(u, f1, Word(s, 1), f2, CoefficientMode::all(), 500);
  CHECK(r.discrepancies.empty());
}

TEST_CASE("closure examples and laws") {
  auto z2 = make_cyclic(2);
  auto a = closure(TupleSet(z2, 1, {{z2->parse_element("a")}}));
  CHECK(a.size() == 1);

  auto s = make_symmetric3();
  std::vector<Tuple> everything;
  for (const auto& x : s->elements()) everything.push_back({x});
  CHECK(closure(TupleSet(s, 1, everything)).size() == 6);

  auto c = closure(TupleSet(s, 1, {{s->parse_element("(123)")}}));
  CHECK(as_set(c) == closure_by_enumeration(*s, {{s->parse_element("(123)")}}, 6));

  // extensive, idempotent, monotone on a family of subsets
  std::vector<std::vector<Tuple>> family{{{s->parse_element("(12)")}},
                                         {{s->parse_element("(12)")}, {s->parse_element("(13)")}},
                                         {{s->parse_element("e")}},
                                         {{s->parse_element("e")}, {s->parse_element("(123)")}}};
  for (const auto& mode : {CoefficientMode::all(), CoefficientMode::none()})
    for (std::size_t i = 0; i < family.size(); ++i) {
      auto ci = closure(TupleSet(s, 1, family[i]), mode);
      auto set_i = as_set(ci);
      for (const auto& t : family[i]) CHECK(set_i.count(t));
      CHECK(as_set(closure(ci, mode)) == set_i);
      for (std::size_t j = 0; j < family.size(); ++j) {
        std::set<Tuple> fi(family[i].begin(), family[i].end()), fj(family[j].begin(), family[j].end());
        if (std::includes(fj.begin(), fj.end(), fi.begin(), fi.end())) {
          auto set_j = as_set(closure(TupleSet(s, 1, family[j]), mode));
          CHECK(std::includes(set_j.begin(), set_j.end(), set_i.begin(), set_i.end()));
        }
      }
    }
  CHECK(closure(TupleSet(s, 1, {})).size() == 0);
}
