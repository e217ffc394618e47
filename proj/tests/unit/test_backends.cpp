#include <doctest.h>

#include <random>

#include "eqgeo/backends.hpp"
#include "eqgeo/decomposition.hpp"
#include "eqgeo/errors.hpp"
#include "eqgeo/group_io.hpp"

using namespace eqgeo;

namespace {

// Group axioms checked exhaustively on every pair or triple.
void check_axioms(const GroupBackend& g) {
  auto el = g.elements();
  REQUIRE(el.size() == g.order());
  for (const auto& a : el) {
    CHECK(g.op(a, g.identity()) == a);
    CHECK(g.is_identity(g.op(a, g.inv(a))));
    for (const auto& b : el)
      for (const auto& c : el) CHECK(g.op(g.op(a, b), c) == g.op(a, g.op(b, c)));
  }
}

}  // namespace

TEST_CASE("finite backends satisfy the group axioms") {
  check_axioms(*make_cyclic(5));
  check_axioms(*make_symmetric3());
  check_axioms(*make_dihedral(4));
  check_axioms(*make_dihedral_split(3));
  check_axioms(FgAbelianGroup(0, {2, 4}));
  check_axioms(ProductGroup(make_cyclic(2), make_symmetric3()));
}

TEST_CASE("Cayley table validation") {
  // not associative: a Latin square that is not a group
  std::vector<std::vector<std::uint32_t>> bad{{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3},
                                              {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  CHECK_THROWS_AS(FiniteGroup({"e", "a", "b", "c", "d"}, bad), ValidationError);
  CHECK_THROWS_AS(FiniteGroup({"e", "a"}, {{0, 1}, {1, 1}}), ValidationError);
}

TEST_CASE("fgabelian arithmetic") {
  FgAbelianGroup g(1, {2, 6});
  auto a = g.parse_element("[3,1,5]");
  CHECK(g.serialize(g.op(a, a)) == "[6,0,4]");
  CHECK(g.power(a, BigInt(-1)) == g.inv(a));
  CHECK(g.exponent() == 0);
  CHECK(FgAbelianGroup(0, {2, 6}).exponent() == 6);
  CHECK_THROWS_AS(FgAbelianGroup(0, {4, 6}), ValidationError);
  // literals are reduced on input; handles must already be canonical
  CHECK(g.parse_element("[1,2,7]") == Element{1, 0, 1});
  CHECK_THROWS_AS(g.validate(Element{1, 2, 7}), ValidationError);
}

TEST_CASE("Q/Z and Q") {
  QmodZGroup q;
  auto x = q.parse_element("1/3");
  CHECK(q.serialize(q.op(x, q.parse_element("5/6"))) == "1/6");
  CHECK(q.is_identity(q.power(x, BigInt(3))));
  CHECK(q.serialize(q.inv(x)) == "2/3");
  CHECK(q.parse_element("2/4") == q.parse_element("1/2"));
  CHECK_THROWS_AS(q.validate(Element{2, 4}), ValidationError);

  FieldAdditiveGroup f;
  auto y = f.parse_element("-3/4");
  CHECK(f.serialize(f.op(y, f.parse_element("1/4"))) == "-1/2");
  CHECK(f.serialize(f.power(y, BigInt(4))) == "-3");
}

TEST_CASE("semidirect split and inverse") {
  auto a = make_dihedral_split(3);
  auto fr = a->parse_element("fr");
  auto [t, h] = a->split(fr);
  CHECK(a->top().serialize(t) == "f");
  CHECK(a->normal().serialize(h) == "r");
  auto [t1, h1] = a->split(a->build(a->top().identity(), a->normal().parse_element("r")));
  CHECK(a->top().is_identity(t1));
  CHECK(a->normal().serialize(h1) == "r");

  // (t,h)^-1 = (t^-1, action(t^-1)(h^-1)), verified by multiplying back
  for (const auto& x : a->elements()) {
    auto [tx, hx] = a->split(x);
    auto ti = a->top().inv(tx);
    auto expected = a->build(ti, a->act(a->top().index(ti), a->normal().inv(hx)));
    CHECK(a->inv(x) == expected);
    CHECK(a->is_identity(a->op(x, expected)));
  }
  // t^-1 h t = action(t)(h)
  auto f = a->parse_element("f"), r = a->parse_element("r");
  CHECK(a->op(a->op(a->inv(f), r), f) == a->parse_element("r2"));
}

TEST_CASE("dihedral split is S3") {
  auto a = make_dihedral_split(3);
  auto s = make_symmetric3();
  CHECK(a->order() == 6);
  CHECK_FALSE(a->is_abelian());
  // same element order profile
  auto profile = [](const GroupBackend& g) {
    std::multiset<int> out;
    for (const auto& x : g.elements()) {
      int k = 1;
      for (auto y = x; !g.is_identity(y); y = g.op(y, x)) ++k;
      out.insert(k);
    }
    return out;
  };
  CHECK(profile(*a) == profile(*s));
}

TEST_CASE("negation split over Z^2") {
  auto a = make_negation_split(2);
  auto x = a->parse_element("(t,[1,2])");
  CHECK(a->is_identity(a->op(x, x)));
  auto y = a->parse_element("(e,[3,-1])");
  CHECK(a->serialize(a->op(a->inv(x), a->op(y, x))) == "(e,[-3,1])");
  CHECK_FALSE(a->is_finite());
}

TEST_CASE("action must be by automorphisms") {
  auto top = make_cyclic(2, "t");
  auto normal = make_cyclic(3, "r");
  SemidirectAction bad;
  bad.permutations = {{0, 1, 2}, {0, 1, 1}};
  CHECK_THROWS_AS(SemidirectGroup(top, normal, bad), ValidationError);
  SemidirectAction not_hom;
  not_hom.permutations = {{0, 1, 2}, {1, 0, 2}};
  CHECK_THROWS_AS(SemidirectGroup(top, normal, not_hom), ValidationError);
}

TEST_CASE("wreath embedding") {
  auto s3 = make_symmetric3();
  std::vector<Element> h{s3->parse_element("e"), s3->parse_element("(123)"), s3->parse_element("(132)")};
  auto w = wreath_embed(s3, h);
  CHECK(w.group->top().order() == 2);
  CHECK(w.group->normal().order() == 9);
  // homomorphism and injectivity over all 36 pairs
  std::set<Element> images;
  for (const auto& a : s3->elements()) {
    images.insert(w(a));
    for (const auto& b : s3->elements()) CHECK(w(s3->op(a, b)) == w.group->op(w(a), w(b)));
  }
  CHECK(images.size() == 6);

  auto z4 = make_cyclic(4);
  auto e = wreath_embed(z4, {z4->parse_element("e"), z4->parse_element("a2")});
  CHECK(e.group->order() == 8);
  auto g = e(z4->parse_element("a"));
  int k = 1;
  for (auto y = g; !e.group->is_identity(y); y = e.group->op(y, g)) ++k;
  CHECK(k == 4);

  auto trivial = wreath_embed(z4, z4->elements());
  CHECK(trivial.group->top().order() == 1);

  CHECK_THROWS_AS(wreath_embed(s3, {s3->parse_element("e"), s3->parse_element("(12)"), s3->parse_element("(13)")}),
                  ValidationError);
}

TEST_CASE("group files") {
  const std::filesystem::path data = EQGEO_TEST_DATA;
  auto s = load_group(data / "s3_split.json");
  CHECK(s->kind() == "semidirect");
  CHECK(s->order() == 6);
  auto z = load_group(data / "z.json");
  CHECK(z->kind() == "fgabelian");
  // the canonical definition reloads to the same hash
  auto again = group_from_json(s->to_json());
  CHECK(group_hash(*again) == group_hash(*s));
  CHECK_THROWS_AS(group_from_json(json{{"kind", "nope"}}), ValidationError);
  CHECK_THROWS_AS(load_group(data / "missing.json"), ValidationError);
}

TEST_CASE("product elements") {
  ProductGroup p(make_cyclic(2), make_symmetric3());
  auto x = p.parse_element("(a,(123))");
  CHECK(p.serialize(p.op(x, x)) == "(e,(132))");
  CHECK(p.order() == 12);
}
