#include <doctest.h>

#include <random>

#include "eqgeo/backends.hpp"
#include "eqgeo/dsl.hpp"
#include "eqgeo/errors.hpp"
#include "eqgeo/word.hpp"

using namespace eqgeo;

namespace {

Element s3(const GroupPtr& g, const char* name) { return g->parse_element(name); }

}  // namespace

TEST_CASE("normalize cancels variables and merges coefficients") {
  auto z2 = make_cyclic(2);
  auto s = make_symmetric3();
  std::vector<Letter> raw{Letter::variable(1, 1), Letter::variable(1, -1)};
  CHECK(Word::normalize(z2, 1, raw).empty());

  auto a = s3(s, "(12)"), b = s3(s, "(123)");
  std::vector<Letter> ab{Letter::coefficient(a), Letter::coefficient(b)};
  auto w = Word::normalize(s, 0, ab);
  REQUIRE(w.size() == 1);
  CHECK(w.letters()[0].coef == s->op(a, b));

  std::vector<Letter> nested{Letter::variable(1, 1), Letter::coefficient(b), Letter::coefficient(s->inv(b)),
                             Letter::variable(1, -1)};
  auto v = Word::normalize(s, 1, nested);
  CHECK(v.empty());
  // evaluation at random tuples agrees with the empty word
  std::mt19937_64 rng(1);
  for (int i = 0; i < 5; ++i) {
    Tuple x{s->random_element(rng)};
    auto raw_value = s->op(s->op(x[0], b), s->op(s->inv(b), s->inv(x[0])));
    CHECK(s->is_identity(raw_value));
    CHECK(s->is_identity(evaluate(v, x, *s)));
  }
}

TEST_CASE("arity is enforced") {
  auto z2 = make_cyclic(2);
  std::vector<Letter> raw{Letter::variable(3, 1)};
  CHECK_THROWS_AS(Word::normalize(z2, 2, raw), ArityError);
  CHECK_THROWS_AS(parse_word("x3", z2, 2), ValidationError);
}

TEST_CASE("multiply and invert") {
  auto s = make_symmetric3();
  auto a = s3(s, "(13)");
  auto x1 = Word::variable(s, 2, 1), x2 = Word::variable(s, 2, 2), ca = Word::coefficient(s, 2, a);
  auto w = x1 * ca;
  CHECK((w * w.inverse()).empty());
  auto inv = w.inverse();
  REQUIRE(inv.size() == 2);
  CHECK(inv.letters()[0].coef == s->inv(a));
  CHECK(inv.letters()[1] == Letter::variable(1, -1));
  CHECK(w * (ca.inverse() * x2) == x1 * x2);

  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    Tuple v{s->random_element(rng), s->random_element(rng)};
    CHECK(evaluate(w * x2, v, *s) == s->op(s->op(v[0], a), v[1]));
  }
}

TEST_CASE("powers") {
  auto s = make_symmetric3();
  auto x = Word::variable(s, 1, 1);
  CHECK(x.pow(3).size() == 3);
  CHECK(x.pow(-2) == x.inverse() * x.inverse());
  CHECK(x.pow(0).empty());
  auto c = Word::coefficient(s, 1, s3(s, "(123)"));
  CHECK(c.pow(3).empty());
}

TEST_CASE("substitution") {
  auto z = std::make_shared<FgAbelianGroup>(1, std::vector<std::int64_t>{});
  auto w = parse_word("x1 * x2", z, 2);
  CHECK(substitute(w, std::vector<Word>{Word::variable(z, 2, 2), Word::variable(z, 2, 1)}) == parse_word("x2 x1", z, 2));
  CHECK(substitute(w, std::vector<Word>{Word::variable(z, 2, 1), Word::variable(z, 2, 2)}) == w);

  // coefficients to fresh variables: x1^2 a1 x2 a2^-1 -> x1^2 y1 x2 y2^-1
  auto s = make_symmetric3();
  auto a1 = s3(s, "(12)"), a2 = s3(s, "(123)");
  auto src = parse_word("x1^2 * g:(12) * x2 * g:(123)^-1", s, 2);
  auto lifted = map_word(
      src, s, 4, [&](std::uint32_t i) { return Word::variable(s, 4, i); },
      [&](const Element& c) { return c == a1 ? Word::variable(s, 4, 3) : Word::variable(s, 4, 4, -1); });
  CHECK(print_word(lifted) == "x1^2 * x3 * x2 * x4^-1");
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    Tuple e{s->random_element(rng), s->random_element(rng)};
    Tuple t = e;
    t.push_back(a1);
    t.push_back(a2);
    CHECK(evaluate(lifted, t, *s) == evaluate(src, e, *s));
  }

  std::vector<std::optional<Word>> partial{std::nullopt, Word::variable(z, 2, 1)};
  CHECK_THROWS_AS(substitute(w, partial), ValidationError);
}

TEST_CASE("evaluation") {
  auto z2 = std::make_shared<FgAbelianGroup>(2, std::vector<std::int64_t>{});
  auto w = parse_word("x1^2 * x2^-1 * g:[0,3]", z2, 2);
  Tuple v{Element{1, 1}, Element{2, -1}};
  CHECK(evaluate(w, v, *z2) == Element{0, 6});
  CHECK(evaluate(Word(z2, 2), v, *z2) == z2->identity());

  auto s = make_symmetric3();
  Tuple c{s3(s, "(123)")};
  CHECK(s->is_identity(evaluate(parse_word("x1^3", s, 1), c, *s)));
}

TEST_CASE("coefficient embedding") {
  // Z/2 into Z/4 by doubling
  auto z2 = make_cyclic(2), z4 = make_cyclic(4);
  auto w = parse_word("x1 * g:a", z2, 1);
  Tuple v{z4->parse_element("a")};
  Embedding iota = [&](const Element& e) { return Element{e.data[0] * 2}; };
  CHECK(evaluate(w, v, *z4, iota) == z4->parse_element("a3"));
}

TEST_CASE("text round trip") {
  auto q = std::make_shared<QmodZGroup>();
  for (const char* text : {"1", "x1 * x2^-1", "x1^3 * g:1/6 * x2", "g:2/3"}) {
    auto w = parse_word(text, q, 2);
    CHECK(parse_word(print_word(w), q, 2) == w);
  }
  CHECK_THROWS_AS(parse_word("x1 ** x2", q, 2), ParseError);
  CHECK_THROWS_AS(parse_word("* x1", q, 2), ParseError);
  CHECK_THROWS_AS(parse_word("x1 *", q, 2), ParseError);
  CHECK_THROWS_AS(parse_word("g:nonsense", q, 2), ValidationError);
}

TEST_CASE("linearized words keep huge exponents") {
  auto q = std::make_shared<QmodZGroup>();
  auto w = parse_linear("x1^1000000000000", *q, 1);
  CHECK(w.alpha[0] == BigInt("1000000000000"));
  Element half = QmodZGroup::make(1, 2);
  CHECK(q->is_identity(evaluate_linear(w, std::span<const Element>(&half, 1), *q)));
  CHECK_THROWS_AS(expand_linear(w, q), ValidationError);
  CHECK(exponent_sums(parse_word("x1 x2 x1^-3", q, 2)) == std::vector<std::int64_t>{-2, 1});
}
