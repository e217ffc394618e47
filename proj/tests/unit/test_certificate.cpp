#include <doctest.h>

#include "eqgeo/backends.hpp"
#include "eqgeo/certificate.hpp"
#include "eqgeo/group_io.hpp"

using namespace eqgeo;

namespace {

WitnessCertificate s3_certificate() {
  auto s = make_symmetric3();
  std::vector<Tuple> e;
  for (const char* x : {"(123)", "(12)", "(132)", "e", "(13)"}) e.push_back({s->parse_element(x)});
  return witness(TupleSet(s, 1, e));
}

// Edits a field and restamps the digest, so only the semantic check can
// catch the change.
json restamped(json j, const std::function<void(json&)>& edit) {
  edit(j);
  j.erase("digest");
  j["digest"] = hex64(fnv1a(j.dump()));
  return j;
}

}  // namespace

TEST_CASE("canonical text round trip") {
  auto c = s3_certificate();
  auto text = certificate_text(c);
  CHECK(text.back() == '\n');
  CHECK(check_certificate_text(text).valid);
  CHECK(certificate_text(json::parse(text)) == text);
  // same content, different whitespace: rejected
  CHECK_FALSE(check_certificate_text(json::parse(text).dump()).valid);
  CHECK_FALSE(check_certificate_text("not json").valid);
}

TEST_CASE("restamping the digest is consistent") {
  auto j = s3_certificate().to_json();
  CHECK(restamped(j, [](json&) {}) == j);
}

TEST_CASE("semantic tampering is caught") {
  auto j = s3_certificate().to_json();
  REQUIRE(j["steps"].size() >= 1);

  SUBCASE("digest") {
    j["digest"] = "0000000000000000";
    CHECK_FALSE(check_certificate(j).valid);
  }
  SUBCASE("separator that does not separate") {
    auto bad = restamped(j, [](json& x) { x["steps"][0]["separator"] = "x1^6"; });
    CHECK_FALSE(check_certificate(bad).valid);
  }
  SUBCASE("E0 too small") {
    auto bad = restamped(j, [](json& x) {
      x["E0"].erase(x["E0"].size() - 1);
      x["E0_indices"].erase(x["E0_indices"].size() - 1);
      x["steps"].erase(x["steps"].size() - 1);
    });
    CHECK_FALSE(check_certificate(bad).valid);
  }
  SUBCASE("group swapped") {
    auto bad = restamped(j, [](json& x) { x["group"] = make_cyclic(6)->to_json(); });
    CHECK_FALSE(check_certificate(bad).valid);
  }
  SUBCASE("null separator on a strict step") {
    auto bad = restamped(j, [](json& x) { x["steps"][0]["separator"] = nullptr; });
    CHECK_FALSE(check_certificate(bad).valid);
  }
  SUBCASE("unknown oracle") {
    auto bad = restamped(j, [](json& x) { x["oracle"] = "trust-me"; });
    CHECK_FALSE(check_certificate(bad).valid);
  }
}

TEST_CASE("nested certificates are checked") {
  auto z2 = make_cyclic(2);
  auto p = std::make_shared<ProductGroup>(std::make_shared<FgAbelianGroup>(1, std::vector<std::int64_t>{}), z2);
  TupleSet e(p, 1, {{p->parse_element("([1],a)")}, {p->parse_element("([2],a)")}, {p->parse_element("([3],e)")}});
  auto j = witness_product(e).to_json();
  CHECK(check_certificate(j).valid);
  auto bad = restamped(j, [](json& x) {
    auto& left = x["nested"]["left"];
    left["steps"][0]["separator"] = "x1";
  });
  CHECK_FALSE(check_certificate(bad).valid);
}

TEST_CASE("abelian certificates") {
  auto q = std::make_shared<QmodZGroup>();
  TupleSet e(q, 1, {{QmodZGroup::make(1, 2)}, {QmodZGroup::make(1, 3)}, {QmodZGroup::make(1, 5)}});
  auto j = witness_abelian(e, CoefficientMode::none()).to_json();
  CHECK(check_certificate(j).valid);
  CHECK(j["steps"][1]["separator"] == "x1^6");
  auto bad = restamped(j, [](json& x) { x["steps"][1]["separator"] = "x1^30"; });
  CHECK_FALSE(check_certificate(bad).valid);

  // E0 = {(1,2)} is a witness only without constants
  auto z = std::make_shared<FgAbelianGroup>(1, std::vector<std::int64_t>{});
  TupleSet line(z, 2, {{Element{1}, Element{2}}, {Element{2}, Element{4}}});
  auto free = witness_abelian(line, CoefficientMode::none()).to_json();
  CHECK(check_certificate(free).valid);
  auto swapped = restamped(free, [](json& x) { x["coefficients"] = "all"; });
  CHECK_FALSE(check_certificate(swapped).valid);
}
