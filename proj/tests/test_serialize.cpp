#include "diffalg/serialize.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace diffalg;

TEST_CASE("coefficients and polynomials round trip") {
  RatFunc c(UPoly::parse("t^2 - 3/2"), UPoly::parse("2*t + 1"));
  CHECK(ratfunc_from_json(to_json(c)) == c);
  CHECK(ratfunc_from_json(json(5)) == RatFunc(5));

  DiffPoly p = xpoly(2) * cpoly(1, 2) * RatFunc::t() - cpoly(2, 1, 1, Group::GroupLeft) * ypoly() +
               DiffPoly::term(RatFunc(3), Monomial::of(xvar(), -2)) + aux("tau") + DiffPoly(7);
  json j = to_json(p);
  CHECK(diffpoly_from_json(j) == p);
  CHECK(diffpoly_from_json(json::parse(j.dump())) == p);
  CHECK(diffpoly_from_json(json::array()).is_zero());
}

TEST_CASE("polynomial parser rejects malformed input") {
  CHECK_THROWS_AS(diffpoly_from_json(json::object()), Error);
  CHECK_THROWS_AS(diffpoly_from_json(json::parse(R"([{"coeff": 1}])")), Error);
  CHECK_THROWS_AS(diffpoly_from_json(json::parse(R"([{"coeff": 1, "mono": [["module", "x", 0]]}])")), Error);
  CHECK_THROWS_AS(diffpoly_from_json(json::parse(R"([{"coeff": 1, "mono": [["nowhere", "x", 0, 1]]}])")),
                  Error);
  CHECK_THROWS_AS(diffpoly_from_json(json::parse(R"([{"coeff": 1, "mono": [["module", "x", 99, 1]]}])")),
                  Error);
  CHECK_THROWS_AS(ratfunc_from_json(json::parse(R"({"num": "1", "den": "0"})")), Error);
}

TEST_CASE("quotient elements store normal forms") {
  DiffPoly det = cpoly(1, 1) * cpoly(2, 2) - cpoly(1, 2) * cpoly(2, 1);
  QuotElem q(Ring::A, det * xpoly() + cpoly(1, 1, 1));
  json j = to_json(q);
  CHECK(j["ring"] == "A");
  QuotElem back = quotelem_from_json(j);
  CHECK(back == q);
  // A non-reduced representative loads to the same class.
  json raw{{"ring", "A"}, {"rep", to_json(det)}};
  CHECK(quotelem_from_json(raw) == QuotElem::constant(Ring::A, RatFunc(1)));
  CHECK_THROWS_AS(quotelem_from_json(json{{"ring", "C"}, {"rep", json::array()}}), Error);
}

TEST_CASE("modules round trip") {
  for (const FinModule& m : {construct_Wd(2), construct_Pdk(1, 1), dual(construct_Wd(2))}) {
    json j = to_json(m);
    CHECK(j["dim"] == m.dim());
    FinModule back = finmodule_from_json(json::parse(j.dump()));
    CHECK(back.dim() == m.dim());
    CHECK(back.coaction() == m.coaction());
    CHECK(back.basis().has_value() == m.basis().has_value());
  }
  json bad = to_json(construct_Wd(2));
  bad["dim"] = 7;
  CHECK_THROWS_AS(finmodule_from_json(bad), Error);
}

TEST_CASE("matrices and nilpotent arrays round trip") {
  auto rng = testing::trial_rng(3, 0);
  KMatrix q = testing::random_invertible(rng, 3);
  q(0, 0) = RatFunc(UPoly::t(), UPoly::parse("t + 1"));
  CHECK(kmatrix_from_json(to_json(q)) == q);
  NilArray n = testing::random_nilarray(rng, 2, 3, 2);
  NilArray back = nilarray_from_json(json::parse(to_json(n).dump()));
  CHECK(back.n() == n.n());
  CHECK(back.r() == n.r());
  CHECK(back.entries() == n.entries());
}

TEST_CASE("torus representations round trip") {
  GmRep rep{1, {}, {{xpoly(), xpoly(1)}, {DiffPoly(), xpoly()}}};
  GmRep back = gmrep_from_json(to_json(rep));
  CHECK(back.n == 1);
  CHECK(back.vars == torus_var_names(1));
  CHECK(back.matrix == rep.matrix);
  auto comps = classify_gm(back);
  REQUIRE(comps.size() == 1);
  json c = to_json(comps[0]);
  CHECK(c["d"] == json::array({1}));
  CHECK(nilarray_equiv(nilarray_from_json(c["N"]), comps[0].N).has_value());
}

TEST_CASE("reports") {
  auto ext = to_json(classify_extension(construct_Wd(2)));
  CHECK(ext["tag"] == "Wd");
  CHECK(ext["d"] == 2);
  auto split = to_json(classify_extension(direct_sum(construct_Pdk(1, 0), construct_Pdk(1, 0))));
  CHECK(split["tag"] == "split");
  CHECK(split["d"].is_null());
  auto det = to_json(detprime_check(2));
  CHECK(det["q"] == 2);
  CHECK(det["passed"] == true);
}
