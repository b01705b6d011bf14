#include <doctest.h>

#include "dvdp/catalog.hpp"

using namespace dvdp;

TEST_CASE("every non-parametrized row verifies") {
  for (auto& row : table1_rows()) {
    auto r = recipe_by_id(row.id);
    if (r.param) continue;
    CAPTURE(row.id);
    auto rep = verify(r);
    for (auto& c : rep.checks)
      if (c.status == "fail") FAIL_CHECK(c.id << ": expected " << c.expected.dump() << " computed " << c.computed.dump());
    CHECK(rep.passed());
  }
}

TEST_CASE("parametrized D_1 rows verify at every parameter of D_1(F_2^e), e <= 3") {
  for (std::string id : {"2D4", "4A1+D4"}) {
    for (int e = 2; e <= 3; ++e)
      for (auto& t : dn_points(1, make_field(2, e))) {
        CAPTURE(id);
        CAPTURE(t.str());
        auto rep = verify(recipe_by_id(id, t));
        for (auto& c : rep.checks)
          if (c.status == "fail") FAIL_CHECK(c.id << ": " << c.computed.dump());
      }
  }
}

TEST_CASE("8A1: automorphism order is constant on the orbit D_2(F_8)") {
  auto pts = dn_points(2, make_field(2, 3));
  REQUIRE(pts.size() == 24);
  for (auto& t : pts) {
    CAPTURE(t.str());
    auto r = recipe_by_id("8A1", t);
    CHECK(aut_discrete(r).order == 56);
    auto y = build(r);
    CHECK(dynkin_classify(y.census_minus2) == "8A_1");
  }
  auto rep = verify(recipe_by_id("8A1", pts[5]));
  CHECK(rep.passed());
}

TEST_CASE("8A1 over F_16 loses the order-7 factor") {
  auto pts = dn_points(2, make_field(2, 4));
  REQUIRE(!pts.empty());
  CHECK(aut_discrete(recipe_by_id("8A1", pts.front())).order == 8);
}

TEST_CASE("finite automorphism orders") {
  CHECK(aut_discrete(recipe_by_id("4A2")).order == 48);
  CHECK(aut_discrete(recipe_by_id("7A1")).order == 168);
  CHECK(aut_discrete(recipe_by_id("2A1+D6")).order == 2);
  CHECK(aut_discrete(recipe_by_id("4A1+D4")).order == 12);
  CHECK(aut_discrete(recipe_by_id("2D4")).order == 6);
  CHECK_FALSE(aut_discrete(recipe_by_id("E7")).computed);
}

TEST_CASE("2D4 finite part: configuration group 3 at F_4, 1 at F_8, times the fiber swap") {
  auto f4 = aut_discrete(recipe_by_id("2D4", dn_points(1, make_field(2, 2)).front()));
  auto f8 = aut_discrete(recipe_by_id("2D4", dn_points(1, make_field(2, 3)).front()));
  CHECK(f4.config_order == 3);
  CHECK(f8.config_order == 1);
  CHECK(f4.extra_factor == 2);
  CHECK(f8.order == 2);
}

TEST_CASE("moduli censuses") {
  auto c = moduli_census("8A1", 3);
  CHECK(c.point_count == 24);
  CHECK(c.orbit_count == 1);
  CHECK(c.stabilizer_orders == std::vector<long long>{7});
  auto d = moduli_census("2D4", 2);
  CHECK(d.point_count == 2);
  CHECK(d.orbit_count == 1);
  CHECK(d.stabilizer_orders == std::vector<long long>{3});
  CHECK(moduli_census("8A1", 2).point_count == 0);
  CHECK_THROWS(moduli_census("E7", 2));
  CHECK_THROWS(moduli_census("8A1", 7));
}

TEST_CASE("the 8A1 code is RM(1,3)") {
  auto c = hamming_check(build(recipe_by_id("8A1")));
  CHECK(c.params.n == 8);
  CHECK(c.params.k == 4);
  CHECK(c.params.d == 4);
  CHECK(c.rm.equal);
  CHECK(c.aut.order == 1344);
}

TEST_CASE("vanishing failures") {
  auto k = kv_8a1(build(recipe_by_id("8A1")));
  CHECK(k.self_intersection == -3);
  CHECK(k.anticanonical_degree == 1);
  CHECK(k.chi == -1);
  CHECK(k.h1 == 1);
  CHECK(k.parity);
  CHECK(k.negativity);
  auto k2 = kv_4a1d4(build(recipe_by_id("4A1+D4")));
  CHECK(k2.identities.size() == 7);
  for (auto& [s, ok] : k2.identities) CHECK_MESSAGE(ok, s);
  CHECK(k2.degree_check == 2);
  for (auto& [g, d] : k2.generator_degrees) CHECK(d == 1);
}

TEST_CASE("Hesse pencil singular members") {
  auto h = hesse_check();
  CHECK(h.singular_members.size() == 4);
  CHECK(h.equivalent_to_roots_of_unity);
  CHECK(h.alpha_is_minus_omega);
  CHECK(h.alpha == -FieldElem::gen(make_field(0, 2)));
}

TEST_CASE("degree-4 model matrix equals its fixture") {
  auto m = build_degree4_model(default_param("8A1"));
  auto fx = load_matrix_fixture(fixtures_dir() + "/matrix_deg4.txt");
  CHECK(intersection_matrix(m.model, fx.labels) == fx.rows);
  CHECK(m.model.degree() == 4);
}

TEST_CASE("recipe selection errors") {
  CHECK_THROWS_WITH(recipe(2, "E_6"), doctest::Contains("valid rows"));
  CHECK_THROWS_WITH(recipe_by_id("8A1", ProjPoint::from_codes(make_field(2, 3), {1, 1, 0})),
                    doctest::Contains("not in D_2"));
  CHECK_THROWS(recipe_by_id("7A1", default_param("8A1")));
  CHECK(recipe(2, "2A1+D6").id == "2A1+D6");
  CHECK(recipe(3, "A_2+E_6").id == "A2+E6");
}

TEST_CASE("ninth center is the base point of the anticanonical pencil") {
  for (auto& row : table1_rows()) {
    auto r = recipe_by_id(row.id);
    if (r.degree != 1) continue;
    auto plan = ninth_center_plan(r.instructions, *r.field);
    CHECK(plan.n() == 9);
    auto z = build_z(r);
    CHECK(z.model.degree() == 0);
  }
}

TEST_CASE("reports serialize and tables have one row per recipe") {
  std::vector<Recipe> rs = {recipe_by_id("7A1"), recipe_by_id("2A1+D6")};
  std::vector<VerificationReport> reps = {verify(rs[0]), verify(rs[1])};
  auto j = reps[0].to_json();
  CHECK(j.at("recipe") == "7A1");
  CHECK(j.at("passed") == true);
  CHECK(!j.at("checks").empty());
  auto t1 = table1_markdown(rs, reps);
  auto t6 = table6_markdown(rs, reps);
  CHECK(std::count(t1.begin(), t1.end(), '\n') == 4);
  CHECK(t6.find("| 168 |") != std::string::npos);
}

TEST_CASE("verification is deterministic") {
  auto a = verify(recipe_by_id("4A2")).to_json().dump();
  auto b = verify(recipe_by_id("4A2")).to_json().dump();
  CHECK(a == b);
}
