#include <doctest.h>

#include "dvdp/catalog.hpp"
#include "dvdp/cubics.hpp"

using namespace dvdp;

TEST_CASE("monomial basis in graded-lex order") {
  CHECK(monomials(3).size() == 10);
  CHECK(monomial_str(monomials(3).front()) == "x^3");
  CHECK(monomial_str(monomials(3).back()) == "z^3");
}

TEST_CASE("plane curves round-trip through text") {
  const FieldDesc& f = make_field(2, 2);
  for (auto s : {"x^3+y^2z", "x^2z+xy^2", "xyz+(s+1)z^3"}) {
    auto c = PlaneCurve::parse(s, f);
    CHECK(PlaneCurve::parse(c.str(), f) == c);
  }
}

TEST_CASE("the cuspidal cubic is singular exactly at [0:0:1]") {
  for (int p : {2, 3}) {
    const FieldDesc& f = make_field(p, 1);
    auto c = PlaneCurve::parse("x^3+y^2z", f);
    auto sing = singular_points(c, make_field(p, 2));
    REQUIRE(sing.size() == 1);
    CHECK(sing.front().str() == "[0:0:1]");
  }
}

TEST_CASE("the image of a curve contains the images of its points") {
  const FieldDesc& f = make_field(2, 1);
  auto c = PlaneCurve::parse("x^3+y^2z+xz^2", f);
  FiniteGroup g = enumerate_pgl(3, f);
  for (size_t i = 0; i < g.order(); i += 11) {
    auto img = c.transform(g.elements()[i]);
    for (auto& p : enumerate_points(2, make_field(2, 2)))
      if (c.contains(p)) CHECK(img.contains(g.elements()[i].apply(p)));
  }
}

TEST_CASE("linear systems: each simple point imposes one condition") {
  const FieldDesc& f = make_field(3, 1);
  std::vector<BaseCondition> conds;
  auto pts = enumerate_points(2, f);
  for (int k = 0; k < 4; ++k) {
    auto sys = linear_system(conds, 3, f);
    CHECK(sys.projective_dimension() == 9 - k);
    for (auto& b : sys.basis)
      for (auto& c : conds) CHECK(satisfies(b, c));
    conds.push_back({pts[k * 3], 1, std::nullopt});
  }
}

TEST_CASE("an 8-fold cuspidal chain leaves the pencil <x^3+y^2z, z^3>") {
  const FieldDesc& f = make_field(2, 1);
  auto cusp = PlaneCurve::parse("x^3+y^2z", f);
  auto sys = linear_system({{ProjPoint::from_codes(f, {0, 1, 0}), 8, cusp}}, 3, f);
  REQUIRE(sys.basis.size() == 2);
  for (auto& b : sys.basis) {
    bool in_span = b == cusp || b == PlaneCurve::parse("z^3", f) || b == PlaneCurve::parse("x^3+y^2z+z^3", f);
    CHECK(in_span);
  }
}

TEST_CASE("the char-5 Fermat control pencil has a smooth member") {
  const FieldDesc& f = make_field(5, 1);
  LinearSystem sys;
  sys.field = &f;
  sys.degree = 3;
  sys.basis = {PlaneCurve::parse("x^3+y^3+z^3", f), PlaneCurve::parse("xyz", f)};
  auto v = all_members_singular(sys, 3);
  CHECK_FALSE(v.holds_over_tested_fields);
  CHECK_FALSE(v.failure.empty());
}

TEST_CASE("every recipe's anticanonical system has only singular members") {
  for (auto& row : table1_rows()) {
    CAPTURE(row.id);
    auto r = recipe_by_id(row.id);
    auto v = all_members_singular(linear_system(r.instructions, 3, *r.field), 3);
    CHECK(v.holds_over_tested_fields);
    CHECK(v.certificate_found);
  }
}

TEST_CASE("Bezout: lattice intersections equal plane incidence for all recipe curve pairs") {
  long long pairs = 0;
  for (auto& row : table1_rows()) {
    auto r = recipe_by_id(row.id);
    std::vector<BuiltSurface> surfaces{build(r)};
    if (r.degree == 1) surfaces.push_back(build_z(r));
    for (auto& s : surfaces) {
      std::vector<std::string> labels;
      for (auto& [l, g] : s.geometry) labels.push_back(l);
      for (size_t i = 0; i < labels.size(); ++i)
        for (size_t j = i + 1; j < labels.size(); ++j) {
          long long inc = 0;
          for (auto& p : s.incidence(labels[i], labels[j])) inc += p.multiplicity;
          long long lat = intersect_int(s.model.curve(labels[i]).cls, s.model.curve(labels[j]).cls);
          if (inc != lat) FAIL_CHECK(row.id << ": " << labels[i] << " . " << labels[j] << " = " << lat << " but incidence " << inc);
          ++pairs;
        }
    }
  }
  CHECK(pairs > 2000);
}

TEST_CASE("strict transforms of lines through a blown-up point drop by the multiplicity") {
  const FieldDesc& f = make_field(2, 1);
  auto plan = BlowupPlan::sequential({{ProjPoint::from_codes(f, {0, 0, 1}), 1, std::nullopt}});
  BlowupEngine eng(plan);
  auto line = PlaneCurve::parse("x", f);
  auto cls = eng.strict_transform_class(line);
  CHECK(intersect_int(cls, cls) == 0);
  auto off = eng.strict_transform_class(PlaneCurve::parse("x+z", f));
  CHECK(intersect_int(off, off) == 1);
}
