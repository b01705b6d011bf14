#include <doctest.h>

#include "dvdp/projgeom.hpp"
#include "oracles.hpp"

using namespace dvdp;

namespace {

// |G| = |orbit| * |Stab(x)| for every orbit, and the orbits partition the set.
void check_orbit_stabilizer(const FiniteGroup& g, const std::vector<ProjPoint>& pts) {
  auto orb = orbits(g, pts);
  size_t total = 0;
  for (auto& o : orb.orbits) {
    total += o.size();
    for (auto& x : o) CHECK(o.size() * stabilizer(g, x).order() == g.order());
  }
  CHECK(total == pts.size());
  CHECK(orb.burnside_count == static_cast<long long>(orb.orbits.size()));
}

}  // namespace

TEST_CASE("point counts of the projective plane") {
  for (auto [p, k] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}})
    CHECK(static_cast<long long>(enumerate_points(2, make_field(p, k)).size()) ==
          oracle::p2_points(make_field(p, k).size()));
}

TEST_CASE("D_n point counts follow inclusion-exclusion") {
  for (int e = 1; e <= 5; ++e) {
    long long q = 1LL << e;
    CHECK(static_cast<long long>(dn_points(2, make_field(2, e)).size()) == std::max(0LL, oracle::d2_points(q)));
    CHECK(static_cast<long long>(dn_points(1, make_field(2, e)).size()) == std::max(0LL, oracle::d1_points(q)));
  }
  CHECK(dn_points(2, make_field(2, 3)).size() == 24);
  CHECK(dn_points(2, make_field(2, 2)).empty());
  CHECK(dn_points(1, make_field(2, 2)).size() == 2);
}

TEST_CASE("projective linear groups have the expected orders") {
  CHECK(static_cast<long long>(enumerate_pgl(3, make_field(2, 1)).order()) == oracle::pgl_order(3, 2));
  CHECK(enumerate_pgl(3, make_field(2, 1)).order() == 168);
  CHECK(enumerate_pgl(2, make_field(2, 1)).order() == 6);
  CHECK(enumerate_pgl(2, make_field(3, 1), true).order() == 48);
  CHECK(static_cast<long long>(enumerate_pgl(3, make_field(3, 1)).order()) == oracle::pgl_order(3, 3));
  enumerate_pgl(3, make_field(2, 1)).check_closed();
}

TEST_CASE("orbit-stabilizer identity on every computed action") {
  FiniteGroup g3 = enumerate_pgl(3, make_field(2, 1));
  FiniteGroup g2 = enumerate_pgl(2, make_field(2, 1));
  check_orbit_stabilizer(g3, enumerate_points(2, make_field(2, 1)));
  check_orbit_stabilizer(g3, enumerate_points(2, make_field(2, 2)));
  for (int e = 3; e <= 4; ++e) check_orbit_stabilizer(g3, dn_points(2, make_field(2, e)));
  for (int e = 2; e <= 5; ++e) check_orbit_stabilizer(g2, dn_points(1, make_field(2, e)));
  check_orbit_stabilizer(enumerate_pgl(3, make_field(3, 1)), enumerate_points(2, make_field(3, 1)));
}

TEST_CASE("D_2(F_8) is one orbit with cyclic stabilizers of order 7") {
  FiniteGroup g = enumerate_pgl(3, make_field(2, 1));
  auto pts = dn_points(2, make_field(2, 3));
  auto orb = orbits(g, pts);
  CHECK(orb.orbits.size() == 1);
  auto st = stabilizer(g, pts.front());
  CHECK(st.order() == 7);
  CHECK(st.invariants().abelian);
}

TEST_CASE("transforms compose and invert") {
  FiniteGroup g = enumerate_pgl(3, make_field(2, 1));
  for (size_t i = 0; i < g.order(); i += 17) {
    const auto& a = g.elements()[i];
    CHECK(a.compose(a.inverse()).is_identity());
    CHECK(g.contains(a.compose(g.elements()[(i * 5) % g.order()])));
  }
}

TEST_CASE("points of D_n lie on no F_2-hyperplane") {
  const FieldDesc& f8 = make_field(2, 3);
  for (auto& p : dn_points(2, f8)) {
    CHECK(in_dn(p));
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c) {
          if (a + b + c == 0) continue;
          FieldElem v = FieldElem::from_int(f8, a) * p.coords()[0] + FieldElem::from_int(f8, b) * p.coords()[1] +
                        FieldElem::from_int(f8, c) * p.coords()[2];
          CHECK(!v.is_zero());
        }
  }
}

TEST_CASE("cross-ratio orbits detect projective equivalence") {
  const FieldDesc& q = make_field(0, 2);
  FieldElem one = FieldElem::one(q), w = FieldElem::gen(q), zero = FieldElem::zero(q);
  std::vector<ProjPoint> a = {affine_p1(one), affine_p1(w), affine_p1(w * w), infinity_p1(q)};
  std::vector<ProjPoint> b = {affine_p1(zero), affine_p1(one), affine_p1(-w), infinity_p1(q)};
  CHECK(quadruples_projectively_equivalent(a, b));
  std::vector<ProjPoint> c = {affine_p1(zero), affine_p1(one), affine_p1(FieldElem::from_int(q, 2)), infinity_p1(q)};
  CHECK(!quadruples_projectively_equivalent(a, c));
  CHECK(cross_ratio_orbit(a).size() == 2);
}

TEST_CASE("fixed loci of an order-7 element of PGL(3, F_2) over F_8") {
  FiniteGroup g = enumerate_pgl(3, make_field(2, 1));
  for (auto& x : g.elements())
    if (FiniteGroup::element_order(x) == 7) {
      CHECK(fixed_locus(x, make_field(2, 3)).size() == 3);
      CHECK(fixed_locus(x, make_field(2, 1)).empty());
      break;
    }
}

TEST_CASE("invalid points are rejected") {
  const FieldDesc& f = make_field(2, 1);
  CHECK_THROWS(ProjPoint({FieldElem::zero(f), FieldElem::zero(f)}));
}
