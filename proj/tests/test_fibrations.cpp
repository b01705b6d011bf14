#include <set>

#include <doctest.h>

#include "dvdp/catalog.hpp"
#include "dvdp/fibrations.hpp"

using namespace dvdp;

namespace {

std::vector<Recipe> degree_one_rows() {
  std::vector<Recipe> out;
  for (auto& row : table1_rows()) {
    auto r = recipe_by_id(row.id);
    if (r.degree == 1) out.push_back(r);
  }
  return out;
}

}  // namespace

TEST_CASE("root lattice discriminants") {
  CHECK(root_lattice_discriminant("A_1") == 2);
  CHECK(root_lattice_discriminant("A_2") == 3);
  CHECK(root_lattice_discriminant("D_4") == 4);
  CHECK(root_lattice_discriminant("D_6") == 4);
  CHECK(root_lattice_discriminant("E_6") == 3);
  CHECK(root_lattice_discriminant("E_7") == 2);
  CHECK(root_lattice_discriminant("E_8") == 1);
}

TEST_CASE("all ten quasi-elliptic types are covered") {
  std::set<std::string> types;
  for (auto& r : degree_one_rows()) types.insert(r.expected.ztype);
  CHECK(types == std::set<std::string>{"1", "2", "3", "a", "b", "c", "d", "e", "f", "g"});
}

TEST_CASE("Shioda-Tate count is 10 and sections match Mordell-Weil on every nine-point blow-up") {
  for (auto& r : degree_one_rows()) {
    CAPTURE(r.id);
    auto z = build_z(r);
    auto ft = fiber_table(z);
    CHECK(ft.shioda_tate == 10);
    CHECK(static_cast<long long>(ft.sections.size()) == r.expected.mw_order);
    CHECK(ft.mw_from_discriminants == r.expected.mw_order);
    // Fiber classes are all -K.
    auto K = DivisorClass::K(z.model.n);
    for (auto& f : ft.fibers) CHECK(f.fiber_class() == -K);
    for (auto& s : ft.sections) {
      CHECK(intersect_int(s.cls, s.cls) == -1);
      CHECK(intersect_int(s.cls, K) == -1);
    }
  }
}

TEST_CASE("Kodaira types follow the fiber fixtures") {
  for (auto& r : degree_one_rows()) {
    CAPTURE(r.id);
    auto fx = load_json_fixture("fibers/type_" + r.expected.ztype + ".json");
    auto ft = fiber_table(build_z(r));
    std::multiset<std::string> want, got;
    for (auto& f : fx.at("fibers")) want.insert(f.at("type").get<std::string>());
    for (auto& f : ft.fibers) got.insert(f.kodaira_type);
    CHECK(want == got);
  }
}

TEST_CASE("type-(f) fibers sit at the roots of t^2 + a t + 1") {
  auto loc = type_f_location(recipe_by_id("4A1+D4"));
  CHECK(loc.product_is_one);
  CHECK((loc.alpha1 + loc.alpha2) == -loc.a);
  CHECK(!loc.a.is_zero());
}
