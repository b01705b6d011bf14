#include <algorithm>

#include <doctest.h>

#include "dvdp/catalog.hpp"
#include "dvdp/piclattice.hpp"
#include "oracles.hpp"

using namespace dvdp;

namespace {

std::string strip(std::string s) {
  s.erase(std::remove(s.begin(), s.end(), '_'), s.end());
  return s;
}

}  // namespace

TEST_CASE("intersection form and canonical class") {
  for (int n = 1; n <= 9; ++n) {
    auto K = DivisorClass::K(n);
    CHECK(intersect_int(K, K) == 9 - n);
    CHECK(intersect_int(DivisorClass::H(n), DivisorClass::H(n)) == 1);
    for (int i = 1; i <= n; ++i) {
      CHECK(intersect_int(DivisorClass::E(n, i), DivisorClass::E(n, i)) == -1);
      CHECK(intersect_int(DivisorClass::E(n, i), K) == -1);
    }
  }
}

TEST_CASE("root counts for n = 1..8 match an independent |d| <= 4 sweep") {
  for (int n = 1; n <= 8; ++n) {
    auto lib = enumerate_roots(n, 3);
    auto sweep = oracle::root_sweep(n, 4);
    CHECK(lib.size() == sweep.size());
    CHECK(static_cast<int>(lib.size()) == oracle::root_counts().at(n));
    std::set<std::vector<int>> want(sweep.begin(), sweep.end());
    for (auto& r : lib) {
      std::vector<int> v;
      for (auto& c : r.coeffs()) v.push_back(static_cast<int>(c.num()));
      CHECK(want.count(v) == 1);
    }
  }
}

TEST_CASE("exceptional classes of a degree-one surface") {
  // 240 classes with C^2 = C.K = -1.
  CHECK(enumerate_classes(8, -1, -1, -3, 6).size() == 240);
  CHECK(enumerate_classes(7, -1, -1, -3, 6).size() == 56);
  CHECK(enumerate_classes(6, -1, -1, -3, 6).size() == 27);
}

TEST_CASE("Dynkin classification of simple root sets") {
  auto r = [](long long d, std::vector<long long> m) { return DivisorClass(d, m); };
  // E_1 - E_2, E_2 - E_3, ..., E_7 - E_8 and H - E_1 - E_2 - E_3 form E_8.
  std::vector<DivisorClass> e8;
  for (int i = 0; i < 7; ++i) {
    std::vector<long long> m(8, 0);
    m[i] = -1;
    m[i + 1] = 1;
    e8.push_back(r(0, m));
  }
  e8.push_back(r(1, {1, 1, 1, 0, 0, 0, 0, 0}));
  CHECK(strip(dynkin_classify(e8)) == "E8");
  std::vector<DivisorClass> a1a1 = {r(0, {-1, 1, 0, 0}), r(0, {0, 0, -1, 1})};
  CHECK(strip(dynkin_classify(a1a1)) == "2A1");
  std::vector<DivisorClass> bad = {r(0, {1, -1, 0}), r(0, {-1, 1, 0})};
  CHECK_THROWS(dynkin_classify(bad));
}

TEST_CASE("Riemann-Roch on a few classes") {
  CHECK(chi_rr(DivisorClass(9)) == 1);
  // -K on a degree-d del Pezzo: chi = d + 1.
  for (int n = 1; n <= 8; ++n) CHECK(chi_rr(-DivisorClass::K(n)) == 10 - n);
}

TEST_CASE("pullbacks are orthogonal to the contracted curves") {
  auto y = build(recipe_by_id("8A1"));
  auto k = kv_8a1(y);
  for (auto& c : y.model.minus2()) CHECK(intersect(k.pullback.cls, c.cls).is_zero());
  CHECK(k.round_up.cls.is_integral());
  CHECK(intersect_int(k.round_up.cls, k.round_up.cls) == -3);
}

TEST_CASE("matrix fixtures are symmetric with (-1)/(-2) diagonals") {
  for (auto name : {"matrix_7A1.txt", "matrix_8A1.txt", "matrix_deg4.txt", "matrix_type_g.txt"}) {
    auto fx = load_matrix_fixture(fixtures_dir() + "/" + name);
    CHECK(fx.rows.size() == fx.labels.size());
    for (size_t i = 0; i < fx.rows.size(); ++i) {
      CHECK((fx.rows[i][i] == -1 || fx.rows[i][i] == -2));
      for (size_t j = 0; j < fx.rows.size(); ++j) CHECK(fx.rows[i][j] == fx.rows[j][i]);
    }
  }
}

TEST_CASE("curve roles follow from numerics") {
  CHECK(numeric_role(DivisorClass::E(3, 1)) == CurveRole::Minus1);
  CHECK(numeric_role(DivisorClass(1, {1, 1, 1})) == CurveRole::Minus2);
}
