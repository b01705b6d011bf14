#include <doctest.h>

#include "dvdp/exactfield.hpp"
#include "oracles.hpp"

using namespace dvdp;

namespace {

std::vector<FieldElem> elements(const FieldDesc& f) {
  std::vector<FieldElem> out;
  for (int c = 0; c < f.size(); ++c) out.push_back(FieldElem::from_code(f, c));
  return out;
}

}  // namespace

TEST_CASE("field axioms hold exhaustively on small fields") {
  for (auto [p, k] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {5, 1}}) {
    const FieldDesc& f = make_field(p, k);
    auto el = elements(f);
    CHECK(static_cast<int>(el.size()) == f.size());
    for (auto& a : el) {
      CHECK(a + FieldElem::zero(f) == a);
      CHECK(a * FieldElem::one(f) == a);
      CHECK((a + (-a)).is_zero());
      if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
      CHECK(a.pow(f.size()) == a);
      for (auto& b : el) {
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        for (auto& c : el) CHECK(a * (b + c) == a * b + a * c);
      }
    }
  }
}

TEST_CASE("F_8 multiplication agrees with carry-less arithmetic modulo t^3+t+1") {
  const FieldDesc& f = make_field(2, 3);
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b)
      CHECK(f.mul(a, b) == static_cast<int>(oracle::gf2_mul(a, b, 0b1011)));
}

TEST_CASE("F_16 multiplication agrees with carry-less arithmetic modulo t^4+t+1") {
  const FieldDesc& f = make_field(2, 4);
  for (int a = 0; a < 16; ++a)
    for (int b = 0; b < 16; ++b)
      CHECK(f.mul(a, b) == static_cast<int>(oracle::gf2_mul(a, b, 0b10011)));
}

TEST_CASE("Frobenius is additive and p-th roots invert it") {
  for (auto [p, k] : std::vector<std::pair<int, int>>{{2, 3}, {3, 2}, {2, 6}}) {
    const FieldDesc& f = make_field(p, k);
    for (auto& a : elements(f)) {
      CHECK(pth_root(a).pow(p) == a);
      for (auto& b : elements(f))
        if (k <= 3) CHECK((a + b).pow(p) == a.pow(p) + b.pow(p));
    }
  }
}

TEST_CASE("the primitive element generates the multiplicative group") {
  for (auto [p, k] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {2, 4}, {3, 2}}) {
    const FieldDesc& f = make_field(p, k);
    std::set<int> seen;
    int x = 1;
    for (int i = 0; i < f.size() - 1; ++i) {
      seen.insert(x);
      x = f.mul(x, f.primitive());
    }
    CHECK(static_cast<int>(seen.size()) == f.size() - 1);
  }
}

TEST_CASE("element strings round-trip through the parser") {
  const FieldDesc& f = make_field(2, 3);
  for (auto& a : elements(f)) CHECK(f.parse_elem(a.str()) == a.code());
  CHECK(FieldElem::from_code(f, f.parse_elem("s^2+1")) == FieldElem::gen(f).pow(2) + FieldElem::one(f));
  CHECK(f.parse_elem("s^3") == f.parse_elem("s+1"));
}

TEST_CASE("subfield embeddings are ring homomorphisms") {
  const FieldDesc& f4 = make_field(2, 2);
  const FieldDesc& f16 = make_field(2, 4);
  const auto& e = embedding(f4, f16);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      CHECK(e[f4.mul(a, b)] == f16.mul(e[a], e[b]));
      CHECK(e[f4.add(a, b)] == f16.add(e[a], e[b]));
    }
}

TEST_CASE("Q(w) satisfies w^2 + w + 1 = 0") {
  const FieldDesc& q = make_field(0, 2);
  FieldElem w = FieldElem::gen(q);
  CHECK((w * w + w + FieldElem::one(q)).is_zero());
  CHECK(w.pow(3).is_one());
  FieldElem alpha = (w - FieldElem::one(q)) / (w * w - FieldElem::one(q));
  CHECK(alpha == -w);
}

TEST_CASE("rationals stay reduced") {
  Rational a(6, -4);
  CHECK(a.num() == -3);
  CHECK(a.den() == 2);
  CHECK(a.floor() == -2);
  CHECK(a.ceil() == -1);
  CHECK(Rational::parse("-3/2") == a);
  CHECK((a + Rational(3, 2)).is_zero());
}

TEST_CASE("roots of t^2 + t + 1") {
  const FieldDesc& f4 = make_field(2, 2);
  auto one = FieldElem::one(f4);
  CHECK(poly_roots({one, one, one}, f4).size() == 2);
  const FieldDesc& f8 = make_field(2, 3);
  auto o8 = FieldElem::one(f8);
  CHECK(poly_roots({o8, o8, o8}, f8).empty());
}

TEST_CASE("field elements round-trip through JSON") {
  for (auto [p, k] : std::vector<std::pair<int, int>>{{2, 3}, {3, 2}}) {
    const FieldDesc& f = make_field(p, k);
    for (auto& a : elements(f)) CHECK(field_elem_from_json(to_json(a)) == a);
  }
  const FieldDesc& q = make_field(0, 2);
  FieldElem x = FieldElem::from_rationals(q, Rational(1, 3), Rational(-2));
  CHECK(field_elem_from_json(to_json(x)) == x);
}

TEST_CASE("unsupported fields are rejected") { CHECK_THROWS(make_field(7, 1)); }
