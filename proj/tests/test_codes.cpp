#include <doctest.h>

#include "dvdp/codes.hpp"

using namespace dvdp;

namespace {

int popcount(Word w) { return __builtin_popcount(w); }

}  // namespace

TEST_CASE("RM(1,3) is the [8,4,4] code of affine functions") {
  auto rm = reed_muller_1_3();
  auto p = parameters(rm);
  CHECK(p.n == 8);
  CHECK(p.k == 4);
  CHECK(p.d == 4);
  auto words = rm.codewords();
  CHECK(words.size() == 16);
  std::map<int, int> weights;
  for (auto w : words) ++weights[popcount(w)];
  CHECK(weights == std::map<int, int>{{0, 1}, {4, 14}, {8, 1}});
}

TEST_CASE("RM(1,3) has the affine group AGL(3,2) of order 1344 as automorphisms") {
  auto a = permutation_automorphism_group(reed_muller_1_3());
  CHECK(a.order == 1344);
  CHECK(a.transitive);
  CHECK(a.translations == 8);
  long long total = 0;
  for (auto [o, c] : a.element_order_histogram) total += c;
  CHECK(total == 1344);
}

TEST_CASE("the [7,4,3] Hamming code has 168 automorphisms") {
  auto c = code_from_rows({{1, 1, 0, 1, 0, 0, 0}, {0, 1, 1, 0, 1, 0, 0}, {0, 0, 1, 1, 0, 1, 0}, {0, 0, 0, 1, 1, 0, 1}});
  auto p = parameters(c);
  CHECK(p.k == 4);
  CHECK(p.d == 3);
  CHECK(permutation_automorphism_group(c).order == 168);
}

TEST_CASE("the repetition code has the full symmetric group") {
  auto c = code_from_rows({{1, 1, 1, 1, 1, 1, 1, 1}});
  CHECK(permutation_automorphism_group(c).order == 40320);
  CHECK(parameters(c).d == 8);
}

TEST_CASE("spans ignore redundant rows and bit order is coordinate order") {
  auto c = code_from_rows({{1, 1, 0, 0}, {0, 1, 1, 0}, {1, 0, 1, 0}});
  CHECK(c.dimension() == 2);
  CHECK(c.contains(word_from_bits({1, 0, 1, 0})));
  CHECK(bitstring(word_from_bits({1, 1, 0, 0}), 4) == "1100");
}

TEST_CASE("a coordinate-shifted RM(1,3) is matched only up to reordering") {
  auto rm = reed_muller_1_3();
  CHECK(match_reed_muller_1_3(rm).equal);
  CHECK(match_reed_muller_1_3(rm).xor_shift == 0);
  // Swap coordinates 0 and 3 in every codeword: the set changes.
  std::vector<std::vector<int>> rows;
  for (auto w : rm.basis()) {
    std::vector<int> bits(8);
    for (int i = 0; i < 8; ++i) bits[i] = (w >> i) & 1;
    std::swap(bits[0], bits[3]);
    rows.push_back(bits);
  }
  CHECK(!(code_from_rows(rows) == rm));
}
