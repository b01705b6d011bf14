#include "dvdp/codes.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace dvdp {

Word word_from_bits(const std::vector<int>& bits) {
  Word w = 0;
  for (size_t i = 0; i < bits.size(); ++i)
    if (bits[i] & 1) w |= Word{1} << i;
  return w;
}

std::string bitstring(Word w, int length) {
  std::string s;
  for (int i = 0; i < length; ++i) s += (w >> i & 1) ? '1' : '0';
  return s;
}

std::vector<Word> BinaryCode::codewords() const {
  std::vector<Word> out;
  size_t k = basis_.size();
  for (Word mask = 0; mask < (Word{1} << k); ++mask) {
    Word w = 0;
    for (size_t i = 0; i < k; ++i)
      if (mask >> i & 1) w ^= basis_[i];
    out.push_back(w);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool BinaryCode::contains(Word w) const {
  for (Word b : basis_) {
    Word lead = b & (~b + 1);  // pivot bit = lowest set bit
    if (w & lead) w ^= b;
  }
  return w == 0;
}

BinaryCode code_from_rows(const std::vector<std::vector<int>>& rows) {
  if (rows.empty()) throw std::invalid_argument("code_from_rows needs at least one row");
  size_t n = rows.front().size();
  if (n > 16) throw std::invalid_argument("code length above 16");
  std::vector<Word> basis;
  for (auto& r : rows) {
    if (r.size() != n) throw std::invalid_argument("rows of unequal length");
    Word w = word_from_bits(r);
    for (Word b : basis) {
      Word lead = b & (~b + 1);
      if (w & lead) w ^= b;
    }
    if (!w) continue;
    Word lead = w & (~w + 1);
    for (Word& b : basis)
      if (b & lead) b ^= w;
    basis.push_back(w);
  }
  std::sort(basis.begin(), basis.end(), [](Word a, Word b) { return (a & (~a + 1)) < (b & (~b + 1)); });
  return BinaryCode(static_cast<int>(n), basis);
}

CodeParameters parameters(const BinaryCode& c) {
  CodeParameters p{c.length(), c.dimension(), c.length() + 1};
  for (Word w : c.codewords())
    if (w) p.d = std::min(p.d, __builtin_popcount(w));
  return p;
}

namespace {

Word permute(Word w, const std::vector<int>& perm) {
  Word out = 0;
  for (size_t i = 0; i < perm.size(); ++i)
    if (w >> i & 1) out |= Word{1} << perm[i];
  return out;
}

int perm_order(const std::vector<int>& perm) {
  int order = 1;
  std::vector<bool> seen(perm.size());
  for (size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (size_t j = i; !seen[j]; j = perm[j]) {
      seen[j] = true;
      ++len;
    }
    order = std::lcm(order, len);
  }
  return order;
}

}  // namespace

PermutationGroupResult permutation_automorphism_group(const BinaryCode& c) {
  int n = c.length();
  if (n > 8) throw std::invalid_argument("permutation sweep limited to length 8");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  PermutationGroupResult r;
  std::vector<bool> reach(n, false);
  do {
    bool ok = true;
    for (Word b : c.basis())
      if (!c.contains(permute(b, perm))) {
        ok = false;
        break;
      }
    if (!ok) continue;
    ++r.order;
    r.element_order_histogram[perm_order(perm)]++;
    reach[perm[0]] = true;
    bool translation = true;
    for (int i = 0; i < n; ++i)
      if (perm[i] != (i ^ perm[0])) translation = false;
    if (translation) ++r.translations;
  } while (std::next_permutation(perm.begin(), perm.end()));
  r.transitive = std::all_of(reach.begin(), reach.end(), [](bool b) { return b; });
  return r;
}

BinaryCode reed_muller_1_3() {
  std::vector<std::vector<int>> rows;
  rows.push_back(std::vector<int>(8, 1));
  for (int bit = 0; bit < 3; ++bit) {
    std::vector<int> r(8);
    for (int i = 0; i < 8; ++i) r[i] = i >> (2 - bit) & 1;
    rows.push_back(r);
  }
  return code_from_rows(rows);
}

ReedMullerMatch match_reed_muller_1_3(const BinaryCode& c) {
  auto target = reed_muller_1_3().codewords();
  for (int v = 0; v < 8; ++v) {
    std::vector<int> perm(8);
    for (int i = 0; i < 8; ++i) perm[i] = i ^ v;
    std::vector<Word> words;
    for (Word w : c.codewords()) words.push_back(permute(w, perm));
    std::sort(words.begin(), words.end());
    if (words == target) return {true, v};
  }
  return {};
}

}  // namespace dvdp
