#pragma once
// Binary linear codes of length <= 16: spans, parameters, permutation
// automorphisms, and the first-order Reed-Muller code RM(1,3).
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace dvdp {

using Word = std::uint32_t;  // bit i is coordinate i

class BinaryCode {
 public:
  BinaryCode() = default;
  BinaryCode(int length, std::vector<Word> basis) : n_(length), basis_(std::move(basis)) {}
  int length() const { return n_; }
  int dimension() const { return static_cast<int>(basis_.size()); }
  const std::vector<Word>& basis() const { return basis_; }  // reduced echelon form
  std::vector<Word> codewords() const;                      // sorted
  bool contains(Word w) const;
  bool operator==(const BinaryCode& o) const { return n_ == o.n_ && codewords() == o.codewords(); }

 private:
  int n_ = 0;
  std::vector<Word> basis_;
};

Word word_from_bits(const std::vector<int>& bits);
std::string bitstring(Word w, int length);  // coordinate 0 first

BinaryCode code_from_rows(const std::vector<std::vector<int>>& rows);

struct CodeParameters {
  int n = 0, k = 0, d = 0;  // d = n + 1 for the zero code
};
CodeParameters parameters(const BinaryCode& c);

struct PermutationGroupResult {
  long long order = 0;
  std::map<int, int> element_order_histogram;
  bool transitive = false;
  long long translations = 0;  // automorphisms of the form i -> i XOR v
};
// Brute force over all coordinate permutations; length <= 8.
PermutationGroupResult permutation_automorphism_group(const BinaryCode& c);

// Evaluation vectors of affine Boolean functions on F_2^3; coordinate i is
// the point with binary digits of i.
BinaryCode reed_muller_1_3();

struct ReedMullerMatch {
  bool equal = false;
  int xor_shift = -1;  // 0 means the declared order works unchanged
};
// Exact codeword-set comparison with RM(1,3), then the reorderings i -> i XOR v.
ReedMullerMatch match_reed_muller_1_3(const BinaryCode& c);

}  // namespace dvdp
