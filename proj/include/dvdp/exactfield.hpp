#pragma once
// Exact arithmetic: finite fields F_{p^k} (p in {2,3}, plus F_5 for control
// computations), the rationals, and Q(w) with w^2+w+1=0.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace dvdp {

class Rational {
 public:
  Rational() = default;
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(long long n, long long d);

  long long num() const { return num_; }
  long long den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  long long floor() const;
  long long ceil() const;

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  Rational operator-() const { return Rational(-num_, den_); }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const;
  bool operator<=(const Rational& o) const { return !(o < *this); }
  bool operator>(const Rational& o) const { return o < *this; }

  std::string str() const;  // "n" or "n/d"
  static Rational parse(const std::string& s);

 private:
  static Rational make(__int128 n, __int128 d);
  long long num_ = 0;
  long long den_ = 1;  // invariant: den_ > 0, gcd(num_, den_) = 1
};

// Immutable descriptor.  Finite-field elements are encoded as integers
// code = sum c_i p^i for the residue polynomial sum c_i t^i.  Prime-field
// elements therefore keep the same code in every extension.
class FieldDesc {
 public:
  int characteristic() const { return p_; }
  int degree() const { return k_; }
  const std::vector<int>& modulus() const { return modulus_; }  // low to high, monic
  bool is_finite() const { return p_ != 0; }
  int size() const { return q_; }  // q for finite fields, 0 otherwise

  // Code-level arithmetic (finite fields only).
  int add(int a, int b) const;
  int sub(int a, int b) const;
  int neg(int a) const;
  int mul(int a, int b) const;
  int inv(int a) const;
  int div(int a, int b) const { return mul(a, inv(b)); }
  int pow(int a, long long e) const;
  int from_int(long long v) const;  // image of an integer in the prime field
  int frobenius(int a) const { return pow(a, p_); }
  int pth_root(int a) const;
  int generator() const { return gen_; }  // the residue class of t
  int primitive() const { return prim_; }
  std::vector<int> digits(int code) const;
  int from_digits(const std::vector<int>& d) const;
  std::string elem_str(int code) const;  // polynomial in s, e.g. "s^2+1"
  int parse_elem(const std::string& s) const;

  std::string name() const;

  FieldDesc(int p, int k);  // use make_field

 private:
  int p_ = 0, k_ = 1, q_ = 0;
  std::vector<int> modulus_;
  std::vector<int> exp_, log_;
  std::vector<int> add_table_;
  int gen_ = 0, prim_ = 0;
  int poly_mul_mod(int a, int b) const;
  int add_digits(int a, int b, int sign) const;
};

// Cached descriptors; identical (p,k) returns the identical object.
const FieldDesc& make_field(int characteristic, int extension_degree);

// Table mapping codes of `from` to codes of `to` for a subfield inclusion;
// the generator goes to the smallest root of its modulus in `to`.
const std::vector<int>& embedding(const FieldDesc& from, const FieldDesc& to);

class FieldElem {
 public:
  FieldElem() = default;
  static FieldElem from_code(const FieldDesc& f, int code);
  static FieldElem from_int(const FieldDesc& f, long long v);
  static FieldElem from_rationals(const FieldDesc& f, Rational a, Rational b = Rational(0));
  static FieldElem zero(const FieldDesc& f) { return from_int(f, 0); }
  static FieldElem one(const FieldDesc& f) { return from_int(f, 1); }
  static FieldElem gen(const FieldDesc& f);  // s, or w in Q(w)

  const FieldDesc& field() const { return *f_; }
  const FieldDesc* field_ptr() const { return f_; }
  int code() const { return code_; }
  const Rational& re() const { return a_; }
  const Rational& im() const { return b_; }  // coefficient of w
  std::vector<std::string> coeff_strings() const;

  bool is_zero() const;
  bool is_one() const;

  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator*(const FieldElem& o) const;
  FieldElem operator/(const FieldElem& o) const;
  FieldElem operator-() const;
  FieldElem inverse() const;
  FieldElem pow(long long e) const;
  bool operator==(const FieldElem& o) const;
  bool operator!=(const FieldElem& o) const { return !(*this == o); }
  bool operator<(const FieldElem& o) const;  // lexicographic on coefficient vectors

  std::string str() const;

 private:
  void check_same(const FieldElem& o) const;
  const FieldDesc* f_ = nullptr;
  int code_ = 0;
  Rational a_, b_;
};

enum class ArithOp { Add, Sub, Mul, Div };
FieldElem arith(const FieldElem& a, const FieldElem& b, ArithOp op);
FieldElem pth_root(const FieldElem& a);

// Roots with multiplicity of sum coeffs[i] t^i, sorted by coefficient vector.
// Q(w): degree <= 2, or degree 3 with a rational root.
std::vector<FieldElem> poly_roots(const std::vector<FieldElem>& coeffs, const FieldDesc& field);

nlohmann::json to_json(const FieldElem& e);
FieldElem field_elem_from_json(const nlohmann::json& j);

}  // namespace dvdp
