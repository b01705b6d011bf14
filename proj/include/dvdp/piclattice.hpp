#pragma once
// Picard lattice of a blown-up plane: basis H, E_1..E_n with form
// diag(1,-1,...,-1) and K = -3H + sum E_i.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dvdp/exactfield.hpp"

namespace dvdp {

// Class d H - sum m_i E_i stored as (d; m_1..m_n).
class DivisorClass {
 public:
  DivisorClass() = default;
  explicit DivisorClass(int n) : c_(n + 1, Rational(0)) {}
  DivisorClass(long long d, const std::vector<long long>& mults);

  static DivisorClass H(int n);
  static DivisorClass E(int n, int i);  // i is 1-based
  static DivisorClass K(int n);

  int n() const { return static_cast<int>(c_.size()) - 1; }
  const Rational& degree() const { return c_[0]; }
  const Rational& mult(int i) const { return c_[i]; }  // 1-based
  const std::vector<Rational>& coeffs() const { return c_; }
  std::vector<Rational>& coeffs() { return c_; }
  bool is_integral() const;

  DivisorClass operator+(const DivisorClass& o) const;
  DivisorClass operator-(const DivisorClass& o) const;
  DivisorClass operator-() const;
  DivisorClass operator*(const Rational& s) const;
  bool operator==(const DivisorClass& o) const { return c_ == o.c_; }
  bool operator!=(const DivisorClass& o) const { return !(c_ == o.c_); }
  bool operator<(const DivisorClass& o) const;
  std::string str() const;

 private:
  std::vector<Rational> c_;
};

Rational intersect(const DivisorClass& a, const DivisorClass& b);
long long intersect_int(const DivisorClass& a, const DivisorClass& b);

enum class CurveRole { Minus1, Minus2, Section, FiberComponent, Other };
std::string role_name(CurveRole r);

struct CurveRecord {
  std::string label;
  DivisorClass cls;
  CurveRole role = CurveRole::Other;
};

// Role from numerics: (-1,-1) -> Minus1, (-2,0) -> Minus2.
CurveRole numeric_role(const DivisorClass& c);
bool role_consistent(const CurveRecord& c);

struct SurfaceModel {
  std::string id;
  int characteristic = 0;
  std::string dynkin_label;
  int n = 0;  // number of blow-ups
  int degree() const { return 9 - n; }
  std::vector<CurveRecord> curves;
  std::vector<int> parent;  // parent[i] = index of the center i is infinitely near to, or -1

  const CurveRecord& curve(const std::string& label) const;
  bool has_curve(const std::string& label) const;
  std::vector<CurveRecord> minus2() const;
  std::vector<CurveRecord> minus1() const;
};

std::vector<DivisorClass> enumerate_roots(int n, int degree_bound = 3);
// All classes with C^2 = self_int, C.K = k_deg and dmin <= degree <= dmax;
// with `nonnegative`, only classes whose multiplicities are all >= 0.
std::vector<DivisorClass> enumerate_classes(int n, long long self_int, long long k_deg, long long dmin, long long dmax,
                                           bool nonnegative = false);

// Returns e.g. "2A_1+D_6"; throws "not a root basis" on a non-ADE component.
std::string dynkin_classify(const std::vector<DivisorClass>& classes);
// Components of a Dynkin string, e.g. {"A_1","A_1","D_6"}.
std::vector<std::string> dynkin_components(const std::vector<DivisorClass>& classes);
std::string dynkin_join(std::vector<std::string> components);

// A Q-divisor written in the curve-label basis of a model.
struct LabeledDivisor {
  std::map<std::string, Rational> coeffs;
  DivisorClass cls;
};

// pi^* of an integer combination of curve labels, contracting the model's
// minus2 curves: the unique L = expr + sum c_j Theta_j with L.Theta = 0.
LabeledDivisor pullback(const SurfaceModel& model, const std::vector<std::pair<std::string, long long>>& expr);
// Same, contracting an explicit list of curves (must have negative definite Gram matrix).
LabeledDivisor pullback_onto(const SurfaceModel& model, const std::vector<std::pair<std::string, long long>>& expr,
                             const std::vector<std::string>& contracted);
LabeledDivisor labeled_divisor(const SurfaceModel& model, const std::map<std::string, Rational>& coeffs);
// Coefficientwise ceiling in the curve-label basis.
LabeledDivisor round_up(const SurfaceModel& model, const LabeledDivisor& q);

long long chi_rr(const DivisorClass& d);
bool h2_parity_obstruction(const DivisorClass& L, const std::vector<CurveRecord>& minus2set);
bool h0_negativity_certificate(const DivisorClass& L, const DivisorClass& nef,
                               const std::vector<CurveRecord>& curves);
int max_orthogonal_a1(int n);

// Intersection matrix fixtures: first line labels, then integer rows.
struct MatrixFixture {
  std::vector<std::string> labels;
  std::vector<std::vector<long long>> rows;
};
MatrixFixture load_matrix_fixture(const std::string& path);
std::vector<std::vector<long long>> intersection_matrix(const SurfaceModel& model,
                                                        const std::vector<std::string>& labels);

}  // namespace dvdp
