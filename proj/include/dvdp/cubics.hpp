#pragma once
// Plane curves of degree <= 3, linear systems cut out by curvilinear base
// conditions, singularity sweeps, and the blow-up engine that turns a
// cluster of (infinitely near) centers into strict-transform classes and
// point-level incidences.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dvdp/exactfield.hpp"
#include "dvdp/piclattice.hpp"
#include "dvdp/projgeom.hpp"

namespace dvdp {

// Sparse polynomial in a fixed number of variables over one field.
class MPoly {
 public:
  MPoly() = default;
  MPoly(const FieldDesc& f, int nvars) : f_(&f), n_(nvars) {}
  static MPoly constant(const FieldElem& c, int nvars);
  static MPoly variable(const FieldDesc& f, int nvars, int i);

  const FieldDesc& field() const { return *f_; }
  int nvars() const { return n_; }
  const std::map<std::vector<int>, FieldElem>& terms() const { return t_; }
  void add_term(const std::vector<int>& exps, const FieldElem& c);
  FieldElem coeff(const std::vector<int>& exps) const;
  bool is_zero() const { return t_.empty(); }
  int ord() const;           // lowest total degree; -1 for zero
  int total_degree() const;  // -1 for zero
  MPoly homogeneous_part(int d) const;
  MPoly base_change(const FieldDesc& to) const;

  MPoly operator+(const MPoly& o) const;
  MPoly operator-(const MPoly& o) const;
  MPoly operator*(const MPoly& o) const;
  MPoly scaled(const FieldElem& c) const;
  MPoly pow(int e) const;
  bool operator==(const MPoly& o) const { return t_ == o.t_; }

 private:
  const FieldDesc* f_ = nullptr;
  int n_ = 0;
  std::map<std::vector<int>, FieldElem> t_;  // no zero coefficients
};

using Monomial = std::vector<int>;  // exponents of (x, y, z)
// Graded-lex order with x > y > z: x^3, x^2y, x^2z, xy^2, xyz, xz^2, y^3, ...
std::vector<Monomial> monomials(int degree);
std::string monomial_str(const Monomial& m);

class PlaneCurve {
 public:
  PlaneCurve() = default;
  PlaneCurve(const FieldDesc& f, int degree, std::vector<FieldElem> coeffs);  // canonical scaling
  // Terms like "x^3+y^2z", "2xz^2", "(s+1)y^3"; coefficients in parentheses
  // use the field's generator syntax.
  static PlaneCurve parse(const std::string& text, const FieldDesc& f);
  static PlaneCurve from_poly(const MPoly& p);  // homogeneous in 3 variables

  const FieldDesc& field() const { return *f_; }
  int degree() const { return d_; }
  const std::vector<FieldElem>& coeffs() const { return c_; }
  MPoly poly() const;
  FieldElem eval(const ProjPoint& pt) const;  // embeds coefficients into the point's field
  bool contains(const ProjPoint& pt) const { return eval(pt).is_zero(); }
  PlaneCurve derivative(int var) const;       // may be the zero form; degree drops by one
  bool is_zero_form() const;
  PlaneCurve base_change(const FieldDesc& to) const;
  PlaneCurve transform(const ProjTransform& g) const;  // the image g(C)

  bool operator==(const PlaneCurve& o) const { return d_ == o.d_ && c_ == o.c_; }
  bool operator<(const PlaneCurve& o) const;
  std::string str() const;
  nlohmann::json to_json() const;

 private:
  const FieldDesc* f_ = nullptr;
  int d_ = 0;
  std::vector<FieldElem> c_;
};

struct BaseCondition {
  ProjPoint point;
  int multiplicity = 1;
  std::optional<PlaneCurve> branch;  // none: a fat point of the given multiplicity
};

// Local chart at a point: X_chart = 1, u = X_a - P_a, v = X_b - P_b.
struct LocalChart {
  int chart = 0, a = 1, b = 2;
};
LocalChart chart_at(const ProjPoint& p);
MPoly local_germ(const PlaneCurve& c, const ProjPoint& p);  // over the point's field

struct BranchSeries {
  ProjPoint point;
  LocalChart chart;
  std::vector<FieldElem> u, v;  // coefficients of t^0..t^order
};
BranchSeries branch_parametrize(const PlaneCurve& curve, const ProjPoint& point, int order);
// Order of vanishing of `c` along the branch, capped at the series order + 1.
int contact_order(const PlaneCurve& c, const BranchSeries& s);

struct LinearSystem {
  const FieldDesc* field = nullptr;
  int degree = 3;
  std::vector<BaseCondition> conditions;
  std::vector<PlaneCurve> basis;  // reduced echelon form in the monomial order
  int projective_dimension() const { return static_cast<int>(basis.size()) - 1; }
  PlaneCurve member(const std::vector<FieldElem>& params) const;
};
LinearSystem linear_system(const std::vector<BaseCondition>& conditions, int degree, const FieldDesc& field);
bool satisfies(const PlaneCurve& c, const BaseCondition& cond);

std::vector<ProjPoint> singular_points(const PlaneCurve& curve, const FieldDesc& field);
std::optional<ProjPoint> first_singular_point(const PlaneCurve& curve, const FieldDesc& field);

struct NBVerdict {
  bool holds_over_tested_fields = false;
  bool certificate_found = false;
  std::string certificate;                     // singular point of the generic member
  std::vector<std::string> tested_fields;      // parameter fields swept
  long long members_tested = 0;
  std::map<std::string, std::string> witnesses;  // sample member -> singular point
  std::string failure;                         // first member without a singular point
  bool witnesses_off_base_locus = true;
};
NBVerdict all_members_singular(const LinearSystem& system, int max_ext = 3);

// ---------------------------------------------------------------- blow-ups

// Each root is a proper point with a chain of `multiplicity` centers that
// follows the smooth branch of `branch`.  Centers are numbered E_1..E_n in
// the order of `centers` (root index, level 1-based).
struct BlowupPlan {
  std::vector<BaseCondition> roots;
  std::vector<std::pair<int, int>> centers;
  int n() const { return static_cast<int>(centers.size()); }
  int center_index(int root, int level) const;  // 1-based E index or 0
  // Append roots in order, centers root by root.
  static BlowupPlan sequential(const std::vector<BaseCondition>& roots);
};

// A curve on the blown-up surface: strict transform of a plane curve, or of
// an exceptional curve (root, level).
struct SurfaceCurve {
  std::optional<PlaneCurve> plane;
  int root = -1, level = 0;
  static SurfaceCurve of(const PlaneCurve& c) { return SurfaceCurve{c, -1, 0}; }
  static SurfaceCurve exceptional(int root, int level) { return SurfaceCurve{std::nullopt, root, level}; }
  bool is_exceptional() const { return !plane.has_value(); }
};

struct IncidencePoint {
  std::string id;  // geometric point, e.g. "[1:0:0]" or "E2.1[1:s]"
  int multiplicity = 0;
};

class BlowupEngine {
 public:
  explicit BlowupEngine(BlowupPlan plan);
  const BlowupPlan& plan() const { return plan_; }
  int n() const { return plan_.n(); }

  std::vector<int> multiplicities(const PlaneCurve& c) const;  // m_i per center
  DivisorClass strict_transform_class(const PlaneCurve& c) const;
  DivisorClass surface_class(const SurfaceCurve& c) const;
  std::vector<IncidencePoint> incidence(const SurfaceCurve& a, const SurfaceCurve& b) const;
  int incidence_total(const SurfaceCurve& a, const SurfaceCurve& b) const;
  // Degree-d forms whose total transform minus sum m_i E_i stays effective:
  // the plane model of |cls|.  Empty basis when cls is not effective.
  LinearSystem effective_system(const DivisorClass& cls, const FieldDesc& field) const;
  std::pair<int, int> center_position(int index) const;  // (root, level) of E_index

 private:
  struct ChainLevel {
    MPoly branch;        // branch germ at this center
    bool vertical = false;
    FieldElem slope;     // chain direction [1:slope] unless vertical
  };
  BlowupPlan plan_;
  std::vector<std::vector<ChainLevel>> chains_;  // per root
  std::vector<std::vector<int>> root_levels_;    // per root: E index per level

};

// Blow-up of a germ at the origin in direction [1:s] or [0:1]; the new
// exceptional curve is U = 0 in both charts.
MPoly blowup_germ(const MPoly& f, bool vertical, const FieldElem& s);
// Same substitution divided by U^m only (virtual transform); needs m <= ord f.
MPoly blowup_germ_virtual(const MPoly& f, bool vertical, const FieldElem& s, int m);
// Points of the plane over `field` lying on both curves.
std::vector<ProjPoint> common_points(const PlaneCurve& a, const PlaneCurve& b, const FieldDesc& field);
// Local intersection multiplicity at the origin, over the algebraic closure.
int local_intersection(const MPoly& f, const MPoly& g);

// Univariate helpers over a field, coefficients low to high.
std::vector<FieldElem> upoly_gcd(std::vector<FieldElem> a, std::vector<FieldElem> b);
// Smallest extension of `f` (by total degree) over which `poly` splits, or nullptr.
const FieldDesc* splitting_field(const std::vector<FieldElem>& poly);
std::vector<FieldElem> embed_coeffs(const std::vector<FieldElem>& v, const FieldDesc& to);
FieldElem embed(const FieldElem& e, const FieldDesc& to);

}  // namespace dvdp
