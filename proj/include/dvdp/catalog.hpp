#pragma once
// Registry of blow-up recipes for the (NB) del Pezzo surfaces and their
// quasi-elliptic nine-point blow-ups, the builders that turn recipes into
// labelled surface models, and the verifiers that cross-check them.
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dvdp/codes.hpp"
#include "dvdp/cubics.hpp"
#include "dvdp/fibrations.hpp"
#include "dvdp/piclattice.hpp"
#include "dvdp/projgeom.hpp"

namespace dvdp {

// Geometry of a labelled curve: a plane curve, the exceptional curve at
// `level` of the chain over `point`, or the unique member of a class.
struct GeomSpec {
  std::optional<PlaneCurve> plane;
  std::optional<ProjPoint> point;
  int level = 0;
  std::optional<DivisorClass> by_class;
};

struct CurveSpec {
  std::string label;
  GeomSpec geom;
};

struct RecipeExpected {
  std::string matrix_fixture;  // file name under the fixtures directory, or ""
  std::string dynkin;
  int degree = 0;
  int picard_rank = 1;
  bool nb = true;
  std::string aut_descriptor;
  std::optional<long long> aut_finite_order;
  std::string iso_class_count;  // "1" or "inf"
  std::vector<std::string> anticanonical_basis;  // explicit generators, when written down
  // Degree-one rows: the quasi-elliptic nine-point blow-up.
  std::string ztype;
  std::vector<std::string> kodaira;  // sorted reducible fiber types
  long long mw_order = 0;
  std::optional<ProjPoint> ninth_point;
  int ninth_level = 0;
};

struct Recipe {
  std::string id;
  int characteristic = 2;
  std::string dynkin;
  int degree = 0;
  const FieldDesc* field = nullptr;  // working field of the construction
  std::vector<BaseCondition> instructions;
  std::string parameter_domain;  // "", "D1" or "D2"
  std::optional<ProjPoint> param;
  RecipeExpected expected;
  std::vector<CurveSpec> z_curves;  // labelled curves on the nine-point blow-up
  std::vector<CurveSpec> curves;    // labelled curves on the resolution (degree two)
};

struct TableRow {
  int characteristic;
  std::string dynkin;
  std::string id;
};
std::vector<TableRow> table1_rows();

std::string fixtures_dir();  // DVDP_FIXTURES overrides the compiled-in path
nlohmann::json load_json_fixture(const std::string& name);

// Throws listing the valid rows for an unknown (p, dynkin); throws "not in
// D_n" for a parameter on an F_2-hyperplane.
Recipe recipe(int p, const std::string& dynkin, std::optional<ProjPoint> param = std::nullopt);
Recipe recipe_by_id(const std::string& id, std::optional<ProjPoint> param = std::nullopt);
ProjPoint default_param(const std::string& id);

struct BuiltSurface {
  std::string id;
  int characteristic = 2;
  const FieldDesc* field = nullptr;
  BlowupPlan plan;
  std::shared_ptr<BlowupEngine> engine;
  SurfaceModel model;
  std::map<std::string, SurfaceCurve> geometry;  // every labelled curve with known plane data
  std::vector<CurveSpec> specs;                  // resolved to plane or exceptional form
  std::vector<DivisorClass> census_minus2, census_minus1;
  std::vector<std::string> census_problems;  // empty iff labels and census agree
  std::vector<IncidencePoint> incidence(const std::string& a, const std::string& b) const;
};

// Labels (-2)-curves as simple effective roots and (-1)-curves as
// exceptional classes non-negative on them; `specs` name curves, the rest
// get descriptive labels.
BuiltSurface build_surface(const std::string& id, int p, const FieldDesc& f, const BlowupPlan& plan,
                           const std::vector<CurveSpec>& specs, const std::string& dynkin_label);

// Appends the base point of the anticanonical pencil as a ninth center.
BlowupPlan ninth_center_plan(const std::vector<BaseCondition>& roots, const FieldDesc& f);

BuiltSurface build(const Recipe& r);    // minimal resolution of the recipe's surface
BuiltSurface build_z(const Recipe& r);  // nine-point blow-up, degree-one rows only
// Blow-up of t_3, t_5, t_6, t_7 and t from the type-(g) construction.
BuiltSurface build_degree4_model(const ProjPoint& t);

struct FiberTable {
  std::vector<FiberRecord> fibers;
  std::vector<CurveRecord> sections;
  long long mw_from_discriminants = -1;
  int shioda_tate = 0;
  std::map<std::string, std::vector<std::string>> adjacency;
};
FiberTable fiber_table(const BuiltSurface& z);

// Fibers of the type-(f) pencil: parameters of Theta_{alpha1} and
// Theta_{alpha2} after moving the I0* fiber to 1 and two III fibers to 0
// and infinity; they are the roots of t^2 + a t + 1.
struct TypeFLocation {
  FieldElem alpha1, alpha2, a;
  bool product_is_one = false;
};
TypeFLocation type_f_location(const Recipe& r);

// Subgroup of PGL(3, F_p) mapping the cluster of base conditions to itself.
FiniteGroup configuration_group(const std::vector<BaseCondition>& cluster, const FieldDesc& prime_field);

struct AutResult {
  bool computed = false;  // false: descriptor only
  std::string descriptor;
  long long order = 0;          // full order, or the finite part
  long long config_order = 0;   // subgroup of PGL(3, F_p) preserving the configuration
  long long extra_factor = 1;   // translations or the fiber-swapping involution
  GroupInvariants invariants;
  std::string note;
};
AutResult aut_discrete(const Recipe& r);

struct ModuliCensus {
  long long point_count = 0;
  long long orbit_count = 0;
  std::vector<long long> stabilizer_orders;  // one per orbit
};
ModuliCensus moduli_census(const std::string& family, int ext_degree);

struct CodeCheck {
  BinaryCode code;
  CodeParameters params;
  ReedMullerMatch rm;
  PermutationGroupResult aut;
};
// Code spanned by 0, 1 and the A'-rows of the 8A1 matrix restricted to the
// Theta'_{i,1} columns.
CodeCheck hamming_check(const BuiltSurface& y8a1);

struct KV8A1 {
  LabeledDivisor pullback, round_up;
  long long self_intersection = 0, anticanonical_degree = 0, chi = 0, h1 = 0;
  long long witness_pairing = 0;
  bool parity = false, negativity = false;
};
KV8A1 kv_8a1(const BuiltSurface& y);

struct KV4A1D4 {
  std::vector<std::pair<std::string, bool>> identities;  // seven pullback identities
  long long degree_check = 0;                            // (-K_V . (B + Theta_{1,4})) for sum n_i = 1
  std::vector<std::pair<std::string, long long>> generator_degrees;
};
KV4A1D4 kv_4a1d4(const BuiltSurface& y);

struct HesseResult {
  std::vector<ProjPoint> singular_members;  // [s:t]
  std::vector<ProjPoint> witnesses;         // singular point of each member
  bool equivalent_to_roots_of_unity = false;
  FieldElem alpha;
  bool alpha_is_minus_omega = false;
};
HesseResult hesse_check();

// Sampled elements of a parametric matrix group preserving the net.
struct SampledPreservation {
  long long samples = 0;
  long long preserved = 0;
};
SampledPreservation table6_evidence(const Recipe& r);

struct Check {
  std::string id;
  std::string claim;
  nlohmann::json expected;
  nlohmann::json computed;
  std::string status;  // "pass", "fail" or "evidence-only"
};

struct VerificationReport {
  std::string recipe;
  std::vector<Check> checks;
  bool passed() const;
  nlohmann::json to_json() const;
};

VerificationReport verify(const Recipe& r);

// Markdown renderings of the degree/Dynkin/isomorphism-class table and the
// automorphism table, one row per report in the given order.
std::string table1_markdown(const std::vector<Recipe>& recipes, const std::vector<VerificationReport>& reports);
std::string table6_markdown(const std::vector<Recipe>& recipes, const std::vector<VerificationReport>& reports);

}  // namespace dvdp
