#include "dvdp/catalog.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

namespace dvdp {

namespace {

ProjPoint pt(const FieldDesc& f, const std::vector<int>& codes) { return ProjPoint::from_codes(f, codes); }
PlaneCurve cv(const std::string& text, const FieldDesc& f) { return PlaneCurve::parse(text, f); }

// The line b*y + a*z through [1:0:0] in direction t = [a:b].
PlaneCurve param_line(const ProjPoint& t) {
  const FieldDesc& f = t.field();
  return PlaneCurve(f, 1, {FieldElem::zero(f), t.coords()[1], t.coords()[0]});
}

// The seven F_2-points in the order t_1..t_7 used for the Fano labels.
std::vector<ProjPoint> fano_points(const FieldDesc& f) {
  const FieldDesc& f2 = make_field(2, 1);
  std::vector<std::vector<int>> c = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}};
  std::vector<ProjPoint> out;
  for (auto& v : c) out.push_back(pt(f2, v).base_change(f));
  return out;
}

// Fano line i (1-based) contains t_a, t_b, t_c.
const std::vector<std::array<int, 3>> kFanoTriples = {{1, 2, 4}, {1, 3, 6}, {1, 5, 7}, {2, 3, 5},
                                                      {2, 6, 7}, {3, 4, 7}, {4, 5, 6}};
const std::vector<std::string> kFanoLines = {"z", "y", "y+z", "x", "x+z", "x+y", "x+y+z"};

std::string theta(const std::string& beta, int i) { return "Theta_{" + beta + "," + std::to_string(i) + "}"; }
std::string alabel(int i, int j) { return "A_{" + std::to_string(i) + "," + std::to_string(j) + "}"; }

// E_i of a sequential plan (1-based); index n+1 is the ninth center.
class Centers {
 public:
  Centers(const std::vector<BaseCondition>& in, std::optional<ProjPoint> ninth, int ninth_level) {
    for (auto& c : in)
      for (int l = 1; l <= c.multiplicity; ++l) pos_.push_back({c.point, l});
    if (ninth) pos_.push_back({*ninth, ninth_level});
  }
  GeomSpec ex(int i) const {
    GeomSpec g;
    g.point = pos_.at(i - 1).first;
    g.level = pos_.at(i - 1).second;
    return g;
  }

 private:
  std::vector<std::pair<ProjPoint, int>> pos_;
};

CurveSpec plane_spec(const std::string& label, const PlaneCurve& c) { return {label, GeomSpec{c, std::nullopt, 0, std::nullopt}}; }
CurveSpec geom_spec(const std::string& label, const GeomSpec& g) { return {label, g}; }
CurveSpec class_spec(const std::string& label, const DivisorClass& c) {
  return {label, GeomSpec{std::nullopt, std::nullopt, 0, c}};
}

DivisorClass cls(int n, long long d, const std::map<int, long long>& mults) {
  std::vector<long long> m(n, 0);
  for (auto& [i, v] : mults) m[i - 1] = v;
  return DivisorClass(d, m);
}

const std::vector<TableRow> kRows = {
    {3, "E_8", "E8_p3"},       {3, "A_2+E_6", "A2+E6"},   {3, "4A_2", "4A2"},     {2, "E_8", "E8_p2"},
    {2, "D_8", "D8"},          {2, "A_1+E_7", "A1+E7"},   {2, "2D_4", "2D4"},     {2, "2A_1+D_6", "2A1+D6"},
    {2, "4A_1+D_4", "4A1+D4"}, {2, "8A_1", "8A1"},        {2, "E_7", "E7"},       {2, "A_1+D_6", "A1+D6"},
    {2, "3A_1+D_4", "3A1+D4"}, {2, "7A_1", "7A1"}};

std::string strip_underscores(std::string s) {
  s.erase(std::remove(s.begin(), s.end(), '_'), s.end());
  return s;
}

void fill_expected(Recipe& r) {
  auto j = load_json_fixture("expectations/" + r.id + ".json");
  r.characteristic = j.at("characteristic").get<int>();
  r.dynkin = j.at("dynkin").get<std::string>();
  r.degree = j.at("degree").get<int>();
  auto& e = r.expected;
  e.dynkin = r.dynkin;
  e.degree = r.degree;
  e.picard_rank = j.at("picard_rank").get<int>();
  e.nb = j.at("nb").get<bool>();
  e.iso_class_count = j.at("iso_class_count").get<std::string>();
  e.aut_descriptor = j.at("aut").at("descriptor").get<std::string>();
  if (!j.at("aut").at("finite_order").is_null()) e.aut_finite_order = j.at("aut").at("finite_order").get<long long>();
  if (!j.at("matrix_fixture").is_null()) e.matrix_fixture = j.at("matrix_fixture").get<std::string>();
  for (auto& b : j.at("anticanonical_basis")) e.anticanonical_basis.push_back(b.get<std::string>());
  const auto& z = j.at("z");
  if (!z.is_null()) {
    e.ztype = z.at("type").get<std::string>();
    for (auto& k : z.at("kodaira")) e.kodaira.push_back(k.get<std::string>());
    e.mw_order = z.at("mw_order").get<long long>();
    e.ninth_level = z.at("ninth_level").get<int>();
    if (z.at("ninth_point").is_string())
      e.ninth_point = r.param;
    else
      e.ninth_point = pt(make_field(r.characteristic, 1), z.at("ninth_point").get<std::vector<int>>()).base_change(*r.field);
  }
}

}  // namespace

std::vector<TableRow> table1_rows() { return kRows; }

std::string fixtures_dir() {
  if (const char* env = std::getenv("DVDP_FIXTURES"); env && *env) return env;
  return DVDP_FIXTURES_DIR;
}

nlohmann::json load_json_fixture(const std::string& name) {
  std::string path = fixtures_dir() + "/" + name;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open fixture " + path);
  return nlohmann::json::parse(in);
}

ProjPoint default_param(const std::string& id) {
  if (id == "2D4" || id == "4A1+D4") return dn_points(1, make_field(2, 2)).front();
  if (id == "8A1") return dn_points(2, make_field(2, 3)).front();
  throw std::invalid_argument("recipe " + id + " has no parameter");
}

Recipe recipe(int p, const std::string& dynkin, std::optional<ProjPoint> param) {
  std::string key = strip_underscores(dynkin);
  for (auto& row : kRows)
    if (row.characteristic == p && strip_underscores(row.dynkin) == key) return recipe_by_id(row.id, param);
  std::string valid;
  for (auto& row : kRows) valid += (valid.empty() ? "" : ", ") + std::string("(") + std::to_string(row.characteristic) + ", " + row.dynkin + ")";
  throw std::invalid_argument("unknown row (" + std::to_string(p) + ", " + dynkin + "); valid rows: " + valid);
}

Recipe recipe_by_id(const std::string& id, std::optional<ProjPoint> param) {
  bool known = std::any_of(kRows.begin(), kRows.end(), [&](const TableRow& row) { return row.id == id; });
  if (!known) {
    std::string valid;
    for (auto& row : kRows) valid += (valid.empty() ? "" : ", ") + row.id;
    throw std::invalid_argument("unknown recipe " + id + "; valid rows: " + valid);
  }
  Recipe r;
  r.id = id;
  bool parametric = id == "2D4" || id == "4A1+D4" || id == "8A1";
  if (parametric) {
    r.parameter_domain = id == "8A1" ? "D2" : "D1";
    int n = id == "8A1" ? 2 : 1;
    ProjPoint t = param ? *param : default_param(id);
    if (t.dim() != n) throw std::invalid_argument("parameter must be a point of P^" + std::to_string(n));
    if (t.field().characteristic() != 2 || !in_dn(t)) throw std::invalid_argument("parameter " + t.str() + " not in D_" + std::to_string(n));
    r.param = t;
    r.field = &t.field();
  } else if (param) {
    throw std::invalid_argument("recipe " + id + " takes no parameter");
  }
  int p = (id == "E8_p3" || id == "A2+E6" || id == "4A2") ? 3 : 2;
  if (!r.field) r.field = &make_field(p, 1);
  const FieldDesc& f = *r.field;
  fill_expected(r);

  auto cusp = cv("x^3+y^2z", f);
  auto& in = r.instructions;
  auto& zc = r.z_curves;
  auto ninth = r.expected.ninth_point;
  int nl = r.expected.ninth_level;
  auto exc_of = [&](const Centers& c, const std::string& label, int i) { zc.push_back(geom_spec(label, c.ex(i))); };

  if (id == "E8_p3" || id == "E8_p2") {
    in = {{pt(f, {0, 1, 0}), 8, cusp}};
    Centers c(in, ninth, nl);
    exc_of(c, "O", 9);
    for (int k = 0; k <= 7; ++k) exc_of(c, theta("inf", k), 8 - k);
    zc.push_back(plane_spec(theta("inf", 8), cv("z", f)));
  } else if (id == "A2+E6") {
    in = {{pt(f, {0, 0, 1}), 2, cv("y", f)}, {pt(f, {0, 1, 1}), 3, cv("y+2z", f)}, {pt(f, {0, 1, 0}), 3, cv("z", f)}};
    Centers c(in, ninth, nl);
    zc.push_back(plane_spec(theta("inf", 0), cv("x", f)));
    const int e[] = {1, 2, 3, 4, 6, 7};
    for (int k = 1; k <= 6; ++k) exc_of(c, theta("inf", k), e[k - 1]);
    zc.push_back(plane_spec(theta("0", 0), cv("y", f)));
    zc.push_back(plane_spec(theta("0", 1), cv("y+2z", f)));
    zc.push_back(plane_spec(theta("0", 2), cv("z", f)));
    exc_of(c, "O", 9);
    exc_of(c, "P", 5);
    exc_of(c, "2P", 8);
  } else if (id == "4A2") {
    // Section at the point i(1,-1) + j(1,1) of the affine plane z != 0.
    std::map<std::pair<int, int>, std::string> names = {{{1, 2}, "P"},   {{2, 1}, "2P"},    {{1, 1}, "Q"},
                                                        {{2, 2}, "2Q"},  {{2, 0}, "P+Q"},   {{0, 2}, "2P+Q"},
                                                        {{0, 1}, "P+2Q"}, {{1, 0}, "2P+2Q"}};
    for (auto& [xy, name] : names) in.push_back({pt(f, {xy.first, xy.second, 1}), 1, std::nullopt});
    std::sort(in.begin(), in.end(), [](const BaseCondition& a, const BaseCondition& b) { return a.point < b.point; });
    for (auto& b : in) {
      // Codes are projectively normalized; rescale to z = 1 (z is 1 or 2 in F3).
      auto codes = b.point.codes();
      int s = codes[2] == 2 ? 2 : 1;
      zc.push_back(geom_spec(names.at({codes[0] * s % 3, codes[1] * s % 3}), GeomSpec{std::nullopt, b.point, 1, std::nullopt}));
    }
    zc.push_back(geom_spec("O", GeomSpec{std::nullopt, *ninth, 1, std::nullopt}));
    const FieldElem one = FieldElem::one(f), zero = FieldElem::zero(f);
    for (int i = 0; i < 3; ++i) {
      FieldElem c = FieldElem::from_int(f, i);
      zc.push_back(plane_spec(theta("0", i), PlaneCurve(f, 1, {one, zero, -c})));
      zc.push_back(plane_spec(theta("inf", i), PlaneCurve(f, 1, {zero, one, c})));
      zc.push_back(plane_spec(theta("1", i), PlaneCurve(f, 1, {one, one, -c})));
      zc.push_back(plane_spec(theta("-1", i), PlaneCurve(f, 1, {one, -one, -c})));
    }
  } else if (id == "D8") {
    in = {{pt(f, {0, 1, 0}), 5, cusp}, {pt(f, {1, 1, 1}), 3, cusp}};
    Centers c(in, ninth, nl);
    exc_of(c, theta("inf", 0), 8);
    exc_of(c, theta("inf", 1), 6);
    exc_of(c, theta("inf", 2), 7);
    zc.push_back(plane_spec(theta("inf", 3), cv("x+z", f)));
    for (int k = 4; k <= 7; ++k) exc_of(c, theta("inf", k), k - 3);
    zc.push_back(plane_spec(theta("inf", 8), cv("z", f)));
    exc_of(c, "O", 9);
    exc_of(c, "P", 5);
  } else if (id == "A1+E7") {
    in = {{pt(f, {1, 0, 0}), 6, cv("xz+y^2", f)}, {pt(f, {0, 1, 0}), 2, cv("x", f)}};
    Centers c(in, ninth, nl);
    zc.push_back(plane_spec(theta("inf", 0), cv("x", f)));
    zc.push_back(plane_spec(theta("inf", 1), cv("xz+y^2", f)));
    exc_of(c, theta("0", 0), 8);
    exc_of(c, theta("0", 1), 7);
    zc.push_back(plane_spec(theta("0", 2), cv("z", f)));
    for (int k = 3; k <= 6; ++k) exc_of(c, theta("0", k), k - 1);
    exc_of(c, theta("0", 7), 1);
    exc_of(c, "O", 9);
    exc_of(c, "P", 6);
  } else if (id == "2D4") {
    auto l = param_line(*r.param);
    in = {{pt(f, {1, 0, 0}), 2, l}, {pt(f, {0, 0, 1}), 2, cv("y", f)}, {pt(f, {0, 1, 1}), 2, cv("y+z", f)},
          {pt(f, {0, 1, 0}), 2, cv("z", f)}};
    Centers c(in, ninth, nl);
    zc.push_back(plane_spec(theta("0", 4), cv("x", f)));
    zc.push_back(plane_spec(theta("0", 0), l));
    exc_of(c, theta("0", 1), 3);
    exc_of(c, theta("0", 2), 5);
    exc_of(c, theta("0", 3), 7);
    exc_of(c, theta("inf", 4), 1);
    exc_of(c, theta("inf", 0), 2);
    zc.push_back(plane_spec(theta("inf", 1), cv("y", f)));
    zc.push_back(plane_spec(theta("inf", 2), cv("y+z", f)));
    zc.push_back(plane_spec(theta("inf", 3), cv("z", f)));
    exc_of(c, "O", 9);
    exc_of(c, "P_1", 4);
    exc_of(c, "P_2", 6);
    exc_of(c, "P_3", 8);
  } else if (id == "2A1+D6") {
    in = {{pt(f, {1, 0, 0}), 1, std::nullopt},
          {pt(f, {0, 0, 1}), 2, cv("y", f)},
          {pt(f, {0, 1, 1}), 2, cv("y+z", f)},
          {pt(f, {0, 1, 0}), 3, cv("x^2+yz", f)}};
    Centers c(in, ninth, nl);
    exc_of(c, "O", 9);
    exc_of(c, "P", 1);
    exc_of(c, "R", 3);
    exc_of(c, "Q", 5);
    zc.push_back(plane_spec(theta("0", 0), cv("x^2+yz", f)));
    zc.push_back(plane_spec(theta("0", 1), cv("y+z", f)));
    zc.push_back(plane_spec(theta("inf", 0), cv("x^2+yz+z^2", f)));
    zc.push_back(plane_spec(theta("inf", 1), cv("y", f)));
    exc_of(c, theta("1", 2), 8);
    exc_of(c, theta("1", 3), 7);
    exc_of(c, theta("1", 0), 6);
    zc.push_back(plane_spec(theta("1", 4), cv("z", f)));
    exc_of(c, theta("1", 1), 4);
    zc.push_back(plane_spec(theta("1", 5), cv("x", f)));
    exc_of(c, theta("1", 6), 2);
  } else if (id == "4A1+D4") {
    auto l = param_line(*r.param);
    auto t = fano_points(f);
    in = {{t[0], 2, l}};
    for (int i = 1; i < 7; ++i) in.push_back({t[i], 1, std::nullopt});
    Centers c(in, ninth, nl);
    exc_of(c, "O", 9);
    exc_of(c, theta("1", 0), 2);
    exc_of(c, theta("1", 4), 1);
    zc.push_back(plane_spec("P_1", l));
    const std::pair<const char*, int> pts[] = {{"P_2", 3}, {"Q_2", 4}, {"P_3", 5}, {"Q_1", 6}, {"R_2", 7}, {"R_1", 8}};
    for (auto& [name, e] : pts) exc_of(c, name, e);
    zc.push_back(plane_spec(theta("1", 1), cv("y", f)));
    zc.push_back(plane_spec(theta("1", 2), cv("y+z", f)));
    zc.push_back(plane_spec(theta("1", 3), cv("z", f)));
    zc.push_back(plane_spec(theta("0", 1), cv("x", f)));
    zc.push_back(plane_spec(theta("inf", 1), cv("x+z", f)));
    zc.push_back(plane_spec(theta("a1", 1), cv("x+y+z", f)));
    zc.push_back(plane_spec(theta("a2", 1), cv("x+y", f)));
    // Conics through the three centers over t_1 and three of t_2..t_7.
    const std::pair<const char*, std::array<int, 3>> conics[] = {
        {"0", {7, 8, 5}}, {"inf", {4, 5, 6}}, {"a1", {4, 8, 3}}, {"a2", {7, 3, 6}}};
    for (auto& [beta, es] : conics)
      zc.push_back(class_spec(theta(beta, 0), cls(9, 2, {{1, 1}, {2, 1}, {9, 1}, {es[0], 1}, {es[1], 1}, {es[2], 1}})));
  } else if (id == "8A1") {
    auto t = fano_points(f);
    for (auto& q : t) in.push_back({q, 1, std::nullopt});
    in.push_back({*r.param, 1, std::nullopt});
    Centers c(in, ninth, nl);
    zc.push_back(class_spec(alabel(0, 1), cls(9, 1, {{8, 1}, {9, 1}})));
    for (int i = 1; i <= 7; ++i) exc_of(c, alabel(i, 1), i);
    exc_of(c, alabel(0, 2), 9);
    for (int i = 1; i <= 7; ++i) zc.push_back(class_spec(alabel(i, 2), cls(9, 1, {{i, 1}, {8, 1}})));
    std::map<int, long long> cubic = {{8, 2}};
    for (int i = 1; i <= 7; ++i) cubic[i] = 1;
    zc.push_back(class_spec(theta("0", 1), cls(9, 3, cubic)));
    for (int i = 1; i <= 7; ++i) zc.push_back(plane_spec(theta(std::to_string(i), 1), cv(kFanoLines[i - 1], f)));
    exc_of(c, theta("0", 2), 8);
    for (int i = 1; i <= 7; ++i) {
      std::map<int, long long> m = {{8, 1}, {9, 1}};
      for (int l = 1; l <= 7; ++l) {
        auto& tr = kFanoTriples[i - 1];
        if (std::find(tr.begin(), tr.end(), l) == tr.end()) m[l] = 1;
      }
      zc.push_back(class_spec(theta(std::to_string(i), 2), cls(9, 2, m)));
    }
  } else if (id == "E7") {
    in = {{pt(f, {0, 1, 0}), 7, cusp}};
  } else if (id == "A1+D6") {
    in = {{pt(f, {0, 1, 0}), 5, cusp}, {pt(f, {1, 1, 1}), 2, cusp}};
  } else if (id == "3A1+D4") {
    in = {{pt(f, {1, 0, 0}), 1, std::nullopt},
          {pt(f, {0, 0, 1}), 2, cv("y", f)},
          {pt(f, {0, 1, 1}), 2, cv("y+z", f)},
          {pt(f, {0, 1, 0}), 2, cv("z", f)}};
  } else if (id == "7A1") {
    auto t = fano_points(f);
    for (int i = 0; i < 7; ++i) {
      in.push_back({t[i], 1, std::nullopt});
      r.curves.push_back(geom_spec(alabel(i + 1, 1), GeomSpec{std::nullopt, t[i], 1, std::nullopt}));
    }
    for (int i = 1; i <= 7; ++i) r.curves.push_back(plane_spec(theta(std::to_string(i), 1), cv(kFanoLines[i - 1], f)));
  }
  int count = 0;
  for (auto& b : in) count += b.multiplicity;
  if (count != 9 - r.degree) throw std::logic_error("recipe " + id + " has the wrong number of centers");
  return r;
}

// ---------------------------------------------------------------- building

namespace {

bool chain_effective(const BlowupEngine& eng, const DivisorClass& r) {
  int pos = -1, neg = -1, nonzero = 0;
  for (int i = 1; i <= r.n(); ++i) {
    long long m = r.mult(i).num();
    if (m == -1) pos = i;
    if (m == 1) neg = i;
    if (m) ++nonzero;
  }
  if (nonzero != 2 || pos < 0 || neg < 0) return false;
  auto a = eng.center_position(pos), b = eng.center_position(neg);
  return a.first == b.first && a.second < b.second;
}

// Unique member of |cls| whose strict transform has class exactly cls.
std::optional<PlaneCurve> irreducible_member(const BlowupEngine& eng, const DivisorClass& c, const FieldDesc& f) {
  auto sys = eng.effective_system(c, f);
  if (sys.basis.size() != 1) return std::nullopt;
  if (eng.strict_transform_class(sys.basis[0]) != c) return std::nullopt;
  return sys.basis[0];
}

// Exceptional curve whose class starts at E_index.
SurfaceCurve exceptional_at(const BlowupEngine& eng, int index) {
  auto [root, level] = eng.center_position(index);
  return SurfaceCurve::exceptional(root, level);
}

int root_of(const BlowupPlan& plan, const ProjPoint& p) {
  for (size_t r = 0; r < plan.roots.size(); ++r)
    if (plan.roots[r].point == p.base_change(plan.roots[r].point.field())) return static_cast<int>(r);
  return -1;
}

DivisorClass truncate(const DivisorClass& c, int n) {
  std::vector<long long> m;
  for (int i = 1; i <= n; ++i) m.push_back(c.mult(i).num());
  return DivisorClass(c.degree().num(), m);
}

}  // namespace

BuiltSurface build_surface(const std::string& id, int p, const FieldDesc& f, const BlowupPlan& plan,
                           const std::vector<CurveSpec>& specs, const std::string& dynkin_label) {
  BuiltSurface s;
  s.id = id;
  s.characteristic = p;
  s.field = &f;
  s.plan = plan;
  s.engine = std::make_shared<BlowupEngine>(plan);
  const BlowupEngine& eng = *s.engine;
  int n = plan.n();

  // (-2)-curves: simple effective roots, irreducible when of positive degree.
  std::vector<DivisorClass> effective;
  for (auto& r : enumerate_classes(n, -2, 0, 0, 3)) {
    bool e = r.degree().is_zero() ? chain_effective(eng, r) : !eng.effective_system(r, f).basis.empty();
    if (e) effective.push_back(r);
  }
  std::set<DivisorClass> eff_set(effective.begin(), effective.end());
  std::map<DivisorClass, SurfaceCurve> geom;
  for (auto& r : effective) {
    bool decomposes = false;
    for (auto& a : effective)
      if (eff_set.count(r - a)) {
        decomposes = true;
        break;
      }
    if (decomposes) continue;
    if (r.degree().is_zero()) {
      int top = 0;
      for (int i = 1; i <= n; ++i)
        if (r.mult(i).num() == -1) top = i;
      geom[r] = exceptional_at(eng, top);
    } else {
      auto m = irreducible_member(eng, r, f);
      if (!m) continue;
      geom[r] = SurfaceCurve::of(*m);
    }
    s.census_minus2.push_back(r);
  }

  // (-1)-curves: exceptional classes meeting every (-2)-curve non-negatively.
  std::vector<DivisorClass> candidates;
  if (n == 9) {
    candidates = enumerate_classes(n, -1, -1, 0, 3);
  } else {
    candidates = enumerate_classes(n, -1, -1, 0, 0);
    auto rest = enumerate_classes(n, -1, -1, 1, 6, true);
    candidates.insert(candidates.end(), rest.begin(), rest.end());
  }
  for (auto& e : candidates) {
    bool ok = std::all_of(s.census_minus2.begin(), s.census_minus2.end(),
                          [&](const DivisorClass& c) { return intersect_int(e, c) >= 0; });
    if (!ok) continue;
    s.census_minus1.push_back(e);
    if (e.degree().is_zero()) {
      for (int i = 1; i <= n; ++i)
        if (e.mult(i).num() == -1) geom[e] = exceptional_at(eng, i);
    } else if (e.degree().num() <= 3) {
      auto sys = eng.effective_system(e, f);
      if (sys.basis.size() == 1) geom[e] = SurfaceCurve::of(sys.basis[0]);
    }
  }

  std::set<DivisorClass> m2(s.census_minus2.begin(), s.census_minus2.end());
  std::set<DivisorClass> m1(s.census_minus1.begin(), s.census_minus1.end());
  auto role_of = [&](const DivisorClass& c) {
    if (m2.count(c)) return n == 9 ? CurveRole::FiberComponent : CurveRole::Minus2;
    return n == 9 ? CurveRole::Section : CurveRole::Minus1;
  };

  s.model.id = id;
  s.model.characteristic = p;
  s.model.dynkin_label = dynkin_label;
  s.model.n = n;
  for (auto& [root, level] : plan.centers) s.model.parent.push_back(level == 1 ? -1 : plan.center_index(root, level - 1) - 1);

  std::set<DivisorClass> labelled;
  for (auto& spec : specs) {
    const GeomSpec& g = spec.geom;
    SurfaceCurve sc;
    GeomSpec resolved;
    if (g.plane) {
      sc = SurfaceCurve::of(g.plane->base_change(f));
      resolved.plane = sc.plane;
    } else if (g.point) {
      int r = root_of(plan, *g.point);
      if (r < 0 || g.level > plan.roots[r].multiplicity) continue;  // center not blown up here
      sc = SurfaceCurve::exceptional(r, g.level);
      resolved = g;
    } else {
      DivisorClass c = g.by_class->n() > n ? truncate(*g.by_class, n) : *g.by_class;
      if (intersect_int(c, c) >= 0) continue;
      auto m = irreducible_member(eng, c, f);
      if (!m) {
        s.census_problems.push_back(spec.label + ": no irreducible member of " + c.str());
        continue;
      }
      sc = SurfaceCurve::of(*m);
      resolved.plane = *m;
    }
    DivisorClass c = eng.surface_class(sc);
    long long self = intersect_int(c, c);
    if (self >= 0) continue;
    if (!m1.count(c) && !m2.count(c)) {
      s.census_problems.push_back(spec.label + ": class " + c.str() + " is not a census curve");
      continue;
    }
    if (!labelled.insert(c).second) {
      s.census_problems.push_back(spec.label + ": class " + c.str() + " already labelled");
      continue;
    }
    s.model.curves.push_back({spec.label, c, role_of(c)});
    s.geometry[spec.label] = sc;
    s.specs.push_back({spec.label, resolved});
  }
  auto add_unlabelled = [&](const std::vector<DivisorClass>& list) {
    for (auto& c : list) {
      if (labelled.count(c)) continue;
      std::string label = "C[" + c.str() + "]";
      s.model.curves.push_back({label, c, role_of(c)});
      if (geom.count(c)) s.geometry[label] = geom.at(c);
    }
  };
  add_unlabelled(s.census_minus2);
  add_unlabelled(s.census_minus1);
  return s;
}

std::vector<IncidencePoint> BuiltSurface::incidence(const std::string& a, const std::string& b) const {
  auto ia = geometry.find(a), ib = geometry.find(b);
  if (ia == geometry.end() || ib == geometry.end())
    throw std::invalid_argument("no plane data for " + (ia == geometry.end() ? a : b));
  return engine->incidence(ia->second, ib->second);
}

BlowupPlan ninth_center_plan(const std::vector<BaseCondition>& roots, const FieldDesc& f) {
  auto sys = linear_system(roots, 3, f);
  if (sys.basis.size() != 2) throw std::invalid_argument("anticanonical system is not a pencil");
  // Two distinct members smooth at every root.
  std::vector<PlaneCurve> smooth;
  int q = f.size();
  for (int a = 0; a < q && smooth.size() < 2; ++a)
    for (int b = 0; b < q && smooth.size() < 2; ++b) {
      if (a == 0 && b == 0) continue;
      auto c = sys.member({FieldElem::from_code(f, a), FieldElem::from_code(f, b)});
      bool ok = std::all_of(roots.begin(), roots.end(),
                            [&](const BaseCondition& r) { return local_germ(c, r.point.base_change(f)).ord() == 1; });
      if (ok && (smooth.empty() || !(smooth[0] == c))) smooth.push_back(c);
    }
  if (smooth.size() < 2) throw std::runtime_error("no two members smooth at the base points");
  const PlaneCurve &F = smooth[0], &G = smooth[1];
  BlowupPlan plan = BlowupPlan::sequential(roots);
  for (size_t r = 0; r < roots.size(); ++r) {
    auto p = roots[r].point.base_change(f);
    int s = local_intersection(local_germ(F, p), local_germ(G, p));
    if (s > roots[r].multiplicity) {
      plan.roots[r] = {roots[r].point, roots[r].multiplicity + 1, F};
      plan.centers.emplace_back(static_cast<int>(r), roots[r].multiplicity + 1);
      return plan;
    }
  }
  for (auto& p : common_points(F, G, f)) {
    bool is_root = std::any_of(roots.begin(), roots.end(), [&](const BaseCondition& r) { return r.point.base_change(f) == p; });
    if (is_root) continue;
    plan.roots.push_back({p, 1, std::nullopt});
    plan.centers.emplace_back(static_cast<int>(roots.size()), 1);
    return plan;
  }
  throw std::runtime_error("the pencil has no ninth base point over " + f.name());
}

namespace {

std::string primed(const std::string& label) {
  auto brace = label.find('_');
  if (brace == std::string::npos) return label;
  return label.substr(0, brace) + "'" + label.substr(brace);
}

}  // namespace

BuiltSurface build(const Recipe& r) {
  BlowupPlan plan = BlowupPlan::sequential(r.instructions);
  std::vector<CurveSpec> specs = r.degree == 1 ? r.z_curves : r.curves;
  if (r.id == "8A1")
    for (auto& s : specs) s.label = primed(s.label);
  return build_surface(r.id, r.characteristic, *r.field, plan, specs, r.dynkin);
}

BuiltSurface build_z(const Recipe& r) {
  if (r.degree != 1) throw std::invalid_argument("recipe " + r.id + " is not of degree one");
  BlowupPlan plan = ninth_center_plan(r.instructions, *r.field);
  return build_surface(r.id + "/Z", r.characteristic, *r.field, plan, r.z_curves, "type (" + r.expected.ztype + ")");
}

BuiltSurface build_degree4_model(const ProjPoint& t) {
  auto r = recipe_by_id("8A1", t);
  BuiltSurface z = build_z(r);
  auto pts = fano_points(*r.field);
  std::vector<BaseCondition> roots;
  for (int i : {3, 5, 6, 7}) roots.push_back({pts[i - 1], 1, std::nullopt});
  roots.push_back({t, 1, std::nullopt});
  std::vector<CurveSpec> specs;
  for (auto s : z.specs) {
    auto u = s.label.find('_');
    s.label = s.label.substr(0, u) + "bar" + s.label.substr(u);
    specs.push_back(s);
  }
  return build_surface("8A1/deg4", 2, *r.field, BlowupPlan::sequential(roots), specs, "");
}

// ---------------------------------------------------------------- fibers

FiberTable fiber_table(const BuiltSurface& z) {
  FiberTable t;
  t.fibers = fiber_decomposition(z.model, [&](const std::string& a, const std::string& b) { return z.incidence(a, b); });
  t.sections = sections_and_mw(z.model).sections;
  t.mw_from_discriminants = mw_order_from_discriminants(t.fibers);
  t.shioda_tate = shioda_tate_rank(t.fibers);
  t.adjacency = section_adjacency(z.model, t.fibers);
  return t;
}

namespace {

FieldElem det2(const std::pair<FieldElem, FieldElem>& a, const std::pair<FieldElem, FieldElem>& b) {
  return a.first * b.second - a.second * b.first;
}

// Pencil coordinates (u, v) of the member u*B0 + v*B1 containing the line.
std::pair<FieldElem, FieldElem> member_containing(const LinearSystem& pencil, const PlaneCurve& line) {
  const FieldDesc& f = *pencil.field;
  const PlaneCurve &b0 = pencil.basis[0], &b1 = pencil.basis[1];
  std::vector<ProjPoint> on_line;
  for (auto& q : enumerate_points(2, f))
    if (line.contains(q)) on_line.push_back(q);
  for (auto& q : on_line) {
    FieldElem v0 = b0.eval(q), v1 = b1.eval(q);
    if (v0.is_zero() && v1.is_zero()) continue;
    std::pair<FieldElem, FieldElem> uv{v1, -v0};
    auto m = pencil.member({uv.first, uv.second});
    if (on_line.size() < 4 || !std::all_of(on_line.begin(), on_line.end(), [&](const ProjPoint& x) { return m.contains(x); }))
      break;
    return uv;
  }
  throw std::runtime_error("no pencil member contains " + line.str());
}

}  // namespace

TypeFLocation type_f_location(const Recipe& r) {
  if (r.id != "4A1+D4") throw std::invalid_argument("fiber locations are defined for the 4A1+D4 row");
  const FieldDesc& f = *r.field;
  auto pencil = linear_system(r.instructions, 3, f);
  auto m0 = member_containing(pencil, cv("x", f));
  auto minf = member_containing(pencil, cv("x+z", f));
  auto m1 = member_containing(pencil, cv("y", f));
  // Affine parameter with M0 at 0 and Minf at infinity, scaled so M1 sits at 1.
  auto param = [&](const std::pair<FieldElem, FieldElem>& m) { return det2(m0, m) / det2(m, minf); };
  FieldElem scale = param(m1);
  TypeFLocation loc;
  loc.alpha1 = param(member_containing(pencil, cv("x+y+z", f))) / scale;
  loc.alpha2 = param(member_containing(pencil, cv("x+y", f))) / scale;
  loc.a = -(loc.alpha1 + loc.alpha2);
  loc.product_is_one = (loc.alpha1 * loc.alpha2).is_one();
  return loc;
}

// ---------------------------------------------------------------- automorphisms

namespace {

bool condition_maps_to(const ProjTransform& g, const BaseCondition& c, const BaseCondition& d) {
  if (c.multiplicity != d.multiplicity) return false;
  if (g.apply(c.point) != d.point) return false;
  if (c.multiplicity == 1 || !c.branch || !d.branch) return true;
  int m = c.multiplicity;
  return contact_order(c.branch->transform(g), branch_parametrize(*d.branch, d.point, m)) >= m;
}

bool preserves(const ProjTransform& g, const std::vector<BaseCondition>& cluster) {
  return std::all_of(cluster.begin(), cluster.end(), [&](const BaseCondition& c) {
    return std::any_of(cluster.begin(), cluster.end(), [&](const BaseCondition& d) { return condition_maps_to(g, c, d); });
  });
}

// Backtracking search for a permutation of the curves preserving the
// intersection matrix and the prescribed images.
bool find_matrix_automorphism(const std::vector<std::vector<long long>>& m, std::map<int, int> fixed) {
  int k = static_cast<int>(m.size());
  std::vector<int> image(k, -1);
  std::vector<bool> used(k, false);
  for (auto [a, b] : fixed) {
    image[a] = b;
    used[b] = true;
  }
  std::function<bool(int)> extend = [&](int i) -> bool {
    if (i == k) return true;
    if (image[i] >= 0) {
      for (int j = 0; j < k; ++j)
        if (image[j] >= 0 && m[i][j] != m[image[i]][image[j]]) return false;
      return extend(i + 1);
    }
    for (int c = 0; c < k; ++c) {
      if (used[c]) continue;
      bool ok = true;
      for (int j = 0; j < k && ok; ++j)
        if (image[j] >= 0 && (m[i][j] != m[c][image[j]] || m[j][i] != m[image[j]][c])) ok = false;
      if (!ok || m[i][i] != m[c][c]) continue;
      image[i] = c;
      used[c] = true;
      if (extend(i + 1)) return true;
      image[i] = -1;
      used[c] = false;
    }
    return false;
  };
  return extend(0);
}

}  // namespace

FiniteGroup configuration_group(const std::vector<BaseCondition>& cluster, const FieldDesc& prime_field) {
  std::vector<ProjTransform> keep;
  FiniteGroup all = enumerate_pgl(3, prime_field);
  for (auto& g : all.elements())
    if (preserves(g, cluster)) keep.push_back(g);
  FiniteGroup out(keep);
  out.check_closed();
  return out;
}

AutResult aut_discrete(const Recipe& r) {
  AutResult a;
  a.descriptor = r.expected.aut_descriptor;
  static const std::set<std::string> computed = {"4A2", "7A1", "2A1+D6", "4A1+D4", "8A1", "2D4"};
  if (!computed.count(r.id)) {
    a.note = "descriptor only: positive-dimensional group";
    return a;
  }
  a.computed = true;
  const FieldDesc& fp = make_field(r.characteristic, 1);
  FiniteGroup g = configuration_group(r.instructions, fp);
  a.config_order = static_cast<long long>(g.order());
  a.invariants = g.invariants();
  if (r.degree == 1) {
    BlowupPlan z = ninth_center_plan(r.instructions, *r.field);
    bool fixes = std::all_of(g.elements().begin(), g.elements().end(), [&](const ProjTransform& h) { return preserves(h, z.roots); });
    a.note = fixes ? "every element preserves the ninth center" : "some element moves the ninth center";
  }
  if (r.id == "8A1") {
    auto code = hamming_check(build(r));
    a.extra_factor = code.aut.translations;
    a.note += "; translations of the code coordinates: " + std::to_string(code.aut.translations);
  } else if (r.id == "2D4") {
    BuiltSurface z = build_z(r);
    std::vector<std::string> labels;
    for (auto& c : z.model.curves) labels.push_back(c.label);
    auto m = intersection_matrix(z.model, labels);
    auto idx = [&](const std::string& l) {
      return static_cast<int>(std::find(labels.begin(), labels.end(), l) - labels.begin());
    };
    bool swap = find_matrix_automorphism(m, {{idx("O"), idx("O")}, {idx(theta("0", 4)), idx(theta("inf", 4))}});
    a.extra_factor = swap ? 2 : 1;
    a.note += swap ? "; a fiber-swapping involution fixing O exists" : "; no fiber-swapping symmetry found";
  }
  a.order = a.config_order * a.extra_factor;
  return a;
}

ModuliCensus moduli_census(const std::string& family, int ext_degree) {
  int n;
  if (family == "8A1")
    n = 2;
  else if (family == "2D4" || family == "4A1+D4")
    n = 1;
  else
    throw std::invalid_argument("moduli census is defined for 2D4, 4A1+D4 and 8A1");
  if (ext_degree < 1 || ext_degree > 6) throw std::invalid_argument("extension degree must be in 1..6");
  const FieldDesc& f = make_field(2, ext_degree);
  auto pts = dn_points(n, f);
  ModuliCensus c;
  c.point_count = static_cast<long long>(pts.size());
  if (pts.empty()) return c;
  auto group = enumerate_pgl(n + 1, make_field(2, 1));
  auto orb = orbits(group, pts);
  c.orbit_count = static_cast<long long>(orb.orbits.size());
  for (auto& o : orb.orbits) c.stabilizer_orders.push_back(static_cast<long long>(stabilizer(group, o.front()).order()));
  return c;
}

CodeCheck hamming_check(const BuiltSurface& y) {
  std::vector<std::vector<int>> rows = {std::vector<int>(8, 0), std::vector<int>(8, 1)};
  for (int j = 1; j <= 2; ++j)
    for (int i = 1; i <= 7; ++i) {
      const auto& a = y.model.curve("A'_{" + std::to_string(i) + "," + std::to_string(j) + "}");
      std::vector<int> row;
      for (int k = 0; k <= 7; ++k)
        row.push_back(static_cast<int>(intersect_int(a.cls, y.model.curve("Theta'_{" + std::to_string(k) + ",1}").cls)));
      rows.push_back(row);
    }
  CodeCheck c;
  c.code = code_from_rows(rows);
  c.params = parameters(c.code);
  c.rm = match_reed_muller_1_3(c.code);
  c.aut = permutation_automorphism_group(c.code);
  return c;
}

// ---------------------------------------------------------------- vanishing failures

KV8A1 kv_8a1(const BuiltSurface& y) {
  KV8A1 k;
  k.pullback = pullback(y.model, {{"A'_{1,1}", 1}, {"A'_{2,1}", 1}, {"A'_{4,1}", -1}});
  k.round_up = round_up(y.model, k.pullback);
  const DivisorClass& L = k.round_up.cls;
  DivisorClass K = DivisorClass::K(L.n());
  k.self_intersection = intersect_int(L, L);
  k.anticanonical_degree = intersect_int(-K, L);
  k.chi = chi_rr(-L);
  k.witness_pairing = intersect_int(K + L, y.model.curve("Theta'_{0,1}").cls);
  k.parity = h2_parity_obstruction(L, y.model.minus2());
  k.negativity = h0_negativity_certificate(L, -K, y.model.curves);
  // h^0(-L) = h^2(-L) = 0 leaves h^1(-L) = -chi(-L).
  if (k.parity && k.negativity) k.h1 = -k.chi;
  return k;
}

KV4A1D4 kv_4a1d4(const BuiltSurface& y) {
  KV4A1D4 k;
  const std::vector<std::string> contracted = {theta("1", 0),   theta("1", 1),  theta("1", 2),  theta("1", 3),
                                               theta("0", 1),   theta("inf", 1), theta("a1", 1), theta("a2", 1)};
  auto nu = [&](const std::string& l) { return pullback_onto(y.model, {{l, 1}}, contracted).cls; };
  auto pi = [&](const std::string& l) { return pullback(y.model, {{l, 1}}).cls; };
  auto c = [&](const std::string& l) { return y.model.curve(l).cls; };
  const std::string t10 = theta("1", 0), t14 = theta("1", 4);
  DivisorClass chain = c(t10) + c(theta("1", 1)) + c(theta("1", 2)) + c(theta("1", 3)) + c(t14) * Rational(2);
  bool first = pi(t10) == chain && chain == nu(t14) * Rational(2) - c(t10);
  k.identities.push_back({"pi*(" + t10 + ") = " + t10 + "+" + theta("1", 1) + "+" + theta("1", 2) + "+" + theta("1", 3) +
                              "+2" + t14 + " = 2nu*(" + t14 + ")-" + t10,
                          first});
  DivisorClass mK = -DivisorClass::K(y.model.n);
  for (const char* g : {"Q_1", "R_1", "Q_2", "R_2", "P_2", "P_3"}) {
    bool ok = pi(g) == nu(g) + nu(t14) - c(t10);
    k.identities.push_back({std::string("pi*(") + g + ") = nu*(" + g + ")+nu*(" + t14 + ")-" + t10, ok});
    k.generator_degrees.push_back({g, intersect_int(mK, c(g))});
  }
  k.degree_check = intersect_int(mK, nu("Q_1") + nu(t14));
  return k;
}

// ---------------------------------------------------------------- Hesse pencil

HesseResult hesse_check() {
  const FieldDesc& q = make_field(0, 2);
  const FieldElem zero = FieldElem::zero(q), one = FieldElem::one(q), w = FieldElem::gen(q);
  auto x = MPoly::variable(q, 3, 0), y = MPoly::variable(q, 3, 1), z = MPoly::variable(q, 3, 2);
  MPoly fermat = x.pow(3) + y.pow(3) + z.pow(3), xyz = x * y * z;
  auto member = [&](const FieldElem& s, const FieldElem& t) { return PlaneCurve::from_poly(fermat.scaled(s) + xyz.scaled(t)); };
  auto singular_at = [&](const PlaneCurve& c, const ProjPoint& p) {
    if (!c.contains(p)) return false;
    for (int v = 0; v < 3; ++v) {
      auto d = c.derivative(v);
      if (!d.is_zero_form() && !d.contains(p)) return false;
    }
    return true;
  };
  HesseResult h;
  // xyz = 0 is singular at [1:0:0]; the member t = -3 lambda s, lambda^3 = 1, at [1:1:lambda^2].
  h.singular_members.push_back(ProjPoint({zero, one}));
  h.witnesses.push_back(ProjPoint({one, zero, zero}));
  for (const FieldElem& lambda : {one, w, w * w}) {
    h.singular_members.push_back(ProjPoint({one, FieldElem::from_int(q, -3) * lambda}));
    h.witnesses.push_back(ProjPoint({one, one, lambda * lambda}));
  }
  bool witnesses_ok = true;
  for (size_t i = 0; i < h.singular_members.size(); ++i) {
    const auto& st = h.singular_members[i].coords();
    witnesses_ok = witnesses_ok && singular_at(member(st[0], st[1]), h.witnesses[i]);
  }
  std::vector<ProjPoint> roots = {affine_p1(one), affine_p1(w), affine_p1(w * w), infinity_p1(q)};
  h.equivalent_to_roots_of_unity = witnesses_ok && quadruples_projectively_equivalent(h.singular_members, roots);
  // The affine map sending 1 -> 0, w^2 -> 1 fixes infinity and sends w to alpha.
  h.alpha = (w - one) / (w * w - one);
  auto orbit = cross_ratio_orbit(h.singular_members);
  bool in_orbit = std::find(orbit.begin(), orbit.end(), h.alpha) != orbit.end();
  h.alpha_is_minus_omega = in_orbit && h.alpha == -w;
  return h;
}

// ---------------------------------------------------------------- parametric groups

namespace {

int rank_of(std::vector<std::vector<FieldElem>> rows) {
  int rank = 0;
  size_t cols = rows.empty() ? 0 : rows[0].size();
  for (size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    size_t piv = rank;
    while (piv < rows.size() && rows[piv][c].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    FieldElem inv = rows[rank][c].inverse();
    for (size_t r = 0; r < rows.size(); ++r) {
      if (static_cast<int>(r) == rank || rows[r][c].is_zero()) continue;
      FieldElem s = rows[r][c] * inv;
      for (size_t j = c; j < cols; ++j) rows[r][j] = rows[r][j] - s * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

SampledPreservation table6_evidence(const Recipe& r) {
  using Shape = std::function<std::vector<FieldElem>(const FieldElem&, const FieldElem&, const FieldElem&)>;
  Shape shape;
  bool uses_d = false, uses_f = false;
  const FieldDesc& sample = make_field(r.characteristic, 2);
  const FieldElem zero = FieldElem::zero(sample), one = FieldElem::one(sample);
  // Entries as functions of (a, d, f); unused slots sweep a single value.
  if (r.id == "E8_p2") {
    shape = [&](auto a, auto, auto f) { return std::vector<FieldElem>{a, zero, zero, zero, one, f, zero, zero, a.pow(3)}; };
    uses_f = true;
  } else if (r.id == "E8_p3") {
    shape = [&](auto a, auto, auto c) { return std::vector<FieldElem>{a, zero, c, zero, one, zero, zero, zero, a.pow(3)}; };
    uses_f = true;
  } else if (r.id == "E7") {
    shape = [&](auto a, auto d, auto f) { return std::vector<FieldElem>{a, zero, d * d * a, d, one, f, zero, zero, a.pow(3)}; };
    uses_d = uses_f = true;
  } else if (r.id == "A1+D6") {
    shape = [&](auto a, auto d, auto) {
      return std::vector<FieldElem>{a, zero, a.pow(3) + a, d, one, a.pow(3) + d + one, zero, zero, a.pow(3)};
    };
    uses_d = true;
  } else {
    throw std::invalid_argument("no parametric matrix group for " + r.id);
  }
  std::vector<PlaneCurve> basis;
  for (auto& b : linear_system(r.instructions, 3, *r.field).basis) basis.push_back(b.base_change(sample));
  std::vector<std::vector<FieldElem>> span;
  for (auto& b : basis) span.push_back(b.coeffs());
  int q = sample.size();
  SampledPreservation s;
  for (int ia = 1; ia < q; ++ia)
    for (int id = 0; id < (uses_d ? q : 1); ++id)
      for (int jf = 0; jf < (uses_f ? q : 1); ++jf) {
        auto m = shape(FieldElem::from_code(sample, ia), FieldElem::from_code(sample, id), FieldElem::from_code(sample, jf));
        ProjTransform g(3, m);
        ++s.samples;
        bool ok = true;
        for (auto& b : basis) {
          auto rows = span;
          rows.push_back(b.transform(g).coeffs());
          if (rank_of(rows) != static_cast<int>(span.size())) ok = false;
        }
        if (ok) ++s.preserved;
      }
  return s;
}

}  // namespace dvdp
