#include "dvdp/fibrations.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace dvdp {

DivisorClass FiberRecord::fiber_class() const {
  DivisorClass f(components.front().cls.n());
  for (auto& c : components) f = f + c.cls * Rational(c.multiplicity);
  return f;
}

std::vector<std::string> FiberRecord::labels() const {
  std::vector<std::string> out;
  for (auto& c : components) out.push_back(c.label);
  return out;
}

std::vector<int> FiberRecord::multiplicities() const {
  std::vector<int> out;
  for (auto& c : components) out.push_back(c.multiplicity);
  return out;
}

namespace {

std::string graph_text(const FiberShape& s) {
  std::string out = "components " + std::to_string(s.classes.size()) + ", edges";
  for (size_t i = 0; i < s.classes.size(); ++i)
    for (size_t j = i + 1; j < s.classes.size(); ++j) {
      long long v = intersect_int(s.classes[i], s.classes[j]);
      if (v) out += " " + std::to_string(i) + "-" + std::to_string(j) + ":" + std::to_string(v);
    }
  return out;
}

// Least-squares normal equations over Q; the caller re-checks the solution.
std::optional<std::vector<Rational>> solve_combination(const std::vector<DivisorClass>& cols, const DivisorClass& target) {
  int k = static_cast<int>(cols.size());
  int rows = target.n() + 1;
  std::vector<std::vector<Rational>> a(k, std::vector<Rational>(k + 1));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j)
      for (int r = 0; r < rows; ++r) a[i][j] += cols[i].coeffs()[r] * cols[j].coeffs()[r];
    for (int r = 0; r < rows; ++r) a[i][k] += cols[i].coeffs()[r] * target.coeffs()[r];
  }
  for (int c = 0; c < k; ++c) {
    int piv = -1;
    for (int r = c; r < k; ++r)
      if (!a[r][c].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) return std::nullopt;
    std::swap(a[piv], a[c]);
    for (int r = 0; r < k; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      Rational f = a[r][c] / a[c][c];
      for (int j = c; j <= k; ++j) a[r][j] -= f * a[c][j];
    }
  }
  std::vector<Rational> x(k);
  for (int i = 0; i < k; ++i) x[i] = a[i][k] / a[i][i];
  DivisorClass check(target.n());
  for (int i = 0; i < k; ++i) check = check + cols[i] * x[i];
  if (check != target) return std::nullopt;
  return x;
}

}  // namespace

std::string classify_kodaira(const FiberShape& s) {
  int k = static_cast<int>(s.classes.size());
  if (k == 1) return "irreducible";
  int drop = -1;
  for (int i = 0; i < k; ++i)
    if (s.multiplicities[i] == 1) {
      drop = i;
      break;
    }
  if (drop < 0) throw std::invalid_argument("unsupported fiber type: no simple component; " + graph_text(s));
  std::vector<DivisorClass> rest;
  for (int i = 0; i < k; ++i)
    if (i != drop) rest.push_back(s.classes[i]);
  std::vector<std::string> comps;
  try {
    comps = dynkin_components(rest);
  } catch (const std::invalid_argument&) {
    comps.clear();
  }
  if (comps.size() != 1) throw std::invalid_argument("unsupported fiber type: " + graph_text(s));
  const std::string& t = comps[0];
  int rank = std::stoi(t.substr(2));
  int maxm = *std::max_element(s.multiplicities.begin(), s.multiplicities.end());
  auto expect_max = [&](int m, const std::string& label) {
    if (maxm != m) throw std::invalid_argument("unsupported fiber type: multiplicities do not fit " + label);
    return label;
  };
  if (t[0] == 'E') {
    if (rank == 8) return expect_max(6, "II*");
    if (rank == 7) return expect_max(4, "III*");
    return expect_max(3, "IV*");
  }
  if (t[0] == 'D') return expect_max(2, "I" + std::to_string(rank - 4) + "*");
  if (rank == 1) {
    const auto& pts = s.contacts[0][1];
    if (pts.size() == 1 && pts[0].multiplicity == 2) return "III";
    if (pts.size() == 2) return "I2";
  } else if (rank == 2) {
    std::set<std::string> common;
    for (auto& p : s.contacts[0][1]) common.insert(p.id);
    for (auto [i, j] : {std::pair{0, 2}, std::pair{1, 2}}) {
      std::set<std::string> ids;
      for (auto& p : s.contacts[i][j]) ids.insert(p.id);
      std::set<std::string> keep;
      std::set_intersection(common.begin(), common.end(), ids.begin(), ids.end(), std::inserter(keep, keep.end()));
      common = keep;
    }
    return common.empty() ? "I3" : "IV";
  }
  throw std::invalid_argument("unsupported fiber type: " + graph_text(s));
}

std::vector<FiberRecord> fiber_decomposition(const SurfaceModel& z, const IncidenceFn& incidence) {
  if (z.degree() != 0) throw std::invalid_argument("fiber decomposition needs a degree-0 model");
  auto thetas = z.minus2();
  int k = static_cast<int>(thetas.size());
  std::vector<int> comp(k, -1);
  std::vector<FiberRecord> out;
  DivisorClass fiber = -DivisorClass::K(z.n);
  for (int s = 0; s < k; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> verts = {s}, stack = {s};
    comp[s] = s;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w = 0; w < k; ++w)
        if (comp[w] < 0 && intersect_int(thetas[v].cls, thetas[w].cls) > 0) {
          comp[w] = s;
          verts.push_back(w);
          stack.push_back(w);
        }
    }
    std::sort(verts.begin(), verts.end());
    std::vector<DivisorClass> cols;
    for (int v : verts) cols.push_back(thetas[v].cls);
    auto x = solve_combination(cols, fiber);
    if (!x) throw std::invalid_argument("not a fiber configuration: " + thetas[s].label);
    FiberRecord rec;
    FiberShape shape;
    for (size_t i = 0; i < verts.size(); ++i) {
      if (!(*x)[i].is_integer() || (*x)[i] <= Rational(0))
        throw std::invalid_argument("not a fiber configuration: multiplicity " + (*x)[i].str());
      int m = static_cast<int>((*x)[i].num());
      rec.components.push_back({thetas[verts[i]].label, thetas[verts[i]].cls, m});
      shape.classes.push_back(thetas[verts[i]].cls);
      shape.multiplicities.push_back(m);
    }
    size_t nc = verts.size();
    shape.contacts.assign(nc, std::vector<std::vector<IncidencePoint>>(nc));
    if (nc <= 3)
      for (size_t i = 0; i < nc; ++i)
        for (size_t j = i + 1; j < nc; ++j) shape.contacts[i][j] = incidence(rec.components[i].label, rec.components[j].label);
    rec.kodaira_type = classify_kodaira(shape);
    std::vector<DivisorClass> rest;
    bool dropped = false;
    for (auto& c : rec.components) {
      if (!dropped && c.multiplicity == 1) {
        dropped = true;
        continue;
      }
      rest.push_back(c.cls);
    }
    rec.dynkin = nc == 2 ? "A_1" : dynkin_classify(rest);
    out.push_back(std::move(rec));
  }
  return out;
}

SectionsResult sections_and_mw(const SurfaceModel& z) {
  SectionsResult r;
  DivisorClass f = -DivisorClass::K(z.n);
  for (auto& c : z.minus1())
    if (intersect_int(c.cls, f) == 1) r.sections.push_back(c);
  r.mw_order = static_cast<long long>(r.sections.size());
  return r;
}

long long root_lattice_discriminant(const std::string& t) {
  int rank = std::stoi(t.substr(2));
  switch (t[0]) {
    case 'A':
      return rank + 1;
    case 'D':
      return 4;
    case 'E':
      return 9 - rank;
  }
  throw std::invalid_argument("unknown Dynkin component " + t);
}

long long mw_order_from_discriminants(const std::vector<FiberRecord>& fibers) {
  long long prod = 1;
  int rank = 0;
  for (auto& f : fibers) {
    if (f.components.size() < 2) continue;
    prod *= root_lattice_discriminant(f.dynkin);
    rank += static_cast<int>(f.components.size()) - 1;
  }
  if (rank != 8) return -1;
  auto r = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(prod))));
  return r * r == prod ? r : -1;
}

int shioda_tate_rank(const std::vector<FiberRecord>& fibers) {
  int r = 2;
  for (auto& f : fibers) r += static_cast<int>(f.components.size()) - 1;
  return r;
}

std::map<std::string, std::vector<std::string>> section_adjacency(const SurfaceModel& z,
                                                                  const std::vector<FiberRecord>& fibers) {
  auto secs = sections_and_mw(z).sections;
  std::map<std::string, std::vector<std::string>> out;
  for (auto& f : fibers)
    for (auto& c : f.components) {
      auto& v = out[c.label];
      for (auto& s : secs)
        if (intersect_int(s.cls, c.cls) > 0) v.push_back(s.label);
    }
  return out;
}

}  // namespace dvdp
