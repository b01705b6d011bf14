#include "dvdp/piclattice.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dvdp {

DivisorClass::DivisorClass(long long d, const std::vector<long long>& mults) {
  c_.push_back(Rational(d));
  for (long long m : mults) c_.push_back(Rational(m));
}

DivisorClass DivisorClass::H(int n) {
  DivisorClass c(n);
  c.c_[0] = Rational(1);
  return c;
}
DivisorClass DivisorClass::E(int n, int i) {
  if (i < 1 || i > n) throw std::out_of_range("exceptional index out of range");
  DivisorClass c(n);
  c.c_[i] = Rational(-1);  // E_i is 0H - (-1)E_i
  return c;
}
DivisorClass DivisorClass::K(int n) {
  DivisorClass c(n);
  c.c_[0] = Rational(-3);
  for (int i = 1; i <= n; ++i) c.c_[i] = Rational(-1);
  return c;
}

bool DivisorClass::is_integral() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return r.is_integer(); });
}

DivisorClass DivisorClass::operator+(const DivisorClass& o) const {
  if (n() != o.n()) throw std::invalid_argument("dimension mismatch");
  DivisorClass r = *this;
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
  return r;
}
DivisorClass DivisorClass::operator-(const DivisorClass& o) const { return *this + (-o); }
DivisorClass DivisorClass::operator-() const {
  DivisorClass r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}
DivisorClass DivisorClass::operator*(const Rational& s) const {
  DivisorClass r = *this;
  for (auto& x : r.c_) x *= s;
  return r;
}
bool DivisorClass::operator<(const DivisorClass& o) const {
  return std::lexicographical_compare(c_.begin(), c_.end(), o.c_.begin(), o.c_.end());
}

std::string DivisorClass::str() const {
  std::ostringstream os;
  os << c_[0].str() << "H";
  for (int i = 1; i <= n(); ++i) {
    if (c_[i].is_zero()) continue;
    Rational m = -c_[i];
    os << (m < Rational(0) ? "-" : "+");
    Rational a = m < Rational(0) ? -m : m;
    if (a != Rational(1)) os << a.str();
    os << "E" << i;
  }
  return os.str();
}

Rational intersect(const DivisorClass& a, const DivisorClass& b) {
  if (a.n() != b.n()) throw std::invalid_argument("dimension mismatch");
  Rational r = a.degree() * b.degree();
  for (int i = 1; i <= a.n(); ++i) r -= a.mult(i) * b.mult(i);
  return r;
}

long long intersect_int(const DivisorClass& a, const DivisorClass& b) {
  Rational r = intersect(a, b);
  if (!r.is_integer()) throw std::logic_error("non-integral intersection number");
  return r.num();
}

std::string role_name(CurveRole r) {
  switch (r) {
    case CurveRole::Minus1: return "minus1";
    case CurveRole::Minus2: return "minus2";
    case CurveRole::Section: return "section";
    case CurveRole::FiberComponent: return "fiber_component";
    case CurveRole::Other: return "other";
  }
  return "other";
}

CurveRole numeric_role(const DivisorClass& c) {
  DivisorClass k = DivisorClass::K(c.n());
  Rational s = intersect(c, c), ck = intersect(c, k);
  if (s == Rational(-1) && ck == Rational(-1)) return CurveRole::Minus1;
  if (s == Rational(-2) && ck == Rational(0)) return CurveRole::Minus2;
  return CurveRole::Other;
}

bool role_consistent(const CurveRecord& c) {
  CurveRole r = numeric_role(c.cls);
  if (c.role == CurveRole::Minus1 || c.role == CurveRole::Section) return r == CurveRole::Minus1;
  if (c.role == CurveRole::Minus2 || c.role == CurveRole::FiberComponent) return r == CurveRole::Minus2;
  return true;
}

const CurveRecord& SurfaceModel::curve(const std::string& label) const {
  for (auto& c : curves)
    if (c.label == label) return c;
  throw std::out_of_range("unknown curve label " + label + " in model " + id);
}
bool SurfaceModel::has_curve(const std::string& label) const {
  return std::any_of(curves.begin(), curves.end(), [&](const CurveRecord& c) { return c.label == label; });
}
std::vector<CurveRecord> SurfaceModel::minus2() const {
  std::vector<CurveRecord> out;
  for (auto& c : curves)
    if (c.role == CurveRole::Minus2 || c.role == CurveRole::FiberComponent) out.push_back(c);
  return out;
}
std::vector<CurveRecord> SurfaceModel::minus1() const {
  std::vector<CurveRecord> out;
  for (auto& c : curves)
    if (c.role == CurveRole::Minus1 || c.role == CurveRole::Section) out.push_back(c);
  return out;
}

// ---------------------------------------------------------------- roots

std::vector<DivisorClass> enumerate_classes(int n, long long self_int, long long k_deg, long long dmin, long long dmax,
                                           bool nonnegative) {
  if (n < 1 || n > 9) throw std::invalid_argument("class enumeration supports 1 <= n <= 9");
  std::vector<DivisorClass> out;
  std::vector<long long> m(n);
  long long mbound = std::max(std::abs(dmin), std::abs(dmax)) + 2;
  for (long long d = dmin; d <= dmax; ++d) {
    long long need_sq = d * d - self_int;  // sum m_i^2
    long long need_sum = 3 * d + k_deg;    // sum m_i, from C.K = -3d + sum m_i
    std::function<void(int, long long, long long)> rec = [&](int i, long long sq, long long sum) {
      if (i == n) {
        if (sq == need_sq && sum == need_sum) out.push_back(DivisorClass(d, m));
        return;
      }
      long long rem = need_sq - sq;
      for (long long v = nonnegative ? 0 : -mbound; v <= mbound; ++v) {
        if (v * v > rem) continue;
        m[i] = v;
        rec(i + 1, sq + v * v, sum + v);
      }
    };
    rec(0, 0, 0);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<DivisorClass> enumerate_roots(int n, int degree_bound) {
  if (n < 1 || n > 8) throw std::invalid_argument("root enumeration supports 1 <= n <= 8");
  return enumerate_classes(n, -2, 0, -degree_bound, degree_bound);
}

// ---------------------------------------------------------------- Dynkin

namespace {

std::string classify_component(const std::vector<std::vector<int>>& adj, const std::vector<int>& verts) {
  int nv = static_cast<int>(verts.size());
  int edges = 0;
  for (int v : verts) edges += static_cast<int>(adj[v].size());
  edges /= 2;
  if (edges != nv - 1) throw std::invalid_argument("not a root basis: component is not a tree");
  std::vector<int> branch;
  for (int v : verts) {
    if (adj[v].size() > 3) throw std::invalid_argument("not a root basis: vertex of degree > 3");
    if (adj[v].size() == 3) branch.push_back(v);
  }
  if (branch.empty()) return "A_" + std::to_string(nv);
  if (branch.size() > 1) throw std::invalid_argument("not a root basis: two branch points");
  int b = branch[0];
  std::vector<int> arms;
  for (int start : adj[b]) {
    int len = 1, prev = b, cur = start;
    while (adj[cur].size() == 2) {
      int nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      prev = cur;
      cur = nxt;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms[0] == 1 && arms[1] == 1) return "D_" + std::to_string(nv);
  if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) return "E_" + std::to_string(nv);
  throw std::invalid_argument("not a root basis: branch arms do not match D or E");
}

}  // namespace

std::vector<std::string> dynkin_components(const std::vector<DivisorClass>& classes) {
  int k = static_cast<int>(classes.size());
  std::vector<std::vector<int>> adj(k);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      Rational v = intersect(classes[i], classes[j]);
      if (v < Rational(0)) throw std::invalid_argument("not a root basis: negative pairing");
      if (v == Rational(0)) continue;
      if (v != Rational(1)) throw std::invalid_argument("not a root basis: multiple edge");
      adj[i].push_back(j);
      adj[j].push_back(i);
    }
  std::vector<int> comp(k, -1);
  std::vector<std::string> out;
  for (int s = 0; s < k; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> verts = {s}, stack = {s};
    comp[s] = s;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : adj[v])
        if (comp[w] < 0) {
          comp[w] = s;
          verts.push_back(w);
          stack.push_back(w);
        }
    }
    out.push_back(classify_component(adj, verts));
  }
  return out;
}

std::string dynkin_join(std::vector<std::string> components) {
  auto key = [](const std::string& s) { return std::make_pair(s[0], std::stoi(s.substr(2))); };
  std::sort(components.begin(), components.end(), [&](const std::string& a, const std::string& b) { return key(a) < key(b); });
  std::string out;
  for (size_t i = 0; i < components.size();) {
    size_t j = i;
    while (j < components.size() && components[j] == components[i]) ++j;
    if (!out.empty()) out += "+";
    if (j - i > 1) out += std::to_string(j - i);
    out += components[i];
    i = j;
  }
  return out;
}

std::string dynkin_classify(const std::vector<DivisorClass>& classes) {
  return dynkin_join(dynkin_components(classes));
}

// ---------------------------------------------------------------- pullback

namespace {

// Solve A x = b over Q for square nonsingular A.
std::vector<Rational> solve(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  int n = static_cast<int>(b.size());
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (!a[r][c].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::logic_error("singular Gram matrix");
    std::swap(a[piv], a[c]);
    std::swap(b[piv], b[c]);
    for (int r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      Rational f = a[r][c] / a[c][c];
      for (int k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<Rational> x(n);
  for (int i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

}  // namespace

LabeledDivisor labeled_divisor(const SurfaceModel& model, const std::map<std::string, Rational>& coeffs) {
  LabeledDivisor out;
  out.cls = DivisorClass(model.n);
  for (auto& [label, c] : coeffs) {
    if (c.is_zero()) continue;
    out.coeffs[label] = c;
    out.cls = out.cls + model.curve(label).cls * c;
  }
  return out;
}

LabeledDivisor pullback(const SurfaceModel& model, const std::vector<std::pair<std::string, long long>>& expr) {
  std::vector<std::string> labels;
  for (auto& c : model.minus2()) labels.push_back(c.label);
  return pullback_onto(model, expr, labels);
}

LabeledDivisor pullback_onto(const SurfaceModel& model, const std::vector<std::pair<std::string, long long>>& expr,
                             const std::vector<std::string>& contracted) {
  std::map<std::string, Rational> coeffs;
  for (auto& [label, c] : expr) coeffs[label] += Rational(c);
  LabeledDivisor base = labeled_divisor(model, coeffs);
  std::vector<CurveRecord> thetas;
  for (auto& l : contracted) thetas.push_back(model.curve(l));
  int k = static_cast<int>(thetas.size());
  std::vector<std::vector<Rational>> gram(k, std::vector<Rational>(k));
  std::vector<Rational> rhs(k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) gram[i][j] = intersect(thetas[i].cls, thetas[j].cls);
    rhs[i] = -intersect(base.cls, thetas[i].cls);
  }
  auto x = k ? solve(gram, rhs) : std::vector<Rational>{};
  for (int i = 0; i < k; ++i) coeffs[thetas[i].label] += x[i];
  LabeledDivisor out = labeled_divisor(model, coeffs);
  for (auto& t : thetas)
    if (!intersect(out.cls, t.cls).is_zero()) throw std::logic_error("pullback not orthogonal to contracted curves");
  return out;
}

LabeledDivisor round_up(const SurfaceModel& model, const LabeledDivisor& q) {
  std::map<std::string, Rational> c;
  for (auto& [label, v] : q.coeffs) c[label] = Rational(v.ceil());
  return labeled_divisor(model, c);
}

long long chi_rr(const DivisorClass& d) {
  if (!d.is_integral()) throw std::invalid_argument("chi_rr needs an integral class");
  Rational v = intersect(d, d - DivisorClass::K(d.n()));
  if (v.num() % 2 != 0) throw std::logic_error("non-integral Euler characteristic");
  return 1 + v.num() / 2;
}

bool h2_parity_obstruction(const DivisorClass& L, const std::vector<CurveRecord>& minus2set) {
  for (size_t i = 0; i < minus2set.size(); ++i)
    for (size_t j = i + 1; j < minus2set.size(); ++j)
      if (!intersect(minus2set[i].cls, minus2set[j].cls).is_zero())
        throw std::invalid_argument("parity obstruction needs pairwise disjoint (-2)-curves");
  DivisorClass k = DivisorClass::K(L.n());
  DivisorClass c = k + L;
  if (!intersect(c, -k).is_zero()) return false;
  for (auto& t : minus2set) {
    Rational v = intersect(c, t.cls);
    if (v.is_integer() && (v.num() % 2 != 0)) return true;
  }
  return false;
}

bool h0_negativity_certificate(const DivisorClass& L, const DivisorClass& nef, const std::vector<CurveRecord>& curves) {
  for (auto& c : curves)
    if (intersect(nef, c.cls) < Rational(0)) throw std::invalid_argument("supplied class is not nef on " + c.label);
  return intersect(nef, -L) < Rational(0);
}

int max_orthogonal_a1(int n) {
  if (n < 1) return 0;
  auto all = enumerate_roots(n);
  // one representative per +/- pair
  std::vector<DivisorClass> roots;
  for (auto& r : all)
    if (r < -r) roots.push_back(r);
  if (roots.empty()) return 0;
  // The Weyl group is transitive on roots of an irreducible system, so one
  // root may be fixed; for reducible systems (n = 2) try all starting roots.
  int best = 0;
  std::vector<int> starts;
  if (n >= 3) starts = {0};
  else
    for (int i = 0; i < static_cast<int>(roots.size()); ++i) starts.push_back(i);
  std::function<void(const std::vector<int>&, int)> rec = [&](const std::vector<int>& cand, int size) {
    best = std::max(best, size);
    if (size + static_cast<int>(cand.size()) <= best) return;
    for (size_t i = 0; i < cand.size(); ++i) {
      if (size + static_cast<int>(cand.size() - i) <= best) return;
      std::vector<int> next;
      for (size_t j = i + 1; j < cand.size(); ++j)
        if (intersect(roots[cand[i]], roots[cand[j]]).is_zero()) next.push_back(cand[j]);
      rec(next, size + 1);
    }
  };
  for (int s : starts) {
    std::vector<int> cand;
    for (int j = 0; j < static_cast<int>(roots.size()); ++j)
      if (j != s && intersect(roots[s], roots[j]).is_zero()) cand.push_back(j);
    rec(cand, 1);
  }
  return best;
}

// ---------------------------------------------------------------- fixtures

MatrixFixture load_matrix_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open fixture " + path);
  MatrixFixture fx;
  std::string line;
  while (std::getline(in, line) && (line.empty() || line[0] == '#')) {
  }
  std::istringstream head(line);
  std::string label;
  while (head >> label) fx.labels.push_back(label);
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::vector<long long> r;
    long long v;
    while (row >> v) r.push_back(v);
    fx.rows.push_back(r);
  }
  size_t n = fx.labels.size();
  if (fx.rows.size() != n) throw std::runtime_error("fixture row count mismatch in " + path);
  for (size_t i = 0; i < n; ++i) {
    if (fx.rows[i].size() != n) throw std::runtime_error("fixture column count mismatch in " + path);
    for (size_t j = 0; j < i; ++j)
      if (fx.rows[i][j] != fx.rows[j][i]) throw std::runtime_error("fixture not symmetric in " + path);
  }
  return fx;
}

std::vector<std::vector<long long>> intersection_matrix(const SurfaceModel& model, const std::vector<std::string>& labels) {
  std::vector<std::vector<long long>> m(labels.size(), std::vector<long long>(labels.size()));
  for (size_t i = 0; i < labels.size(); ++i)
    for (size_t j = 0; j < labels.size(); ++j)
      m[i][j] = intersect_int(model.curve(labels[i]).cls, model.curve(labels[j]).cls);
  return m;
}

}  // namespace dvdp
