#include "dvdp/cubics.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace dvdp {

// ---------------------------------------------------------------- embedding

FieldElem embed(const FieldElem& e, const FieldDesc& to) {
  if (&e.field() == &to) return e;
  if (!e.field().is_finite()) {
    if (to.is_finite() || !e.im().is_zero()) throw std::invalid_argument("no field embedding");
    return FieldElem::from_rationals(to, e.re());
  }
  return FieldElem::from_code(to, embedding(e.field(), to)[e.code()]);
}

std::vector<FieldElem> embed_coeffs(const std::vector<FieldElem>& v, const FieldDesc& to) {
  std::vector<FieldElem> out;
  out.reserve(v.size());
  for (auto& e : v) out.push_back(embed(e, to));
  return out;
}

namespace {

// Element printed over the smallest subfield containing it.
std::string canonical_str(const FieldElem& x) {
  const FieldDesc& L = x.field();
  if (!L.is_finite()) return x.str();
  int p = L.characteristic();
  for (int d = 1; d <= L.degree(); ++d) {
    if (L.degree() % d != 0) continue;
    int y = x.code();
    for (int i = 0; i < d; ++i) y = L.pow(y, p);
    if (y != x.code()) continue;
    const FieldDesc& sub = make_field(p, d);
    const auto& table = embedding(sub, L);
    for (int c = 0; c < sub.size(); ++c)
      if (table[c] == x.code()) return d == 1 ? sub.elem_str(c) : sub.elem_str(c) + "@" + sub.name();
  }
  return x.str();
}

std::string point_id(const ProjPoint& p) {
  std::string s = "[";
  for (size_t i = 0; i < p.coords().size(); ++i) {
    if (i) s += ":";
    s += canonical_str(p.coords()[i]);
  }
  return s + "]";
}

}  // namespace

// ---------------------------------------------------------------- MPoly

MPoly MPoly::constant(const FieldElem& c, int nvars) {
  MPoly p(c.field(), nvars);
  p.add_term(std::vector<int>(nvars, 0), c);
  return p;
}

MPoly MPoly::variable(const FieldDesc& f, int nvars, int i) {
  MPoly p(f, nvars);
  std::vector<int> e(nvars, 0);
  e[i] = 1;
  p.add_term(e, FieldElem::one(f));
  return p;
}

void MPoly::add_term(const std::vector<int>& exps, const FieldElem& c) {
  if (c.is_zero()) return;
  auto it = t_.find(exps);
  if (it == t_.end()) {
    t_.emplace(exps, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) t_.erase(it);
}

FieldElem MPoly::coeff(const std::vector<int>& exps) const {
  auto it = t_.find(exps);
  return it == t_.end() ? FieldElem::zero(*f_) : it->second;
}

int MPoly::ord() const {
  int best = -1;
  for (auto& [e, c] : t_) {
    int d = 0;
    for (int x : e) d += x;
    if (best < 0 || d < best) best = d;
  }
  return best;
}

int MPoly::total_degree() const {
  int best = -1;
  for (auto& [e, c] : t_) {
    int d = 0;
    for (int x : e) d += x;
    best = std::max(best, d);
  }
  return best;
}

MPoly MPoly::homogeneous_part(int d) const {
  MPoly out(*f_, n_);
  for (auto& [e, c] : t_) {
    int s = 0;
    for (int x : e) s += x;
    if (s == d) out.t_.emplace(e, c);
  }
  return out;
}

MPoly MPoly::base_change(const FieldDesc& to) const {
  MPoly out(to, n_);
  for (auto& [e, c] : t_) out.t_.emplace(e, embed(c, to));
  return out;
}

MPoly MPoly::operator+(const MPoly& o) const {
  if (f_ != o.f_ || n_ != o.n_) throw std::invalid_argument("MPoly mismatch");
  MPoly r = *this;
  for (auto& [e, c] : o.t_) r.add_term(e, c);
  return r;
}

MPoly MPoly::operator-(const MPoly& o) const {
  if (f_ != o.f_ || n_ != o.n_) throw std::invalid_argument("MPoly mismatch");
  MPoly r = *this;
  for (auto& [e, c] : o.t_) r.add_term(e, -c);
  return r;
}

MPoly MPoly::operator*(const MPoly& o) const {
  if (f_ != o.f_ || n_ != o.n_) throw std::invalid_argument("MPoly mismatch");
  MPoly r(*f_, n_);
  std::vector<int> e(n_);
  for (auto& [ea, ca] : t_)
    for (auto& [eb, cb] : o.t_) {
      for (int i = 0; i < n_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

MPoly MPoly::scaled(const FieldElem& c) const {
  MPoly r(*f_, n_);
  if (c.is_zero()) return r;
  for (auto& [e, x] : t_) r.t_.emplace(e, x * c);
  return r;
}

MPoly MPoly::pow(int e) const {
  MPoly r = constant(FieldElem::one(*f_), n_);
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

namespace {

std::string mpoly_str(const MPoly& p, const std::vector<std::string>& names) {
  if (p.is_zero()) return "0";
  std::string out;
  // highest terms first
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    std::string mono;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      mono += names[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    std::string cs = canonical_str(c);
    if (!out.empty()) out += "+";
    if (mono.empty()) out += cs;
    else if (c.is_one()) out += mono;
    else out += "(" + cs + ")" + mono;
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- monomials

std::vector<Monomial> monomials(int degree) {
  std::vector<Monomial> out;
  for (int a = degree; a >= 0; --a)
    for (int b = degree - a; b >= 0; --b) out.push_back({a, b, degree - a - b});
  return out;
}

std::string monomial_str(const Monomial& m) {
  static const char* names[3] = {"x", "y", "z"};
  std::string s;
  for (int i = 0; i < 3; ++i) {
    if (m[i] == 0) continue;
    s += names[i];
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

// ---------------------------------------------------------------- PlaneCurve

PlaneCurve::PlaneCurve(const FieldDesc& f, int degree, std::vector<FieldElem> coeffs)
    : f_(&f), d_(degree), c_(std::move(coeffs)) {
  if (c_.size() != monomials(degree).size()) throw std::invalid_argument("coefficient count mismatch");
  for (auto& c : c_)
    if (c.field_ptr() != f_) throw std::invalid_argument("mismatched fields");
  for (auto& c : c_)
    if (!c.is_zero()) {
      FieldElem inv = c.inverse();
      for (auto& x : c_) x = x * inv;
      break;
    }
}

bool PlaneCurve::is_zero_form() const {
  return std::all_of(c_.begin(), c_.end(), [](const FieldElem& c) { return c.is_zero(); });
}

PlaneCurve PlaneCurve::parse(const std::string& text, const FieldDesc& f) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '*') s += c;
  if (s.empty()) throw std::invalid_argument("empty curve");
  std::vector<std::pair<Monomial, FieldElem>> terms;
  size_t pos = 0;
  while (pos < s.size()) {
    FieldElem sign = FieldElem::one(f);
    if (s[pos] == '+' || s[pos] == '-') {
      if (s[pos] == '-') sign = -sign;
      ++pos;
    }
    FieldElem coef = FieldElem::one(f);
    if (pos < s.size() && s[pos] == '(') {
      size_t close = s.find(')', pos);
      if (close == std::string::npos) throw std::invalid_argument("unbalanced parenthesis in " + text);
      std::string inner = s.substr(pos + 1, close - pos - 1);
      coef = f.is_finite() ? FieldElem::from_code(f, f.parse_elem(inner))
                           : FieldElem::from_rationals(f, Rational::parse(inner));
      pos = close + 1;
    } else if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      size_t end = pos;
      while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) ++end;
      coef = FieldElem::from_int(f, std::stoll(s.substr(pos, end - pos)));
      pos = end;
    }
    Monomial m = {0, 0, 0};
    while (pos < s.size() && (s[pos] == 'x' || s[pos] == 'y' || s[pos] == 'z')) {
      int v = s[pos] - 'x';
      ++pos;
      int e = 1;
      if (pos < s.size() && s[pos] == '^') {
        size_t end = pos + 1;
        while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) ++end;
        e = std::stoi(s.substr(pos + 1, end - pos - 1));
        pos = end;
      }
      m[v] += e;
    }
    if (pos < s.size() && s[pos] != '+' && s[pos] != '-') throw std::invalid_argument("cannot parse curve " + text);
    terms.emplace_back(m, sign * coef);
  }
  int deg = terms.front().first[0] + terms.front().first[1] + terms.front().first[2];
  auto mons = monomials(deg);
  std::vector<FieldElem> c(mons.size(), FieldElem::zero(f));
  for (auto& [m, v] : terms) {
    auto it = std::find(mons.begin(), mons.end(), m);
    if (it == mons.end()) throw std::invalid_argument("curve is not homogeneous: " + text);
    c[it - mons.begin()] = c[it - mons.begin()] + v;
  }
  return PlaneCurve(f, deg, c);
}

PlaneCurve PlaneCurve::from_poly(const MPoly& p) {
  if (p.nvars() != 3 || p.is_zero()) throw std::invalid_argument("from_poly needs a nonzero ternary form");
  int deg = p.total_degree();
  if (p.ord() != deg) throw std::invalid_argument("from_poly needs a homogeneous form");
  auto mons = monomials(deg);
  std::vector<FieldElem> c;
  for (auto& m : mons) c.push_back(p.coeff(m));
  return PlaneCurve(p.field(), deg, c);
}

MPoly PlaneCurve::poly() const {
  MPoly p(*f_, 3);
  auto mons = monomials(d_);
  for (size_t i = 0; i < mons.size(); ++i) p.add_term(mons[i], c_[i]);
  return p;
}

FieldElem PlaneCurve::eval(const ProjPoint& pt) const {
  const FieldDesc& L = pt.field();
  auto mons = monomials(d_);
  FieldElem acc = FieldElem::zero(L);
  for (size_t i = 0; i < mons.size(); ++i) {
    if (c_[i].is_zero()) continue;
    FieldElem t = embed(c_[i], L);
    for (int v = 0; v < 3; ++v) t = t * pt.coords()[v].pow(mons[i][v]);
    acc = acc + t;
  }
  return acc;
}

PlaneCurve PlaneCurve::derivative(int var) const {
  if (d_ == 0) throw std::invalid_argument("derivative of a constant");
  auto mons = monomials(d_);
  auto lower = monomials(d_ - 1);
  std::vector<FieldElem> c(lower.size(), FieldElem::zero(*f_));
  for (size_t i = 0; i < mons.size(); ++i) {
    if (mons[i][var] == 0) continue;
    Monomial m = mons[i];
    m[var] -= 1;
    auto it = std::find(lower.begin(), lower.end(), m);
    c[it - lower.begin()] = c_[i] * FieldElem::from_int(*f_, mons[i][var]);
  }
  PlaneCurve out;
  out.f_ = f_;
  out.d_ = d_ - 1;
  out.c_ = c;  // unscaled: the zero form is allowed here
  return out;
}

PlaneCurve PlaneCurve::base_change(const FieldDesc& to) const {
  if (&to == f_) return *this;
  PlaneCurve out;
  out.f_ = &to;
  out.d_ = d_;
  out.c_ = embed_coeffs(c_, to);
  return out;
}

PlaneCurve PlaneCurve::transform(const ProjTransform& g) const {
  ProjTransform inv = g.inverse();
  std::vector<MPoly> sub;
  for (int r = 0; r < 3; ++r) {
    MPoly s(*f_, 3);
    for (int c = 0; c < 3; ++c) s = s + MPoly::variable(*f_, 3, c).scaled(embed(inv.at(r, c), *f_));
    sub.push_back(s);
  }
  MPoly out(*f_, 3);
  auto mons = monomials(d_);
  for (size_t i = 0; i < mons.size(); ++i) {
    if (c_[i].is_zero()) continue;
    MPoly t = MPoly::constant(c_[i], 3);
    for (int v = 0; v < 3; ++v) t = t * sub[v].pow(mons[i][v]);
    out = out + t;
  }
  return from_poly(out);
}

bool PlaneCurve::operator<(const PlaneCurve& o) const {
  if (d_ != o.d_) return d_ < o.d_;
  return std::lexicographical_compare(c_.begin(), c_.end(), o.c_.begin(), o.c_.end());
}

std::string PlaneCurve::str() const {
  return mpoly_str(poly(), {"x", "y", "z"});
}

nlohmann::json PlaneCurve::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  auto mons = monomials(d_);
  for (size_t i = 0; i < mons.size(); ++i)
    if (!c_[i].is_zero()) j[monomial_str(mons[i])] = canonical_str(c_[i]);
  return j;
}

// ---------------------------------------------------------------- local germs

LocalChart chart_at(const ProjPoint& p) {
  LocalChart ch;
  for (int i = 0; i < 3; ++i)
    if (!p.coords()[i].is_zero()) {
      ch.chart = i;
      break;
    }
  std::vector<int> rest;
  for (int i = 0; i < 3; ++i)
    if (i != ch.chart) rest.push_back(i);
  ch.a = rest[0];
  ch.b = rest[1];
  return ch;
}

MPoly local_germ(const PlaneCurve& c, const ProjPoint& p) {
  const FieldDesc& L = p.field();
  LocalChart ch = chart_at(p);
  std::vector<MPoly> sub(3, MPoly(L, 2));
  sub[ch.chart] = MPoly::constant(FieldElem::one(L), 2);
  sub[ch.a] = MPoly::variable(L, 2, 0) + MPoly::constant(p.coords()[ch.a], 2);
  sub[ch.b] = MPoly::variable(L, 2, 1) + MPoly::constant(p.coords()[ch.b], 2);
  MPoly out(L, 2);
  auto mons = monomials(c.degree());
  for (size_t i = 0; i < mons.size(); ++i) {
    if (c.coeffs()[i].is_zero()) continue;
    MPoly t = MPoly::constant(embed(c.coeffs()[i], L), 2);
    for (int v = 0; v < 3; ++v) t = t * sub[v].pow(mons[i][v]);
    out = out + t;
  }
  return out;
}

namespace {

using Series = std::vector<FieldElem>;

Series series_mul(const Series& a, const Series& b, int order) {
  const FieldDesc& f = a.front().field();
  Series r(order + 1, FieldElem::zero(f));
  for (int i = 0; i <= order && i < static_cast<int>(a.size()); ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; i + j <= order && j < static_cast<int>(b.size()); ++j) r[i + j] = r[i + j] + a[i] * b[j];
  }
  return r;
}

// f(u(t), v(t)) truncated at t^order.
Series compose(const MPoly& f, const Series& u, const Series& v, int order) {
  const FieldDesc& L = f.field();
  Series r(order + 1, FieldElem::zero(L));
  std::map<int, Series> upow, vpow;
  auto powr = [&](std::map<int, Series>& cache, const Series& s, int e) -> const Series& {
    auto it = cache.find(e);
    if (it != cache.end()) return it->second;
    Series acc(order + 1, FieldElem::zero(L));
    acc[0] = FieldElem::one(L);
    for (int i = 0; i < e; ++i) acc = series_mul(acc, s, order);
    return cache.emplace(e, acc).first->second;
  };
  for (auto& [e, c] : f.terms()) {
    Series t = series_mul(powr(upow, u, e[0]), powr(vpow, v, e[1]), order);
    for (int i = 0; i <= order; ++i) r[i] = r[i] + c * t[i];
  }
  return r;
}

}  // namespace

BranchSeries branch_parametrize(const PlaneCurve& curve, const ProjPoint& point, int order) {
  MPoly g = local_germ(curve, point);
  const FieldDesc& L = point.field();
  if (!g.coeff({0, 0}).is_zero()) throw std::invalid_argument("point " + point.str() + " is not on " + curve.str());
  FieldElem gu = g.coeff({1, 0}), gv = g.coeff({0, 1});
  if (gu.is_zero() && gv.is_zero())
    throw std::invalid_argument("curve " + curve.str() + " has no smooth branch at " + point.str());
  BranchSeries bs;
  bs.point = point;
  bs.chart = chart_at(point);
  Series t(order + 1, FieldElem::zero(L));
  if (order >= 1) t[1] = FieldElem::one(L);
  Series phi(order + 1, FieldElem::zero(L));
  bool graph_over_u = !gv.is_zero();
  FieldElem lin = graph_over_u ? gv : gu;
  for (int k = 1; k <= order; ++k) {
    Series val = graph_over_u ? compose(g, t, phi, k) : compose(g, phi, t, k);
    phi[k] = -val[k] / lin;
  }
  bs.u = graph_over_u ? t : phi;
  bs.v = graph_over_u ? phi : t;
  return bs;
}

namespace {

int series_ord(const Series& s) {
  for (size_t i = 0; i < s.size(); ++i)
    if (!s[i].is_zero()) return static_cast<int>(i);
  return static_cast<int>(s.size());
}

}  // namespace

int contact_order(const PlaneCurve& c, const BranchSeries& s) {
  int order = static_cast<int>(s.u.size()) - 1;
  return series_ord(compose(local_germ(c.base_change(s.point.field()), s.point), s.u, s.v, order));
}

// ---------------------------------------------------------------- linear systems

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(std::vector<std::vector<FieldElem>>& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  size_t cols = m[0].size();
  size_t row = 0;
  for (size_t c = 0; c < cols && row < m.size(); ++c) {
    size_t piv = row;
    while (piv < m.size() && m[piv][c].is_zero()) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[row]);
    FieldElem inv = m[row][c].inverse();
    for (auto& x : m[row]) x = x * inv;
    for (size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][c].is_zero()) continue;
      FieldElem f = m[r][c];
      for (size_t k = 0; k < cols; ++k) m[r][k] = m[r][k] - f * m[row][k];
    }
    pivots.push_back(static_cast<int>(c));
    ++row;
  }
  m.resize(row);
  return pivots;
}

std::vector<std::vector<FieldElem>> kernel(std::vector<std::vector<FieldElem>> a, size_t cols, const FieldDesc& f) {
  auto pivots = rref(a);
  std::vector<bool> is_pivot(cols, false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<std::vector<FieldElem>> basis;
  for (size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<FieldElem> v(cols, FieldElem::zero(f));
    v[free] = FieldElem::one(f);
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][free];
    basis.push_back(v);
  }
  rref(basis);
  return basis;
}

std::vector<std::vector<FieldElem>> condition_rows(const BaseCondition& cond, int degree, const FieldDesc& field) {
  ProjPoint p = cond.point.base_change(field);
  auto mons = monomials(degree);
  std::vector<std::vector<FieldElem>> rows;
  int m = cond.multiplicity;
  if (cond.branch) {
    BranchSeries s = branch_parametrize(cond.branch->base_change(field), p, std::max(m - 1, 1));
    std::vector<Series> cols;
    for (auto& mono : mons) {
      MPoly mp(field, 3);
      mp.add_term(mono, FieldElem::one(field));
      MPoly germ = local_germ(PlaneCurve::from_poly(mp), p);
      cols.push_back(compose(germ, s.u, s.v, m - 1));
    }
    for (int k = 0; k < m; ++k) {
      std::vector<FieldElem> row;
      for (auto& col : cols) row.push_back(col[k]);
      rows.push_back(row);
    }
  } else {
    std::vector<MPoly> germs;
    for (auto& mono : mons) {
      MPoly mp(field, 3);
      mp.add_term(mono, FieldElem::one(field));
      germs.push_back(local_germ(PlaneCurve::from_poly(mp), p));
    }
    for (int total = 0; total < m; ++total)
      for (int i = 0; i <= total; ++i) {
        std::vector<FieldElem> row;
        for (auto& g : germs) row.push_back(g.coeff({i, total - i}));
        rows.push_back(row);
      }
  }
  return rows;
}

}  // namespace

bool satisfies(const PlaneCurve& c, const BaseCondition& cond) {
  const FieldDesc& L = cond.point.field().degree() >= c.field().degree() ? cond.point.field() : c.field();
  ProjPoint p = cond.point.base_change(L);
  PlaneCurve cc = c.base_change(L);
  if (cond.branch) {
    BranchSeries s = branch_parametrize(cond.branch->base_change(L), p, cond.multiplicity);
    return contact_order(cc, s) >= cond.multiplicity;
  }
  int o = local_germ(cc, p).ord();
  return o < 0 || o >= cond.multiplicity;
}

LinearSystem linear_system(const std::vector<BaseCondition>& conditions, int degree, const FieldDesc& field) {
  if (degree < 1 || degree > 3) throw std::invalid_argument("linear systems support degree 1..3");
  auto mons = monomials(degree);
  std::vector<std::vector<FieldElem>> rows;
  for (auto& c : conditions)
    for (auto& r : condition_rows(c, degree, field)) rows.push_back(r);
  LinearSystem ls;
  ls.field = &field;
  ls.degree = degree;
  ls.conditions = conditions;
  for (auto& v : kernel(rows, mons.size(), field)) ls.basis.emplace_back(field, degree, v);
  for (auto& b : ls.basis)
    for (auto& c : conditions)
      if (!satisfies(b, c)) throw std::logic_error("kernel member violates a base condition");
  return ls;
}

PlaneCurve LinearSystem::member(const std::vector<FieldElem>& params) const {
  if (params.size() != basis.size()) throw std::invalid_argument("parameter count mismatch");
  const FieldDesc& L = params.front().field();
  std::vector<FieldElem> c(monomials(degree).size(), FieldElem::zero(L));
  for (size_t i = 0; i < basis.size(); ++i) {
    auto bc = embed_coeffs(basis[i].coeffs(), L);
    for (size_t k = 0; k < c.size(); ++k) c[k] = c[k] + params[i] * bc[k];
  }
  return PlaneCurve(L, degree, c);
}

// ---------------------------------------------------------------- singularities

namespace {

// Code-level evaluation of a ternary form over a finite field.
struct CodeForm {
  const FieldDesc* L;
  std::vector<int> c;
  std::vector<Monomial> mons;
  CodeForm(const PlaneCurve& curve, const FieldDesc& field) : L(&field), mons(monomials(curve.degree())) {
    for (auto& e : curve.coeffs()) c.push_back(embed(e, field).code());
  }
  int eval(const int* x) const {
    int pw[3][4];
    for (int v = 0; v < 3; ++v) {
      pw[v][0] = 1;
      for (int e = 1; e < 4; ++e) pw[v][e] = L->mul(pw[v][e - 1], x[v]);
    }
    int acc = 0;
    for (size_t i = 0; i < mons.size(); ++i) {
      if (c[i] == 0) continue;
      int t = L->mul(c[i], L->mul(pw[0][mons[i][0]], L->mul(pw[1][mons[i][1]], pw[2][mons[i][2]])));
      acc = L->add(acc, t);
    }
    return acc;
  }
};

template <typename Fn>
void for_each_point(const FieldDesc& L, Fn&& fn) {
  int q = L.size();
  int x[3];
  // [1:a:b], [0:1:b], [0:0:1]
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) {
      x[0] = 1, x[1] = a, x[2] = b;
      if (fn(x)) return;
    }
  for (int b = 0; b < q; ++b) {
    x[0] = 0, x[1] = 1, x[2] = b;
    if (fn(x)) return;
  }
  x[0] = 0, x[1] = 0, x[2] = 1;
  fn(x);
}

struct SingSearch {
  std::vector<CodeForm> forms;  // partials first, then the form itself
  SingSearch(const PlaneCurve& c, const FieldDesc& L) {
    for (int v = 0; v < 3; ++v) {
      PlaneCurve d = c.derivative(v);
      if (!d.is_zero_form()) forms.emplace_back(d, L);
    }
    forms.emplace_back(c, L);
  }
  bool singular(const int* x) const {
    for (auto& f : forms)
      if (f.eval(x) != 0) return false;
    return true;
  }
};

ProjPoint point_from_codes(const FieldDesc& L, const int* x) { return ProjPoint::from_codes(L, {x[0], x[1], x[2]}); }

}  // namespace

std::vector<ProjPoint> singular_points(const PlaneCurve& curve, const FieldDesc& field) {
  if (!field.is_finite()) throw std::invalid_argument("singular_points needs a finite field");
  SingSearch s(curve, field);
  std::vector<ProjPoint> out;
  for_each_point(field, [&](const int* x) {
    if (s.singular(x)) out.push_back(point_from_codes(field, x));
    return false;
  });
  return out;
}

std::optional<ProjPoint> first_singular_point(const PlaneCurve& curve, const FieldDesc& field) {
  SingSearch s(curve, field);
  std::optional<ProjPoint> out;
  for_each_point(field, [&](const int* x) {
    if (s.singular(x)) {
      out = point_from_codes(field, x);
      return true;
    }
    return false;
  });
  return out;
}

namespace {

// Substitute polynomial coordinates into a ternary form.
MPoly substitute(const PlaneCurve& c, const std::vector<MPoly>& pt) {
  const FieldDesc& L = pt[0].field();
  MPoly out(L, pt[0].nvars());
  auto mons = monomials(c.degree());
  for (size_t i = 0; i < mons.size(); ++i) {
    if (c.coeffs()[i].is_zero()) continue;
    MPoly t = MPoly::constant(embed(c.coeffs()[i], L), pt[0].nvars());
    for (int v = 0; v < 3; ++v) t = t * pt[v].pow(mons[i][v]);
    out = out + t;
  }
  return out;
}

// A singular point of the generic member sum mu_i^p F_i, verified symbolically.
bool verify_generic_point(const LinearSystem& sys, const std::vector<MPoly>& pt) {
  const FieldDesc& f = *sys.field;
  int p = f.characteristic();
  int nv = static_cast<int>(sys.basis.size());
  if (std::all_of(pt.begin(), pt.end(), [](const MPoly& m) { return m.is_zero(); })) return false;
  std::vector<std::function<PlaneCurve(const PlaneCurve&)>> ops = {
      [](const PlaneCurve& c) { return c; },
      [](const PlaneCurve& c) { return c.derivative(0); },
      [](const PlaneCurve& c) { return c.derivative(1); },
      [](const PlaneCurve& c) { return c.derivative(2); }};
  for (auto& op : ops) {
    MPoly total(f, nv);
    for (int i = 0; i < nv; ++i) {
      PlaneCurve d = op(sys.basis[i]);
      if (d.is_zero_form()) continue;
      total = total + MPoly::variable(f, nv, i).pow(p) * substitute(d, pt);
    }
    if (!total.is_zero()) return false;
  }
  return true;
}

std::string generic_point_str(const std::vector<MPoly>& pt) {
  std::vector<std::string> names;
  for (int i = 0; i < pt[0].nvars(); ++i) names.push_back("m" + std::to_string(i));
  std::string s = "[";
  for (int v = 0; v < 3; ++v) {
    if (v) s += ":";
    s += mpoly_str(pt[v], names);
  }
  return s + "]";
}

// Char 2: every partial of every basis member is a sum of squares, so each
// partial of the generic member is the square of a linear form whose
// coefficients are linear in mu.  The kernel of that 3x3 matrix is a cross
// product of two rows.
std::optional<std::vector<MPoly>> char2_candidate(const LinearSystem& sys) {
  const FieldDesc& f = *sys.field;
  if (f.characteristic() != 2 || sys.degree != 3) return std::nullopt;
  int nv = static_cast<int>(sys.basis.size());
  std::vector<std::vector<MPoly>> M(3, std::vector<MPoly>(3, MPoly(f, nv)));
  auto lower = monomials(2);
  for (int i = 0; i < nv; ++i)
    for (int v = 0; v < 3; ++v) {
      PlaneCurve d = sys.basis[i].derivative(v);
      for (size_t k = 0; k < lower.size(); ++k) {
        if (d.coeffs()[k].is_zero()) continue;
        int w = -1;
        for (int a = 0; a < 3; ++a)
          if (lower[k][a] == 2) w = a;
        if (w < 0) return std::nullopt;  // mixed monomial: not a square
        M[v][w] = M[v][w] + MPoly::variable(f, nv, i).scaled(pth_root(d.coeffs()[k]));
      }
    }
  for (auto [r1, r2] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
    std::vector<MPoly> c = {M[r1][1] * M[r2][2] - M[r1][2] * M[r2][1], M[r1][2] * M[r2][0] - M[r1][0] * M[r2][2],
                            M[r1][0] * M[r2][1] - M[r1][1] * M[r2][0]};
    if (std::any_of(c.begin(), c.end(), [](const MPoly& m) { return !m.is_zero(); })) return c;
  }
  return std::nullopt;
}

// Ansatz P(mu) = sum_i c_i mu_i v_i with v_i a singular point of the i-th
// basis member over the base field.
std::optional<std::vector<MPoly>> linear_ansatz(const LinearSystem& sys) {
  const FieldDesc& f = *sys.field;
  int nv = static_cast<int>(sys.basis.size());
  std::vector<std::vector<ProjPoint>> sing;
  long long combos = 1;
  for (auto& b : sys.basis) {
    sing.push_back(singular_points(b, f));
    if (sing.back().empty()) return std::nullopt;
    combos *= static_cast<long long>(sing.back().size()) * (f.size() - 1);
  }
  if (combos > 2000000) return std::nullopt;
  std::vector<int> idx(nv, 0), scale(nv, 1);
  std::function<std::optional<std::vector<MPoly>>(int)> rec = [&](int i) -> std::optional<std::vector<MPoly>> {
    if (i == nv) {
      std::vector<MPoly> pt(3, MPoly(f, nv));
      for (int k = 0; k < nv; ++k) {
        FieldElem c = FieldElem::from_code(f, scale[k]);
        for (int v = 0; v < 3; ++v)
          pt[v] = pt[v] + MPoly::variable(f, nv, k).scaled(c * sing[k][idx[k]].coords()[v]);
      }
      if (verify_generic_point(sys, pt)) return pt;
      return std::nullopt;
    }
    for (idx[i] = 0; idx[i] < static_cast<int>(sing[i].size()); ++idx[i])
      for (scale[i] = 1; scale[i] < (i == 0 ? 2 : f.size()); ++scale[i])
        if (auto r = rec(i + 1)) return r;
    return std::nullopt;
  };
  return rec(0);
}

}  // namespace

NBVerdict all_members_singular(const LinearSystem& system, int max_ext) {
  if (system.basis.empty()) throw std::invalid_argument("empty linear system");
  if (system.projective_dimension() > 2) throw std::invalid_argument("unsupported: projective dimension > 2");
  const FieldDesc& f = *system.field;
  if (!f.is_finite()) throw std::invalid_argument("NB sweep needs a finite field");
  int p = f.characteristic(), e = f.degree();
  int r = system.projective_dimension();
  std::vector<ProjPoint> base;
  for (auto& c : system.conditions) base.push_back(c.point);
  NBVerdict v;
  v.holds_over_tested_fields = true;
  long long base_only = 0;
  for (int k = 1; k <= max_ext; ++k) {
    if (e * k > 8 || (p == 5 && e * k > 3)) break;
    const FieldDesc& K = make_field(p, e * k);
    v.tested_fields.push_back(K.name());
    std::vector<std::vector<FieldElem>> params;
    if (r == 0) {
      params.push_back({FieldElem::one(K)});
    } else {
      for (auto& pt : enumerate_points(r, K)) params.push_back(pt.coords());
    }
    int recorded = 0;
    for (auto& prm : params) {
      PlaneCurve m = system.member(prm);
      ++v.members_tested;
      std::optional<ProjPoint> sp;
      bool off_base = false;
      for (int j = 1; j <= 2 && !sp; ++j) {
        if (e * k * j > 8 || (p == 5 && e * k * j > 3)) break;
        const FieldDesc& L = make_field(p, e * k * j);
        auto pts = singular_points(m, L);
        for (auto& s : pts) {
          bool on_base = false;
          for (auto& b : base)
            if (b.base_change(L) == s) on_base = true;
          if (!on_base) {
            sp = s;
            off_base = true;
            break;
          }
        }
        if (!sp && !pts.empty()) sp = pts.front();
      }
      if (!sp) {
        v.holds_over_tested_fields = false;
        if (v.failure.empty()) v.failure = m.str() + " over " + K.name();
        continue;
      }
      if (!off_base) ++base_only;
      if (recorded < 2 && off_base) {
        v.witnesses[m.str()] = point_id(*sp);
        ++recorded;
      }
    }
  }
  v.witnesses_off_base_locus = base_only < v.members_tested;
  if (v.holds_over_tested_fields) {
    std::optional<std::vector<MPoly>> cand = char2_candidate(system);
    if (cand && !verify_generic_point(system, *cand)) cand.reset();
    if (!cand) cand = linear_ansatz(system);
    if (cand) {
      v.certificate_found = true;
      v.certificate = generic_point_str(*cand);
    }
  }
  return v;
}

// ---------------------------------------------------------------- univariate helpers

namespace {

using UPoly = std::vector<FieldElem>;

void utrim(UPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

UPoly umod(UPoly a, const UPoly& b) {
  utrim(a);
  while (a.size() >= b.size() && !a.empty()) {
    FieldElem f = a.back() / b.back();
    size_t shift = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] = a[shift + i] - f * b[i];
    utrim(a);
  }
  return a;
}

}  // namespace

std::vector<FieldElem> upoly_gcd(std::vector<FieldElem> a, std::vector<FieldElem> b) {
  utrim(a);
  utrim(b);
  while (!b.empty()) {
    UPoly r = umod(a, b);
    a = b;
    b = r;
  }
  if (!a.empty()) {
    FieldElem inv = a.back().inverse();
    for (auto& c : a) c = c * inv;
  }
  return a;
}

const FieldDesc* splitting_field(const std::vector<FieldElem>& poly) {
  UPoly p = poly;
  utrim(p);
  if (p.size() <= 1) return &p.front().field();
  const FieldDesc& f = p.front().field();
  if (!f.is_finite()) return nullptr;
  for (int e = 1; f.degree() * e <= 8; ++e) {
    if (f.characteristic() == 5 && f.degree() * e > 3) break;
    const FieldDesc& L = make_field(f.characteristic(), f.degree() * e);
    if (poly_roots(embed_coeffs(p, L), L).size() + 1 == p.size()) return &L;
  }
  return nullptr;
}

// ---------------------------------------------------------------- blow-ups

MPoly blowup_germ(const MPoly& f, bool vertical, const FieldElem& s) { return blowup_germ_virtual(f, vertical, s, f.ord()); }

MPoly blowup_germ_virtual(const MPoly& f, bool vertical, const FieldElem& s, int m) {
  const FieldDesc& L = f.field();
  MPoly out(L, 2);
  if (f.is_zero()) return out;
  if (m < 0 || m > f.ord()) throw std::invalid_argument("virtual transform needs 0 <= m <= ord");
  if (vertical) {
    // u = W U, v = U
    for (auto& [e, c] : f.terms()) out.add_term({e[0] + e[1] - m, e[0]}, c);
    return out;
  }
  // u = U, v = U (W + s)
  FieldElem se = embed(s, L);
  for (auto& [e, c] : f.terms()) {
    int j = e[1];
    std::vector<FieldElem> row(1, FieldElem::one(L));  // binomial row j in the field
    for (int step = 0; step < j; ++step) {
      std::vector<FieldElem> next(row.size() + 1, FieldElem::zero(L));
      for (size_t k = 0; k < row.size(); ++k) {
        next[k] = next[k] + row[k];
        next[k + 1] = next[k + 1] + row[k];
      }
      row = next;
    }
    for (int k = 0; k <= j; ++k) out.add_term({e[0] + j - m, k}, c * row[k] * se.pow(j - k));
  }
  return out;
}

namespace {

struct Direction {
  bool vertical = false;
  FieldElem s;
  int mult = 0;
};

// Tangent-cone polynomial h(1, s) of a germ with ord m.
UPoly cone_poly(const MPoly& f, int m) {
  UPoly h(m + 1, FieldElem::zero(f.field()));
  for (int j = 0; j <= m; ++j) h[j] = f.coeff({m - j, j});
  return h;
}

std::string dir_str(const Direction& d) { return d.vertical ? "[0:1]" : "[1:" + canonical_str(d.s) + "]"; }

// Directions of the tangent cone; all are rational over the germ's field
// (callers extend first).
std::vector<Direction> cone_directions(const MPoly& f) {
  int m = f.ord();
  std::vector<Direction> out;
  if (m <= 0) return out;
  UPoly h = cone_poly(f, m);
  utrim(h);
  int deg = static_cast<int>(h.size()) - 1;
  if (deg < m) out.push_back({true, FieldElem::zero(f.field()), m - deg});
  if (deg >= 1) {
    auto roots = poly_roots(h, f.field());
    if (static_cast<int>(roots.size()) != deg) throw std::logic_error("tangent cone does not split");
    for (size_t i = 0; i < roots.size();) {
      size_t j = i;
      while (j < roots.size() && roots[j] == roots[i]) ++j;
      out.push_back({false, roots[i], static_cast<int>(j - i)});
      i = j;
    }
  }
  return out;
}

// Field over which the tangent cone of f splits.
const FieldDesc& cone_field(const MPoly& f) {
  int m = f.ord();
  if (m <= 0) return f.field();
  UPoly h = cone_poly(f, m);
  utrim(h);
  if (h.size() <= 1) return f.field();
  const FieldDesc* L = splitting_field(h);
  if (!L) throw std::runtime_error("intersection point beyond the supported extension degree");
  return *L;
}

// Common tangent directions of f and g; may require an extension field.
const FieldDesc& common_field(const MPoly& f, const MPoly& g) {
  int mf = f.ord(), mg = g.ord();
  UPoly hf = cone_poly(f, mf), hg = cone_poly(g, mg);
  utrim(hf);
  utrim(hg);
  if (hf.empty() || hg.empty()) return f.field();
  UPoly gg = upoly_gcd(hf, hg);
  if (gg.size() <= 1) return f.field();
  const FieldDesc* L = splitting_field(gg);
  if (!L) throw std::runtime_error("intersection point beyond the supported extension degree");
  return *L;
}

std::vector<Direction> common_directions(const MPoly& f, const MPoly& g) {
  int mf = f.ord(), mg = g.ord();
  std::vector<Direction> out;
  UPoly hf = cone_poly(f, mf), hg = cone_poly(g, mg);
  utrim(hf);
  utrim(hg);
  bool vf = static_cast<int>(hf.size()) - 1 < mf, vg = static_cast<int>(hg.size()) - 1 < mg;
  if (vf && vg) out.push_back({true, FieldElem::zero(f.field()), 0});
  UPoly gg = upoly_gcd(hf, hg);
  if (gg.size() > 1) {
    auto roots = poly_roots(gg, f.field());
    if (roots.size() + 1 != gg.size()) throw std::logic_error("common tangent directions do not split");
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    for (auto& r : roots) out.push_back({false, r, 0});
  }
  return out;
}

int local_intersection_rec(const MPoly& f0, const MPoly& g0, int depth) {
  if (depth > 64) throw std::runtime_error("curves share a component at a point");
  int mf = f0.ord(), mg = g0.ord();
  if (mf <= 0 || mg <= 0) return 0;
  const FieldDesc& L = common_field(f0, g0);
  MPoly f = f0.base_change(L), g = g0.base_change(L);
  int total = mf * mg;
  for (auto& d : common_directions(f, g))
    total += local_intersection_rec(blowup_germ(f, d.vertical, d.s), blowup_germ(g, d.vertical, d.s), depth + 1);
  return total;
}

}  // namespace

int local_intersection(const MPoly& f, const MPoly& g) { return local_intersection_rec(f, g, 0); }

int BlowupPlan::center_index(int root, int level) const {
  for (size_t i = 0; i < centers.size(); ++i)
    if (centers[i].first == root && centers[i].second == level) return static_cast<int>(i) + 1;
  return 0;
}

BlowupPlan BlowupPlan::sequential(const std::vector<BaseCondition>& roots) {
  BlowupPlan p;
  p.roots = roots;
  for (size_t r = 0; r < roots.size(); ++r)
    for (int j = 1; j <= roots[r].multiplicity; ++j) p.centers.emplace_back(static_cast<int>(r), j);
  return p;
}

BlowupEngine::BlowupEngine(BlowupPlan plan) : plan_(std::move(plan)) {
  for (size_t r = 0; r < plan_.roots.size(); ++r) {
    const auto& cond = plan_.roots[r];
    int depth = cond.multiplicity;
    std::vector<ChainLevel> chain;
    std::vector<int> idx;
    for (int j = 1; j <= depth; ++j) {
      int ci = plan_.center_index(static_cast<int>(r), j);
      if (!ci) throw std::invalid_argument("blow-up plan misses a center");
      idx.push_back(ci);
    }
    if (depth >= 2 && !cond.branch) throw std::invalid_argument("infinitely near centers need a branch curve");
    if (cond.branch) {
      MPoly b = local_germ(*cond.branch, cond.point);
      for (int j = 1; j <= depth; ++j) {
        if (b.ord() != 1) throw std::invalid_argument("branch curve is not smooth along the chain");
        ChainLevel lvl;
        lvl.branch = b;
        FieldElem bu = b.coeff({1, 0}), bv = b.coeff({0, 1});
        lvl.vertical = bv.is_zero();
        lvl.slope = lvl.vertical ? FieldElem::zero(b.field()) : -bu / bv;
        if (j >= 2 && lvl.vertical) throw std::logic_error("branch tangent to an exceptional curve");
        chain.push_back(lvl);
        b = blowup_germ(b, lvl.vertical, lvl.slope);
      }
    }
    chains_.push_back(chain);
    root_levels_.push_back(idx);
  }
  if (static_cast<int>(plan_.centers.size()) !=
      [&] {
        int s = 0;
        for (auto& r : plan_.roots) s += r.multiplicity;
        return s;
      }())
    throw std::invalid_argument("blow-up plan has extra centers");
}

std::vector<int> BlowupEngine::multiplicities(const PlaneCurve& c) const {
  std::vector<int> m(n(), 0);
  for (size_t r = 0; r < plan_.roots.size(); ++r) {
    const auto& cond = plan_.roots[r];
    const FieldDesc& L = cond.point.field().degree() >= c.field().degree() ? cond.point.field() : c.field();
    MPoly f = local_germ(c.base_change(L), cond.point.base_change(L));
    for (int j = 1; j <= cond.multiplicity; ++j) {
      int o = f.ord();
      if (o <= 0) break;
      m[root_levels_[r][j - 1] - 1] = o;
      if (j < cond.multiplicity) f = blowup_germ(f, chains_[r][j - 1].vertical, chains_[r][j - 1].slope);
    }
  }
  return m;
}

DivisorClass BlowupEngine::strict_transform_class(const PlaneCurve& c) const {
  auto m = multiplicities(c);
  std::vector<long long> mm(m.begin(), m.end());
  return DivisorClass(c.degree(), mm);
}

DivisorClass BlowupEngine::surface_class(const SurfaceCurve& c) const {
  if (!c.is_exceptional()) return strict_transform_class(*c.plane);
  int depth = plan_.roots.at(c.root).multiplicity;
  DivisorClass e = DivisorClass::E(n(), root_levels_[c.root][c.level - 1]);
  if (c.level < depth) e = e - DivisorClass::E(n(), root_levels_[c.root][c.level]);
  return e;
}

namespace {

std::string exc_id(int r, int j, const Direction& d) {
  return "E" + std::to_string(r) + "." + std::to_string(j) + dir_str(d);
}

bool same_direction(const Direction& a, bool vertical, const FieldElem& s) {
  if (a.vertical != vertical) return false;
  return vertical || a.s == embed(s, a.s.field());
}

}  // namespace

std::vector<IncidencePoint> BlowupEngine::incidence(const SurfaceCurve& a, const SurfaceCurve& b) const {
  std::vector<IncidencePoint> out;
  auto chain_dir = [&](int r, int j) { return std::make_pair(chains_[r][j - 1].vertical, chains_[r][j - 1].slope); };

  // Walk root r from level j0 with germs f, g (over a common field).
  std::function<void(int, int, MPoly, MPoly, int&)> walk = [&](int r, int j, MPoly f, MPoly g, int& full) {
    int depth = plan_.roots[r].multiplicity;
    for (; j <= depth; ++j) {
      int mf = f.ord(), mg = g.ord();
      if (mf <= 0 || mg <= 0) return;
      full += mf * mg;
      const FieldDesc& L = common_field(f, g);
      f = f.base_change(L);
      g = g.base_change(L);
      bool continues = false;
      for (auto& d : common_directions(f, g)) {
        if (j < depth) {
          auto [cv, cs] = chain_dir(r, j);
          if (same_direction(d, cv, cs)) {
            continues = true;
            continue;
          }
        }
        int mult = local_intersection(blowup_germ(f, d.vertical, d.s), blowup_germ(g, d.vertical, d.s));
        out.push_back({exc_id(r, j, d), mult});
      }
      if (!continues || j == depth) return;
      auto [cv, cs] = chain_dir(r, j);
      f = blowup_germ(f, cv, cs);
      g = blowup_germ(g, cv, cs);
    }
  };

  auto germ_at_level = [&](int r, int level, const PlaneCurve& c) {
    const auto& cond = plan_.roots[r];
    const FieldDesc& L = cond.point.field().degree() >= c.field().degree() ? cond.point.field() : c.field();
    MPoly f = local_germ(c.base_change(L), cond.point.base_change(L));
    for (int j = 1; j < level; ++j) {
      if (f.ord() <= 0) break;
      auto [cv, cs] = chain_dir(r, j);
      f = blowup_germ(f, cv, cs);
    }
    return f;
  };

  if (a.is_exceptional() && b.is_exceptional()) {
    if (a.root != b.root) return out;
    if (std::abs(a.level - b.level) == 1) {
      Direction d{true, FieldElem(), 0};
      out.push_back({exc_id(a.root, std::max(a.level, b.level), d), 1});
    } else if (a.level == b.level) {
      throw std::invalid_argument("incidence of a curve with itself");
    }
    return out;
  }
  if (a.is_exceptional() || b.is_exceptional()) {
    const SurfaceCurve& e = a.is_exceptional() ? a : b;
    const PlaneCurve& c = a.is_exceptional() ? *b.plane : *a.plane;
    int r = e.root, j = e.level, depth = plan_.roots[r].multiplicity;
    MPoly f = germ_at_level(r, j, c);
    if (f.ord() <= 0) return out;
    const FieldDesc& L = cone_field(f);
    MPoly fl = f.base_change(L);
    for (auto& d : cone_directions(fl)) {
      if (j < depth) {
        auto [cv, cs] = chain_dir(r, j);
        if (same_direction(d, cv, cs)) continue;
      }
      out.push_back({exc_id(r, j, d), d.mult});
    }
    if (j < depth) {
      // E_j passes through the next center with germ u; follow the contact.
      auto [cv, cs] = chain_dir(r, j);
      MPoly fn = blowup_germ(f, cv, cs);
      MPoly u = MPoly::variable(fn.field(), 2, 0);
      int full = 0;
      walk(r, j + 1, fn, u, full);
    }
    return out;
  }

  const PlaneCurve& ca = *a.plane;
  const PlaneCurve& cb = *b.plane;
  if (ca == cb) throw std::invalid_argument("incidence of a curve with itself");
  int need = ca.degree() * cb.degree();
  int root_full = 0;
  for (size_t r = 0; r < plan_.roots.size(); ++r) {
    MPoly f = germ_at_level(static_cast<int>(r), 1, ca), g = germ_at_level(static_cast<int>(r), 1, cb);
    if (&f.field() != &g.field()) {
      const FieldDesc& L = f.field().degree() >= g.field().degree() ? f.field() : g.field();
      f = f.base_change(L);
      g = g.base_change(L);
    }
    int full = 0;
    size_t before = out.size();
    walk(static_cast<int>(r), 1, f, g, full);
    for (size_t i = before; i < out.size(); ++i) full += out[i].multiplicity;
    root_full += full;
  }
  need -= root_full;
  if (need < 0) throw std::logic_error("root intersections exceed Bezout bound");
  if (need == 0) return out;

  const FieldDesc& base = ca.field().degree() >= cb.field().degree() ? ca.field() : cb.field();
  int p = base.characteristic(), k = base.degree();
  for (int e = 1; k * e <= 8; ++e) {
    const FieldDesc& L = make_field(p, k * e);
    std::vector<ProjPoint> roots;
    for (auto& rc : plan_.roots) roots.push_back(rc.point.base_change(L));
    CodeForm fa(ca, L), fb(cb, L);
    std::vector<IncidencePoint> found;
    int sum = 0;
    for_each_point(L, [&](const int* x) {
      if (fa.eval(x) != 0 || fb.eval(x) != 0) return false;
      ProjPoint pt = point_from_codes(L, x);
      if (std::find(roots.begin(), roots.end(), pt) != roots.end()) return false;
      int mult = local_intersection(local_germ(ca.base_change(L), pt), local_germ(cb.base_change(L), pt));
      found.push_back({point_id(pt), mult});
      sum += mult;
      return false;
    });
    if (sum == need) {
      out.insert(out.end(), found.begin(), found.end());
      return out;
    }
    if (sum > need) throw std::logic_error("proper intersections exceed Bezout bound");
  }
  throw std::runtime_error("intersection point beyond the supported extension degree");
}

int BlowupEngine::incidence_total(const SurfaceCurve& a, const SurfaceCurve& b) const {
  int s = 0;
  for (auto& p : incidence(a, b)) s += p.multiplicity;
  return s;
}

LinearSystem BlowupEngine::effective_system(const DivisorClass& cls, const FieldDesc& field) const {
  if (cls.n() != n()) throw std::invalid_argument("class lives on a different blow-up");
  if (!cls.is_integral() || cls.degree().num() < 1) throw std::invalid_argument("effective_system needs an integral class of degree >= 1");
  int d = static_cast<int>(cls.degree().num());
  auto mons = monomials(d);
  size_t N = mons.size();
  std::vector<std::vector<FieldElem>> basis;
  for (size_t i = 0; i < N; ++i) {
    std::vector<FieldElem> v(N, FieldElem::zero(field));
    v[i] = FieldElem::one(field);
    basis.push_back(v);
  }
  for (size_t r = 0; r < plan_.roots.size() && !basis.empty(); ++r) {
    const auto& cond = plan_.roots[r];
    int depth = cond.multiplicity;
    bool any = false;
    for (int j = 1; j <= depth; ++j) any = any || cls.mult(root_levels_[r][j - 1]).num() != 0;
    if (!any) continue;
    ProjPoint pt = cond.point.base_change(field);
    std::vector<MPoly> mg;
    for (size_t i = 0; i < N; ++i) {
      std::vector<FieldElem> e(N, FieldElem::zero(field));
      e[i] = FieldElem::one(field);
      mg.push_back(local_germ(PlaneCurve(field, d, e), pt));
    }
    // germs of the current basis members
    std::vector<MPoly> germs;
    for (auto& b : basis) {
      MPoly g(field, 2);
      for (size_t i = 0; i < N; ++i)
        if (!b[i].is_zero()) g = g + mg[i].scaled(b[i]);
      germs.push_back(g);
    }
    for (int j = 1; j <= depth && !basis.empty(); ++j) {
      long long m = cls.mult(root_levels_[r][j - 1]).num();
      if (m < 0) throw std::invalid_argument("negative multiplicity at a center");
      if (m > 0) {
        std::vector<std::vector<FieldElem>> rows;
        for (int a = 0; a < m; ++a)
          for (int b = 0; a + b < m; ++b) {
            std::vector<FieldElem> row;
            for (auto& g : germs) row.push_back(g.coeff({a, b}));
            rows.push_back(row);
          }
        auto ker = kernel(rows, germs.size(), field);
        std::vector<std::vector<FieldElem>> nb;
        std::vector<MPoly> ng;
        for (auto& kv : ker) {
          std::vector<FieldElem> v(N, FieldElem::zero(field));
          MPoly g(field, 2);
          for (size_t t = 0; t < kv.size(); ++t) {
            if (kv[t].is_zero()) continue;
            for (size_t i = 0; i < N; ++i) v[i] = v[i] + kv[t] * basis[t][i];
            g = g + germs[t].scaled(kv[t]);
          }
          nb.push_back(v);
          ng.push_back(g);
        }
        basis = nb;
        germs = ng;
      }
      if (j < depth) {
        const auto& lvl = chains_[r][j - 1];
        for (auto& g : germs) g = blowup_germ_virtual(g, lvl.vertical, lvl.slope, static_cast<int>(m));
      }
    }
  }
  LinearSystem sys;
  sys.field = &field;
  sys.degree = d;
  rref(basis);
  for (auto& b : basis) sys.basis.push_back(PlaneCurve(field, d, b));
  return sys;
}

std::vector<ProjPoint> common_points(const PlaneCurve& a, const PlaneCurve& b, const FieldDesc& field) {
  CodeForm fa(a, field), fb(b, field);
  std::vector<ProjPoint> out;
  for_each_point(field, [&](const int* x) {
    if (fa.eval(x) == 0 && fb.eval(x) == 0) out.push_back(point_from_codes(field, x));
    return false;
  });
  return out;
}

std::pair<int, int> BlowupEngine::center_position(int index) const {
  const auto& c = plan_.centers.at(index - 1);
  return {c.first, c.second};
}

}  // namespace dvdp
