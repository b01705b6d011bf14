#include "dvdp/projgeom.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace dvdp {

// ---------------------------------------------------------------- ProjPoint

ProjPoint::ProjPoint(std::vector<FieldElem> coords) : c_(std::move(coords)) {
  if (c_.empty()) throw std::invalid_argument("empty point");
  auto it = std::find_if(c_.begin(), c_.end(), [](const FieldElem& e) { return !e.is_zero(); });
  if (it == c_.end()) throw std::invalid_argument("zero vector is not a projective point");
  FieldElem s = it->inverse();
  for (auto& e : c_) e = e * s;
}

ProjPoint ProjPoint::from_codes(const FieldDesc& f, const std::vector<int>& codes) {
  std::vector<FieldElem> v;
  for (int c : codes) v.push_back(FieldElem::from_code(f, c));
  return ProjPoint(std::move(v));
}

std::vector<int> ProjPoint::codes() const {
  std::vector<int> out;
  for (auto& e : c_) out.push_back(e.code());
  return out;
}

ProjPoint ProjPoint::base_change(const FieldDesc& to) const {
  if (&field() == &to) return *this;
  const auto& emb = embedding(field(), to);
  std::vector<int> c;
  for (auto& e : c_) c.push_back(emb[e.code()]);
  return from_codes(to, c);
}

bool ProjPoint::operator<(const ProjPoint& o) const {
  return std::lexicographical_compare(c_.begin(), c_.end(), o.c_.begin(), o.c_.end());
}

std::string ProjPoint::str() const {
  std::string s = "[";
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) s += ":";
    s += c_[i].str();
  }
  return s + "]";
}

// ---------------------------------------------------------------- ProjTransform

ProjTransform::ProjTransform(int size, std::vector<FieldElem> entries, bool projective)
    : n_(size), m_(std::move(entries)), proj_(projective) {
  if (static_cast<int>(m_.size()) != n_ * n_) throw std::invalid_argument("matrix size mismatch");
  if (det().is_zero()) throw std::invalid_argument("singular matrix");
  if (proj_) {
    auto it = std::find_if(m_.begin(), m_.end(), [](const FieldElem& e) { return !e.is_zero(); });
    FieldElem s = it->inverse();
    for (auto& e : m_) e = e * s;
  }
}

FieldElem ProjTransform::det() const {
  std::vector<FieldElem> a = m_;
  FieldElem d = FieldElem::one(m_.front().field());
  for (int c = 0; c < n_; ++c) {
    int piv = -1;
    for (int r = c; r < n_; ++r)
      if (!a[r * n_ + c].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) return FieldElem::zero(d.field());
    if (piv != c) {
      for (int k = 0; k < n_; ++k) std::swap(a[piv * n_ + k], a[c * n_ + k]);
      d = -d;
    }
    d = d * a[c * n_ + c];
    FieldElem inv = a[c * n_ + c].inverse();
    for (int r = c + 1; r < n_; ++r) {
      FieldElem f = a[r * n_ + c] * inv;
      if (f.is_zero()) continue;
      for (int k = c; k < n_; ++k) a[r * n_ + k] = a[r * n_ + k] - f * a[c * n_ + k];
    }
  }
  return d;
}

ProjTransform ProjTransform::compose(const ProjTransform& rhs) const {
  std::vector<FieldElem> out;
  out.reserve(m_.size());
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c < n_; ++c) {
      FieldElem acc = FieldElem::zero(m_.front().field());
      for (int k = 0; k < n_; ++k) acc = acc + at(r, k) * rhs.at(k, c);
      out.push_back(acc);
    }
  return ProjTransform(n_, std::move(out), proj_);
}

ProjTransform ProjTransform::inverse() const {
  const FieldDesc& f = m_.front().field();
  std::vector<FieldElem> a = m_, inv;
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c < n_; ++c) inv.push_back(r == c ? FieldElem::one(f) : FieldElem::zero(f));
  for (int c = 0; c < n_; ++c) {
    int piv = c;
    while (a[piv * n_ + c].is_zero()) ++piv;
    for (int k = 0; k < n_; ++k) {
      std::swap(a[piv * n_ + k], a[c * n_ + k]);
      std::swap(inv[piv * n_ + k], inv[c * n_ + k]);
    }
    FieldElem s = a[c * n_ + c].inverse();
    for (int k = 0; k < n_; ++k) {
      a[c * n_ + k] = a[c * n_ + k] * s;
      inv[c * n_ + k] = inv[c * n_ + k] * s;
    }
    for (int r = 0; r < n_; ++r) {
      if (r == c || a[r * n_ + c].is_zero()) continue;
      FieldElem fct = a[r * n_ + c];
      for (int k = 0; k < n_; ++k) {
        a[r * n_ + k] = a[r * n_ + k] - fct * a[c * n_ + k];
        inv[r * n_ + k] = inv[r * n_ + k] - fct * inv[c * n_ + k];
      }
    }
  }
  return ProjTransform(n_, std::move(inv), proj_);
}

bool ProjTransform::is_identity() const {
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c < n_; ++c) {
      const FieldElem& e = at(r, c);
      if (r == c ? !e.is_one() : !e.is_zero()) return false;
    }
  return true;
}

ProjPoint ProjTransform::apply(const ProjPoint& pt) const {
  if (pt.dim() + 1 != n_) throw std::invalid_argument("dimension mismatch in action");
  const FieldDesc& pf = pt.field();
  const FieldDesc& mf = m_.front().field();
  std::vector<FieldElem> entries;
  if (&pf == &mf) {
    entries = m_;
  } else {
    const auto& emb = embedding(mf, pf);
    for (auto& e : m_) entries.push_back(FieldElem::from_code(pf, emb[e.code()]));
  }
  std::vector<FieldElem> out;
  for (int r = 0; r < n_; ++r) {
    FieldElem acc = FieldElem::zero(pf);
    for (int c = 0; c < n_; ++c) acc = acc + entries[static_cast<size_t>(r) * n_ + c] * pt.coords()[c];
    out.push_back(acc);
  }
  return ProjPoint(std::move(out));
}

bool ProjTransform::operator<(const ProjTransform& o) const {
  return std::lexicographical_compare(m_.begin(), m_.end(), o.m_.begin(), o.m_.end());
}

std::string ProjTransform::str() const {
  std::string s = "[";
  for (int r = 0; r < n_; ++r) {
    if (r) s += ";";
    for (int c = 0; c < n_; ++c) {
      if (c) s += ",";
      s += at(r, c).str();
    }
  }
  return s + "]";
}

// ---------------------------------------------------------------- FiniteGroup

FiniteGroup::FiniteGroup(std::vector<ProjTransform> elements) : elems_(std::move(elements)) {
  std::sort(elems_.begin(), elems_.end());
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

bool FiniteGroup::contains(const ProjTransform& g) const {
  return std::binary_search(elems_.begin(), elems_.end(), g);
}

void FiniteGroup::check_closed() const {
  if (elems_.empty()) throw std::logic_error("empty group");
  bool has_id = std::any_of(elems_.begin(), elems_.end(), [](const ProjTransform& g) { return g.is_identity(); });
  if (!has_id) throw std::logic_error("group lacks identity");
  for (auto& a : elems_) {
    if (!contains(a.inverse())) throw std::logic_error("group not closed under inverse");
    for (auto& b : elems_)
      if (!contains(a.compose(b))) throw std::logic_error("group not closed under composition");
  }
}

int FiniteGroup::element_order(const ProjTransform& g) {
  ProjTransform x = g;
  int k = 1;
  while (!x.is_identity()) {
    x = x.compose(g);
    ++k;
    if (k > 100000) throw std::logic_error("element order too large");
  }
  return k;
}

GroupInvariants FiniteGroup::invariants() const {
  GroupInvariants inv;
  inv.order = static_cast<long long>(elems_.size());
  for (auto& g : elems_) inv.element_order_histogram[element_order(g)]++;
  inv.abelian = true;
  for (size_t i = 0; i < elems_.size() && inv.abelian; ++i)
    for (size_t j = i + 1; j < elems_.size(); ++j)
      if (!(elems_[i].compose(elems_[j]) == elems_[j].compose(elems_[i]))) {
        inv.abelian = false;
        break;
      }
  return inv;
}

// ---------------------------------------------------------------- enumeration

std::vector<ProjPoint> enumerate_points(int n, const FieldDesc& field) {
  if (!field.is_finite()) throw std::invalid_argument("point enumeration needs a finite field");
  if (n < 1 || n > 2) throw std::invalid_argument("only P^1 and P^2 are supported");
  std::vector<ProjPoint> pts;
  int q = field.size();
  // Leading 1 at position `lead`, zeros before, free after.
  for (int lead = 0; lead <= n; ++lead) {
    int free = n - lead;
    long long count = 1;
    for (int i = 0; i < free; ++i) count *= q;
    for (long long idx = 0; idx < count; ++idx) {
      std::vector<int> c(n + 1, 0);
      c[lead] = 1;
      long long x = idx;
      for (int i = n; i > lead; --i) {
        c[i] = static_cast<int>(x % q);
        x /= q;
      }
      pts.push_back(ProjPoint::from_codes(field, c));
    }
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

bool in_dn(const ProjPoint& pt) {
  if (pt.field().characteristic() != 2) throw std::invalid_argument("D_n lives in characteristic 2");
  int n1 = pt.dim() + 1;
  const FieldDesc& f = pt.field();
  for (int mask = 1; mask < (1 << n1); ++mask) {
    int acc = 0;
    for (int i = 0; i < n1; ++i)
      if (mask >> i & 1) acc = f.add(acc, pt.coords()[i].code());
    if (acc == 0) return false;
  }
  return true;
}

std::vector<ProjPoint> dn_points(int n, const FieldDesc& field) {
  if (field.characteristic() != 2) throw std::invalid_argument("D_n lives in characteristic 2");
  std::vector<ProjPoint> out;
  for (auto& p : enumerate_points(n, field))
    if (in_dn(p)) out.push_back(p);
  return out;
}

FiniteGroup enumerate_pgl(int n_plus_1, const FieldDesc& subfield, bool linear) {
  if (n_plus_1 < 2 || n_plus_1 > 3 || subfield.degree() != 1 ||
      (subfield.characteristic() != 2 && subfield.characteristic() != 3))
    throw std::invalid_argument("enumerate_pgl supports sizes 2..3 over F_2 or F_3");
  int p = subfield.characteristic();
  int cells = n_plus_1 * n_plus_1;
  long long total = 1;
  for (int i = 0; i < cells; ++i) total *= p;
  std::vector<ProjTransform> elems;
  for (long long idx = 0; idx < total; ++idx) {
    std::vector<FieldElem> m;
    long long x = idx;
    for (int i = 0; i < cells; ++i) {
      m.push_back(FieldElem::from_code(subfield, static_cast<int>(x % p)));
      x /= p;
    }
    // canonical projective form: first nonzero entry is 1
    if (!linear) {
      auto it = std::find_if(m.begin(), m.end(), [](const FieldElem& e) { return !e.is_zero(); });
      if (it == m.end() || !it->is_one()) continue;
    }
    ProjTransform probe;
    try {
      probe = ProjTransform(n_plus_1, m, !linear);
    } catch (const std::invalid_argument&) {
      continue;
    }
    elems.push_back(probe);
  }
  return FiniteGroup(std::move(elems));
}

FiniteGroup trivial_group(int n_plus_1, const FieldDesc& subfield) {
  std::vector<FieldElem> m;
  for (int r = 0; r < n_plus_1; ++r)
    for (int c = 0; c < n_plus_1; ++c) m.push_back(FieldElem::from_int(subfield, r == c ? 1 : 0));
  return FiniteGroup({ProjTransform(n_plus_1, m)});
}

OrbitResult orbits(const FiniteGroup& group, const std::vector<ProjPoint>& points) {
  std::set<ProjPoint> pool(points.begin(), points.end());
  OrbitResult res;
  std::set<ProjPoint> seen;
  for (auto& p : points) {
    if (seen.count(p)) continue;
    std::vector<ProjPoint> orbit;
    std::set<ProjPoint> local;
    for (auto& g : group.elements()) {
      ProjPoint img = g.apply(p);
      if (!pool.count(img)) throw std::invalid_argument("point set not closed under the action: " + img.str());
      if (local.insert(img).second) orbit.push_back(img);
    }
    std::sort(orbit.begin(), orbit.end());
    for (auto& q : orbit) seen.insert(q);
    res.orbits.push_back(orbit);
  }
  long long fix_total = 0;
  for (auto& g : group.elements())
    for (auto& p : pool)
      if (g.apply(p) == p) ++fix_total;
  if (fix_total % static_cast<long long>(group.order()) != 0)
    throw std::logic_error("Burnside average is not an integer");
  res.burnside_count = fix_total / static_cast<long long>(group.order());
  if (res.burnside_count != static_cast<long long>(res.orbits.size()))
    throw std::logic_error("Burnside count disagrees with the orbit partition");
  return res;
}

FiniteGroup stabilizer(const FiniteGroup& group, const ProjPoint& point) {
  std::vector<ProjTransform> out;
  for (auto& g : group.elements())
    if (g.apply(point) == point) out.push_back(g);
  return FiniteGroup(std::move(out));
}

std::vector<ProjPoint> fixed_locus(const ProjTransform& g, const FieldDesc& field) {
  std::vector<ProjPoint> out;
  for (auto& p : enumerate_points(g.size() - 1, field))
    if (g.apply(p) == p) out.push_back(p);
  return out;
}

// ---------------------------------------------------------------- cross-ratio

ProjPoint affine_p1(const FieldElem& x) { return ProjPoint({x, FieldElem::one(x.field())}); }
ProjPoint infinity_p1(const FieldDesc& f) { return ProjPoint({FieldElem::one(f), FieldElem::zero(f)}); }

namespace {
// Bracket [p q] = p0 q1 - p1 q0 makes the cross-ratio projective-limit safe.
FieldElem bracket(const ProjPoint& p, const ProjPoint& q) {
  return p.coords()[0] * q.coords()[1] - p.coords()[1] * q.coords()[0];
}
}  // namespace

std::vector<FieldElem> cross_ratio_orbit(const std::vector<ProjPoint>& quad) {
  if (quad.size() != 4) throw std::invalid_argument("cross-ratio needs four points");
  for (auto& p : quad)
    if (p.dim() != 1) throw std::invalid_argument("cross-ratio needs points of P^1");
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (quad[i] == quad[j]) throw std::invalid_argument("repeated points in quadruple");
  const auto &a = quad[0], &b = quad[1], &c = quad[2], &d = quad[3];
  // ((a-c)(b-d))/((a-d)(b-c)) in homogeneous form
  FieldElem lam = (bracket(a, c) * bracket(b, d)) / (bracket(a, d) * bracket(b, c));
  FieldElem one = FieldElem::one(lam.field());
  std::vector<FieldElem> orbit = {lam, one - lam, one / lam, one / (one - lam), lam / (lam - one), (lam - one) / lam};
  std::sort(orbit.begin(), orbit.end());
  orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
  return orbit;
}

bool quadruples_projectively_equivalent(const std::vector<ProjPoint>& a, const std::vector<ProjPoint>& b) {
  auto oa = cross_ratio_orbit(a), ob = cross_ratio_orbit(b);
  for (auto& x : oa)
    if (std::find(ob.begin(), ob.end(), x) != ob.end()) return true;
  return false;
}

nlohmann::json to_json(const FiniteGroup& g) {
  nlohmann::json arr = nlohmann::json::array();
  for (auto& m : g.elements()) {
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < m.size(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (int c = 0; c < m.size(); ++c) row.push_back(m.at(r, c).str());
      rows.push_back(row);
    }
    arr.push_back(rows);
  }
  return arr;
}

}  // namespace dvdp
