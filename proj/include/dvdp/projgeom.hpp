#pragma once
// Points and projective transformations over small fields, the loci D_n,
// group actions with orbit/stabilizer bookkeeping, and cross-ratio orbits.

#include <map>
#include <string>
#include <vector>

#include "dvdp/exactfield.hpp"

namespace dvdp {

class ProjPoint {
 public:
  ProjPoint() = default;
  explicit ProjPoint(std::vector<FieldElem> coords);  // normalizes; throws on the zero vector
  static ProjPoint from_codes(const FieldDesc& f, const std::vector<int>& codes);

  const std::vector<FieldElem>& coords() const { return c_; }
  int dim() const { return static_cast<int>(c_.size()) - 1; }
  const FieldDesc& field() const { return c_.front().field(); }
  std::vector<int> codes() const;
  ProjPoint base_change(const FieldDesc& to) const;

  bool operator==(const ProjPoint& o) const { return c_ == o.c_; }
  bool operator!=(const ProjPoint& o) const { return !(c_ == o.c_); }
  bool operator<(const ProjPoint& o) const;
  std::string str() const;  // "[1:s:0]"

 private:
  std::vector<FieldElem> c_;  // first nonzero coordinate is 1
};

// Row-major (n+1)x(n+1) matrix acting on column vectors.
class ProjTransform {
 public:
  ProjTransform() = default;
  ProjTransform(int size, std::vector<FieldElem> entries, bool projective = true);

  int size() const { return n_; }
  const std::vector<FieldElem>& entries() const { return m_; }
  const FieldElem& at(int r, int c) const { return m_[static_cast<size_t>(r) * n_ + c]; }
  bool projective() const { return proj_; }
  FieldElem det() const;

  ProjTransform compose(const ProjTransform& rhs) const;  // this * rhs
  ProjTransform inverse() const;
  bool is_identity() const;
  ProjPoint apply(const ProjPoint& pt) const;  // prime-field entries act on extension points

  bool operator==(const ProjTransform& o) const { return m_ == o.m_; }
  bool operator<(const ProjTransform& o) const;
  std::string str() const;

 private:
  int n_ = 0;
  std::vector<FieldElem> m_;
  bool proj_ = true;  // projective forms are scaled so the first nonzero entry is 1
};

struct GroupInvariants {
  long long order = 0;
  std::map<int, int> element_order_histogram;
  bool abelian = false;
  bool operator==(const GroupInvariants& o) const {
    return order == o.order && element_order_histogram == o.element_order_histogram && abelian == o.abelian;
  }
};

class FiniteGroup {
 public:
  FiniteGroup() = default;
  explicit FiniteGroup(std::vector<ProjTransform> elements);  // sorted, duplicate-free

  const std::vector<ProjTransform>& elements() const { return elems_; }
  size_t order() const { return elems_.size(); }
  bool contains(const ProjTransform& g) const;
  void check_closed() const;  // throws if not a group
  static int element_order(const ProjTransform& g);
  GroupInvariants invariants() const;

 private:
  std::vector<ProjTransform> elems_;
};

std::vector<ProjPoint> enumerate_points(int n, const FieldDesc& field);
// Points of P^n over `field` lying on no hyperplane defined over F_2.
std::vector<ProjPoint> dn_points(int n, const FieldDesc& field);
bool in_dn(const ProjPoint& pt);

// PGL(n+1, F_p); with linear=true, GL(n+1, F_p) instead.
FiniteGroup enumerate_pgl(int n_plus_1, const FieldDesc& subfield, bool linear = false);
FiniteGroup trivial_group(int n_plus_1, const FieldDesc& subfield);

struct OrbitResult {
  std::vector<std::vector<ProjPoint>> orbits;
  long long burnside_count = 0;
};
OrbitResult orbits(const FiniteGroup& group, const std::vector<ProjPoint>& points);
FiniteGroup stabilizer(const FiniteGroup& group, const ProjPoint& point);
std::vector<ProjPoint> fixed_locus(const ProjTransform& g, const FieldDesc& field);

// Cross-ratio orbit of four distinct points of P^1; infinity is [1:0].
std::vector<FieldElem> cross_ratio_orbit(const std::vector<ProjPoint>& quad);
bool quadruples_projectively_equivalent(const std::vector<ProjPoint>& a, const std::vector<ProjPoint>& b);
ProjPoint affine_p1(const FieldElem& x);  // x -> [x:1]
ProjPoint infinity_p1(const FieldDesc& f);

nlohmann::json to_json(const FiniteGroup& g);

}  // namespace dvdp
