#pragma once
// Anticanonical fibration of a nine-point blow-up: reducible fibers,
// Kodaira labels, sections and Mordell-Weil counts.
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dvdp/cubics.hpp"
#include "dvdp/piclattice.hpp"

namespace dvdp {

struct FiberComponent {
  std::string label;
  DivisorClass cls;
  int multiplicity = 1;
};

struct FiberRecord {
  std::vector<FiberComponent> components;
  std::string kodaira_type;
  std::string dynkin;  // finite Dynkin type of the non-identity components
  std::optional<std::string> location;
  DivisorClass fiber_class() const;
  std::vector<std::string> labels() const;
  std::vector<int> multiplicities() const;
};

// Input to the Kodaira classifier.  contacts[i][j] lists the residual
// intersection points of components i and j (i < j).
struct FiberShape {
  std::vector<DivisorClass> classes;
  std::vector<int> multiplicities;
  std::vector<std::vector<std::vector<IncidencePoint>>> contacts;
};

std::string classify_kodaira(const FiberShape& shape);

// Residual intersection points of two labelled curves.
using IncidenceFn = std::function<std::vector<IncidencePoint>(const std::string&, const std::string&)>;

// Partition of the minus2 curves into fibers, multiplicities solved from
// sum m_i C_i = -K.  Throws "not a fiber configuration" when unsolvable.
std::vector<FiberRecord> fiber_decomposition(const SurfaceModel& z, const IncidenceFn& incidence);

struct SectionsResult {
  std::vector<CurveRecord> sections;
  long long mw_order = 0;
};
SectionsResult sections_and_mw(const SurfaceModel& z);

// |MW|^2 = product of the discriminants of the fiber root lattices when
// the Mordell-Weil rank is zero; returns the square root or -1.
long long mw_order_from_discriminants(const std::vector<FiberRecord>& fibers);
long long root_lattice_discriminant(const std::string& dynkin_component);

// 2 + sum over reducible fibers of (components - 1).
int shioda_tate_rank(const std::vector<FiberRecord>& fibers);

// Component label -> labels of sections meeting it (sorted by the
// section order of the model).
std::map<std::string, std::vector<std::string>> section_adjacency(const SurfaceModel& z,
                                                                  const std::vector<FiberRecord>& fibers);

}  // namespace dvdp
