#pragma once

#include <string>
#include <vector>

#include "cellkit/coxgroup.hpp"
#include "cellkit/ring.hpp"

namespace cellkit {

struct OrdinaryCharTable {
  long order = 0;
  std::vector<int> reps;      // minimal length class representatives (element indices)
  std::vector<long> sizes;
  std::vector<int> class_of;  // element -> class
  std::vector<std::string> labels;
  std::vector<std::vector<CycScalar>> values;  // [irreducible][class]
  std::vector<int> b;                          // lowest degree in the fake degree

  int nclasses() const { return static_cast<int>(reps.size()); }
  int nirr() const { return static_cast<int>(values.size()); }
  int dim(int i) const;
  int index_of(const std::string& label) const;  // -1 if absent
};

// Type A and B by Murnaghan-Nakayama, dihedral by closed formulas, other types by
// class multiplication eigenvectors; reducible groups as tensor products.
OrdinaryCharTable ordinary_chartable(const ElementTable& T);

CycScalar inner_product(const OrdinaryCharTable& ct, const std::vector<CycScalar>& f,
                        const std::vector<CycScalar>& g);
// Multiplicities <f, chi_i> of a class function given by its values per class.
std::vector<CycScalar> decompose(const OrdinaryCharTable& ct, const std::vector<CycScalar>& f);
// Row orthogonality and integrality of degrees.
bool chartable_verify(const OrdinaryCharTable& ct);

}  // namespace cellkit
