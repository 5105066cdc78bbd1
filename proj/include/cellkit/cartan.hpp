#pragma once

#include <string>
#include <vector>

#include "cellkit/ring.hpp"

namespace cellkit {

using CartanMatrix = std::vector<std::vector<CycScalar>>;
// m_st with 0 standing for infinity.
using CoxeterMatrix = std::vector<std::vector<int>>;

struct TypeComponent {
  char type = 'U';  // A..I, or U for unrecognized / infinite
  std::vector<int> indices;
  int bond = 0;  // m for I2(m)
  int rank() const { return static_cast<int>(indices.size()); }
  std::string label() const;  // e.g. "F4", "I2(5)"
};
using TypeDecomposition = std::vector<TypeComponent>;

CartanMatrix cartanmat(const std::string& type, int rank, int bond = 0);
// Parses labels such as "A3", "F4", "I2(5)".
CartanMatrix cartanmat_from_label(const std::string& label);
// "H3xG2" style products: block-diagonal with consecutive indices.
CartanMatrix cartanmat_product(const std::vector<CartanMatrix>& blocks);

// Returns m with c_st c_ts = 4 cos^2(pi/m); throws if the product has no such form.
int bond_from_product(const CycScalar& p, int max_m = 64);
CoxeterMatrix coxeter_matrix(const CartanMatrix& c);
void validate_cartan(const CartanMatrix& c);

TypeDecomposition recognize(const CartanMatrix& c);
bool is_finite(const TypeDecomposition& t);
std::vector<int> degrees(const TypeDecomposition& t);
std::string cartanname(const TypeDecomposition& t);

CartanMatrix restrict_cartan(const CartanMatrix& c, const std::vector<int>& idx);

}  // namespace cellkit
