#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cellkit/chartable.hpp"
#include "cellkit/coxgroup.hpp"
#include "cellkit/relcells.hpp"
#include "cellkit/ring.hpp"

namespace cellkit {

// Matrices of T~_s on a module with basis 0..dim-1, stored by columns.
template <class P>
struct HeckeRep {
  int dim = 0;
  // cols[s][y]: entries (x, a) with T~_s e_y = sum a e_x
  std::vector<std::vector<std::vector<std::pair<int, P>>>> cols;
  std::vector<P> apply(int s, const std::vector<P>& v) const;
  // trace of T~_{l_1} ... T~_{l_k}
  P trace(const Word& letters) const;
};
HeckeRep<IntLaurent> hecke_rep(const WGraph& g, int rank);
// Reflection representation: basis S, T~_s e_t = eps^L(s) e_t + c_st e_s.
HeckeRep<LaurentPolynomial> reflection_rep(const CoxeterGroup& W, const WeightFunction& L);
// Quadratic and braid relations.
template <class P>
bool hecke_rep_verify(const HeckeRep<P>& r, const CoxeterGroup& W, const WeightFunction& L);

// f_{w,C} with trace(T_w) = sum_C f_{w,C} trace(T_{w_C}), T_w = eps^{L(w)} T~_w.
class ClassPolynomials {
 public:
  ClassPolynomials(const ElementTable& T, const WeightFunction& L, const OrdinaryCharTable& ct);
  const std::vector<std::pair<int, IntLaurent>>& of(int w) const { return f_[w]; }

 private:
  std::vector<std::vector<std::pair<int, IntLaurent>>> f_;
};

struct HeckeCharTable {
  WeightFunction L;
  std::vector<int> reps;
  std::vector<long> sizes;
  std::vector<std::string> labels;
  std::vector<int> dims;
  // trace(T_{w_C}, E_eps) in the normalization T_w = eps^{L(w)} T~_w
  std::vector<std::vector<LaurentPolynomial>> values;
  int nirr() const { return static_cast<int>(values.size()); }
};

// m(C,E) from the specialization eps -> 1 of a W-graph module.
std::vector<int> module_multiplicities(const ElementTable& T, const OrdinaryCharTable& ct, const WGraph& g);

// Dihedral components by closed formulas; other components from cell modules, which
// requires a CellResult with W-graphs when W is irreducible (else cells are recomputed per
// component). Throws std::runtime_error when the cell data do not determine the table.
HeckeCharTable hecke_chartable(const ElementTable& T, const WeightFunction& L, const OrdinaryCharTable& ct,
                               const CellResult* cells = nullptr);
HeckeCharTable hecke_chartable_from_cells(const ElementTable& T, const WeightFunction& L,
                                          const OrdinaryCharTable& ct, const CellResult& cells);
HeckeCharTable hecke_chartable_dihedral(const ElementTable& T, const WeightFunction& L,
                                        const OrdinaryCharTable& ct);
// Specialization eps -> 1 equals the ordinary table.
bool hecke_specializes(const HeckeCharTable& H, const OrdinaryCharTable& ct);

struct LeadingData {
  WeightFunction L;
  std::vector<std::string> labels;
  std::vector<int> dims;
  std::vector<int> a;        // a_E
  std::vector<CycScalar> f;  // f_E
  // nonzero c_{w,E} per E, sorted by w
  std::vector<std::vector<std::pair<int, CycScalar>>> c;
  std::vector<CycScalar> n;  // n~_w per element
  std::vector<int> Dtilde;
  CycScalar c_of(int w, int E) const;
  int nirr() const { return static_cast<int>(labels.size()); }
};

LeadingData leading_coeffs(const ElementTable& T, const HeckeCharTable& H, const ClassPolynomials& cp);

struct Conj42Report {
  bool ok = true;
  std::vector<int> d;  // per cell: the unique element of D~, or -1
  std::vector<std::string> violations;
};
Conj42Report check_conj42(const ElementTable& T, const LeadingData& D, const std::vector<LeftCell>& cells);

struct CellLeadingTable {
  int d = -1;
  std::vector<int> rows;   // irreducible indices, ordered by (a_E, label_less)
  std::vector<int> cols;   // elements of C cap C^-1, d first
  std::vector<std::vector<CycScalar>> entries;  // [row][col] renormalized c*
  std::vector<int> mult;   // m(C,E) for rows from the eps -> 1 decomposition
  std::vector<CycScalar> mult_orth;  // sum_{w in C} c_{w,E}^2 / f_E
};
// Label order with digit runs compared numerically ("4_1" < "16").
bool label_less(const std::string& a, const std::string& b);
// Throws std::invalid_argument if the cell has no unique element of D~.
CellLeadingTable cell_leading_table(const ElementTable& T, const LeadingData& D, const LeftCell& cell,
                                    const Conj42Report& r, int cell_index, const std::vector<int>& mult);

struct CspecReport {
  bool ok = true;
  std::vector<int> SL;             // irreducible indices
  std::vector<int> special;        // per cell: the S_L constituent, or -1
  int sum_dims = 0;
  int ncells = 0;
  std::vector<std::string> violations;
};
// c*_{w,E} >= 0 test over all w; mult[cell][E] = m(C,E).
CspecReport check_cspec(const ElementTable& T, const LeadingData& D, const std::vector<LeftCell>& cells,
                        const Conj42Report& r, const std::vector<std::vector<int>>& mult);

// c*_{w,E} for w in a cell with distinguished element d.
CycScalar renormalized(const ElementTable& T, const LeadingData& D, int w, int E, int d);

}  // namespace cellkit
