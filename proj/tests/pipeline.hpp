#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cellkit/cartan.hpp"
#include "cellkit/chartable.hpp"
#include "cellkit/coxgroup.hpp"
#include "cellkit/leading.hpp"
#include "cellkit/relcells.hpp"

namespace cellkit {
inline void PrintTo(const CycScalar& x, std::ostream* os) { *os << x.str(); }
inline void PrintTo(const LaurentPolynomial& f, std::ostream* os) { *os << f.str(); }
}  // namespace cellkit

namespace cellkit::testing {

// Cells, Hecke table, leading coefficients and conjecture reports for one (W, L).
struct Pipeline {
  CoxeterGroup W;
  ElementTable T;
  WeightFunction L;
  OrdinaryCharTable ct;
  CellResult cells;
  HeckeCharTable H;
  std::optional<ClassPolynomials> cp;
  LeadingData D;
  Conj42Report r42;
  std::vector<std::vector<int>> mult;
  CspecReport cs;

  Pipeline(const std::string& label, std::vector<int> weights = {})
      : W(build(cartanmat_from_label(label))), T(W) {
    if (weights.empty()) weights.assign(W.rank(), 1);
    L = weightfn_validate(W, weights);
    ct = ordinary_chartable(T);
    cells = left_cells(T, L);
    H = hecke_chartable(T, L, ct, &cells);
    cp.emplace(T, L, ct);
    D = leading_coeffs(T, H, *cp);
    r42 = check_conj42(T, D, cells.cells);
    for (const auto& g : cells.wgraphs) mult.push_back(module_multiplicities(T, ct, g));
    cs = check_cspec(T, D, cells.cells, r42, mult);
  }

  int irr(const std::string& label) const {
    auto it = std::find(D.labels.begin(), D.labels.end(), label);
    return it == D.labels.end() ? -1 : static_cast<int>(it - D.labels.begin());
  }
  int elem(const Word& w) const { return T.index_of_word(w); }
  CellLeadingTable table(int cell) const {
    return cell_leading_table(T, D, cells.cells[cell], r42, cell, mult[cell]);
  }
  std::vector<std::string> sl_labels() const {
    std::vector<std::string> out;
    for (int e : cs.SL) out.push_back(D.labels[e]);
    std::sort(out.begin(), out.end());
    return out;
  }
};

// Alternating word s_first s_other s_first ... of length k in a rank 2 group.
inline Word alt_word(int first, int k) {
  Word w;
  for (int i = 0; i < k; ++i) w.push_back(i % 2 == 0 ? first : 1 - first);
  return w;
}

}  // namespace cellkit::testing
