#pragma once

#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "cellkit/coxgroup.hpp"
#include "cellkit/ring.hpp"

namespace cellkit {

// Sparse column of polynomials keyed by element index, sorted.
struct PolyColumn {
  std::vector<int> idx;
  std::vector<IntLaurent> val;
  const IntLaurent* find(int y) const;
  void push(int y, IntLaurent f) {
    idx.push_back(y);
    val.push_back(std::move(f));
  }
};

// Ordinary KL data P*_{y,w}, M^s_{y,w} for a finite group and weight function.
class KLCache {
 public:
  KLCache(const ElementTable& T, WeightFunction L);

  const ElementTable& table() const { return *T_; }
  const WeightFunction& weights() const { return L_; }

  IntLaurent pstar(int y, int w);
  // M^s_{y,w} for sy<y<w<sw with L(s)>0; throws otherwise.
  IntLaurent m(int s, int y, int w);
  const PolyColumn& column(int w);
  // Non-zero M^s_{z,w} for all z (requires sw>w, L(s)>0).
  const PolyColumn& mlist(int s, int w);
  void compute_all();
  // L(w) for element index w.
  int weight_of(int w) const { return Lw_[w]; }

 private:
  void ensure(int w);
  void compute_column(int w);
  void compute_mlist(int s, int w);

  const ElementTable* T_;
  WeightFunction L_;
  std::unique_ptr<BruhatTable> bruhat_;
  std::vector<int> Lw_;
  std::vector<PolyColumn> cols_;
  std::vector<char> done_;
  int computed_upto_ = -1;
  std::map<std::pair<int, int>, PolyColumn> mlists_;
};

IntLaurent kl_pstar(KLCache& c, int y, int w);
IntLaurent kl_m(KLCache& c, int s, int y, int w);
// y -> P*_{y,w}
std::vector<std::pair<int, IntLaurent>> cprime_expand(KLCache& c, int w);

// Bar-invariant solution of f - M in Z[Gamma_<0]: M = f_0 + f_>0 + bar(f_>0).
IntLaurent symmetrize_positive(const IntLaurent& f);

}  // namespace cellkit
