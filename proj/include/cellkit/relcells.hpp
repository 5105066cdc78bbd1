#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cellkit/coxgroup.hpp"
#include "cellkit/klbase.hpp"
#include "cellkit/ring.hpp"

namespace cellkit {

struct WGraphEdge {
  int s;
  int x, y;  // local vertex indices
  IntLaurent m;
};

// W-graph on a set of elements (global indices of an ElementTable), generators in K.
struct WGraph {
  std::vector<int> elements;
  std::vector<uint32_t> I;
  std::vector<WGraphEdge> edges;
  // per generator with L(s)=0: image of each vertex; empty otherwise
  std::vector<std::vector<int>> zero_maps;
  std::vector<int> weights;
  uint32_t gens = 0;  // generator mask
};

struct LeftCell {
  std::vector<int> elements;  // sorted element indices
};

// M^t_{u,w} for t in J and u,w in a set of W'-elements, grouped by (t,u): entries (w, M).
class MData {
 public:
  void add(int t, int u, int w, IntLaurent m);
  const std::vector<std::pair<int, IntLaurent>>& get(int t, int u) const;
  static MData from_wgraph(const ElementTable& T, const WGraph& g);
  static MData from_klcache(KLCache& kl, uint32_t Jmask);

 private:
  std::map<std::pair<int, int>, std::vector<std::pair<int, IntLaurent>>> d_;
  std::vector<std::pair<int, IntLaurent>> empty_;
};

// Relative KL data on the block X.C' where X are the distinguished coset
// representatives of W_J in W_K and C' is a union of left cells of W_J.
class RelKLBlock {
 public:
  RelKLBlock(const ElementTable& T, const WeightFunction& L, uint32_t Kmask, uint32_t Jmask,
             std::vector<int> cellp, const MData& mdata);
  void compute();

  const ElementTable& table() const { return *T_; }
  const WeightFunction& weights() const { return L_; }
  int size() const { return static_cast<int>(elem_.size()); }
  const std::vector<int>& elements() const { return elem_; }
  const std::vector<int>& X() const { return X_; }
  const std::vector<int>& cellp() const { return C_; }
  int local(int w) const;
  int local(int x, int u) const;
  // p*_{xu,yv} by local ids
  const IntLaurent& p(int row, int col) const { return P_[static_cast<size_t>(col) * size() + row]; }
  // nonzero M^s_{z,g} for local target g with s g > g, entries (local z, M)
  const std::vector<std::pair<int, IntLaurent>>& mlist(int s, int g);
  // left cells inside the block (global element lists) with their W-graphs
  std::vector<std::pair<LeftCell, WGraph>> cells();

 private:
  void compute_column(int col);
  void compute_mlist(int s, int g);
  int xi_of(int id) const { return id / nc_; }
  int ui_of(int id) const { return id % nc_; }

  const ElementTable* T_;
  WeightFunction L_;
  uint32_t K_, J_;
  std::vector<int> X_, C_, elem_;
  int nc_ = 0;
  std::vector<int> xpos_, cpos_;  // global -> index or -1
  const MData* md_;
  std::vector<IntLaurent> P_;
  std::vector<std::vector<std::pair<int, IntLaurent>>> ml_;
  std::vector<char> ml_done_;
  bool computed_ = false;
};

IntLaurent rel_pstar(const RelKLBlock& b, int x, int u, int y, int v);
IntLaurent rel_m(RelKLBlock& b, int s, int x, int u, int y, int v);

// Ordinary P* from relative data with C' = W_J (full parabolic); Ppar gives P*_{u,w} of W_J.
class Assembler {
 public:
  Assembler(const ElementTable& T, const WeightFunction& L, uint32_t Jmask, KLCache& parabolic_kl);
  IntLaurent assemble_pstar(int x, int u, int y, int v);
  RelKLBlock& block() { return *block_; }

 private:
  KLCache* kl_;
  MData md_;
  std::unique_ptr<RelKLBlock> block_;
  std::vector<int> WJ_;
};

struct CellOptions {
  std::vector<int> chain;      // generator removal order; empty = default choice
  bool star_induction = false; // equal parameters only
  bool keep_wgraphs = true;
  int threads = 1;
};

struct CellResult {
  std::vector<LeftCell> cells;
  std::vector<WGraph> wgraphs;  // parallel to cells when kept
  std::vector<int> chain;       // generators removed, top level first
  std::vector<int> xsizes;      // |X| per level, top level first
  int max_block = 0;
  int cell_of(int w) const { return cellid_.empty() ? -1 : cellid_[w]; }
  std::vector<int> cellid_;
};

// default parabolic chain (generators removed, top level first)
std::vector<int> default_chain(const ElementTable& T);
CellResult left_cells(const ElementTable& T, const WeightFunction& L, const CellOptions& opt = {});

// W-graph of a cell (or union) from ordinary KL data.
WGraph wgraph_from_kl(KLCache& kl, const std::vector<int>& elements);
struct VerifyResult {
  bool ok = true;
  std::string witness;
};
VerifyResult wgraph_verify(const ElementTable& T, const WGraph& g);

struct StarResult {
  std::vector<std::vector<int>> orbits;  // cell indices
  int classes() const { return static_cast<int>(orbits.size()); }
};
// w* for (s,t) with m_st=3 and w in D_R(s,t); -1 if w not in D_R(s,t)
int star(const ElementTable& T, int w, int s, int t);
StarResult star_ops(const ElementTable& T, const WeightFunction& L, const std::vector<LeftCell>& cells,
                    uint32_t gens);

struct DistInfo {
  int element;
  int delta;
  long n;
};
struct DistinguishedReport {
  std::vector<DistInfo> D;            // one per cell where a strict minimum exists
  std::vector<int> bad_cells;         // minimum not strict / no element with P*_{1,y} != 0
};
DistinguishedReport distinguished(KLCache& kl, const std::vector<LeftCell>& cells);

}  // namespace cellkit
