#include "cellkit/klbase.hpp"

#include <algorithm>
#include <stdexcept>

namespace cellkit {

const IntLaurent* PolyColumn::find(int y) const {
  auto it = std::lower_bound(idx.begin(), idx.end(), y);
  if (it == idx.end() || *it != y) return nullptr;
  return &val[it - idx.begin()];
}

IntLaurent symmetrize_positive(const IntLaurent& f) {
  IntLaurent p = f.positive_part();
  return p + IntLaurent(f.coeff(0)) + p.bar();
}

KLCache::KLCache(const ElementTable& T, WeightFunction L) : T_(&T), L_(std::move(L)) {
  if (L_.size() != T.group().rank()) throw std::invalid_argument("weight function has wrong size");
  weightfn_validate(T.group(), L_.weights);
  int n = T.size();
  Lw_.assign(n, 0);
  for (int w = 1; w < n; ++w) {
    int s = T.min_left_descent(w);
    Lw_[w] = Lw_[T.lmul(s, w)] + L_[s];
  }
  cols_.resize(n);
  done_.assign(n, 0);
}

void KLCache::ensure(int w) {
  if (!bruhat_) bruhat_ = std::make_unique<BruhatTable>(*T_);
  while (computed_upto_ < w) compute_column(++computed_upto_);
}

void KLCache::compute_all() { ensure(T_->size() - 1); }

const PolyColumn& KLCache::column(int w) {
  ensure(w);
  return cols_[w];
}

IntLaurent KLCache::pstar(int y, int w) {
  ensure(w);
  const IntLaurent* p = cols_[w].find(y);
  return p ? *p : IntLaurent();
}

const PolyColumn& KLCache::mlist(int s, int w) {
  auto key = std::make_pair(s, w);
  auto it = mlists_.find(key);
  if (it != mlists_.end()) return it->second;
  ensure(w);
  compute_mlist(s, w);
  return mlists_.at(key);
}

IntLaurent KLCache::m(int s, int y, int w) {
  const ElementTable& T = *T_;
  if (L_[s] <= 0) throw std::invalid_argument("kl_m: L(s) must be positive");
  if (!T.left_descent(s, y) || T.left_descent(s, w) || T.length(y) >= T.length(w))
    throw std::invalid_argument("kl_m: requires sy<y<w<sw");
  const IntLaurent* p = mlist(s, w).find(y);
  return p ? *p : IntLaurent();
}

void KLCache::compute_mlist(int s, int w) {
  const ElementTable& T = *T_;
  int Ls = L_[s];
  PolyColumn tmp;  // built in decreasing z, reversed at the end
  const PolyColumn& col = cols_[w];
  for (int k = static_cast<int>(col.idx.size()) - 1; k >= 0; --k) {
    int z = col.idx[k];
    if (z == w || !T.left_descent(s, z)) continue;
    IntLaurent f = col.val[k].shift(Ls);
    for (size_t j = 0; j < tmp.idx.size(); ++j) {
      int zp = tmp.idx[j];
      if (T.length(zp) <= T.length(z)) continue;
      const IntLaurent* pz = cols_[zp].find(z);
      if (pz) f -= *pz * tmp.val[j];
    }
    IntLaurent mval = symmetrize_positive(f);
    if (!mval.is_zero()) tmp.push(z, std::move(mval));
  }
  PolyColumn out;
  for (int j = static_cast<int>(tmp.idx.size()) - 1; j >= 0; --j) out.push(tmp.idx[j], tmp.val[j]);
  mlists_.emplace(std::make_pair(s, w), std::move(out));
}

void KLCache::compute_column(int w) {
  const ElementTable& T = *T_;
  PolyColumn& col = cols_[w];
  if (w == 0) {
    col.push(0, IntLaurent(1));
    return;
  }
  int s = T.min_left_descent(w);
  int v = T.lmul(s, w);
  int Ls = L_[s];
  const PolyColumn& cv = cols_[v];
  const PolyColumn* ml = Ls > 0 ? &mlist(s, v) : nullptr;
  int n = T.size();
  for (int y = 0; y < n; ++y) {
    if (!bruhat_->leq(y, w)) continue;
    int sy = T.lmul(s, y);
    IntLaurent f;
    const IntLaurent* a = cv.find(sy);
    const IntLaurent* b = cv.find(y);
    if (Ls == 0) {
      if (a) f = *a;
    } else {
      if (a) f = *a;
      if (b) f += b->shift(T.length(sy) < T.length(y) ? Ls : -Ls);
      for (size_t j = 0; j < ml->idx.size(); ++j) {
        const IntLaurent* pz = cols_[ml->idx[j]].find(y);
        if (pz) f -= *pz * ml->val[j];
      }
    }
    if (!f.is_zero()) col.push(y, std::move(f));
  }
}

IntLaurent kl_pstar(KLCache& c, int y, int w) { return c.pstar(y, w); }
IntLaurent kl_m(KLCache& c, int s, int y, int w) { return c.m(s, y, w); }

std::vector<std::pair<int, IntLaurent>> cprime_expand(KLCache& c, int w) {
  const PolyColumn& col = c.column(w);
  std::vector<std::pair<int, IntLaurent>> r;
  for (size_t i = 0; i < col.idx.size(); ++i) r.emplace_back(col.idx[i], col.val[i]);
  return r;
}

}  // namespace cellkit
