#include "cellkit/coxgroup.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

namespace cellkit {

std::string root_key(const RootVec& v) {
  std::string k;
  for (const auto& c : v) {
    k += std::to_string(c.conductor());
    k += ':';
    for (const auto& q : c.coords()) {
      k += q.get_str();
      k += ',';
    }
    k += ';';
  }
  return k;
}

namespace {

bool is_positive(const RootVec& v) {
  for (const auto& c : v) {
    int s = cyc_sign(c);
    if (s != 0) return s > 0;
  }
  return false;
}

CycScalar height(const RootVec& v) {
  CycScalar h(0);
  for (const auto& c : v) h += c;
  return h;
}

}  // namespace

CoxeterGroup::CoxeterGroup(CartanMatrix c, size_t max_roots) : cartan_(std::move(c)) {
  coxmat_ = coxeter_matrix(cartan_);
  typedec_ = recognize(cartan_);
  name_ = cartanname(typedec_);
  finite_ = is_finite(typedec_);
  int n = rank();
  matgens_.resize(n);
  for (int s = 0; s < n; ++s) {
    Matrix m(n, RootVec(n, CycScalar(0)));
    for (int t = 0; t < n; ++t) {
      m[t][t] = CycScalar(1);
      m[t][s] -= cartan_[s][t];
    }
    matgens_[s] = std::move(m);
  }
  if (!finite_) return;

  // closure of the simple roots under the generators
  std::vector<RootVec> all;
  std::vector<std::pair<int, Word>> words;
  std::unordered_map<std::string, int> seen;
  for (int s = 0; s < n; ++s) {
    RootVec v(n, CycScalar(0));
    v[s] = CycScalar(1);
    seen.emplace(root_key(v), static_cast<int>(all.size()));
    all.push_back(v);
    words.push_back({s, {}});
  }
  for (size_t i = 0; i < all.size(); ++i) {
    for (int s = 0; s < n; ++s) {
      RootVec v = apply_root(all[i], s);
      std::string k = root_key(v);
      if (seen.count(k)) continue;
      if (all.size() >= max_roots) throw std::runtime_error("root enumeration exceeded cap");
      seen.emplace(k, static_cast<int>(all.size()));
      Word w = words[i].second;
      w.push_back(s);
      words.push_back({words[i].first, w});
      all.push_back(std::move(v));
    }
  }
  std::vector<int> pos;
  for (size_t i = 0; i < all.size(); ++i)
    if (is_positive(all[i])) pos.push_back(static_cast<int>(i));
  // height ascending, then coordinates in descending lexicographic order
  std::sort(pos.begin(), pos.end(), [&](int a, int b) {
    int hs = cyc_sign(height(all[a]) - height(all[b]));
    if (hs != 0) return hs < 0;
    for (int t = 0; t < n; ++t) {
      int cs = cyc_sign(all[a][t] - all[b][t]);
      if (cs != 0) return cs > 0;
    }
    return false;
  });
  n_pos_ = static_cast<int>(pos.size());
  roots_.resize(2 * n_pos_);
  root_words_.resize(2 * n_pos_);
  for (int i = 0; i < n_pos_; ++i) {
    roots_[i] = all[pos[i]];
    root_words_[i] = words[pos[i]];
    RootVec neg = roots_[i];
    for (auto& x : neg) x = -x;
    roots_[i + n_pos_] = neg;
    // -beta = alpha_s . (s w)
    Word w{root_words_[i].first};
    w.insert(w.end(), root_words_[i].second.begin(), root_words_[i].second.end());
    root_words_[i + n_pos_] = {root_words_[i].first, w};
  }
  for (int i = 0; i < 2 * n_pos_; ++i) root_lookup_.emplace(root_key(roots_[i]), i);
  if (2 * n_pos_ > 65535) throw std::runtime_error("too many roots for permutation storage");
  permgens_.assign(n, Perm(2 * n_pos_));
  for (int s = 0; s < n; ++s)
    for (int i = 0; i < 2 * n_pos_; ++i) {
      int j = root_index(apply_root(roots_[i], s));
      if (j < 0) throw std::logic_error("root system not closed");
      permgens_[s][i] = static_cast<uint16_t>(j);
    }
  order_ = 1;
  for (int d : cellkit::degrees(typedec_)) order_ *= static_cast<uint64_t>(d);
}

RootVec CoxeterGroup::apply_root(const RootVec& v, int s) const {
  CycScalar p(0);
  for (int t = 0; t < rank(); ++t)
    if (!v[t].is_zero() && !cartan_[s][t].is_zero()) p += v[t] * cartan_[s][t];
  RootVec r = v;
  r[s] -= p;
  return r;
}

int CoxeterGroup::root_index(const RootVec& v) const {
  auto it = root_lookup_.find(root_key(v));
  return it == root_lookup_.end() ? -1 : it->second;
}

Word CoxeterGroup::reflection_word(int root) const {
  const auto& [s, w] = root_words_[root];
  Word r(w.rbegin(), w.rend());
  r.push_back(s);
  r.insert(r.end(), w.begin(), w.end());
  return r;
}

Matrix CoxeterGroup::word_to_mat(const Word& w) const {
  int n = rank();
  Matrix m(n, RootVec(n, CycScalar(0)));
  for (int i = 0; i < n; ++i) m[i][i] = CycScalar(1);
  for (int s : w) {
    if (s < 0 || s >= n) throw std::invalid_argument("word entry out of range");
    for (auto& row : m) row = apply_root(row, s);
  }
  return m;
}

Word CoxeterGroup::mat_to_word(const Matrix& m0) const {
  int n = rank();
  if (static_cast<int>(m0.size()) != n) throw std::invalid_argument("matrix has wrong size");
  Matrix m = m0;
  Word w;
  for (int iter = 0; iter < 100000; ++iter) {
    int found = -1;
    for (int s = 0; s < n && found < 0; ++s)
      if (!is_positive(m[s])) found = s;
    if (found < 0) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (m[i][j] != CycScalar(i == j ? 1 : 0))
            throw std::invalid_argument("matrix is not an element of the group");
      return w;
    }
    // replace m by s*m: rows of s*m are the rows of m_s times m
    Matrix r(n);
    for (int t = 0; t < n; ++t) {
      r[t] = m[t];
      if (!cartan_[found][t].is_zero())
        for (int j = 0; j < n; ++j) r[t][j] -= cartan_[found][t] * m[found][j];
    }
    m = std::move(r);
    w.push_back(found);
  }
  throw std::invalid_argument("matrix is not an element of the group");
}

std::pair<std::vector<int>, std::vector<int>> CoxeterGroup::descent_sets_mat(
    const Matrix& m) const {
  Word w = mat_to_word(m);
  Word wi(w.rbegin(), w.rend());
  Matrix mi = word_to_mat(wi);
  std::vector<int> l, r;
  for (int s = 0; s < rank(); ++s) {
    if (!is_positive(m[s])) l.push_back(s);
    if (!is_positive(mi[s])) r.push_back(s);
  }
  return {l, r};
}

Perm CoxeterGroup::identity_perm() const {
  Perm p(2 * n_pos_);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Perm CoxeterGroup::word_to_perm(const Word& w) const {
  if (!finite_) throw std::invalid_argument("permutations need a finite group");
  Perm p = identity_perm();
  for (int s : w)
    for (auto& x : p) x = permgens_[s][x];
  return p;
}

Perm CoxeterGroup::mult_perm(const Perm& a, const Perm& b) const {
  Perm p(a.size());
  for (size_t i = 0; i < a.size(); ++i) p[i] = b[a[i]];
  return p;
}

Perm CoxeterGroup::inverse_perm(const Perm& p) const {
  Perm q(p.size());
  for (size_t i = 0; i < p.size(); ++i) q[p[i]] = static_cast<uint16_t>(i);
  return q;
}

Word CoxeterGroup::perm_to_word(const Perm& p0) const {
  Perm p = p0;
  Word w;
  while (true) {
    int s = 0;
    while (s < rank() && p[s] < n_pos_) ++s;
    if (s == rank()) break;
    w.push_back(s);
    // continue with s*w
    Perm q(p.size());
    for (size_t i = 0; i < p.size(); ++i) q[i] = p[permgens_[s][i]];
    p = std::move(q);
  }
  return w;
}

int CoxeterGroup::perm_length(const Perm& p) const {
  int l = 0;
  for (int i = 0; i < n_pos_; ++i)
    if (p[i] >= n_pos_) ++l;
  return l;
}

CoxeterGroup build(const CartanMatrix& c) { return CoxeterGroup(c); }

WeightFunction weightfn_validate(const CoxeterGroup& W, const std::vector<int>& weights) {
  return weightfn_validate(W.coxmat(), weights);
}

ElementTable::ElementTable(const CoxeterGroup& W, const DeskCap& cap) : W_(&W) {
  if (!W.finite()) throw std::invalid_argument("element table needs a finite group");
  if (W.order() > cap.max_enumerate) throw std::length_error("group order exceeds desk cap");
  r_ = W.rank();
  nroots_ = 2 * W.N();
  int npos = W.N();
  size_t order = W.order();
  perms_.reserve(order * nroots_);
  len_.reserve(order);
  minl_.reserve(order);
  Perm id = W.identity_perm();
  perms_.insert(perms_.end(), id.begin(), id.end());
  len_.push_back(0);
  minl_.push_back(-1);
  lookup_.emplace(key_of(perm(0)), 0);
  lvl_ = {0, 1};
  std::vector<int> via;  // index of s*w for the min left descent s
  via.push_back(-1);
  for (int k = 0;; ++k) {
    int lo = lvl_[k], hi = lvl_[k + 1];
    struct Cand {
      int s, from;
      Perm p;
    };
    std::vector<Cand> next;
    std::unordered_map<std::string, size_t> here;
    for (int x = lo; x < hi; ++x) {
      const uint16_t* px = perm(x);
      for (int s = 0; s < r_; ++s) {
        if (px[s] >= npos) continue;  // s is a left descent of x
        Perm q(nroots_);
        const Perm& g = W.permgens()[s];
        for (int i = 0; i < nroots_; ++i) q[i] = px[g[i]];
        std::string key = key_of(q.data());
        if (here.count(key)) continue;
        int ml = 0;
        while (q[ml] < npos) ++ml;
        here.emplace(key, next.size());
        next.push_back({ml, -1, std::move(q)});
      }
    }
    if (next.empty()) break;
    // index of (min left descent)*y, which has length k
    for (auto& c : next) {
      Perm q(nroots_);
      const Perm& g = W.permgens()[c.s];
      for (int i = 0; i < nroots_; ++i) q[i] = c.p[g[i]];
      c.from = lookup_.at(key_of(q.data()));
    }
    std::sort(next.begin(), next.end(), [](const Cand& a, const Cand& b) {
      return a.s != b.s ? a.s < b.s : a.from < b.from;
    });
    for (auto& c : next) {
      int idx = static_cast<int>(len_.size());
      perms_.insert(perms_.end(), c.p.begin(), c.p.end());
      len_.push_back(k + 1);
      minl_.push_back(c.s);
      via.push_back(c.from);
      lookup_.emplace(key_of(perm(idx)), idx);
    }
    lvl_.push_back(static_cast<int>(len_.size()));
  }
  if (len_.size() != order) throw std::logic_error("element enumeration does not match order");
  size_t n = len_.size();
  lmul_.assign(n * r_, -1);
  rmul_.assign(n * r_, -1);
  inv_.assign(n, -1);
  std::vector<uint16_t> q(nroots_);
  for (size_t w = 0; w < n; ++w) {
    const uint16_t* p = perm(static_cast<int>(w));
    for (int s = 0; s < r_; ++s) {
      const Perm& g = W.permgens()[s];
      for (int i = 0; i < nroots_; ++i) q[i] = p[g[i]];
      lmul_[w * r_ + s] = lookup_.at(key_of(q.data()));
      for (int i = 0; i < nroots_; ++i) q[i] = g[p[i]];
      rmul_[w * r_ + s] = lookup_.at(key_of(q.data()));
    }
    for (int i = 0; i < nroots_; ++i) q[p[i]] = static_cast<uint16_t>(i);
    inv_[w] = lookup_.at(key_of(q.data()));
  }
}

std::string ElementTable::key_of(const uint16_t* p) const {
  return std::string(reinterpret_cast<const char*>(p), sizeof(uint16_t) * r_);
}

uint32_t ElementTable::left_descent_mask(int w) const {
  uint32_t m = 0;
  for (int s = 0; s < r_; ++s)
    if (left_descent(s, w)) m |= 1u << s;
  return m;
}

uint32_t ElementTable::right_descent_mask(int w) const {
  uint32_t m = 0;
  for (int s = 0; s < r_; ++s)
    if (right_descent(w, s)) m |= 1u << s;
  return m;
}

Word ElementTable::word(int w) const {
  Word r;
  while (w != 0) {
    int s = minl_[w];
    r.push_back(s);
    w = lmul(s, w);
  }
  return r;
}

int ElementTable::index_of_word(const Word& w) const {
  int x = 0;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    if (*it < 0 || *it >= r_) throw std::invalid_argument("word entry out of range");
    x = lmul(*it, x);
  }
  return x;
}

int ElementTable::index_of_perm(const Perm& p) const {
  auto it = lookup_.find(key_of(p.data()));
  return it == lookup_.end() ? -1 : it->second;
}

int ElementTable::mult(int a, int b) const {
  for (int s : word(b)) a = rmul(a, s);
  return a;
}

Word word_to_canonical(const CoxeterGroup& W, const Word& w) {
  if (W.finite()) return W.perm_to_word(W.word_to_perm(w));
  return W.mat_to_word(W.word_to_mat(w));
}

std::pair<std::vector<int>, std::vector<int>> descent_sets(const CoxeterGroup& W,
                                                           const Word& w) {
  return W.descent_sets_mat(W.word_to_mat(w));
}

bool bruhat_leq(const ElementTable& T, int y, int w) {
  while (true) {
    if (y == w) return true;
    if (T.length(y) >= T.length(w)) return false;
    if (y == 0) return true;
    int s = T.min_left_descent(w);
    int sw = T.lmul(s, w);
    if (T.left_descent(s, y)) y = T.lmul(s, y);
    w = sw;
  }
}

BruhatTable::BruhatTable(const ElementTable& T) {
  size_t n = T.size();
  stride_ = (n + 63) / 64;
  bits_.assign(n * stride_, 0);
  bits_[0] |= 1;
  for (size_t w = 1; w < n; ++w) {
    int s = T.min_left_descent(static_cast<int>(w));
    int sw = T.lmul(s, static_cast<int>(w));
    uint64_t* row = &bits_[w * stride_];
    const uint64_t* prev = &bits_[sw * stride_];
    for (size_t k = 0; k < stride_; ++k) row[k] = prev[k];
    for (size_t y = 0; y < n; ++y)
      if ((prev[y >> 6] >> (y & 63)) & 1ULL) {
        size_t sy = T.lmul(s, static_cast<int>(y));
        row[sy >> 6] |= 1ULL << (sy & 63);
      }
  }
}

int longest_element(const ElementTable& T) { return T.longest(); }

std::vector<int> coset_reps(const ElementTable& T, const std::vector<int>& J) {
  uint32_t jm = mask_of(J);
  std::vector<int> x;
  for (int w = 0; w < T.size(); ++w)
    if ((T.right_descent_mask(w) & jm) == 0) x.push_back(w);
  return x;
}

bool in_parabolic(const ElementTable& T, int w, uint32_t Jmask) {
  while (w != 0) {
    int s = T.min_left_descent(w);
    if (!((Jmask >> s) & 1u)) return false;
    w = T.lmul(s, w);
  }
  return true;
}

std::pair<int, int> coset_decompose(const ElementTable& T, int w, uint32_t Jmask) {
  Word u;
  int x = w;
  while (true) {
    uint32_t d = T.right_descent_mask(x) & Jmask;
    if (!d) break;
    int t = __builtin_ctz(d);
    x = T.rmul(x, t);
    u.push_back(t);
  }
  int ui = 0;
  for (auto it = u.rbegin(); it != u.rend(); ++it) ui = T.rmul(ui, *it);
  return {x, ui};
}

Deodhar deodhar_case(const ElementTable& T, uint32_t Jmask, int x, int s) {
  if (T.right_descent_mask(x) & Jmask) throw std::invalid_argument("deodhar_case: x not in X");
  int sx = T.lmul(s, x);
  if (T.length(sx) < T.length(x)) return {DeodharCase::Down, -1};
  uint32_t d = T.right_descent_mask(sx) & Jmask;
  if (!d) return {DeodharCase::Up, -1};
  return {DeodharCase::Cross, __builtin_ctz(d)};
}

std::vector<ConjClass> conjugacy_classes(const ElementTable& T) {
  int n = T.size();
  std::vector<int> cls(n, -1);
  std::vector<ConjClass> res;
  for (int w = 0; w < n; ++w) {
    if (cls[w] >= 0) continue;
    int id = static_cast<int>(res.size());
    ConjClass c{w, 0, {w}};
    cls[w] = id;
    for (size_t i = 0; i < c.elements.size(); ++i) {
      int x = c.elements[i];
      for (int s = 0; s < T.group().rank(); ++s) {
        int y = T.rmul(T.lmul(s, x), s);
        if (cls[y] < 0) {
          cls[y] = id;
          c.elements.push_back(y);
        }
      }
    }
    std::sort(c.elements.begin(), c.elements.end());
    c.size = static_cast<int>(c.elements.size());
    res.push_back(std::move(c));
  }
  return res;
}

std::vector<int> involutions(const ElementTable& T) {
  std::vector<int> r;
  for (int w = 0; w < T.size(); ++w)
    if (T.inverse(w) == w) r.push_back(w);
  return r;
}

std::pair<CoxeterGroup, Fusion> reflection_subgroup(const CoxeterGroup& W,
                                                    const std::vector<int>& root_indices) {
  if (!W.finite()) throw std::invalid_argument("reflection_subgroup: group must be finite");
  int nr = 2 * W.N(), npos = W.N();
  std::vector<Perm> refl(nr);
  auto reflection = [&](int b) -> const Perm& {
    if (refl[b].empty()) refl[b] = W.word_to_perm(W.reflection_word(b));
    return refl[b];
  };
  std::vector<bool> in(nr, false);
  std::vector<int> list;
  auto add = [&](int b) {
    for (int x : {b, b < npos ? b + npos : b - npos})
      if (!in[x]) {
        in[x] = true;
        list.push_back(x);
      }
  };
  for (int b : root_indices) {
    if (b < 0 || b >= nr) throw std::invalid_argument("reflection_subgroup: bad root index");
    add(b);
  }
  for (size_t i = 0; i < list.size(); ++i)
    for (size_t j = 0; j <= i; ++j) {
      add(reflection(list[i])[list[j]]);
      add(reflection(list[j])[list[i]]);
    }
  std::vector<int> pos;
  for (int b = 0; b < npos; ++b)
    if (in[b]) pos.push_back(b);
  std::vector<int> simple;
  for (int b : pos) {
    const Perm& r = reflection(b);
    bool ok = true;
    for (int g : pos)
      if (g != b && r[g] >= npos) {
        ok = false;
        break;
      }
    if (ok) simple.push_back(b);
  }
  int k = static_cast<int>(simple.size());
  CartanMatrix c(k, std::vector<CycScalar>(k, CycScalar(0)));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (i == j) {
        c[i][j] = CycScalar(2);
        continue;
      }
      const RootVec& bi = W.roots()[simple[i]];
      const RootVec& bj = W.roots()[simple[j]];
      const RootVec& img = W.roots()[reflection(simple[i])[simple[j]]];
      int t = 0;
      while (bi[t].is_zero()) ++t;
      c[i][j] = (bj[t] - img[t]) / bi[t];
    }
  Fusion f;
  f.parent_name = W.name();
  f.subJ = simple;
  f.parabolic = std::all_of(simple.begin(), simple.end(), [&](int b) { return b < W.rank(); });
  return {CoxeterGroup(c), f};
}

}  // namespace cellkit
