#include "cellkit/relcells.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <mutex>
#include <thread>

namespace cellkit {

namespace {

IntLaurent mono(int e) { return IntLaurent::monomial(CheckedInt(1), e); }


// union of generators in a reduced word of w
std::vector<uint32_t> supports(const ElementTable& T) {
  std::vector<uint32_t> supp(T.size(), 0);
  for (int w = 1; w < T.size(); ++w) {
    int s = T.min_left_descent(w);
    supp[w] = supp[T.lmul(s, w)] | (1u << s);
  }
  return supp;
}

bool equal_parameters_on(const WeightFunction& L, uint32_t gens) {
  int v = -1;
  for (int s = 0; s < L.size(); ++s) {
    if (!((gens >> s) & 1u)) continue;
    if (L[s] <= 0) return false;
    if (v < 0) v = L[s];
    if (L[s] != v) return false;
  }
  return true;
}

// Tarjan's algorithm, iterative; returns component id per vertex.
std::vector<int> scc(const std::vector<std::vector<int>>& adj) {
  int n = static_cast<int>(adj.size());
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1), stack;
  std::vector<char> on(n, 0);
  int counter = 0, ncomp = 0;
  std::vector<std::pair<int, size_t>> call;
  for (int root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    call.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on[root] = 1;
    while (!call.empty()) {
      auto& [v, i] = call.back();
      if (i < adj[v].size()) {
        int w = adj[v][i++];
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on[w] = 1;
          call.emplace_back(w, 0);
        } else if (on[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        while (true) {
          int w = stack.back();
          stack.pop_back();
          on[w] = 0;
          comp[w] = ncomp;
          if (w == v) break;
        }
        ++ncomp;
      }
      int done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
    }
  }
  return comp;
}

}  // namespace

void MData::add(int t, int u, int w, IntLaurent m) {
  if (m.is_zero()) return;
  d_[{t, u}].emplace_back(w, std::move(m));
}

const std::vector<std::pair<int, IntLaurent>>& MData::get(int t, int u) const {
  auto it = d_.find({t, u});
  return it == d_.end() ? empty_ : it->second;
}

MData MData::from_wgraph(const ElementTable& T, const WGraph& g) {
  MData md;
  for (const auto& e : g.edges) {
    int x = g.elements[e.x], y = g.elements[e.y];
    int lx = T.length(x), ly = T.length(y);
    if (lx >= ly) continue;
    IntLaurent M = ((lx + ly) % 2 == 0) ? -e.m : e.m;
    md.add(e.s, x, y, M);
  }
  return md;
}

MData MData::from_klcache(KLCache& kl, uint32_t Jmask) {
  const ElementTable& T = kl.table();
  MData md;
  auto supp = supports(T);
  for (int w = 0; w < T.size(); ++w) {
    if (supp[w] & ~Jmask) continue;
    for (int t = 0; t < T.group().rank(); ++t) {
      if (!((Jmask >> t) & 1u) || kl.weights()[t] == 0 || T.left_descent(t, w)) continue;
      const PolyColumn& ml = kl.mlist(t, w);
      for (size_t i = 0; i < ml.idx.size(); ++i) md.add(t, ml.idx[i], w, ml.val[i]);
    }
  }
  return md;
}

RelKLBlock::RelKLBlock(const ElementTable& T, const WeightFunction& L, uint32_t Kmask,
                       uint32_t Jmask, std::vector<int> cellp, const MData& mdata)
    : T_(&T), L_(L), K_(Kmask), J_(Jmask), C_(std::move(cellp)), md_(&mdata) {
  if (J_ & ~K_) throw std::invalid_argument("RelKLBlock: J must be contained in K");
  std::sort(C_.begin(), C_.end());
  auto supp = supports(T);
  for (int w = 0; w < T.size(); ++w)
    if (!(supp[w] & ~K_) && !(T.right_descent_mask(w) & J_)) X_.push_back(w);
  for (int u : C_)
    if (supp[u] & ~J_) throw std::invalid_argument("RelKLBlock: cell not inside W_J");
  nc_ = static_cast<int>(C_.size());
  xpos_.assign(T.size(), -1);
  cpos_.assign(T.size(), -1);
  for (size_t i = 0; i < X_.size(); ++i) xpos_[X_[i]] = static_cast<int>(i);
  for (size_t i = 0; i < C_.size(); ++i) cpos_[C_[i]] = static_cast<int>(i);
  elem_.resize(X_.size() * C_.size());
  for (size_t xi = 0; xi < X_.size(); ++xi)
    for (int ui = 0; ui < nc_; ++ui) elem_[xi * nc_ + ui] = T.mult(X_[xi], C_[ui]);
}

int RelKLBlock::local(int x, int u) const {
  if (x < 0 || u < 0 || xpos_[x] < 0 || cpos_[u] < 0) return -1;
  return xpos_[x] * nc_ + cpos_[u];
}

int RelKLBlock::local(int w) const {
  auto [x, u] = coset_decompose(*T_, w, J_);
  return local(x, u);
}

void RelKLBlock::compute() {
  if (computed_) return;
  int n = size();
  int r = T_->group().rank();
  P_.assign(static_cast<size_t>(n) * n, IntLaurent());
  ml_.assign(static_cast<size_t>(n) * r, {});
  ml_done_.assign(static_cast<size_t>(n) * r, 0);
  for (int col = 0; col < n; ++col) compute_column(col);
  computed_ = true;
}

const std::vector<std::pair<int, IntLaurent>>& RelKLBlock::mlist(int s, int g) {
  size_t k = static_cast<size_t>(g) * T_->group().rank() + s;
  if (!ml_done_[k]) {
    compute_mlist(s, g);
    ml_done_[k] = 1;
  }
  return ml_[k];
}

void RelKLBlock::compute_column(int col) {
  const ElementTable& T = *T_;
  int n = size();
  IntLaurent* out = &P_[static_cast<size_t>(col) * n];
  int yi = xi_of(col), vi = ui_of(col);
  out[col] = IntLaurent(1);
  if (yi == 0) return;
  int y = X_[yi];
  int ly = T.length(y);
  int s = __builtin_ctz(T.left_descent_mask(y) & K_);
  int Ls = L_[s];
  int syi = xpos_[T.lmul(s, y)];
  int colsy = syi * nc_ + vi;
  const IntLaurent* psy = &P_[static_cast<size_t>(colsy) * n];
  const std::vector<std::pair<int, IntLaurent>>* ml = Ls > 0 ? &mlist(s, colsy) : nullptr;
  IntLaurent twoside = mono(Ls) + mono(-Ls);

  auto ptilde = [&](int row) {
    IntLaurent acc;
    for (const auto& [z, M] : *ml) {
      const IntLaurent& q = p(row, z);
      if (!q.is_zero()) acc += q * M;
    }
    return acc;
  };

  for (int xi = static_cast<int>(X_.size()) - 1; xi >= 0; --xi) {
    int x = X_[xi];
    if (T.length(x) >= ly) continue;
    Deodhar d = deodhar_case(T, J_, x, s);
    int sxi = d.kind == DeodharCase::Cross ? -1 : xpos_[T.lmul(s, x)];
    for (int ui = 0; ui < nc_; ++ui) {
      int row = xi * nc_ + ui;
      IntLaurent f;
      if (Ls == 0) {
        if (d.kind != DeodharCase::Cross) {
          f = psy[sxi * nc_ + ui];
        } else {
          int cp = cpos_[T.lmul(d.t, C_[ui])];
          if (cp >= 0) f = psy[xi * nc_ + cp];
        }
      } else if (d.kind == DeodharCase::Down) {
        f = psy[sxi * nc_ + ui] + psy[row].shift(Ls) - ptilde(row);
      } else if (d.kind == DeodharCase::Up) {
        f = out[sxi * nc_ + ui].shift(-Ls);
      } else {
        int u = C_[ui];
        int tu = T.lmul(d.t, u);
        if (T.length(tu) > T.length(u)) continue;
        f = psy[row] * twoside - ptilde(row);
        int cp = cpos_[tu];
        if (cp >= 0) f += psy[xi * nc_ + cp];
        for (const auto& [w, M] : md_->get(d.t, u)) {
          int wp = cpos_[w];
          if (wp >= 0 && !psy[xi * nc_ + wp].is_zero()) f += M * psy[xi * nc_ + wp];
        }
      }
      out[row] = std::move(f);
    }
  }
}

void RelKLBlock::compute_mlist(int s, int g) {
  const ElementTable& T = *T_;
  int Ls = L_[s];
  if (Ls <= 0) throw std::invalid_argument("mlist: L(s) must be positive");
  int eg = elem_[g];
  if (T.left_descent(s, eg)) throw std::invalid_argument("mlist: requires s.g > g");
  int lg = T.length(eg);
  auto& res = ml_[static_cast<size_t>(g) * T.group().rank() + s];
  for (int xi = static_cast<int>(X_.size()) - 1; xi >= 0; --xi) {
    int x = X_[xi];
    if (T.length(x) > lg) continue;
    Deodhar d = deodhar_case(T, J_, x, s);
    for (int ui = 0; ui < nc_; ++ui) {
      int c = xi * nc_ + ui;
      int ec = elem_[c];
      if (T.length(ec) >= lg || !T.left_descent(s, ec)) continue;
      IntLaurent f = p(c, g).shift(Ls);
      for (const auto& [z, M] : res) {
        const IntLaurent& q = p(c, z);
        if (!q.is_zero()) f -= q * M;
      }
      if (d.kind == DeodharCase::Cross) {
        for (const auto& [w, M] : md_->get(d.t, C_[ui])) {
          int wp = cpos_[w];
          if (wp >= 0) {
            const IntLaurent& q = p(xi * nc_ + wp, g);
            if (!q.is_zero()) f += M * q;
          }
        }
      }
      IntLaurent M = symmetrize_positive(f);
      if (!M.is_zero()) res.emplace_back(c, std::move(M));
    }
  }
  std::sort(res.begin(), res.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
}

std::vector<std::pair<LeftCell, WGraph>> RelKLBlock::cells() {
  compute();
  const ElementTable& T = *T_;
  int n = size();
  int r = T.group().rank();
  std::vector<int> lm(static_cast<size_t>(n) * r, -1);
  for (int id = 0; id < n; ++id)
    for (int s = 0; s < r; ++s)
      if ((K_ >> s) & 1u) lm[static_cast<size_t>(id) * r + s] = local(T.lmul(s, elem_[id]));
  std::vector<std::vector<int>> adj(n);
  for (int y = 0; y < n; ++y)
    for (int s = 0; s < r; ++s) {
      if (!((K_ >> s) & 1u)) continue;
      int z = lm[static_cast<size_t>(y) * r + s];
      if (z >= 0 && (L_[s] == 0 || !T.left_descent(s, elem_[y]))) adj[y].push_back(z);
      if (L_[s] > 0 && !T.left_descent(s, elem_[y]))
        for (const auto& [zz, M] : mlist(s, y)) adj[y].push_back(zz);
    }
  std::vector<int> comp = scc(adj);
  int nc = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  std::vector<std::vector<int>> members(nc);
  for (int id = 0; id < n; ++id) members[comp[id]].push_back(id);
  std::vector<std::pair<LeftCell, WGraph>> out;
  for (auto& mem : members) {
    std::sort(mem.begin(), mem.end(), [&](int a, int b) { return elem_[a] < elem_[b]; });
    std::vector<int> vpos(n, -1);
    WGraph g;
    g.weights = L_.weights;
    g.gens = K_;
    for (size_t i = 0; i < mem.size(); ++i) {
      vpos[mem[i]] = static_cast<int>(i);
      g.elements.push_back(elem_[mem[i]]);
      g.I.push_back(T.left_descent_mask(elem_[mem[i]]) & K_);
    }
    g.zero_maps.assign(r, {});
    for (int s = 0; s < r; ++s) {
      if (!((K_ >> s) & 1u)) continue;
      if (L_[s] == 0) {
        for (int id : mem) {
          int z = lm[static_cast<size_t>(id) * r + s];
          if (z < 0 || vpos[z] < 0) throw std::logic_error("zero-weight image outside cell");
          g.zero_maps[s].push_back(vpos[z]);
        }
        continue;
      }
      for (int id : mem) {
        int ey = elem_[id];
        if (T.left_descent(s, ey)) continue;
        int sy = lm[static_cast<size_t>(id) * r + s];
        if (sy >= 0 && vpos[sy] >= 0) g.edges.push_back({s, vpos[sy], vpos[id], IntLaurent(1)});
        for (const auto& [z, M] : mlist(s, id)) {
          if (vpos[z] < 0) continue;
          int parity = (T.length(elem_[z]) + T.length(ey)) % 2;
          g.edges.push_back({s, vpos[z], vpos[id], parity ? M : -M});
        }
      }
    }
    std::sort(g.edges.begin(), g.edges.end(), [](const WGraphEdge& a, const WGraphEdge& b) {
      return std::tie(a.s, a.y, a.x) < std::tie(b.s, b.y, b.x);
    });
    LeftCell c;
    c.elements = g.elements;
    out.emplace_back(std::move(c), std::move(g));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.first.elements.front() < b.first.elements.front();
  });
  return out;
}

IntLaurent rel_pstar(const RelKLBlock& b, int x, int u, int y, int v) {
  int row = b.local(x, u), col = b.local(y, v);
  if (row < 0 || col < 0) throw std::invalid_argument("rel_pstar: element outside the block");
  return b.p(row, col);
}

IntLaurent rel_m(RelKLBlock& b, int s, int x, int u, int y, int v) {
  const ElementTable& T = b.table();
  int row = b.local(x, u), col = b.local(y, v);
  if (row < 0 || col < 0) throw std::invalid_argument("rel_m: element outside the block");
  int ex = b.elements()[row], ey = b.elements()[col];
  if (b.weights()[s] <= 0 || !T.left_descent(s, ex) || T.left_descent(s, ey) ||
      T.length(ex) >= T.length(ey))
    throw std::invalid_argument("rel_m: requires L(s)>0 and s.xu<xu<yv<s.yv");
  for (const auto& [z, M] : b.mlist(s, col))
    if (z == row) return M;
  return {};
}

Assembler::Assembler(const ElementTable& T, const WeightFunction& L, uint32_t Jmask,
                     KLCache& parabolic_kl)
    : kl_(&parabolic_kl) {
  md_ = MData::from_klcache(parabolic_kl, Jmask);
  auto supp = supports(T);
  for (int w = 0; w < T.size(); ++w)
    if (!(supp[w] & ~Jmask)) WJ_.push_back(w);
  uint32_t all = (1u << T.group().rank()) - 1;
  block_ = std::make_unique<RelKLBlock>(T, L, all, Jmask, WJ_, md_);
  block_->compute();
}

IntLaurent Assembler::assemble_pstar(int x, int u, int y, int v) {
  if (x == y) return kl_->pstar(u, v);
  IntLaurent r = rel_pstar(*block_, x, u, y, v);
  for (int w : WJ_) {
    if (w == u) continue;
    IntLaurent q = kl_->pstar(u, w);
    if (q.is_zero()) continue;
    const IntLaurent& pw = rel_pstar(*block_, x, w, y, v);
    if (!pw.is_zero()) r += q * pw;
  }
  return r;
}

std::vector<int> default_chain(const ElementTable& T) {
  int r = T.group().rank();
  auto supp = supports(T);
  auto order = [&](uint32_t K) {
    long c = 0;
    for (uint32_t m : supp)
      if (!(m & ~K)) ++c;
    return c;
  };
  uint32_t K = (1u << r) - 1;
  std::vector<int> chain;
  while (K) {
    long nK = order(K);
    int best = -1;
    long bestx = 0;
    for (int s = 0; s < r; ++s) {
      if (!((K >> s) & 1u)) continue;
      long x = nK / order(K & ~(1u << s));
      if (best < 0 || x <= bestx) {
        best = s;
        bestx = x;
      }
    }
    // E7: use D6 rather than E6
    std::vector<int> idx;
    for (int s = 0; s < r; ++s)
      if ((K >> s) & 1u) idx.push_back(s);
    TypeDecomposition td = recognize(restrict_cartan(T.group().cartan(), idx));
    if (td.size() == 1 && td[0].label() == "E7") {
      for (int s : idx) {
        std::vector<int> rest;
        for (int t : idx)
          if (t != s) rest.push_back(t);
        TypeDecomposition t2 = recognize(restrict_cartan(T.group().cartan(), rest));
        if (t2.size() == 1 && t2[0].label() == "D6") best = s;
      }
    }
    chain.push_back(best);
    K &= ~(1u << best);
  }
  return chain;
}

namespace {

struct LevelCell {
  LeftCell cell;
  WGraph g;
};

WGraph transfer_wgraph(const ElementTable& T, const WGraph& g, const std::vector<int>& image) {
  int n = static_cast<int>(g.elements.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return image[a] < image[b]; });
  std::vector<int> newpos(n);
  for (int i = 0; i < n; ++i) newpos[order[i]] = i;
  WGraph h;
  h.weights = g.weights;
  h.gens = g.gens;
  h.zero_maps = g.zero_maps;
  for (int i = 0; i < n; ++i) {
    h.elements.push_back(image[order[i]]);
    h.I.push_back(T.left_descent_mask(image[order[i]]) & g.gens);
    if (h.I.back() != g.I[order[i]]) throw std::logic_error("star image changes descent set");
  }
  for (const auto& e : g.edges) h.edges.push_back({e.s, newpos[e.x], newpos[e.y], e.m});
  std::sort(h.edges.begin(), h.edges.end(), [](const WGraphEdge& a, const WGraphEdge& b) {
    return std::tie(a.s, a.y, a.x) < std::tie(b.s, b.y, b.x);
  });
  return h;
}

std::vector<std::pair<int, int>> star_pairs(const ElementTable& T, uint32_t gens) {
  std::vector<std::pair<int, int>> pr;
  int r = T.group().rank();
  for (int s = 0; s < r; ++s)
    for (int t = s + 1; t < r; ++t)
      if (((gens >> s) & 1u) && ((gens >> t) & 1u) && T.group().coxmat()[s][t] == 3)
        pr.emplace_back(s, t);
  return pr;
}

}  // namespace

int star(const ElementTable& T, int w, int s, int t) {
  bool ds = T.right_descent(w, s), dt = T.right_descent(w, t);
  if (ds == dt) return -1;
  int a = T.rmul(w, s);
  if (T.right_descent(a, s) != T.right_descent(a, t)) return a;
  return T.rmul(w, t);
}

CellResult left_cells(const ElementTable& T, const WeightFunction& L, const CellOptions& opt) {
  int r = T.group().rank();
  if (L.size() != r) throw std::invalid_argument("left_cells: weight function has wrong size");
  CellResult res;
  res.chain = opt.chain.empty() ? default_chain(T) : opt.chain;
  {
    std::vector<int> c = res.chain;
    std::sort(c.begin(), c.end());
    std::vector<int> all(r);
    std::iota(all.begin(), all.end(), 0);
    if (c != all) throw std::invalid_argument("left_cells: chain must be a permutation of the generators");
  }
  std::vector<uint32_t> levels(r + 1);  // levels[k]: generator mask with k generators
  levels[r] = (1u << r) - 1;
  for (int k = r; k > 0; --k) levels[k - 1] = levels[k] & ~(1u << res.chain[r - k]);
  bool use_star = opt.star_induction;
  if (use_star && !equal_parameters_on(L, levels[r]))
    throw std::invalid_argument("star induction requires equal parameters");

  std::vector<LevelCell> cur;
  {
    LevelCell base;
    base.cell.elements = {0};
    base.g.elements = {0};
    base.g.I = {0};
    base.g.weights = L.weights;
    base.g.zero_maps.assign(r, {});
    cur.push_back(std::move(base));
  }
  auto supp = supports(T);
  std::vector<char> seen(T.size(), 0);
  for (int k = 1; k <= r; ++k) {
    uint32_t K = levels[k], J = levels[k - 1];
    std::vector<int> todo;
    if (use_star) {
      std::vector<LeftCell> cs;
      for (auto& c : cur) cs.push_back(c.cell);
      StarResult sr = star_ops(T, L, cs, J);
      for (auto& o : sr.orbits) todo.push_back(o.front());
    } else {
      todo.resize(cur.size());
      std::iota(todo.begin(), todo.end(), 0);
    }
    std::vector<std::vector<std::pair<LeftCell, WGraph>>> outs(todo.size());
    std::vector<int> bsize(todo.size(), 0);
    std::atomic<size_t> next{0};
    std::exception_ptr err;
    std::mutex emu;
    auto worker = [&]() {
      while (true) {
        size_t i = next++;
        if (i >= todo.size()) return;
        try {
          const LevelCell& c = cur[todo[i]];
          MData md = MData::from_wgraph(T, c.g);
          RelKLBlock blk(T, L, K, J, c.cell.elements, md);
          blk.compute();
          bsize[i] = blk.size();
          outs[i] = blk.cells();
        } catch (...) {
          std::lock_guard<std::mutex> lk(emu);
          if (!err) err = std::current_exception();
          next = todo.size();
        }
      }
    };
    int nth = std::max(1, std::min<int>(opt.threads, static_cast<int>(todo.size())));
    if (nth == 1) {
      worker();
    } else {
      std::vector<std::thread> th;
      for (int i = 0; i < nth; ++i) th.emplace_back(worker);
      for (auto& t : th) t.join();
    }
    if (err) std::rethrow_exception(err);

    std::vector<LevelCell> nxt;
    for (auto& o : outs)
      for (auto& [c, g] : o) nxt.push_back({std::move(c), std::move(g)});
    for (int b : bsize) res.max_block = std::max(res.max_block, b);
    long nK = 0, nJ = 0;
    for (uint32_t m : supp) {
      if (!(m & ~K)) ++nK;
      if (!(m & ~J)) ++nJ;
    }
    res.xsizes.insert(res.xsizes.begin(), static_cast<int>(nK / nJ));

    std::fill(seen.begin(), seen.end(), 0);
    for (auto& c : nxt)
      for (int w : c.cell.elements) {
        if (seen[w]) throw std::logic_error("left_cells: overlapping cells");
        seen[w] = 1;
      }
    if (use_star) {
      auto pairs = star_pairs(T, K);
      for (size_t i = 0; i < nxt.size(); ++i) {
        for (auto [s, t] : pairs) {
          if (star(T, nxt[i].cell.elements.front(), s, t) < 0) continue;
          std::vector<int> image;
          for (int w : nxt[i].cell.elements) image.push_back(star(T, w, s, t));
          if (seen[image.front()]) continue;
          LevelCell nc;
          nc.g = transfer_wgraph(T, nxt[i].g, image);
          nc.cell.elements = nc.g.elements;
          for (int w : nc.cell.elements) {
            if (seen[w]) throw std::logic_error("star image overlaps a known cell");
            seen[w] = 1;
          }
          nxt.push_back(std::move(nc));
        }
      }
    }
    for (size_t w = 0; w < supp.size(); ++w)
      if (!(supp[w] & ~K) && !seen[w]) throw std::logic_error("left_cells: elements not covered");
    std::sort(nxt.begin(), nxt.end(), [](const LevelCell& a, const LevelCell& b) {
      return a.cell.elements.front() < b.cell.elements.front();
    });
    cur = std::move(nxt);
  }
  res.cellid_.assign(T.size(), -1);
  for (size_t i = 0; i < cur.size(); ++i) {
    for (int w : cur[i].cell.elements) res.cellid_[w] = static_cast<int>(i);
    res.cells.push_back(cur[i].cell);
    if (opt.keep_wgraphs) res.wgraphs.push_back(std::move(cur[i].g));
  }
  return res;
}

WGraph wgraph_from_kl(KLCache& kl, const std::vector<int>& elements) {
  const ElementTable& T = kl.table();
  const WeightFunction& L = kl.weights();
  int r = T.group().rank();
  WGraph g;
  g.weights = L.weights;
  g.gens = (1u << r) - 1;
  g.elements = elements;
  std::sort(g.elements.begin(), g.elements.end());
  std::vector<int> pos(T.size(), -1);
  for (size_t i = 0; i < g.elements.size(); ++i) {
    pos[g.elements[i]] = static_cast<int>(i);
    g.I.push_back(T.left_descent_mask(g.elements[i]));
  }
  g.zero_maps.assign(r, {});
  for (int s = 0; s < r; ++s) {
    if (L[s] == 0) {
      for (int w : g.elements) {
        int z = pos[T.lmul(s, w)];
        if (z < 0) throw std::invalid_argument("wgraph_from_kl: set not closed under zero-weight generators");
        g.zero_maps[s].push_back(z);
      }
      continue;
    }
    for (int y : g.elements) {
      if (T.left_descent(s, y)) continue;
      int sy = T.lmul(s, y);
      if (pos[sy] >= 0) g.edges.push_back({s, pos[sy], pos[y], IntLaurent(1)});
      const PolyColumn& ml = kl.mlist(s, y);
      for (size_t i = 0; i < ml.idx.size(); ++i) {
        int x = ml.idx[i];
        if (pos[x] < 0) continue;
        int parity = (T.length(x) + T.length(y)) % 2;
        g.edges.push_back({s, pos[x], pos[y], parity ? ml.val[i] : -ml.val[i]});
      }
    }
  }
  std::sort(g.edges.begin(), g.edges.end(), [](const WGraphEdge& a, const WGraphEdge& b) {
    return std::tie(a.s, a.y, a.x) < std::tie(b.s, b.y, b.x);
  });
  return g;
}

VerifyResult wgraph_verify(const ElementTable& T, const WGraph& g) {
  using Vec = std::vector<IntLaurent>;
  int n = static_cast<int>(g.elements.size());
  int r = T.group().rank();
  const auto& cm = T.group().coxmat();
  auto fail = [](std::string w) { return VerifyResult{false, std::move(w)}; };
  std::vector<std::vector<std::vector<std::pair<int, const IntLaurent*>>>> col(
      r, std::vector<std::vector<std::pair<int, const IntLaurent*>>>(n));
  for (const auto& e : g.edges) {
    if (e.x < 0 || e.x >= n || e.y < 0 || e.y >= n || e.s < 0 || e.s >= r)
      return fail("edge index out of range");
    int Ls = g.weights[e.s];
    if (Ls <= 0) return fail("edge for zero-weight generator");
    if (!((g.I[e.x] >> e.s) & 1u) || ((g.I[e.y] >> e.s) & 1u))
      return fail("edge violates descent condition s in I(x), s not in I(y)");
    if (e.m.bar() != e.m) return fail("m not bar-invariant");
    if (!e.m.is_zero() && e.m.shift(Ls).min_exp() <= 0) return fail("e^L m not in Z[Gamma>0]");
    col[e.s][e.y].emplace_back(e.x, &e.m);
  }
  auto apply = [&](int s, const Vec& v) {
    Vec o(n);
    int Ls = g.weights[s];
    for (int y = 0; y < n; ++y) {
      if (v[y].is_zero()) continue;
      if (Ls == 0) {
        o[g.zero_maps[s][y]] += v[y];
      } else if ((g.I[y] >> s) & 1u) {
        o[y] -= v[y].shift(-Ls);
      } else {
        o[y] += v[y].shift(Ls);
        for (auto [x, m] : col[s][y]) o[x] += *m * v[y];
      }
    }
    return o;
  };
  std::vector<int> gens;
  for (int s = 0; s < r; ++s)
    if ((g.gens >> s) & 1u) gens.push_back(s);
  for (int s : gens)
    if (g.weights[s] == 0 && static_cast<int>(g.zero_maps[s].size()) != n)
      return fail("missing zero-weight bijection");
  for (int b = 0; b < n; ++b) {
    Vec e(n);
    e[b] = IntLaurent(1);
    for (int s : gens) {
      Vec a = apply(s, e), a2 = apply(s, a);
      int Ls = g.weights[s];
      IntLaurent d = mono(Ls) - mono(-Ls);
      for (int i = 0; i < n; ++i) {
        IntLaurent q = a2[i] - e[i];
        if (Ls > 0) q -= a[i] * d;
        if (!q.is_zero())
          return fail("quadratic relation fails for s=" + std::to_string(s) + " at vertex " +
                      std::to_string(b));
      }
    }
    for (size_t i = 0; i < gens.size(); ++i)
      for (size_t j = i + 1; j < gens.size(); ++j) {
        int s = gens[i], t = gens[j];
        int m = cm[s][t];
        if (m == 0) continue;
        Vec u = e, w = e;
        for (int k = 0; k < m; ++k) {
          u = apply(k % 2 == 0 ? s : t, u);
          w = apply(k % 2 == 0 ? t : s, w);
        }
        if (u != w)
          return fail("braid relation fails for (" + std::to_string(s) + "," + std::to_string(t) +
                      ") at vertex " + std::to_string(b));
      }
  }
  return {};
}

StarResult star_ops(const ElementTable& T, const WeightFunction& L, const std::vector<LeftCell>& cells,
                    uint32_t gens) {
  if (!equal_parameters_on(L, gens)) throw std::invalid_argument("star_ops: equal parameters required");
  std::vector<int> cid(T.size(), -1);
  for (size_t i = 0; i < cells.size(); ++i)
    for (int w : cells[i].elements) cid[w] = static_cast<int>(i);
  std::vector<int> parent(cells.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
  for (auto [s, t] : star_pairs(T, gens)) {
    for (size_t i = 0; i < cells.size(); ++i) {
      int inside = 0;
      int target = -2;
      for (int w : cells[i].elements) {
        int ws = star(T, w, s, t);
        if (ws < 0) continue;
        ++inside;
        int c = cid[ws];
        if (target == -2) target = c;
        if (c < 0 || c != target) throw std::logic_error("star image is not a single known cell");
      }
      if (inside == 0) continue;
      if (inside != static_cast<int>(cells[i].elements.size()))
        throw std::logic_error("cell meets D_R(s,t) partially");
      parent[find(static_cast<int>(i))] = find(target);
    }
  }
  std::map<int, std::vector<int>> orb;
  for (size_t i = 0; i < cells.size(); ++i) orb[find(static_cast<int>(i))].push_back(static_cast<int>(i));
  StarResult r;
  for (auto& [k, v] : orb) r.orbits.push_back(v);
  std::sort(r.orbits.begin(), r.orbits.end());
  return r;
}

DistinguishedReport distinguished(KLCache& kl, const std::vector<LeftCell>& cells) {
  DistinguishedReport rep;
  for (size_t i = 0; i < cells.size(); ++i) {
    int best = -1, bestd = 0, ties = 0;
    long bestn = 0;
    for (int y : cells[i].elements) {
      IntLaurent P = kl.pstar(0, y);
      if (P.is_zero()) continue;
      int d = -P.max_exp();
      if (best < 0 || d < bestd) {
        best = y;
        bestd = d;
        bestn = P.coeff(P.max_exp()).value();
        ties = 0;
      } else if (d == bestd) {
        ++ties;
      }
    }
    if (best < 0 || ties > 0)
      rep.bad_cells.push_back(static_cast<int>(i));
    else
      rep.D.push_back({best, bestd, bestn});
  }
  return rep;
}

}  // namespace cellkit
