#include "cellkit/leading.hpp"

#include "cellkit/cartan.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>

namespace cellkit {

namespace {

IntLaurent mono(int e, long c = 1) { return IntLaurent::monomial(CheckedInt(c), e); }
LaurentPolynomial cmono(int e, const CycScalar& c) { return LaurentPolynomial::monomial(c, e); }

LaurentPolynomial lp_galois(const LaurentPolynomial& f, int k) {
  std::vector<LaurentPolynomial::Term> t;
  for (const auto& [e, c] : f.terms()) t.emplace_back(e, c.galois(k));
  return LaurentPolynomial::from_terms(std::move(t));
}

LaurentPolynomial lp_scale(const LaurentPolynomial& f, const CycScalar& c) {
  if (c.is_zero()) return {};
  return f.scaled(c);
}

// Exact quotient num/den in Z[eps, eps^-1]; throws if den does not divide num.
IntLaurent exact_div(IntLaurent num, const IntLaurent& den) {
  if (den.is_zero()) throw std::domain_error("exact_div: division by zero");
  long lead = den.terms().back().second.value();
  int dtop = den.max_exp();
  std::vector<IntLaurent::Term> q;
  while (!num.is_zero()) {
    if (num.max_exp() - dtop < num.min_exp() - den.min_exp())
      throw std::logic_error("exact_div: not divisible");
    long c = num.terms().back().second.value();
    if (c % lead != 0) throw std::logic_error("exact_div: non-integral quotient");
    int e = num.max_exp() - dtop;
    q.emplace_back(e, CheckedInt(c / lead));
    num.add_scaled(den, CheckedInt(-(c / lead)), e);
  }
  return IntLaurent::from_terms(std::move(q));
}

int weight_of_word(const Word& w, const WeightFunction& L) {
  int s = 0;
  for (int x : w) s += L[x];
  return s;
}

}  // namespace

template <class P>
std::vector<P> HeckeRep<P>::apply(int s, const std::vector<P>& v) const {
  std::vector<P> o(dim);
  for (int y = 0; y < dim; ++y) {
    if (v[y].is_zero()) continue;
    for (const auto& [x, a] : cols[s][y]) o[x] += a * v[y];
  }
  return o;
}

template <class P>
P HeckeRep<P>::trace(const Word& letters) const {
  P t;
  for (int b = 0; b < dim; ++b) {
    std::vector<P> v(dim);
    v[b] = P(1);
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) v = apply(*it, v);
    t += v[b];
  }
  return t;
}

template struct HeckeRep<IntLaurent>;
template struct HeckeRep<LaurentPolynomial>;

HeckeRep<IntLaurent> hecke_rep(const WGraph& g, int rank) {
  HeckeRep<IntLaurent> r;
  int n = static_cast<int>(g.elements.size());
  r.dim = n;
  r.cols.assign(rank, std::vector<std::vector<std::pair<int, IntLaurent>>>(n));
  for (int s = 0; s < rank; ++s) {
    if (!((g.gens >> s) & 1u)) continue;
    int Ls = g.weights[s];
    for (int y = 0; y < n; ++y) {
      if (Ls == 0)
        r.cols[s][y].emplace_back(g.zero_maps[s][y], IntLaurent(1));
      else if ((g.I[y] >> s) & 1u)
        r.cols[s][y].emplace_back(y, -mono(-Ls));
      else
        r.cols[s][y].emplace_back(y, mono(Ls));
    }
  }
  for (const auto& e : g.edges) r.cols[e.s][e.y].emplace_back(e.x, e.m);
  return r;
}

HeckeRep<LaurentPolynomial> reflection_rep(const CoxeterGroup& W, const WeightFunction& L) {
  int r = W.rank();
  HeckeRep<LaurentPolynomial> rep;
  rep.dim = r;
  rep.cols.assign(r, std::vector<std::vector<std::pair<int, LaurentPolynomial>>>(r));
  const auto& cm = W.coxmat();
  for (int s = 0; s < r; ++s)
    for (int t = 0; t < r; ++t) {
      if (s == t) {
        rep.cols[s][s].emplace_back(s, cmono(-L[s], CycScalar(-1)));
        continue;
      }
      rep.cols[s][t].emplace_back(t, cmono(L[s], CycScalar(1)));
      int m = cm[s][t];
      if (m == 2) continue;
      if (m == 0) throw std::invalid_argument("reflection_rep: infinite bond");
      LaurentPolynomial c(CycScalar(1));
      if (s < t)
        c = cmono(L[s] - L[t], CycScalar(1)) + cmono(L[t] - L[s], CycScalar(1)) +
            LaurentPolynomial(CycScalar::two_cos(m, 1));
      rep.cols[s][t].emplace_back(s, c);
    }
  return rep;
}

template <class P>
bool hecke_rep_verify(const HeckeRep<P>& r, const CoxeterGroup& W, const WeightFunction& L) {
  int n = r.dim, rank = W.rank();
  const auto& cm = W.coxmat();
  for (int b = 0; b < n; ++b) {
    std::vector<P> e(n);
    e[b] = P(1);
    for (int s = 0; s < rank; ++s) {
      std::vector<P> a = r.apply(s, e), a2 = r.apply(s, a);
      P d = P::monomial(1, L[s]) - P::monomial(1, -L[s]);
      for (int i = 0; i < n; ++i)
        if (a2[i] - e[i] - a[i] * d != P()) return false;
    }
    for (int s = 0; s < rank; ++s)
      for (int t = s + 1; t < rank; ++t) {
        std::vector<P> u = e, w = e;
        for (int k = 0; k < cm[s][t]; ++k) {
          u = r.apply(k % 2 == 0 ? s : t, u);
          w = r.apply(k % 2 == 0 ? t : s, w);
        }
        if (u != w) return false;
      }
  }
  return true;
}

template bool hecke_rep_verify(const HeckeRep<IntLaurent>&, const CoxeterGroup&, const WeightFunction&);
template bool hecke_rep_verify(const HeckeRep<LaurentPolynomial>&, const CoxeterGroup&, const WeightFunction&);

ClassPolynomials::ClassPolynomials(const ElementTable& T, const WeightFunction& L, const OrdinaryCharTable& ct) {
  int n = T.size(), rank = T.group().rank();
  f_.resize(n);
  std::vector<int> minlen(ct.nclasses());
  for (int c = 0; c < ct.nclasses(); ++c) minlen[c] = T.length(ct.reps[c]);
  std::vector<char> done(n, 0);
  for (int w = 0; w < n; ++w) {
    if (done[w]) continue;
    int len = T.length(w);
    std::vector<int> orbit{w};
    done[w] = 1;
    for (size_t i = 0; i < orbit.size(); ++i)
      for (int s = 0; s < rank; ++s) {
        int y = T.lmul(s, T.rmul(orbit[i], s));
        if (T.length(y) == len && !done[y]) {
          done[y] = 1;
          orbit.push_back(y);
        }
      }
    std::vector<std::pair<int, IntLaurent>> f;
    int c = ct.class_of[w];
    if (len == minlen[c]) {
      f.emplace_back(c, IntLaurent(1));
    } else {
      bool found = false;
      for (int x : orbit) {
        for (int s = 0; s < rank && !found; ++s) {
          int sx = T.lmul(s, x), sxs = T.rmul(sx, s);
          if (T.length(sxs) >= len) continue;
          // T_x = T_s T_sxs T_s
          IntLaurent u = mono(2 * L[s]);
          std::map<int, IntLaurent> acc;
          for (const auto& [k, p] : f_[sx]) acc[k] += (u - IntLaurent(1)) * p;
          for (const auto& [k, p] : f_[sxs]) acc[k] += u * p;
          for (auto& [k, p] : acc)
            if (!p.is_zero()) f.emplace_back(k, std::move(p));
          found = true;
        }
        if (found) break;
      }
      if (!found) throw std::logic_error("class_polynomials: no length-reducing conjugation found");
    }
    for (int x : orbit) f_[x] = f;
  }
}

namespace {

// Character values of the module at eps = 1 on the class representatives.
std::vector<CycScalar> chars_at_one(const ElementTable& T, const OrdinaryCharTable& ct, const HeckeRep<IntLaurent>& rep) {
  std::vector<std::vector<std::vector<std::pair<int, CheckedInt>>>> cols(rep.cols.size());
  for (size_t s = 0; s < rep.cols.size(); ++s) {
    cols[s].resize(rep.cols[s].size());
    for (size_t y = 0; y < rep.cols[s].size(); ++y)
      for (const auto& [x, a] : rep.cols[s][y]) cols[s][y].emplace_back(x, a.eval_one());
  }
  std::vector<CycScalar> chi;
  for (int c = 0; c < ct.nclasses(); ++c) {
    Word letters = T.word(ct.reps[c]);
    CheckedInt t(0);
    for (int b = 0; b < rep.dim; ++b) {
      std::vector<CheckedInt> v(rep.dim);
      v[b] = 1;
      for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
        std::vector<CheckedInt> o(rep.dim);
        for (int y = 0; y < rep.dim; ++y) {
          if (v[y].value() == 0) continue;
          for (const auto& [x, a] : cols[*it][y]) o[x] += a * v[y];
        }
        v.swap(o);
      }
      t += v[b];
    }
    chi.emplace_back(t.value());
  }
  return chi;
}

}  // namespace

std::vector<int> module_multiplicities(const ElementTable& T, const OrdinaryCharTable& ct, const WGraph& g) {
  HeckeRep<IntLaurent> rep = hecke_rep(g, T.group().rank());
  std::vector<CycScalar> chi = chars_at_one(T, ct, rep);
  std::vector<int> m;
  for (const CycScalar& x : decompose(ct, chi)) {
    if (!x.is_integer() || cyc_sign(x) < 0) throw std::logic_error("module_multiplicities: not a character");
    m.push_back(static_cast<int>(x.rational().get_num().get_si()));
  }
  return m;
}

namespace {

struct Module {
  std::vector<long> mult;
  std::vector<LaurentPolynomial> vals;  // trace(T~_{w_C})
};

std::vector<long> mults_from_chars(const OrdinaryCharTable& ct, const std::vector<CycScalar>& chi) {
  std::vector<long> m;
  for (const CycScalar& x : decompose(ct, chi)) {
    if (!x.is_integer() || cyc_sign(x) < 0) throw std::logic_error("hecke_chartable: module is not a character");
    m.push_back(x.rational().get_num().get_si());
  }
  return m;
}

std::vector<long> mults_of(const OrdinaryCharTable& ct, const std::vector<LaurentPolynomial>& vals) {
  std::vector<CycScalar> chi;
  for (const auto& v : vals) chi.push_back(v.eval_one());
  return mults_from_chars(ct, chi);
}

// Incremental row echelon form over Q.
class RowSpace {
 public:
  explicit RowSpace(int n) : n_(n) {}
  int rank() const { return static_cast<int>(rows_.size()); }
  // basis of {y : <row, y> = 0 for all rows}
  std::vector<std::vector<Rational>> kernel() const {
    std::vector<std::vector<Rational>> k;
    for (int f = 0; f < n_; ++f) {
      if (std::find(piv_.begin(), piv_.end(), f) != piv_.end()) continue;
      std::vector<Rational> v(n_, Rational(0));
      v[f] = 1;
      for (size_t i = 0; i < rows_.size(); ++i) v[piv_[i]] = -rows_[i][f];
      k.push_back(std::move(v));
    }
    return k;
  }
  bool add(const std::vector<long>& v) {
    std::vector<Rational> r(v.begin(), v.end());
    for (size_t i = 0; i < rows_.size(); ++i) {
      const Rational& a = r[piv_[i]];
      if (sgn(a) == 0) continue;
      Rational f = a;
      for (int j = 0; j < n_; ++j) r[j] -= f * rows_[i][j];
    }
    int p = 0;
    while (p < n_ && sgn(r[p]) == 0) ++p;
    if (p == n_) return false;
    Rational inv = 1 / r[p];
    for (auto& x : r) x *= inv;
    for (size_t i = 0; i < rows_.size(); ++i) {
      Rational f = rows_[i][p];
      if (sgn(f) == 0) continue;
      for (int j = 0; j < n_; ++j) rows_[i][j] -= f * r[j];
    }
    rows_.push_back(std::move(r));
    piv_.push_back(p);
    return true;
  }

 private:
  int n_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<int> piv_;
};

// Inverse of a square rational matrix.
std::vector<std::vector<Rational>> invert(std::vector<std::vector<Rational>> a) {
  int n = static_cast<int>(a.size());
  std::vector<std::vector<Rational>> b(n, std::vector<Rational>(n, Rational(0)));
  for (int i = 0; i < n; ++i) b[i][i] = 1;
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && sgn(a[p][c]) == 0) ++p;
    if (p == n) throw std::logic_error("invert: singular matrix");
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    Rational inv = 1 / a[c][c];
    for (int j = 0; j < n; ++j) {
      a[c][j] *= inv;
      b[c][j] *= inv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || sgn(a[r][c]) == 0) continue;
      Rational f = a[r][c];
      for (int j = 0; j < n; ++j) {
        a[r][j] -= f * a[c][j];
        b[r][j] -= f * b[c][j];
      }
    }
  }
  return b;
}

int find_row(const OrdinaryCharTable& ct, const std::vector<CycScalar>& row) {
  for (int i = 0; i < ct.nirr(); ++i)
    if (ct.values[i] == row) return i;
  return -1;
}

// Whether the w0-eigenspace pieces of a module with multiplicities mult enlarge the span.
bool split_helps(RowSpace space, const std::vector<long>& mult, const std::vector<IntLaurent>& z) {
  std::vector<IntLaurent> zs;
  for (size_t e = 0; e < mult.size(); ++e)
    if (mult[e] && std::find(zs.begin(), zs.end(), z[e]) == zs.end()) zs.push_back(z[e]);
  if (zs.size() < 2) return false;
  bool grew = false;
  for (const auto& v : zs) {
    std::vector<long> piece(mult.size(), 0);
    for (size_t e = 0; e < mult.size(); ++e)
      if (mult[e] && z[e] == v) piece[e] = mult[e];
    grew = space.add(piece) || grew;
  }
  return grew;
}

// Pieces of a cell module on which the central element T~_{w0} acts by distinct scalars.
std::vector<Module> w0_split(const ElementTable& T, const OrdinaryCharTable& ct, const HeckeRep<IntLaurent>& rep,
                             const Module& m, const std::vector<IntLaurent>& z) {
  std::vector<IntLaurent> zs;
  std::vector<int> group(ct.nirr(), -1);
  for (int e = 0; e < ct.nirr(); ++e) {
    if (m.mult[e] == 0) continue;
    auto it = std::find(zs.begin(), zs.end(), z[e]);
    group[e] = static_cast<int>(it - zs.begin());
    if (it == zs.end()) zs.push_back(z[e]);
  }
  int r = static_cast<int>(zs.size());
  if (r < 2) return {};
  Word w0 = T.word(T.longest());
  std::vector<Module> out(r);
  for (int a = 0; a < r; ++a) {
    out[a].mult.assign(ct.nirr(), 0);
    for (int e = 0; e < ct.nirr(); ++e)
      if (group[e] == a) out[a].mult[e] = m.mult[e];
  }
  // Lagrange basis: prod_{b != a} (x - z_b) / (z_a - z_b)
  std::vector<std::vector<IntLaurent>> num(r);
  std::vector<IntLaurent> den(r, IntLaurent(1));
  for (int a = 0; a < r; ++a) {
    std::vector<IntLaurent> p{IntLaurent(1)};
    for (int b = 0; b < r; ++b) {
      if (b == a) continue;
      std::vector<IntLaurent> q(p.size() + 1);
      for (size_t j = 0; j < p.size(); ++j) {
        q[j + 1] += p[j];
        q[j] -= p[j] * zs[b];
      }
      p = std::move(q);
      den[a] = den[a] * (zs[a] - zs[b]);
    }
    num[a] = std::move(p);
  }
  for (int c = 0; c < ct.nclasses(); ++c) {
    Word word = T.word(ct.reps[c]);
    std::vector<IntLaurent> tau;
    for (int j = 0; j < r; ++j) {
      tau.push_back(rep.trace(word));
      word.insert(word.end(), w0.begin(), w0.end());
    }
    for (int a = 0; a < r; ++a) {
      IntLaurent s;
      for (int j = 0; j < r; ++j) s += num[a][j] * tau[j];
      out[a].vals.push_back(to_cyc(exact_div(s, den[a])));
    }
  }
  return out;
}


HeckeRep<LaurentPolynomial> to_cyc_rep(const HeckeRep<IntLaurent>& r) {
  HeckeRep<LaurentPolynomial> o;
  o.dim = r.dim;
  o.cols.resize(r.cols.size());
  for (size_t s = 0; s < r.cols.size(); ++s) {
    o.cols[s].resize(r.cols[s].size());
    for (size_t y = 0; y < r.cols[s].size(); ++y)
      for (const auto& [x, a] : r.cols[s][y]) o.cols[s][y].emplace_back(x, to_cyc(a));
  }
  return o;
}

// T~_s -> -T~_s^-1 = -T~_s + (eps^L(s) - eps^-L(s))
HeckeRep<LaurentPolynomial> twist_rep(const HeckeRep<LaurentPolynomial>& r, const WeightFunction& L) {
  HeckeRep<LaurentPolynomial> o = r;
  for (size_t s = 0; s < o.cols.size(); ++s) {
    LaurentPolynomial d = cmono(L[s], CycScalar(1)) - cmono(-L[s], CycScalar(1));
    for (int y = 0; y < o.dim; ++y) {
      bool diag = false;
      for (auto& [x, a] : o.cols[s][y]) {
        a = -a;
        if (x == y) {
          a += d;
          diag = true;
        }
      }
      if (!diag && !d.is_zero()) o.cols[s][y].emplace_back(y, d);
    }
  }
  return o;
}

struct Parabolic {
  std::vector<int> gens;  // global generator of each local generator
  std::unique_ptr<CoxeterGroup> W;
  std::unique_ptr<ElementTable> T;
  WeightFunction L;
  OrdinaryCharTable ct;
  std::vector<int> global;  // local element -> element of the big group
  std::vector<int> X;       // minimal length left coset representatives x W_J
};

Parabolic make_parabolic(const ElementTable& T, const WeightFunction& L, const std::vector<int>& J) {
  Parabolic P;
  P.gens = J;
  P.W = std::make_unique<CoxeterGroup>(build(restrict_cartan(T.group().cartan(), J)));
  P.T = std::make_unique<ElementTable>(*P.W);
  for (int j : J) P.L.weights.push_back(L[j]);
  P.ct = ordinary_chartable(*P.T);
  for (int h = 0; h < P.T->size(); ++h) {
    Word w;
    for (int s : P.T->word(h)) w.push_back(J[s]);
    P.global.push_back(T.index_of_word(w));
  }
  for (int x = 0; x < T.size(); ++x) {
    bool min = true;
    for (int j : J)
      if (T.length(T.rmul(x, j)) < T.length(x)) min = false;
    if (min) P.X.push_back(x);
  }
  return P;
}

// Multiplicities of the induced character of a module of the parabolic subalgebra.
std::vector<long> induced_mults(const ElementTable& T, const OrdinaryCharTable& ct, const Parabolic& P,
                                const HeckeRep<LaurentPolynomial>& r) {
  std::vector<CycScalar> chiJ;
  for (int c = 0; c < P.ct.nclasses(); ++c) chiJ.push_back(r.trace(P.T->word(P.ct.reps[c])).eval_one());
  std::vector<CycScalar> ind(ct.nclasses(), CycScalar(0));
  for (int h = 0; h < P.T->size(); ++h) ind[ct.class_of[P.global[h]]] += chiJ[P.ct.class_of[h]];
  for (int c = 0; c < ct.nclasses(); ++c)
    ind[c] *= CycScalar(Rational(ct.order) / Rational(ct.sizes[c] * static_cast<long>(P.T->size())));
  std::vector<long> m;
  for (const CycScalar& x : decompose(ct, ind)) {
    if (!x.is_integer()) throw std::logic_error("induced_mults: not a character");
    m.push_back(x.rational().get_num().get_si());
  }
  return m;
}

// Basis x (x) e_i for x in X_J.
HeckeRep<LaurentPolynomial> induce(const ElementTable& T, const WeightFunction& L, const Parabolic& P,
                                   const HeckeRep<LaurentPolynomial>& r) {
  int rank = T.group().rank(), k = static_cast<int>(P.X.size()), d = r.dim;
  std::vector<int> pos(T.size(), -1), local(rank, -1);
  for (int i = 0; i < k; ++i) pos[P.X[i]] = i;
  for (size_t j = 0; j < P.gens.size(); ++j) local[P.gens[j]] = static_cast<int>(j);
  HeckeRep<LaurentPolynomial> o;
  o.dim = k * d;
  o.cols.assign(rank, std::vector<std::vector<std::pair<int, LaurentPolynomial>>>(o.dim));
  for (int s = 0; s < rank; ++s) {
    LaurentPolynomial diff = cmono(L[s], CycScalar(1)) - cmono(-L[s], CycScalar(1));
    for (int i = 0; i < k; ++i) {
      int x = P.X[i], sx = T.lmul(s, x);
      if (pos[sx] >= 0) {
        bool down = T.length(sx) < T.length(x);
        for (int a = 0; a < d; ++a) {
          auto& col = o.cols[s][i * d + a];
          col.emplace_back(pos[sx] * d + a, LaurentPolynomial(CycScalar(1)));
          if (down && !diff.is_zero()) col.emplace_back(i * d + a, diff);
        }
      } else {
        int t = -1;
        for (int j : P.gens)
          if (T.rmul(x, j) == sx) t = local[j];
        if (t < 0) throw std::logic_error("induce: coset representative without Deodhar reflection");
        for (int a = 0; a < d; ++a)
          for (const auto& [b, v] : r.cols[t][a]) o.cols[s][i * d + a].emplace_back(i * d + b, v);
      }
    }
  }
  return o;
}


// Arithmetic in F_p, p = 2^31 - 1.
constexpr uint64_t kP = 2147483647ULL;
uint64_t mulp(uint64_t a, uint64_t b) { return a * b % kP; }
uint64_t powp(uint64_t a, uint64_t e) {
  uint64_t r = 1;
  for (a %= kP; e; e >>= 1, a = mulp(a, a))
    if (e & 1) r = mulp(r, a);
  return r;
}
uint64_t invp(uint64_t a) { return powp(a, kP - 2); }
uint64_t modp(long long v) { return static_cast<uint64_t>(((v % static_cast<long long>(kP)) + kP) % kP); }

using Poly = std::vector<uint64_t>;  // coefficients, low degree first

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mod(Poly a, const Poly& m) {
  trim(a);
  uint64_t li = invp(m.back());
  while (a.size() >= m.size()) {
    uint64_t c = mulp(a.back(), li);
    size_t sh = a.size() - m.size();
    for (size_t i = 0; i < m.size(); ++i) a[sh + i] = (a[sh + i] + kP - mulp(c, m[i])) % kP;
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulp(a[i], b[j])) % kP;
  return poly_mod(r, m);
}

Poly poly_powmod(Poly a, uint64_t e, const Poly& m) {
  Poly r{1};
  a = poly_mod(a, m);
  for (; e; e >>= 1, a = poly_mulmod(a, a, m))
    if (e & 1) r = poly_mulmod(r, a, m);
  return r;
}

Poly poly_gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    uint64_t li = invp(a.back());
    for (auto& c : a) c = mulp(c, li);
  }
  return a;
}

// Roots of a monic squarefree polynomial that splits over F_p (Cantor-Zassenhaus).
bool split_roots(const Poly& f, std::mt19937_64& rng, std::vector<uint64_t>& out) {
  if (f.size() == 2) {
    out.push_back((kP - f[0]) % kP);
    return true;
  }
  for (int attempt = 0; attempt < 64; ++attempt) {
    Poly g = poly_powmod(Poly{rng() % kP, 1}, (kP - 1) / 2, f);
    if (g.empty()) g = {kP - 1};
    else g[0] = (g[0] + kP - 1) % kP;
    Poly d = poly_gcd(f, g);
    if (d.size() > 1 && d.size() < f.size()) {
      Poly q;  // f / d
      {
        Poly a = f;
        q.assign(f.size() - d.size() + 1, 0);
        while (a.size() >= d.size()) {
          uint64_t c = a.back();
          size_t sh = a.size() - d.size();
          q[sh] = c;
          for (size_t i = 0; i < d.size(); ++i) a[sh + i] = (a[sh + i] + kP - mulp(c, d[i])) % kP;
          trim(a);
        }
      }
      return split_roots(d, rng, out) && split_roots(q, rng, out);
    }
  }
  return false;
}

// Solve A x = b over F_p; A is n x n. Returns false if singular.
bool solve_p(std::vector<std::vector<uint64_t>> A, std::vector<uint64_t>& b) {
  int n = static_cast<int>(b.size());
  for (int c = 0; c < n; ++c) {
    int piv = c;
    while (piv < n && A[piv][c] == 0) ++piv;
    if (piv == n) return false;
    std::swap(A[piv], A[c]);
    std::swap(b[piv], b[c]);
    uint64_t inv = invp(A[c][c]);
    for (int j = 0; j < n; ++j) A[c][j] = mulp(A[c][j], inv);
    b[c] = mulp(b[c], inv);
    for (int r = 0; r < n; ++r) {
      if (r == c || A[r][c] == 0) continue;
      uint64_t f = A[r][c];
      for (int j = 0; j < n; ++j) A[r][j] = (A[r][j] + kP - mulp(f, A[c][j])) % kP;
      b[r] = (b[r] + kP - mulp(f, b[c])) % kP;
    }
  }
  return true;
}

long lift(uint64_t x) { return x > kP / 2 ? static_cast<long>(x) - static_cast<long>(kP) : static_cast<long>(x); }

// Character of the constituent E of a multiplicity-free integral module, E being the only
// constituent of its dimension. At eps = e in F_p the operator sum_w T~_w X T~_{w^-1}
// (X of rank one) commutes with H and acts by distinct scalars on the constituents; its
// eigenspaces give the projection onto E. Values are interpolated in e.
std::optional<std::vector<IntLaurent>> isolate(const ElementTable& T, const WeightFunction& L,
                                               const OrdinaryCharTable& ct, const HeckeRep<IntLaurent>& rep,
                                               const std::vector<long>& mult, int E) {
  int nirr = ct.nirr(), ncl = ct.nclasses(), n = rep.dim, rank = T.group().rank();
  std::vector<int> cons;
  for (int f = 0; f < nirr; ++f) {
    if (mult[f] > 1) return std::nullopt;
    if (mult[f] == 1) cons.push_back(f);
  }
  if (mult[E] != 1) return std::nullopt;
  for (int f : cons)
    if (f != E && ct.dim(f) == ct.dim(E)) return std::nullopt;
  int k = static_cast<int>(cons.size());
  std::vector<Word> words;
  std::vector<int> Lc;
  int Lmax = 0;
  for (int c = 0; c < ncl; ++c) {
    words.push_back(T.word(ct.reps[c]));
    Lc.push_back(weight_of_word(words.back(), L));
    Lmax = std::max(Lmax, Lc.back());
  }
  int K = 2 * Lmax + 1;
  std::mt19937_64 rng(0x5eed);
  std::vector<uint64_t> pts;
  std::vector<std::vector<uint64_t>> val(ncl);
  using Sparse = std::vector<std::vector<std::pair<int, uint64_t>>>;
  for (uint64_t e = 2; static_cast<int>(pts.size()) < K && e < 2000; ++e) {
    uint64_t ei = invp(e);
    std::vector<Sparse> M(rank, Sparse(n));
    for (int s = 0; s < rank; ++s)
      for (int y = 0; y < n; ++y)
        for (const auto& [x, a] : rep.cols[s][y]) {
          uint64_t v = 0;
          for (const auto& [ex, cf] : a.terms())
            v = (v + mulp(modp(cf.value()), powp(ex >= 0 ? e : ei, static_cast<uint64_t>(std::abs(ex))))) % kP;
          M[s][y].emplace_back(x, v);
        }
    auto apply = [&](int s, const std::vector<uint64_t>& v) {
      std::vector<uint64_t> o(n, 0);
      for (int y = 0; y < n; ++y)
        if (v[y])
          for (const auto& [x, a] : M[s][y]) o[x] = (o[x] + mulp(a, v[y])) % kP;
      return o;
    };
    auto apply_row = [&](const std::vector<uint64_t>& r, int s) {
      std::vector<uint64_t> o(n, 0);
      for (int y = 0; y < n; ++y)
        for (const auto& [x, a] : M[s][y]) o[y] = (o[y] + mulp(r[x], a)) % kP;
      return o;
    };
    std::vector<uint64_t> u(n), v(n);
    for (auto& x : u) x = rng() % kP;
    for (auto& x : v) x = rng() % kP;
    // a_w = T~_w u, b_w = v^t T~_{w^-1}
    std::vector<std::vector<uint64_t>> aw(T.size()), bw(T.size());
    aw[0] = u;
    bw[0] = v;
    std::vector<std::vector<uint64_t>> Phi(n, std::vector<uint64_t>(n, 0));
    for (int w = 0; w < T.size(); ++w) {
      if (w > 0) {
        int s = T.min_left_descent(w), w1 = T.lmul(s, w);
        aw[w] = apply(s, aw[w1]);
        bw[w] = apply_row(bw[w1], s);
      }
      for (int i = 0; i < n; ++i) {
        if (!aw[w][i]) continue;
        for (int j = 0; j < n; ++j) Phi[i][j] = (Phi[i][j] + mulp(aw[w][i], bw[w][j])) % kP;
      }
    }
    // minimal polynomial of Phi from a Krylov sequence
    std::vector<std::vector<uint64_t>> kry{std::vector<uint64_t>(n)};
    for (auto& x : kry[0]) x = rng() % kP;
    auto matvec = [&](const std::vector<std::vector<uint64_t>>& A, const std::vector<uint64_t>& x) {
      std::vector<uint64_t> o(n, 0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) o[i] = (o[i] + mulp(A[i][j], x[j])) % kP;
      return o;
    };
    for (int j = 0; j < k; ++j) kry.push_back(matvec(Phi, kry.back()));
    // sum_{j<k} m_j Phi^j z = -Phi^k z, least squares free: use the first k rows after a random projection
    std::vector<std::vector<uint64_t>> A(k, std::vector<uint64_t>(k, 0));
    std::vector<uint64_t> rhs(k, 0);
    for (int r = 0; r < k; ++r) {
      std::vector<uint64_t> proj(n);
      for (auto& x : proj) x = rng() % kP;
      for (int j = 0; j <= k; ++j) {
        uint64_t d = 0;
        for (int i = 0; i < n; ++i) d = (d + mulp(proj[i], kry[j][i])) % kP;
        if (j < k) A[r][j] = d;
        else rhs[r] = (kP - d) % kP;
      }
    }
    if (!solve_p(A, rhs)) continue;
    Poly mp(rhs.begin(), rhs.end());
    mp.push_back(1);
    {
      // the relation must hold on the whole Krylov vector
      bool ok = true;
      for (int i = 0; i < n && ok; ++i) {
        uint64_t t = kry[k][i];
        for (int j = 0; j < k; ++j) t = (t + mulp(mp[j], kry[j][i])) % kP;
        ok = t == 0;
      }
      if (!ok) continue;
    }
    std::vector<uint64_t> roots;
    if (!split_roots(mp, rng, roots) || static_cast<int>(roots.size()) != k) continue;
    std::sort(roots.begin(), roots.end());
    if (std::adjacent_find(roots.begin(), roots.end()) != roots.end()) continue;
    int target = -1;
    std::vector<std::vector<std::vector<uint64_t>>> proj(k);
    std::vector<int> dims;
    for (int a = 0; a < k; ++a) {
      std::vector<std::vector<uint64_t>> P(n, std::vector<uint64_t>(n, 0));
      for (int i = 0; i < n; ++i) P[i][i] = 1;
      for (int b = 0; b < k; ++b) {
        if (b == a) continue;
        uint64_t inv = invp((roots[a] + kP - roots[b]) % kP);
        std::vector<std::vector<uint64_t>> Q(n, std::vector<uint64_t>(n, 0));
        for (int i = 0; i < n; ++i)
          for (int l = 0; l < n; ++l) {
            if (!P[i][l]) continue;
            for (int j = 0; j < n; ++j) {
              uint64_t m = (Phi[l][j] + (l == j ? kP - roots[b] : 0)) % kP;
              Q[i][j] = (Q[i][j] + mulp(P[i][l], m)) % kP;
            }
          }
        for (auto& row : Q)
          for (auto& x : row) x = mulp(x, inv);
        P = std::move(Q);
      }
      uint64_t tr = 0;
      for (int i = 0; i < n; ++i) tr = (tr + P[i][i]) % kP;
      dims.push_back(static_cast<int>(lift(tr)));
      if (dims.back() == ct.dim(E)) target = a;
      proj[a] = std::move(P);
    }
    std::vector<int> want;
    for (int f : cons) want.push_back(ct.dim(f));
    std::vector<int> got = dims;
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    if (want != got || target < 0) continue;
    const auto& P = proj[target];
    pts.push_back(e);
    for (int c = 0; c < ncl; ++c) {
      uint64_t tr = 0;
      for (int j = 0; j < n; ++j) {
        std::vector<uint64_t> col(n);
        for (int i = 0; i < n; ++i) col[i] = P[i][j];
        for (auto it = words[c].rbegin(); it != words[c].rend(); ++it) col = apply(*it, col);
        tr = (tr + col[j]) % kP;
      }
      val[c].push_back(tr);
    }
  }
  if (static_cast<int>(pts.size()) < K) return std::nullopt;
  std::vector<IntLaurent> out;
  for (int c = 0; c < ncl; ++c) {
    // e^{L_c} X(e) is a polynomial of degree <= 2 L_c
    int deg = 2 * Lc[c];
    std::vector<std::vector<uint64_t>> A(deg + 1, std::vector<uint64_t>(deg + 1));
    std::vector<uint64_t> b(deg + 1);
    for (int i = 0; i <= deg; ++i) {
      for (int j = 0; j <= deg; ++j) A[i][j] = powp(pts[i], j);
      b[i] = mulp(val[c][i], powp(pts[i], Lc[c]));
    }
    if (!solve_p(A, b)) return std::nullopt;
    // remaining points check the interpolation
    for (size_t i = deg + 1; i < pts.size(); ++i) {
      uint64_t t = 0;
      for (int j = deg; j >= 0; --j) t = (mulp(t, pts[i]) + b[j]) % kP;
      if (t != mulp(val[c][i], powp(pts[i], Lc[c]))) return std::nullopt;
    }
    std::vector<IntLaurent::Term> terms;
    for (int j = 0; j <= deg; ++j)
      if (b[j]) terms.emplace_back(j - Lc[c], CheckedInt(lift(b[j])));
    out.push_back(IntLaurent::from_terms(std::move(terms)));
  }
  for (int c = 0; c < ncl; ++c)
    if (to_cyc(out[c]).eval_one() != ct.values[E][c]) return std::nullopt;
  return out;
}

}  // namespace

HeckeCharTable hecke_chartable_from_cells(const ElementTable& T, const WeightFunction& L,
                                          const OrdinaryCharTable& ct, const CellResult& cells) {
  const CoxeterGroup& W = T.group();
  int nirr = ct.nirr(), ncl = ct.nclasses(), rank = W.rank();
  if (cells.wgraphs.size() != cells.cells.size())
    throw std::invalid_argument("hecke_chartable: cell W-graphs required");
  std::vector<Module> pool;
  RowSpace space(nirr);
  std::vector<int> chosen;
  auto offer = [&](Module m) {
    pool.push_back(std::move(m));
    if (space.add(pool.back().mult)) chosen.push_back(static_cast<int>(pool.size()) - 1);
  };

  // scalar of T~_{w0} on E when w0 is central
  bool central = ct.sizes[ct.class_of[T.longest()]] == 1;
  std::vector<IntLaurent> z(nirr);
  if (central) {
    int cw0 = ct.class_of[T.longest()];
    std::map<int, int> refl;  // class -> weight
    for (int s = 0; s < rank; ++s) refl[ct.class_of[T.index_of_word({s})]] = L[s];
    for (int e = 0; e < nirr; ++e) {
      CycScalar d(ct.dim(e)), k(0);
      for (auto [c, l] : refl) k += CycScalar(ct.sizes[c] * l) * ct.values[e][c];
      k /= d;
      CycScalar kappa = ct.values[e][cw0] / d;
      if (!k.is_integer() || !kappa.is_integer()) throw std::logic_error("hecke_chartable: bad central character");
      z[e] = mono(static_cast<int>(k.rational().get_num().get_si()), kappa.rational().get_num().get_si());
    }
  }

  // isomorphic modules add nothing: the character is determined by the multiplicities
  std::vector<std::pair<HeckeRep<IntLaurent>, std::vector<long>>> cell_reps;
  std::set<std::vector<long>> seen;
  for (size_t i = 0; i < cells.cells.size(); ++i) {
    HeckeRep<IntLaurent> rep = hecke_rep(cells.wgraphs[i], rank);
    Module m;
    m.mult = mults_from_chars(ct, chars_at_one(T, ct, rep));
    if (!seen.insert(m.mult).second) continue;
    cell_reps.emplace_back(rep, m.mult);
    // modules in the span of the pool add nothing to the table
    bool split = central && space.rank() < nirr && split_helps(space, m.mult, z);
    if (!split && !RowSpace(space).add(m.mult)) continue;
    for (int c = 0; c < ncl; ++c) m.vals.push_back(to_cyc(rep.trace(T.word(ct.reps[c]))));
    std::vector<Module> pieces;
    if (split) pieces = w0_split(T, ct, rep, m, z);
    offer(std::move(m));
    for (auto& p : pieces) offer(std::move(p));
  }
  {
    HeckeRep<LaurentPolynomial> rr = reflection_rep(W, L);
    if (hecke_rep_verify(rr, W, L)) {
      Module m;
      for (int c = 0; c < ncl; ++c) m.vals.push_back(rr.trace(T.word(ct.reps[c])));
      m.mult = mults_of(ct, m.vals);
      offer(std::move(m));
    }
  }

  // closure under the sign twist T~_s -> -T~_s^-1 and Galois conjugation
  std::vector<int> sgnv;
  for (int c = 0; c < ncl; ++c) sgnv.push_back(T.length(ct.reps[c]) % 2 ? -1 : 1);
  std::vector<int> tw(nirr);
  for (int e = 0; e < nirr; ++e) {
    std::vector<CycScalar> row = ct.values[e];
    for (int c = 0; c < ncl; ++c) row[c] *= CycScalar(sgnv[c]);
    tw[e] = find_row(ct, row);
  }
  int N = 1;
  for (const auto& row : ct.values)
    for (const auto& v : row) N = std::lcm(N, v.conductor());
  std::vector<std::pair<int, std::vector<int>>> gal;
  for (int k = 2; k < N; ++k) {
    if (std::gcd(k, N) != 1) continue;
    std::vector<int> p(nirr);
    for (int e = 0; e < nirr; ++e) {
      std::vector<CycScalar> row;
      for (const auto& v : ct.values[e]) row.push_back(v.galois(k));
      p[e] = find_row(ct, row);
    }
    gal.emplace_back(k, std::move(p));
  }
  size_t closed = 0;
  auto close = [&] {
    // each pool module is closed once; offer() appends, so the loop reaches new modules too
    for (; closed < pool.size() && space.rank() < nirr; ++closed) {
      size_t i = closed;
      std::vector<Module> cand;
      Module t;
      t.mult.assign(nirr, 0);
      for (int e = 0; e < nirr; ++e) t.mult[tw[e]] = pool[i].mult[e];
      for (int c = 0; c < ncl; ++c) t.vals.push_back(lp_scale(pool[i].vals[c].bar(), CycScalar(sgnv[c])));
      cand.push_back(std::move(t));
      for (const auto& [k, p] : gal) {
        Module g;
        g.mult.assign(nirr, 0);
        for (int e = 0; e < nirr; ++e) g.mult[p[e]] = pool[i].mult[e];
        for (int c = 0; c < ncl; ++c) g.vals.push_back(lp_galois(pool[i].vals[c], k));
        cand.push_back(std::move(g));
      }
      for (auto& m : cand)
        if (RowSpace(space).add(m.mult)) offer(std::move(m));
    }
  };
  close();
  // modules induced from maximal parabolic subalgebras
  for (int drop = rank - 1; drop >= 0 && space.rank() < nirr; --drop) {
    std::vector<int> J;
    for (int s = 0; s < rank; ++s)
      if (s != drop) J.push_back(s);
    Parabolic P = make_parabolic(T, L, J);
    std::vector<HeckeRep<LaurentPolynomial>> src;
    if (P.T->size() > 1) {
      CellResult pc = left_cells(*P.T, P.L);
      for (const WGraph& g : pc.wgraphs) src.push_back(to_cyc_rep(hecke_rep(g, P.W->rank())));
    } else {
      src.push_back({});  // trivial group
      src.back().dim = 1;
    }
    HeckeRep<LaurentPolynomial> rr = reflection_rep(*P.W, P.L);
    if (P.W->rank() > 0 && hecke_rep_verify(rr, *P.W, P.L)) src.push_back(std::move(rr));
    size_t ns = src.size();
    for (size_t i = 0; i < ns; ++i) src.push_back(twist_rep(src[i], P.L));
    for (const auto& r : src) {
      if (space.rank() == nirr) break;
      std::vector<long> m = induced_mults(T, ct, P, r);
      if (!RowSpace(space).add(m)) continue;
      HeckeRep<LaurentPolynomial> ir = induce(T, L, P, r);
      Module mod;
      for (int c = 0; c < ncl; ++c) mod.vals.push_back(ir.trace(T.word(ct.reps[c])));
      mod.mult = mults_of(ct, mod.vals);
      if (mod.mult != m) throw std::logic_error("hecke_chartable: induced module has the wrong character");
      offer(std::move(mod));
      close();
    }
  }
  // split off single constituents of cell modules
  for (int e = 0; e < nirr && space.rank() < nirr; ++e) {
    std::vector<long> unit(nirr, 0);
    unit[e] = 1;
    if (!RowSpace(space).add(unit)) continue;
    for (const auto& [rep, mult] : cell_reps) {
      std::optional<std::vector<IntLaurent>> x = isolate(T, L, ct, rep, mult, e);
      if (!x) continue;
      Module m;
      m.mult = unit;
      for (const auto& v : *x) m.vals.push_back(to_cyc(v));
      offer(std::move(m));
      close();
      break;
    }
  }
  if (space.rank() < nirr) {
    std::string msg = "hecke_chartable: available modules determine only " + std::to_string(space.rank()) + " of " +
                      std::to_string(nirr) + " irreducible characters (undetermined:";
    for (const auto& v : space.kernel()) {
      msg += " [";
      bool first = true;
      for (int e = 0; e < nirr; ++e) {
        if (sgn(v[e]) == 0) continue;
        msg += (first ? "" : " ") + v[e].get_str() + "*" + ct.labels[e];
        first = false;
      }
      msg += "]";
    }
    throw std::runtime_error(msg + "); a HeckeCharTable file is required");
  }

  std::vector<std::vector<Rational>> M(nirr);
  for (int i = 0; i < nirr; ++i) M[i].assign(pool[chosen[i]].mult.begin(), pool[chosen[i]].mult.end());
  // rows of M are modules: vals_i = sum_E M[i][E] X_E, so X = M^-1 vals
  std::vector<std::vector<Rational>> Minv = invert(M);
  HeckeCharTable H;
  H.L = L;
  H.reps = ct.reps;
  H.sizes = ct.sizes;
  H.labels = ct.labels;
  for (int e = 0; e < nirr; ++e) H.dims.push_back(ct.dim(e));
  std::vector<std::vector<LaurentPolynomial>> X(nirr, std::vector<LaurentPolynomial>(ncl));
  for (int e = 0; e < nirr; ++e)
    for (int i = 0; i < nirr; ++i) {
      if (sgn(Minv[e][i]) == 0) continue;
      for (int c = 0; c < ncl; ++c) X[e][c] += lp_scale(pool[chosen[i]].vals[c], CycScalar(Minv[e][i]));
    }
  for (const Module& m : pool)
    for (int c = 0; c < ncl; ++c) {
      LaurentPolynomial s;
      for (int e = 0; e < nirr; ++e)
        if (m.mult[e]) s += lp_scale(X[e][c], CycScalar(m.mult[e]));
      if (s != m.vals[c]) throw std::logic_error("hecke_chartable: module traces are inconsistent");
    }
  for (int e = 0; e < nirr; ++e) {
    std::vector<LaurentPolynomial> row;
    for (int c = 0; c < ncl; ++c) row.push_back(X[e][c].shift(weight_of_word(T.word(ct.reps[c]), L)));
    H.values.push_back(std::move(row));
  }
  return H;
}

HeckeCharTable hecke_chartable_dihedral(const ElementTable& T, const WeightFunction& L,
                                        const OrdinaryCharTable& ct) {
  const TypeComponent& comp = T.group().typedec().at(0);
  int m = comp.type == 'G' ? 6 : comp.bond;
  int s1 = comp.indices[0], s2 = comp.indices[1];
  int L1 = L[s1], L2 = L[s2];
  int c1 = ct.class_of[T.index_of_word({s1})];
  HeckeCharTable H;
  H.L = L;
  H.reps = ct.reps;
  H.sizes = ct.sizes;
  H.labels = ct.labels;
  for (int e = 0; e < ct.nirr(); ++e) {
    H.dims.push_back(ct.dim(e));
    const std::string& lab = ct.labels[e];
    std::vector<LaurentPolynomial> row;
    for (int c = 0; c < ct.nclasses(); ++c) {
      Word w = T.word(ct.reps[c]);
      int len = static_cast<int>(w.size());
      LaurentPolynomial v;  // trace of T~_w
      if (len == 0) {
        v = LaurentPolynomial(CycScalar(ct.dim(e)));
      } else if (len % 2 == 1) {
        bool first = (c == c1);
        int Li = first ? L1 : L2;
        auto plus = cmono(Li, CycScalar(1)), minus = cmono(-Li, CycScalar(-1));
        if (lab == "1_W")
          v = plus;
        else if (lab == "sgn")
          v = minus;
        else if (lab == "sgn_1")
          v = first ? plus : minus;
        else if (lab == "sgn_2")
          v = first ? minus : plus;
        else
          v = plus + minus;
      } else {
        int k = len / 2;
        CycScalar sg((k % 2) ? -1 : 1);
        if (lab == "1_W")
          v = cmono(k * (L1 + L2), CycScalar(1));
        else if (lab == "sgn")
          v = cmono(-k * (L1 + L2), CycScalar(1));
        else if (lab == "sgn_1")
          v = cmono(k * (L1 - L2), sg);
        else if (lab == "sgn_2")
          v = cmono(k * (L2 - L1), sg);
        else {
          int j = std::stoi(lab.substr(6));
          v = LaurentPolynomial(CycScalar::two_cos(m, (j * k) % m));
        }
      }
      row.push_back(v.shift(weight_of_word(w, L)));
    }
    H.values.push_back(std::move(row));
  }
  return H;
}

HeckeCharTable hecke_chartable(const ElementTable& T, const WeightFunction& L, const OrdinaryCharTable& ct,
                               const CellResult* cells) {
  const CoxeterGroup& W = T.group();
  const TypeDecomposition& td = W.typedec();
  if (td.size() == 1) {
    if (td[0].type == 'I' || td[0].type == 'G') return hecke_chartable_dihedral(T, L, ct);
    if (cells && cells->wgraphs.size() == cells->cells.size()) return hecke_chartable_from_cells(T, L, ct, *cells);
    return hecke_chartable_from_cells(T, L, ct, left_cells(T, L));
  }
  HeckeCharTable H;
  H.L = L;
  H.reps = ct.reps;
  H.sizes = ct.sizes;
  H.labels = ct.labels;
  int k = ct.nclasses();
  std::vector<std::vector<LaurentPolynomial>> vals{std::vector<LaurentPolynomial>(k, LaurentPolynomial(CycScalar(1)))};
  for (const TypeComponent& comp : td) {
    CoxeterGroup Wc = build(restrict_cartan(W.cartan(), comp.indices));
    ElementTable Tc(Wc);
    OrdinaryCharTable cct = ordinary_chartable(Tc);
    WeightFunction Lc;
    for (int i : comp.indices) Lc.weights.push_back(L[i]);
    HeckeCharTable Hc = hecke_chartable(Tc, Lc, cct, nullptr);
    std::vector<int> local(W.rank(), -1);
    for (int i = 0; i < comp.rank(); ++i) local[comp.indices[i]] = i;
    std::vector<int> cc(k);
    for (int c = 0; c < k; ++c) {
      Word lw;
      for (int s : T.word(ct.reps[c]))
        if (local[s] >= 0) lw.push_back(local[s]);
      cc[c] = cct.class_of[Tc.index_of_word(lw)];
    }
    std::vector<std::vector<LaurentPolynomial>> nv;
    for (const auto& row : vals)
      for (const auto& crow : Hc.values) {
        std::vector<LaurentPolynomial> r(k);
        for (int c = 0; c < k; ++c) r[c] = row[c] * crow[cc[c]];
        nv.push_back(std::move(r));
      }
    vals = std::move(nv);
  }
  H.values = std::move(vals);
  for (int e = 0; e < ct.nirr(); ++e) H.dims.push_back(ct.dim(e));
  return H;
}

bool hecke_specializes(const HeckeCharTable& H, const OrdinaryCharTable& ct) {
  if (H.nirr() != ct.nirr()) return false;
  for (int e = 0; e < ct.nirr(); ++e)
    for (int c = 0; c < ct.nclasses(); ++c)
      if (H.values[e][c].eval_one() != ct.values[e][c]) return false;
  return true;
}

CycScalar LeadingData::c_of(int w, int E) const {
  const auto& v = c[E];
  auto it = std::lower_bound(v.begin(), v.end(), w, [](const auto& p, int x) { return p.first < x; });
  if (it != v.end() && it->first == w) return it->second;
  return CycScalar(0);
}

LeadingData leading_coeffs(const ElementTable& T, const HeckeCharTable& H, const ClassPolynomials& cp) {
  int nirr = H.nirr(), ncl = static_cast<int>(H.reps.size()), n = T.size();
  const WeightFunction& L = H.L;
  int N = 1;
  for (const auto& row : H.values)
    for (const auto& v : row)
      for (const auto& t : v.terms()) N = std::lcm(N, t.second.conductor());
  int phi = euler_phi(N);
  // integer coordinates of the table values in the power basis of Q(zeta_N)
  std::vector<std::vector<std::vector<IntLaurent>>> X(nirr, std::vector<std::vector<IntLaurent>>(ncl));
  for (int e = 0; e < nirr; ++e)
    for (int c = 0; c < ncl; ++c) {
      std::vector<std::vector<IntLaurent::Term>> terms(phi);
      for (const auto& [ex, cf] : H.values[e][c].terms()) {
        CycScalar x = cf.embed(N);
        for (int b = 0; b < phi; ++b) {
          const Rational& q = x.coords()[b];
          if (q.get_den() != 1) throw std::logic_error("leading_coeffs: non-integral character value");
          if (sgn(q) != 0) terms[b].emplace_back(ex, CheckedInt(q.get_num().get_si()));
        }
      }
      for (int b = 0; b < phi; ++b) X[e][c].push_back(IntLaurent::from_terms(std::move(terms[b])));
    }
  std::vector<int> Lw(n, 0);
  for (int w = 1; w < n; ++w) {
    int s = T.min_left_descent(w);
    Lw[w] = Lw[T.lmul(s, w)] + L[s];
  }
  auto trace = [&](int w, int e, int b) {
    IntLaurent t;
    for (const auto& [c, f] : cp.of(w)) t += f * X[e][c][b];
    return t.shift(-Lw[w]);
  };
  LeadingData D;
  D.L = L;
  D.labels = H.labels;
  D.dims = H.dims;
  D.a.assign(nirr, 0);
  for (int w = 0; w < n; ++w)
    for (int e = 0; e < nirr; ++e)
      for (int b = 0; b < phi; ++b) {
        IntLaurent t = trace(w, e, b);
        if (!t.is_zero()) D.a[e] = std::max(D.a[e], -t.min_exp());
      }
  D.c.assign(nirr, {});
  for (int w = 0; w < n; ++w)
    for (int e = 0; e < nirr; ++e) {
      std::vector<Rational> co(phi);
      bool nz = false;
      for (int b = 0; b < phi; ++b) {
        long v = trace(w, e, b).coeff(-D.a[e]).value();
        co[b] = Rational(v);
        nz = nz || v != 0;
      }
      if (!nz) continue;
      CycScalar x = CycScalar::make(N, co);
      if (T.length(w) % 2) x = -x;
      D.c[e].emplace_back(w, x);
    }
  for (int e = 0; e < nirr; ++e) {
    CycScalar s(0);
    for (const auto& [w, x] : D.c[e]) s += x * x;
    D.f.push_back(s / CycScalar(D.dims[e]));
  }
  D.n.assign(n, CycScalar(0));
  for (int e = 0; e < nirr; ++e) {
    if (D.f[e].is_zero()) continue;
    CycScalar inv = D.f[e].inverse();
    for (const auto& [w, x] : D.c[e]) D.n[w] += inv * x;
  }
  for (int w = 0; w < n; ++w)
    if (!D.n[w].is_zero()) D.Dtilde.push_back(w);
  return D;
}

Conj42Report check_conj42(const ElementTable& T, const LeadingData& D, const std::vector<LeftCell>& cells) {
  Conj42Report r;
  std::set<int> Dt(D.Dtilde.begin(), D.Dtilde.end());
  for (size_t i = 0; i < cells.size(); ++i) {
    std::vector<int> in;
    for (int w : cells[i].elements)
      if (Dt.count(w)) in.push_back(w);
    if (in.size() != 1) {
      r.ok = false;
      r.d.push_back(-1);
      r.violations.push_back("cell " + std::to_string(i) + " contains " + std::to_string(in.size()) +
                             " elements of D~");
      continue;
    }
    int d = in[0];
    r.d.push_back(d);
    if (T.inverse(d) != d) {
      r.ok = false;
      r.violations.push_back("cell " + std::to_string(i) + ": d is not an involution");
    }
    const CycScalar& nd = D.n[d];
    if (nd != CycScalar(1) && nd != CycScalar(-1)) {
      r.ok = false;
      r.violations.push_back("cell " + std::to_string(i) + ": n~_d = " + nd.str());
    }
  }
  return r;
}

CycScalar renormalized(const ElementTable& T, const LeadingData& D, int w, int E, int d) {
  CycScalar x = D.n[d] * D.c_of(w, E);
  if ((T.length(w) + T.length(d)) % 2) x = -x;
  return x;
}

bool label_less(const std::string& a, const std::string& b) {
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (std::isdigit(static_cast<unsigned char>(a[i])) && std::isdigit(static_cast<unsigned char>(b[j]))) {
      size_t i2 = i, j2 = j;
      while (i2 < a.size() && std::isdigit(static_cast<unsigned char>(a[i2]))) ++i2;
      while (j2 < b.size() && std::isdigit(static_cast<unsigned char>(b[j2]))) ++j2;
      long x = std::stol(a.substr(i, i2 - i)), y = std::stol(b.substr(j, j2 - j));
      if (x != y) return x < y;
      i = i2;
      j = j2;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  return a.size() - i < b.size() - j;
}

CellLeadingTable cell_leading_table(const ElementTable& T, const LeadingData& D, const LeftCell& cell,
                                    const Conj42Report& r, int cell_index, const std::vector<int>& mult) {
  CellLeadingTable t;
  t.d = r.d.at(cell_index);
  if (t.d < 0) throw std::invalid_argument("cell_leading_table: cell violates the D~ uniqueness property");
  std::set<int> in(cell.elements.begin(), cell.elements.end());
  t.cols.push_back(t.d);
  for (int w : cell.elements)
    if (w != t.d && in.count(T.inverse(w))) t.cols.push_back(w);
  for (int e = 0; e < D.nirr(); ++e) {
    bool nz = false;
    for (int w : cell.elements)
      if (!D.c_of(w, e).is_zero()) nz = true;
    if (nz) t.rows.push_back(e);
  }
  std::sort(t.rows.begin(), t.rows.end(), [&](int x, int y) {
    if (D.a[x] != D.a[y]) return D.a[x] < D.a[y];
    return label_less(D.labels[x], D.labels[y]);
  });
  for (int e : t.rows) {
    std::vector<CycScalar> row;
    for (int w : t.cols) row.push_back(renormalized(T, D, w, e, t.d));
    t.entries.push_back(std::move(row));
    t.mult.push_back(mult.empty() ? 0 : mult[e]);
    CycScalar q(0);
    for (int w : cell.elements) {
      CycScalar c = D.c_of(w, e);
      if (!c.is_zero()) q += c * c;
    }
    t.mult_orth.push_back(q / D.f[e]);
  }
  return t;
}

CspecReport check_cspec(const ElementTable& T, const LeadingData& D, const std::vector<LeftCell>& cells,
                        const Conj42Report& r, const std::vector<std::vector<int>>& mult) {
  CspecReport rep;
  rep.ncells = static_cast<int>(cells.size());
  std::vector<int> cell_of(T.size(), -1);
  for (size_t i = 0; i < cells.size(); ++i)
    for (int w : cells[i].elements) cell_of[w] = static_cast<int>(i);
  for (int e = 0; e < D.nirr(); ++e) {
    bool nonneg = true;
    for (const auto& [w, x] : D.c[e]) {
      int d = r.d.at(cell_of[w]);
      if (d < 0 || cyc_sign(renormalized(T, D, w, e, d)) < 0) {
        nonneg = false;
        break;
      }
    }
    if (nonneg) {
      rep.SL.push_back(e);
      rep.sum_dims += D.dims[e];
    }
  }
  std::set<int> SL(rep.SL.begin(), rep.SL.end());
  for (size_t i = 0; i < cells.size(); ++i) {
    std::vector<int> sp;
    for (int e = 0; e < D.nirr(); ++e)
      if (mult[i][e] > 0 && SL.count(e)) sp.push_back(e);
    std::string id = "cell " + std::to_string(i);
    if (sp.size() != 1) {
      rep.ok = false;
      rep.special.push_back(-1);
      rep.violations.push_back(id + " has " + std::to_string(sp.size()) + " constituents in S_L");
      continue;
    }
    int e = sp[0];
    rep.special.push_back(e);
    if (mult[i][e] != 1) {
      rep.ok = false;
      rep.violations.push_back(id + ": multiplicity of " + D.labels[e] + " is " + std::to_string(mult[i][e]));
    }
    int d = r.d.at(i);
    std::set<int> in(cells[i].elements.begin(), cells[i].elements.end());
    for (int w : cells[i].elements) {
      if (!in.count(T.inverse(w))) continue;
      if (d < 0 || cyc_sign(renormalized(T, D, w, e, d)) <= 0) {
        rep.ok = false;
        rep.violations.push_back(id + ": c* of " + D.labels[e] + " not positive at element " + std::to_string(w));
        break;
      }
    }
  }
  if (rep.sum_dims != rep.ncells) {
    rep.ok = false;
    rep.violations.push_back("sum of dim E over S_L is " + std::to_string(rep.sum_dims) + ", number of cells " +
                             std::to_string(rep.ncells));
  }
  return rep;
}

}  // namespace cellkit
