#include "cellkit/cartan.hpp"

#include <algorithm>
#include <functional>
#include <regex>
#include <stdexcept>

namespace cellkit {

std::string TypeComponent::label() const {
  if (type == 'I') return "I2(" + std::to_string(bond) + ")";
  return std::string(1, type) + std::to_string(rank());
}

namespace {

CartanMatrix identity2(int n) {
  CartanMatrix c(n, std::vector<CycScalar>(n, CycScalar(0)));
  for (int i = 0; i < n; ++i) c[i][i] = CycScalar(2);
  return c;
}

void bond(CartanMatrix& c, int i, int j, const CycScalar& cij, const CycScalar& cji) {
  c[i][j] = cij;
  c[j][i] = cji;
}

void chain(CartanMatrix& c, int from, int to) {
  for (int i = from; i < to; ++i) bond(c, i, i + 1, CycScalar(-1), CycScalar(-1));
}

}  // namespace

CartanMatrix cartanmat(const std::string& type, int n, int m) {
  if (type.size() != 1) throw std::invalid_argument("cartanmat: bad type " + type);
  char t = type[0];
  CartanMatrix c;
  auto bad = [&]() {
    return std::invalid_argument("cartanmat: unknown type " + type + std::to_string(n));
  };
  switch (t) {
    case 'A':
      if (n < 1) throw bad();
      c = identity2(n);
      chain(c, 0, n - 1);
      return c;
    case 'B':
    case 'C':
      if (n < 2) throw bad();
      c = identity2(n);
      chain(c, 1, n - 1);
      if (t == 'B')
        bond(c, 0, 1, CycScalar(-2), CycScalar(-1));
      else
        bond(c, 0, 1, CycScalar(-1), CycScalar(-2));
      return c;
    case 'D':
      if (n < 4) throw bad();
      c = identity2(n);
      bond(c, 0, 2, -1, -1);
      chain(c, 1, n - 1);
      bond(c, 1, 2, -1, -1);
      return c;
    case 'E':
      if (n < 6 || n > 8) throw bad();
      c = identity2(n);
      bond(c, 0, 2, -1, -1);
      bond(c, 1, 3, -1, -1);
      chain(c, 2, n - 1);
      return c;
    case 'F':
      if (n != 4) throw bad();
      c = identity2(4);
      bond(c, 0, 1, -1, -1);
      bond(c, 1, 2, -1, -2);
      bond(c, 2, 3, -1, -1);
      return c;
    case 'G':
      if (n != 2) throw bad();
      c = identity2(2);
      bond(c, 0, 1, -1, -3);
      return c;
    case 'H':
      if (n != 3 && n != 4) throw bad();
      c = identity2(n);
      bond(c, 0, 1, -CycScalar::golden(), -CycScalar::golden());
      chain(c, 1, n - 1);
      return c;
    case 'I': {
      if (n != 2 || m < 3) throw bad();
      c = identity2(2);
      if (m % 2 == 1) {
        CycScalar x = -CycScalar::two_cos(2 * m, 1);
        bond(c, 0, 1, x, x);
      } else {
        bond(c, 0, 1, CycScalar(-1), -(CycScalar(2) + CycScalar::two_cos(m, 1)));
      }
      return c;
    }
    default:
      throw bad();
  }
}

CartanMatrix cartanmat_from_label(const std::string& label) {
  static const std::regex re_i(R"(I2\((\d+)\))");
  static const std::regex re_t(R"(([A-H])(\d+))");
  std::smatch mt;
  if (std::regex_match(label, mt, re_i)) return cartanmat("I", 2, std::stoi(mt[1]));
  if (std::regex_match(label, mt, re_t)) return cartanmat(mt[1], std::stoi(mt[2]));
  throw std::invalid_argument("unknown group label: " + label);
}

CartanMatrix cartanmat_product(const std::vector<CartanMatrix>& blocks) {
  int n = 0;
  for (const auto& b : blocks) n += static_cast<int>(b.size());
  CartanMatrix c(n, std::vector<CycScalar>(n, CycScalar(0)));
  int off = 0;
  for (const auto& b : blocks) {
    for (size_t i = 0; i < b.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j) c[off + i][off + j] = b[i][j];
    off += static_cast<int>(b.size());
  }
  return c;
}

int bond_from_product(const CycScalar& p, int max_m) {
  if (p.is_zero()) return 2;
  if (p == CycScalar(4)) return 0;
  if (!p.is_real() || cyc_sign(p) < 0 || cyc_sign(p - CycScalar(4)) > 0)
    throw std::invalid_argument("Cartan matrix: c_st*c_ts is not of the form 4cos^2(pi/m)");
  for (int m = 3; m <= max_m; ++m)
    if (p == CycScalar(2) + CycScalar::two_cos(m, 1)) return m;
  throw std::invalid_argument("Cartan matrix: c_st*c_ts is not of the form 4cos^2(pi/m)");
}

void validate_cartan(const CartanMatrix& c) {
  size_t n = c.size();
  for (const auto& row : c)
    if (row.size() != n) throw std::invalid_argument("Cartan matrix is not square");
  for (size_t s = 0; s < n; ++s) {
    if (c[s][s] != CycScalar(2)) throw std::invalid_argument("Cartan matrix: c_ss != 2");
    for (size_t t = 0; t < n; ++t) {
      if (s == t) continue;
      if (!c[s][t].is_real()) throw std::invalid_argument("Cartan matrix: non-real entry");
      if (cyc_sign(c[s][t]) > 0) throw std::invalid_argument("Cartan matrix: positive entry");
      if (c[s][t].is_zero() != c[t][s].is_zero())
        throw std::invalid_argument("Cartan matrix: c_st = 0 but c_ts != 0");
    }
  }
}

CoxeterMatrix coxeter_matrix(const CartanMatrix& c) {
  validate_cartan(c);
  size_t n = c.size();
  int maxm = std::max<int>(256, 4 * static_cast<int>(n));
  CoxeterMatrix m(n, std::vector<int>(n, 1));
  for (size_t s = 0; s < n; ++s)
    for (size_t t = s + 1; t < n; ++t) m[s][t] = m[t][s] = bond_from_product(c[s][t] * c[t][s], maxm);
  return m;
}

CartanMatrix restrict_cartan(const CartanMatrix& c, const std::vector<int>& idx) {
  CartanMatrix r(idx.size(), std::vector<CycScalar>(idx.size()));
  for (size_t i = 0; i < idx.size(); ++i)
    for (size_t j = 0; j < idx.size(); ++j) r[i][j] = c[idx[i]][idx[j]];
  return r;
}

namespace {

struct Candidate {
  char type;
  int bond;
  CartanMatrix std;
};

std::vector<Candidate> candidates(int k, int m2) {
  std::vector<Candidate> v;
  auto add = [&](char t, int b = 0) {
    v.push_back({t, b, cartanmat(std::string(1, t), k, b)});
  };
  add('A');
  if (k >= 2) add('B');
  if (k >= 2) add('C');
  if (k >= 4) add('D');
  if (k >= 6 && k <= 8) add('E');
  if (k == 4) add('F');
  if (k == 2) add('G');
  if (k == 3 || k == 4) add('H');
  if (k == 2 && m2 >= 3) add('I', m2);
  return v;
}

// Lexicographically smallest ordering of comp under which eq(pos_i,pos_j,vert_i,vert_j) holds.
bool smallest_order(const std::vector<int>& comp,
                    const std::function<bool(int, int, int, int)>& eq, std::vector<int>& out) {
  int k = static_cast<int>(comp.size());
  std::vector<int> seq;
  std::vector<bool> used(k, false);
  std::function<bool()> rec = [&]() -> bool {
    int p = static_cast<int>(seq.size());
    if (p == k) return true;
    for (int vi = 0; vi < k; ++vi) {
      if (used[vi]) continue;
      bool ok = true;
      for (int q = 0; q < p && ok; ++q) ok = eq(q, p, seq[q], comp[vi]);
      if (!ok) continue;
      used[vi] = true;
      seq.push_back(comp[vi]);
      if (rec()) return true;
      seq.pop_back();
      used[vi] = false;
    }
    return false;
  };
  if (!rec()) return false;
  out = seq;
  return true;
}

}  // namespace

TypeDecomposition recognize(const CartanMatrix& c) {
  validate_cartan(c);
  int n = static_cast<int>(c.size());
  std::vector<int> comp_of(n, -1);
  std::vector<std::vector<int>> comps;
  for (int s = 0; s < n; ++s) {
    if (comp_of[s] >= 0) continue;
    std::vector<int> comp{s}, stack{s};
    comp_of[s] = static_cast<int>(comps.size());
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y = 0; y < n; ++y)
        if (y != x && !c[x][y].is_zero() && comp_of[y] < 0) {
          comp_of[y] = comp_of[s];
          comp.push_back(y);
          stack.push_back(y);
        }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(comp);
  }
  CoxeterMatrix cm = coxeter_matrix(c);
  TypeDecomposition res;
  for (const auto& comp : comps) {
    int k = static_cast<int>(comp.size());
    TypeComponent tc;
    tc.indices = comp;
    int m2 = k == 2 ? cm[comp[0]][comp[1]] : 0;
    bool infinite_bond = false;
    for (int a : comp)
      for (int b : comp)
        if (cm[a][b] == 0) infinite_bond = true;
    if (infinite_bond) {
      res.push_back(tc);
      continue;
    }
    std::vector<Candidate> cands = candidates(k, m2);
    bool found = false;
    for (int mode = 0; mode < 2 && !found; ++mode) {
      std::vector<int> best;
      const Candidate* bestc = nullptr;
      for (const auto& cand : cands) {
        CoxeterMatrix scm = coxeter_matrix(cand.std);
        auto eq = [&](int p, int q, int vp, int vq) {
          if (mode == 0) return c[vp][vq] == cand.std[p][q] && c[vq][vp] == cand.std[q][p];
          return cm[vp][vq] == scm[p][q];
        };
        std::vector<int> ord;
        if (smallest_order(comp, eq, ord) && (!bestc || ord < best)) {
          best = ord;
          bestc = &cand;
        }
      }
      if (bestc) {
        tc.type = bestc->type;
        tc.bond = bestc->type == 'I' ? bestc->bond : 0;
        tc.indices = best;
        found = true;
      }
    }
    res.push_back(tc);
  }
  return res;
}

bool is_finite(const TypeDecomposition& t) {
  for (const auto& c : t)
    if (c.type == 'U') return false;
  return true;
}

std::vector<int> degrees(const TypeDecomposition& t) {
  std::vector<int> d;
  for (const auto& c : t) {
    int n = c.rank();
    switch (c.type) {
      case 'A':
        for (int i = 2; i <= n + 1; ++i) d.push_back(i);
        break;
      case 'B':
      case 'C':
        for (int i = 1; i <= n; ++i) d.push_back(2 * i);
        break;
      case 'D':
        for (int i = 1; i < n; ++i) d.push_back(2 * i);
        d.push_back(n);
        break;
      case 'E': {
        static const std::vector<int> e6{2, 5, 6, 8, 9, 12}, e7{2, 6, 8, 10, 12, 14, 18},
            e8{2, 8, 12, 14, 18, 20, 24, 30};
        const auto& v = n == 6 ? e6 : n == 7 ? e7 : e8;
        d.insert(d.end(), v.begin(), v.end());
        break;
      }
      case 'F':
        d.insert(d.end(), {2, 6, 8, 12});
        break;
      case 'G':
        d.insert(d.end(), {2, 6});
        break;
      case 'H':
        if (n == 3)
          d.insert(d.end(), {2, 6, 10});
        else
          d.insert(d.end(), {2, 12, 20, 30});
        break;
      case 'I':
        d.insert(d.end(), {2, c.bond});
        break;
      default:
        throw std::invalid_argument("degrees: group is infinite");
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

std::string cartanname(const TypeDecomposition& t) {
  std::string s;
  for (const auto& c : t) {
    s += c.label();
    for (int i : c.indices) s += "c" + std::to_string(i);
  }
  return s;
}

}  // namespace cellkit
