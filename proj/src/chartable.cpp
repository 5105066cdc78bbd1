#include "cellkit/chartable.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>

#include "json.hpp"

namespace cellkit {

int OrdinaryCharTable::dim(int i) const {
  return static_cast<int>(values[i][0].rational().get_num().get_si());
}

int OrdinaryCharTable::index_of(const std::string& label) const {
  for (int i = 0; i < nirr(); ++i)
    if (labels[i] == label) return i;
  return -1;
}

CycScalar inner_product(const OrdinaryCharTable& ct, const std::vector<CycScalar>& f,
                        const std::vector<CycScalar>& g) {
  CycScalar s;
  s = CycScalar(0);
  for (int c = 0; c < ct.nclasses(); ++c) s += CycScalar(ct.sizes[c]) * f[c] * g[c].conj();
  return s / CycScalar(ct.order);
}

std::vector<CycScalar> decompose(const OrdinaryCharTable& ct, const std::vector<CycScalar>& f) {
  std::vector<CycScalar> r;
  for (int i = 0; i < ct.nirr(); ++i) r.push_back(inner_product(ct, f, ct.values[i]));
  return r;
}

bool chartable_verify(const OrdinaryCharTable& ct) {
  if (ct.nirr() != ct.nclasses()) return false;
  for (int i = 0; i < ct.nirr(); ++i) {
    if (!ct.values[i][0].is_integer() || cyc_sign(ct.values[i][0]) <= 0) return false;
    for (int j = i; j < ct.nirr(); ++j)
      if (inner_product(ct, ct.values[i], ct.values[j]) != CycScalar(i == j ? 1 : 0)) return false;
  }
  return true;
}

namespace {

using Part = std::vector<int>;

struct CompTable {
  std::vector<std::string> labels;
  std::vector<std::vector<CycScalar>> values;  // [irr][class of the component table]
  std::vector<int> b;
};

std::vector<Part> partitions(int n, int maxpart = -1) {
  if (maxpart < 0) maxpart = n;
  std::vector<Part> r;
  if (n == 0) return {Part{}};
  for (int k = std::min(n, maxpart); k >= 1; --k)
    for (Part p : partitions(n - k, k)) {
      p.insert(p.begin(), k);
      r.push_back(std::move(p));
    }
  return r;
}

std::string part_label(const Part& p) {
  bool small = std::all_of(p.begin(), p.end(), [](int x) { return x < 10; });
  std::string s;
  for (size_t i = 0; i < p.size(); ++i) {
    if (!small && i) s += ",";
    s += std::to_string(p[i]);
  }
  return s;
}

// Removes all rim hooks of length r; returns (partition, sign).
std::vector<std::pair<Part, int>> remove_hooks(const Part& lam, int r) {
  std::vector<std::pair<Part, int>> res;
  int k = static_cast<int>(lam.size());
  std::vector<int> beta(k);
  for (int i = 0; i < k; ++i) beta[i] = lam[i] + (k - 1 - i);
  for (int i = 0; i < k; ++i) {
    int nb = beta[i] - r;
    if (nb < 0 || std::find(beta.begin(), beta.end(), nb) != beta.end()) continue;
    int between = 0;
    for (int b : beta)
      if (b > nb && b < beta[i]) ++between;
    std::vector<int> nbeta = beta;
    nbeta[i] = nb;
    std::sort(nbeta.rbegin(), nbeta.rend());
    Part p;
    for (int j = 0; j < k; ++j) {
      int part = nbeta[j] - (k - 1 - j);
      if (part > 0) p.push_back(part);
    }
    res.emplace_back(std::move(p), between % 2 ? -1 : 1);
  }
  return res;
}

long mn_A(const Part& lam, const std::vector<int>& cyc, size_t pos) {
  if (pos == cyc.size()) return lam.empty() ? 1 : 0;
  long s = 0;
  for (auto& [p, sg] : remove_hooks(lam, cyc[pos])) s += sg * mn_A(p, cyc, pos + 1);
  return s;
}

// Signed cycles (length, +1/-1).
long mn_B(const Part& a, const Part& b, const std::vector<std::pair<int, int>>& cyc, size_t pos) {
  if (pos == cyc.size()) return a.empty() && b.empty() ? 1 : 0;
  auto [r, sign] = cyc[pos];
  long s = 0;
  for (auto& [p, sg] : remove_hooks(a, r)) s += sg * mn_B(p, b, cyc, pos + 1);
  for (auto& [p, sg] : remove_hooks(b, r)) s += sign * sg * mn_B(a, p, cyc, pos + 1);
  return s;
}

std::vector<std::pair<Part, Part>> bipartitions(int n) {
  std::vector<std::pair<Part, Part>> r;
  for (int k = n; k >= 0; --k)
    for (const Part& a : partitions(k))
      for (const Part& b : partitions(n - k)) r.emplace_back(a, b);
  return r;
}

std::string bipart_label(const Part& a, const Part& b) { return part_label(a) + "." + part_label(b); }

// role[g] = position of generator g in the standard numbering of its component.
std::vector<int> roles(const TypeComponent& c, int rank) {
  std::vector<int> role(rank, -1);
  for (int k = 0; k < c.rank(); ++k) role[c.indices[k]] = k;
  return role;
}

std::vector<int> cycle_type_A(const Word& w, const std::vector<int>& role, int n) {
  std::vector<int> a(n);
  for (int i = 0; i < n; ++i) a[i] = i;
  for (int s : w) std::swap(a[role[s]], a[role[s] + 1]);
  std::vector<int> seen(n, 0), cyc;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (int j = i; !seen[j]; j = a[j]) seen[j] = 1, ++len;
    cyc.push_back(len);
  }
  std::sort(cyc.rbegin(), cyc.rend());
  return cyc;
}

// Signed permutation of B_n / D_n; cycles (length, sign) sorted.
std::vector<std::pair<int, int>> signed_cycles(const Word& w, const std::vector<int>& role, int n,
                                               char type) {
  std::vector<int> a(n);
  for (int i = 0; i < n; ++i) a[i] = i + 1;
  for (int s : w) {
    int k = role[s];
    if (type == 'D') {
      if (k == 0) {
        int t = a[0];
        a[0] = -a[1];
        a[1] = -t;
      } else if (k == 1) {
        std::swap(a[0], a[1]);
      } else {
        std::swap(a[k - 1], a[k]);
      }
    } else {
      if (k == 0)
        a[0] = -a[0];
      else
        std::swap(a[k - 1], a[k]);
    }
  }
  std::vector<int> seen(n, 0);
  std::vector<std::pair<int, int>> cyc;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    int len = 0, sign = 1;
    for (int j = i; !seen[j];) {
      seen[j] = 1;
      ++len;
      if (a[j] < 0) sign = -sign;
      j = std::abs(a[j]) - 1;
    }
    cyc.emplace_back(len, sign);
  }
  std::sort(cyc.rbegin(), cyc.rend());
  return cyc;
}

// Kernel of a square matrix known to have nullity one; normalized with v[0] = 1.
std::vector<CycScalar> kernel_vector(std::vector<std::vector<CycScalar>> m, bool& ok) {
  int n = static_cast<int>(m.size());
  std::vector<int> pivcol;
  int row = 0;
  for (int col = 0; col < n && row < n; ++col) {
    int p = -1;
    for (int r = row; r < n; ++r)
      if (!m[r][col].is_zero()) {
        p = r;
        break;
      }
    if (p < 0) continue;
    std::swap(m[p], m[row]);
    CycScalar inv = m[row][col].inverse();
    for (int c = col; c < n; ++c) m[row][c] *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == row || m[r][col].is_zero()) continue;
      CycScalar f = m[r][col];
      for (int c = col; c < n; ++c)
        if (!m[row][c].is_zero()) m[r][c] -= f * m[row][c];
    }
    pivcol.push_back(col);
    ++row;
  }
  ok = (row == n - 1);
  if (!ok) return {};
  int freec = 0;
  while (freec < n && std::find(pivcol.begin(), pivcol.end(), freec) != pivcol.end()) ++freec;
  std::vector<CycScalar> v(n, CycScalar(0));
  v[freec] = CycScalar(1);
  for (int r = 0; r < row; ++r) v[pivcol[r]] = -m[r][freec];
  if (v[0].is_zero()) {
    ok = false;
    return {};
  }
  CycScalar inv = v[0].inverse();
  for (auto& x : v) x *= inv;
  return v;
}

// Class multiplication eigenvector method; rows in arbitrary order.
std::vector<std::vector<CycScalar>> burnside(const ElementTable& T, const std::vector<ConjClass>& cls,
                                             const std::vector<int>& class_of, bool golden) {
  int k = static_cast<int>(cls.size());
  long order = T.size();
  std::mt19937 rng(20240601);
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::uniform_int_distribution<int> dist(-(3 + 4 * attempt), 3 + 4 * attempt);
    std::vector<long> r(k);
    for (auto& x : r) x = dist(rng);
    std::vector<std::vector<long>> A(k, std::vector<long>(k, 0));
    for (int c = 0; c < k; ++c) {
      int g = cls[c].rep;
      for (int x = 0; x < T.size(); ++x) {
        int y = T.mult(T.inverse(x), g);
        A[class_of[y]][c] += r[class_of[x]];
      }
    }
    Eigen::MatrixXd M(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) M(i, j) = static_cast<double>(A[i][j]);
    Eigen::EigenSolver<Eigen::MatrixXd> es(M, false);
    std::vector<double> ev;
    for (int i = 0; i < k; ++i) ev.push_back(es.eigenvalues()[i].real());
    std::sort(ev.begin(), ev.end());
    double scale = 1;
    for (double e : ev) scale = std::max(scale, std::fabs(e));
    double tol = 1e-7 * scale + 1e-6;
    bool distinct = true;
    for (int i = 1; i < k; ++i)
      if (ev[i] - ev[i - 1] < 0.5) distinct = false;
    if (!distinct) continue;

    std::vector<std::vector<CycScalar>> rows;
    CycScalar g = CycScalar::golden();
    double gv = (1 + std::sqrt(5.0)) / 2, gc = 1 - gv;
    bool failed = false;
    for (int i = 0; i < k && !failed; ++i) {
      std::vector<CycScalar> cands;
      if (!golden) {
        double a = std::round(ev[i]);
        if (std::fabs(a - ev[i]) < tol) cands.emplace_back(static_cast<long>(a));
      } else {
        for (int j = 0; j < k; ++j) {
          double b = std::round((ev[i] - ev[j]) / std::sqrt(5.0));
          double a = std::round(ev[i] - b * gv);
          if (std::fabs(a + b * gv - ev[i]) < tol && std::fabs(a + b * gc - ev[j]) < tol)
            cands.push_back(CycScalar(static_cast<long>(a)) + CycScalar(static_cast<long>(b)) * g);
        }
      }
      bool found = false;
      for (const CycScalar& lam : cands) {
        std::vector<std::vector<CycScalar>> B(k, std::vector<CycScalar>(k));
        for (int a = 0; a < k; ++a)
          for (int b = 0; b < k; ++b) B[a][b] = CycScalar(A[a][b]) - (a == b ? lam : CycScalar(0));
        bool ok = false;
        std::vector<CycScalar> v = kernel_vector(B, ok);
        if (!ok) continue;
        CycScalar S(0);
        for (int c = 0; c < k; ++c) S += v[c] * v[c].conj() / CycScalar(cls[c].size);
        CycScalar d2 = CycScalar(order) / S;
        if (!d2.is_integer()) continue;
        long d2i = d2.rational().get_num().get_si();
        long d = std::lround(std::sqrt(static_cast<double>(d2i)));
        if (d * d != d2i) continue;
        std::vector<CycScalar> row(k);
        for (int c = 0; c < k; ++c) row[c] = CycScalar(d) * v[c] / CycScalar(cls[c].size);
        rows.push_back(std::move(row));
        found = true;
        break;
      }
      if (!found) failed = true;
    }
    if (!failed) return rows;
  }
  throw std::runtime_error("ordinary_chartable: class multiplication method did not separate characters");
}

// Lowest k with <chi, S^k V> != 0, V the reflection representation.
std::vector<int> fake_b(const ElementTable& T, const std::vector<ConjClass>& cls,
                        const std::vector<std::vector<CycScalar>>& values) {
  const CoxeterGroup& W = T.group();
  int k = static_cast<int>(cls.size()), N = W.N();
  std::vector<std::vector<CycScalar>> h(k, std::vector<CycScalar>(N + 1));
  for (int c = 0; c < k; ++c) {
    Matrix m = W.word_to_mat(T.word(cls[c].rep));
    int r = static_cast<int>(m.size());
    Matrix p = m;
    std::vector<CycScalar> tr(N + 1);
    for (int i = 1; i <= N; ++i) {
      CycScalar t(0);
      for (int a = 0; a < r; ++a) t += p[a][a];
      tr[i] = t;
      Matrix q(r, std::vector<CycScalar>(r, CycScalar(0)));
      for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) {
          if (p[a][b].is_zero()) continue;
          for (int e = 0; e < r; ++e)
            if (!m[b][e].is_zero()) q[a][e] += p[a][b] * m[b][e];
        }
      p = std::move(q);
    }
    h[c][0] = CycScalar(1);
    for (int n = 1; n <= N; ++n) {
      CycScalar s(0);
      for (int i = 1; i <= n; ++i) s += tr[i] * h[c][n - i];
      h[c][n] = s / CycScalar(n);
    }
  }
  std::vector<int> res;
  for (const auto& row : values) {
    int b = -1;
    for (int n = 0; n <= N && b < 0; ++n) {
      CycScalar s(0);
      for (int c = 0; c < k; ++c) s += CycScalar(cls[c].size) * row[c] * h[c][n].conj();
      if (!s.is_zero()) b = n;
    }
    res.push_back(b);
  }
  return res;
}

struct LabelEntry {
  std::string label;
  int dim, b;
  std::vector<std::pair<Word, CycScalar>> values;
};

std::vector<LabelEntry> label_data(const std::string& type) {
  std::ifstream in(std::string(CELLKIT_DATA_DIR) + "/irr_labels.json");
  std::vector<LabelEntry> r;
  if (!in) return r;
  nlohmann::json j = nlohmann::json::parse(in);
  if (!j.contains(type)) return r;
  for (const auto& e : j[type]) {
    LabelEntry le{e["label"], e["dim"], e["b"], {}};
    if (e.contains("values"))
      for (const auto& v : e["values"]) {
        Rational p = parse_rational(v["value"][0].get<std::string>());
        Rational q = parse_rational(v["value"][1].get<std::string>());
        le.values.emplace_back(v["word"].get<Word>(), CycScalar(p) + CycScalar(q) * CycScalar::golden());
      }
    r.push_back(std::move(le));
  }
  return r;
}

std::string phi_label(int d, int b) { return "phi" + std::to_string(d) + "," + std::to_string(b); }

CompTable component_table(const ElementTable& T, const TypeComponent& comp,
                          const std::vector<ConjClass>& cls, const std::vector<int>& class_of) {
  const CoxeterGroup& W = T.group();
  int k = static_cast<int>(cls.size());
  std::vector<int> role = roles(comp, W.rank());
  CompTable ct;
  char type = comp.type;
  if (type == 'A') {
    int n = comp.rank() + 1;
    std::vector<std::vector<int>> ctypes;
    for (const auto& c : cls) ctypes.push_back(cycle_type_A(T.word(c.rep), role, n));
    for (const Part& p : partitions(n)) {
      std::vector<CycScalar> row;
      for (const auto& cy : ctypes) row.emplace_back(mn_A(p, cy, 0));
      ct.labels.push_back(part_label(p));
      ct.values.push_back(std::move(row));
    }
  } else if (type == 'B' || type == 'C') {
    int n = comp.rank();
    std::vector<std::vector<std::pair<int, int>>> ctypes;
    for (const auto& c : cls) ctypes.push_back(signed_cycles(T.word(c.rep), role, n, 'B'));
    for (auto& [a, b] : bipartitions(n)) {
      std::vector<CycScalar> row;
      for (const auto& cy : ctypes) row.emplace_back(mn_B(a, b, cy, 0));
      ct.labels.push_back(bipart_label(a, b));
      ct.values.push_back(std::move(row));
    }
  } else if (type == 'I' || type == 'G') {
    int m = type == 'G' ? 6 : comp.bond;
    int s1 = comp.indices[0];
    int c1 = class_of[T.index_of_word({s1})];
    auto rowfn = [&](const std::function<CycScalar(int len, int cl)>& f) {
      std::vector<CycScalar> row;
      for (int c = 0; c < k; ++c) row.push_back(f(T.length(cls[c].rep), c));
      return row;
    };
    ct.labels.push_back("1_W");
    ct.values.push_back(rowfn([](int, int) { return CycScalar(1); }));
    if (m % 2 == 0) {
      for (int i = 1; i <= 2; ++i) {
        ct.labels.push_back("sgn_" + std::to_string(i));
        ct.values.push_back(rowfn([&](int len, int c) {
          if (len % 2 == 0) return CycScalar((len / 2) % 2 ? -1 : 1);
          bool first = (c == c1);
          return CycScalar((first == (i == 1)) ? 1 : -1);
        }));
      }
    }
    for (int j = 1; 2 * j < m; ++j) {
      ct.labels.push_back("sigma_" + std::to_string(j));
      ct.values.push_back(rowfn([&](int len, int) {
        if (len % 2) return CycScalar(0);
        return CycScalar::two_cos(m, (j * (len / 2)) % m);
      }));
    }
    ct.labels.push_back("sgn");
    ct.values.push_back(rowfn([](int len, int) { return CycScalar(len % 2 ? -1 : 1); }));
  } else {
    ct.values = burnside(T, cls, class_of, type == 'H');
  }
  ct.b = fake_b(T, cls, ct.values);

  if (type == 'D') {
    int n = comp.rank();
    std::vector<std::vector<std::pair<int, int>>> ctypes;
    for (const auto& c : cls) ctypes.push_back(signed_cycles(T.word(c.rep), role, n, 'D'));
    std::vector<std::string> lab(ct.values.size());
    std::vector<int> order;
    for (auto& [a, b] : bipartitions(n)) {
      if (a < b) continue;
      std::vector<CycScalar> res;
      for (const auto& cy : ctypes) res.emplace_back(mn_B(a, b, cy, 0));
      if (a != b) {
        for (size_t i = 0; i < ct.values.size(); ++i)
          if (lab[i].empty() && ct.values[i] == res) {
            lab[i] = bipart_label(a, b);
            order.push_back(static_cast<int>(i));
          }
      } else {
        std::vector<int> pair;
        for (size_t i = 0; i < ct.values.size() && pair.size() < 2; ++i) {
          if (!lab[i].empty() || ct.values[i][0] * CycScalar(2) != res[0]) continue;
          for (size_t j = i + 1; j < ct.values.size(); ++j) {
            if (!lab[j].empty()) continue;
            bool sum = true;
            for (int c = 0; c < k && sum; ++c) sum = (ct.values[i][c] + ct.values[j][c] == res[c]);
            if (sum) {
              pair = {static_cast<int>(i), static_cast<int>(j)};
              break;
            }
          }
        }
        if (pair.size() != 2) throw std::logic_error("ordinary_chartable: D-type labelling failed");
        int c = 0;
        while (c < k && ct.values[pair[0]][c] == ct.values[pair[1]][c]) ++c;
        if (c < k && cyc_sign(ct.values[pair[0]][c] - ct.values[pair[1]][c]) < 0) std::swap(pair[0], pair[1]);
        lab[pair[0]] = part_label(a) + ".+";
        lab[pair[1]] = part_label(a) + ".-";
        order.push_back(pair[0]);
        order.push_back(pair[1]);
      }
    }
    if (order.size() != ct.values.size()) throw std::logic_error("ordinary_chartable: D-type labelling failed");
    CompTable s;
    for (int i : order) {
      s.labels.push_back(lab[i]);
      s.values.push_back(ct.values[i]);
      s.b.push_back(ct.b[i]);
    }
    return s;
  }
  if (!ct.labels.empty()) return ct;

  // Exceptional types: bundled names where available, phi_{d,b} otherwise.
  std::vector<LabelEntry> data = label_data(comp.label());
  int nirr = static_cast<int>(ct.values.size());
  std::vector<int> order(nirr);
  for (int i = 0; i < nirr; ++i) order[i] = i;
  auto dimof = [&](int i) { return ct.values[i][0].rational().get_num().get_si(); };
  ct.labels.assign(nirr, "");
  if (!data.empty()) {
    std::vector<int> assigned(nirr, -1);
    for (size_t e = 0; e < data.size(); ++e) {
      for (int i = 0; i < nirr; ++i) {
        if (assigned[i] >= 0 || dimof(i) != data[e].dim || ct.b[i] != data[e].b) continue;
        bool ok = true;
        for (auto& [w, v] : data[e].values) ok = ok && ct.values[i][class_of[T.index_of_word(w)]] == v;
        if (!ok) continue;
        assigned[i] = static_cast<int>(e);
        ct.labels[i] = data[e].label;
        break;
      }
    }
    if (std::count(assigned.begin(), assigned.end(), -1) == 0) {
      std::sort(order.begin(), order.end(), [&](int x, int y) { return assigned[x] < assigned[y]; });
    } else {
      data.clear();
    }
  }
  if (data.empty()) {
    for (int i = 0; i < nirr; ++i) ct.labels[i] = phi_label(static_cast<int>(dimof(i)), ct.b[i]);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
      if (ct.b[x] != ct.b[y]) return ct.b[x] < ct.b[y];
      return dimof(x) < dimof(y);
    });
    std::map<std::string, int> count;
    for (int i : order) ++count[ct.labels[i]];
    std::map<std::string, int> seen;
    for (int i : order)
      if (count[ct.labels[i]] > 1) ct.labels[i] += std::string(++seen[ct.labels[i]], '\'');
  }
  CompTable s;
  for (int i : order) {
    s.labels.push_back(ct.labels[i]);
    s.values.push_back(ct.values[i]);
    s.b.push_back(ct.b[i]);
  }
  return s;
}

std::vector<int> class_index(const ElementTable& T, const std::vector<ConjClass>& cls) {
  std::vector<int> co(T.size());
  for (size_t c = 0; c < cls.size(); ++c)
    for (int w : cls[c].elements) co[w] = static_cast<int>(c);
  return co;
}

}  // namespace

OrdinaryCharTable ordinary_chartable(const ElementTable& T) {
  const CoxeterGroup& W = T.group();
  std::vector<ConjClass> cls = conjugacy_classes(T);
  OrdinaryCharTable ct;
  ct.order = T.size();
  ct.class_of = class_index(T, cls);
  for (const auto& c : cls) {
    ct.reps.push_back(c.rep);
    ct.sizes.push_back(c.size);
  }
  int k = static_cast<int>(cls.size());
  const TypeDecomposition& td = W.typedec();
  if (td.empty()) {
    ct.labels = {"1"};
    ct.values = {{CycScalar(1)}};
    ct.b = {0};
    return ct;
  }
  if (td.size() == 1) {
    CompTable c = component_table(T, td[0], cls, ct.class_of);
    ct.labels = c.labels;
    ct.values = c.values;
    ct.b = c.b;
    return ct;
  }
  // Tensor products of component tables; component parts read off reduced words.
  ct.labels = {""};
  ct.values = {std::vector<CycScalar>(k, CycScalar(1))};
  ct.b = {0};
  for (const TypeComponent& comp : td) {
    CoxeterGroup Wc = build(restrict_cartan(W.cartan(), comp.indices));
    ElementTable Tc(Wc);
    std::vector<ConjClass> ccls = conjugacy_classes(Tc);
    std::vector<int> cco = class_index(Tc, ccls);
    CompTable t = component_table(Tc, Wc.typedec()[0], ccls, cco);
    std::vector<int> local(W.rank(), -1);
    for (int i = 0; i < comp.rank(); ++i) local[comp.indices[i]] = i;
    std::vector<int> cc(k);
    for (int c = 0; c < k; ++c) {
      Word lw;
      for (int s : T.word(cls[c].rep))
        if (local[s] >= 0) lw.push_back(local[s]);
      cc[c] = cco[Tc.index_of_word(lw)];
    }
    OrdinaryCharTable nt;
    for (int i = 0; i < static_cast<int>(ct.values.size()); ++i)
      for (size_t j = 0; j < t.values.size(); ++j) {
        nt.labels.push_back(ct.labels[i].empty() ? t.labels[j] : ct.labels[i] + " x " + t.labels[j]);
        std::vector<CycScalar> row(k);
        for (int c = 0; c < k; ++c) row[c] = ct.values[i][c] * t.values[j][cc[c]];
        nt.values.push_back(std::move(row));
        nt.b.push_back(ct.b[i] + t.b[j]);
      }
    ct.labels = std::move(nt.labels);
    ct.values = std::move(nt.values);
    ct.b = std::move(nt.b);
  }
  return ct;
}

}  // namespace cellkit
