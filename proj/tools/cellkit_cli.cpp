#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "cellkit/cartan.hpp"
#include "cellkit/chartable.hpp"
#include "cellkit/coxgroup.hpp"
#include "cellkit/io.hpp"
#include "cellkit/klbase.hpp"
#include "cellkit/leading.hpp"
#include "cellkit/relcells.hpp"

using namespace cellkit;

namespace {

constexpr int kViolation = 2, kCap = 3, kInput = 4;

struct Options {
  std::string type, cartan_file, weights, format = "json", cache_dir, hecke_table, star = "off";
  int rank = 0, bond = 0, threads = 1;
  uint64_t max_order = DeskCap{}.max_enumerate;
  bool wgraphs = false;
  std::string y, w;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> r;
  std::stringstream ss(s);
  std::string t;
  while (std::getline(ss, t, sep))
    if (!t.empty()) r.push_back(t);
  return r;
}

CartanMatrix cartan_of(const Options& o) {
  if (!o.cartan_file.empty()) {
    if (!o.type.empty()) throw std::invalid_argument("--type and --cartan-file are exclusive");
    return cartan_from_file(o.cartan_file);
  }
  if (o.type.empty()) throw std::invalid_argument("a group is required (--type or --cartan-file)");
  if (o.bond > 0) {
    if (o.type != "I2" && o.type != "I") throw std::invalid_argument("--bond applies to type I2");
    return cartanmat("I", 2, o.bond);
  }
  if (o.rank > 0) return cartanmat(o.type, o.rank);
  std::vector<CartanMatrix> blocks;
  for (const auto& part : split(o.type, 'x')) blocks.push_back(cartanmat_from_label(part));
  return blocks.size() == 1 ? blocks[0] : cartanmat_product(blocks);
}

std::vector<int> parse_weights(const Options& o, int rank) {
  if (o.weights.empty()) return std::vector<int>(rank, 1);
  std::vector<int> w;
  for (const auto& t : split(o.weights, ',')) {
    size_t pos = 0;
    int v = std::stoi(t, &pos);
    if (pos != t.size()) throw std::invalid_argument("bad weight " + t);
    w.push_back(v);
  }
  return w;
}

// "0,1,0" or "s0s1s0"; empty is the identity
Word parse_word(const std::string& s) {
  Word w;
  if (!s.empty() && s[0] == 's') {
    for (const auto& t : split(s.substr(1), 's')) w.push_back(std::stoi(t));
    return w;
  }
  for (const auto& t : split(s, ',')) w.push_back(std::stoi(t));
  return w;
}

std::string word_text(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (int x : w) s += "s" + std::to_string(x);
  return s;
}

void emit(const Options& o, const Json& j, const std::string& text) {
  if (o.format == "json")
    std::cout << j.dump(1) << "\n";
  else
    std::cout << text;
}

Json typedec_json(const TypeDecomposition& td) {
  Json a = Json::array();
  for (const auto& c : td) {
    Json e = Json::array({std::string(1, c.type), c.indices});
    if (c.type == 'I') e.push_back(c.bond);
    a.push_back(e);
  }
  return a;
}

// Everything downstream of the group and weights.
struct Job {
  Options opt;
  std::unique_ptr<CoxeterGroup> W;
  std::unique_ptr<ElementTable> T;
  WeightFunction L;
  CellResult cells;

  explicit Job(const Options& o) : opt(o) {
    W = std::make_unique<CoxeterGroup>(build(cartan_of(o)));
    L = weightfn_validate(*W, parse_weights(o, W->rank()));
  }
  void table() {
    if (!W->finite()) throw std::invalid_argument("this command needs a finite group");
    DeskCap cap;
    cap.max_enumerate = opt.max_order;
    T = std::make_unique<ElementTable>(*W, cap);
  }
  void compute_cells(bool need_wgraphs) {
    table();
    if (!opt.cache_dir.empty()) {
      std::optional<CellResult> c = cache_load(opt.cache_dir, *T, L);
      if (c && (!need_wgraphs || c->wgraphs.size() == c->cells.size())) {
        cells = std::move(*c);
        return;
      }
    }
    CellOptions co;
    co.threads = opt.threads;
    co.star_induction = opt.star == "on" && L.equal_parameters();
    co.keep_wgraphs = true;
    cells = left_cells(*T, L, co);
    if (!opt.cache_dir.empty()) cache_store(opt.cache_dir, *T, L, cells);
  }
};

int cmd_group(const Options& o) {
  CoxeterGroup W = build(cartan_of(o));
  Json j;
  j["cartanname"] = W.name();
  j["typedec"] = typedec_json(W.typedec());
  std::ostringstream t;
  t << "group      " << W.name() << "\n";
  t << "typedec    " << typedec_json(W.typedec()).dump() << "\n";
  if (W.finite()) {
    j["N"] = W.N();
    j["order"] = W.order();
    j["degrees"] = W.degrees();
    t << "N          " << W.N() << "\norder      " << W.order() << "\ndegrees    " << Json(W.degrees()).dump() << "\n";
    DeskCap cap;
    cap.max_enumerate = o.max_order;
    if (W.order() <= cap.max_enumerate) {
      ElementTable T(W, cap);
      int ncl = static_cast<int>(conjugacy_classes(T).size());
      int ninv = static_cast<int>(involutions(T).size());
      j["classes"] = ncl;
      j["involutions"] = ninv;
      t << "classes    " << ncl << "\ninvolutions " << ninv << "\n";
    }
  } else {
    t << "infinite\n";
  }
  emit(o, j, t.str());
  return 0;
}

int cmd_cells(const Options& o) {
  Job job(o);
  job.compute_cells(o.wgraphs);
  const ElementTable& T = *job.T;
  Json j = cells_to_json(T, job.L, job.cells, o.wgraphs);
  std::map<int, int> sizes;
  for (const auto& c : job.cells.cells) ++sizes[static_cast<int>(c.elements.size())];
  Json summary;
  summary["cells"] = job.cells.cells.size();
  Json sz = Json::array();
  for (auto [s, n] : sizes) sz.push_back(Json::array({s, n}));
  summary["sizes"] = sz;
  std::ostringstream t;
  t << "group " << job.W->name() << " weights " << Json(job.L.weights).dump() << "\n";
  t << "left cells " << job.cells.cells.size() << "\nsizes";
  for (auto [s, n] : sizes) t << " " << s << "^" << n;
  t << "\n";
  if (job.L.equal_parameters()) {
    StarResult st = star_ops(T, job.L, job.cells.cells, (1u << job.W->rank()) - 1);
    summary["star_classes"] = st.classes();
    t << "star classes " << st.classes() << "\n";
  }
  j["summary"] = summary;
  if (o.format != "json") {
    for (size_t i = 0; i < job.cells.cells.size(); ++i) {
      t << "cell " << i << ":";
      for (int w : job.cells.cells[i].elements) t << " " << word_text(T.word(w));
      t << "\n";
    }
  }
  emit(o, j, t.str());
  return 0;
}

struct LeadingJob {
  Job job;
  std::unique_ptr<OrdinaryCharTable> ct;
  HeckeCharTable H;
  std::unique_ptr<ClassPolynomials> cp;
  LeadingData D;
  Conj42Report r42;
  std::vector<std::vector<int>> mult;

  explicit LeadingJob(const Options& o) : job(o) {
    for (int x : job.L.weights)
      if (x <= 0) throw std::invalid_argument("leading coefficients need positive weights");
    job.compute_cells(true);
    const ElementTable& T = *job.T;
    ct = std::make_unique<OrdinaryCharTable>(ordinary_chartable(T));
    if (!o.hecke_table.empty()) {
      std::ifstream in(o.hecke_table);
      if (!in) throw std::invalid_argument("cannot open " + o.hecke_table);
      H = hecke_from_json(T, *ct, Json::parse(in));
      if (H.L.weights != job.L.weights) throw std::invalid_argument("Hecke table: weight mismatch");
    } else {
      H = hecke_chartable(T, job.L, *ct, &job.cells);
    }
    if (!hecke_specializes(H, *ct)) throw std::logic_error("Hecke table does not specialize to the ordinary table");
    cp = std::make_unique<ClassPolynomials>(T, job.L, *ct);
    D = leading_coeffs(T, H, *cp);
    r42 = check_conj42(T, D, job.cells.cells);
    for (const auto& g : job.cells.wgraphs) mult.push_back(module_multiplicities(T, *ct, g));
  }
};

std::string pad(const std::string& s, size_t w) {
  // width in code points
  size_t n = 0;
  for (unsigned char c : s)
    if ((c & 0xc0) != 0x80) ++n;
  return s + std::string(w > n ? w - n : 0, ' ');
}

size_t width(const std::string& s) {
  size_t n = 0;
  for (unsigned char c : s)
    if ((c & 0xc0) != 0x80) ++n;
  return n;
}

int cmd_leading(const Options& o) {
  LeadingJob lj(o);
  const ElementTable& T = *lj.job.T;
  const LeadingData& D = lj.D;
  Json j;
  j["group"] = lj.job.W->name();
  j["weights"] = lj.job.L.weights;
  std::ostringstream t;
  t << "group " << lj.job.W->name() << " weights " << Json(lj.job.L.weights).dump() << "\n\n";
  Json irr = Json::array();
  size_t lw = 5;
  for (const auto& l : D.labels) lw = std::max(lw, width(l));
  t << pad("E", lw) << "  dim  a_E  f_E\n";
  for (int e = 0; e < D.nirr(); ++e) {
    irr.push_back(Json{{"label", D.labels[e]}, {"dim", D.dims[e]}, {"a", D.a[e]}, {"f", D.f[e].str()}});
    t << pad(D.labels[e], lw) << "  " << std::setw(3) << D.dims[e] << "  " << std::setw(3) << D.a[e] << "  "
      << D.f[e].str() << "\n";
  }
  j["irreducibles"] = irr;
  Json dt = Json::array();
  t << "\nD~ (" << D.Dtilde.size() << " elements):";
  for (int w : D.Dtilde) {
    dt.push_back(Json{{"element", word_to_json(T.word(w))}, {"n", D.n[w].str()}});
    t << " " << word_text(T.word(w)) << "[" << D.n[w].str() << "]";
  }
  t << "\n";
  j["Dtilde"] = dt;
  Json tabs = Json::array();
  int status = 0;
  for (size_t i = 0; i < lj.job.cells.cells.size(); ++i) {
    const LeftCell& cell = lj.job.cells.cells[i];
    Json c;
    c["cell"] = i;
    c["size"] = cell.elements.size();
    if (lj.r42.d[i] < 0) {
      c["error"] = "no unique element of D~";
      tabs.push_back(c);
      t << "\ncell " << i << ": no unique element of D~\n";
      status = kViolation;
      continue;
    }
    CellLeadingTable tab = cell_leading_table(T, D, cell, lj.r42, static_cast<int>(i), lj.mult[i]);
    c["d"] = word_to_json(T.word(tab.d));
    c["n_d"] = D.n[tab.d].str();
    Json cols = Json::array();
    for (int w : tab.cols) cols.push_back(word_to_json(T.word(w)));
    c["columns"] = cols;
    Json rows = Json::array();
    for (size_t a = 0; a < tab.rows.size(); ++a) {
      Json ent = Json::array();
      for (const auto& x : tab.entries[a]) ent.push_back(x.str());
      rows.push_back(Json{{"label", D.labels[tab.rows[a]]}, {"m", tab.mult[a]}, {"entries", ent}});
    }
    c["rows"] = rows;
    tabs.push_back(c);
    t << "\ncell " << i << " (" << cell.elements.size() << " elements), d = " << word_text(T.word(tab.d))
      << ", n_d = " << D.n[tab.d].str() << "\n";
    std::vector<std::vector<std::string>> grid;
    std::vector<std::string> head{""};
    for (int w : tab.cols) head.push_back(word_text(T.word(w)));
    grid.push_back(head);
    for (size_t a = 0; a < tab.rows.size(); ++a) {
      std::vector<std::string> row{D.labels[tab.rows[a]]};
      for (const auto& x : tab.entries[a]) row.push_back(x.str());
      grid.push_back(row);
    }
    std::vector<size_t> cw(head.size(), 0);
    for (const auto& row : grid)
      for (size_t k = 0; k < row.size(); ++k) cw[k] = std::max(cw[k], width(row[k]));
    for (const auto& row : grid) {
      std::string line = " ";
      for (size_t k = 0; k < row.size(); ++k) line += " " + pad(row[k], cw[k]);
      line.erase(line.find_last_not_of(' ') + 1);
      t << line << "\n";
    }
  }
  j["tables"] = tabs;
  emit(o, j, t.str());
  return status;
}

int cmd_check(const Options& o) {
  LeadingJob lj(o);
  const ElementTable& T = *lj.job.T;
  const LeadingData& D = lj.D;
  const auto& cells = lj.job.cells.cells;
  bool ok = lj.r42.ok;
  Json j;
  j["group"] = lj.job.W->name();
  j["weights"] = lj.job.L.weights;
  std::ostringstream t;
  t << "group " << lj.job.W->name() << " weights " << Json(lj.job.L.weights).dump() << "\n";
  t << "left cells " << cells.size() << "\n";
  j["cells"] = cells.size();
  j["conj42"] = Json{{"ok", lj.r42.ok}, {"violations", lj.r42.violations}};
  t << "conj42 " << (lj.r42.ok ? "pass" : "FAIL") << "\n";
  for (const auto& v : lj.r42.violations) t << "  " << v << "\n";
  if (lj.r42.ok) {
    CspecReport cs = check_cspec(T, D, cells, lj.r42, lj.mult);
    ok = ok && cs.ok;
    Json sl = Json::array();
    for (int e : cs.SL) sl.push_back(D.labels[e]);
    j["cspec"] = Json{{"ok", cs.ok}, {"S_L", sl}, {"violations", cs.violations}};
    j["countcell"] = Json{{"sum_dims", cs.sum_dims}, {"cells", cs.ncells}, {"ok", cs.sum_dims == cs.ncells}};
    t << "cspec " << (cs.ok ? "pass" : "FAIL") << "\nS_L:";
    for (int e : cs.SL) t << " " << D.labels[e];
    t << "\n";
    for (const auto& v : cs.violations) t << "  " << v << "\n";
    t << "countcell " << cs.sum_dims << " = " << cs.ncells << (cs.sum_dims == cs.ncells ? " pass" : " FAIL") << "\n";
  }
  KLCache kl(T, lj.job.L);
  DistinguishedReport dr = distinguished(kl, cells);
  std::set<int> Dset, Dt(D.Dtilde.begin(), D.Dtilde.end());
  for (const auto& d : dr.D) Dset.insert(d.element);
  bool agree = Dset == Dt && dr.bad_cells.empty();
  j["Dtilde_equals_D"] = agree;
  t << "D~ = D: " << (agree ? "yes" : "no") << " (|D~| = " << Dt.size() << ", |D| = " << Dset.size() << ")\n";
  emit(o, j, t.str());
  return ok ? 0 : kViolation;
}

int cmd_kl(const Options& o) {
  Job job(o);
  job.table();
  const ElementTable& T = *job.T;
  KLCache kl(T, job.L);
  int y = T.index_of_word(parse_word(o.y)), w = T.index_of_word(parse_word(o.w));
  IntLaurent p = kl.pstar(y, w);
  Json j{{"group", job.W->name()}, {"weights", job.L.weights}, {"y", word_to_json(T.word(y))},
         {"w", word_to_json(T.word(w))}, {"pstar", laurent_to_json(p)}};
  std::ostringstream t;
  t << "y = " << word_text(T.word(y)) << "\nw = " << word_text(T.word(w)) << "\n";
  t << "P*_{y,w} = " << p.str("v") << "\n";
  Json ms = Json::object();
  for (int s = 0; s < job.W->rank(); ++s) {
    if (job.L[s] <= 0) continue;
    if (!(T.length(T.lmul(s, y)) < T.length(y) && T.length(y) < T.length(w) && T.length(T.lmul(s, w)) > T.length(w)))
      continue;
    IntLaurent m = kl.m(s, y, w);
    ms[std::to_string(s)] = laurent_to_json(m);
    t << "M^" << s << "_{y,w} = " << m.str("v") << "\n";
  }
  j["m"] = ms;
  emit(o, j, t.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Left cells, W-graphs and leading coefficients of Iwahori-Hecke algebras"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* c, bool weights) {
    c->add_option("--type", o.type, "group type, e.g. F4, I2(5), H3xG2, or a type letter with --rank/--bond");
    c->add_option("--rank", o.rank, "rank for --type given as a letter");
    c->add_option("--bond", o.bond, "m for type I2");
    c->add_option("--cartan-file", o.cartan_file, "JSON file with a Cartan matrix");
    c->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}));
    c->add_option("--max-order", o.max_order, "largest group enumerated element by element");
    if (weights) {
      c->add_option("--weights", o.weights, "comma separated weights L(s), one per generator");
      c->add_option("--cache-dir", o.cache_dir, "directory for cached cell partitions");
      c->add_option("--threads", o.threads, "worker threads for the cell computation")->check(CLI::PositiveNumber);
      c->add_option("--star-induction", o.star, "use star operations (equal parameters)")
          ->check(CLI::IsMember({"on", "off"}));
    }
  };
  CLI::App* g = app.add_subcommand("group", "group summary");
  common(g, false);
  CLI::App* c = app.add_subcommand("cells", "left cells");
  common(c, true);
  c->add_flag("--wgraphs", o.wgraphs, "include W-graphs");
  CLI::App* l = app.add_subcommand("leading", "leading coefficients and cell tables");
  common(l, true);
  l->add_option("--hecke-table", o.hecke_table, "HeckeCharTable JSON to use instead of the computed one");
  CLI::App* k = app.add_subcommand("check", "conjecture checks");
  common(k, true);
  k->add_option("--hecke-table", o.hecke_table, "HeckeCharTable JSON to use instead of the computed one");
  CLI::App* p = app.add_subcommand("kl", "P*_{y,w} and M^s_{y,w}");
  common(p, true);
  p->add_option("--y", o.y, "word y, as 0,1,0 or s0s1s0")->required();
  p->add_option("--w", o.w, "word w, as 0,1,0 or s0s1s0")->required();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int r = app.exit(e);
    return r == 0 ? 0 : kInput;
  }
  try {
    if (*g) return cmd_group(o);
    if (*c) return cmd_cells(o);
    if (*l) return cmd_leading(o);
    if (*k) return cmd_check(o);
    if (*p) return cmd_kl(o);
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCap;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
