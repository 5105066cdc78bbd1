#include "cellkit/io.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace cellkit {

Json cyc_to_json(const CycScalar& x) {
  if (x.is_rational()) return rational_str(x.rational());
  Json c = Json::array();
  for (const auto& q : x.coords()) c.push_back(rational_str(q));
  return Json{{"conductor", x.conductor()}, {"coords", c}};
}

CycScalar cyc_from_json(const Json& j) {
  if (j.is_number_integer()) return CycScalar(j.get<long>());
  if (j.is_string()) return CycScalar(parse_rational(j.get<std::string>()));
  if (j.is_object()) {
    std::vector<Rational> c;
    for (const auto& q : j.at("coords"))
      c.push_back(q.is_string() ? parse_rational(q.get<std::string>()) : Rational(q.get<long>()));
    return CycScalar::make(j.at("conductor").get<int>(), c);
  }
  throw std::invalid_argument("scalar: expected rational string or {conductor, coords}");
}

Json laurent_to_json(const LaurentPolynomial& f) {
  Json a = Json::array();
  for (const auto& [e, c] : f.terms()) {
    Json co = Json::array();
    for (const auto& q : c.coords()) co.push_back(rational_str(q));
    a.push_back(Json::array({e, co, c.conductor()}));
  }
  return a;
}

Json laurent_to_json(const IntLaurent& f) { return laurent_to_json(to_cyc(f)); }

LaurentPolynomial laurent_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("laurent: expected an array of terms");
  std::vector<LaurentPolynomial::Term> t;
  for (const auto& term : j) {
    if (!term.is_array() || term.size() != 3) throw std::invalid_argument("laurent: term must be [exp, coords, conductor]");
    std::vector<Rational> c;
    for (const auto& q : term[1])
      c.push_back(q.is_string() ? parse_rational(q.get<std::string>()) : Rational(q.get<long>()));
    t.emplace_back(term[0].get<int>(), CycScalar::make(term[2].get<int>(), c));
  }
  return LaurentPolynomial::from_terms(std::move(t));
}

IntLaurent int_laurent_from_json(const Json& j) {
  std::vector<IntLaurent::Term> t;
  LaurentPolynomial f = laurent_from_json(j);
  for (const auto& [e, c] : f.terms()) {
    if (!c.is_integer()) throw std::invalid_argument("laurent: expected integer coefficients");
    t.emplace_back(e, CheckedInt(c.rational().get_num().get_si()));
  }
  return IntLaurent::from_terms(std::move(t));
}

CartanMatrix cartan_from_json(const Json& j) {
  if (j.is_object() && j.contains("cartan")) return cartan_from_json(j.at("cartan"));
  if (!j.is_array()) throw std::invalid_argument("Cartan matrix: expected an array of rows");
  CartanMatrix c;
  for (const auto& row : j) {
    if (!row.is_array()) throw std::invalid_argument("Cartan matrix: expected an array of rows");
    std::vector<CycScalar> r;
    for (const auto& x : row) r.push_back(cyc_from_json(x));
    c.push_back(std::move(r));
  }
  validate_cartan(c);
  return c;
}

CartanMatrix cartan_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return cartan_from_json(Json::parse(in));
}

Json word_to_json(const Word& w) {
  Json a = Json::array();
  for (int s : w) a.push_back(s);
  return a;
}

namespace {

Json mask_to_json(uint32_t m) {
  Json a = Json::array();
  for (int s = 0; s < 32; ++s)
    if ((m >> s) & 1u) a.push_back(s);
  return a;
}

uint32_t mask_from_json(const Json& j) {
  uint32_t m = 0;
  for (const auto& s : j) m |= 1u << s.get<int>();
  return m;
}

}  // namespace

Json cells_to_json(const ElementTable& T, const WeightFunction& L, const CellResult& r, bool with_wgraphs) {
  const CoxeterGroup& W = T.group();
  Json j;
  j["group"] = W.name();
  j["weights"] = L.weights;
  Json cells = Json::array();
  bool wg = with_wgraphs && r.wgraphs.size() == r.cells.size();
  for (size_t i = 0; i < r.cells.size(); ++i) {
    Json c;
    Json el = Json::array();
    for (int w : r.cells[i].elements) el.push_back(word_to_json(T.word(w)));
    c["elements"] = el;
    if (wg) {
      const WGraph& g = r.wgraphs[i];
      // W-graph vertices are listed in the order of g.elements
      if (g.elements != r.cells[i].elements) {
        Json ge = Json::array();
        for (int w : g.elements) ge.push_back(word_to_json(T.word(w)));
        c["elements"] = ge;
      }
      Json I = Json::array();
      for (uint32_t m : g.I) I.push_back(mask_to_json(m));
      c["I"] = I;
      Json edges = Json::array();
      for (const auto& e : g.edges) edges.push_back(Json{{"s", e.s}, {"x", e.x}, {"y", e.y}, {"m", laurent_to_json(e.m)}});
      c["edges"] = edges;
      Json zm = Json::object();
      for (size_t s = 0; s < g.zero_maps.size(); ++s)
        if (!g.zero_maps[s].empty()) zm[std::to_string(s)] = g.zero_maps[s];
      c["zeroWeightMaps"] = zm;
    }
    cells.push_back(c);
  }
  j["cells"] = cells;
  return j;
}

CellResult cells_from_json(const ElementTable& T, const WeightFunction& L, const Json& j) {
  const CoxeterGroup& W = T.group();
  if (j.at("group").get<std::string>() != W.name()) throw std::invalid_argument("cells: group mismatch");
  if (j.at("weights").get<std::vector<int>>() != L.weights) throw std::invalid_argument("cells: weight mismatch");
  CellResult r;
  r.cellid_.assign(T.size(), -1);
  bool wg = true;
  for (const auto& c : j.at("cells")) {
    std::vector<int> order;
    for (const auto& w : c.at("elements")) order.push_back(T.index_of_word(w.get<Word>()));
    LeftCell lc{order};
    std::sort(lc.elements.begin(), lc.elements.end());
    for (int w : lc.elements) {
      if (r.cellid_[w] >= 0) throw std::invalid_argument("cells: element in two cells");
      r.cellid_[w] = static_cast<int>(r.cells.size());
    }
    r.cells.push_back(lc);
    if (!c.contains("I")) {
      wg = false;
      continue;
    }
    WGraph g;
    g.elements = order;
    for (const auto& m : c["I"]) g.I.push_back(mask_from_json(m));
    for (const auto& e : c.at("edges"))
      g.edges.push_back({e.at("s").get<int>(), e.at("x").get<int>(), e.at("y").get<int>(), int_laurent_from_json(e.at("m"))});
    g.zero_maps.assign(W.rank(), {});
    for (const auto& [k, v] : c.at("zeroWeightMaps").items()) g.zero_maps[std::stoi(k)] = v.get<std::vector<int>>();
    g.weights = L.weights;
    g.gens = (W.rank() >= 32) ? 0xffffffffu : ((1u << W.rank()) - 1);
    r.wgraphs.push_back(std::move(g));
  }
  if (!wg) r.wgraphs.clear();
  for (int w = 0; w < T.size(); ++w)
    if (r.cellid_[w] < 0) throw std::invalid_argument("cells: partition does not cover the group");
  return r;
}

Json hecke_to_json(const ElementTable& T, const HeckeCharTable& H) {
  Json j;
  j["group"] = T.group().name();
  j["weights"] = H.L.weights;
  Json cl = Json::array();
  for (size_t c = 0; c < H.reps.size(); ++c) cl.push_back(Json{{"rep", word_to_json(T.word(H.reps[c]))}, {"size", H.sizes[c]}});
  j["classes"] = cl;
  Json irr = Json::array();
  for (int e = 0; e < H.nirr(); ++e) {
    Json v = Json::array();
    for (const auto& x : H.values[e]) v.push_back(laurent_to_json(x));
    irr.push_back(Json{{"label", H.labels[e]}, {"dim", H.dims[e]}, {"values", v}});
  }
  j["irreducibles"] = irr;
  return j;
}

HeckeCharTable hecke_from_json(const ElementTable& T, const OrdinaryCharTable& ct, const Json& j) {
  if (j.at("group").get<std::string>() != T.group().name()) throw std::invalid_argument("Hecke table: group mismatch");
  int ncl = ct.nclasses(), nirr = ct.nirr();
  const Json& cl = j.at("classes");
  if (static_cast<int>(cl.size()) != ncl) throw std::invalid_argument("Hecke table: wrong number of classes");
  std::vector<int> col(ncl, -1);  // file column -> class
  std::vector<Word> words;
  for (int c = 0; c < ncl; ++c) {
    words.push_back(cl[c].at("rep").get<Word>());
    int k = ct.class_of[T.index_of_word(words.back())];
    if (T.length(ct.reps[k]) != static_cast<int>(words.back().size()))
      throw std::invalid_argument("Hecke table: class representatives must have minimal length");
    col[c] = k;
  }
  HeckeCharTable H;
  H.L.weights = j.at("weights").get<std::vector<int>>();
  H.reps = ct.reps;
  H.sizes = ct.sizes;
  H.labels = ct.labels;
  for (int e = 0; e < nirr; ++e) H.dims.push_back(ct.dim(e));
  H.values.assign(nirr, {});
  const Json& irr = j.at("irreducibles");
  if (static_cast<int>(irr.size()) != nirr) throw std::invalid_argument("Hecke table: wrong number of irreducibles");
  for (const auto& row : irr) {
    std::vector<LaurentPolynomial> v(ncl);
    const Json& vals = row.at("values");
    if (static_cast<int>(vals.size()) != ncl) throw std::invalid_argument("Hecke table: row length");
    for (int c = 0; c < ncl; ++c) v[col[c]] = laurent_from_json(vals[c]);
    int match = -1;
    for (int e = 0; e < nirr; ++e) {
      bool ok = H.values[e].empty();
      for (int c = 0; c < ncl && ok; ++c) ok = v[c].eval_one() == ct.values[e][c];
      if (ok) {
        match = e;
        break;
      }
    }
    if (match < 0) throw std::invalid_argument("Hecke table: a row does not specialize to an ordinary character");
    H.values[match] = std::move(v);
  }
  return H;
}

std::string cache_key(const CoxeterGroup& W, const WeightFunction& L) {
  std::string k;
  for (char ch : W.name()) k += std::isalnum(static_cast<unsigned char>(ch)) ? ch : '_';
  k += "_w";
  for (int x : L.weights) k += "_" + std::to_string(x);
  return k;
}

std::optional<CellResult> cache_load(const std::string& dir, const ElementTable& T, const WeightFunction& L) {
  std::filesystem::path p = std::filesystem::path(dir) / (cache_key(T.group(), L) + ".json");
  std::ifstream in(p);
  if (!in) return std::nullopt;
  try {
    return cells_from_json(T, L, Json::parse(in));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void cache_store(const std::string& dir, const ElementTable& T, const WeightFunction& L, const CellResult& r) {
  std::filesystem::create_directories(dir);
  std::filesystem::path p = std::filesystem::path(dir) / (cache_key(T.group(), L) + ".json");
  std::filesystem::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    out << cells_to_json(T, L, r, true).dump() << "\n";
  }
  std::filesystem::rename(tmp, p);
}

}  // namespace cellkit
