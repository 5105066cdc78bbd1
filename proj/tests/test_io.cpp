#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "cellkit/io.hpp"
#include "pipeline.hpp"

using namespace cellkit;
using cellkit::testing::Pipeline;

namespace {

std::vector<std::vector<int>> cell_lists(const CellResult& r) {
  std::vector<std::vector<int>> v;
  for (const auto& c : r.cells) v.push_back(c.elements);
  return v;
}

struct RunResult {
  int code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(CELLKIT_CLI) + " " + args + " 2>/dev/null";
  FILE* f = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) out.append(buf.data(), n);
  int st = pclose(f);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::filesystem::path temp_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("cellkit_test_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace

TEST(Json, ScalarRoundTrip) {
  for (const CycScalar& x : {CycScalar(Rational(3, 7)), CycScalar::golden(), CycScalar::sqrt_int(2),
                             CycScalar::zeta(8, 3), CycScalar::two_cos(7, 2), CycScalar(0)})
    EXPECT_EQ(cyc_from_json(cyc_to_json(x)), x) << x.str();
  EXPECT_EQ(cyc_from_json(Json("-5/2")), CycScalar(Rational(-5, 2)));
}

TEST(Json, LaurentRoundTrip) {
  LaurentPolynomial f = LaurentPolynomial::monomial(CycScalar::golden(), -3) + LaurentPolynomial(CycScalar(2)) +
                        LaurentPolynomial::monomial(CycScalar::zeta(5), 4);
  EXPECT_EQ(laurent_from_json(laurent_to_json(f)), f);
  IntLaurent g = IntLaurent::monomial(CheckedInt(-4), -2) + IntLaurent::monomial(CheckedInt(7), 5);
  EXPECT_EQ(int_laurent_from_json(laurent_to_json(g)), g);
  EXPECT_TRUE(laurent_from_json(laurent_to_json(LaurentPolynomial())).is_zero());
}

TEST(Json, CartanInputForms) {
  CartanMatrix a = cartan_from_json(Json::parse("[[2,-1],[-1,2]]"));
  CartanMatrix b = cartan_from_json(Json::parse(R"({"cartan": [["2","-1"],["-1","2"]]})"));
  EXPECT_EQ(build(a).order(), 6);
  EXPECT_EQ(build(b).order(), 6);
  EXPECT_THROW(cartan_from_json(Json::parse("[[2,-1],[-1]]")), std::invalid_argument);
}

TEST(Json, CellsRoundTrip) {
  Pipeline p("B3", {2, 1, 1});
  Json j = cells_to_json(p.T, p.L, p.cells, true);
  CellResult r = cells_from_json(p.T, p.L, j);
  EXPECT_EQ(cell_lists(r), cell_lists(p.cells));
  ASSERT_EQ(r.wgraphs.size(), p.cells.wgraphs.size());
  for (size_t i = 0; i < r.wgraphs.size(); ++i) {
    EXPECT_EQ(r.wgraphs[i].elements, p.cells.wgraphs[i].elements);
    EXPECT_EQ(r.wgraphs[i].I, p.cells.wgraphs[i].I);
    EXPECT_EQ(r.wgraphs[i].edges.size(), p.cells.wgraphs[i].edges.size());
    EXPECT_TRUE(wgraph_verify(p.T, r.wgraphs[i]).ok);
  }
  for (int w = 0; w < p.T.size(); ++w) EXPECT_EQ(r.cell_of(w), p.cells.cell_of(w));
  // serialization is stable
  EXPECT_EQ(cells_to_json(p.T, p.L, r, true).dump(), j.dump());
}

TEST(Json, ZeroWeightCellsRoundTrip) {
  CoxeterGroup W = build(cartanmat_from_label("B2"));
  ElementTable T(W);
  WeightFunction L = weightfn_validate(W, {1, 0});
  CellResult c = left_cells(T, L);
  CellResult r = cells_from_json(T, L, cells_to_json(T, L, c, true));
  EXPECT_EQ(cell_lists(r), cell_lists(c));
  for (size_t i = 0; i < r.wgraphs.size(); ++i) EXPECT_EQ(r.wgraphs[i].zero_maps, c.wgraphs[i].zero_maps);
}

TEST(Json, HeckeTableRoundTrip) {
  Pipeline p("H3");
  HeckeCharTable h = hecke_from_json(p.T, p.ct, hecke_to_json(p.T, p.H));
  EXPECT_EQ(h.labels, p.H.labels);
  EXPECT_EQ(h.reps, p.H.reps);
  EXPECT_EQ(h.values, p.H.values);
}

TEST(Cache, StoreAndLoad) {
  auto dir = temp_dir("cache");
  CoxeterGroup W = build(cartanmat_from_label("G2"));
  ElementTable T(W);
  WeightFunction L = weightfn_validate(W, {1, 2});
  WeightFunction L2 = weightfn_validate(W, {2, 1});
  EXPECT_NE(cache_key(W, L), cache_key(W, L2));
  EXPECT_FALSE(cache_load(dir.string(), T, L).has_value());
  CellResult c = left_cells(T, L);
  cache_store(dir.string(), T, L, c);
  auto r = cache_load(dir.string(), T, L);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(cell_lists(*r), cell_lists(c));
  EXPECT_FALSE(cache_load(dir.string(), T, L2).has_value());
  std::filesystem::remove_all(dir);
}

TEST(Cli, LeadingIsDeterministic) {
  RunResult a = run_cli("leading --type B2 --weights 2,1");
  RunResult b = run_cli("leading --type B2 --weights 2,1 --threads 2");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  Json j = Json::parse(a.out);
  EXPECT_TRUE(j.is_object());
}

TEST(Cli, CellsThroughCacheAreIdentical) {
  auto dir = temp_dir("cli");
  std::string base = "cells --type F4 --weights 1,1,2,2 --cache-dir " + dir.string();
  RunResult a = run_cli(base);
  RunResult b = run_cli(base);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(Json::parse(a.out)["cells"].size(), 92u);
  std::filesystem::remove_all(dir);
}

TEST(Cli, HeckeTableFileIsAccepted) {
  auto dir = temp_dir("hecke");
  Pipeline p("I2(5)");
  std::string path = (dir / "h.json").string();
  std::ofstream(path) << hecke_to_json(p.T, p.H).dump();
  RunResult a = run_cli("leading --type I2 --bond 5");
  RunResult b = run_cli("leading --type I2 --bond 5 --hecke-table " + path);
  EXPECT_EQ(b.code, 0);
  EXPECT_EQ(a.out, b.out);
  std::filesystem::remove_all(dir);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("group --type A3").code, 0);
  EXPECT_EQ(run_cli("check --type B3 --weights 2,1,1").code, 0);
  EXPECT_EQ(run_cli("group --type Q7").code, 4);
  EXPECT_EQ(run_cli("cells --type B3 --weights 1,2,1").code, 4);
  EXPECT_EQ(run_cli("cells --type E8").code, 3);
  EXPECT_EQ(run_cli("cells --type F4 --max-order 100").code, 3);
}

TEST(Cli, TextKl) {
  RunResult r = run_cli("kl --type A3 --y s1 --w s1s0s2s1 --format text");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("s1s0s2s1"), std::string::npos);
}
