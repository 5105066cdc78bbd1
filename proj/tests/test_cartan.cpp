#include <gtest/gtest.h>

#include "cellkit/cartan.hpp"

using namespace cellkit;

namespace {
CartanMatrix ints(const std::vector<std::vector<long>>& m) {
  CartanMatrix c;
  for (const auto& r : m) {
    std::vector<CycScalar> row;
    for (long x : r) row.emplace_back(x);
    c.push_back(row);
  }
  return c;
}

CartanMatrix h3g2() {
  CycScalar a = CycScalar::golden();
  CartanMatrix c = ints({{2, 0, -1, 0, 0}, {0, 2, 0, 0, -1}, {-1, 0, 2, 0, 0}, {0, 0, 0, 2, 0}, {0, -3, 0, 0, 2}});
  c[0][3] = -a;
  c[3][0] = -a;
  return c;
}
}  // namespace

TEST(Cartanmat, StandardMatrices) {
  EXPECT_EQ(cartanmat("B", 3), ints({{2, -2, 0}, {-1, 2, -1}, {0, -1, 2}}));
  EXPECT_EQ(cartanmat("C", 3), ints({{2, -1, 0}, {-2, 2, -1}, {0, -1, 2}}));
  EXPECT_EQ(cartanmat("A", 1), ints({{2}}));
  EXPECT_THROW(cartanmat("E", 5), std::invalid_argument);
  EXPECT_THROW(cartanmat("I", 2, 2), std::invalid_argument);
}

TEST(CoxeterMatrix, Examples) {
  auto aff = ints({{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}});
  EXPECT_EQ(coxeter_matrix(aff), (CoxeterMatrix{{1, 3, 3}, {3, 1, 3}, {3, 3, 1}}));
  EXPECT_EQ(coxeter_matrix(cartanmat("G", 2)), (CoxeterMatrix{{1, 6}, {6, 1}}));
  EXPECT_EQ(coxeter_matrix(ints({{2, -2}, {-2, 2}})), (CoxeterMatrix{{1, 0}, {0, 1}}));
  EXPECT_THROW(coxeter_matrix(ints({{2, -5}, {-1, 2}})), std::invalid_argument);
  EXPECT_EQ(coxeter_matrix(cartanmat("I", 2, 7))[0][1], 7);
  EXPECT_EQ(coxeter_matrix(cartanmat("I", 2, 8))[0][1], 8);
}

TEST(Recognize, ReferenceExamples) {
  TypeDecomposition t = recognize(h3g2());
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[0].type, 'H');
  EXPECT_EQ(t[0].indices, (std::vector<int>{3, 0, 2}));
  EXPECT_EQ(t[1].type, 'G');
  EXPECT_EQ(t[1].indices, (std::vector<int>{1, 4}));
  EXPECT_EQ(cartanname(t), "H3c3c0c2G2c1c4");
  auto u = recognize(ints({{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}}));
  ASSERT_EQ(u.size(), 1u);
  EXPECT_EQ(u[0].type, 'U');
  EXPECT_EQ(u[0].indices, (std::vector<int>{0, 1, 2}));
  auto f = recognize(cartanmat("F", 4));
  EXPECT_EQ(f[0].type, 'F');
  EXPECT_EQ(f[0].indices, (std::vector<int>{0, 1, 2, 3}));
}

TEST(Recognize, AllStandardTypesRoundTrip) {
  std::vector<std::pair<std::string, int>> types;
  for (int n = 1; n <= 8; ++n) types.push_back({"A", n});
  for (int n = 2; n <= 8; ++n) types.push_back({"B", n});
  for (int n = 3; n <= 8; ++n) types.push_back({"C", n});
  for (int n = 4; n <= 8; ++n) types.push_back({"D", n});
  for (int n = 6; n <= 8; ++n) types.push_back({"E", n});
  types.push_back({"F", 4});
  types.push_back({"G", 2});
  types.push_back({"H", 3});
  types.push_back({"H", 4});
  for (auto [t, n] : types) {
    auto d = recognize(cartanmat(t, n));
    ASSERT_EQ(d.size(), 1u) << t << n;
    EXPECT_EQ(d[0].type, t[0]) << t << n;
    std::vector<int> id(n);
    for (int i = 0; i < n; ++i) id[i] = i;
    EXPECT_EQ(d[0].indices, id) << t << n;
  }
  for (int m : {5, 7, 8, 9, 12}) {
    auto d = recognize(cartanmat("I", 2, m));
    EXPECT_EQ(d[0].type, 'I');
    EXPECT_EQ(d[0].bond, m);
    EXPECT_EQ(d[0].label(), "I2(" + std::to_string(m) + ")");
  }
}

TEST(Recognize, PermutedAndNonStandard) {
  // F4 with reversed numbering
  auto c = cartanmat("F", 4);
  auto r = restrict_cartan(c, {3, 2, 1, 0});
  auto d = recognize(r);
  EXPECT_EQ(d[0].type, 'F');
  EXPECT_EQ(d[0].indices, (std::vector<int>{3, 2, 1, 0}));
  // A2 with a rescaled (non-symmetric) Cartan matrix still has type A by its graph
  CartanMatrix a2 = {{CycScalar(2), CycScalar(-2)}, {CycScalar(Rational(-1, 2)), CycScalar(2)}};
  auto da = recognize(a2);
  EXPECT_EQ(da[0].type, 'A');
}

TEST(Degrees, Examples) {
  auto t = recognize(h3g2());
  EXPECT_EQ(degrees(t), (std::vector<int>{2, 2, 6, 6, 10}));
  long prod = 1;
  for (int d : degrees(t)) prod *= d;
  EXPECT_EQ(prod, 1440);
  EXPECT_EQ(degrees(recognize(cartanmat("A", 1))), (std::vector<int>{2}));
  EXPECT_THROW(degrees(recognize(ints({{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}}))), std::invalid_argument);
}

TEST(CoxeterMatrixProperty, SymmetricUnitDiagonal) {
  for (auto lbl : {"A5", "B4", "D5", "E6", "F4", "H4", "I2(9)"}) {
    auto m = coxeter_matrix(cartanmat_from_label(lbl));
    for (size_t i = 0; i < m.size(); ++i) {
      EXPECT_EQ(m[i][i], 1);
      for (size_t j = 0; j < m.size(); ++j) EXPECT_EQ(m[i][j], m[j][i]);
    }
  }
}
