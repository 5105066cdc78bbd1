#include <gtest/gtest.h>

#include <set>

#include "cellkit/coxgroup.hpp"

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
CartanMatrix affine() { return ints({{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}}); }
CartanMatrix h3g2() {
  CycScalar a = CycScalar::golden();
  CartanMatrix c = ints({{2, 0, -1, 0, 0}, {0, 2, 0, 0, -1}, {-1, 0, 2, 0, 0}, {0, 0, 0, 2, 0}, {0, -3, 0, 0, 2}});
  c[0][3] = c[3][0] = -a;
  return c;
}
// Subword oracle: y <= w iff some reduced word of w contains a subword equal to y.
bool subword_leq(const ElementTable& T, int y, int w) {
  Word ww = T.word(w);
  size_t n = ww.size();
  for (size_t m = 0; m < (1u << n); ++m) {
    int x = 0;
    for (size_t i = 0; i < n; ++i)
      if (m >> i & 1) x = T.rmul(x, ww[i]);
    if (x == y) return true;
  }
  return false;
}
}  // namespace

TEST(Build, ReferenceExamples) {
  CoxeterGroup W(h3g2());
  EXPECT_EQ(W.N(), 21);
  EXPECT_EQ(W.order(), 1440u);
  CoxeterGroup A1(cartanmat("A", 1));
  EXPECT_EQ(A1.N(), 1);
  EXPECT_EQ(A1.order(), 2u);
  CoxeterGroup Aff(affine());
  EXPECT_FALSE(Aff.finite());
  std::vector<Matrix> expect = {ints({{-1, 0, 0}, {1, 1, 0}, {1, 0, 1}}),
                                ints({{1, 1, 0}, {0, -1, 0}, {0, 1, 1}}),
                                ints({{1, 0, 1}, {0, 1, 1}, {0, 0, -1}})};
  EXPECT_EQ(Aff.matgens(), expect);
  EXPECT_THROW(CoxeterGroup(ints({{2, 1}, {1, 2}})), std::invalid_argument);
}

TEST(WordMat, AffineExample) {
  CoxeterGroup W(affine());
  Matrix m = W.word_to_mat({1, 0, 1, 2, 1, 0});
  EXPECT_EQ(m, ints({{-1, 0, -1}, {-2, -2, -1}, {4, 3, 3}}));
  EXPECT_EQ(W.mat_to_word(m), (Word{0, 1, 0, 2, 1, 0}));
  auto [l, r] = W.descent_sets_mat(m);
  EXPECT_EQ(l, (std::vector<int>{0, 1}));
  EXPECT_EQ(r, (std::vector<int>{0}));
  EXPECT_TRUE(W.mat_to_word(W.word_to_mat({})).empty());
  EXPECT_THROW(W.mat_to_word(ints({{2, 0, 0}, {0, 1, 0}, {0, 0, 1}})), std::invalid_argument);
}

TEST(WordMat, B2LongestIsCentralInvolution) {
  CoxeterGroup W(cartanmat("B", 2));
  Matrix m = W.word_to_mat({0, 1, 0, 1});
  EXPECT_EQ(m, ints({{-1, 0}, {0, -1}}));
}

TEST(Descents, Trivial) {
  CoxeterGroup W(cartanmat("A", 3));
  auto [l, r] = descent_sets(W, {});
  EXPECT_TRUE(l.empty() && r.empty());
  auto [l1, r1] = descent_sets(W, {1});
  EXPECT_EQ(l1, (std::vector<int>{1}));
  EXPECT_EQ(r1, (std::vector<int>{1}));
}

TEST(Bruhat, A2AgainstSubwordOracle) {
  CoxeterGroup W(cartanmat("A", 2));
  ElementTable T(W);
  BruhatTable B(T);
  int s0 = T.index_of_word({0}), s1 = T.index_of_word({1}), s01 = T.index_of_word({0, 1});
  EXPECT_TRUE(bruhat_leq(T, s0, s01));
  EXPECT_FALSE(bruhat_leq(T, s0, s1));
  for (int y = 0; y < T.size(); ++y)
    for (int w = 0; w < T.size(); ++w) {
      EXPECT_EQ(bruhat_leq(T, y, w), subword_leq(T, y, w));
      EXPECT_EQ(B.leq(y, w), subword_leq(T, y, w));
    }
}

TEST(Bruhat, B3TableMatchesRecursion) {
  CoxeterGroup W(cartanmat("B", 3));
  ElementTable T(W);
  BruhatTable B(T);
  for (int y = 0; y < T.size(); ++y)
    for (int w = 0; w < T.size(); w += 3) EXPECT_EQ(B.leq(y, w), bruhat_leq(T, y, w));
}

TEST(Longest, Examples) {
  CoxeterGroup A1(cartanmat("A", 1));
  ElementTable T1(A1);
  EXPECT_EQ(T1.word(longest_element(T1)), (Word{0}));
  CoxeterGroup I5(cartanmat("I", 2, 5));
  ElementTable T5(I5);
  EXPECT_EQ(T5.length(longest_element(T5)), 5);
  EXPECT_EQ(T5.word(T5.longest()), (Word{0, 1, 0, 1, 0}));
  EXPECT_EQ(T5.index_of_word({1, 0, 1, 0, 1}), T5.longest());
  CoxeterGroup H3(cartanmat("H", 3));
  ElementTable T3(H3);
  EXPECT_EQ(T3.length(T3.longest()), 15);
  EXPECT_EQ(H3.N(), 15);
}

TEST(ReflectionSubgroup, F4Example) {
  CoxeterGroup F4(cartanmat("F", 4));
  auto [H, f] = reflection_subgroup(F4, {1, 2, 6, 47});
  ASSERT_EQ(H.typedec().size(), 2u);
  EXPECT_EQ(H.typedec()[0].type, 'C');
  EXPECT_EQ(H.typedec()[0].indices, (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(H.typedec()[1].type, 'A');
  EXPECT_EQ(H.typedec()[1].indices, (std::vector<int>{3}));
  EXPECT_EQ(f.subJ, (std::vector<int>{1, 2, 3, 23}));
  EXPECT_FALSE(f.parabolic);
  EXPECT_EQ(f.parent_name, "F4c0c1c2c3");
  auto [P, fp] = reflection_subgroup(F4, {0, 1});
  EXPECT_TRUE(fp.parabolic);
  EXPECT_EQ(fp.subJ, (std::vector<int>{0, 1}));
  CoxeterGroup A2(cartanmat("A", 2));
  auto [Q, fq] = reflection_subgroup(A2, {0, 1});
  EXPECT_EQ(fq.subJ, (std::vector<int>{0, 1}));
  EXPECT_EQ(Q.order(), 6u);
}

TEST(Cosets, Examples) {
  CoxeterGroup I5(cartanmat("I", 2, 5));
  ElementTable T5(I5);
  EXPECT_EQ(coset_reps(T5, {1}).size(), 5u);
  CoxeterGroup H3(cartanmat("H", 3));
  ElementTable T3(H3);
  EXPECT_EQ(coset_reps(T3, {0, 1}).size(), 12u);
  auto all = coset_reps(T3, {0, 1, 2});
  EXPECT_EQ(all, (std::vector<int>{0}));
}

TEST(Deodhar, ExhaustiveI25) {
  CoxeterGroup I5(cartanmat("I", 2, 5));
  ElementTable T(I5);
  uint32_t J = mask_of({1});
  auto X = coset_reps(T, {1});
  std::set<int> xs(X.begin(), X.end());
  EXPECT_EQ(deodhar_case(T, J, 0, 1).kind, DeodharCase::Cross);
  EXPECT_EQ(deodhar_case(T, J, 0, 1).t, 1);
  EXPECT_EQ(deodhar_case(T, J, 0, 0).kind, DeodharCase::Up);
  int count = 0;
  for (int x : X)
    for (int s = 0; s < 2; ++s) {
      ++count;
      int sx = T.lmul(s, x);
      bool down = T.length(sx) < T.length(x) && xs.count(sx);
      bool up = T.length(sx) > T.length(x) && xs.count(sx);
      bool cross = T.length(sx) > T.length(x) && !xs.count(sx);
      EXPECT_EQ(down + up + cross, 1);
      Deodhar d = deodhar_case(T, J, x, s);
      if (down) EXPECT_EQ(d.kind, DeodharCase::Down);
      if (up) EXPECT_EQ(d.kind, DeodharCase::Up);
      if (cross) {
        EXPECT_EQ(d.kind, DeodharCase::Cross);
        EXPECT_EQ(T.rmul(x, d.t), sx);
      }
    }
  EXPECT_EQ(count, 10);
  EXPECT_THROW(deodhar_case(T, J, T.index_of_word({1}), 0), std::invalid_argument);
}

TEST(Classes, Examples) {
  CoxeterGroup A1(cartanmat("A", 1));
  ElementTable T1(A1);
  auto c1 = conjugacy_classes(T1);
  ASSERT_EQ(c1.size(), 2u);
  EXPECT_EQ(c1[0].size, 1);
  EXPECT_EQ(c1[1].size, 1);
  CoxeterGroup A2(cartanmat("A", 2));
  ElementTable T2(A2);
  auto c2 = conjugacy_classes(T2);
  std::vector<int> sizes;
  for (auto& c : c2) sizes.push_back(c.size);
  EXPECT_EQ(sizes, (std::vector<int>{1, 3, 2}));
  CoxeterGroup H3(cartanmat("H", 3));
  ElementTable T3(H3);
  EXPECT_EQ(conjugacy_classes(T3).size(), 10u);
}

TEST(Involutions, Examples) {
  CoxeterGroup A1(cartanmat("A", 1));
  ElementTable T1(A1);
  EXPECT_EQ(involutions(T1).size(), 2u);
  CoxeterGroup E6(cartanmat("E", 6));
  ElementTable T(E6);
  EXPECT_EQ(involutions(T).size(), 892u);
}

// Invariants over several small groups.
TEST(CoxgroupProperties, RootsLengthsFactorisationClasses) {
  for (auto lbl : {"A3", "B3", "G2", "I2(7)", "H3", "D4", "F4", "A1"}) {
    CoxeterGroup W(cartanmat_from_label(lbl));
    int sum = 0;
    for (int d : W.degrees()) sum += d - 1;
    EXPECT_EQ(W.N(), sum) << lbl;
    for (int i = 0; i < W.N(); ++i) {
      RootVec neg = W.roots()[i];
      for (auto& x : neg) x = -x;
      EXPECT_EQ(W.roots()[i + W.N()], neg);
    }
    for (const auto& p : W.permgens()) EXPECT_EQ(W.mult_perm(p, p), W.identity_perm());
    ElementTable T(W);
    EXPECT_EQ(static_cast<uint64_t>(T.size()), W.order());
    for (int w = 0; w < T.size(); ++w) {
      Perm p = W.word_to_perm(T.word(w));
      EXPECT_EQ(T.index_of_perm(p), w);
      if (T.size() <= 200) EXPECT_EQ(W.perm_length(p), T.length(w));
      EXPECT_EQ(W.perm_to_word(p), T.word(w));
    }
    if (T.size() <= 1200) {
      std::vector<int> J{0};
      if (W.rank() > 2) J.push_back(W.rank() - 1);
      uint32_t jm = mask_of(J);
      auto X = coset_reps(T, J);
      std::set<std::pair<int, int>> seen;
      for (int w = 0; w < T.size(); ++w) {
        auto [x, u] = coset_decompose(T, w, jm);
        EXPECT_TRUE(in_parabolic(T, u, jm));
        EXPECT_EQ(T.mult(x, u), w);
        EXPECT_EQ(T.length(x) + T.length(u), T.length(w));
        EXPECT_TRUE(std::binary_search(X.begin(), X.end(), x));
        seen.insert({x, u});
      }
      EXPECT_EQ(seen.size(), static_cast<size_t>(T.size()));
    }
    auto cls = conjugacy_classes(T);
    int tot = 0;
    size_t inv_from_classes = 0;
    for (auto& c : cls) {
      tot += c.size;
      if (T.mult(c.rep, c.rep) == 0) inv_from_classes += c.size;
    }
    EXPECT_EQ(tot, T.size());
    EXPECT_EQ(inv_from_classes, involutions(T).size());
  }
}
