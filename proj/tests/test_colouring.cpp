#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hydra/colouring.hpp"
#include "hydra/errors.hpp"
#include "oracle.hpp"

using namespace hydra;

namespace {

int literal_occurrences(const Formula& f) {
  if (f.kind() == NodeKind::PosLit || f.kind() == NodeKind::NegLit) return 1;
  if (is_leaf(f.kind())) return 0;
  int c = literal_occurrences(f.left());
  if (is_binary(f.kind())) c += literal_occurrences(f.right());
  return c;
}

Frame cycle(int n) {
  Frame f(n);
  for (int u = 0; u < n; ++u) f.add_edge(u, (u + 1) % n);
  return f;
}

}  // namespace

TEST(Colouring, PhiForSmallN) {
  EXPECT_EQ(print(phi_n(1)), "E <> T");
  EXPECT_EQ(print(phi_n(2)), "E ((~p1 & <> ~p1) | (p1 & <> p1))");
  EXPECT_EQ(print(phi_n(3)), "E (((~p1 & ~p2) & <> (~p1 & ~p2)) | (((p1 & ~p2) & <> (p1 & ~p2)) | (((~p1 & p2) & <> (~p1 & p2)) | (p1 & p2))))");
}

TEST(Colouring, NegatedPhiIsUniversal) {
  const Formula neg = nnf_negate(phi_n(2));
  EXPECT_EQ(neg.kind(), NodeKind::Forall);
  EXPECT_EQ(print(neg), "A ((p1 | [] p1) & (~p1 | [] ~p1))");
}

TEST(Colouring, KhatShape) {
  const Frame f = khat(3);
  EXPECT_EQ(f.size(), 6u);
  EXPECT_EQ(f.edge_count(), 13u);
  int loops = 0;
  for (State w = 0; w < f.size(); ++w) loops += f.has_edge(w, w);
  EXPECT_EQ(loops, 1);
  EXPECT_TRUE(f.has_edge(3, 3));
  EXPECT_EQ(k_complete(4).edge_count(), 12u);
}

TEST(Colouring, SubsetBitsAndConjunctions) {
  EXPECT_EQ(subset_bits(1), 0);
  EXPECT_EQ(subset_bits(2), 1);
  EXPECT_EQ(subset_bits(5), 3);
  EXPECT_EQ(print(elementary_conjunction(3, 2)), "(~p1 & p2)");
}

TEST(ColouringProperty, ColourMatchesCounting) {
  std::mt19937_64 rng(oracle::seed(1111));
  for (int trial = 0; trial < 300; ++trial) {
    const Frame f = oracle::random_frame(rng, 6, 0.3);
    for (int n = 1; n <= 4; ++n) {
      const auto c = colour(f, n);
      ASSERT_EQ(c.has_value(), oracle::colourable_by_counting(f, n));
      if (c) ASSERT_TRUE(is_proper(f, *c, n));
    }
  }
}

TEST(Colouring, EquivalenceOnNamedGraphs) {
  for (int n = 2; n <= 4; ++n)
    for (const Frame& f : {k_complete(n), k_complete(n + 1), khat(n), cycle(5), cycle(7), cycle(4)})
      EXPECT_TRUE(noncol_equivalence(f, n)) << n << " " << f.name();
  EXPECT_FALSE(is_n_colourable(khat(3), 3));
  EXPECT_TRUE(is_n_colourable(k_complete(3), 3));
  EXPECT_FALSE(is_n_colourable(cycle(5), 2));
}

TEST(ColouringProperty, EquivalenceOnRandomGraphs) {
  std::mt19937_64 rng(oracle::seed(2222));
  for (int trial = 0; trial < 60; ++trial) {
    const Frame f = oracle::random_frame(rng, 5, 0.35);
    ASSERT_TRUE(noncol_equivalence(f, 2));
    ASSERT_TRUE(noncol_equivalence(f, 3));
  }
}

TEST(Colouring, PhiShapeBounds) {
  for (int n = 1; n <= 16; ++n) EXPECT_EQ(measure(phi_n(n), MeasureKind::vars()), subset_bits(n)) << n;
  for (int n = 2; n <= 64; ++n)
    EXPECT_LT(literal_occurrences(phi_n(n)), 4.0 * n * (std::log2(n) + 1)) << n;
}

// The constant 8 was fitted once over n <= 64, where the largest ratio is
// about 7.3 at n = 9.
TEST(Colouring, PhiLengthFitsBoundAndGrows) {
  int prev = 0;
  for (int n = 1; n <= 64; ++n) {
    const int len = measure(phi_n(n), MeasureKind::length());
    EXPECT_LE(len, 8.0 * n * std::max(1.0, std::log2(n))) << n;
    EXPECT_GT(len, prev) << n;
    prev = len;
  }
}

// Additive slack 17 is the least integer that covers n = 5 (Length 83).
TEST(Colouring, PhiLengthNearOccurrenceBound) {
  for (int n = 2; n <= 8; ++n)
    EXPECT_LE(measure(phi_n(n), MeasureKind::length()), 4.0 * n * (std::log2(n) + 1) + 17) << n;
  EXPECT_GT(measure(phi_n(5), MeasureKind::length()), 4.0 * 5 * (std::log2(5) + 1) + 16);
}

TEST(Colouring, NoncolSetupLayout) {
  const NoncolSetup s = noncol_game_setup(3, distinct_valuation_model(3), 0);
  EXPECT_EQ(s.vars, 2);
  EXPECT_EQ(s.left.size(), 3u);
  EXPECT_EQ(s.right.size(), 1u);
  for (std::size_t w = 0; w < 3; ++w) {
    EXPECT_EQ(s.identity[s.left[w]], static_cast<int>(w));
    // Each left point carries Hercules' point valuation.
    EXPECT_EQ(s.valuation[s.left[w]], s.valuation[s.right[0]]);
  }
  EXPECT_EQ(s.identity[s.right[0]], -1);
  Model repeat(k_complete(3));
  EXPECT_THROW(noncol_game_setup(3, repeat, 0), std::invalid_argument);
  EXPECT_THROW(noncol_game_setup(3, distinct_valuation_model(3), 5), std::out_of_range);
}

TEST(Colouring, PhiSeparatesTheSetup) {
  for (int n = 2; n <= 3; ++n) {
    const NoncolSetup s = noncol_game_setup(n, distinct_valuation_model(n), 1);
    for (std::size_t i : s.left) EXPECT_TRUE(eval(s.universe.pointed(i).model, s.universe.pointed(i).point, phi_n(n)));
    for (std::size_t i : s.right) EXPECT_FALSE(eval(s.universe.pointed(i).model, s.universe.pointed(i).point, phi_n(n)));
  }
}
