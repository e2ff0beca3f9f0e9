#include <gtest/gtest.h>

#include <random>

#include "hydra/errors.hpp"
#include "hydra/gallery.hpp"
#include "hydra/synth.hpp"
#include "oracle.hpp"

using namespace hydra;

namespace {

Frame chain(std::size_t n) {
  Frame f(n);
  for (State u = 0; u + 1 < n; ++u) f.add_edge(u, u + 1);
  return f;
}

// Mixes an aligned expansion (64 models) with loose explicit models.
Universe mixed_universe(std::mt19937_64& rng) {
  UniverseBuilder b;
  b.add_expansion(chain(3), 2);
  for (int i = 0; i < 5; ++i) b.add_pointed({oracle::random_model(rng, 4, 2), 0});
  return b.build();
}

std::vector<PointedModel> points_of(const Universe& u, const Bits& s) {
  std::vector<PointedModel> out;
  s.for_each([&](std::size_t i) { out.push_back(u.pointed(i)); });
  return out;
}

}  // namespace

TEST(SynthProperty, DenotationMatchesDirectEval) {
  std::mt19937_64 rng(oracle::seed(3131));
  const Universe u = mixed_universe(rng);
  const DenotationOps ops(u);
  for (int trial = 0; trial < 500; ++trial) {
    const Formula f = oracle::random_formula(rng, 2, 4, Language::Universal);
    const Bits d = ops.denote(f);
    const std::size_t i = std::uniform_int_distribution<std::size_t>(0, u.size() - 1)(rng);
    const PointedModel pm = u.pointed(i);
    ASSERT_EQ(d.test(i), oracle::holds(pm.model, pm.point, f)) << print(f) << " at " << i;
  }
}

TEST(SynthProperty, EqualDenotationsSubstituteSafely) {
  std::mt19937_64 rng(oracle::seed(3232));
  const Universe u = mixed_universe(rng);
  const DenotationOps ops(u);
  // Pairs of distinct formulas with equal denotation, found by sampling.
  int checked = 0;
  for (int trial = 0; trial < 4000 && checked < 100; ++trial) {
    const Formula a = oracle::random_formula(rng, 1, 2, Language::Universal);
    const Formula b = oracle::random_formula(rng, 1, 2, Language::Universal);
    if (a == b || !(ops.denote(a) == ops.denote(b))) continue;
    ++checked;
    const Formula ctx = oracle::random_formula(rng, 2, 2, Language::Universal);
    for (NodeKind k : {NodeKind::Dia, NodeKind::Box, NodeKind::Exists, NodeKind::Forall})
      ASSERT_EQ(ops.denote(Formula::unary(k, a)), ops.denote(Formula::unary(k, b)));
    for (NodeKind k : {NodeKind::Or, NodeKind::And})
      ASSERT_EQ(ops.denote(Formula::binary(k, ctx, a)), ops.denote(Formula::binary(k, ctx, b)));
  }
  EXPECT_GT(checked, 10);
}

TEST(Synth, EnumerationRetainsOneFormulaPerDenotation) {
  std::mt19937_64 rng(oracle::seed(3333));
  const Universe u = mixed_universe(rng);
  std::set<Bits> seen;
  int last_len = 0;
  enumerate(u, {.var_bound = 1, .length_cap = 5, .language = Language::Universal},
            [&](const Formula& f, const Bits& d, const MeasureVector& m) {
              EXPECT_GE(m.length, last_len);
              last_len = m.length;
              EXPECT_TRUE(seen.insert(d).second) << print(f);
              EXPECT_EQ(d, DenotationOps(u).denote(f));
              return true;
            });
  EXPECT_GT(seen.size(), 10u);
}

// Every measure against the unpruned listing, on small random universes.
TEST(SynthProperty, MinSeparatingMatchesListing) {
  std::mt19937_64 rng(oracle::seed(3434));
  int separable = 0;
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<Model> models;
    for (int i = 0; i < 3; ++i) models.push_back(oracle::random_model(rng, 3, 1));
    const auto su = oracle::universe_of(models);
    const Universe& u = su.universe;
    Bits left(u.size()), right(u.size());
    std::bernoulli_distribution coin(0.5);
    for (std::size_t i : u.designated()) (coin(rng) ? left : right).set(i);
    left.subtract(right);
    const Language lang = trial % 2 ? Language::Universal : Language::Basic;
    for (MeasureKind k : applicable_measures(lang)) {
      const int cap = k == MeasureKind::length() ? 5 : 4;
      const auto got = min_separating(u, left, right, k, 1, cap, lang);
      const auto want = oracle::min_separator(points_of(u, left), points_of(u, right), k, 1, cap, lang);
      ASSERT_EQ(got.has_value(), want.has_value()) << measure_name(k) << " trial " << trial;
      if (!got) continue;
      ++separable;
      ASSERT_EQ(got->measures.get(k), *want) << measure_name(k) << " trial " << trial;
      const Bits d = DenotationOps(u).denote(got->formula);
      ASSERT_TRUE(left.subset_of(d));
      ASSERT_FALSE(right.intersects(d));
    }
  }
  EXPECT_GT(separable, 20);
}

TEST(Synth, TransitivitySeparatorHasLengthSix) {
  const WitnessSet w = transfer_witnesses(2, 1);
  const FrameSearch s = min_frame_separator(w, MeasureKind::length(), 1, 7, Language::Basic);
  ASSERT_TRUE(s.best.has_value());
  EXPECT_EQ(s.best->measures.length, 6);
  EXPECT_TRUE(s.exhausted);
}

TEST(Synth, CertifyVerdicts) {
  const WitnessSet w = transfer_witnesses(0, 1);
  const Certificate proved = certify_bound(w, MeasureKind::length(), 4, 1);
  EXPECT_EQ(proved.verdict, Certificate::Verdict::Proved);
  EXPECT_TRUE(proved.full_proof);
  // Claiming 5 is refuted by the Length 4 axiom.
  const Certificate refuted = certify_bound(w, MeasureKind::length(), 5, 1);
  EXPECT_EQ(refuted.verdict, Certificate::Verdict::Refuted);
  ASSERT_TRUE(refuted.counterexample.has_value());
  EXPECT_EQ(measure(*refuted.counterexample, MeasureKind::length()), 4);
}

TEST(Synth, SymmetryCertificateRoundTrips) {
  const Certificate c = certify_bound(symmetry_witnesses(), MeasureKind::length(), 5, 1);
  EXPECT_EQ(c.verdict, Certificate::Verdict::Proved);
  const Certificate back = parse_certificate(format_certificate(c, false));
  EXPECT_EQ(back.verdict, c.verdict);
  EXPECT_EQ(back.claimed_bound, 5);
  EXPECT_EQ(back.witness_set, c.witness_set);
  EXPECT_EQ(format_certificate(back, false), format_certificate(c, false));
}

TEST(Synth, MemoryCapRaisesResourceError) {
  UniverseBuilder b;
  b.add_expansion(chain(3), 2);
  const Universe u = b.build();
  Enumerator e(u, {.var_bound = 2, .length_cap = 9, .language = Language::Universal, .memory_cap_bytes = 4096});
  EXPECT_THROW(e.run([](std::uint32_t, const Word*) { return true; }), ResourceError);
  EXPECT_GT(e.stats().formulas_enumerated, 0u);
}
