#include <gtest/gtest.h>

#include <random>

#include "hydra/errors.hpp"
#include "hydra/kripke.hpp"
#include "hydra/text_io.hpp"
#include "hydra/universe.hpp"
#include "oracle.hpp"

using namespace hydra;

namespace {

Frame chain(std::size_t n) {
  Frame f(n);
  for (State u = 0; u + 1 < n; ++u) f.add_edge(u, u + 1);
  return f;
}

// Copies every state of m twice; (w, 0) and (w, 1) keep w's successors' copies.
PointedModel duplicate(const PointedModel& pm, std::mt19937_64& rng) {
  const std::size_t s = pm.model.size();
  Frame f(2 * s);
  std::bernoulli_distribution coin(0.5);
  for (State u = 0; u < s; ++u)
    for (State v : pm.model.frame().successors(u)) {
      // Each copy reaches at least one copy of v.
      const bool both = coin(rng);
      const State c = coin(rng) ? 1 : 0;
      for (State side = 0; side < 2; ++side) {
        if (both) {
          f.add_edge(u + side * s, v);
          f.add_edge(u + side * s, v + s);
        } else {
          f.add_edge(u + side * s, v + c * s);
        }
      }
    }
  Model m(f);
  for (int p = 1; p <= pm.model.max_var(); ++p)
    for (State w = 0; w < s; ++w)
      if (pm.model.holds(p, w)) {
        m.set_true(p, w);
        m.set_true(p, w + static_cast<State>(s));
      }
  return {m, pm.point + static_cast<State>(coin(rng) ? s : 0)};
}

}  // namespace

TEST(Kripke, EvalOnAChain) {
  Model m(chain(3));
  m.set_true(1, 2);
  EXPECT_TRUE(eval(m, 1, parse("<> p1")));
  EXPECT_FALSE(eval(m, 0, parse("<> p1")));
  EXPECT_TRUE(eval(m, 0, parse("<> <> p1")));
  EXPECT_TRUE(eval(m, 2, parse("[] F")));
  EXPECT_TRUE(eval(m, 0, parse("E p1")));
  EXPECT_FALSE(eval(m, 0, parse("A p1")));
}

TEST(Kripke, FrameValidityExamples) {
  Frame loop(1);
  loop.add_edge(0, 0);
  const Formula refl = parse("(~p1 | <> p1)");
  EXPECT_TRUE(frame_valid(loop, refl));
  EXPECT_FALSE(frame_valid(chain(2), refl));
  EXPECT_TRUE(frame_valid(chain(3), parse("(~p1 | T)")));
  EXPECT_THROW(frame_valid(Frame(30), parse("(p1 | p2)"), 24), ResourceError);
}

TEST(KripkeProperty, EvalMatchesDirectRecursion) {
  std::mt19937_64 rng(oracle::seed(101));
  for (int trial = 0; trial < 300; ++trial) {
    const Model m = oracle::random_model(rng, 5, 2);
    const Formula f = oracle::random_formula(rng, 2, 4, Language::Universal);
    const Bits ext = extension(m, f);
    for (State w = 0; w < m.size(); ++w) ASSERT_EQ(ext.test(w), oracle::holds(m, w, f)) << print(f);
  }
}

TEST(KripkeProperty, FrameValidityMatchesListing) {
  std::mt19937_64 rng(oracle::seed(202));
  for (int trial = 0; trial < 200; ++trial) {
    const Frame fr = oracle::random_frame(rng, 4, 0.4);
    const Formula f = oracle::random_formula(rng, 2, 3, Language::Universal);
    ASSERT_EQ(frame_valid(fr, f), oracle::valid_by_listing(fr, f)) << print(f);
  }
}

TEST(KripkeProperty, ValidityIsClosedUnderConjunction) {
  std::mt19937_64 rng(oracle::seed(303));
  int both = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const Frame fr = oracle::random_frame(rng, 3, 0.5);
    const Formula a = oracle::random_formula(rng, 1, 3, Language::Basic);
    const Formula b = oracle::random_formula(rng, 1, 3, Language::Basic);
    if (frame_valid(fr, a) && frame_valid(fr, b)) {
      ++both;
      ASSERT_TRUE(frame_valid(fr, Formula::conj(a, b)));
    }
  }
  EXPECT_GT(both, 0);
}

TEST(KripkeProperty, FreshVariablesDoNotChangeValidity) {
  std::mt19937_64 rng(oracle::seed(404));
  for (int trial = 0; trial < 100; ++trial) {
    const Frame fr = oracle::random_frame(rng, 4, 0.4);
    const Formula f = oracle::random_formula(rng, 1, 3, Language::Basic);
    ASSERT_EQ(frame_valid(fr, f), frame_valid_over(fr, f, {1, 2, 3}));
  }
}

TEST(KripkeProperty, DuplicatedModelsAreBisimilarAndAgree) {
  std::mt19937_64 rng(oracle::seed(505));
  const auto forms = oracle::all_formulas(1, 5, Language::Universal);
  for (int trial = 0; trial < 40; ++trial) {
    const Model m = oracle::random_model(rng, 3, 1);
    PointedModel a{m, 0};
    PointedModel b = duplicate(a, rng);
    ASSERT_TRUE(bisimilar(a, b, Language::Basic));
    ASSERT_TRUE(bisimilar(a, b, Language::Universal));
    for (const auto& level : forms)
      for (const Formula& f : level) ASSERT_EQ(eval(a.model, a.point, f), eval(b.model, b.point, f)) << print(f);
  }
}

TEST(Kripke, UniversalModalityDistinguishesUnreachableParts) {
  // Point 0 alone versus point 0 with an unreachable p1 state.
  Model a(Frame(1));
  Model b(Frame(2));
  b.set_true(1, 1);
  EXPECT_TRUE(bisimilar({a, 0}, {b, 0}, Language::Basic));
  EXPECT_FALSE(bisimilar({a, 0}, {b, 0}, Language::Universal));
}

TEST(Universe, LocateAndIndexAgree) {
  std::mt19937_64 rng(oracle::seed(606));
  UniverseBuilder b;
  b.add_expansion(chain(3), 1);
  b.add_expansion(chain(2), 2);
  for (int i = 0; i < 4; ++i) {
    const Model m = oracle::random_model(rng, 3, 1);
    b.add_pointed({m, 0});
  }
  const Universe u = b.build();
  EXPECT_EQ(u.designated().size(), 4u);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto loc = u.locate(i);
    ASSERT_EQ(u.index(loc.group, loc.model, loc.state), i);
    const PointedModel pm = u.pointed(i);
    for (int p = 1; p <= 2; ++p) ASSERT_EQ(u.holds(i, p), pm.model.holds(p, pm.point));
    std::vector<std::size_t> succ = u.successors(i);
    ASSERT_EQ(succ.size(), pm.model.frame().successors(pm.point).size());
  }
}

TEST(Universe, ExpansionHoldsEveryValuation) {
  UniverseBuilder b;
  const std::size_t g = b.add_expansion(chain(3), 2);
  const Universe u = b.build();
  EXPECT_EQ(u.group(g).model_count, 64u);
  EXPECT_EQ(u.size(), 192u);
  EXPECT_TRUE(u.aligned(g));
}

TEST(TextIo, FrameAndPointedModelRoundTrip) {
  std::mt19937_64 rng(oracle::seed(707));
  for (int trial = 0; trial < 50; ++trial) {
    Frame f = oracle::random_frame(rng, 5, 0.3);
    f.set_name("f" + std::to_string(trial));
    const auto back = parse_frames(format_frame(f));
    ASSERT_EQ(back.size(), 1u);
    ASSERT_EQ(back[0], f);
    ASSERT_EQ(back[0].name(), f.name());

    const Model m = oracle::random_model(rng, 5, 2);
    const PointedModel pm{m, static_cast<State>(m.size() - 1)};
    const PointedModel pb = parse_pointed_model(format_pointed_model(pm));
    ASSERT_EQ(pb.point, pm.point);
    ASSERT_EQ(pb.model.frame(), m.frame());
    for (int p = 1; p <= 2; ++p)
      for (State w = 0; w < m.size(); ++w) ASSERT_EQ(pb.model.holds(p, w), m.holds(p, w));
  }
}

TEST(TextIo, RejectsBadFrames) {
  EXPECT_THROW(parse_frames("frame a\nstates 2\nedge 0 5\n"), InputError);
  EXPECT_THROW(parse_frames("frame a\nedges 2\n"), InputError);
}
