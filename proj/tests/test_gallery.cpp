#include <gtest/gtest.h>

#include <random>
#include <tuple>

#include "hydra/errors.hpp"
#include "hydra/gallery.hpp"
#include "hydra/text_io.hpp"
#include "oracle.hpp"

using namespace hydra;
using K = FrameProperty::Kind;

namespace {

bool contained(const std::vector<std::vector<bool>>& a, const std::vector<std::vector<bool>>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a[i][j] && !b[i][j]) return false;
  return true;
}

// No state reaches itself in 1..|W| steps.
bool acyclic_by_powers(const Frame& f) {
  for (int k = 1; k <= static_cast<int>(f.size()); ++k) {
    const auto r = oracle::relation_power(f, k);
    for (std::size_t i = 0; i < f.size(); ++i)
      if (r[i][i]) return false;
  }
  return true;
}

bool property_by_powers(const Frame& f, const FrameProperty& p) {
  const auto r1 = oracle::relation_power(f, 1);
  switch (p.kind) {
    case K::Transfer: return contained(oracle::relation_power(f, p.m), oracle::relation_power(f, p.n));
    case K::Reflexive: return contained(oracle::relation_power(f, 0), r1);
    case K::Transitive: return contained(oracle::relation_power(f, 2), r1);
    case K::Symmetric:
      for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < f.size(); ++j)
          if (r1[i][j] && !r1[j][i]) return false;
      return true;
    case K::ConverseWellFounded: return acyclic_by_powers(f);
    case K::ReflexiveTransitive:
      return property_by_powers(f, FrameProperty::of(K::Reflexive)) && property_by_powers(f, FrameProperty::of(K::Transitive));
    case K::TransitiveCWF: return property_by_powers(f, FrameProperty::of(K::Transitive)) && acyclic_by_powers(f);
  }
  return false;
}

std::vector<FrameProperty> all_properties() {
  std::vector<FrameProperty> out;
  for (auto [m, n] : {std::pair{0, 1}, {1, 0}, {1, 2}, {2, 1}, {2, 0}, {0, 2}, {3, 1}}) out.push_back(FrameProperty::transfer(m, n));
  for (K k : {K::Reflexive, K::Transitive, K::Symmetric, K::ConverseWellFounded, K::ReflexiveTransitive, K::TransitiveCWF})
    out.push_back(FrameProperty::of(k));
  return out;
}

struct Shape {
  const char* name;
  std::size_t frames, states, edges;
};

}  // namespace

TEST(GalleryProperty, PropertiesMatchRelationPowers) {
  std::mt19937_64 rng(oracle::seed(808));
  for (int trial = 0; trial < 300; ++trial) {
    const Frame f = oracle::random_frame(rng, 5, trial % 2 ? 0.3 : 0.6);
    for (const FrameProperty& p : all_properties()) ASSERT_EQ(check_property(f, p), property_by_powers(f, p)) << p.name();
  }
}

TEST(GalleryProperty, AxiomsDefineTheirProperties) {
  std::mt19937_64 rng(oracle::seed(909));
  for (int trial = 0; trial < 300; ++trial) {
    const Frame f = oracle::random_frame(rng, 4, trial % 2 ? 0.3 : 0.6);
    for (const FrameProperty& p : all_properties()) {
      if (p.kind == K::ConverseWellFounded) continue;
      ASSERT_EQ(oracle::valid_by_listing(f, axiom(p)), check_property(f, p)) << p.name() << " " << format_frame(f);
    }
  }
  EXPECT_THROW(axiom(FrameProperty::of(K::ConverseWellFounded)), std::invalid_argument);
}

TEST(Gallery, AxiomShapes) {
  EXPECT_EQ(print(axiom(FrameProperty::transfer(2, 1))), "([] [] ~p1 | <> p1)");
  EXPECT_EQ(print(axiom(FrameProperty::of(K::Symmetric))), "(~p1 | [] <> p1)");
  EXPECT_EQ(print(axiom(FrameProperty::of(K::ReflexiveTransitive))), "((~p1 & [] [] ~p1) | <> p1)");
  EXPECT_EQ(print(axiom(FrameProperty::of(K::TransitiveCWF))), "([] ~p1 | <> (p1 & [] ~p1))");
}

// Pinned transcription sizes: frames, total states, total edges.
TEST(Gallery, WitnessSetsKeepTheirShape) {
  const Shape shapes[] = {
      {"transfer-0-1", 3, 5, 6},   {"transfer-1-0", 3, 4, 3}, {"transfer-1-2", 3, 11, 15}, {"transfer-2-1", 4, 13, 10},
      {"transfer-2-0", 4, 6, 4},   {"transfer-0-2", 3, 6, 8}, {"s4", 5, 15, 25},           {"symmetry", 4, 6, 6},
      {"lob-2", 6, 19, 16},        {"lob-3", 6, 22, 22},
  };
  for (const Shape& s : shapes) {
    const auto w = builtin_witnesses(s.name);
    ASSERT_TRUE(w.has_value()) << s.name;
    std::size_t frames = 0, states = 0, edges = 0;
    for (const auto* list : {&w->positives, &w->negatives})
      for (const Frame& f : *list) {
        ++frames;
        states += f.size();
        edges += f.edge_count();
      }
    EXPECT_EQ(std::tie(frames, states, edges), std::tie(s.frames, s.states, s.edges)) << s.name;
    EXPECT_NO_THROW(assert_witnesses(*w)) << s.name;
  }
}

TEST(Gallery, AxiomsSeparateTheirWitnesses) {
  for (const char* name : {"transfer-0-1", "transfer-1-0", "transfer-1-2", "transfer-2-1", "transfer-2-0", "transfer-0-2",
                           "s4", "symmetry", "lob-2", "lob-4"}) {
    const WitnessSet w = *builtin_witnesses(name);
    ASSERT_TRUE(w.property.has_value());
    const Formula ax = axiom(*w.property);
    for (const Frame& f : w.positives) EXPECT_TRUE(frame_valid(f, ax)) << name << "/" << f.name();
    for (const Frame& f : w.negatives) EXPECT_FALSE(frame_valid(f, ax)) << name << "/" << f.name();
  }
}

TEST(Gallery, LobDepthAddsOneBranchPerLength) {
  for (int d = 2; d <= 5; ++d) {
    const WitnessSet w = lob_witnesses(d);
    const WitnessSet next = lob_witnesses(d + 1);
    std::size_t a = 0, b = 0;
    for (const Frame& f : w.positives) a += f.size();
    for (const Frame& f : next.positives) b += f.size();
    // One more branch of d + 1 states.
    EXPECT_EQ(b - a, static_cast<std::size_t>(d + 1)) << d;
  }
  EXPECT_FALSE(builtin_witnesses("lob-9").has_value());
}

TEST(Gallery, WitnessFileRoundTrip) {
  for (const char* name : {"s4", "symmetry", "transfer-1-2"}) {
    const WitnessSet w = *builtin_witnesses(name);
    const WitnessSet back = parse_witness_file(format_witness_file(w));
    EXPECT_EQ(back.name, w.name);
    EXPECT_EQ(back.recommended_var_bound, w.recommended_var_bound);
    ASSERT_EQ(back.positives.size(), w.positives.size());
    ASSERT_EQ(back.negatives.size(), w.negatives.size());
    for (std::size_t i = 0; i < w.positives.size(); ++i) EXPECT_EQ(back.positives[i], w.positives[i]);
    for (std::size_t i = 0; i < w.negatives.size(); ++i) EXPECT_EQ(back.negatives[i], w.negatives[i]);
  }
}

TEST(Gallery, WitnessFileReferencesAndErrors) {
  const WitnessSet w = parse_witness_file(
      "name tiny\nframe loop\nstates 1\nedge 0 0\nframe dot\nstates 1\npositive:\nloop\nnegative:\ndot\n");
  EXPECT_EQ(w.name, "tiny");
  ASSERT_EQ(w.positives.size(), 1u);
  ASSERT_EQ(w.negatives.size(), 1u);
  EXPECT_TRUE(w.positives[0].has_edge(0, 0));
  EXPECT_THROW(parse_witness_file("positive:\nmissing\n"), InputError);
}

TEST(Gallery, BuiltinFrames) {
  EXPECT_EQ(builtin_frame("khat3")->size(), 6u);
  EXPECT_EQ(builtin_frame("k4")->edge_count(), 12u);
  EXPECT_EQ(builtin_frame("s4/B2")->size(), 2u);
  EXPECT_FALSE(builtin_frame("nothing").has_value());
}
