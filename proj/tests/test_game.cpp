#include <gtest/gtest.h>

#include <map>
#include <random>

#include "hydra/colouring.hpp"
#include "hydra/errors.hpp"
#include "hydra/game.hpp"
#include "hydra/gallery.hpp"
#include "hydra/reproduce.hpp"
#include "hydra/synth.hpp"
#include "oracle.hpp"

using namespace hydra;

namespace {

// Least Length of a closed tree by direct play: Hercules may pick any
// successor per element and split by arbitrary (overlapping) covers; the
// Hydra always replies greedily.
class CoverGame {
 public:
  CoverGame(const Universe& u, Language lang, int vars) : u_(u), lang_(lang), vars_(vars) {
    for (std::size_t i = 0; i < u.size(); ++i) {
      succ_.push_back(u.successors(i));
      same_.push_back(u.same_model(i));
    }
  }

  // Least cost below budget, or budget when there is none.
  int solve(const Bits& l, const Bits& r, int budget) {
    if (budget <= 1) return budget;
    const Key key{l, r};
    auto it = memo_.find(key);
    if (it != memo_.end() && (it->second.first < it->second.second || it->second.second >= budget))
      return std::min(it->second.first, budget);
    int best = budget;
    if (leaf(l, r)) best = 1;
    if (best > 1) {
      modal(l, r, succ_, true, best);
      modal(l, r, succ_, false, best);
      if (lang_ == Language::Universal) {
        modal(l, r, same_, true, best);
        modal(l, r, same_, false, best);
      }
      split(l, r, true, best);
      split(l, r, false, best);
    }
    memo_[key] = {best, budget};
    return best;
  }

 private:
  using Key = std::pair<Bits, Bits>;
  using Nbrs = std::vector<std::vector<std::size_t>>;

  bool leaf(const Bits& l, const Bits& r) const {
    if (l.none() || r.none()) return true;
    for (int p = 1; p <= vars_; ++p) {
      const Bits lit = u_.literal(p);
      if (l.subset_of(lit) && !r.intersects(lit)) return true;
      if (r.subset_of(lit) && !l.intersects(lit)) return true;
    }
    return false;
  }

  Bits image(const Bits& s, const Nbrs& nb) const {
    Bits out(u_.size());
    s.for_each([&](std::size_t i) {
      for (std::size_t j : nb[i]) out.set(j);
    });
    return out;
  }

  // left_picks: Dia/Exists, otherwise Box/Forall.
  void modal(const Bits& l, const Bits& r, const Nbrs& nb, bool left_picks, int& best) {
    const Bits& pickers = left_picks ? l : r;
    const Bits greedy = image(left_picks ? r : l, nb);
    const std::vector<std::size_t> idx = pickers.indices();
    for (std::size_t i : idx)
      if (nb[i].empty()) return;
    std::vector<std::size_t> choice(idx.size(), 0);
    while (true) {
      Bits picked(u_.size());
      for (std::size_t k = 0; k < idx.size(); ++k) picked.set(nb[idx[k]][choice[k]]);
      const int c = left_picks ? solve(picked, greedy, best - 1) : solve(greedy, picked, best - 1);
      best = std::min(best, c + 1);
      std::size_t k = 0;
      while (k < idx.size() && ++choice[k] == nb[idx[k]].size()) choice[k++] = 0;
      if (k == idx.size()) return;
    }
  }

  // Every pair of nonempty subsets whose union is the split side.
  void split(const Bits& l, const Bits& r, bool on_left, int& best) {
    const std::vector<std::size_t> idx = (on_left ? l : r).indices();
    if (idx.size() < 2) return;
    const std::uint64_t full = (std::uint64_t{1} << idx.size()) - 1;
    for (std::uint64_t a = 1; a < full; ++a)
      for (std::uint64_t b = 1; b < full; ++b) {
        if ((a | b) != full) continue;
        Bits sa(u_.size()), sb(u_.size());
        for (std::size_t k = 0; k < idx.size(); ++k) {
          if ((a >> k) & 1) sa.set(idx[k]);
          if ((b >> k) & 1) sb.set(idx[k]);
        }
        const int ca = on_left ? solve(sa, r, best - 2) : solve(l, sa, best - 2);
        if (ca + 2 >= best) continue;
        const int cb = on_left ? solve(sb, r, best - 1 - ca) : solve(l, sb, best - 1 - ca);
        best = std::min(best, ca + cb + 1);
      }
  }

  const Universe& u_;
  Language lang_;
  int vars_;
  Nbrs succ_, same_;
  std::map<Key, std::pair<int, int>> memo_;  // (cost found, budget used)
};

struct RandomPosition {
  oracle::SmallUniverse su;
  Bits left, right;
};

RandomPosition random_position(std::mt19937_64& rng, int models, int states) {
  std::vector<Model> ms;
  for (int i = 0; i < models; ++i) ms.push_back(oracle::random_model(rng, states, 1, 0.5));
  RandomPosition p{oracle::universe_of(ms), {}, {}};
  const Universe& u = p.su.universe;
  p.left = p.right = Bits(u.size());
  std::bernoulli_distribution coin(0.5);
  for (std::size_t i : u.designated()) (coin(rng) ? p.left : p.right).set(i);
  p.left.subtract(p.right);
  return p;
}

GameOptions with_engine(GameEngine e) {
  GameOptions o;
  o.engine = e;
  return o;
}

}  // namespace

TEST(Game, TrivialPositions) {
  UniverseBuilder b;
  Model m(Frame(1));
  m.set_true(1, 0);
  b.add_pointed({m, 0});
  b.add_pointed({Model(Frame(1)), 0});
  const Universe u = b.build();
  const std::size_t a = u.designated()[0], c = u.designated()[1];
  Bits l(u.size()), r(u.size());
  l.set(a);
  r.set(c);
  for (GameEngine e : {GameEngine::Exhaustive, GameEngine::Retrograde}) {
    const auto res = min_cost_fgm({&u, l, r}, MeasureKind::length(), 5, Language::Basic, with_engine(e));
    ASSERT_TRUE(res.has_value());
    EXPECT_EQ(res->cost, 1);
    EXPECT_EQ(res->tree.label, NodeKind::PosLit);
    EXPECT_EQ(print(psi_of_tree(res->tree)), "p1");
    // Budget is strict: cost must be below it.
    EXPECT_FALSE(min_cost_fgm({&u, l, r}, MeasureKind::length(), 1, Language::Basic, with_engine(e)).has_value());
  }
  const auto empty = min_cost_fgm({&u, Bits(u.size()), r}, MeasureKind::length(), 5, Language::Basic);
  ASSERT_TRUE(empty.has_value());
  EXPECT_EQ(print(psi_of_tree(empty->tree)), "F");
}

TEST(Game, BisimilarPointsCannotBeSeparated) {
  UniverseBuilder b;
  Frame one(1), two(2);
  one.add_edge(0, 0);
  two.add_edge(0, 1);
  two.add_edge(1, 0);
  b.add_pointed({Model(one), 0});
  b.add_pointed({Model(two), 0});
  const Universe u = b.build();
  Bits l(u.size()), r(u.size());
  l.set(u.designated()[0]);
  r.set(u.designated()[1]);
  for (GameEngine e : {GameEngine::Exhaustive, GameEngine::Retrograde})
    for (Language lang : {Language::Basic, Language::Universal})
      EXPECT_FALSE(min_cost_fgm({&u, l, r}, MeasureKind::length(), 9, lang, with_engine(e)).has_value());
}

TEST(Game, FrameGameOnTransferAndSymmetry) {
  const auto refl = fgf_min_cost(transfer_witnesses(0, 1), MeasureKind::length(), 1, 10, Language::Basic);
  ASSERT_TRUE(refl.has_value());
  EXPECT_EQ(refl->cost, 4);
  EXPECT_TRUE(verify_closed_tree(refl->tree, Language::Basic));
  EXPECT_EQ(refl->hercules_choice.size(), transfer_witnesses(0, 1).negatives.size());

  const auto sym = fgf_min_cost(symmetry_witnesses(), MeasureKind::length(), 1, 10, Language::Basic);
  ASSERT_TRUE(sym.has_value());
  EXPECT_EQ(sym->cost, 5);
  const Formula psi = psi_of_tree(sym->tree);
  const WitnessSet w = symmetry_witnesses();
  for (const Frame& f : w.positives) EXPECT_TRUE(frame_valid(f, psi)) << print(psi);
  for (const Frame& f : w.negatives) EXPECT_FALSE(frame_valid(f, psi)) << print(psi);
}

TEST(Game, SharedFrameHasNoSeparator) {
  WitnessSet w = transfer_witnesses(0, 1);
  w.negatives.push_back(w.positives.front());
  EXPECT_FALSE(fgf_min_cost(w, MeasureKind::length(), 1, 9, Language::Basic).has_value());
}

TEST(Game, FrameGameUnderOtherMeasures) {
  const WitnessSet w = transfer_witnesses(0, 1);
  const auto dia = fgf_min_cost(w, MeasureKind::count(Symbol::Dia), 1, 4, Language::Basic);
  ASSERT_TRUE(dia.has_value());
  EXPECT_EQ(dia->cost, 1);
  const auto box = fgf_min_cost(w, MeasureKind::count(Symbol::Box), 1, 4, Language::Basic);
  ASSERT_TRUE(box.has_value());
  EXPECT_EQ(box->cost, 0);
  const auto depth = fgf_min_cost(w, MeasureKind::depth(), 1, 4, Language::Basic);
  ASSERT_TRUE(depth.has_value());
  EXPECT_EQ(depth->cost, 1);
}

TEST(Game, VerifierRejectsTamperedTrees) {
  const auto res = fgf_min_cost(transfer_witnesses(2, 1), MeasureKind::length(), 1, 10, Language::Basic);
  ASSERT_TRUE(res.has_value());
  ASSERT_TRUE(verify_closed_tree(res->tree, Language::Basic));

  GameTree t = res->tree;
  // A literal leaf that does not close its position.
  GameTree* leaf = &t;
  while (!leaf->children.empty()) leaf = &leaf->children.back();
  leaf->label = leaf->label == NodeKind::PosLit ? NodeKind::NegLit : NodeKind::PosLit;
  const TreeCheck bad = verify_closed_tree(t);
  EXPECT_FALSE(bad);
  EXPECT_FALSE(bad.diagnostic.empty());

  // A split that drops a left element.
  GameTree u = res->tree;
  ASSERT_EQ(u.label, NodeKind::Or);
  const std::size_t dropped = u.children[0].position.left.first();
  u.children[0].position.left.reset(dropped);
  EXPECT_FALSE(verify_closed_tree(u));

  // Universal moves are not in the basic language.
  GameTree v = res->tree;
  v.label = NodeKind::Exists;
  EXPECT_FALSE(verify_closed_tree(v, Language::Basic));

  GameTree open;
  open.label = NodeKind::Dia;
  EXPECT_THROW(psi_of_tree(open), std::invalid_argument);
}

TEST(Game, WeightClauses) {
  GameTree leaf;
  leaf.label = NodeKind::True;
  GameTree dia;
  dia.label = NodeKind::Dia;
  dia.children = {leaf};
  GameTree root;
  root.label = NodeKind::Or;
  root.children = {dia, leaf};
  EXPECT_EQ(node_count(root), 4u);
  EXPECT_TRUE(check_weight(root, {4, 2, 1, 1}));
  EXPECT_TRUE(check_weight(root, {0, 0, 0, 0}));
  EXPECT_FALSE(check_weight(root, {5, 2, 1, 1}));   // root above 2 + 1 + 1
  EXPECT_FALSE(check_weight(root, {3, 2.5, 1, 1})); // unary above child + 1
  EXPECT_FALSE(check_weight(root, {1, 1, 1, 1.5})); // leaf above 1
  EXPECT_FALSE(check_weight(root, {1, 1, -1, 1}));
  EXPECT_FALSE(check_weight(root, {1, 1, 1}));
}

// Both engines against the cover game and against enumeration.
TEST(GameProperty, EnginesMatchCoverGameAndEnumeration) {
  std::mt19937_64 rng(oracle::seed(4141));
  int separable = 0;
  for (int trial = 0; trial < 40; ++trial) {
    RandomPosition p = random_position(rng, 3, 2);
    const Universe& u = p.su.universe;
    const Language lang = trial % 3 == 0 ? Language::Universal : Language::Basic;
    CoverGame cover(u, lang, 1);
    const int budget = 7;
    const int want = cover.solve(p.left, p.right, budget);
    const auto sep = min_separating(u, p.left, p.right, MeasureKind::length(), 1, budget - 1, lang);
    ASSERT_EQ(sep.has_value(), want < budget) << trial;
    if (sep) {
      ASSERT_EQ(sep->measures.length, want) << trial;
      ++separable;
    }
    for (GameEngine e : {GameEngine::Exhaustive, GameEngine::Retrograde}) {
      const auto res = min_cost_fgm({&u, p.left, p.right}, MeasureKind::length(), budget, lang, with_engine(e));
      ASSERT_EQ(res.has_value(), want < budget) << trial;
      if (!res) continue;
      ASSERT_EQ(res->cost, want) << trial;
      ASSERT_TRUE(verify_closed_tree(res->tree, lang)) << verify_closed_tree(res->tree, lang).diagnostic;
      ASSERT_EQ(measure(psi_of_tree(res->tree), MeasureKind::length()), want);
    }
  }
  EXPECT_GT(separable, 10);
}

TEST(GameProperty, ExhaustiveMatchesEnumerationForEveryMeasure) {
  std::mt19937_64 rng(oracle::seed(4242));
  for (int trial = 0; trial < 20; ++trial) {
    RandomPosition p = random_position(rng, 3, 3);
    const Universe& u = p.su.universe;
    const Language lang = trial % 2 ? Language::Universal : Language::Basic;
    for (MeasureKind k : applicable_measures(lang)) {
      if (k == MeasureKind::length()) continue;
      GameOptions o = with_engine(GameEngine::Exhaustive);
      o.length_cap = 6;
      const auto res = min_cost_fgm({&u, p.left, p.right}, k, 5, lang, o);
      const auto sep = min_separating(u, p.left, p.right, k, 1, 6, lang);
      const bool sep_below = sep && sep->measures.get(k) < 5;
      ASSERT_EQ(res.has_value(), sep_below) << measure_name(k) << " trial " << trial;
      if (res) ASSERT_EQ(res->cost, sep->measures.get(k)) << measure_name(k) << " trial " << trial;
    }
  }
}

TEST(GameProperty, CostIsMonotoneInPositions) {
  std::mt19937_64 rng(oracle::seed(4343));
  for (int trial = 0; trial < 40; ++trial) {
    RandomPosition p = random_position(rng, 4, 2);
    const Universe& u = p.su.universe;
    const auto whole = min_cost_fgm({&u, p.left, p.right}, MeasureKind::length(), 9, Language::Basic);
    if (!whole) continue;
    Bits l = p.left, r = p.right;
    if (l.any()) l.reset(l.first());
    if (r.any()) r.reset(r.first());
    const auto part = min_cost_fgm({&u, l, r}, MeasureKind::length(), 9, Language::Basic);
    ASSERT_TRUE(part.has_value());
    ASSERT_LE(part->cost, whole->cost);
  }
}

TEST(GameProperty, NoncolTreesCarrySpecialPairWeight) {
  for (int n = 2; n <= 3; ++n) {
    const NoncolSetup s = noncol_game_setup(n, distinct_valuation_model(n), 0);
    Bits l(s.universe.size()), r(s.universe.size());
    for (std::size_t i : s.left) l.set(i);
    for (std::size_t i : s.right) r.set(i);
    const auto res = min_cost_fgm({&s.universe, l, r}, MeasureKind::length(), 12, Language::Universal);
    ASSERT_TRUE(res.has_value());
    const WeightAssignment f = special_pair_weight(res->tree, s);
    EXPECT_TRUE(check_weight(res->tree, f));
    EXPECT_EQ(f.front(), n);
    EXPECT_GE(node_count(res->tree), static_cast<std::size_t>(n));
  }
}

TEST(Game, RenderNamesEveryNode) {
  const auto res = fgf_min_cost(transfer_witnesses(0, 1), MeasureKind::length(), 1, 10, Language::Basic);
  ASSERT_TRUE(res.has_value());
  const std::string text = render_tree(res->tree);
  EXPECT_EQ(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')), node_count(res->tree));
}

// One or more public operations per module must appear in a full run.
TEST(Reproduce, TouchesEveryModule) {
  const ReproduceReport r = reproduce();
  ASSERT_EQ(r.rows.size(), 10u);
  EXPECT_TRUE(r.all_pass()) << format_report(r, false);
  const std::vector<std::vector<const char*>> modules = {
      {"parse", "print", "measure", "vars", "nnf_negate"},
      {"eval", "frame_valid", "bisimilar", "build_universe", "parse_frames", "parse_pointed_model"},
      {"transfer_witnesses", "s4_witnesses", "lob_witnesses", "symmetry_witnesses", "axiom"},
      {"phi_n", "khat", "k_complete", "colour", "is_n_colourable", "noncol_equivalence", "noncol_game_setup"},
      {"enumerate", "min_separating", "min_frame_separator", "certify_bound", "format_certificate", "parse_certificate"},
      {"min_cost_fgm", "fgf_min_cost", "psi_of_tree", "verify_closed_tree", "check_weight", "special_pair_weight"},
  };
  for (const auto& ops : modules)
    for (const char* op : ops) EXPECT_TRUE(r.operations.count(op)) << op;
  EXPECT_EQ(r.lob_depth, 2);
}
