#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hydra/bits.hpp"
#include "hydra/formula.hpp"
#include "hydra/gallery.hpp"
#include "hydra/universe.hpp"

namespace hydra {

struct NoncolSetup;

struct GamePosition {
  const Universe* universe = nullptr;
  Bits left, right;
};

// A node of a closed game tree. The label reuses NodeKind; var is set on
// literal leaves. On modal nodes, choice records Hercules' pick as
// (element, successor) pairs: left elements for Dia/Exists, right elements
// for Box/Forall.
struct GameTree {
  NodeKind label = NodeKind::False;
  int var = 0;
  GamePosition position;
  std::vector<std::pair<std::size_t, std::size_t>> choice;
  std::vector<GameTree> children;
};

// Node weights in preorder.
using WeightAssignment = std::vector<double>;

enum class GameEngine { Exhaustive, Retrograde, Auto };

struct GameOptions {
  GameEngine engine = GameEngine::Auto;
  // Literal moves range over vars 1..var_bound; <= 0 takes the universe's largest variable.
  int var_bound = 0;
  // Length cap for measures other than Length; <= 0 means budget + 4.
  int length_cap = 0;
  std::size_t position_cap = std::size_t{1} << 22;
};

struct GameResult {
  int cost = 0;
  GameTree tree;
};

// Least measure over closed trees with the Hydra greedy; absent when no
// closed tree has cost < budget. Throws ResourceError past position_cap.
std::optional<GameResult> min_cost_fgm(const GamePosition& pos, MeasureKind measure, int budget, Language lang,
                                       const GameOptions& opts = {});

struct FrameGameResult {
  std::shared_ptr<const Universe> universe;  // the tree's positions index into it
  int cost = 0;
  GameTree tree;
  // Hercules' pointed model per negative frame.
  std::vector<PointedModel> hercules_choice;
  std::size_t choices_tried = 0;
};

// The frame game: left is every pointed model over the positives, right is
// one pointed model per negative chosen by Hercules.
std::optional<FrameGameResult> fgf_min_cost(const WitnessSet& w, MeasureKind measure, int var_bound, int budget,
                                            Language lang, const GameOptions& opts = {});

// Throws std::invalid_argument on a non-closed tree.
Formula psi_of_tree(const GameTree& t);

struct TreeCheck {
  bool ok = true;
  std::string diagnostic;  // path and reason of the first violation
  explicit operator bool() const { return ok; }
};

TreeCheck verify_closed_tree(const GameTree& t, Language lang = Language::Universal);

std::size_t node_count(const GameTree& t);
bool check_weight(const GameTree& t, const WeightAssignment& f);
WeightAssignment special_pair_weight(const GameTree& t, const NoncolSetup& setup);

// One line per node, two spaces of indent per depth.
std::string render_tree(const GameTree& t);
std::string move_name(const GameTree& t);

}  // namespace hydra
