#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <unordered_map>
#include <vector>

#include "hydra/bits.hpp"
#include "hydra/game.hpp"
#include "hydra/universe.hpp"

namespace hydra::detail {

// Inclusion-minimal sets meeting every member of sets. Hercules' choice
// images on modal moves are exactly these, up to supersets.
std::vector<Bits> minimal_hitting_sets(std::vector<Bits> sets, std::size_t universe_size);

int universe_max_var(const Universe& u);

// Picks, for each element of from, its first neighbour inside target.
std::vector<std::pair<std::size_t, std::size_t>> pick_into(const Bits& from,
                                                           const std::vector<std::vector<std::size_t>>& nbrs,
                                                           const Bits& target);

// Length-only solver by backward induction over the bisimulation quotient.
// For a right set R it builds Fam(R, l): the maximal sets of classes inside
// the left region on which some formula of Length <= l, false on all of R,
// holds. (L, R) is separable within l iff L is covered by a member.
class RetrogradeSolver {
 public:
  RetrogradeSolver(const Universe& u, Language lang, int var_bound, const Bits& left_region,
                   std::size_t cap = std::size_t{1} << 22);

  // Least Length in [1, max_len] separating left from right, or -1.
  int min_length(const Bits& left, const Bits& right, int max_len);
  bool separable(const Bits& left, const Bits& right, int len);
  // Closed tree of Length <= len; requires separable(left, right, len).
  GameTree tree(const Bits& left, const Bits& right, int len);

  std::size_t classes() const { return class_count_; }
  Bits class_set(const Bits& indices) const;

 private:
  struct Deriv {
    NodeKind kind;
    int var = 0;
    Bits m;  // over classes, inside the region
    const Deriv* a = nullptr;
    const Deriv* b = nullptr;
    Bits ra, rb;  // the right sets the children were derived for
  };
  struct Family {
    std::vector<std::vector<const Deriv*>> levels;  // levels[l] for Length <= l
  };

  const std::vector<const Deriv*>& family(const Bits& r, int len);
  void build_level(const Bits& r, int len);
  GameTree build(const Bits& left, const Bits& right, const Deriv* d);

  const Universe& u_;
  Language lang_;
  int var_bound_;
  std::size_t cap_;
  std::vector<std::uint32_t> cls_;
  std::size_t class_count_ = 0;
  Bits region_;
  std::vector<Bits> succ_;  // per class
  std::vector<Bits> same_;  // per class
  std::vector<Bits> lit_;   // per var, classes where it holds
  std::vector<std::vector<std::size_t>> idx_succ_, idx_same_;
  std::deque<Deriv> arena_;
  std::unordered_map<Bits, Family, BitsHash> fams_;
};

}  // namespace hydra::detail
