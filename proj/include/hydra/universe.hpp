#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "hydra/bits.hpp"
#include "hydra/kripke.hpp"

namespace hydra {

// Models over one frame. Either every valuation of vars 1..var_bound
// (model g gives var p state w the bit g >> ((p-1)*|W| + w)), or an
// explicit list of models.
struct UniverseGroup {
  Frame frame;
  bool expanded = false;
  int var_bound = 0;
  std::vector<Model> models;  // explicit groups only
  std::size_t model_count = 0;
  std::size_t base = 0;
  std::string label;
};

// Indexed set of pointed models. Group g occupies [base, base + |W|*G)
// with index = base + w*G + model, so each state's row of G bits is
// contiguous. Groups with G % 64 == 0 come first and are word aligned.
class Universe {
 public:
  struct Location {
    std::size_t group;
    std::size_t model;
    State state;
  };

  std::size_t size() const { return size_; }
  std::size_t group_count() const { return groups_.size(); }
  const UniverseGroup& group(std::size_t g) const { return groups_[g]; }
  bool aligned(std::size_t g) const;

  Location locate(std::size_t i) const;
  std::size_t index(std::size_t g, std::size_t model, State w) const {
    return groups_[g].base + w * groups_[g].model_count + model;
  }

  std::vector<std::size_t> successors(std::size_t i) const;
  std::vector<std::size_t> same_model(std::size_t i) const;
  bool holds(std::size_t i, int var) const;
  Model model(std::size_t g, std::size_t m) const;
  PointedModel pointed(std::size_t i) const;

  // Indices where var holds.
  Bits literal(int var) const;
  Bits group_mask(std::size_t g) const;
  Bits model_mask(std::size_t g, std::size_t m) const;
  Bits empty_set() const { return Bits(size_); }
  Bits full_set() const { return Bits(size_, true); }

  // Seeds given as explicit pointed models, in seed order.
  const std::vector<std::size_t>& designated() const { return designated_; }

  // Successor sets per index, built on first use.
  const std::vector<std::vector<std::size_t>>& successor_lists() const;

 private:
  friend class UniverseBuilder;
  std::vector<UniverseGroup> groups_;
  std::vector<std::size_t> order_;  // groups sorted by base
  std::size_t size_ = 0;
  std::vector<std::size_t> designated_;
  mutable std::vector<std::vector<std::size_t>> succ_cache_;
};

class UniverseBuilder {
 public:
  explicit UniverseBuilder(std::size_t size_cap = std::size_t{1} << 24, int valuation_bits_cap = 24)
      : size_cap_(size_cap), bits_cap_(valuation_bits_cap) {}

  // All valuations of vars 1..var_bound over frame. Returns the group id.
  std::size_t add_expansion(const Frame& frame, int var_bound, std::string label = {});
  // Explicit models over one frame. Returns the group id.
  std::size_t add_models(const Frame& frame, std::vector<Model> models, std::string label = {});
  // Adds a pointed model; models equal to one already added share indices.
  // The index is recorded in designated().
  void add_pointed(const PointedModel& pm);

  Universe build();

 private:
  std::size_t size_cap_;
  int bits_cap_;
  std::vector<UniverseGroup> groups_;
  std::vector<std::pair<std::size_t, std::pair<std::size_t, State>>> pending_designated_;
};

struct FrameExpansion {
  Frame frame;
  int var_bound = 0;
};
using UniverseSeed = std::variant<PointedModel, FrameExpansion>;

Universe build_universe(const std::vector<UniverseSeed>& seeds);

// Bisimilarity classes of all indices for the given language, over vars 1..var_bound.
std::vector<std::uint32_t> bisimulation_classes(const Universe& u, Language lang, int var_bound);

}  // namespace hydra
