#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hydra/bits.hpp"
#include "hydra/formula.hpp"

namespace hydra {

using State = std::uint32_t;

class Frame {
 public:
  Frame() = default;
  explicit Frame(std::size_t states, std::string name = {});

  void add_edge(State u, State v);  // duplicates ignored
  std::size_t size() const { return succ_.size(); }
  const std::vector<State>& successors(State u) const { return succ_[u]; }
  const Bits& row(State u) const { return rows_[u]; }
  bool has_edge(State u, State v) const { return rows_[u].test(v); }
  std::size_t edge_count() const;
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  bool operator==(const Frame& o) const { return rows_ == o.rows_; }

 private:
  std::string name_;
  std::vector<std::vector<State>> succ_;
  std::vector<Bits> rows_;
};

// Valuation by variable index; index 0 is unused, missing entries are empty.
class Model {
 public:
  Model() = default;
  explicit Model(Frame frame) : frame_(std::move(frame)) {}

  const Frame& frame() const { return frame_; }
  std::size_t size() const { return frame_.size(); }
  void set_true(int var, State w);
  void set_extension(int var, Bits ext);
  bool holds(int var, State w) const;
  // Extension of var, empty when unset.
  Bits extension(int var) const;
  int max_var() const { return static_cast<int>(val_.size()) - 1; }

 private:
  Frame frame_;
  std::vector<Bits> val_;
};

struct PointedModel {
  Model model;
  State point = 0;
};

// Set of states where f holds.
Bits extension(const Model& m, const Formula& f);
bool eval(const Model& m, State w, const Formula& f);

// Frame validity over all valuations of vars(f); throws ResourceError
// when |W| * |vars(f)| exceeds cap_bits.
bool frame_valid(const Frame& frame, const Formula& f, int cap_bits = 24);
// As above but quantifying over the variables in var_set (a superset of vars(f)).
bool frame_valid_over(const Frame& frame, const Formula& f, const std::vector<int>& var_set,
                      int cap_bits = 24);

bool bisimilar(const PointedModel& a, const PointedModel& b, Language lang);

// Coarsest bisimulation of a finite labelled graph, refining the initial
// labelling. Returns a block id per state; ids are dense and ordered by
// first occurrence.
std::vector<std::uint32_t> coarsest_bisimulation(const std::vector<std::vector<std::uint32_t>>& succ,
                                                 const std::vector<std::uint32_t>& initial);

}  // namespace hydra
