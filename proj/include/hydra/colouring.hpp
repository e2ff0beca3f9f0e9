#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hydra/bits.hpp"
#include "hydra/formula.hpp"
#include "hydra/kripke.hpp"
#include "hydra/universe.hpp"

namespace hydra {

// Colour per state, each in [0, n).
using ColourAssignment = std::vector<int>;

// k = ceil(log2 n); 0 for n = 1.
int subset_bits(int n);
// Elementary conjunction for subset number i (1-based): variable p_{j+1}
// occurs positively iff bit j of i-1 is set.
Formula elementary_conjunction(int i, int k);
Formula phi_n(int n);

Frame k_complete(int n);
// Two copies of k_complete(n): state w is (w, i), state n + w is (w, r).
// The single loop sits on (0, r).
Frame khat(int n);

std::optional<ColourAssignment> colour(const Frame& f, int n);
bool is_n_colourable(const Frame& f, int n);
bool is_proper(const Frame& f, const ColourAssignment& c, int n);
bool noncol_equivalence(const Frame& f, int n, int cap_bits = 24);

struct NoncolSetup {
  Universe universe;
  std::vector<std::size_t> left;   // one pointed model per vertex w, in order
  std::vector<std::size_t> right;  // Hercules' pointed model
  // Per universe index: the vertex w whose model it belongs to, or -1 on the right.
  std::vector<int> identity;
  // Per universe index: valuation over p1..pk as a bit mask.
  std::vector<std::uint32_t> valuation;
  int vars = 0;
};

// Model over k_complete(n) in which vertex w satisfies exactly the
// variables given by the bits of w.
Model distinct_valuation_model(int n);

NoncolSetup noncol_game_setup(int n, const Model& hercules_model, State hercules_point);

}  // namespace hydra
