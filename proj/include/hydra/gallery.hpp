#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hydra/formula.hpp"
#include "hydra/kripke.hpp"

namespace hydra {

struct FrameProperty {
  enum class Kind { Transfer, Reflexive, Transitive, Symmetric, ConverseWellFounded, ReflexiveTransitive, TransitiveCWF };
  Kind kind = Kind::Reflexive;
  int m = 0, n = 0;  // Transfer only: R^m is contained in R^n

  static FrameProperty transfer(int m, int n);
  static FrameProperty of(Kind k) { return {k, 0, 0}; }
  std::string name() const;
};

bool check_property(const Frame& f, const FrameProperty& p);

struct WitnessSet {
  std::string name;
  std::vector<Frame> positives;
  std::vector<Frame> negatives;
  int recommended_var_bound = 1;
  std::optional<FrameProperty> property;
};

// Throws std::logic_error if a positive lacks the property or a negative has it.
void assert_witnesses(const WitnessSet& w);

WitnessSet transfer_witnesses(int m, int n);
WitnessSet s4_witnesses();
WitnessSet lob_witnesses(int truncation_depth);
WitnessSet symmetry_witnesses();

// The defining formula in one variable, p1.
Formula axiom(const FrameProperty& p);

// Builtin names: transfer-M-N, s4, lob-D, symmetry.
std::optional<WitnessSet> builtin_witnesses(std::string_view name);
// Builtin names: khatN, kN, plus "<witness>/<frame>" for any witness frame.
std::optional<Frame> builtin_frame(std::string_view name);

// Witness file: frame blocks plus "positive:" and "negative:" sections that
// list frame names or contain inline frame blocks; optional "name <s>" and
// "var_bound <k>" lines.
WitnessSet parse_witness_file(std::string_view text);
std::string format_witness_file(const WitnessSet& w);

// Loads "builtin:NAME" or a witness file path.
WitnessSet load_witnesses(const std::string& source);
// Loads "builtin:NAME" or a frame file path (first frame).
Frame load_frame(const std::string& source);

}  // namespace hydra
