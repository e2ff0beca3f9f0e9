#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "hydra/bits.hpp"
#include "hydra/formula.hpp"
#include "hydra/gallery.hpp"
#include "hydra/universe.hpp"

namespace hydra {

using Word = Bits::Word;

// Word-level denotation arithmetic over a universe.
class DenotationOps {
 public:
  explicit DenotationOps(const Universe& u);

  std::size_t words() const { return words_; }
  const Universe& universe() const { return u_; }

  void top(Word* out) const;
  void bottom(Word* out) const;
  void literal(int var, bool positive, Word* out) const;
  void disj(const Word* a, const Word* b, Word* out) const;
  void conj(const Word* a, const Word* b, Word* out) const;
  void dia(const Word* in, Word* out) const { modal(in, out, false); }
  void box(const Word* in, Word* out) const { modal(in, out, true); }
  void exists(const Word* in, Word* out) const { global(in, out, false); }
  void forall(const Word* in, Word* out) const { global(in, out, true); }
  void apply(NodeKind k, const Word* a, const Word* b, Word* out) const;

  Bits to_bits(const Word* d) const;
  std::vector<Word> from_bits(const Bits& b) const;
  // Direct evaluation of f.
  Bits denote(const Formula& f) const;

 private:
  void modal(const Word* in, Word* out, bool universal) const;
  void global(const Word* in, Word* out, bool universal) const;

  const Universe& u_;
  std::size_t words_;
  std::vector<Word> full_;
  struct AlignedGroup {
    std::size_t base_word, row_words, states;
    std::vector<std::vector<State>> succ;
  };
  std::vector<AlignedGroup> aligned_;
  // Indices outside aligned groups, with their successors and model members.
  std::vector<std::size_t> loose_;
  std::vector<std::vector<std::size_t>> loose_succ_;
  std::vector<std::vector<std::size_t>> loose_models_;
  mutable std::vector<std::vector<Word>> literal_cache_;
};

enum class Dedup { LengthOnly, Measure, Pareto };

struct EnumOptions {
  int var_bound = 1;
  int length_cap = 6;
  Language language = Language::Basic;
  Dedup dedup = Dedup::LengthOnly;
  MeasureKind measure = MeasureKind::length();  // secondary key for Dedup::Measure
  // Whether formulas at length_cap are stored; when false they are only visited.
  bool store_last_level = true;
  std::size_t memory_cap_bytes = std::size_t{3} << 30;
};

struct EnumStats {
  std::uint64_t formulas_enumerated = 0;
  std::uint64_t retained = 0;
  std::uint64_t distinct_denotations = 0;
  int completed_length = 0;
  double seconds = 0;
};

// Bottom-up enumeration by Length with denotation-keyed dedup.
class Enumerator {
 public:
  struct Entry {
    std::uint32_t den;  // index into the denotation arena, or npos when unstored
    NodeKind kind;
    int var;
    std::uint32_t a, b;  // child entries
    MeasureVector m;
  };
  static constexpr std::uint32_t npos = 0xffffffffu;

  // Returns false to stop the enumeration.
  using Visitor = std::function<bool(std::uint32_t entry, const Word* den)>;

  Enumerator(const Universe& u, EnumOptions opts);
  Enumerator(const Enumerator&) = delete;
  Enumerator& operator=(const Enumerator&) = delete;

  // Runs to length_cap or until the visitor stops. Throws ResourceError on
  // memory cap overflow; stats() then holds partial counts.
  void run(const Visitor& visit);

  const Entry& entry(std::uint32_t id) const { return entries_[id]; }
  std::size_t entry_count() const { return entries_.size(); }
  Formula formula(std::uint32_t id) const;
  const Word* denotation(std::uint32_t den) const { return arena_.data() + den * ops_.words(); }
  const DenotationOps& ops() const { return ops_; }
  const EnumStats& stats() const { return stats_; }

 private:
  bool offer(NodeKind kind, int var, std::uint32_t a, std::uint32_t b, const MeasureVector& m, bool last,
             const Visitor& visit, bool& stop);
  bool dominated(const MeasureVector& old, const MeasureVector& cand) const;

  DenotationOps ops_;
  EnumOptions opts_;
  std::vector<MeasureKind> pareto_kinds_;
  std::vector<Entry> entries_;
  std::vector<std::vector<std::uint32_t>> levels_;
  std::vector<Word> arena_;
  std::vector<Word> scratch_;
  std::vector<std::vector<std::uint32_t>> den_entries_;

  struct DenHash {
    const Enumerator* e;
    std::size_t operator()(std::uint32_t d) const;
  };
  struct DenEq {
    const Enumerator* e;
    bool operator()(std::uint32_t x, std::uint32_t y) const;
  };
  std::unordered_set<std::uint32_t, DenHash, DenEq> table_;
  EnumStats stats_;
};

// Every retained formula with its denotation and measures, in Length order.
void enumerate(const Universe& u, const EnumOptions& opts,
               const std::function<bool(const Formula&, const Bits&, const MeasureVector&)>& visit);

struct Separator {
  Formula formula;
  MeasureVector measures;
};

// Minimizes the measure, then Length, then printed form.
std::optional<Separator> min_separating(const Universe& u, const Bits& left, const Bits& right, MeasureKind measure,
                                        int var_bound, int length_cap, Language lang, EnumStats* stats = nullptr);

// Separation at frame level: valid on every positive, non-valid on every negative.
struct FrameSearch {
  std::optional<Separator> best;
  EnumStats stats;
  bool exhausted = true;  // false when a resource cap stopped the search
  std::string note;
};

FrameSearch min_frame_separator(const WitnessSet& w, MeasureKind measure, int var_bound, int length_cap,
                                Language lang);

struct Certificate {
  enum class Verdict { Proved, Refuted, Inconclusive };
  std::string witness_set;
  MeasureKind measure;
  int claimed_bound = 0;
  int var_bound = 1;
  int length_cap = 0;
  Language language = Language::Basic;
  Verdict verdict = Verdict::Inconclusive;
  bool full_proof = false;  // no length cap restricts the claim
  std::optional<Formula> counterexample;
  std::optional<Separator> minimum;  // least separator found within the cap
  EnumStats stats;
  std::string note;
};

std::string verdict_name(Certificate::Verdict v);

// length_cap <= 0 selects the default: claimed_bound - 1 for Length,
// claimed_bound + 2 otherwise.
Certificate certify_bound(const WitnessSet& w, MeasureKind measure, int claimed_bound, int var_bound,
                          int length_cap = 0, Language lang = Language::Basic);

std::string format_certificate(const Certificate& c, bool with_timing = true);
Certificate parse_certificate(std::string_view text);

}  // namespace hydra
