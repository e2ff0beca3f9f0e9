#include "hydra/synth.hpp"

#include <algorithm>
#include <bit>
#include <cstring>

#include "hydra/errors.hpp"

namespace hydra {

// ---------------------------------------------------------------- denotations

DenotationOps::DenotationOps(const Universe& u) : u_(u), words_(Bits::words_for(u.size())) {
  full_ = from_bits(u.full_set());
  for (std::size_t g = 0; g < u.group_count(); ++g) {
    const UniverseGroup& grp = u.group(g);
    if (u.aligned(g)) {
      AlignedGroup a{grp.base / Bits::word_bits, grp.model_count / Bits::word_bits, grp.frame.size(), {}};
      for (State w = 0; w < grp.frame.size(); ++w) a.succ.push_back(grp.frame.successors(w));
      aligned_.push_back(std::move(a));
      continue;
    }
    for (std::size_t m = 0; m < grp.model_count; ++m) {
      std::vector<std::size_t> members;
      for (State w = 0; w < grp.frame.size(); ++w) members.push_back(u.index(g, m, w));
      loose_models_.push_back(members);
    }
    for (State w = 0; w < grp.frame.size(); ++w)
      for (std::size_t m = 0; m < grp.model_count; ++m) {
        std::size_t i = u.index(g, m, w);
        loose_.push_back(i);
        std::vector<std::size_t> s;
        for (State v : grp.frame.successors(w)) s.push_back(u.index(g, m, v));
        loose_succ_.push_back(std::move(s));
      }
  }
}

std::vector<Word> DenotationOps::from_bits(const Bits& b) const {
  return std::vector<Word>(b.data(), b.data() + b.word_count());
}

Bits DenotationOps::to_bits(const Word* d) const {
  Bits b(u_.size());
  std::memcpy(b.data(), d, words_ * sizeof(Word));
  return b;
}

void DenotationOps::top(Word* out) const { std::copy(full_.begin(), full_.end(), out); }
void DenotationOps::bottom(Word* out) const { std::fill(out, out + words_, Word{0}); }

void DenotationOps::literal(int var, bool positive, Word* out) const {
  if (var < 0) throw std::invalid_argument("negative variable index");
  auto& cache = literal_cache_;
  if (static_cast<std::size_t>(var) >= cache.size()) cache.resize(var + 1);
  if (cache[var].empty()) cache[var] = from_bits(u_.literal(var));
  const auto& lit = cache[var];
  for (std::size_t k = 0; k < words_; ++k) out[k] = positive ? lit[k] : (~lit[k] & full_[k]);
}

void DenotationOps::disj(const Word* a, const Word* b, Word* out) const {
  for (std::size_t k = 0; k < words_; ++k) out[k] = a[k] | b[k];
}
void DenotationOps::conj(const Word* a, const Word* b, Word* out) const {
  for (std::size_t k = 0; k < words_; ++k) out[k] = a[k] & b[k];
}

static bool test_bit(const Word* d, std::size_t i) { return (d[i / 64] >> (i % 64)) & 1; }

void DenotationOps::modal(const Word* in, Word* out, bool universal) const {
  for (const AlignedGroup& g : aligned_) {
    for (std::size_t w = 0; w < g.states; ++w) {
      Word* dst = out + g.base_word + w * g.row_words;
      const auto& succ = g.succ[w];
      if (succ.empty()) {
        std::fill(dst, dst + g.row_words, universal ? ~Word{0} : Word{0});
        continue;
      }
      const Word* first = in + g.base_word + succ[0] * g.row_words;
      std::copy(first, first + g.row_words, dst);
      for (std::size_t s = 1; s < succ.size(); ++s) {
        const Word* src = in + g.base_word + succ[s] * g.row_words;
        if (universal)
          for (std::size_t k = 0; k < g.row_words; ++k) dst[k] &= src[k];
        else
          for (std::size_t k = 0; k < g.row_words; ++k) dst[k] |= src[k];
      }
    }
  }
  if (loose_.empty()) return;
  const std::size_t first_word = loose_.front() / 64;
  std::fill(out + first_word, out + words_, Word{0});
  for (std::size_t t = 0; t < loose_.size(); ++t) {
    bool v = universal;
    for (std::size_t j : loose_succ_[t]) {
      if (test_bit(in, j) != universal) {
        v = !universal;
        break;
      }
    }
    if (v) out[loose_[t] / 64] |= Word{1} << (loose_[t] % 64);
  }
}

void DenotationOps::global(const Word* in, Word* out, bool universal) const {
  std::vector<Word> acc;
  for (const AlignedGroup& g : aligned_) {
    acc.assign(g.row_words, universal ? ~Word{0} : Word{0});
    for (std::size_t w = 0; w < g.states; ++w) {
      const Word* src = in + g.base_word + w * g.row_words;
      for (std::size_t k = 0; k < g.row_words; ++k) acc[k] = universal ? acc[k] & src[k] : acc[k] | src[k];
    }
    for (std::size_t w = 0; w < g.states; ++w)
      std::copy(acc.begin(), acc.end(), out + g.base_word + w * g.row_words);
  }
  if (loose_.empty()) return;
  const std::size_t first_word = loose_.front() / 64;
  std::fill(out + first_word, out + words_, Word{0});
  for (const auto& members : loose_models_) {
    bool v = universal;
    for (std::size_t j : members)
      if (test_bit(in, j) != universal) {
        v = !universal;
        break;
      }
    if (v)
      for (std::size_t j : members) out[j / 64] |= Word{1} << (j % 64);
  }
}

void DenotationOps::apply(NodeKind k, const Word* a, const Word* b, Word* out) const {
  switch (k) {
    case NodeKind::Or: disj(a, b, out); return;
    case NodeKind::And: conj(a, b, out); return;
    case NodeKind::Dia: dia(a, out); return;
    case NodeKind::Box: box(a, out); return;
    case NodeKind::Exists: exists(a, out); return;
    case NodeKind::Forall: forall(a, out); return;
    default: throw std::invalid_argument("not a connective");
  }
}

Bits DenotationOps::denote(const Formula& f) const {
  std::vector<Word> out(words_);
  switch (f.kind()) {
    case NodeKind::True: top(out.data()); break;
    case NodeKind::False: bottom(out.data()); break;
    case NodeKind::PosLit:
    case NodeKind::NegLit: literal(f.var(), f.kind() == NodeKind::PosLit, out.data()); break;
    default: {
      std::vector<Word> a = from_bits(denote(f.left()));
      std::vector<Word> b = is_binary(f.kind()) ? from_bits(denote(f.right())) : std::vector<Word>();
      apply(f.kind(), a.data(), b.data(), out.data());
    }
  }
  Bits r(u_.size());
  std::memcpy(r.data(), out.data(), words_ * sizeof(Word));
  return r;
}

// ---------------------------------------------------------------- enumeration

std::size_t Enumerator::DenHash::operator()(std::uint32_t d) const {
  const Word* p = e->denotation(d);
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (std::size_t k = 0; k < e->ops_.words(); ++k) {
    h ^= p[k] + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 33));
}

bool Enumerator::DenEq::operator()(std::uint32_t x, std::uint32_t y) const {
  return std::memcmp(e->denotation(x), e->denotation(y), e->ops_.words() * sizeof(Word)) == 0;
}

Enumerator::Enumerator(const Universe& u, EnumOptions opts)
    : ops_(u), opts_(opts), table_(1024, DenHash{this}, DenEq{this}) {
  if (opts_.var_bound < 0 || opts_.var_bound > 64) throw std::invalid_argument("variable bound out of range");
  if (opts_.dedup == Dedup::Measure && !applicable(opts_.measure, opts_.language))
    throw std::invalid_argument("measure not applicable to the language");
  scratch_.resize(ops_.words());
  pareto_kinds_ = applicable_measures(opts_.language);
}

static MeasureVector combine(NodeKind k, const MeasureVector* a, const MeasureVector* b, int var) {
  MeasureVector m;
  if (auto s = symbol_of(k)) m.counts[static_cast<int>(*s)] = 1;
  m.length = 1;
  if (k == NodeKind::PosLit || k == NodeKind::NegLit) {
    m.var_mask = var >= 1 && var <= 64 ? std::uint64_t{1} << (var - 1) : 0;
    m.var_count = 1;
    return m;
  }
  if (!a) return m;
  m.length += a->length;
  m.depth = a->depth + (is_modal(k) ? 1 : 0);
  m.var_mask = a->var_mask;
  for (int s = 0; s < symbol_count; ++s) m.counts[s] += a->counts[s];
  if (b) {
    m.length += b->length;
    m.depth = std::max(a->depth, b->depth);
    m.var_mask |= b->var_mask;
    for (int s = 0; s < symbol_count; ++s) m.counts[s] += b->counts[s];
  }
  m.var_count = std::popcount(m.var_mask);
  return m;
}

bool Enumerator::dominated(const MeasureVector& old, const MeasureVector& cand) const {
  switch (opts_.dedup) {
    case Dedup::LengthOnly: return true;
    case Dedup::Measure:
      if (old.length > cand.length) return false;
      if (opts_.measure.tag == MeasureKind::Tag::VarCount) return (old.var_mask & ~cand.var_mask) == 0;
      return old.get(opts_.measure) <= cand.get(opts_.measure);
    case Dedup::Pareto:
      if ((old.var_mask & ~cand.var_mask) != 0) return false;
      for (MeasureKind k : pareto_kinds_)
        if (old.get(k) > cand.get(k)) return false;
      return true;
  }
  return true;
}

bool Enumerator::offer(NodeKind kind, int var, std::uint32_t a, std::uint32_t b, const MeasureVector& m, bool last,
                       const Visitor& visit, bool& stop) {
  ++stats_.formulas_enumerated;
  const std::size_t W = ops_.words();
  if (last && !opts_.store_last_level) {
    entries_.push_back({npos, kind, var, a, b, m});
    ++stats_.retained;
    if (!visit(static_cast<std::uint32_t>(entries_.size() - 1), scratch_.data())) stop = true;
    entries_.pop_back();
    --stats_.retained;
    return false;
  }
  const std::uint32_t tentative = static_cast<std::uint32_t>(arena_.size() / W);
  arena_.insert(arena_.end(), scratch_.begin(), scratch_.end());
  auto it = table_.find(tentative);
  std::uint32_t den;
  if (it != table_.end()) {
    arena_.resize(arena_.size() - W);
    den = *it;
    for (std::uint32_t e : den_entries_[den])
      if (dominated(entries_[e].m, m)) return false;
  } else {
    table_.insert(tentative);
    den = tentative;
    den_entries_.emplace_back();
    ++stats_.distinct_denotations;
  }
  const std::uint32_t id = static_cast<std::uint32_t>(entries_.size());
  entries_.push_back({den, kind, var, a, b, m});
  den_entries_[den].push_back(id);
  levels_[m.length].push_back(id);
  ++stats_.retained;
  const std::size_t bytes = arena_.size() * sizeof(Word) + entries_.size() * (sizeof(Entry) + 8) +
                            table_.size() * 16;
  if (bytes > opts_.memory_cap_bytes)
    throw ResourceError("enumeration exceeded " + std::to_string(opts_.memory_cap_bytes >> 20) + " MiB at length " +
                        std::to_string(m.length));
  if (!visit(id, denotation(den))) stop = true;
  return true;
}

void Enumerator::run(const Visitor& visit) {
  const auto t0 = std::chrono::steady_clock::now();
  struct Timer {
    EnumStats& s;
    std::chrono::steady_clock::time_point t0;
    ~Timer() { s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); }
  } timer{stats_, t0};

  const int cap = opts_.length_cap;
  levels_.assign(static_cast<std::size_t>(std::max(cap, 1)) + 1, {});
  bool stop = false;
  if (cap < 1) return;
  {
    const bool last = cap == 1;
    ops_.bottom(scratch_.data());
    offer(NodeKind::False, 0, npos, npos, combine(NodeKind::False, nullptr, nullptr, 0), last, visit, stop);
    if (stop) return;
    ops_.top(scratch_.data());
    offer(NodeKind::True, 0, npos, npos, combine(NodeKind::True, nullptr, nullptr, 0), last, visit, stop);
    for (int v = 1; v <= opts_.var_bound && !stop; ++v)
      for (bool positive : {true, false}) {
        ops_.literal(v, positive, scratch_.data());
        NodeKind k = positive ? NodeKind::PosLit : NodeKind::NegLit;
        offer(k, v, npos, npos, combine(k, nullptr, nullptr, v), last, visit, stop);
        if (stop) return;
      }
    stats_.completed_length = 1;
  }

  std::vector<NodeKind> unary = {NodeKind::Dia, NodeKind::Box};
  if (opts_.language == Language::Universal) {
    unary.push_back(NodeKind::Exists);
    unary.push_back(NodeKind::Forall);
  }
  for (int len = 2; len <= cap && !stop; ++len) {
    const bool last = len == cap;
    const std::vector<std::uint32_t> prev = levels_[len - 1];
    for (std::uint32_t a : prev) {
      for (NodeKind k : unary) {
        ops_.apply(k, denotation(entries_[a].den), nullptr, scratch_.data());
        MeasureVector m = combine(k, &entries_[a].m, nullptr, 0);
        offer(k, 0, a, npos, m, last, visit, stop);
        if (stop) return;
      }
    }
    for (int l1 = 1; 2 * l1 <= len - 1; ++l1) {
      const int l2 = len - 1 - l1;
      const std::vector<std::uint32_t> left = levels_[l1];
      const std::vector<std::uint32_t> right = levels_[l2];
      for (std::size_t x = 0; x < left.size(); ++x) {
        for (std::size_t y = (l1 == l2 ? x : 0); y < right.size(); ++y) {
          const std::uint32_t a = left[x], b = right[y];
          for (NodeKind k : {NodeKind::Or, NodeKind::And}) {
            ops_.apply(k, denotation(entries_[a].den), denotation(entries_[b].den), scratch_.data());
            MeasureVector m = combine(k, &entries_[a].m, &entries_[b].m, 0);
            offer(k, 0, a, b, m, last, visit, stop);
            if (stop) return;
          }
        }
      }
    }
    stats_.completed_length = len;
  }
}

Formula Enumerator::formula(std::uint32_t id) const {
  const Entry& e = entries_[id];
  switch (e.kind) {
    case NodeKind::True: return Formula::top();
    case NodeKind::False: return Formula::bottom();
    case NodeKind::PosLit: return Formula::pos(e.var);
    case NodeKind::NegLit: return Formula::neg(e.var);
    case NodeKind::Or:
    case NodeKind::And: return Formula::binary(e.kind, formula(e.a), formula(e.b));
    default: return Formula::unary(e.kind, formula(e.a));
  }
}

void enumerate(const Universe& u, const EnumOptions& opts,
               const std::function<bool(const Formula&, const Bits&, const MeasureVector&)>& visit) {
  Enumerator e(u, opts);
  e.run([&](std::uint32_t id, const Word* den) {
    return visit(e.formula(id), e.ops().to_bits(den), e.entry(id).m);
  });
}

// ---------------------------------------------------------------- search

namespace {

EnumOptions search_options(MeasureKind measure, int var_bound, int length_cap, Language lang) {
  EnumOptions o;
  o.var_bound = var_bound;
  o.length_cap = length_cap;
  o.language = lang;
  o.dedup = measure.tag == MeasureKind::Tag::Length ? Dedup::LengthOnly : Dedup::Measure;
  o.measure = measure;
  o.store_last_level = false;
  return o;
}

// Keeps the least separator under (measure, Length, printed form).
class BestTracker {
 public:
  BestTracker(const Enumerator& e, MeasureKind k) : e_(e), k_(k) {}

  void offer(std::uint32_t id) {
    const MeasureVector& m = e_.entry(id).m;
    if (best_) {
      const int mu = m.get(k_), best_mu = best_->measures.get(k_);
      if (mu > best_mu || (mu == best_mu && m.length > best_->measures.length)) return;
      if (mu == best_mu && m.length == best_->measures.length) {
        Formula f = e_.formula(id);
        std::string text = print(f);
        if (text >= best_text_) return;
        best_ = Separator{f, m};
        best_text_ = std::move(text);
        return;
      }
    }
    best_ = Separator{e_.formula(id), m};
    best_text_ = print(best_->formula);
  }

  // True once no later (longer) formula can improve the best.
  bool settled(int current_length) const {
    if (!best_ || current_length <= best_->measures.length) return false;
    return k_.tag == MeasureKind::Tag::Length || best_->measures.get(k_) == 0;
  }

  const std::optional<Separator>& best() const { return best_; }

 private:
  const Enumerator& e_;
  MeasureKind k_;
  std::optional<Separator> best_;
  std::string best_text_;
};

}  // namespace

std::optional<Separator> min_separating(const Universe& u, const Bits& left, const Bits& right, MeasureKind measure,
                                        int var_bound, int length_cap, Language lang, EnumStats* stats) {
  if (left.intersects(right)) return std::nullopt;
  Enumerator e(u, search_options(measure, var_bound, length_cap, lang));
  const std::vector<Word> L = e.ops().from_bits(left), R = e.ops().from_bits(right);
  const std::size_t W = e.ops().words();
  BestTracker best(e, measure);
  e.run([&](std::uint32_t id, const Word* den) {
    if (best.settled(e.entry(id).m.length)) return false;
    for (std::size_t k = 0; k < W; ++k)
      if ((L[k] & ~den[k]) || (R[k] & den[k])) return true;
    best.offer(id);
    return true;
  });
  if (stats) *stats = e.stats();
  return best.best();
}

FrameSearch min_frame_separator(const WitnessSet& w, MeasureKind measure, int var_bound, int length_cap,
                                Language lang) {
  FrameSearch out;
  UniverseBuilder b;
  std::vector<std::size_t> pos, neg;
  for (const Frame& f : w.positives) pos.push_back(b.add_expansion(f, var_bound));
  for (const Frame& f : w.negatives) neg.push_back(b.add_expansion(f, var_bound));
  const Universe u = b.build();

  Enumerator e(u, search_options(measure, var_bound, length_cap, lang));
  auto masks = [&](const std::vector<std::size_t>& groups) {
    std::vector<std::vector<Word>> out;
    for (std::size_t g : groups) out.push_back(e.ops().from_bits(u.group_mask(g)));
    return out;
  };
  const auto pos_masks = masks(pos), neg_masks = masks(neg);
  const std::size_t W = e.ops().words();
  auto valid_on = [&](const std::vector<Word>& mask, const Word* den) {
    for (std::size_t k = 0; k < W; ++k)
      if (mask[k] & ~den[k]) return false;
    return true;
  };
  BestTracker best(e, measure);
  try {
    e.run([&](std::uint32_t id, const Word* den) {
      if (best.settled(e.entry(id).m.length)) return false;
      for (const auto& m : pos_masks)
        if (!valid_on(m, den)) return true;
      for (const auto& m : neg_masks)
        if (valid_on(m, den)) return true;
      best.offer(id);
      return true;
    });
  } catch (const ResourceError& err) {
    out.exhausted = false;
    out.note = err.what();
  }
  out.best = best.best();
  out.stats = e.stats();
  return out;
}

std::string verdict_name(Certificate::Verdict v) {
  switch (v) {
    case Certificate::Verdict::Proved: return "PROVED";
    case Certificate::Verdict::Refuted: return "REFUTED";
    case Certificate::Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

Certificate certify_bound(const WitnessSet& w, MeasureKind measure, int claimed_bound, int var_bound, int length_cap,
                          Language lang) {
  const bool by_length = measure.tag == MeasureKind::Tag::Length;
  if (length_cap <= 0) length_cap = by_length ? claimed_bound - 1 : claimed_bound + 2;
  Certificate c;
  c.witness_set = w.name;
  c.measure = measure;
  c.claimed_bound = claimed_bound;
  c.var_bound = var_bound;
  c.length_cap = length_cap;
  c.language = lang;

  const int search_cap = by_length ? std::min(length_cap, claimed_bound - 1) : length_cap;
  FrameSearch s;
  try {
    s = min_frame_separator(w, measure, var_bound, search_cap, lang);
  } catch (const ResourceError& err) {
    s.exhausted = false;
    s.note = err.what();
  }
  c.stats = s.stats;
  c.minimum = s.best;
  c.note = s.note;
  if (s.best && s.best->measures.get(measure) < claimed_bound) {
    // Refutations are re-checked without denotations.
    for (const Frame& f : w.positives)
      if (!frame_valid(f, s.best->formula)) throw std::logic_error("refutation fails on positive " + f.name());
    for (const Frame& f : w.negatives)
      if (frame_valid(f, s.best->formula)) throw std::logic_error("refutation holds on negative " + f.name());
    c.verdict = Certificate::Verdict::Refuted;
    c.counterexample = s.best->formula;
    return c;
  }
  if (!s.exhausted) {
    c.verdict = Certificate::Verdict::Inconclusive;
    return c;
  }
  c.verdict = Certificate::Verdict::Proved;
  c.full_proof = by_length && length_cap >= claimed_bound - 1;
  return c;
}

}  // namespace hydra
