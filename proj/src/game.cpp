#include "hydra/game.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "game_internal.hpp"
#include "hydra/colouring.hpp"
#include "hydra/errors.hpp"

namespace hydra {

namespace detail {

std::vector<Bits> minimal_hitting_sets(std::vector<Bits> sets, std::size_t universe_size) {
  // A set containing another imposes nothing extra.
  std::sort(sets.begin(), sets.end(), [](const Bits& a, const Bits& b) {
    return a.count() != b.count() ? a.count() < b.count() : a < b;
  });
  std::vector<Bits> core;
  for (const Bits& s : sets) {
    bool implied = false;
    for (const Bits& c : core)
      if (c.subset_of(s)) {
        implied = true;
        break;
      }
    if (!implied) core.push_back(s);
  }
  for (const Bits& c : core)
    if (c.none()) return {};

  std::vector<Bits> found;
  Bits current(universe_size), forbidden(universe_size);
  std::function<void()> grow = [&]() {
    const Bits* open = nullptr;
    for (const Bits& c : core)
      if (!c.intersects(current)) {
        open = &c;
        break;
      }
    if (!open) {
      found.push_back(current);
      return;
    }
    Bits local_forbidden = forbidden;
    std::vector<std::size_t> options = (*open - forbidden).indices();
    for (std::size_t e : options) {
      current.set(e);
      Bits saved = forbidden;
      forbidden = local_forbidden;
      grow();
      forbidden = saved;
      current.reset(e);
      local_forbidden.set(e);
    }
  };
  grow();

  std::vector<Bits> minimal;
  for (const Bits& h : found) {
    bool ok = true;
    h.for_each([&](std::size_t e) {
      if (!ok) return;
      Bits rest = h;
      rest.reset(e);
      bool needed = false;
      for (const Bits& c : core)
        if (!c.intersects(rest)) {
          needed = true;
          break;
        }
      if (!needed) ok = false;
    });
    if (ok) minimal.push_back(h);
  }
  std::sort(minimal.begin(), minimal.end());
  minimal.erase(std::unique(minimal.begin(), minimal.end()), minimal.end());
  return minimal;
}

int universe_max_var(const Universe& u) {
  int top = 0;
  for (std::size_t g = 0; g < u.group_count(); ++g) {
    const UniverseGroup& grp = u.group(g);
    if (grp.expanded)
      top = std::max(top, grp.var_bound);
    else
      for (const Model& m : grp.models)
        for (int p = 1; p <= m.max_var(); ++p)
          if (m.extension(p).any()) top = std::max(top, p);
  }
  return top;
}

std::vector<std::pair<std::size_t, std::size_t>> pick_into(const Bits& from,
                                                           const std::vector<std::vector<std::size_t>>& nbrs,
                                                           const Bits& target) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  from.for_each([&](std::size_t i) {
    for (std::size_t j : nbrs[i])
      if (target.test(j)) {
        out.push_back({i, j});
        return;
      }
    throw std::logic_error("no neighbour inside the target set");
  });
  return out;
}

}  // namespace detail

namespace {

using detail::minimal_hitting_sets;

std::vector<std::vector<std::size_t>> same_model_lists(const Universe& u) {
  std::vector<std::vector<std::size_t>> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = u.same_model(i);
  return out;
}

Bits image(const Bits& from, const std::vector<std::vector<std::size_t>>& nbrs, std::size_t size) {
  Bits out(size);
  from.for_each([&](std::size_t i) {
    for (std::size_t j : nbrs[i]) out.set(j);
  });
  return out;
}

bool all_have(const Bits& from, const std::vector<std::vector<std::size_t>>& nbrs) {
  bool ok = true;
  from.for_each([&](std::size_t i) { ok = ok && !nbrs[i].empty(); });
  return ok;
}

std::vector<Bits> neighbour_sets(const Bits& from, const std::vector<std::vector<std::size_t>>& nbrs,
                                 std::size_t size) {
  std::vector<Bits> out;
  from.for_each([&](std::size_t i) {
    Bits b(size);
    for (std::size_t j : nbrs[i]) b.set(j);
    out.push_back(std::move(b));
  });
  return out;
}

constexpr int kNone = std::numeric_limits<int>::max();

// Top-down search with the Hydra greedy. Costs are a measure under a
// Length cap; VarCount is handled by the caller through allowed_vars.
class ExhaustiveSolver {
 public:
  ExhaustiveSolver(const Universe& u, Language lang, MeasureKind measure, std::vector<int> allowed_vars,
                   const std::vector<std::uint32_t>& classes, std::size_t cap)
      : u_(u),
        lang_(lang),
        measure_(measure),
        vars_(std::move(allowed_vars)),
        cls_(classes),
        cap_(cap),
        succ_(u.successor_lists()),
        same_(same_model_lists(u)) {
    class_count_ = cls_.empty() ? 0 : *std::max_element(cls_.begin(), cls_.end()) + 1;
    for (int v : vars_) {
      Bits b = u.literal(v);
      lit_.push_back({v, b});
    }
  }

  // Least cost over trees of Length <= len, or kNone.
  int solve(const Bits& l, const Bits& r, int len) {
    if (len < 1) return kNone;
    const bool by_length = measure_.tag == MeasureKind::Tag::Length;
    Key key{l, r, by_length ? 0 : len};
    auto it = memo_.find(key);
    if (it != memo_.end()) {
      const Entry& e = it->second;
      if (by_length) {
        if (e.cost != kNone) return e.cost <= len ? e.cost : kNone;
        if (len <= e.tried) return kNone;
      } else {
        return e.cost;
      }
    }
    if (memo_.size() >= cap_) throw ResourceError("game position cap exceeded");

    Entry e;
    e.tried = len;
    if (!blocked(l, r)) search(l, r, len, e);
    memo_[key] = e;
    return e.cost;
  }

  GameTree build(const Bits& l, const Bits& r, int len) {
    const bool by_length = measure_.tag == MeasureKind::Tag::Length;
    const Entry& e = memo_.at(Key{l, r, by_length ? 0 : len});
    if (e.cost == kNone) throw std::logic_error("no tree at this position");
    const Move& mv = e.move;
    GameTree t;
    t.label = mv.kind;
    t.var = mv.var;
    t.position = {&u_, l, r};
    switch (mv.kind) {
      case NodeKind::Dia:
      case NodeKind::Exists:
        t.choice = detail::pick_into(l, mv.kind == NodeKind::Dia ? succ_ : same_, mv.l1);
        break;
      case NodeKind::Box:
      case NodeKind::Forall:
        t.choice = detail::pick_into(r, mv.kind == NodeKind::Box ? succ_ : same_, mv.r1);
        break;
      default:
        break;
    }
    if (is_modal(mv.kind)) {
      t.children.push_back(build(mv.l1, mv.r1, mv.len1));
    } else if (is_binary(mv.kind)) {
      t.children.push_back(build(mv.l1, mv.r1, mv.len1));
      t.children.push_back(build(mv.l2, mv.r2, mv.len2));
    }
    return t;
  }

  std::size_t positions() const { return memo_.size(); }

 private:
  struct Key {
    Bits l, r;
    int len;
    bool operator==(const Key& o) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return k.l.hash() * 31 + k.r.hash() * 7 + static_cast<std::size_t>(k.len);
    }
  };
  struct Move {
    Move(NodeKind k = NodeKind::False, int v = 0) : kind(k), var(v) {}
    NodeKind kind;
    int var;
    Bits l1, r1, l2, r2;
    int len1 = 0, len2 = 0;
  };
  struct Entry {
    int cost = kNone;
    int tried = 0;
    Move move;
  };

  int own(NodeKind k) const {
    switch (measure_.tag) {
      case MeasureKind::Tag::Length:
        return 1;
      case MeasureKind::Tag::ModalDepth:
        return is_modal(k) ? 1 : 0;
      case MeasureKind::Tag::VarCount:
        return 0;
      case MeasureKind::Tag::Count: {
        auto s = symbol_of(k);
        return s && *s == measure_.symbol ? 1 : 0;
      }
    }
    return 0;
  }
  int combine(NodeKind k, int a, int b) const {
    if (measure_.tag == MeasureKind::Tag::ModalDepth) return own(k) + std::max(a, b);
    return own(k) + a + b;
  }

  // Some left and right pointed model are indistinguishable.
  bool blocked(const Bits& l, const Bits& r) const {
    if (l.intersects(r)) return true;
    if (l.none() || r.none()) return false;
    Bits seen(class_count_);
    l.for_each([&](std::size_t i) { seen.set(cls_[i]); });
    bool hit = false;
    r.for_each([&](std::size_t i) { hit = hit || seen.test(cls_[i]); });
    return hit;
  }

  void offer(Entry& e, int cost, Move mv) {
    if (cost < e.cost) {
      e.cost = cost;
      e.move = std::move(mv);
    }
  }

  void search(const Bits& l, const Bits& r, int len, Entry& e) {
    const std::size_t n = u_.size();
    const bool by_length = measure_.tag == MeasureKind::Tag::Length;

    if (l.none()) offer(e, own(NodeKind::False), {NodeKind::False});
    if (r.none()) offer(e, own(NodeKind::True), {NodeKind::True});
    for (const auto& [v, ext] : lit_) {
      if (l.subset_of(ext) && !r.intersects(ext)) offer(e, own(NodeKind::PosLit), {NodeKind::PosLit, v});
      if (!l.intersects(ext) && r.subset_of(ext)) offer(e, own(NodeKind::NegLit), {NodeKind::NegLit, v});
    }
    if (len < 2 || (by_length && e.cost == 1)) return;

    auto modal = [&](NodeKind k, const std::vector<std::vector<std::size_t>>& nbrs, bool left_picks) {
      const Bits& picker = left_picks ? l : r;
      if (!all_have(picker, nbrs)) return;
      Bits greedy = image(left_picks ? r : l, nbrs, n);
      for (const Bits& h : minimal_hitting_sets(neighbour_sets(picker, nbrs, n), n)) {
        Bits cl = left_picks ? h : greedy;
        Bits cr = left_picks ? greedy : h;
        int c = solve(cl, cr, len - 1);
        if (c == kNone) continue;
        Move mv{k};
        mv.l1 = cl;
        mv.r1 = cr;
        mv.len1 = by_length ? c : len - 1;
        offer(e, combine(k, c, 0), std::move(mv));
      }
    };
    modal(NodeKind::Dia, succ_, true);
    modal(NodeKind::Box, succ_, false);
    if (lang_ == Language::Universal) {
      modal(NodeKind::Exists, same_, true);
      modal(NodeKind::Forall, same_, false);
    }
    if (len < 3) return;

    auto split = [&](NodeKind k, const Bits& whole) {
      std::vector<std::size_t> idx = whole.indices();
      if (idx.size() < 2) return;
      const std::size_t rest = idx.size() - 1;
      if (rest >= 30) throw ResourceError("split of more than 31 pointed models");
      for (std::uint64_t mask = 0; mask + 1 < (std::uint64_t{1} << rest); ++mask) {
        Bits a(n);
        a.set(idx[0]);
        for (std::size_t j = 0; j < rest; ++j)
          if ((mask >> j) & 1) a.set(idx[j + 1]);
        Bits b = whole - a;
        const Bits& l1 = k == NodeKind::Or ? a : l;
        const Bits& l2 = k == NodeKind::Or ? b : l;
        const Bits& r1 = k == NodeKind::Or ? r : a;
        const Bits& r2 = k == NodeKind::Or ? r : b;
        if (by_length) {
          int c1 = solve(l1, r1, len - 2);
          if (c1 == kNone) continue;
          int c2 = solve(l2, r2, len - 1 - c1);
          if (c2 == kNone) continue;
          Move mv{k};
          mv.l1 = l1, mv.r1 = r1, mv.l2 = l2, mv.r2 = r2;
          mv.len1 = c1, mv.len2 = c2;
          offer(e, 1 + c1 + c2, std::move(mv));
        } else {
          for (int len1 = 1; len1 <= len - 2; ++len1) {
            int c1 = solve(l1, r1, len1);
            if (c1 == kNone) continue;
            int c2 = solve(l2, r2, len - 1 - len1);
            if (c2 == kNone) continue;
            Move mv{k};
            mv.l1 = l1, mv.r1 = r1, mv.l2 = l2, mv.r2 = r2;
            mv.len1 = len1, mv.len2 = len - 1 - len1;
            offer(e, combine(k, c1, c2), std::move(mv));
          }
        }
      }
    };
    split(NodeKind::Or, l);
    split(NodeKind::And, r);
  }

  const Universe& u_;
  Language lang_;
  MeasureKind measure_;
  std::vector<int> vars_;
  const std::vector<std::uint32_t>& cls_;
  std::size_t class_count_ = 0;
  std::size_t cap_;
  const std::vector<std::vector<std::size_t>>& succ_;
  std::vector<std::vector<std::size_t>> same_;
  std::vector<std::pair<int, Bits>> lit_;
  std::unordered_map<Key, Entry, KeyHash> memo_;
};

Bits closure(const Universe& u, const Bits& start) {
  Bits seen = start;
  std::vector<std::size_t> stack = start.indices();
  while (!stack.empty()) {
    std::size_t i = stack.back();
    stack.pop_back();
    auto visit = [&](std::size_t j) {
      if (!seen.test(j)) {
        seen.set(j);
        stack.push_back(j);
      }
    };
    for (std::size_t j : u.successor_lists()[i]) visit(j);
    for (std::size_t j : u.same_model(i)) visit(j);
  }
  return seen;
}

std::optional<GameResult> exhaustive(const GamePosition& pos, MeasureKind measure, int budget, Language lang,
                                     const GameOptions& opts, int var_bound,
                                     const std::vector<std::uint32_t>& classes) {
  const Universe& u = *pos.universe;
  const int length_cap = opts.length_cap > 0 ? opts.length_cap : budget + 4;

  if (measure.tag == MeasureKind::Tag::VarCount) {
    // Fewest variables first; within a size, subsets in lexicographic order.
    for (int size = 0; size <= var_bound && size < budget; ++size) {
      std::vector<int> pick(size);
      std::function<std::optional<GameResult>(int, int)> rec = [&](int at, int from) -> std::optional<GameResult> {
        if (at == size) {
          ExhaustiveSolver s(u, lang, MeasureKind::length(), pick, classes, opts.position_cap);
          for (int len = 1; len <= length_cap; ++len) {
            int c = s.solve(pos.left, pos.right, len);
            if (c != kNone) return GameResult{size, s.build(pos.left, pos.right, c)};
          }
          return std::nullopt;
        }
        for (int v = from; v <= var_bound; ++v) {
          pick[at] = v;
          if (auto r = rec(at + 1, v + 1)) return r;
        }
        return std::nullopt;
      };
      if (auto r = rec(0, 1)) return r;
    }
    return std::nullopt;
  }

  std::vector<int> all_vars;
  for (int v = 1; v <= var_bound; ++v) all_vars.push_back(v);
  ExhaustiveSolver s(u, lang, measure, all_vars, classes, opts.position_cap);
  if (measure.tag == MeasureKind::Tag::Length) {
    for (int len = 1; len < budget; ++len) {
      int c = s.solve(pos.left, pos.right, len);
      if (c != kNone) return GameResult{c, s.build(pos.left, pos.right, c)};
    }
    return std::nullopt;
  }
  int c = s.solve(pos.left, pos.right, length_cap);
  if (c == kNone || c >= budget) return std::nullopt;
  return GameResult{c, s.build(pos.left, pos.right, length_cap)};
}

bool use_retrograde(const GameOptions& opts, MeasureKind measure) {
  if (measure.tag != MeasureKind::Tag::Length) return false;
  switch (opts.engine) {
    case GameEngine::Exhaustive:
      return false;
    case GameEngine::Retrograde:
      return true;
    case GameEngine::Auto:
      return true;
  }
  return false;
}

}  // namespace

std::optional<GameResult> min_cost_fgm(const GamePosition& pos, MeasureKind measure, int budget, Language lang,
                                       const GameOptions& opts) {
  if (!pos.universe) throw std::invalid_argument("position without a universe");
  if (budget < 1) throw std::invalid_argument("budget must be at least 1");
  if (!applicable(measure, lang)) throw std::invalid_argument("measure not applicable to the language");
  const Universe& u = *pos.universe;
  if (pos.left.size() != u.size() || pos.right.size() != u.size())
    throw std::invalid_argument("position sets do not match the universe");
  const int var_bound = opts.var_bound > 0 ? opts.var_bound : detail::universe_max_var(u);

  if (use_retrograde(opts, measure)) {
    detail::RetrogradeSolver s(u, lang, var_bound, closure(u, pos.left), opts.position_cap);
    int c = s.min_length(pos.left, pos.right, budget - 1);
    if (c < 0) return std::nullopt;
    GameTree t = s.tree(pos.left, pos.right, c);
    return GameResult{hydra::measure(psi_of_tree(t), measure), std::move(t)};
  }
  std::vector<std::uint32_t> classes = bisimulation_classes(u, lang, var_bound);
  return exhaustive(pos, measure, budget, lang, opts, var_bound, classes);
}

std::optional<FrameGameResult> fgf_min_cost(const WitnessSet& w, MeasureKind measure, int var_bound, int budget,
                                            Language lang, const GameOptions& opts) {
  if (budget < 1) throw std::invalid_argument("budget must be at least 1");
  if (w.positives.empty() || w.negatives.empty()) throw std::invalid_argument("witness set needs both sides");
  UniverseBuilder b;
  std::vector<std::size_t> pos_groups, neg_groups;
  for (const Frame& f : w.positives) pos_groups.push_back(b.add_expansion(f, var_bound, f.name()));
  for (const Frame& f : w.negatives) neg_groups.push_back(b.add_expansion(f, var_bound, f.name()));
  auto shared = std::make_shared<const Universe>(b.build());
  const Universe& u = *shared;

  Bits left = u.empty_set();
  for (std::size_t g : pos_groups) left |= u.group_mask(g);
  const std::vector<std::uint32_t> classes = bisimulation_classes(u, lang, var_bound);
  const std::size_t class_count = *std::max_element(classes.begin(), classes.end()) + 1;
  Bits left_classes(class_count);
  left.for_each([&](std::size_t i) { left_classes.set(classes[i]); });

  // Per negative: one representative per class that no left model matches.
  std::vector<std::vector<std::size_t>> options;
  for (std::size_t g : neg_groups) {
    std::vector<std::size_t> reps;
    Bits seen(class_count);
    u.group_mask(g).for_each([&](std::size_t i) {
      std::uint32_t c = classes[i];
      if (left_classes.test(c) || seen.test(c)) return;
      seen.set(c);
      reps.push_back(i);
    });
    if (reps.empty()) return std::nullopt;
    options.push_back(std::move(reps));
  }

  std::vector<Bits> tuples;
  {
    std::vector<std::size_t> at(options.size(), 0);
    while (true) {
      Bits r = u.empty_set();
      for (std::size_t k = 0; k < options.size(); ++k) r.set(options[k][at[k]]);
      tuples.push_back(std::move(r));
      std::size_t k = 0;
      while (k < options.size() && ++at[k] == options[k].size()) at[k++] = 0;
      if (k == options.size()) break;
    }
  }
  std::sort(tuples.begin(), tuples.end());
  tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());

  auto finish = [&](int cost, GameTree tree, std::size_t tried) {
    FrameGameResult res{shared, cost, std::move(tree), {}, tried};
    res.tree.position.right.for_each([&](std::size_t i) { res.hercules_choice.push_back(u.pointed(i)); });
    return res;
  };

  GameOptions inner = opts;
  inner.var_bound = var_bound;
  if (use_retrograde(opts, measure)) {
    detail::RetrogradeSolver s(u, lang, var_bound, left, opts.position_cap);
    for (int len = 1; len < budget; ++len)
      for (std::size_t t = 0; t < tuples.size(); ++t)
        if (s.separable(left, tuples[t], len)) {
          GameTree tree = s.tree(left, tuples[t], len);
          const int cost = hydra::measure(psi_of_tree(tree), measure);
          return finish(cost, std::move(tree), t + 1);
        }
    return std::nullopt;
  }

  std::optional<FrameGameResult> best;
  int bound = budget;
  for (std::size_t t = 0; t < tuples.size(); ++t) {
    GamePosition pos{&u, left, tuples[t]};
    auto r = exhaustive(pos, measure, bound, lang, inner, var_bound, classes);
    if (r && r->cost < bound) {
      bound = r->cost;
      best = finish(r->cost, std::move(r->tree), t + 1);
    }
  }
  if (best) best->choices_tried = tuples.size();
  return best;
}

Formula psi_of_tree(const GameTree& t) {
  auto need = [&](std::size_t k) {
    if (t.children.size() != k) throw std::invalid_argument("game tree is not closed at a " + move_name(t) + " node");
  };
  switch (t.label) {
    case NodeKind::True:
      need(0);
      return Formula::top();
    case NodeKind::False:
      need(0);
      return Formula::bottom();
    case NodeKind::PosLit:
    case NodeKind::NegLit:
      need(0);
      return Formula::literal(t.var, t.label == NodeKind::PosLit);
    case NodeKind::Or:
    case NodeKind::And:
      need(2);
      return Formula::binary(t.label, psi_of_tree(t.children[0]), psi_of_tree(t.children[1]));
    default:
      need(1);
      return Formula::unary(t.label, psi_of_tree(t.children[0]));
  }
}

namespace {

struct Verifier {
  Language lang;
  const Universe* u = nullptr;
  std::vector<std::vector<std::size_t>> same;
  std::string error;

  bool fail(const std::string& path, const std::string& why) {
    error = (path.empty() ? std::string("root") : path) + ": " + why;
    return false;
  }

  bool check(const GameTree& t, const std::string& path) {
    const GamePosition& p = t.position;
    if (p.universe != u) return fail(path, "position from another universe");
    const std::size_t n = u->size();
    if (p.left.size() != n || p.right.size() != n) return fail(path, "position size mismatch");
    const auto& succ = u->successor_lists();
    auto arity = [&](std::size_t k) { return t.children.size() == k; };

    switch (t.label) {
      case NodeKind::False:
        if (!arity(0)) return fail(path, "leaf with children");
        if (p.left.any()) return fail(path, "bottom with a nonempty left side");
        return true;
      case NodeKind::True:
        if (!arity(0)) return fail(path, "leaf with children");
        if (p.right.any()) return fail(path, "top with a nonempty right side");
        return true;
      case NodeKind::PosLit:
      case NodeKind::NegLit: {
        if (!arity(0)) return fail(path, "leaf with children");
        if (t.var < 1) return fail(path, "literal without a variable");
        Bits ext = u->literal(t.var);
        if (t.label == NodeKind::NegLit) ext = ~ext;
        if (!p.left.subset_of(ext)) return fail(path, "some left model falsifies the literal");
        if (p.right.intersects(ext)) return fail(path, "some right model satisfies the literal");
        return true;
      }
      case NodeKind::Or:
      case NodeKind::And: {
        if (!arity(2)) return fail(path, "binary move without two children");
        const GamePosition& a = t.children[0].position;
        const GamePosition& b = t.children[1].position;
        const bool is_or = t.label == NodeKind::Or;
        const Bits& kept = is_or ? p.right : p.left;
        const Bits& whole = is_or ? p.left : p.right;
        if (!((is_or ? a.right : a.left) == kept) || !((is_or ? b.right : b.left) == kept))
          return fail(path, "split changed the other side");
        const Bits& x = is_or ? a.left : a.right;
        const Bits& y = is_or ? b.left : b.right;
        if (!((x | y) == whole)) return fail(path, "split parts do not cover the position");
        return check(t.children[0], path + "/0") && check(t.children[1], path + "/1");
      }
      default: {
        if (!arity(1)) return fail(path, "modal move without one child");
        const bool local = t.label == NodeKind::Dia || t.label == NodeKind::Box;
        if (!local && lang == Language::Basic) return fail(path, "universal move in the basic language");
        const auto& nbrs = local ? succ : same;
        const bool left_picks = t.label == NodeKind::Dia || t.label == NodeKind::Exists;
        const Bits& picker = left_picks ? p.left : p.right;
        const Bits& greedy_from = left_picks ? p.right : p.left;
        const GamePosition& c = t.children[0].position;

        Bits picked(n), covered(n);
        for (auto [from, to] : t.choice) {
          if (from >= n || to >= n || !picker.test(from)) return fail(path, "choice from outside the position");
          if (std::find(nbrs[from].begin(), nbrs[from].end(), to) == nbrs[from].end())
            return fail(path, "choice is not a successor");
          if (covered.test(from)) return fail(path, "two choices for one pointed model");
          covered.set(from);
          picked.set(to);
        }
        if (!(covered == picker)) return fail(path, "Hercules did not choose for every pointed model");
        Bits greedy(n);
        greedy_from.for_each([&](std::size_t i) {
          for (std::size_t j : nbrs[i]) greedy.set(j);
        });
        const Bits& child_picked = left_picks ? c.left : c.right;
        const Bits& child_greedy = left_picks ? c.right : c.left;
        if (!(child_picked == picked)) return fail(path, "child does not match Hercules' choice");
        if (!(child_greedy == greedy)) return fail(path, "the Hydra's reply is not greedy");
        return check(t.children[0], path + "/0");
      }
    }
  }
};

void preorder(const GameTree& t, const std::function<void(const GameTree&)>& f) {
  f(t);
  for (const GameTree& c : t.children) preorder(c, f);
}

}  // namespace

TreeCheck verify_closed_tree(const GameTree& t, Language lang) {
  if (!t.position.universe) return {false, "root: position without a universe"};
  Verifier v;
  v.lang = lang;
  v.u = t.position.universe;
  v.same.resize(v.u->size());
  for (std::size_t i = 0; i < v.u->size(); ++i) v.same[i] = v.u->same_model(i);
  if (v.check(t, "")) return {};
  return {false, v.error};
}

std::size_t node_count(const GameTree& t) {
  std::size_t n = 1;
  for (const GameTree& c : t.children) n += node_count(c);
  return n;
}

bool check_weight(const GameTree& t, const WeightAssignment& f) {
  if (f.size() != node_count(t)) return false;
  std::size_t at = 0;
  std::function<bool(const GameTree&)> rec = [&](const GameTree& n) {
    const double w = f[at++];
    if (!(w >= 0)) return false;
    std::vector<double> kids;
    for (const GameTree& c : n.children) {
      kids.push_back(f[at]);
      if (!rec(c)) return false;
    }
    switch (kids.size()) {
      case 0:
        return w <= 1;
      case 1:
        return w <= kids[0] + 1;
      default:
        return w <= kids[0] + kids[1] + 1;
    }
  };
  return rec(t);
}

WeightAssignment special_pair_weight(const GameTree& t, const NoncolSetup& setup) {
  WeightAssignment out;
  preorder(t, [&](const GameTree& n) {
    std::set<int> ids;
    n.position.left.for_each([&](std::size_t i) {
      if (setup.identity[i] < 0) return;
      bool pair = false;
      n.position.right.for_each([&](std::size_t j) {
        pair = pair || (setup.identity[j] < 0 && setup.valuation[j] == setup.valuation[i]);
      });
      if (pair) ids.insert(setup.identity[i]);
    });
    out.push_back(static_cast<double>(ids.size()));
  });
  return out;
}

std::string move_name(const GameTree& t) {
  switch (t.label) {
    case NodeKind::True:
      return "T";
    case NodeKind::False:
      return "F";
    case NodeKind::PosLit:
      return "p" + std::to_string(t.var);
    case NodeKind::NegLit:
      return "~p" + std::to_string(t.var);
    case NodeKind::Or:
      return "|";
    case NodeKind::And:
      return "&";
    case NodeKind::Dia:
      return "<>";
    case NodeKind::Box:
      return "[]";
    case NodeKind::Exists:
      return "E";
    case NodeKind::Forall:
      return "A";
  }
  return "?";
}

std::string render_tree(const GameTree& t) {
  std::ostringstream out;
  auto set_text = [](const Bits& b) {
    std::string s = "{";
    bool first = true;
    b.for_each([&](std::size_t i) {
      if (!first) s += ",";
      first = false;
      s += std::to_string(i);
    });
    return s + "}";
  };
  std::function<void(const GameTree&, int)> rec = [&](const GameTree& n, int depth) {
    out << std::string(2 * depth, ' ') << move_name(n) << "  L=" << set_text(n.position.left)
        << " R=" << set_text(n.position.right);
    if (!n.choice.empty()) {
      out << " pick=";
      for (std::size_t k = 0; k < n.choice.size(); ++k)
        out << (k ? "," : "") << n.choice[k].first << "->" << n.choice[k].second;
    }
    out << "\n";
    for (const GameTree& c : n.children) rec(c, depth + 1);
  };
  rec(t, 0);
  return out.str();
}

}  // namespace hydra
