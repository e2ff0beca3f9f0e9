#include <algorithm>
#include <stdexcept>

#include "game_internal.hpp"
#include "hydra/errors.hpp"

namespace hydra::detail {

RetrogradeSolver::RetrogradeSolver(const Universe& u, Language lang, int var_bound, const Bits& left_region,
                                   std::size_t cap)
    : u_(u), lang_(lang), var_bound_(var_bound), cap_(cap) {
  cls_ = bisimulation_classes(u, lang, var_bound);
  class_count_ = cls_.empty() ? 0 : *std::max_element(cls_.begin(), cls_.end()) + 1;
  const std::size_t c = class_count_;
  idx_succ_ = u.successor_lists();
  idx_same_.resize(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) idx_same_[i] = u.same_model(i);

  succ_.assign(c, Bits(c));
  same_.assign(c, Bits(c));
  lit_.assign(static_cast<std::size_t>(var_bound) + 1, Bits(c));
  std::vector<bool> done(c, false);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const std::uint32_t k = cls_[i];
    if (done[k]) continue;
    done[k] = true;
    for (std::size_t j : idx_succ_[i]) succ_[k].set(cls_[j]);
    for (std::size_t j : idx_same_[i]) same_[k].set(cls_[j]);
    for (int p = 1; p <= var_bound; ++p)
      if (u.holds(i, p)) lit_[p].set(k);
  }
  region_ = class_set(left_region);
}

Bits RetrogradeSolver::class_set(const Bits& indices) const {
  Bits out(class_count_);
  indices.for_each([&](std::size_t i) { out.set(cls_[i]); });
  return out;
}

const std::vector<const RetrogradeSolver::Deriv*>& RetrogradeSolver::family(const Bits& r, int len) {
  Family& f = fams_[r];
  while (static_cast<int>(f.levels.size()) <= len) {
    const int next = static_cast<int>(f.levels.size());
    if (next == 0) {
      f.levels.emplace_back();
      continue;
    }
    build_level(r, next);
  }
  return fams_[r].levels[len];
}

void RetrogradeSolver::build_level(const Bits& r, int len) {
  const std::size_t c = class_count_;
  std::vector<const Deriv*> fam = fams_[r].levels[len - 1];
  auto make = [&](Deriv d) -> const Deriv* {
    if (arena_.size() >= cap_) throw ResourceError("game derivation cap exceeded");
    arena_.push_back(std::move(d));
    return &arena_.back();
  };
  // fam keeps only maximal sets; an equal set already present wins.
  auto offer = [&](Deriv d) {
    for (const Deriv* e : fam)
      if (d.m.subset_of(e->m)) return;
    std::erase_if(fam, [&](const Deriv* e) { return e->m.subset_of(d.m); });
    fam.push_back(make(std::move(d)));
  };

  if (len == 1) {
    offer({NodeKind::False, 0, Bits(c), nullptr, nullptr, {}, {}});
    if (r.none()) offer({NodeKind::True, 0, region_, nullptr, nullptr, {}, {}});
    for (int p = 1; p <= var_bound_; ++p) {
      if (!r.intersects(lit_[p])) offer({NodeKind::PosLit, p, lit_[p] & region_, nullptr, nullptr, {}, {}});
      if (r.subset_of(lit_[p])) offer({NodeKind::NegLit, p, region_ - lit_[p], nullptr, nullptr, {}, {}});
    }
    fams_[r].levels.push_back(std::move(fam));
    return;
  }
  // Once the region is covered nothing longer helps.
  if (fam.size() == 1 && fam[0]->m == region_) {
    fams_[r].levels.push_back(std::move(fam));
    return;
  }

  auto image = [&](const Bits& from, const std::vector<Bits>& nbrs) {
    Bits out(c);
    from.for_each([&](std::size_t k) { out |= nbrs[k]; });
    return out;
  };
  auto pre_some = [&](const Bits& m, const std::vector<Bits>& nbrs) {
    Bits out(c);
    region_.for_each([&](std::size_t k) {
      if (nbrs[k].intersects(m)) out.set(k);
    });
    return out;
  };
  auto pre_all = [&](const Bits& m, const std::vector<Bits>& nbrs) {
    Bits out(c);
    region_.for_each([&](std::size_t k) {
      if (nbrs[k].subset_of(m)) out.set(k);
    });
    return out;
  };

  auto unary = [&](NodeKind k, const std::vector<Bits>& nbrs) {
    const bool left_picks = k == NodeKind::Dia || k == NodeKind::Exists;
    if (left_picks) {
      Bits rr = image(r, nbrs);
      std::vector<const Deriv*> sub = family(rr, len - 1);
      for (const Deriv* d : sub) offer({k, 0, pre_some(d->m, nbrs), d, nullptr, rr, {}});
      return;
    }
    std::vector<Bits> sets;
    bool ok = true;
    r.for_each([&](std::size_t k2) {
      ok = ok && nbrs[k2].any();
      sets.push_back(nbrs[k2]);
    });
    if (!ok) return;
    for (const Bits& h : minimal_hitting_sets(sets, c)) {
      std::vector<const Deriv*> sub = family(h, len - 1);
      for (const Deriv* d : sub) offer({k, 0, pre_all(d->m, nbrs), d, nullptr, h, {}});
    }
  };
  unary(NodeKind::Dia, succ_);
  unary(NodeKind::Box, succ_);
  if (lang_ == Language::Universal) {
    unary(NodeKind::Exists, same_);
    unary(NodeKind::Forall, same_);
  }

  if (len >= 3) {
    for (int a = 1; 2 * a <= len - 1; ++a) {
      const int b = len - 1 - a;
      std::vector<const Deriv*> fa = fams_[r].levels[a];
      std::vector<const Deriv*> fb = fams_[r].levels[b];
      for (const Deriv* x : fa)
        for (const Deriv* y : fb) {
          if (x->m.subset_of(y->m) || y->m.subset_of(x->m)) continue;
          offer({NodeKind::Or, 0, x->m | y->m, x, y, r, r});
        }
    }
    std::vector<std::size_t> idx = r.indices();
    if (idx.size() >= 2) {
      const std::size_t rest = idx.size() - 1;
      if (rest >= 30) throw ResourceError("split of more than 31 classes");
      for (std::uint64_t mask = 0; mask + 1 < (std::uint64_t{1} << rest); ++mask) {
        Bits r1(c);
        r1.set(idx[0]);
        for (std::size_t j = 0; j < rest; ++j)
          if ((mask >> j) & 1) r1.set(idx[j + 1]);
        Bits r2 = r - r1;
        for (int a = 1; a <= len - 2; ++a) {
          std::vector<const Deriv*> fa = family(r1, a);
          std::vector<const Deriv*> fb = family(r2, len - 1 - a);
          for (const Deriv* x : fa)
            for (const Deriv* y : fb) offer({NodeKind::And, 0, x->m & y->m, x, y, r1, r2});
        }
      }
    }
  }
  fams_[r].levels.push_back(std::move(fam));
}

bool RetrogradeSolver::separable(const Bits& left, const Bits& right, int len) {
  if (len < 1) return false;
  const Bits lc = class_set(left), rc = class_set(right);
  if (lc.intersects(rc)) return false;
  if (!lc.subset_of(region_)) throw std::invalid_argument("left set outside the solver's region");
  for (const Deriv* d : family(rc, len))
    if (lc.subset_of(d->m)) return true;
  return false;
}

int RetrogradeSolver::min_length(const Bits& left, const Bits& right, int max_len) {
  const Bits lc = class_set(left), rc = class_set(right);
  if (lc.intersects(rc)) return -1;
  for (int len = 1; len <= max_len; ++len)
    if (separable(left, right, len)) return len;
  return -1;
}

GameTree RetrogradeSolver::tree(const Bits& left, const Bits& right, int len) {
  const Bits lc = class_set(left);
  for (const Deriv* d : family(class_set(right), len))
    if (lc.subset_of(d->m)) return build(left, right, d);
  throw std::logic_error("position is not separable within the given Length");
}

GameTree RetrogradeSolver::build(const Bits& left, const Bits& right, const Deriv* d) {
  const std::size_t n = u_.size();
  GameTree t;
  t.label = d->kind;
  t.var = d->var;
  t.position = {&u_, left, right};

  auto indices_in = [&](const Bits& classes) {
    Bits out(n);
    for (std::size_t i = 0; i < n; ++i)
      if (classes.test(cls_[i])) out.set(i);
    return out;
  };
  auto greedy = [&](const Bits& from, const std::vector<std::vector<std::size_t>>& nbrs) {
    Bits out(n);
    from.for_each([&](std::size_t i) {
      for (std::size_t j : nbrs[i]) out.set(j);
    });
    return out;
  };

  switch (d->kind) {
    case NodeKind::Dia:
    case NodeKind::Exists: {
      const auto& nbrs = d->kind == NodeKind::Dia ? idx_succ_ : idx_same_;
      t.choice = pick_into(left, nbrs, indices_in(d->a->m));
      Bits cl(n);
      for (auto [from, to] : t.choice) cl.set(to);
      t.children.push_back(build(cl, greedy(right, nbrs), d->a));
      break;
    }
    case NodeKind::Box:
    case NodeKind::Forall: {
      const auto& nbrs = d->kind == NodeKind::Box ? idx_succ_ : idx_same_;
      t.choice = pick_into(right, nbrs, indices_in(d->ra));
      Bits cr(n);
      for (auto [from, to] : t.choice) cr.set(to);
      t.children.push_back(build(greedy(left, nbrs), cr, d->a));
      break;
    }
    case NodeKind::Or: {
      Bits l1 = left & indices_in(d->a->m);
      Bits l2 = left - l1;
      if (l2.none()) return build(left, right, d->a);
      if (l1.none()) return build(left, right, d->b);
      t.children.push_back(build(l1, right, d->a));
      t.children.push_back(build(l2, right, d->b));
      break;
    }
    case NodeKind::And: {
      Bits r1 = right & indices_in(d->ra);
      Bits r2 = right - r1;
      if (r2.none()) return build(left, right, d->a);
      if (r1.none()) return build(left, right, d->b);
      t.children.push_back(build(left, r1, d->a));
      t.children.push_back(build(left, r2, d->b));
      break;
    }
    default:
      break;
  }
  return t;
}

}  // namespace hydra::detail
