#include "hydra/universe.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "hydra/errors.hpp"

namespace hydra {

bool Universe::aligned(std::size_t g) const {
  return groups_[g].model_count % Bits::word_bits == 0 && groups_[g].base % Bits::word_bits == 0;
}

Universe::Location Universe::locate(std::size_t i) const {
  if (i >= size_) throw std::out_of_range("universe index out of range");
  auto it = std::upper_bound(order_.begin(), order_.end(), i,
                             [&](std::size_t x, std::size_t g) { return x < groups_[g].base; });
  std::size_t g = *(it - 1);
  std::size_t off = i - groups_[g].base;
  std::size_t G = groups_[g].model_count;
  return {g, off % G, static_cast<State>(off / G)};
}

std::vector<std::size_t> Universe::successors(std::size_t i) const {
  Location loc = locate(i);
  std::vector<std::size_t> out;
  for (State v : groups_[loc.group].frame.successors(loc.state)) out.push_back(index(loc.group, loc.model, v));
  return out;
}

const std::vector<std::vector<std::size_t>>& Universe::successor_lists() const {
  if (succ_cache_.size() != size_) {
    succ_cache_.assign(size_, {});
    for (std::size_t i = 0; i < size_; ++i) succ_cache_[i] = successors(i);
  }
  return succ_cache_;
}

std::vector<std::size_t> Universe::same_model(std::size_t i) const {
  Location loc = locate(i);
  std::vector<std::size_t> out;
  for (State v = 0; v < groups_[loc.group].frame.size(); ++v) out.push_back(index(loc.group, loc.model, v));
  return out;
}

bool Universe::holds(std::size_t i, int var) const {
  Location loc = locate(i);
  const UniverseGroup& grp = groups_[loc.group];
  if (grp.expanded) {
    if (var < 1 || var > grp.var_bound) return false;
    std::size_t bit = static_cast<std::size_t>(var - 1) * grp.frame.size() + loc.state;
    return (loc.model >> bit) & 1;
  }
  return grp.models[loc.model].holds(var, loc.state);
}

Model Universe::model(std::size_t g, std::size_t m) const {
  const UniverseGroup& grp = groups_[g];
  if (!grp.expanded) return grp.models[m];
  Model out(grp.frame);
  const std::size_t n = grp.frame.size();
  for (int p = 1; p <= grp.var_bound; ++p) {
    Bits ext(n);
    for (State w = 0; w < n; ++w)
      if ((m >> ((p - 1) * n + w)) & 1) ext.set(w);
    out.set_extension(p, std::move(ext));
  }
  return out;
}

PointedModel Universe::pointed(std::size_t i) const {
  Location loc = locate(i);
  return {model(loc.group, loc.model), loc.state};
}

Bits Universe::literal(int var) const {
  Bits out(size_);
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    const UniverseGroup& grp = groups_[g];
    const std::size_t n = grp.frame.size(), G = grp.model_count;
    for (State w = 0; w < n; ++w)
      for (std::size_t m = 0; m < G; ++m) {
        bool v = grp.expanded ? (var >= 1 && var <= grp.var_bound &&
                                 ((m >> ((var - 1) * n + w)) & 1))
                              : grp.models[m].holds(var, w);
        if (v) out.set(index(g, m, w));
      }
  }
  return out;
}

Bits Universe::group_mask(std::size_t g) const {
  Bits out(size_);
  const std::size_t end = groups_[g].base + groups_[g].frame.size() * groups_[g].model_count;
  for (std::size_t i = groups_[g].base; i < end; ++i) out.set(i);
  return out;
}

Bits Universe::model_mask(std::size_t g, std::size_t m) const {
  Bits out(size_);
  for (State w = 0; w < groups_[g].frame.size(); ++w) out.set(index(g, m, w));
  return out;
}

// ---------------------------------------------------------------- builder

std::size_t UniverseBuilder::add_expansion(const Frame& frame, int var_bound, std::string label) {
  if (var_bound < 0) throw std::invalid_argument("negative variable bound");
  const std::size_t bits = frame.size() * static_cast<std::size_t>(var_bound);
  if (bits > static_cast<std::size_t>(bits_cap_))
    throw ResourceError("frame expansion needs " + std::to_string(bits) + " valuation bits, cap is " +
                        std::to_string(bits_cap_));
  UniverseGroup g;
  g.frame = frame;
  g.expanded = true;
  g.var_bound = var_bound;
  g.model_count = std::size_t{1} << bits;
  g.label = label.empty() ? frame.name() : std::move(label);
  groups_.push_back(std::move(g));
  return groups_.size() - 1;
}

std::size_t UniverseBuilder::add_models(const Frame& frame, std::vector<Model> models, std::string label) {
  if (models.empty()) throw std::invalid_argument("empty model list");
  for (const Model& m : models)
    if (!(m.frame() == frame)) throw std::invalid_argument("model is not over the group frame");
  UniverseGroup g;
  g.frame = frame;
  g.model_count = models.size();
  g.models = std::move(models);
  g.label = label.empty() ? frame.name() : std::move(label);
  groups_.push_back(std::move(g));
  return groups_.size() - 1;
}

static bool same_model(const Model& a, const Model& b) {
  if (!(a.frame() == b.frame())) return false;
  const int top = std::max(a.max_var(), b.max_var());
  for (int p = 0; p <= top; ++p)
    if (!(a.extension(p) == b.extension(p))) return false;
  return true;
}

void UniverseBuilder::add_pointed(const PointedModel& pm) {
  if (pm.point >= pm.model.size()) throw std::out_of_range("point out of range");
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    UniverseGroup& grp = groups_[g];
    if (grp.expanded || !(grp.frame == pm.model.frame())) continue;
    for (std::size_t m = 0; m < grp.models.size(); ++m)
      if (same_model(grp.models[m], pm.model)) {
        pending_designated_.push_back({g, {m, pm.point}});
        return;
      }
    grp.models.push_back(pm.model);
    grp.model_count = grp.models.size();
    pending_designated_.push_back({g, {grp.models.size() - 1, pm.point}});
    return;
  }
  std::size_t g = add_models(pm.model.frame(), {pm.model});
  pending_designated_.push_back({g, {0, pm.point}});
}

Universe UniverseBuilder::build() {
  Universe u;
  u.groups_ = groups_;
  std::vector<std::size_t> order(groups_.size());
  for (std::size_t g = 0; g < order.size(); ++g) order[g] = g;
  std::stable_partition(order.begin(), order.end(),
                        [&](std::size_t g) { return groups_[g].model_count % Bits::word_bits == 0; });
  std::size_t base = 0;
  for (std::size_t g : order) {
    u.groups_[g].base = base;
    const std::size_t span = groups_[g].frame.size() * groups_[g].model_count;
    if (span > size_cap_ || base + span > size_cap_)
      throw ResourceError("universe exceeds " + std::to_string(size_cap_) + " pointed models");
    base += span;
  }
  u.size_ = base;
  u.order_ = order;
  for (const auto& [g, mw] : pending_designated_) u.designated_.push_back(u.index(g, mw.first, mw.second));
  return u;
}

Universe build_universe(const std::vector<UniverseSeed>& seeds) {
  UniverseBuilder b;
  for (const UniverseSeed& s : seeds) {
    if (const auto* pm = std::get_if<PointedModel>(&s)) b.add_pointed(*pm);
    else {
      const auto& fe = std::get<FrameExpansion>(s);
      b.add_expansion(fe.frame, fe.var_bound);
    }
  }
  return b.build();
}

std::vector<std::uint32_t> bisimulation_classes(const Universe& u, Language lang, int var_bound) {
  const std::size_t n = u.size();
  std::vector<std::vector<std::uint32_t>> succ(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j : u.successor_lists()[i]) succ[i].push_back(static_cast<std::uint32_t>(j));
  std::vector<std::uint32_t> initial(n, 0);
  if (var_bound > 31) throw std::invalid_argument("variable bound too large for atom labels");
  for (int p = 1; p <= var_bound; ++p) {
    Bits lit = u.literal(p);
    lit.for_each([&](std::size_t i) { initial[i] |= std::uint32_t{1} << (p - 1); });
  }
  std::vector<std::uint32_t> block = coarsest_bisimulation(succ, initial);
  if (lang == Language::Basic) return block;

  // Global classes: local block plus the set of blocks realized in the model.
  std::map<std::pair<std::uint32_t, std::set<std::uint32_t>>, std::uint32_t> ids;
  std::vector<std::uint32_t> out(n);
  for (std::size_t g = 0; g < u.group_count(); ++g) {
    const UniverseGroup& grp = u.group(g);
    for (std::size_t m = 0; m < grp.model_count; ++m) {
      std::set<std::uint32_t> realized;
      for (State w = 0; w < grp.frame.size(); ++w) realized.insert(block[u.index(g, m, w)]);
      for (State w = 0; w < grp.frame.size(); ++w) {
        std::size_t i = u.index(g, m, w);
        out[i] = ids.try_emplace({block[i], realized}, static_cast<std::uint32_t>(ids.size())).first->second;
      }
    }
  }
  return out;
}

}  // namespace hydra
