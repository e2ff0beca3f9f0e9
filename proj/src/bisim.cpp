#include <algorithm>
#include <map>
#include <set>

#include "hydra/kripke.hpp"

namespace hydra {

std::vector<std::uint32_t> coarsest_bisimulation(const std::vector<std::vector<std::uint32_t>>& succ,
                                                 const std::vector<std::uint32_t>& initial) {
  const std::size_t n = succ.size();
  std::vector<std::uint32_t> block(n);
  {
    std::map<std::uint32_t, std::uint32_t> ids;
    for (std::size_t s = 0; s < n; ++s)
      block[s] = ids.try_emplace(initial[s], static_cast<std::uint32_t>(ids.size())).first->second;
  }
  std::size_t blocks = 0;
  for (std::uint32_t b : block) blocks = std::max<std::size_t>(blocks, b + 1);

  // Signature refinement: a block splits by the set of blocks its members reach.
  std::vector<std::uint32_t> sig;
  while (true) {
    std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
    std::vector<std::uint32_t> next(n);
    for (std::size_t s = 0; s < n; ++s) {
      sig.assign(1, block[s]);
      for (std::uint32_t t : succ[s]) sig.push_back(block[t]);
      std::sort(sig.begin() + 1, sig.end());
      sig.erase(std::unique(sig.begin() + 1, sig.end()), sig.end());
      next[s] = ids.try_emplace(sig, static_cast<std::uint32_t>(ids.size())).first->second;
    }
    block.swap(next);
    if (ids.size() == blocks) return block;
    blocks = ids.size();
  }
}

bool bisimilar(const PointedModel& a, const PointedModel& b, Language lang) {
  const std::size_t na = a.model.size(), nb = b.model.size();
  const int max_var = std::max(a.model.max_var(), b.model.max_var());
  std::vector<std::vector<std::uint32_t>> succ(na + nb);
  std::vector<std::vector<bool>> atoms(na + nb);
  auto add = [&](const Model& m, std::size_t offset) {
    for (State w = 0; w < m.size(); ++w) {
      for (State v : m.frame().successors(w)) succ[offset + w].push_back(static_cast<std::uint32_t>(offset + v));
      for (int p = 0; p <= max_var; ++p) atoms[offset + w].push_back(m.holds(p, w));
    }
  };
  add(a.model, 0);
  add(b.model, na);

  std::map<std::vector<bool>, std::uint32_t> atom_ids;
  std::vector<std::uint32_t> initial(na + nb);
  for (std::size_t s = 0; s < na + nb; ++s)
    initial[s] = atom_ids.try_emplace(atoms[s], static_cast<std::uint32_t>(atom_ids.size())).first->second;

  std::vector<std::uint32_t> block = coarsest_bisimulation(succ, initial);
  if (block[a.point] != block[na + b.point]) return false;
  if (lang == Language::Basic) return true;
  std::set<std::uint32_t> in_a(block.begin(), block.begin() + na), in_b(block.begin() + na, block.end());
  return in_a == in_b;
}

}  // namespace hydra
