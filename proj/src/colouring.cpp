#include "hydra/colouring.hpp"

#include <set>
#include <stdexcept>

namespace hydra {

int subset_bits(int n) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  int k = 0;
  while ((1 << k) < n) ++k;
  return k;
}

Formula elementary_conjunction(int i, int k) {
  std::vector<Formula> lits;
  for (int j = 0; j < k; ++j) lits.push_back(Formula::literal(j + 1, ((i - 1) >> j) & 1));
  return Formula::conj_all(lits);
}

Formula phi_n(int n) {
  const int k = subset_bits(n);
  if (n == 1) return Formula::exists(Formula::dia(Formula::top()));
  std::vector<Formula> parts;
  for (int i = 1; i <= n; ++i) {
    Formula e = elementary_conjunction(i, k);
    parts.push_back(Formula::conj(e, Formula::dia(e)));
  }
  for (int j = n + 1; j <= (1 << k); ++j) parts.push_back(elementary_conjunction(j, k));
  return Formula::exists(Formula::disj_all(parts));
}

Frame k_complete(int n) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  Frame f(n, "k" + std::to_string(n));
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v) f.add_edge(u, v);
  return f;
}

Frame khat(int n) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  Frame f(2 * n, "khat" + std::to_string(n));
  for (int copy = 0; copy < 2; ++copy)
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (u != v) f.add_edge(copy * n + u, copy * n + v);
  f.add_edge(n, n);
  return f;
}

bool is_proper(const Frame& f, const ColourAssignment& c, int n) {
  if (c.size() != f.size()) return false;
  for (State u = 0; u < f.size(); ++u) {
    if (c[u] < 0 || c[u] >= n) return false;
    for (State v : f.successors(u))
      if (c[u] == c[v]) return false;
  }
  return true;
}

namespace {

bool extend(const std::vector<std::vector<State>>& adj, int n, ColourAssignment& c, std::size_t u) {
  if (u == adj.size()) return true;
  // Only colours up to one past the largest used so far: colour classes are interchangeable.
  int limit = 0;
  for (std::size_t v = 0; v < u; ++v) limit = std::max(limit, c[v] + 1);
  limit = std::min(limit + 1, n);
  for (int col = 0; col < limit; ++col) {
    bool ok = true;
    for (State v : adj[u])
      if (v < u && c[v] == col) {
        ok = false;
        break;
      }
    if (!ok) continue;
    c[u] = col;
    if (extend(adj, n, c, u + 1)) return true;
  }
  c[u] = -1;
  return false;
}

}  // namespace

std::optional<ColourAssignment> colour(const Frame& f, int n) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  std::vector<std::vector<State>> adj(f.size());
  for (State u = 0; u < f.size(); ++u)
    for (State v : f.successors(u)) {
      if (u == v) return std::nullopt;
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
  ColourAssignment c(f.size(), -1);
  if (!extend(adj, n, c, 0)) return std::nullopt;
  return c;
}

bool is_n_colourable(const Frame& f, int n) { return colour(f, n).has_value(); }

bool noncol_equivalence(const Frame& f, int n, int cap_bits) {
  return frame_valid(f, phi_n(n), cap_bits) == !is_n_colourable(f, n);
}

Model distinct_valuation_model(int n) {
  const int k = subset_bits(n);
  Model m(k_complete(n));
  for (int w = 0; w < n; ++w)
    for (int j = 0; j < k; ++j)
      if ((w >> j) & 1) m.set_true(j + 1, w);
  return m;
}

NoncolSetup noncol_game_setup(int n, const Model& hercules_model, State hercules_point) {
  const int k = subset_bits(n);
  if (!(hercules_model.frame() == k_complete(n)))
    throw std::invalid_argument("Hercules' model must be over the complete graph");
  if (hercules_point >= static_cast<State>(n)) throw std::out_of_range("point out of range");
  auto signature = [&](State w) {
    std::uint32_t sig = 0;
    for (int j = 0; j < k; ++j)
      if (hercules_model.holds(j + 1, w)) sig |= 1u << j;
    return sig;
  };
  std::set<std::uint32_t> seen;
  for (int w = 0; w < n; ++w)
    if (!seen.insert(signature(w)).second)
      throw std::invalid_argument("Hercules' model repeats a point valuation");

  const Frame hat = khat(n);
  UniverseBuilder b;
  for (int w = 0; w < n; ++w) {
    // pi swaps vertex 0 (the loop's vertex) with w.
    auto pi = [&](int v) { return v == 0 ? w : v == w ? 0 : v; };
    Model a(hat);
    for (int v = 0; v < n; ++v)
      for (int j = 0; j < k; ++j)
        if (hercules_model.holds(j + 1, pi(v))) {
          a.set_true(j + 1, v);
          a.set_true(j + 1, n + v);
        }
    b.add_pointed({a, static_cast<State>(pi(static_cast<int>(hercules_point)))});
  }
  b.add_pointed({hercules_model, hercules_point});

  NoncolSetup s{b.build(), {}, {}, {}, {}, k};
  const auto& d = s.universe.designated();
  s.left.assign(d.begin(), d.begin() + n);
  s.right.assign(d.begin() + n, d.end());
  s.identity.assign(s.universe.size(), -1);
  s.valuation.assign(s.universe.size(), 0);
  for (std::size_t i = 0; i < s.universe.size(); ++i) {
    auto loc = s.universe.locate(i);
    if (s.universe.group(loc.group).frame == hat) s.identity[i] = static_cast<int>(loc.model);
    for (int j = 0; j < k; ++j)
      if (s.universe.holds(i, j + 1)) s.valuation[i] |= 1u << j;
  }
  return s;
}

}  // namespace hydra
