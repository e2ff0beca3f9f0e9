#include "hydra/kripke.hpp"

#include <algorithm>
#include <stdexcept>

#include "hydra/errors.hpp"

namespace hydra {

Frame::Frame(std::size_t states, std::string name)
    : name_(std::move(name)), succ_(states), rows_(states, Bits(states)) {
  if (states == 0) throw std::invalid_argument("a frame needs at least one state");
}

void Frame::add_edge(State u, State v) {
  if (u >= size() || v >= size()) throw std::out_of_range("edge endpoint out of range");
  if (rows_[u].test(v)) return;
  rows_[u].set(v);
  auto& s = succ_[u];
  s.insert(std::upper_bound(s.begin(), s.end(), v), v);
}

std::size_t Frame::edge_count() const {
  std::size_t c = 0;
  for (const auto& s : succ_) c += s.size();
  return c;
}

void Model::set_true(int var, State w) {
  if (var < 0) throw std::invalid_argument("negative variable index");
  if (w >= size()) throw std::out_of_range("state out of range");
  if (static_cast<std::size_t>(var) >= val_.size()) val_.resize(var + 1, Bits(size()));
  val_[var].set(w);
}

void Model::set_extension(int var, Bits ext) {
  if (var < 0) throw std::invalid_argument("negative variable index");
  if (ext.size() != size()) throw std::invalid_argument("extension size mismatch");
  if (static_cast<std::size_t>(var) >= val_.size()) val_.resize(var + 1, Bits(size()));
  val_[var] = std::move(ext);
}

bool Model::holds(int var, State w) const {
  return var >= 0 && static_cast<std::size_t>(var) < val_.size() && val_[var].test(w);
}

Bits Model::extension(int var) const {
  if (var >= 0 && static_cast<std::size_t>(var) < val_.size()) return val_[var];
  return Bits(size());
}

Bits extension(const Model& m, const Formula& f) {
  const std::size_t n = m.size();
  switch (f.kind()) {
    case NodeKind::True: return Bits(n, true);
    case NodeKind::False: return Bits(n);
    case NodeKind::PosLit: return m.extension(f.var());
    case NodeKind::NegLit: return ~m.extension(f.var());
    case NodeKind::Or: return extension(m, f.left()) | extension(m, f.right());
    case NodeKind::And: return extension(m, f.left()) & extension(m, f.right());
    case NodeKind::Dia:
    case NodeKind::Box: {
      Bits sub = extension(m, f.child());
      Bits out(n);
      for (State w = 0; w < n; ++w) {
        const Bits& r = m.frame().row(w);
        out.assign(w, f.kind() == NodeKind::Dia ? r.intersects(sub) : r.subset_of(sub));
      }
      return out;
    }
    case NodeKind::Exists: return Bits(n, extension(m, f.child()).any());
    case NodeKind::Forall: return Bits(n, extension(m, f.child()).all());
  }
  return Bits(n);
}

bool eval(const Model& m, State w, const Formula& f) {
  if (w >= m.size()) throw std::out_of_range("state out of range");
  return extension(m, f).test(w);
}

bool frame_valid_over(const Frame& frame, const Formula& f, const std::vector<int>& var_set,
                      int cap_bits) {
  const std::size_t n = frame.size();
  const std::size_t bits = n * var_set.size();
  if (bits > static_cast<std::size_t>(cap_bits))
    throw ResourceError("frame validity needs " + std::to_string(bits) +
                        " valuation bits, cap is " + std::to_string(cap_bits));
  const std::uint64_t total = std::uint64_t{1} << bits;
  Model m(frame);
  for (std::uint64_t code = 0; code < total; ++code) {
    for (std::size_t k = 0; k < var_set.size(); ++k) {
      Bits ext(n);
      for (std::size_t w = 0; w < n; ++w)
        if ((code >> (k * n + w)) & 1) ext.set(w);
      m.set_extension(var_set[k], std::move(ext));
    }
    if (!extension(m, f).all()) return false;
  }
  return true;
}

bool frame_valid(const Frame& frame, const Formula& f, int cap_bits) {
  std::set<int> vs = vars(f);
  return frame_valid_over(frame, f, std::vector<int>(vs.begin(), vs.end()), cap_bits);
}

}  // namespace hydra
