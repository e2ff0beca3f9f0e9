#include "hydra/gallery.hpp"

#include <charconv>
#include <map>
#include <stdexcept>

#include "hydra/colouring.hpp"
#include "hydra/errors.hpp"
#include "hydra/text_io.hpp"

namespace hydra {

FrameProperty FrameProperty::transfer(int m, int n) {
  if (m < 0 || n < 0 || m == n) throw std::invalid_argument("transfer needs m, n >= 0 and m != n");
  return {Kind::Transfer, m, n};
}

std::string FrameProperty::name() const {
  switch (kind) {
    case Kind::Transfer: return "transfer(" + std::to_string(m) + "," + std::to_string(n) + ")";
    case Kind::Reflexive: return "reflexive";
    case Kind::Transitive: return "transitive";
    case Kind::Symmetric: return "symmetric";
    case Kind::ConverseWellFounded: return "converse-well-founded";
    case Kind::ReflexiveTransitive: return "reflexive-transitive";
    case Kind::TransitiveCWF: return "transitive-converse-well-founded";
  }
  return "?";
}

namespace {

using Relation = std::vector<Bits>;

Relation identity(std::size_t n) {
  Relation r(n, Bits(n));
  for (std::size_t i = 0; i < n; ++i) r[i].set(i);
  return r;
}

Relation relation_of(const Frame& f) {
  Relation r;
  for (State u = 0; u < f.size(); ++u) r.push_back(f.row(u));
  return r;
}

Relation compose(const Relation& a, const Relation& b) {
  Relation out(a.size(), Bits(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) a[i].for_each([&](std::size_t k) { out[i] |= b[k]; });
  return out;
}

Relation power(const Frame& f, int k) {
  Relation r = identity(f.size());
  const Relation base = relation_of(f);
  for (int i = 0; i < k; ++i) r = compose(r, base);
  return r;
}

bool contained(const Relation& a, const Relation& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].subset_of(b[i])) return false;
  return true;
}

bool acyclic(const Frame& f) {
  Relation plus = relation_of(f);
  for (bool changed = true; changed;) {
    changed = false;
    Relation next = compose(plus, relation_of(f));
    for (std::size_t i = 0; i < plus.size(); ++i) {
      Bits merged = plus[i] | next[i];
      if (!(merged == plus[i])) {
        plus[i] = std::move(merged);
        changed = true;
      }
    }
  }
  for (std::size_t i = 0; i < plus.size(); ++i)
    if (plus[i].test(i)) return false;
  return true;
}

}  // namespace

bool check_property(const Frame& f, const FrameProperty& p) {
  using K = FrameProperty::Kind;
  switch (p.kind) {
    case K::Transfer: return contained(power(f, p.m), power(f, p.n));
    case K::Reflexive: return contained(identity(f.size()), relation_of(f));
    case K::Transitive: return contained(power(f, 2), power(f, 1));
    case K::Symmetric:
      for (State u = 0; u < f.size(); ++u)
        for (State v : f.successors(u))
          if (!f.has_edge(v, u)) return false;
      return true;
    case K::ConverseWellFounded: return acyclic(f);
    case K::ReflexiveTransitive:
      return check_property(f, FrameProperty::of(K::Reflexive)) && check_property(f, FrameProperty::of(K::Transitive));
    case K::TransitiveCWF: return check_property(f, FrameProperty::of(K::Transitive)) && acyclic(f);
  }
  return false;
}

void assert_witnesses(const WitnessSet& w) {
  if (!w.property) return;
  for (const Frame& f : w.positives)
    if (!check_property(f, *w.property))
      throw std::logic_error(w.name + ": positive frame " + f.name() + " lacks " + w.property->name());
  for (const Frame& f : w.negatives)
    if (check_property(f, *w.property))
      throw std::logic_error(w.name + ": negative frame " + f.name() + " has " + w.property->name());
}

// ---------------------------------------------------------------- frames

namespace {

// Incremental frame construction.
class Sketch {
 public:
  State add(bool reflexive = false) {
    State s = static_cast<State>(count_++);
    if (reflexive) edges_.emplace_back(s, s);
    return s;
  }
  void edge(State u, State v) { edges_.emplace_back(u, v); }
  // Appends a path of the given number of steps from `from`; returns its end.
  State path(State from, int steps, bool reflexive = false) {
    for (int i = 0; i < steps; ++i) {
      State next = add(reflexive);
      edge(from, next);
      from = next;
    }
    return from;
  }
  Frame frame(const std::string& name) const {
    Frame f(count_, name);
    for (auto [u, v] : edges_) f.add_edge(u, v);
    return f;
  }

 private:
  std::size_t count_ = 0;
  std::vector<std::pair<State, State>> edges_;
};

Frame reflexive_point(const std::string& name) {
  Sketch s;
  s.add(true);
  return s.frame(name);
}

// Irreflexive root below a reflexive top.
Frame chain_to_loop(const std::string& name) {
  Sketch s;
  State r = s.add();
  State t = s.add(true);
  s.edge(r, t);
  return s.frame(name);
}

// m < n: vertical path of m steps from the root; a reflexive left point; a
// rightmost path of n steps through reflexive points rejoining the top of
// the vertical path; a reflexive point above that top.
void density_frames(int m, int n, WitnessSet& w) {
  {
    Sketch s;
    State r = s.add();
    s.edge(r, s.add(true));
    State top = s.path(r, m);
    State last = s.path(r, n - 1, true);
    s.edge(last, top);
    s.edge(top, s.add(true));
    w.positives.push_back(s.frame("A1"));
  }
  for (int i = 2; i <= m + 1; ++i) {
    Sketch s;
    State r = s.add();
    s.edge(r, s.add(true));
    s.path(r, i - 2);
    w.positives.push_back(s.frame("A" + std::to_string(i)));
  }
  Sketch s;
  State r = s.add();
  s.edge(r, s.add(true));
  State top = s.path(r, m);
  s.edge(top, s.add(true));
  w.negatives.push_back(s.frame("B"));
}

// n < m: a triangle whose legs (vertical m-1 steps, horizontal 1 step) and
// hypotenuse (n steps) meet at a corner; from the j-th hypotenuse point a
// further path leaves so that each such path has n steps from the root.
void transitivity_frames(int m, int n, WitnessSet& w) {
  {
    Sketch s;
    State r = s.add();
    State vtop = s.path(r, m - 1);
    State corner = s.add();
    s.edge(vtop, corner);
    State h = r;
    for (int j = 0; j < n; ++j) {
      s.path(h, n - j);
      if (j + 1 < n) {
        State next = s.add();
        s.edge(h, next);
        h = next;
      }
    }
    s.edge(h, corner);
    w.positives.push_back(s.frame("A1"));
  }
  for (int i = 2; i <= m + 1; ++i) {
    Sketch s;
    State r = s.add();
    s.path(r, i - 2);
    s.path(r, n);
    w.positives.push_back(s.frame("A" + std::to_string(i)));
  }
  Sketch s;
  State r = s.add();
  s.path(s.path(r, m - 1), 1);
  s.path(r, n);
  w.negatives.push_back(s.frame("B"));
}

// m = 0: a reflexive point; an n-cycle whose states all see a reflexive sink.
void reflexivity_frames(int n, WitnessSet& w) {
  w.positives.push_back(reflexive_point("A1"));
  Sketch s;
  std::vector<State> cycle;
  for (int i = 0; i < n; ++i) cycle.push_back(s.add());
  State sink = s.add(true);
  for (int i = 0; i < n; ++i) {
    s.edge(cycle[i], cycle[(i + 1) % n]);
    s.edge(cycle[i], sink);
  }
  w.positives.push_back(s.frame("A2"));
  w.negatives.push_back(chain_to_loop("B"));
}

// n = 0: a reflexive point and irreflexive paths of 0..m-1 steps.
void recurrence_frames(int m, WitnessSet& w) {
  w.positives.push_back(reflexive_point("A1"));
  for (int i = 2; i <= m + 1; ++i) {
    Sketch s;
    s.path(s.add(), i - 2);
    w.positives.push_back(s.frame("A" + std::to_string(i)));
  }
  w.negatives.push_back(chain_to_loop("B"));
}

}  // namespace

WitnessSet transfer_witnesses(int m, int n) {
  WitnessSet w;
  w.property = FrameProperty::transfer(m, n);
  w.name = "transfer-" + std::to_string(m) + "-" + std::to_string(n);
  if (m == 0) reflexivity_frames(n, w);
  else if (n == 0) recurrence_frames(m, w);
  else if (m < n) density_frames(m, n, w);
  else transitivity_frames(m, n, w);
  assert_witnesses(w);
  return w;
}

WitnessSet s4_witnesses() {
  WitnessSet w;
  w.name = "s4";
  w.property = FrameProperty::of(FrameProperty::Kind::ReflexiveTransitive);
  {
    Sketch s;
    State r = s.add(true), a = s.add(true), b = s.add(true), c = s.add(true);
    s.edge(r, a);
    s.edge(r, b);
    s.edge(r, c);
    s.edge(a, b);
    w.positives.push_back(s.frame("A1"));
  }
  {
    Sketch s;
    State r = s.add(true);
    s.edge(r, s.add(true));
    w.positives.push_back(s.frame("A2"));
  }
  {
    Sketch s;
    State r = s.add(true);
    s.edge(r, s.add(true));
    s.edge(r, s.add(true));
    w.positives.push_back(s.frame("A3"));
  }
  {
    Sketch s;
    State r = s.add(true), a = s.add(true), b = s.add(true), c = s.add(true);
    s.edge(r, a);
    s.edge(a, b);
    s.edge(r, c);
    w.negatives.push_back(s.frame("B1"));
  }
  {
    Sketch s;
    State r = s.add();
    s.edge(r, s.add(true));
    w.negatives.push_back(s.frame("B2"));
  }
  assert_witnesses(w);
  return w;
}

WitnessSet lob_witnesses(int truncation_depth) {
  if (truncation_depth < 2) throw std::invalid_argument("truncation depth must be at least 2");
  WitnessSet base = transfer_witnesses(2, 1);
  WitnessSet w;
  w.name = "lob-" + std::to_string(truncation_depth);
  w.property = FrameProperty::of(FrameProperty::Kind::TransitiveCWF);
  w.positives = base.positives;
  {
    // Transitively closed tree with one branch of each length 1..d.
    Sketch s;
    State r = s.add();
    for (int len = 1; len <= truncation_depth; ++len) {
      std::vector<State> branch;
      for (int k = 0; k < len; ++k) {
        State x = s.add();
        s.edge(r, x);
        for (State y : branch) s.edge(y, x);
        branch.push_back(x);
      }
    }
    w.positives.push_back(s.frame("A4"));
  }
  w.negatives = base.negatives;
  {
    Sketch s;
    State r = s.add(true);
    s.edge(r, s.add());
    w.negatives.push_back(s.frame("B1"));
  }
  assert_witnesses(w);
  return w;
}

WitnessSet symmetry_witnesses() {
  WitnessSet w;
  w.name = "symmetry";
  w.property = FrameProperty::of(FrameProperty::Kind::Symmetric);
  w.positives.push_back(reflexive_point("A1"));
  {
    Sketch s;
    s.add();
    w.positives.push_back(s.frame("A2"));
  }
  {
    Sketch s;
    State x = s.add(), y = s.add(true);
    s.edge(x, y);
    s.edge(y, x);
    w.positives.push_back(s.frame("A3"));
  }
  w.negatives.push_back(chain_to_loop("B"));
  assert_witnesses(w);
  return w;
}

Formula axiom(const FrameProperty& p) {
  using K = FrameProperty::Kind;
  const Formula pos = Formula::pos(1), neg = Formula::neg(1);
  switch (p.kind) {
    case K::Transfer: {
      Formula boxes = neg, dias = pos;
      for (int i = 0; i < p.m; ++i) boxes = Formula::box(boxes);
      for (int i = 0; i < p.n; ++i) dias = Formula::dia(dias);
      return Formula::disj(boxes, dias);
    }
    case K::Reflexive: return axiom(FrameProperty::transfer(0, 1));
    case K::Transitive: return axiom(FrameProperty::transfer(2, 1));
    case K::Symmetric: return Formula::disj(neg, Formula::box(Formula::dia(pos)));
    case K::ReflexiveTransitive:
      return Formula::disj(Formula::conj(neg, Formula::box(Formula::box(neg))), Formula::dia(pos));
    case K::TransitiveCWF:
      return Formula::disj(Formula::box(neg), Formula::dia(Formula::conj(pos, Formula::box(neg))));
    case K::ConverseWellFounded: break;
  }
  throw std::invalid_argument("no defining formula for " + p.name());
}

// ---------------------------------------------------------------- builtins

static std::optional<int> number_after(std::string_view s, std::string_view prefix) {
  if (s.substr(0, prefix.size()) != prefix) return std::nullopt;
  s.remove_prefix(prefix.size());
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::optional<WitnessSet> builtin_witnesses(std::string_view name) {
  if (name == "s4") return s4_witnesses();
  if (name == "symmetry") return symmetry_witnesses();
  if (auto d = number_after(name, "lob-"); d && *d >= 2 && *d <= 8) return lob_witnesses(*d);
  if (name.substr(0, 9) == "transfer-") {
    std::string_view rest = name.substr(9);
    std::size_t dash = rest.find('-');
    if (dash == std::string_view::npos) return std::nullopt;
    auto m = number_after(rest.substr(0, dash), "");
    auto n = number_after(rest.substr(dash + 1), "");
    if (!m || !n || *m == *n || *m < 0 || *n < 0 || *m > 16 || *n > 16) return std::nullopt;
    return transfer_witnesses(*m, *n);
  }
  return std::nullopt;
}

std::optional<Frame> builtin_frame(std::string_view name) {
  if (auto n = number_after(name, "khat"); n && *n >= 1 && *n <= 64) return khat(*n);
  if (auto n = number_after(name, "k"); n && *n >= 1 && *n <= 64) return k_complete(*n);
  std::size_t slash = name.find('/');
  if (slash != std::string_view::npos) {
    if (auto w = builtin_witnesses(name.substr(0, slash))) {
      std::string_view frame = name.substr(slash + 1);
      for (const auto* list : {&w->positives, &w->negatives})
        for (const Frame& f : *list)
          if (f.name() == frame) return f;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- files

WitnessSet parse_witness_file(std::string_view text) {
  WitnessSet w;
  w.name = "witnesses";
  std::map<std::string, Frame> defined;
  enum class Section { None, Positive, Negative } section = Section::None;
  std::vector<std::string> block;
  std::vector<std::pair<Section, std::string>> refs;
  std::vector<std::pair<Section, Frame>> inline_frames;

  auto flush = [&] {
    if (block.empty()) return;
    std::string joined;
    for (const auto& l : block) joined += l + "\n";
    Frame f = parse_frames(joined).front();
    if (section != Section::None) inline_frames.emplace_back(section, f);
    defined.emplace(f.name(), f);
    block.clear();
  };

  std::size_t line_no = 0;
  for (const std::string& line : split_lines(text)) {
    ++line_no;
    auto toks = tokenize_line(line);
    if (toks.empty()) continue;
    const std::string& kw = toks[0];
    if (kw == "frame") {
      flush();
      block.push_back(line);
    } else if (kw == "states" || kw == "edge") {
      if (block.empty()) throw InputError("line " + std::to_string(line_no) + ": '" + kw + "' outside a frame");
      block.push_back(line);
    } else if (kw == "positive:" || kw == "negative:") {
      flush();
      section = kw == "positive:" ? Section::Positive : Section::Negative;
      for (std::size_t k = 1; k < toks.size(); ++k) refs.emplace_back(section, toks[k]);
    } else if (kw == "name" && toks.size() == 2) {
      flush();
      w.name = toks[1];
    } else if (kw == "var_bound" && toks.size() == 2) {
      flush();
      w.recommended_var_bound = std::stoi(toks[1]);
    } else if (section != Section::None) {
      flush();
      for (const auto& t : toks) refs.emplace_back(section, t);
    } else {
      throw InputError("line " + std::to_string(line_no) + ": unknown keyword '" + kw + "'");
    }
  }
  flush();

  // Inline frames keep file order; references follow in listed order.
  for (auto& [sec, f] : inline_frames) (sec == Section::Positive ? w.positives : w.negatives).push_back(f);
  for (auto& [sec, name] : refs) {
    std::optional<Frame> f;
    if (auto it = defined.find(name); it != defined.end()) f = it->second;
    else if (name.rfind("builtin:", 0) == 0) f = builtin_frame(name.substr(8));
    if (!f) throw InputError("unknown frame '" + name + "'");
    (sec == Section::Positive ? w.positives : w.negatives).push_back(*f);
  }
  if (w.positives.empty() && w.negatives.empty()) throw InputError("witness file lists no frames");
  return w;
}

std::string format_witness_file(const WitnessSet& w) {
  std::string out = "name " + w.name + "\n";
  out += "var_bound " + std::to_string(w.recommended_var_bound) + "\n";
  out += "positive:\n";
  for (const Frame& f : w.positives) out += format_frame(f);
  out += "negative:\n";
  for (const Frame& f : w.negatives) out += format_frame(f);
  return out;
}

WitnessSet load_witnesses(const std::string& source) {
  if (source.rfind("builtin:", 0) == 0) {
    if (auto w = builtin_witnesses(source.substr(8))) return *w;
    throw InputError("unknown builtin witness set '" + source.substr(8) + "'");
  }
  return parse_witness_file(read_text_file(source));
}

Frame load_frame(const std::string& source) {
  if (source.rfind("builtin:", 0) == 0) {
    if (auto f = builtin_frame(source.substr(8))) return *f;
    throw InputError("unknown builtin frame '" + source.substr(8) + "'");
  }
  return parse_frames(read_text_file(source)).front();
}

}  // namespace hydra
