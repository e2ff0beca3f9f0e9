#include "hydra/formula.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>

#include "hydra/errors.hpp"

namespace hydra {

std::optional<Symbol> symbol_of(NodeKind k) {
  switch (k) {
    case NodeKind::True: return Symbol::Top;
    case NodeKind::False: return Symbol::Bottom;
    case NodeKind::Or: return Symbol::Or;
    case NodeKind::And: return Symbol::And;
    case NodeKind::Dia: return Symbol::Dia;
    case NodeKind::Box: return Symbol::Box;
    case NodeKind::Exists: return Symbol::Exists;
    case NodeKind::Forall: return Symbol::Forall;
    case NodeKind::PosLit:
    case NodeKind::NegLit: return std::nullopt;
  }
  return std::nullopt;
}

bool is_modal(NodeKind k) {
  return k == NodeKind::Dia || k == NodeKind::Box || k == NodeKind::Exists || k == NodeKind::Forall;
}
bool is_binary(NodeKind k) { return k == NodeKind::Or || k == NodeKind::And; }
bool is_leaf(NodeKind k) { return !is_modal(k) && !is_binary(k); }

Formula Formula::top() {
  static const Formula t(std::make_shared<const FormulaNode>(FormulaNode{NodeKind::True, 0, {}}));
  return t;
}
Formula Formula::bottom() {
  static const Formula f(std::make_shared<const FormulaNode>(FormulaNode{NodeKind::False, 0, {}}));
  return f;
}
Formula Formula::literal(int var, bool positive) {
  if (var < 0) throw std::invalid_argument("negative variable index");
  return Formula(std::make_shared<const FormulaNode>(
      FormulaNode{positive ? NodeKind::PosLit : NodeKind::NegLit, var, {}}));
}
Formula Formula::binary(NodeKind k, Formula a, Formula b) {
  if (!is_binary(k)) throw std::invalid_argument("not a binary connective");
  return Formula(std::make_shared<const FormulaNode>(FormulaNode{k, 0, {std::move(a), std::move(b)}}));
}
Formula Formula::unary(NodeKind k, Formula a) {
  if (!is_modal(k)) throw std::invalid_argument("not a modal operator");
  return Formula(std::make_shared<const FormulaNode>(FormulaNode{k, 0, {std::move(a), Formula()}}));
}
Formula Formula::disj(Formula a, Formula b) { return binary(NodeKind::Or, std::move(a), std::move(b)); }
Formula Formula::conj(Formula a, Formula b) { return binary(NodeKind::And, std::move(a), std::move(b)); }
Formula Formula::dia(Formula a) { return unary(NodeKind::Dia, std::move(a)); }
Formula Formula::box(Formula a) { return unary(NodeKind::Box, std::move(a)); }
Formula Formula::exists(Formula a) { return unary(NodeKind::Exists, std::move(a)); }
Formula Formula::forall(Formula a) { return unary(NodeKind::Forall, std::move(a)); }

static Formula fold_right(NodeKind k, const std::vector<Formula>& parts) {
  if (parts.empty()) throw std::invalid_argument("empty connective list");
  Formula acc = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) acc = Formula::binary(k, parts[i], acc);
  return acc;
}
Formula Formula::disj_all(const std::vector<Formula>& parts) { return fold_right(NodeKind::Or, parts); }
Formula Formula::conj_all(const std::vector<Formula>& parts) { return fold_right(NodeKind::And, parts); }

bool Formula::operator==(const Formula& o) const {
  if (node_ == o.node_) return true;
  if (!node_ || !o.node_) return false;
  if (kind() != o.kind() || var() != o.var()) return false;
  if (is_leaf(kind())) return true;
  if (!(left() == o.left())) return false;
  return !is_binary(kind()) || right() == o.right();
}

// ---------------------------------------------------------------- measures

std::string measure_name(MeasureKind k) {
  switch (k.tag) {
    case MeasureKind::Tag::Length: return "length";
    case MeasureKind::Tag::ModalDepth: return "depth";
    case MeasureKind::Tag::VarCount: return "vars";
    case MeasureKind::Tag::Count: break;
  }
  switch (k.symbol) {
    case Symbol::Bottom: return "bot";
    case Symbol::Top: return "top";
    case Symbol::Or: return "or";
    case Symbol::And: return "and";
    case Symbol::Dia: return "dia";
    case Symbol::Box: return "box";
    case Symbol::Exists: return "exists";
    case Symbol::Forall: return "forall";
  }
  return "?";
}

std::optional<MeasureKind> parse_measure(std::string_view name) {
  static const std::map<std::string, MeasureKind, std::less<>> names = {
      {"length", MeasureKind::length()},        {"depth", MeasureKind::depth()},
      {"modal-depth", MeasureKind::depth()},    {"vars", MeasureKind::vars()},
      {"var-count", MeasureKind::vars()},       {"bot", MeasureKind::count(Symbol::Bottom)},
      {"top", MeasureKind::count(Symbol::Top)}, {"or", MeasureKind::count(Symbol::Or)},
      {"and", MeasureKind::count(Symbol::And)}, {"dia", MeasureKind::count(Symbol::Dia)},
      {"box", MeasureKind::count(Symbol::Box)}, {"exists", MeasureKind::count(Symbol::Exists)},
      {"forall", MeasureKind::count(Symbol::Forall)},
  };
  auto it = names.find(name);
  if (it == names.end()) return std::nullopt;
  return it->second;
}

bool applicable(MeasureKind k, Language lang) {
  if (k.tag != MeasureKind::Tag::Count) return true;
  return lang == Language::Universal || (k.symbol != Symbol::Exists && k.symbol != Symbol::Forall);
}

std::vector<MeasureKind> applicable_measures(Language lang) {
  std::vector<MeasureKind> out = {MeasureKind::length(), MeasureKind::depth(), MeasureKind::vars()};
  for (int s = 0; s < symbol_count; ++s) {
    MeasureKind k = MeasureKind::count(static_cast<Symbol>(s));
    if (applicable(k, lang)) out.push_back(k);
  }
  return out;
}

int MeasureVector::get(MeasureKind k) const {
  switch (k.tag) {
    case MeasureKind::Tag::Length: return length;
    case MeasureKind::Tag::ModalDepth: return depth;
    case MeasureKind::Tag::VarCount: return var_count;
    case MeasureKind::Tag::Count: return counts[static_cast<int>(k.symbol)];
  }
  return 0;
}

static void collect_vars(const Formula& f, std::set<int>& out) {
  if (f.kind() == NodeKind::PosLit || f.kind() == NodeKind::NegLit) {
    out.insert(f.var());
  } else if (!is_leaf(f.kind())) {
    collect_vars(f.left(), out);
    if (is_binary(f.kind())) collect_vars(f.right(), out);
  }
}

std::set<int> vars(const Formula& f) {
  std::set<int> out;
  collect_vars(f, out);
  return out;
}

static void accumulate(const Formula& f, MeasureVector& m, int depth) {
  ++m.length;
  NodeKind k = f.kind();
  if (auto s = symbol_of(k)) ++m.counts[static_cast<int>(*s)];
  if (is_modal(k)) ++depth;
  m.depth = std::max(m.depth, depth);
  if (is_leaf(k)) return;
  accumulate(f.left(), m, depth);
  if (is_binary(k)) accumulate(f.right(), m, depth);
}

MeasureVector measure_all(const Formula& f) {
  MeasureVector m;
  accumulate(f, m, 0);
  std::set<int> vs = vars(f);
  m.var_count = static_cast<int>(vs.size());
  for (int v : vs)
    if (v >= 1 && v <= 64) m.var_mask |= std::uint64_t{1} << (v - 1);
  return m;
}

int measure(const Formula& f, MeasureKind k) { return measure_all(f).get(k); }

bool in_language(const Formula& f, Language lang) {
  if (lang == Language::Universal) return true;
  NodeKind k = f.kind();
  if (k == NodeKind::Exists || k == NodeKind::Forall) return false;
  if (is_leaf(k)) return true;
  return in_language(f.left(), lang) && (!is_binary(k) || in_language(f.right(), lang));
}

static NodeKind dual(NodeKind k) {
  switch (k) {
    case NodeKind::True: return NodeKind::False;
    case NodeKind::False: return NodeKind::True;
    case NodeKind::PosLit: return NodeKind::NegLit;
    case NodeKind::NegLit: return NodeKind::PosLit;
    case NodeKind::Or: return NodeKind::And;
    case NodeKind::And: return NodeKind::Or;
    case NodeKind::Dia: return NodeKind::Box;
    case NodeKind::Box: return NodeKind::Dia;
    case NodeKind::Exists: return NodeKind::Forall;
    case NodeKind::Forall: return NodeKind::Exists;
  }
  return k;
}

Formula nnf_negate(const Formula& f) {
  NodeKind k = f.kind();
  switch (k) {
    case NodeKind::True: return Formula::bottom();
    case NodeKind::False: return Formula::top();
    case NodeKind::PosLit: return Formula::neg(f.var());
    case NodeKind::NegLit: return Formula::pos(f.var());
    default: break;
  }
  if (is_binary(k)) return Formula::binary(dual(k), nnf_negate(f.left()), nnf_negate(f.right()));
  return Formula::unary(dual(k), nnf_negate(f.child()));
}

static Formula rename(const Formula& f, std::map<int, int>& names) {
  NodeKind k = f.kind();
  if (k == NodeKind::PosLit || k == NodeKind::NegLit) {
    auto [it, fresh] = names.try_emplace(f.var(), static_cast<int>(names.size()) + 1);
    return Formula::literal(it->second, k == NodeKind::PosLit);
  }
  if (is_leaf(k)) return f;
  if (is_binary(k)) {
    Formula a = rename(f.left(), names);
    return Formula::binary(k, a, rename(f.right(), names));
  }
  return Formula::unary(k, rename(f.child(), names));
}

Formula canonical_rename(const Formula& f) {
  std::map<int, int> names;
  return rename(f, names);
}

// ---------------------------------------------------------------- text

static void print_to(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case NodeKind::True: out += 'T'; return;
    case NodeKind::False: out += 'F'; return;
    case NodeKind::PosLit: out += 'p' + std::to_string(f.var()); return;
    case NodeKind::NegLit: out += "~p" + std::to_string(f.var()); return;
    case NodeKind::Or:
    case NodeKind::And:
      out += '(';
      print_to(f.left(), out);
      out += f.kind() == NodeKind::Or ? " | " : " & ";
      print_to(f.right(), out);
      out += ')';
      return;
    case NodeKind::Dia: out += "<> "; break;
    case NodeKind::Box: out += "[] "; break;
    case NodeKind::Exists: out += "E "; break;
    case NodeKind::Forall: out += "A "; break;
  }
  print_to(f.child(), out);
}

std::string print(const Formula& f) {
  std::string out;
  print_to(f, out);
  return out;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, Language lang) : s_(text), lang_(lang) {}

  Formula run() {
    Formula f = formula();
    skip();
    if (i_ != s_.size()) throw ParseError("unexpected trailing input", i_);
    return f;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(std::string_view tok) {
    skip();
    if (s_.substr(i_, tok.size()) != tok) return false;
    i_ += tok.size();
    return true;
  }

  int variable() {
    std::size_t start = i_;
    if (i_ >= s_.size() || s_[i_] != 'p') throw ParseError("expected variable", start);
    ++i_;
    if (i_ >= s_.size() || s_[i_] < '1' || s_[i_] > '9') throw ParseError("malformed variable", start);
    long v = 0;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      v = v * 10 + (s_[i_++] - '0');
      if (v > 1'000'000) throw ParseError("variable index too large", start);
    }
    return static_cast<int>(v);
  }

  Formula formula() {
    skip();
    if (i_ >= s_.size()) throw ParseError("unexpected end of input", i_);
    std::size_t start = i_;
    char c = s_[i_];
    if (c == 'T') return ++i_, Formula::top();
    if (c == 'F') return ++i_, Formula::bottom();
    if (c == 'p') return Formula::pos(variable());
    if (c == '~') {
      ++i_;
      skip();
      return Formula::neg(variable());
    }
    if (eat("<>")) return Formula::dia(formula());
    if (eat("[]")) return Formula::box(formula());
    if (c == 'E' || c == 'A') {
      if (lang_ == Language::Basic) throw ParseError("universal modality in L<> context", start);
      ++i_;
      Formula a = formula();
      return c == 'E' ? Formula::exists(a) : Formula::forall(a);
    }
    if (c == '(') {
      ++i_;
      Formula a = formula();
      skip();
      std::size_t op_pos = i_;
      NodeKind k;
      if (eat("|")) k = NodeKind::Or;
      else if (eat("&")) k = NodeKind::And;
      else throw ParseError("expected '|' or '&'", op_pos);
      Formula b = formula();
      if (!eat(")")) throw ParseError("expected ')'", i_);
      return Formula::binary(k, a, b);
    }
    throw ParseError(std::string("unexpected character '") + c + "'", start);
  }

  std::string_view s_;
  Language lang_;
  std::size_t i_ = 0;
};

}  // namespace

Formula parse(std::string_view text, Language lang) { return Parser(text, lang).run(); }

std::string_view language_name(Language lang) {
  return lang == Language::Basic ? "basic" : "universal";
}

std::optional<Language> parse_language(std::string_view name) {
  if (name == "basic" || name == "L<>") return Language::Basic;
  if (name == "universal" || name == "L<>A") return Language::Universal;
  return std::nullopt;
}

}  // namespace hydra
