#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace hydra {

enum class Language { Basic, Universal };

enum class NodeKind : std::uint8_t { True, False, PosLit, NegLit, Or, And, Dia, Box, Exists, Forall };

// Symbols with their own occurrence count. Literals are not among them.
enum class Symbol : std::uint8_t { Bottom, Top, Or, And, Dia, Box, Exists, Forall };
inline constexpr int symbol_count = 8;

std::optional<Symbol> symbol_of(NodeKind k);
bool is_modal(NodeKind k);
bool is_binary(NodeKind k);
bool is_leaf(NodeKind k);

struct FormulaNode;

// Immutable, structurally shared NNF formula.
class Formula {
 public:
  Formula() = default;

  static Formula top();
  static Formula bottom();
  static Formula literal(int var, bool positive);
  static Formula pos(int var) { return literal(var, true); }
  static Formula neg(int var) { return literal(var, false); }
  static Formula disj(Formula a, Formula b);
  static Formula conj(Formula a, Formula b);
  static Formula dia(Formula a);
  static Formula box(Formula a);
  static Formula exists(Formula a);
  static Formula forall(Formula a);
  static Formula unary(NodeKind k, Formula a);
  static Formula binary(NodeKind k, Formula a, Formula b);

  // Right-associated fold; the list must be nonempty.
  static Formula disj_all(const std::vector<Formula>& parts);
  static Formula conj_all(const std::vector<Formula>& parts);

  bool empty() const { return !node_; }
  NodeKind kind() const;
  int var() const;
  const Formula& left() const;
  const Formula& right() const;
  const Formula& child() const { return left(); }

  bool operator==(const Formula& o) const;
  bool operator!=(const Formula& o) const { return !(*this == o); }

 private:
  explicit Formula(std::shared_ptr<const FormulaNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const FormulaNode> node_;
};

struct FormulaNode {
  NodeKind kind;
  int var = 0;
  Formula kids[2];
};

inline NodeKind Formula::kind() const { return node_->kind; }
inline int Formula::var() const { return node_->var; }
inline const Formula& Formula::left() const { return node_->kids[0]; }
inline const Formula& Formula::right() const { return node_->kids[1]; }

// Measures. Length counts all nodes; depth nests {dia, box, exists, forall}.
struct MeasureKind {
  enum class Tag : std::uint8_t { Length, ModalDepth, VarCount, Count };
  Tag tag = Tag::Length;
  Symbol symbol = Symbol::Bottom;

  static MeasureKind length() { return {Tag::Length, Symbol::Bottom}; }
  static MeasureKind depth() { return {Tag::ModalDepth, Symbol::Bottom}; }
  static MeasureKind vars() { return {Tag::VarCount, Symbol::Bottom}; }
  static MeasureKind count(Symbol s) { return {Tag::Count, s}; }

  bool operator==(const MeasureKind& o) const {
    return tag == o.tag && (tag != Tag::Count || symbol == o.symbol);
  }
};

std::string measure_name(MeasureKind k);
std::optional<MeasureKind> parse_measure(std::string_view name);
// 9 kinds for Basic, 11 for Universal.
std::vector<MeasureKind> applicable_measures(Language lang);
bool applicable(MeasureKind k, Language lang);

struct MeasureVector {
  int length = 0;
  int depth = 0;
  int var_count = 0;
  std::array<int, symbol_count> counts{};
  std::uint64_t var_mask = 0;  // vars 1..64 occurring; var_count counts all vars

  int get(MeasureKind k) const;
  bool operator==(const MeasureVector& o) const = default;
};

int measure(const Formula& f, MeasureKind k);
MeasureVector measure_all(const Formula& f);

std::set<int> vars(const Formula& f);
bool in_language(const Formula& f, Language lang);
Formula nnf_negate(const Formula& f);
// Renames variables to p1, p2, ... in order of first occurrence.
Formula canonical_rename(const Formula& f);

std::string print(const Formula& f);
Formula parse(std::string_view text, Language lang = Language::Universal);

std::string_view language_name(Language lang);
std::optional<Language> parse_language(std::string_view name);

}  // namespace hydra
