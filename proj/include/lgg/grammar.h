#pragma once

#include <compare>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lgg/lexicon.h"
#include "lgg/textio.h"

namespace lgg {

enum class Category : uint8_t { SMWE, DMWE, EMWE, FMWE, None };
enum class MweTag : uint8_t { QXPO, QXNG, XXPR, XQFT, None };
enum class Structure : uint8_t { NN, NPred, PredPred, Etc };

std::string_view to_string(Category c);
std::string_view to_string(MweTag t);
std::string_view to_string(Structure s);
std::optional<Category> parse_category(std::string_view s);
std::optional<MweTag> parse_mwe_tag(std::string_view s);
std::optional<Structure> parse_structure(std::string_view s);

// Codes allowed inside <...> besides lemmas. DS matches a bounded run of
// adverbs at match time; the remaining codes test one token.
enum class CatCode : uint8_t {
  N, V, A, D, JN, EV, DS, QXPO, QXNG, QXDE, XXPR, XQFT
};
std::string_view to_string(CatCode c);
std::optional<CatCode> parse_cat_code(std::string_view s);

struct Mask {
  enum class Kind : uint8_t { Literal, Lemma, Category, Epsilon, Call };

  Kind kind = Kind::Epsilon;
  std::string text;           // literal surface / lemma / call target
  std::optional<PosTag> pos;  // lemma POS constraint
  CatCode code = CatCode::N;  // meaningful for Kind::Category only

  static Mask literal(std::string s);
  static Mask lemma(std::string l, std::optional<PosTag> p = std::nullopt);
  static Mask category(CatCode c);
  static Mask epsilon();
  static Mask call(std::string target);

  std::string to_string() const;  // DSL syntax
  friend auto operator<=>(const Mask&, const Mask&) = default;
};

using MaskSeq = std::vector<Mask>;
std::string to_string(const MaskSeq& seq);

struct GrammarArc {
  std::string from;
  std::string to;
  Mask mask;
  std::string output;  // empty = none
};

struct Graph {
  std::string name;
  std::vector<std::string> nodes;  // order of first mention
  std::vector<GrammarArc> arcs;
  std::string start;
  std::vector<std::string> finals;
  Category category = Category::None;
  MweTag tag = MweTag::None;
  std::optional<std::string> canonical;
  int priority = 0;
  std::optional<Structure> structure;
};

struct GrammarSet {
  std::map<std::string, Graph> graphs;
  std::vector<std::string> mains;
  const Graph* find(std::string_view name) const;
};

struct GrammarError : std::runtime_error {
  size_t line;  // 0 when not tied to a source line
  GrammarError(size_t line_no, const std::string& msg)
      : std::runtime_error(line_no ? "line " + std::to_string(line_no) + ": " +
                                         msg
                                   : msg),
        line(line_no) {}
};

// Line-based DSL:
//   GRAPH <name> [CATEGORY c] [TAG t] [CANON "tpl"] [PRIORITY n] [STRUCT s]
//   START <node>
//   FINAL <node> [<node> ...]
//   ARC <from> <to> <mask> [OUTPUT "text"]
//   END
//   MAIN <name> [<name> ...]
// Masks: "literal" | <lemma> | <lemma.POS> | <code> | @Subgraph, where
// <E> is epsilon. '#' starts a comment.
GrammarSet parse_grammar(std::istream& in);
GrammarSet parse_grammar(std::string_view source);
GrammarSet parse_grammar_files(const std::vector<std::filesystem::path>& paths);

Mask parse_mask(const textio::Tok& tok);

// Violated invariants, empty when valid. parse_grammar refuses sets for
// which this is non-empty.
std::vector<std::string> validate(const GrammarSet& gs);

// Canonical text form; parse_grammar(render_grammar(gs)) is structurally
// identical to gs up to node renaming.
std::string render_grammar(const GrammarSet& gs);

// All mask sequences of length <= max_len labelling a start-to-final path
// of the named graph, subgraph calls inlined and epsilons elided.
std::set<MaskSeq> graph_language(const GrammarSet& gs, std::string_view name,
                                 size_t max_len);

}  // namespace lgg
