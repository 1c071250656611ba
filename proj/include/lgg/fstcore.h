#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lgg/grammar.h"
#include "lgg/lexicon.h"

namespace lgg {

inline constexpr size_t kMaxCompiledStates = 10000;
inline constexpr size_t kMaxAdverbRun = 3;  // token cap per <DS> arc

struct CompileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AcceptRecord {
  std::string graph;
  Category category = Category::None;
  MweTag tag = MweTag::None;
  std::optional<std::string> canonical;
  int priority = 0;
  std::string final_output;  // outputs pending on elided epsilon paths
  friend auto operator<=>(const AcceptRecord&, const AcceptRecord&) = default;
};

struct TransducerArc {
  uint32_t from = 0;
  uint32_t to = 0;
  Mask mask;  // never Epsilon or Call
  std::string output;
  std::string origin;  // graph the arc was written in
};

// Flattened grammar set: calls inlined, epsilons eliminated. Immutable
// and freely shareable once built.
struct CompiledTransducer {
  uint32_t start = 0;
  std::vector<std::vector<TransducerArc>> arcs;  // indexed by state
  std::map<uint32_t, std::vector<AcceptRecord>> finals;

  size_t state_count() const { return arcs.size(); }
  std::span<const TransducerArc> arcs_from(uint32_t s) const {
    return arcs.at(s);
  }
  const std::vector<AcceptRecord>* accepts(uint32_t s) const {
    auto it = finals.find(s);
    return it == finals.end() ? nullptr : &it->second;
  }
  std::string dump() const;
};

// gs must be valid (validate(gs) empty). Throws CompileError past the
// state cap.
CompiledTransducer compile(const GrammarSet& gs);

// Single-token test. For CatCode::DS this is the per-token predicate
// (token is an adverb); the zero-to-kMaxAdverbRun loop lives in
// match_from. Epsilon and Call never match.
bool mask_matches(const Mask& mask, const MorphToken& token);

struct Match {
  const AcceptRecord* accept = nullptr;  // owned by the transducer
  size_t start_node = 0;
  size_t end_node = 0;
  std::vector<MorphToken> tokens;
  std::string outputs;
};

// All non-empty matches whose token path starts exactly at `node`.
// Adjacent tokens may be separated by whitespace; matches never skip
// non-whitespace text.
std::vector<Match> match_from(const CompiledTransducer& t,
                              const SentenceLattice& lattice, size_t node);

// Accepted mask sequences of length <= max_len (enumeration oracle
// counterpart of graph_language).
std::set<MaskSeq> enumerate_accepted(const CompiledTransducer& t,
                                     size_t max_len);

}  // namespace lgg
