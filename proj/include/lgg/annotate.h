#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lgg/fstcore.h"
#include "lgg/grammar.h"
#include "lgg/lexicon.h"

namespace lgg {

struct Annotation {
  Span span;  // codepoint offsets in the source document
  Category category = Category::None;
  MweTag tag = MweTag::None;
  std::string surface;
  std::string canonical;
  std::string graph;
  friend auto operator<=>(const Annotation&, const Annotation&) = default;
};

// Leftmost start wins, then longest span, then priority descending, then
// graph name ascending. Deterministic for equal inputs.
struct MatchPolicy {
  enum class Strategy { LeftmostLongest };
  Strategy strategy = Strategy::LeftmostLongest;
};

// Sentence spans of a document, split on '.', '!', '?' and newline;
// terminators belong to no sentence.
std::vector<Span> split_sentences(std::string_view text);

// Runs the transducer over every sentence and selects non-overlapping
// matches under the policy. Pure: equal inputs give equal output.
std::vector<Annotation> annotate(std::string_view text, const Lexicon& lexicon,
                                 const CompiledTransducer& t,
                                 const MatchPolicy& policy = {});

// Canonical form: template with $0 = surface when present, else the
// concatenated arc outputs when non-empty, else the surface itself.
std::string normalize(std::string_view surface, std::string_view outputs,
                      const std::optional<std::string>& canon_template);

// Wraps each span in <CATEGORY_TAG>...</TAG>. Annotations must be sorted
// and pairwise disjoint; throws std::invalid_argument otherwise.
std::string render(std::string_view text,
                   const std::vector<Annotation>& annotations);

}  // namespace lgg
