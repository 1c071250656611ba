#include "lgg/annotate.h"

#include <algorithm>

#include "lgg/utf8.h"

namespace lgg {

std::vector<Span> split_sentences(std::string_view text) {
  auto cps = utf8::decode(text);
  std::vector<Span> out;
  size_t start = 0;
  for (size_t i = 0; i <= cps.size(); ++i) {
    bool terminator = i < cps.size() && (cps[i] == U'.' || cps[i] == U'!' ||
                                         cps[i] == U'?' || cps[i] == U'\n');
    if (i == cps.size() || terminator) {
      if (i > start) out.push_back({start, i});
      start = i + 1;
    }
  }
  return out;
}

namespace {

struct Candidate {
  size_t start;
  size_t end;
  int priority;
  std::string graph;
  std::string outputs;
  std::vector<size_t> boundaries;  // token end positions
  const AcceptRecord* accept;

  // Selection preference (leftmost, longest, priority, name) extended to
  // a total order so the choice never depends on enumeration order.
  bool operator<(const Candidate& o) const {
    if (start != o.start) return start < o.start;
    if (end != o.end) return end > o.end;
    if (priority != o.priority) return priority > o.priority;
    return std::tie(graph, outputs, boundaries) <
           std::tie(o.graph, o.outputs, o.boundaries);
  }
  bool operator==(const Candidate& o) const {
    return start == o.start && end == o.end && priority == o.priority &&
           graph == o.graph && outputs == o.outputs &&
           boundaries == o.boundaries;
  }
};

}  // namespace

std::vector<Annotation> annotate(std::string_view text, const Lexicon& lexicon,
                                 const CompiledTransducer& t,
                                 const MatchPolicy& policy) {
  (void)policy;  // single strategy today
  utf8::Index doc(text);
  std::vector<Annotation> out;

  for (const Span& sentence : split_sentences(text)) {
    SentenceLattice lattice =
        build_lattice(lexicon, doc.slice(sentence.begin, sentence.end));

    std::vector<Candidate> candidates;
    for (size_t node : lattice.nodes) {
      for (Match& m : match_from(t, lattice, node)) {
        Candidate c;
        c.start = m.start_node;
        c.end = m.end_node;
        c.priority = m.accept->priority;
        c.graph = m.accept->graph;
        c.outputs = std::move(m.outputs);
        for (const auto& tok : m.tokens) c.boundaries.push_back(tok.span.end);
        c.accept = m.accept;
        candidates.push_back(std::move(c));
      }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()),
                     candidates.end());

    size_t cursor = 0;
    for (const Candidate& c : candidates) {
      if (c.start < cursor) continue;
      cursor = c.end;

      Annotation a;
      a.span = {sentence.begin + c.start, sentence.begin + c.end};
      a.category = c.accept->category;
      a.tag = c.accept->tag;
      a.surface = std::string(doc.slice(a.span.begin, a.span.end));
      a.canonical = normalize(a.surface, c.outputs, c.accept->canonical);
      a.graph = c.graph;
      out.push_back(std::move(a));
    }
  }
  return out;
}

std::string normalize(std::string_view surface, std::string_view outputs,
                      const std::optional<std::string>& canon_template) {
  if (canon_template) {
    std::string result;
    const std::string& tpl = *canon_template;
    size_t i = 0;
    while (i < tpl.size()) {
      if (tpl[i] == '$' && i + 1 < tpl.size() && tpl[i + 1] == '0') {
        result += surface;
        i += 2;
      } else {
        result.push_back(tpl[i]);
        ++i;
      }
    }
    return result;
  }
  if (!outputs.empty()) return std::string(outputs);
  return std::string(surface);
}

std::string render(std::string_view text,
                   const std::vector<Annotation>& annotations) {
  utf8::Index doc(text);
  size_t cursor = 0;
  std::string out;
  for (const Annotation& a : annotations) {
    if (a.span.begin < cursor || a.span.end < a.span.begin ||
        a.span.end > doc.size())
      throw std::invalid_argument(
          "annotations must be sorted, in range and non-overlapping");
    std::string_view covered = doc.slice(a.span.begin, a.span.end);
    if (covered != a.surface)
      throw std::invalid_argument("annotation surface does not match text");
    out += doc.slice(cursor, a.span.begin);
    out += "<";
    out += to_string(a.category);
    out += "_";
    out += to_string(a.tag);
    out += ">";
    out += covered;
    out += "</";
    out += to_string(a.tag);
    out += ">";
    cursor = a.span.end;
  }
  out += doc.slice(cursor, doc.size());
  return out;
}

}  // namespace lgg
