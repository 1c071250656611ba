// Shared test-only helpers: independent oracles and random generators.
// Everything here derives expected values without going through the
// library code paths under test.
#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lgg/annotate.h"
#include "lgg/grammar.h"
#include "lgg/lexicon.h"
#include "lgg/utf8.h"

namespace testsupport {

// ---------------------------------------------------------------------
// Brute-force segmentation oracle: tries every split point and checks
// both parts directly against the declared entry/class tables.

struct OracleToken {
  std::string surface;
  std::string lemma;
  lgg::PosTag pos;
  bool unknown;
  friend auto operator<=>(const OracleToken&, const OracleToken&) = default;
};

using OracleSeq = std::vector<OracleToken>;

inline std::set<OracleSeq> oracle_segment(const lgg::Lexicon& lex,
                                          const std::string& eojeol) {
  std::set<OracleSeq> out;
  auto bounds = lgg::utf8::boundaries(eojeol);
  size_t len = bounds.size() - 1;
  for (size_t split = 0; split <= len; ++split) {
    std::string stem = eojeol.substr(0, bounds[split]);
    std::string rest = eojeol.substr(bounds[split]);
    for (const lgg::LexEntry& e : lex.entries()) {
      if (e.surface != stem) continue;
      if (rest.empty()) {
        out.insert({OracleToken{stem, e.lemma, e.pos, false}});
        continue;
      }
      if (!e.inflclass) continue;
      bool listed = false;
      for (const auto& s : e.inflclass->suffixes)
        if (s == rest) listed = true;
      if (!listed) continue;
      // the suffix token reports the declared homograph when one exists
      std::string suffix_lemma = rest;
      for (const lgg::LexEntry& d : lex.entries())
        if (d.surface == rest && d.pos == e.inflclass->kind)
          suffix_lemma = d.lemma;
      out.insert({OracleToken{stem, e.lemma, e.pos, false},
                  OracleToken{rest, suffix_lemma, e.inflclass->kind, false}});
    }
  }
  if (out.empty())
    out.insert({OracleToken{eojeol, eojeol, lgg::PosTag::Unk, true}});
  return out;
}

inline std::set<OracleSeq> to_oracle(
    const std::vector<std::vector<lgg::MorphToken>>& seqs) {
  std::set<OracleSeq> out;
  for (const auto& seq : seqs) {
    OracleSeq o;
    for (const auto& t : seq)
      o.push_back({t.surface, std::string(t.lemma()), t.pos, t.unknown()});
    out.insert(std::move(o));
  }
  return out;
}

// ---------------------------------------------------------------------
// Random eojeol built over a lexicon's own surfaces and suffixes, mixed
// with noise so UNKNOWN fallbacks appear too.

inline std::string random_hangul(std::mt19937& rng, size_t min_len,
                                 size_t max_len) {
  static const char32_t pool[] = {U'가', U'나', U'다', U'라', U'마', U'바',
                                  U'사', U'아', U'자', U'차', U'카', U'타',
                                  U'파', U'하', U'무', U'지', U'개'};
  std::uniform_int_distribution<size_t> len(min_len, max_len);
  std::uniform_int_distribution<size_t> pick(0, std::size(pool) - 1);
  std::string out;
  size_t n = len(rng);
  for (size_t i = 0; i < n; ++i) lgg::utf8::append(out, pool[pick(rng)]);
  return out;
}

inline std::string random_eojeol(std::mt19937& rng, const lgg::Lexicon& lex) {
  std::vector<std::string> surfaces;
  for (const auto& e : lex.entries()) surfaces.push_back(e.surface);
  std::vector<std::string> suffixes;
  for (const auto& c : lex.classes())
    for (const auto& s : c.suffixes) suffixes.push_back(s);
  auto pick = [&](const std::vector<std::string>& v) {
    std::uniform_int_distribution<size_t> d(0, v.size() - 1);
    return v[d(rng)];
  };
  std::uniform_int_distribution<int> shape(0, 5);
  switch (shape(rng)) {
    case 0: return pick(surfaces);
    case 1: return pick(surfaces) + pick(suffixes);
    case 2: return pick(surfaces) + random_hangul(rng, 1, 2);
    case 3: return pick(surfaces) + pick(surfaces);
    case 4: return pick(suffixes);
    default: return random_hangul(rng, 1, 4);
  }
}

// ---------------------------------------------------------------------
// Random valid grammar sets (acyclic calls, no epsilon cycles, reachable
// finals by construction) for the compiler equivalence property.

inline lgg::GrammarSet random_grammar_set(std::mt19937& rng) {
  using lgg::CatCode;
  using lgg::Mask;

  std::uniform_int_distribution<size_t> graph_count(1, 3);
  size_t n_graphs = graph_count(rng);

  auto random_mask = [&](size_t graph_index) {
    std::uniform_int_distribution<int> kind(0, 11);
    switch (kind(rng)) {
      case 0: return Mask::literal("가");
      case 1: return Mask::literal("나");
      case 2: return Mask::literal("바");
      case 3: return Mask::category(CatCode::N);
      case 4: return Mask::category(CatCode::V);
      case 5: return Mask::category(CatCode::JN);
      case 6: return Mask::category(CatCode::EV);
      case 7: return Mask::category(CatCode::QXPO);
      case 8: return Mask::category(CatCode::DS);
      case 9: return Mask::lemma("들다");
      case 10: return Mask::lemma("되다", lgg::PosTag::V);
      default: {
        if (graph_index + 1 < n_graphs) {
          std::uniform_int_distribution<size_t> target(graph_index + 1,
                                                       n_graphs - 1);
          return Mask::call("g" + std::to_string(target(rng)));
        }
        return Mask::category(CatCode::D);
      }
    }
  };

  lgg::GrammarSet gs;
  for (size_t gi = 0; gi < n_graphs; ++gi) {
    lgg::Graph g;
    g.name = "g" + std::to_string(gi);
    std::uniform_int_distribution<size_t> node_count(2, 6);
    size_t n_nodes = node_count(rng);
    for (size_t k = 0; k < n_nodes; ++k)
      g.nodes.push_back("n" + std::to_string(k));
    g.start = g.nodes.front();
    g.finals.push_back(g.nodes.back());

    auto node = [&](size_t k) { return "n" + std::to_string(k); };
    // spine guarantees a start-to-final path
    for (size_t k = 0; k + 1 < n_nodes; ++k)
      g.arcs.push_back({node(k), node(k + 1), random_mask(gi), ""});
    // extra forward arcs, and at most one backward arc per graph so the
    // length-8 language stays enumerable while cycles are still covered
    std::uniform_int_distribution<size_t> extra_count(0, 4);
    std::uniform_int_distribution<size_t> any(0, n_nodes - 1);
    std::uniform_int_distribution<int> coin(0, 5);
    size_t extras = extra_count(rng);
    for (size_t k = 0; k < extras; ++k) {
      size_t u = any(rng), v = any(rng);
      if (u >= v) continue;
      if (coin(rng) == 0)
        g.arcs.push_back({node(u), node(v), Mask::epsilon(), ""});
      else
        g.arcs.push_back({node(u), node(v), random_mask(gi), ""});
    }
    if (coin(rng) < 3) {
      size_t u = any(rng), v = any(rng);
      if (u > v) g.arcs.push_back({node(u), node(v), random_mask(gi), ""});
    }

    if (gi == 0) {
      static const std::pair<lgg::Category, lgg::MweTag> pairs[] = {
          {lgg::Category::SMWE, lgg::MweTag::QXPO},
          {lgg::Category::SMWE, lgg::MweTag::QXNG},
          {lgg::Category::DMWE, lgg::MweTag::QXPO},
          {lgg::Category::EMWE, lgg::MweTag::XXPR},
          {lgg::Category::FMWE, lgg::MweTag::XQFT},
      };
      std::uniform_int_distribution<size_t> which(0, std::size(pairs) - 1);
      auto [cat, tag] = pairs[which(rng)];
      g.category = cat;
      g.tag = tag;
      std::uniform_int_distribution<int> prio(-3, 3);
      g.priority = prio(rng);
      if (coin(rng) == 0) g.canonical = "[$0]";
      if (coin(rng) == 0) g.structure = lgg::Structure::NN;
    }
    if (coin(rng) == 0 && !g.arcs.empty())
      g.arcs[rng() % g.arcs.size()].output = "o";
    gs.graphs.emplace(g.name, std::move(g));
  }
  gs.mains.push_back("g0");
  return gs;
}

// Lexicon whose entries realize every non-literal mask the generator
// emits; literal masks deliberately stay out so they hit UNKNOWN tokens.
inline const lgg::Lexicon& realization_lexicon() {
  static const lgg::Lexicon lex = lgg::load_lexicon(std::string_view(
      "CLASS\tJNX\tJN\t의\n"
      "CLASS\tEVX\tEV\t다\n"
      "콩\t콩\tN\t-\tJNX\n"
      "먹\t먹다\tV\t-\tEVX\n"
      "희\t희다\tA\t-\tEVX\n"
      "잘\t잘\tD\t-\t-\n"
      "은\t은\tJN\t-\t-\n"
      "요\t요\tEV\t-\t-\n"
      "맘\t맘\tN\tQXPO\tJNX\n"
      "들\t들다\tV\t-\tEVX\n"
      "되\t되다\tV\t-\tEVX\n"));
  return lex;
}

// One eojeol realizing the mask (literals become UNKNOWN tokens, which
// only the same literal matches).
inline std::string realize_mask(const lgg::Mask& m) {
  using lgg::CatCode;
  switch (m.kind) {
    case lgg::Mask::Kind::Literal: return m.text;
    case lgg::Mask::Kind::Lemma: return m.text == "들다" ? "들" : "되";
    case lgg::Mask::Kind::Category:
      switch (m.code) {
        case CatCode::N: return "콩";
        case CatCode::V: return "먹";
        case CatCode::A: return "희";
        case CatCode::D: return "잘";
        case CatCode::DS: return "잘";
        case CatCode::JN: return "은";
        case CatCode::EV: return "요";
        case CatCode::QXPO: return "맘";
        default: return "콩";
      }
    default: return "콩";
  }
}

inline std::string realize_sequence(const lgg::MaskSeq& seq) {
  std::string sentence;
  for (size_t i = 0; i < seq.size(); ++i) {
    if (i) sentence += " ";
    sentence += realize_mask(seq[i]);
  }
  return sentence;
}

// ---------------------------------------------------------------------
// Random non-overlapping annotation sets over random Hangul text.

inline std::pair<std::string, std::vector<lgg::Annotation>>
random_annotated_document(std::mt19937& rng) {
  std::string text;
  std::uniform_int_distribution<int> words(3, 12);
  int n = words(rng);
  for (int i = 0; i < n; ++i) {
    if (i) text += " ";
    text += random_hangul(rng, 1, 4);
  }
  lgg::utf8::Index idx(text);

  static const std::pair<lgg::Category, lgg::MweTag> pairs[] = {
      {lgg::Category::SMWE, lgg::MweTag::QXPO},
      {lgg::Category::SMWE, lgg::MweTag::QXNG},
      {lgg::Category::DMWE, lgg::MweTag::QXPO},
      {lgg::Category::DMWE, lgg::MweTag::QXNG},
      {lgg::Category::EMWE, lgg::MweTag::XXPR},
      {lgg::Category::FMWE, lgg::MweTag::XQFT},
  };

  std::vector<lgg::Annotation> annotations;
  size_t cursor = 0;
  std::uniform_int_distribution<int> coin(0, 2);
  while (cursor + 1 < idx.size()) {
    std::uniform_int_distribution<size_t> b(cursor, idx.size() - 1);
    size_t begin = b(rng);
    std::uniform_int_distribution<size_t> e(begin + 1, idx.size());
    size_t end = e(rng);
    if (coin(rng) == 0) {
      std::uniform_int_distribution<size_t> which(0, std::size(pairs) - 1);
      auto [cat, tag] = pairs[which(rng)];
      lgg::Annotation a;
      a.span = {begin, end};
      a.category = cat;
      a.tag = tag;
      a.surface = std::string(idx.slice(begin, end));
      a.canonical = a.surface;
      a.graph = "g";
      annotations.push_back(std::move(a));
    }
    cursor = end;
  }
  return {text, annotations};
}

}  // namespace testsupport
