#include "lgg/corpustools.h"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

#include "lgg/textio.h"
#include "lgg/utf8.h"

namespace lgg {

namespace {

size_t count_eojeol(std::string_view sentence) {
  size_t n = 0;
  bool in_token = false;
  for (char32_t cp : utf8::decode(sentence)) {
    if (utf8::is_space(cp)) {
      in_token = false;
    } else if (!in_token) {
      in_token = true;
      ++n;
    }
  }
  return n;
}

}  // namespace

Corpus make_corpus(std::vector<std::string> sentences) {
  Corpus c;
  c.sentences = std::move(sentences);
  c.sentence_count = c.sentences.size();
  for (const auto& s : c.sentences) c.token_count += count_eojeol(s);
  return c;
}

Corpus load_corpus(std::istream& in) {
  std::string content = textio::read_stream(in);
  std::vector<std::string> sentences;
  for (auto& line : textio::split_lines(content))
    if (!line.empty()) sentences.push_back(std::move(line));
  return make_corpus(std::move(sentences));
}

Corpus load_corpus_file(const std::filesystem::path& path) {
  std::string content = textio::read_file(path);
  std::vector<std::string> sentences;
  for (auto& line : textio::split_lines(content))
    if (!line.empty()) sentences.push_back(std::move(line));
  return make_corpus(std::move(sentences));
}

std::pair<Corpus, Corpus> split_by_polarity(const Corpus& corpus,
                                            const Lexicon& lexicon) {
  std::vector<std::string> with, without;
  for (const auto& sentence : corpus.sentences) {
    SentenceLattice lat = build_lattice(lexicon, sentence);
    bool polar = false;
    for (const auto& [pos, edges] : lat.edges) {
      for (const auto& tok : edges) {
        if (tok.entry && (tok.entry->semtags.contains(SemTag::QXPO) ||
                          tok.entry->semtags.contains(SemTag::QXNG))) {
          polar = true;
          break;
        }
      }
      if (polar) break;
    }
    (polar ? with : without).push_back(sentence);
  }
  return {make_corpus(std::move(with)), make_corpus(std::move(without))};
}

namespace {

// Longest known stem wins; same-surface homographs tie-break on the
// stem's (pos, lemma).
std::vector<MorphToken> best_segmentation(const Lexicon& lexicon,
                                          std::string_view eojeol) {
  auto all = segment_eojeol(lexicon, eojeol);
  auto better = [](const std::vector<MorphToken>& a,
                   const std::vector<MorphToken>& b) {
    const MorphToken& sa = a.front();
    const MorphToken& sb = b.front();
    size_t la = sa.unknown() ? 0 : sa.span.length();
    size_t lb = sb.unknown() ? 0 : sb.span.length();
    if (la != lb) return la > lb;
    auto key = [](const MorphToken& t) {
      return std::make_pair(static_cast<int>(t.pos),
                            std::string_view(t.lemma()));
    };
    return key(sa) < key(sb);
  };
  return *std::min_element(all.begin(), all.end(), better);
}

}  // namespace

FreqTable term_frequency(const Corpus& corpus, const Lexicon& lexicon,
                         std::optional<SemTag> filter) {
  std::map<std::tuple<std::string, std::string, PosTag>, size_t> counts;
  for (const auto& sentence : corpus.sentences) {
    utf8::Index idx(sentence);
    auto cps = utf8::decode(sentence);
    size_t i = 0;
    while (i < cps.size()) {
      if (utf8::is_space(cps[i])) {
        ++i;
        continue;
      }
      size_t start = i;
      while (i < cps.size() && !utf8::is_space(cps[i])) ++i;
      for (const MorphToken& tok :
           best_segmentation(lexicon, idx.slice(start, i))) {
        if (filter) {
          if (!tok.entry || !tok.entry->semtags.contains(*filter)) continue;
        }
        counts[{tok.surface, std::string(tok.lemma()), tok.pos}]++;
      }
    }
  }
  FreqTable table;
  for (const auto& [key, n] : counts) {
    table.rows.push_back(
        {std::get<0>(key), std::get<1>(key), std::get<2>(key), n});
    table.total += n;
  }
  std::sort(table.rows.begin(), table.rows.end(),
            [](const FreqRow& a, const FreqRow& b) {
              if (a.count != b.count) return a.count > b.count;
              return std::tie(a.surface, a.lemma, a.pos) <
                     std::tie(b.surface, b.lemma, b.pos);
            });
  return table;
}

std::string to_tsv(const FreqTable& table) {
  std::ostringstream out;
  out << "surface\tlemma\tpos\tcount\n";
  for (const auto& row : table.rows)
    out << row.surface << "\t" << row.lemma << "\t" << to_string(row.pos)
        << "\t" << row.count << "\n";
  return out.str();
}

std::vector<KwicLine> concordance(const Corpus& corpus, const Lexicon& lexicon,
                                  std::string_view pattern, size_t window) {
  std::vector<KwicLine> out;
  for (size_t si = 0; si < corpus.sentences.size(); ++si) {
    SentenceLattice lat = build_lattice(lexicon, corpus.sentences[si]);
    std::set<Span> hits;
    for (const auto& [pos, edges] : lat.edges)
      for (const auto& tok : edges)
        if (tok.surface == pattern ||
            (tok.entry && tok.entry->lemma == pattern))
          hits.insert(tok.span);
    for (const Span& span : hits) {
      KwicLine line;
      size_t left_from = span.begin > window ? span.begin - window : 0;
      size_t right_to = std::min(lat.length(), span.end + window);
      line.left = std::string(lat.slice(left_from, span.begin));
      line.keyword = std::string(lat.slice(span.begin, span.end));
      line.right = std::string(lat.slice(span.end, right_to));
      line.sentence_index = si;
      out.push_back(std::move(line));
    }
  }
  return out;
}

std::string to_text(const std::vector<KwicLine>& lines) {
  size_t width = 0;
  for (const auto& l : lines) width = std::max(width, utf8::length(l.left));
  std::ostringstream out;
  for (const auto& l : lines) {
    out << std::string(width - utf8::length(l.left), ' ') << l.left << " | "
        << l.keyword << " | " << l.right << "\n";
  }
  return out.str();
}

std::string to_tsv(const std::vector<KwicLine>& lines) {
  std::ostringstream out;
  out << "sentence\tleft\tkeyword\tright\n";
  for (const auto& l : lines)
    out << l.sentence_index << "\t" << l.left << "\t" << l.keyword << "\t"
        << l.right << "\n";
  return out.str();
}

}  // namespace lgg
