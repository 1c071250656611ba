#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lgg/lexicon.h"

namespace lgg {

struct Corpus {
  std::vector<std::string> sentences;
  size_t token_count = 0;  // whitespace-delimited units (eojeol)
  size_t sentence_count = 0;
};

Corpus make_corpus(std::vector<std::string> sentences);
// One sentence per line, blank lines skipped.
Corpus load_corpus(std::istream& in);
Corpus load_corpus_file(const std::filesystem::path& path);

// `with` collects sentences containing at least one lattice edge whose
// entry carries QXPO or QXNG; everything else (QXDE included) goes to
// `without`. Exhaustive and disjoint.
std::pair<Corpus, Corpus> split_by_polarity(const Corpus& corpus,
                                            const Lexicon& lexicon);

struct FreqRow {
  std::string surface;
  std::string lemma;
  PosTag pos = PosTag::Unk;
  size_t count = 0;
};

struct FreqTable {
  std::vector<FreqRow> rows;  // count desc, then surface/lemma/pos asc
  size_t total = 0;
};

// Counts tokens of a deterministic best-effort segmentation per eojeol
// (longest known stem wins). UNKNOWN tokens count by surface; a semtag
// filter keeps only entries carrying it.
FreqTable term_frequency(const Corpus& corpus, const Lexicon& lexicon,
                         std::optional<SemTag> filter = std::nullopt);

std::string to_tsv(const FreqTable& table);

struct KwicLine {
  std::string left;
  std::string keyword;
  std::string right;
  size_t sentence_index = 0;
};

// One line per lattice edge whose surface or lemma equals the pattern;
// contexts truncated to `window` codepoints each side.
std::vector<KwicLine> concordance(const Corpus& corpus, const Lexicon& lexicon,
                                  std::string_view pattern, size_t window);

std::string to_text(const std::vector<KwicLine>& lines);
std::string to_tsv(const std::vector<KwicLine>& lines);

}  // namespace lgg
