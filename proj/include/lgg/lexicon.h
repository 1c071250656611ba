#pragma once

#include <compare>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lgg {

enum class PosTag : uint8_t { N, V, A, D, JN, EV, Unk };

enum class SemTag : uint8_t { QXPO, QXNG, QXDE, XXPR, XQFT };

std::string_view to_string(PosTag pos);
std::string_view to_string(SemTag tag);
std::optional<PosTag> parse_pos(std::string_view s);
std::optional<SemTag> parse_semtag(std::string_view s);

class SemTagSet {
 public:
  bool contains(SemTag t) const { return bits_ & bit(t); }
  void insert(SemTag t) { bits_ |= bit(t); }
  bool empty() const { return bits_ == 0; }
  std::vector<SemTag> values() const;
  friend bool operator==(SemTagSet, SemTagSet) = default;

 private:
  static uint8_t bit(SemTag t) {
    return static_cast<uint8_t>(1u << static_cast<uint8_t>(t));
  }
  uint8_t bits_ = 0;
};

struct PostpositionClass {
  std::string id;
  PosTag kind = PosTag::JN;  // JN or EV
  std::vector<std::string> suffixes;
  bool has_suffix(std::string_view s) const;
};

struct LexEntry {
  std::string surface;
  std::string lemma;
  PosTag pos = PosTag::N;
  SemTagSet semtags;
  const PostpositionClass* inflclass = nullptr;  // null = NONE
};

struct LexiconError : std::runtime_error {
  size_t line;
  LexiconError(size_t line_no, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_no) + ": " + msg),
        line(line_no) {}
};

// Immutable after load; safe to share across threads.
class Lexicon {
 public:
  size_t entry_count() const { return entries_.size(); }
  size_t class_count() const { return classes_.size(); }
  const std::deque<LexEntry>& entries() const { return entries_; }
  const std::deque<PostpositionClass>& classes() const { return classes_; }

  const std::vector<const LexEntry*>& by_surface(std::string_view s) const;
  const std::vector<const LexEntry*>& by_lemma(std::string_view s) const;
  const PostpositionClass* find_class(std::string_view id) const;

  // Entry backing a postposition token: a declared entry with matching
  // surface and POS if one exists, else the implicit one synthesized at
  // load time for every class suffix.
  const LexEntry* postposition_entry(PosTag kind, std::string_view s) const;

 private:
  std::deque<LexEntry> entries_;
  std::deque<PostpositionClass> classes_;
  std::deque<LexEntry> implicit_postpositions_;
  std::map<std::string, std::vector<const LexEntry*>, std::less<>> by_surface_;
  std::map<std::string, std::vector<const LexEntry*>, std::less<>> by_lemma_;
  std::map<std::string, const PostpositionClass*, std::less<>> class_by_id_;
  std::map<std::string, const LexEntry*, std::less<>> implicit_by_key_;

  friend Lexicon load_lexicon(std::istream& in);
};

// Line format, UTF-8 TSV ('#' comment lines and blank lines skipped,
// duplicate identical lines deduplicated):
//   CLASS <tab> id <tab> JN|EV <tab> suffix[,suffix...]
//   surface <tab> lemma|- <tab> pos <tab> semtags|- <tab> class|-
// N entries must name a JN class, V/A entries an EV class, all other
// POS must use '-'. Throws LexiconError with the offending line number.
Lexicon load_lexicon(std::istream& in);
Lexicon load_lexicon(std::string_view source);
Lexicon load_lexicon_file(const std::filesystem::path& path);

// {entry.surface} plus entry.surface + s for every class suffix s.
std::set<std::string> expand_inflections(const LexEntry& entry);

struct Span {
  size_t begin = 0;
  size_t end = 0;
  friend auto operator<=>(const Span&, const Span&) = default;
  size_t length() const { return end - begin; }
};

struct MorphToken {
  std::string surface;
  const LexEntry* entry = nullptr;  // null = UNKNOWN token
  PosTag pos = PosTag::Unk;
  Span span;  // codepoint offsets in the source sentence

  bool unknown() const { return entry == nullptr; }
  std::string_view lemma() const { return entry ? entry->lemma : surface; }
};

// Every decomposition eojeol = stem [+ one class suffix]; spans relative
// to the eojeol. Falls back to a single UNKNOWN token when nothing in the
// lexicon applies. eojeol must be non-empty and whitespace-free.
std::vector<std::vector<MorphToken>> segment_eojeol(const Lexicon& lexicon,
                                                    std::string_view eojeol);

// Tokens reference LexEntry objects owned by the lexicon, which must
// outlive the lattice.
struct SentenceLattice {
  std::string text;
  std::vector<char32_t> codepoints;
  std::vector<size_t> cp_bounds;       // utf8 boundaries of text
  std::vector<size_t> nodes;           // sorted codepoint positions
  std::map<size_t, std::vector<MorphToken>> edges;  // keyed by span.begin

  size_t length() const { return codepoints.size(); }
  size_t edge_count() const;
  const std::vector<MorphToken>& edges_at(size_t node) const;
  size_t skip_space(size_t pos) const;
  std::string_view slice(size_t cp_begin, size_t cp_end) const;
};

SentenceLattice build_lattice(const Lexicon& lexicon,
                              std::string_view sentence);

}  // namespace lgg
