#include "lgg/lexicon.h"

#include <algorithm>
#include <sstream>

#include "lgg/textio.h"
#include "lgg/utf8.h"

namespace lgg {

std::string_view to_string(PosTag pos) {
  switch (pos) {
    case PosTag::N: return "N";
    case PosTag::V: return "V";
    case PosTag::A: return "A";
    case PosTag::D: return "D";
    case PosTag::JN: return "JN";
    case PosTag::EV: return "EV";
    case PosTag::Unk: return "UNK";
  }
  return "?";
}

std::string_view to_string(SemTag tag) {
  switch (tag) {
    case SemTag::QXPO: return "QXPO";
    case SemTag::QXNG: return "QXNG";
    case SemTag::QXDE: return "QXDE";
    case SemTag::XXPR: return "XXPR";
    case SemTag::XQFT: return "XQFT";
  }
  return "?";
}

std::optional<PosTag> parse_pos(std::string_view s) {
  if (s == "N") return PosTag::N;
  if (s == "V") return PosTag::V;
  if (s == "A") return PosTag::A;
  if (s == "D") return PosTag::D;
  if (s == "JN") return PosTag::JN;
  if (s == "EV") return PosTag::EV;
  if (s == "UNK") return PosTag::Unk;
  return std::nullopt;
}

std::optional<SemTag> parse_semtag(std::string_view s) {
  if (s == "QXPO") return SemTag::QXPO;
  if (s == "QXNG") return SemTag::QXNG;
  if (s == "QXDE") return SemTag::QXDE;
  if (s == "XXPR") return SemTag::XXPR;
  if (s == "XQFT") return SemTag::XQFT;
  return std::nullopt;
}

std::vector<SemTag> SemTagSet::values() const {
  std::vector<SemTag> out;
  for (SemTag t : {SemTag::QXPO, SemTag::QXNG, SemTag::QXDE, SemTag::XXPR,
                   SemTag::XQFT})
    if (contains(t)) out.push_back(t);
  return out;
}

bool PostpositionClass::has_suffix(std::string_view s) const {
  return std::find(suffixes.begin(), suffixes.end(), s) != suffixes.end();
}

namespace {

std::vector<std::string> split_on(std::string_view s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t p = s.find(sep, start);
    if (p == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      return out;
    }
    out.emplace_back(s.substr(start, p - start));
    start = p + 1;
  }
}

bool has_whitespace(std::string_view s) {
  for (char32_t cp : utf8::decode(s))
    if (utf8::is_space(cp)) return true;
  return false;
}

const std::vector<const LexEntry*> kNoEntries;

}  // namespace

const std::vector<const LexEntry*>& Lexicon::by_surface(
    std::string_view s) const {
  auto it = by_surface_.find(s);
  return it == by_surface_.end() ? kNoEntries : it->second;
}

const std::vector<const LexEntry*>& Lexicon::by_lemma(
    std::string_view s) const {
  auto it = by_lemma_.find(s);
  return it == by_lemma_.end() ? kNoEntries : it->second;
}

const PostpositionClass* Lexicon::find_class(std::string_view id) const {
  auto it = class_by_id_.find(id);
  return it == class_by_id_.end() ? nullptr : it->second;
}

const LexEntry* Lexicon::postposition_entry(PosTag kind,
                                            std::string_view s) const {
  for (const LexEntry* e : by_surface(s))
    if (e->pos == kind) return e;
  std::string key = std::string(to_string(kind)) + "\t" + std::string(s);
  auto it = implicit_by_key_.find(key);
  return it == implicit_by_key_.end() ? nullptr : it->second;
}

Lexicon load_lexicon(std::istream& in) {
  std::string content = textio::read_stream(in);
  auto lines = textio::split_lines(content);

  Lexicon lex;
  std::set<std::string> seen;

  // Classes first so entries may reference classes declared anywhere.
  for (size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    size_t line_no = i + 1;
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_on(line, '\t');
    if (fields[0] != "CLASS") continue;
    if (!seen.insert(line).second) continue;
    if (fields.size() != 4)
      throw LexiconError(line_no, "CLASS line needs 4 tab-separated fields");
    const std::string& id = fields[1];
    if (id.empty()) throw LexiconError(line_no, "empty class id");
    if (lex.class_by_id_.count(id))
      throw LexiconError(line_no, "duplicate class id '" + id + "'");
    PostpositionClass cls;
    cls.id = id;
    if (fields[2] == "JN")
      cls.kind = PosTag::JN;
    else if (fields[2] == "EV")
      cls.kind = PosTag::EV;
    else
      throw LexiconError(line_no, "class kind must be JN or EV");
    cls.suffixes = split_on(fields[3], ',');
    if (cls.suffixes.empty())
      throw LexiconError(line_no, "class without suffixes");
    std::set<std::string> uniq;
    for (const auto& s : cls.suffixes) {
      if (s.empty()) throw LexiconError(line_no, "empty suffix in class");
      if (has_whitespace(s))
        throw LexiconError(line_no, "suffix contains whitespace");
      if (!uniq.insert(s).second)
        throw LexiconError(line_no, "duplicate suffix '" + s + "'");
    }
    lex.classes_.push_back(std::move(cls));
    lex.class_by_id_[lex.classes_.back().id] = &lex.classes_.back();
  }

  for (size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    size_t line_no = i + 1;
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_on(line, '\t');
    if (fields[0] == "CLASS") continue;
    if (!seen.insert(line).second) continue;
    if (fields.size() != 5)
      throw LexiconError(line_no, "entry line needs 5 tab-separated fields");

    LexEntry e;
    e.surface = fields[0];
    if (e.surface.empty()) throw LexiconError(line_no, "empty surface");
    if (!utf8::valid(e.surface) || has_whitespace(e.surface))
      throw LexiconError(line_no, "surface contains whitespace");
    e.lemma = (fields[1] == "-") ? e.surface : fields[1];

    auto pos = parse_pos(fields[2]);
    if (!pos)
      throw LexiconError(line_no, "unknown POS code '" + fields[2] + "'");
    e.pos = *pos;

    if (fields[3] != "-") {
      for (const auto& t : split_on(fields[3], ',')) {
        auto tag = parse_semtag(t);
        if (!tag)
          throw LexiconError(line_no, "unknown semantic tag '" + t + "'");
        e.semtags.insert(*tag);
      }
      if (e.semtags.contains(SemTag::QXPO) && e.semtags.contains(SemTag::QXNG))
        throw LexiconError(line_no, "entry carries both QXPO and QXNG");
    }

    bool inflecting =
        e.pos == PosTag::N || e.pos == PosTag::V || e.pos == PosTag::A;
    if (fields[4] == "-") {
      if (inflecting)
        throw LexiconError(line_no, std::string(to_string(e.pos)) +
                                        " entry must name an inflection class");
    } else {
      if (!inflecting)
        throw LexiconError(line_no, std::string(to_string(e.pos)) +
                                        " entry must use inflection class '-'");
      const PostpositionClass* cls = lex.find_class(fields[4]);
      if (!cls)
        throw LexiconError(line_no,
                           "unknown inflection class '" + fields[4] + "'");
      PosTag want = (e.pos == PosTag::N) ? PosTag::JN : PosTag::EV;
      if (cls->kind != want)
        throw LexiconError(line_no, "entry needs a " +
                                        std::string(to_string(want)) +
                                        " class, got '" + fields[4] + "'");
      e.inflclass = cls;
    }

    lex.entries_.push_back(std::move(e));
    const LexEntry* p = &lex.entries_.back();
    lex.by_surface_[p->surface].push_back(p);
    lex.by_lemma_[p->lemma].push_back(p);
  }

  for (const auto& cls : lex.classes_) {
    for (const auto& s : cls.suffixes) {
      std::string key = std::string(to_string(cls.kind)) + "\t" + s;
      if (lex.implicit_by_key_.count(key)) continue;
      bool declared = false;
      for (const LexEntry* e : lex.by_surface(s))
        if (e->pos == cls.kind) declared = true;
      if (declared) continue;
      lex.implicit_postpositions_.push_back(
          LexEntry{s, s, cls.kind, SemTagSet{}, nullptr});
      lex.implicit_by_key_[key] = &lex.implicit_postpositions_.back();
    }
  }
  return lex;
}

Lexicon load_lexicon(std::string_view source) {
  std::istringstream in{std::string(source)};
  return load_lexicon(in);
}

Lexicon load_lexicon_file(const std::filesystem::path& path) {
  std::string content = textio::read_file(path);
  return load_lexicon(std::string_view(content));
}

std::set<std::string> expand_inflections(const LexEntry& entry) {
  std::set<std::string> out{entry.surface};
  if (entry.inflclass)
    for (const auto& s : entry.inflclass->suffixes)
      out.insert(entry.surface + s);
  return out;
}

std::vector<std::vector<MorphToken>> segment_eojeol(const Lexicon& lexicon,
                                                    std::string_view eojeol) {
  utf8::Index idx(eojeol);
  size_t len = idx.size();
  std::vector<std::vector<MorphToken>> out;

  for (size_t split = 1; split <= len; ++split) {
    std::string stem{idx.slice(0, split)};
    for (const LexEntry* entry : lexicon.by_surface(stem)) {
      if (split == len) {
        out.push_back({MorphToken{stem, entry, entry->pos, {0, len}}});
        continue;
      }
      if (!entry->inflclass) continue;
      std::string suffix{idx.slice(split, len)};
      if (!entry->inflclass->has_suffix(suffix)) continue;
      const LexEntry* post =
          lexicon.postposition_entry(entry->inflclass->kind, suffix);
      out.push_back({MorphToken{stem, entry, entry->pos, {0, split}},
                     MorphToken{suffix, post, entry->inflclass->kind,
                                {split, len}}});
    }
  }
  if (out.empty())
    out.push_back(
        {MorphToken{std::string(eojeol), nullptr, PosTag::Unk, {0, len}}});
  return out;
}

size_t SentenceLattice::edge_count() const {
  size_t n = 0;
  for (const auto& [pos, v] : edges) n += v.size();
  return n;
}

const std::vector<MorphToken>& SentenceLattice::edges_at(size_t node) const {
  static const std::vector<MorphToken> kEmpty;
  auto it = edges.find(node);
  return it == edges.end() ? kEmpty : it->second;
}

size_t SentenceLattice::skip_space(size_t pos) const {
  while (pos < codepoints.size() && utf8::is_space(codepoints[pos])) ++pos;
  return pos;
}

std::string_view SentenceLattice::slice(size_t cp_begin, size_t cp_end) const {
  return std::string_view(text).substr(cp_bounds.at(cp_begin),
                                       cp_bounds.at(cp_end) -
                                           cp_bounds.at(cp_begin));
}

SentenceLattice build_lattice(const Lexicon& lexicon,
                              std::string_view sentence) {
  SentenceLattice lat;
  lat.text = std::string(sentence);
  lat.cp_bounds = utf8::boundaries(lat.text);
  lat.codepoints = utf8::decode(lat.text);

  std::set<size_t> node_set{0};
  if (!lat.codepoints.empty()) node_set.insert(lat.codepoints.size());

  std::set<std::tuple<size_t, size_t, const LexEntry*, PosTag>> dedup;
  size_t i = 0;
  while (i < lat.codepoints.size()) {
    if (utf8::is_space(lat.codepoints[i])) {
      ++i;
      continue;
    }
    size_t start = i;
    while (i < lat.codepoints.size() && !utf8::is_space(lat.codepoints[i]))
      ++i;
    node_set.insert(start);
    node_set.insert(i);
    for (auto& seq : segment_eojeol(lexicon, lat.slice(start, i))) {
      for (auto& tok : seq) {
        MorphToken shifted = tok;
        shifted.span = {start + tok.span.begin, start + tok.span.end};
        if (!dedup
                 .insert({shifted.span.begin, shifted.span.end, shifted.entry,
                          shifted.pos})
                 .second)
          continue;
        node_set.insert(shifted.span.begin);
        node_set.insert(shifted.span.end);
        lat.edges[shifted.span.begin].push_back(std::move(shifted));
      }
    }
  }
  lat.nodes.assign(node_set.begin(), node_set.end());
  return lat;
}

}  // namespace lgg
