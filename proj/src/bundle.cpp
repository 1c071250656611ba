#include "lgg/bundle.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include "lgg/textio.h"

namespace lgg {

namespace {

std::string semtags_field(const SemTagSet& tags) {
  if (tags.empty()) return "-";
  std::string out;
  for (SemTag t : tags.values()) {
    if (!out.empty()) out += ",";
    out += to_string(t);
  }
  return out;
}

size_t parse_count(const std::string& tok, const char* what) {
  size_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size())
    throw BundleError(std::string("bad ") + what + " '" + tok + "'");
  return v;
}

}  // namespace

std::string serialize_bundle(const Lexicon& lexicon,
                             const CompiledTransducer& t) {
  std::ostringstream out;
  out << "LGGMWE-BUNDLE " << kBundleVersion << "\n";

  std::ostringstream lexout;
  for (const auto& cls : lexicon.classes()) {
    lexout << "CLASS\t" << cls.id << "\t" << to_string(cls.kind) << "\t";
    for (size_t i = 0; i < cls.suffixes.size(); ++i)
      lexout << (i ? "," : "") << cls.suffixes[i];
    lexout << "\n";
  }
  for (const auto& e : lexicon.entries()) {
    lexout << e.surface << "\t" << e.lemma << "\t" << to_string(e.pos) << "\t"
           << semtags_field(e.semtags) << "\t"
           << (e.inflclass ? e.inflclass->id : "-") << "\n";
  }
  std::string lex = lexout.str();
  out << "LEXICON " << textio::split_lines(lex).size() << "\n" << lex;

  size_t arc_count = 0;
  for (const auto& v : t.arcs) arc_count += v.size();
  size_t final_count = 0;
  for (const auto& [s, recs] : t.finals) final_count += recs.size();

  out << "TRANSDUCER STATES " << t.state_count() << " START " << t.start
      << "\n";
  out << "ARCS " << arc_count << "\n";
  for (uint32_t s = 0; s < t.state_count(); ++s)
    for (const auto& a : t.arcs[s]) {
      out << a.from << " " << a.to << " " << a.mask.to_string() << " "
          << a.origin;
      if (!a.output.empty()) out << " OUTPUT " << textio::quote(a.output);
      out << "\n";
    }
  out << "FINALS " << final_count << "\n";
  for (const auto& [s, recs] : t.finals)
    for (const auto& r : recs) {
      out << s << " " << r.graph << " " << to_string(r.category) << " "
          << to_string(r.tag) << " " << r.priority;
      if (r.canonical) out << " CANON " << textio::quote(*r.canonical);
      if (!r.final_output.empty())
        out << " FINALOUT " << textio::quote(r.final_output);
      out << "\n";
    }
  out << "END\n";
  return out.str();
}

Bundle load_bundle(std::istream& in) {
  std::string content = textio::read_stream(in);
  auto lines = textio::split_lines(content);
  size_t i = 0;
  auto next = [&]() -> const std::string& {
    if (i >= lines.size()) throw BundleError("truncated bundle");
    return lines[i++];
  };

  {
    auto toks = textio::tokenize(next());
    if (toks.size() != 2 || toks[0].text != "LGGMWE-BUNDLE")
      throw BundleError("not a bundle file");
    if (parse_count(toks[1].text, "version") !=
        static_cast<size_t>(kBundleVersion))
      throw BundleError("unsupported bundle version " + toks[1].text);
  }

  Bundle bundle;
  {
    auto toks = textio::tokenize(next());
    if (toks.size() != 2 || toks[0].text != "LEXICON")
      throw BundleError("expected LEXICON section");
    size_t n = parse_count(toks[1].text, "lexicon line count");
    std::string lex;
    for (size_t k = 0; k < n; ++k) lex += next() + "\n";
    try {
      bundle.lexicon = load_lexicon(std::string_view(lex));
    } catch (const LexiconError& e) {
      throw BundleError(std::string("bundle lexicon: ") + e.what());
    }
  }

  CompiledTransducer t;
  {
    auto toks = textio::tokenize(next());
    if (toks.size() != 5 || toks[0].text != "TRANSDUCER" ||
        toks[1].text != "STATES" || toks[3].text != "START")
      throw BundleError("expected TRANSDUCER STATES <n> START <s>");
    t.arcs.resize(parse_count(toks[2].text, "state count"));
    t.start = static_cast<uint32_t>(parse_count(toks[4].text, "start id"));
    if (t.start >= t.arcs.size() && !t.arcs.empty())
      throw BundleError("start state out of range");
  }
  {
    auto toks = textio::tokenize(next());
    if (toks.size() != 2 || toks[0].text != "ARCS")
      throw BundleError("expected ARCS <n>");
    size_t n = parse_count(toks[1].text, "arc count");
    for (size_t k = 0; k < n; ++k) {
      auto at = textio::tokenize(next());
      if (at.size() != 4 && at.size() != 6)
        throw BundleError("bad arc line");
      TransducerArc arc;
      arc.from = static_cast<uint32_t>(parse_count(at[0].text, "arc from"));
      arc.to = static_cast<uint32_t>(parse_count(at[1].text, "arc to"));
      try {
        arc.mask = parse_mask(at[2]);
      } catch (const std::runtime_error& e) {
        throw BundleError(std::string("bad arc mask: ") + e.what());
      }
      if (arc.mask.kind == Mask::Kind::Epsilon ||
          arc.mask.kind == Mask::Kind::Call)
        throw BundleError("bundle arc carries a non-compiled mask");
      arc.origin = at[3].text;
      if (at.size() == 6) {
        if (at[4].text != "OUTPUT" || !at[5].quoted)
          throw BundleError("bad arc OUTPUT");
        arc.output = at[5].text;
      }
      if (arc.from >= t.arcs.size() || arc.to >= t.arcs.size())
        throw BundleError("arc endpoint out of range");
      t.arcs[arc.from].push_back(std::move(arc));
    }
  }
  {
    auto toks = textio::tokenize(next());
    if (toks.size() != 2 || toks[0].text != "FINALS")
      throw BundleError("expected FINALS <n>");
    size_t n = parse_count(toks[1].text, "final count");
    for (size_t k = 0; k < n; ++k) {
      auto ft = textio::tokenize(next());
      if (ft.size() < 5) throw BundleError("bad final line");
      uint32_t state =
          static_cast<uint32_t>(parse_count(ft[0].text, "final state"));
      if (state >= t.arcs.size())
        throw BundleError("final state out of range");
      AcceptRecord rec;
      rec.graph = ft[1].text;
      auto cat = parse_category(ft[2].text);
      auto tag = parse_mwe_tag(ft[3].text);
      if (!cat || !tag) throw BundleError("bad final category/tag");
      rec.category = *cat;
      rec.tag = *tag;
      int prio = 0;
      auto [p, ec] = std::from_chars(ft[4].text.data(),
                                     ft[4].text.data() + ft[4].text.size(),
                                     prio);
      if (ec != std::errc{} || p != ft[4].text.data() + ft[4].text.size())
        throw BundleError("bad final priority");
      rec.priority = prio;
      size_t j = 5;
      while (j < ft.size()) {
        if (ft[j].text == "CANON" && j + 1 < ft.size() && ft[j + 1].quoted) {
          rec.canonical = ft[j + 1].text;
          j += 2;
        } else if (ft[j].text == "FINALOUT" && j + 1 < ft.size() &&
                   ft[j + 1].quoted) {
          rec.final_output = ft[j + 1].text;
          j += 2;
        } else {
          throw BundleError("bad final line options");
        }
      }
      t.finals[state].push_back(std::move(rec));
    }
  }
  if (i >= lines.size() || lines[i] != "END")
    throw BundleError("missing END");
  bundle.transducer = std::move(t);
  return bundle;
}

Bundle load_bundle_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw BundleError("cannot open bundle " + path.string());
  return load_bundle(in);
}

}  // namespace lgg
