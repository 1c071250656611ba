#include "lgg/grammar.h"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "lgg/utf8.h"

namespace lgg {

std::string_view to_string(Category c) {
  switch (c) {
    case Category::SMWE: return "SMWE";
    case Category::DMWE: return "DMWE";
    case Category::EMWE: return "EMWE";
    case Category::FMWE: return "FMWE";
    case Category::None: return "NONE";
  }
  return "?";
}

std::string_view to_string(MweTag t) {
  switch (t) {
    case MweTag::QXPO: return "QXPO";
    case MweTag::QXNG: return "QXNG";
    case MweTag::XXPR: return "XXPR";
    case MweTag::XQFT: return "XQFT";
    case MweTag::None: return "NONE";
  }
  return "?";
}

std::string_view to_string(Structure s) {
  switch (s) {
    case Structure::NN: return "NN";
    case Structure::NPred: return "NPRED";
    case Structure::PredPred: return "PREDPRED";
    case Structure::Etc: return "ETC";
  }
  return "?";
}

std::optional<Category> parse_category(std::string_view s) {
  if (s == "SMWE") return Category::SMWE;
  if (s == "DMWE") return Category::DMWE;
  if (s == "EMWE") return Category::EMWE;
  if (s == "FMWE") return Category::FMWE;
  return std::nullopt;
}

std::optional<MweTag> parse_mwe_tag(std::string_view s) {
  if (s == "QXPO") return MweTag::QXPO;
  if (s == "QXNG") return MweTag::QXNG;
  if (s == "XXPR") return MweTag::XXPR;
  if (s == "XQFT") return MweTag::XQFT;
  return std::nullopt;
}

std::optional<Structure> parse_structure(std::string_view s) {
  if (s == "NN") return Structure::NN;
  if (s == "NPRED") return Structure::NPred;
  if (s == "PREDPRED") return Structure::PredPred;
  if (s == "ETC") return Structure::Etc;
  return std::nullopt;
}

std::string_view to_string(CatCode c) {
  switch (c) {
    case CatCode::N: return "N";
    case CatCode::V: return "V";
    case CatCode::A: return "A";
    case CatCode::D: return "D";
    case CatCode::JN: return "JN";
    case CatCode::EV: return "EV";
    case CatCode::DS: return "DS";
    case CatCode::QXPO: return "QXPO";
    case CatCode::QXNG: return "QXNG";
    case CatCode::QXDE: return "QXDE";
    case CatCode::XXPR: return "XXPR";
    case CatCode::XQFT: return "XQFT";
  }
  return "?";
}

std::optional<CatCode> parse_cat_code(std::string_view s) {
  if (s == "N") return CatCode::N;
  if (s == "V") return CatCode::V;
  if (s == "A") return CatCode::A;
  if (s == "D") return CatCode::D;
  if (s == "JN") return CatCode::JN;
  if (s == "EV") return CatCode::EV;
  if (s == "DS") return CatCode::DS;
  if (s == "QXPO") return CatCode::QXPO;
  if (s == "QXNG") return CatCode::QXNG;
  if (s == "QXDE") return CatCode::QXDE;
  if (s == "XXPR") return CatCode::XXPR;
  if (s == "XQFT") return CatCode::XQFT;
  return std::nullopt;
}

Mask Mask::literal(std::string s) {
  Mask m;
  m.kind = Kind::Literal;
  m.text = std::move(s);
  return m;
}

Mask Mask::lemma(std::string l, std::optional<PosTag> p) {
  Mask m;
  m.kind = Kind::Lemma;
  m.text = std::move(l);
  m.pos = p;
  return m;
}

Mask Mask::category(CatCode c) {
  Mask m;
  m.kind = Kind::Category;
  m.code = c;
  return m;
}

Mask Mask::epsilon() { return Mask{}; }

Mask Mask::call(std::string target) {
  Mask m;
  m.kind = Kind::Call;
  m.text = std::move(target);
  return m;
}

std::string Mask::to_string() const {
  switch (kind) {
    case Kind::Literal: return textio::quote(text);
    case Kind::Lemma:
      return pos ? "<" + text + "." + std::string(lgg::to_string(*pos)) + ">"
                 : "<" + text + ">";
    case Kind::Category: return "<" + std::string(lgg::to_string(code)) + ">";
    case Kind::Epsilon: return "<E>";
    case Kind::Call: return "@" + text;
  }
  return "?";
}

std::string to_string(const MaskSeq& seq) {
  std::string out;
  for (size_t i = 0; i < seq.size(); ++i) {
    if (i) out += " ";
    out += seq[i].to_string();
  }
  return out;
}

const Graph* GrammarSet::find(std::string_view name) const {
  auto it = graphs.find(std::string(name));
  return it == graphs.end() ? nullptr : &it->second;
}

namespace {

bool valid_identifier(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c == '"' || c == '#' || c == '<' || c == '>' || c == '@' ||
        static_cast<unsigned char>(c) <= ' ')
      return false;
  return true;
}

struct Parser {
  GrammarSet gs;
  Graph* current = nullptr;
  bool saw_start = false;
  std::string source_name;

  [[noreturn]] void fail(size_t line_no, const std::string& msg) {
    std::string where =
        source_name.empty() ? msg : source_name + ": " + msg;
    throw GrammarError(line_no, where);
  }

  void note_node(const std::string& id) {
    auto& nodes = current->nodes;
    if (std::find(nodes.begin(), nodes.end(), id) == nodes.end())
      nodes.push_back(id);
  }

  void feed(const std::string& content) {
    auto lines = textio::split_lines(content);
    for (size_t i = 0; i < lines.size(); ++i) {
      size_t line_no = i + 1;
      std::vector<textio::Tok> toks;
      try {
        toks = textio::tokenize(lines[i]);
      } catch (const std::runtime_error& e) {
        fail(line_no, e.what());
      }
      if (toks.empty()) continue;
      handle(line_no, toks);
    }
    if (current) fail(lines.size(), "missing END for graph " + current->name);
  }

  void handle(size_t line_no, const std::vector<textio::Tok>& toks) {
    const std::string& kw = toks[0].text;
    if (toks[0].quoted) fail(line_no, "unexpected quoted token");

    if (kw == "GRAPH") {
      if (current) fail(line_no, "GRAPH inside graph " + current->name);
      if (toks.size() < 2 || toks[1].quoted ||
          !valid_identifier(toks[1].text))
        fail(line_no, "GRAPH needs a name");
      if (gs.graphs.count(toks[1].text))
        fail(line_no, "duplicate graph '" + toks[1].text + "'");
      Graph g;
      g.name = toks[1].text;
      parse_header(line_no, toks, g);
      current = &gs.graphs.emplace(g.name, std::move(g)).first->second;
      saw_start = false;
      return;
    }
    if (kw == "MAIN") {
      if (current) fail(line_no, "MAIN inside graph " + current->name);
      if (toks.size() < 2) fail(line_no, "MAIN needs graph names");
      for (size_t k = 1; k < toks.size(); ++k)
        gs.mains.push_back(toks[k].text);
      return;
    }
    if (!current) fail(line_no, "directive outside GRAPH: " + kw);

    if (kw == "START") {
      if (saw_start) fail(line_no, "duplicate START");
      if (toks.size() != 2 || !valid_identifier(toks[1].text))
        fail(line_no, "START needs one node id");
      current->start = toks[1].text;
      note_node(current->start);
      saw_start = true;
    } else if (kw == "FINAL") {
      if (toks.size() < 2) fail(line_no, "FINAL needs node ids");
      for (size_t k = 1; k < toks.size(); ++k) {
        if (!valid_identifier(toks[k].text))
          fail(line_no, "bad node id '" + toks[k].text + "'");
        current->finals.push_back(toks[k].text);
        note_node(toks[k].text);
      }
    } else if (kw == "ARC") {
      if (toks.size() < 4) fail(line_no, "ARC needs: from to mask");
      if (toks[1].quoted || toks[2].quoted ||
          !valid_identifier(toks[1].text) || !valid_identifier(toks[2].text))
        fail(line_no, "bad arc endpoint");
      GrammarArc arc;
      arc.from = toks[1].text;
      arc.to = toks[2].text;
      try {
        arc.mask = parse_mask(toks[3]);
      } catch (const std::runtime_error& e) {
        fail(line_no, e.what());
      }
      if (toks.size() == 6 && !toks[4].quoted && toks[4].text == "OUTPUT" &&
          toks[5].quoted) {
        arc.output = toks[5].text;
      } else if (toks.size() != 4) {
        fail(line_no, "trailing tokens after mask (expected OUTPUT \"...\")");
      }
      note_node(arc.from);
      note_node(arc.to);
      current->arcs.push_back(std::move(arc));
    } else if (kw == "END") {
      if (toks.size() != 1) fail(line_no, "END takes no arguments");
      if (!saw_start) fail(line_no, "graph " + current->name + " has no START");
      if (current->finals.empty())
        fail(line_no, "graph " + current->name + " has no FINAL");
      current = nullptr;
    } else {
      fail(line_no, "unknown directive '" + kw + "'");
    }
  }

  void parse_header(size_t line_no, const std::vector<textio::Tok>& toks,
                    Graph& g) {
    std::set<std::string> seen;
    size_t k = 2;
    while (k < toks.size()) {
      if (toks[k].quoted) fail(line_no, "unexpected quoted token in header");
      const std::string& key = toks[k].text;
      if (k + 1 >= toks.size()) fail(line_no, key + " needs a value");
      if (!seen.insert(key).second)
        fail(line_no, "duplicate option " + key);
      const textio::Tok& val = toks[k + 1];
      if (key == "CATEGORY") {
        auto c = parse_category(val.text);
        if (val.quoted || !c) fail(line_no, "bad CATEGORY '" + val.text + "'");
        g.category = *c;
      } else if (key == "TAG") {
        auto t = parse_mwe_tag(val.text);
        if (val.quoted || !t) fail(line_no, "bad TAG '" + val.text + "'");
        g.tag = *t;
      } else if (key == "CANON") {
        if (!val.quoted) fail(line_no, "CANON needs a quoted template");
        g.canonical = val.text;
      } else if (key == "PRIORITY") {
        int v = 0;
        auto [p, ec] = std::from_chars(val.text.data(),
                                       val.text.data() + val.text.size(), v);
        if (val.quoted || ec != std::errc{} ||
            p != val.text.data() + val.text.size())
          fail(line_no, "bad PRIORITY '" + val.text + "'");
        g.priority = v;
      } else if (key == "STRUCT") {
        auto s = parse_structure(val.text);
        if (val.quoted || !s) fail(line_no, "bad STRUCT '" + val.text + "'");
        g.structure = *s;
      } else {
        fail(line_no, "unknown option " + key);
      }
      k += 2;
    }
  }
};

}  // namespace

Mask parse_mask(const textio::Tok& tok) {
  if (tok.quoted) {
    if (tok.text.empty()) throw std::runtime_error("empty literal mask");
    for (char32_t cp : utf8::decode(tok.text))
      if (utf8::is_space(cp))
        throw std::runtime_error("literal mask contains whitespace");
    return Mask::literal(tok.text);
  }
  const std::string& t = tok.text;
  if (t.size() >= 2 && t.front() == '@') {
    std::string target = t.substr(1);
    if (!valid_identifier(target))
      throw std::runtime_error("bad subgraph name '" + target + "'");
    return Mask::call(target);
  }
  if (t.size() >= 3 && t.front() == '<' && t.back() == '>') {
    std::string inner = t.substr(1, t.size() - 2);
    if (inner == "E") return Mask::epsilon();
    if (auto code = parse_cat_code(inner)) return Mask::category(*code);
    size_t dot = inner.rfind('.');
    if (dot != std::string::npos) {
      auto pos = parse_pos(inner.substr(dot + 1));
      if (pos && *pos != PosTag::Unk) {
        std::string lemma = inner.substr(0, dot);
        if (lemma.empty()) throw std::runtime_error("empty lemma in mask");
        return Mask::lemma(lemma, pos);
      }
    }
    return Mask::lemma(inner);
  }
  throw std::runtime_error("unrecognized mask '" + t + "'");
}

GrammarSet parse_grammar(std::istream& in) {
  std::string content = textio::read_stream(in);
  return parse_grammar(std::string_view(content));
}

GrammarSet parse_grammar(std::string_view source) {
  Parser p;
  p.feed(std::string(source));
  auto problems = validate(p.gs);
  if (!problems.empty()) {
    std::string msg;
    for (size_t i = 0; i < problems.size(); ++i)
      msg += (i ? "; " : "") + problems[i];
    throw GrammarError(0, msg);
  }
  return std::move(p.gs);
}

GrammarSet parse_grammar_files(
    const std::vector<std::filesystem::path>& paths) {
  Parser p;
  for (const auto& path : paths) {
    p.source_name = path.filename().string();
    p.feed(textio::read_file(path));
  }
  auto problems = validate(p.gs);
  if (!problems.empty()) {
    std::string msg;
    for (size_t i = 0; i < problems.size(); ++i)
      msg += (i ? "; " : "") + problems[i];
    throw GrammarError(0, msg);
  }
  return std::move(p.gs);
}

namespace {

bool polarity(MweTag t) { return t == MweTag::QXPO || t == MweTag::QXNG; }

// DFS cycle search over the subgraph-call relation.
bool call_cycle(const GrammarSet& gs, const std::string& name,
                std::map<std::string, int>& state,
                std::vector<std::string>& cycle) {
  state[name] = 1;
  const Graph* g = gs.find(name);
  if (g) {
    for (const auto& arc : g->arcs) {
      if (arc.mask.kind != Mask::Kind::Call) continue;
      const std::string& target = arc.mask.text;
      auto it = state.find(target);
      if (it != state.end() && it->second == 1) {
        cycle.push_back(target);
        cycle.push_back(name);
        return true;
      }
      if (it == state.end() || it->second == 0) {
        if (call_cycle(gs, target, state, cycle)) {
          if (cycle.front() != name) cycle.push_back(name);
          return true;
        }
      }
    }
  }
  state[name] = 2;
  return false;
}

}  // namespace

std::vector<std::string> validate(const GrammarSet& gs) {
  std::vector<std::string> out;

  for (const auto& [name, g] : gs.graphs) {
    if (g.finals.empty()) out.push_back("graph '" + name + "' has no finals");

    // start-to-final reachability over all arcs
    std::set<std::string> reach{g.start};
    bool grew = true;
    while (grew) {
      grew = false;
      for (const auto& arc : g.arcs)
        if (reach.count(arc.from) && reach.insert(arc.to).second) grew = true;
    }
    bool final_reachable = false;
    for (const auto& f : g.finals)
      if (reach.count(f)) final_reachable = true;
    if (!final_reachable && !g.finals.empty())
      out.push_back("graph '" + name + "': no final node reachable from start");

    if ((g.category == Category::None) != (g.tag == MweTag::None))
      out.push_back("graph '" + name + "': CATEGORY and TAG must come together");
    if (g.tag != MweTag::None) {
      bool ok =
          (polarity(g.tag) &&
           (g.category == Category::SMWE || g.category == Category::DMWE)) ||
          (g.tag == MweTag::XXPR && g.category == Category::EMWE) ||
          (g.tag == MweTag::XQFT && g.category == Category::FMWE);
      if (!ok)
        out.push_back("graph '" + name + "': tag " +
                      std::string(to_string(g.tag)) + " not valid for " +
                      std::string(to_string(g.category)));
    }

    // cycles made of epsilon arcs only
    std::map<std::string, std::vector<std::string>> eps;
    for (const auto& arc : g.arcs)
      if (arc.mask.kind == Mask::Kind::Epsilon)
        eps[arc.from].push_back(arc.to);
    std::map<std::string, int> color;
    auto eps_cycle = [&](auto&& self, const std::string& n) -> bool {
      color[n] = 1;
      for (const auto& m : eps[n]) {
        if (color[m] == 1) return true;
        if (color[m] == 0 && self(self, m)) return true;
      }
      color[n] = 2;
      return false;
    };
    for (const auto& [n, _] : eps)
      if (color[n] == 0 && eps_cycle(eps_cycle, n)) {
        out.push_back("graph '" + name + "': cycle of epsilon arcs");
        break;
      }

    for (const auto& arc : g.arcs)
      if (arc.mask.kind == Mask::Kind::Call && !gs.find(arc.mask.text))
        out.push_back("graph '" + name + "': undefined subgraph '" +
                      arc.mask.text + "'");
  }

  {
    std::map<std::string, int> state;
    for (const auto& [name, g] : gs.graphs) {
      if (state[name] != 0) continue;
      std::vector<std::string> cycle;
      if (call_cycle(gs, name, state, cycle)) {
        std::string msg = "recursive subgraph calls:";
        for (auto it = cycle.rbegin(); it != cycle.rend(); ++it)
          msg += " " + *it;
        out.push_back(msg);
        break;
      }
    }
  }

  std::set<std::string> called;
  for (const auto& [name, g] : gs.graphs)
    for (const auto& arc : g.arcs)
      if (arc.mask.kind == Mask::Kind::Call) called.insert(arc.mask.text);

  for (const auto& main : gs.mains) {
    const Graph* g = gs.find(main);
    if (!g) {
      out.push_back("undefined main graph '" + main + "'");
      continue;
    }
    if (g->category == Category::None)
      out.push_back("main graph '" + main + "' must declare CATEGORY and TAG");
  }
  for (const auto& name : called) {
    const Graph* g = gs.find(name);
    if (g && g->category != Category::None)
      out.push_back("called graph '" + name +
                    "' must not declare CATEGORY (subgraphs are untagged)");
  }
  return out;
}

std::string render_grammar(const GrammarSet& gs) {
  std::ostringstream out;
  for (const auto& [name, g] : gs.graphs) {
    // canonical node names in order of first appearance
    std::map<std::string, std::string> rename;
    auto id_of = [&](const std::string& n) -> const std::string& {
      auto it = rename.find(n);
      if (it == rename.end())
        it = rename.emplace(n, "n" + std::to_string(rename.size())).first;
      return it->second;
    };
    out << "GRAPH " << name;
    if (g.category != Category::None)
      out << " CATEGORY " << to_string(g.category);
    if (g.tag != MweTag::None) out << " TAG " << to_string(g.tag);
    if (g.canonical) out << " CANON " << textio::quote(*g.canonical);
    if (g.priority != 0) out << " PRIORITY " << g.priority;
    if (g.structure) out << " STRUCT " << to_string(*g.structure);
    out << "\n";
    out << "START " << id_of(g.start) << "\n";
    out << "FINAL";
    for (const auto& f : g.finals) out << " " << id_of(f);
    out << "\n";
    for (const auto& arc : g.arcs) {
      out << "ARC " << id_of(arc.from) << " " << id_of(arc.to) << " "
          << arc.mask.to_string();
      if (!arc.output.empty()) out << " OUTPUT " << textio::quote(arc.output);
      out << "\n";
    }
    out << "END\n";
  }
  if (!gs.mains.empty()) {
    out << "MAIN";
    for (const auto& m : gs.mains) out << " " << m;
    out << "\n";
  }
  return out.str();
}

namespace {

// Direct RTN enumeration; sub-language results cached per (graph, budget).
struct Enumerator {
  const GrammarSet& gs;
  std::map<std::pair<std::string, size_t>, std::set<MaskSeq>> cache;

  const std::set<MaskSeq>& language(const std::string& name, size_t budget) {
    auto key = std::make_pair(name, budget);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::set<MaskSeq> result;
    const Graph* g = gs.find(name);
    if (g) {
      std::map<std::string, std::vector<const GrammarArc*>> arcs_from;
      for (const auto& arc : g->arcs) arcs_from[arc.from].push_back(&arc);
      std::set<std::string> finals(g->finals.begin(), g->finals.end());
      MaskSeq seq;
      std::set<std::string> silent{g->start};
      walk(*g, arcs_from, finals, g->start, budget, seq, silent, result);
    }
    return cache.emplace(std::move(key), std::move(result)).first->second;
  }

  // `silent` holds nodes visited since the last consumed mask, bounding
  // zero-consumption moves (epsilon arcs, empty subgraph traversals).
  void walk(const Graph& g,
            const std::map<std::string, std::vector<const GrammarArc*>>& af,
            const std::set<std::string>& finals, const std::string& node,
            size_t budget, MaskSeq& seq, std::set<std::string>& silent,
            std::set<MaskSeq>& result) {
    if (finals.count(node)) result.insert(seq);
    auto it = af.find(node);
    if (it == af.end()) return;
    for (const GrammarArc* arc : it->second) {
      switch (arc->mask.kind) {
        case Mask::Kind::Epsilon: {
          if (silent.count(arc->to)) break;
          silent.insert(arc->to);
          walk(g, af, finals, arc->to, budget, seq, silent, result);
          silent.erase(arc->to);
          break;
        }
        case Mask::Kind::Call: {
          size_t room = budget - seq.size();
          // copy: language() may invalidate cache references reentrantly
          std::set<MaskSeq> sub = language(arc->mask.text, room);
          for (const auto& piece : sub) {
            if (piece.empty()) {
              if (silent.count(arc->to)) continue;
              silent.insert(arc->to);
              walk(g, af, finals, arc->to, budget, seq, silent, result);
              silent.erase(arc->to);
            } else {
              seq.insert(seq.end(), piece.begin(), piece.end());
              std::set<std::string> fresh{arc->to};
              walk(g, af, finals, arc->to, budget, seq, fresh, result);
              seq.resize(seq.size() - piece.size());
            }
          }
          break;
        }
        default: {
          if (seq.size() >= budget) break;
          seq.push_back(arc->mask);
          std::set<std::string> fresh{arc->to};
          walk(g, af, finals, arc->to, budget, seq, fresh, result);
          seq.pop_back();
        }
      }
    }
  }
};

}  // namespace

std::set<MaskSeq> graph_language(const GrammarSet& gs, std::string_view name,
                                 size_t max_len) {
  if (!gs.find(name))
    throw std::invalid_argument("unknown graph '" + std::string(name) + "'");
  Enumerator e{gs, {}};
  return e.language(std::string(name), max_len);
}

}  // namespace lgg
