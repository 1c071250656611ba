#include "lgg/fstcore.h"

#include <algorithm>
#include <sstream>

namespace lgg {

namespace {

struct ProtoArc {
  uint32_t to = 0;
  bool eps = false;
  Mask mask;
  std::string output;
  std::string origin;
};

struct Builder {
  const GrammarSet& gs;
  std::vector<std::vector<ProtoArc>> arcs;
  std::vector<std::vector<AcceptRecord>> accepts;

  uint32_t fresh() {
    if (arcs.size() >= kMaxCompiledStates)
      throw CompileError("compiled transducer exceeds " +
                         std::to_string(kMaxCompiledStates) + " states");
    arcs.emplace_back();
    accepts.emplace_back();
    return static_cast<uint32_t>(arcs.size() - 1);
  }

  // Instantiates a fresh copy of the graph; returns (start, finals).
  std::pair<uint32_t, std::vector<uint32_t>> instantiate(const Graph& g) {
    std::map<std::string, uint32_t> ids;
    for (const auto& n : g.nodes) ids[n] = fresh();
    for (const auto& arc : g.arcs) {
      uint32_t from = ids.at(arc.from);
      uint32_t to = ids.at(arc.to);
      switch (arc.mask.kind) {
        case Mask::Kind::Epsilon:
          arcs[from].push_back({to, true, {}, arc.output, g.name});
          break;
        case Mask::Kind::Call: {
          const Graph* sub = gs.find(arc.mask.text);
          auto [sub_start, sub_finals] = instantiate(*sub);
          arcs[from].push_back({sub_start, true, {}, arc.output, g.name});
          for (uint32_t f : sub_finals)
            arcs[f].push_back({to, true, {}, "", g.name});
          break;
        }
        default:
          arcs[from].push_back({to, false, arc.mask, arc.output, g.name});
      }
    }
    std::vector<uint32_t> finals;
    std::set<std::string> seen;
    for (const auto& f : g.finals)
      if (seen.insert(f).second) finals.push_back(ids.at(f));
    return {ids.at(g.start), finals};
  }

  // Acyclic epsilon paths from p, pending outputs accumulated.
  void closure(uint32_t p, std::vector<std::pair<uint32_t, std::string>>& out)
      const {
    std::vector<uint32_t> path{p};
    std::string pending;
    walk(p, path, pending, out);
  }

  void walk(uint32_t s, std::vector<uint32_t>& path, std::string& pending,
            std::vector<std::pair<uint32_t, std::string>>& out) const {
    out.emplace_back(s, pending);
    for (const auto& a : arcs[s]) {
      if (!a.eps) continue;
      if (std::find(path.begin(), path.end(), a.to) != path.end()) continue;
      path.push_back(a.to);
      size_t mark = pending.size();
      pending += a.output;
      walk(a.to, path, pending, out);
      pending.resize(mark);
      path.pop_back();
    }
  }
};

}  // namespace

CompiledTransducer compile(const GrammarSet& gs) {
  Builder b{gs, {}, {}};
  uint32_t global_start = b.fresh();

  for (const auto& main : gs.mains) {
    const Graph* g = gs.find(main);
    auto [start, finals] = b.instantiate(*g);
    b.arcs[global_start].push_back({start, true, {}, "", g->name});
    AcceptRecord rec{g->name, g->category, g->tag, g->canonical, g->priority,
                     ""};
    for (uint32_t f : finals) b.accepts[f].push_back(rec);
  }

  // epsilon elimination
  size_t n = b.arcs.size();
  std::vector<std::vector<TransducerArc>> real(n);
  std::vector<std::vector<AcceptRecord>> acc(n);
  for (uint32_t p = 0; p < n; ++p) {
    std::vector<std::pair<uint32_t, std::string>> cl;
    b.closure(p, cl);
    for (const auto& [q, pending] : cl) {
      for (const auto& a : b.arcs[q])
        if (!a.eps)
          real[p].push_back({p, a.to, a.mask, pending + a.output, a.origin});
      for (const auto& rec : b.accepts[q]) {
        AcceptRecord r = rec;
        r.final_output = pending + rec.final_output;
        acc[p].push_back(std::move(r));
      }
    }
  }

  // keep states reachable over real arcs, breadth-first from the start
  std::vector<uint32_t> order{global_start};
  std::vector<int32_t> renum(n, -1);
  renum[global_start] = 0;
  for (size_t i = 0; i < order.size(); ++i) {
    for (const auto& a : real[order[i]]) {
      if (renum[a.to] >= 0) continue;
      renum[a.to] = static_cast<int32_t>(order.size());
      order.push_back(a.to);
    }
  }

  CompiledTransducer t;
  t.start = 0;
  t.arcs.resize(order.size());
  for (size_t i = 0; i < order.size(); ++i) {
    uint32_t old = order[i];
    for (const auto& a : real[old]) {
      TransducerArc na = a;
      na.from = static_cast<uint32_t>(i);
      na.to = static_cast<uint32_t>(renum[a.to]);
      t.arcs[i].push_back(std::move(na));
    }
    auto cmp = [](const TransducerArc& x, const TransducerArc& y) {
      return std::tie(x.to, x.mask, x.output, x.origin) <
             std::tie(y.to, y.mask, y.output, y.origin);
    };
    std::sort(t.arcs[i].begin(), t.arcs[i].end(), cmp);
    t.arcs[i].erase(std::unique(t.arcs[i].begin(), t.arcs[i].end(),
                                [](const TransducerArc& x,
                                   const TransducerArc& y) {
                                  return std::tie(x.to, x.mask, x.output,
                                                  x.origin) ==
                                         std::tie(y.to, y.mask, y.output,
                                                  y.origin);
                                }),
                    t.arcs[i].end());
    auto& recs = acc[old];
    if (!recs.empty()) {
      std::sort(recs.begin(), recs.end());
      recs.erase(std::unique(recs.begin(), recs.end()), recs.end());
      t.finals[static_cast<uint32_t>(i)] = recs;
    }
  }
  return t;
}

std::string CompiledTransducer::dump() const {
  std::ostringstream out;
  out << "states " << state_count() << " start " << start << "\n";
  for (uint32_t s = 0; s < state_count(); ++s) {
    for (const auto& a : arcs[s]) {
      out << "  " << s << " -> " << a.to << "  " << a.mask.to_string();
      if (!a.output.empty()) out << " OUTPUT " << textio::quote(a.output);
      out << "  (" << a.origin << ")\n";
    }
  }
  for (const auto& [s, recs] : finals)
    for (const auto& r : recs) {
      out << "  accept " << s << ": " << r.graph << " "
          << to_string(r.category) << "_" << to_string(r.tag) << " priority "
          << r.priority;
      if (r.canonical) out << " canon " << textio::quote(*r.canonical);
      if (!r.final_output.empty())
        out << " finalout " << textio::quote(r.final_output);
      out << "\n";
    }
  return out.str();
}

bool mask_matches(const Mask& mask, const MorphToken& token) {
  if (token.unknown())
    return mask.kind == Mask::Kind::Literal && mask.text == token.surface;
  switch (mask.kind) {
    case Mask::Kind::Literal:
      return mask.text == token.surface;
    case Mask::Kind::Lemma:
      return token.entry->lemma == mask.text &&
             (!mask.pos || token.entry->pos == *mask.pos);
    case Mask::Kind::Category:
      switch (mask.code) {
        case CatCode::N: return token.pos == PosTag::N;
        case CatCode::V: return token.pos == PosTag::V;
        case CatCode::A: return token.pos == PosTag::A;
        case CatCode::D: return token.pos == PosTag::D;
        case CatCode::JN: return token.pos == PosTag::JN;
        case CatCode::EV: return token.pos == PosTag::EV;
        case CatCode::DS: return token.pos == PosTag::D;
        case CatCode::QXPO: return token.entry->semtags.contains(SemTag::QXPO);
        case CatCode::QXNG: return token.entry->semtags.contains(SemTag::QXNG);
        case CatCode::QXDE: return token.entry->semtags.contains(SemTag::QXDE);
        case CatCode::XXPR: return token.entry->semtags.contains(SemTag::XXPR);
        case CatCode::XQFT: return token.entry->semtags.contains(SemTag::XQFT);
      }
      return false;
    case Mask::Kind::Epsilon:
    case Mask::Kind::Call:
      return false;
  }
  return false;
}

namespace {

struct Matcher {
  const CompiledTransducer& t;
  const SentenceLattice& lattice;
  size_t start_node;
  std::vector<Match>* out;
  std::vector<MorphToken> tokens;
  std::string outputs;
  // (state, position) pairs seen since the last consumed token; bounds
  // zero-consumption moves through <DS> arcs.
  std::set<std::pair<uint32_t, size_t>> quiet;

  void run(uint32_t state, size_t pos) {
    if (const auto* recs = t.accepts(state); recs && !tokens.empty()) {
      for (const auto& rec : *recs)
        out->push_back(
            {&rec, start_node, pos, tokens, outputs + rec.final_output});
    }
    size_t at = tokens.empty() ? pos : lattice.skip_space(pos);
    for (const auto& arc : t.arcs_from(state)) {
      if (arc.mask.kind == Mask::Kind::Category &&
          arc.mask.code == CatCode::DS) {
        consume_adverbs(arc, pos, 0);
        continue;
      }
      for (const auto& tok : lattice.edges_at(at)) {
        if (!mask_matches(arc.mask, tok)) continue;
        step(arc.to, tok, arc.output);
      }
    }
  }

  void consume_adverbs(const TransducerArc& arc, size_t pos, size_t depth) {
    auto key = std::make_pair(arc.to, pos);
    if (!quiet.count(key)) {
      quiet.insert(key);
      size_t mark = outputs.size();
      outputs += arc.output;
      run(arc.to, pos);
      outputs.resize(mark);
      quiet.erase(key);
    }
    if (depth >= kMaxAdverbRun) return;
    size_t at = tokens.empty() ? pos : lattice.skip_space(pos);
    for (const auto& tok : lattice.edges_at(at)) {
      if (tok.pos != PosTag::D) continue;
      tokens.push_back(tok);
      auto saved = std::move(quiet);
      quiet.clear();
      consume_adverbs(arc, tok.span.end, depth + 1);
      quiet = std::move(saved);
      tokens.pop_back();
    }
  }

  void step(uint32_t to, const MorphToken& tok, const std::string& arc_out) {
    tokens.push_back(tok);
    size_t mark = outputs.size();
    outputs += arc_out;
    auto saved = std::move(quiet);
    quiet.clear();
    run(to, tok.span.end);
    quiet = std::move(saved);
    outputs.resize(mark);
    tokens.pop_back();
  }
};

}  // namespace

std::vector<Match> match_from(const CompiledTransducer& t,
                              const SentenceLattice& lattice, size_t node) {
  std::vector<Match> out;
  Matcher m{t, lattice, node, &out, {}, "", {}};
  m.quiet.insert({t.start, node});
  m.run(t.start, node);
  return out;
}

namespace {

const std::set<MaskSeq>& accepted_from(
    const CompiledTransducer& t, uint32_t state, size_t budget,
    std::map<std::pair<uint32_t, size_t>, std::set<MaskSeq>>& memo) {
  auto key = std::make_pair(state, budget);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  std::set<MaskSeq> result;
  if (t.accepts(state)) result.insert(MaskSeq{});
  if (budget > 0) {
    for (const auto& arc : t.arcs_from(state)) {
      const auto& tails = accepted_from(t, arc.to, budget - 1, memo);
      for (const auto& tail : tails) {
        MaskSeq seq;
        seq.reserve(tail.size() + 1);
        seq.push_back(arc.mask);
        seq.insert(seq.end(), tail.begin(), tail.end());
        result.insert(std::move(seq));
      }
    }
  }
  return memo.emplace(std::move(key), std::move(result)).first->second;
}

}  // namespace

std::set<MaskSeq> enumerate_accepted(const CompiledTransducer& t,
                                     size_t max_len) {
  std::map<std::pair<uint32_t, size_t>, std::set<MaskSeq>> memo;
  return accepted_from(t, t.start, max_len, memo);
}

}  // namespace lgg
