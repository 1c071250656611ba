#include <doctest.h>

#include <random>

#include "lgg/fstcore.h"
#include "support.h"

using namespace lgg;

namespace {

const char* kFigureChain =
    "GRAPH CatchFancy CATEGORY SMWE TAG QXPO\n"
    "START s\n"
    "FINAL f\n"
    "ARC s a \"마음\"\n"
    "ARC a b <JN>\n"
    "ARC b c <들다>\n"
    "ARC c f <EV>\n"
    "END\n"
    "MAIN CatchFancy\n";

const char* kChainLexicon =
    "CLASS\tJN1\tJN\t이,을,에\n"
    "CLASS\tEV1\tEV\t다,어요,었다\n"
    "마음\t-\tN\t-\tJN1\n"
    "들\t들다\tV\t-\tEV1\n";

}  // namespace

TEST_CASE("figure chain compiles to a five-state chain") {
  GrammarSet gs = parse_grammar(std::string_view(kFigureChain));
  CompiledTransducer t = compile(gs);
  CHECK(t.state_count() == 5);
  auto accepted = enumerate_accepted(t, 8);
  CHECK(accepted == graph_language(gs, "CatchFancy", 8));
  REQUIRE(accepted.size() == 1);
  CHECK(accepted.begin()->size() == 4);
}

TEST_CASE("empty-main transducer accepts only the empty sequence") {
  GrammarSet gs = parse_grammar(std::string_view(
      "GRAPH g CATEGORY SMWE TAG QXPO\nSTART s\nFINAL s\nEND\nMAIN g\n"));
  CompiledTransducer t = compile(gs);
  auto accepted = enumerate_accepted(t, 8);
  REQUIRE(accepted.size() == 1);
  CHECK(accepted.count(MaskSeq{}) == 1);
  // and no masks survive at all
  for (const auto& v : t.arcs) CHECK(v.empty());
}

TEST_CASE("optional brand subgraph compiles to both variants") {
  GrammarSet gs = parse_grammar(std::string_view(
      "GRAPH Product CATEGORY EMWE TAG XXPR\n"
      "START s\nFINAL f\n"
      "ARC s m @BrandName\nARC s m <E>\nARC m f \"에센스\"\nEND\n"
      "GRAPH BrandName\nSTART s\nFINAL f\nARC s f \"헤라\"\nEND\n"
      "MAIN Product\n"));
  CompiledTransducer t = compile(gs);
  auto accepted = enumerate_accepted(t, 8);
  CHECK(accepted.size() == 2);
  for (const auto& [state, recs] : t.finals)
    for (const auto& r : recs) {
      CHECK(r.graph == "Product");
      CHECK(r.category == Category::EMWE);
    }
}

TEST_CASE("no epsilon or call masks survive compilation") {
  std::mt19937 rng(4242);
  for (int i = 0; i < 50; ++i) {
    GrammarSet gs = testsupport::random_grammar_set(rng);
    CompiledTransducer t = compile(gs);
    for (const auto& v : t.arcs)
      for (const auto& a : v) {
        CHECK(a.mask.kind != Mask::Kind::Epsilon);
        CHECK(a.mask.kind != Mask::Kind::Call);
      }
    for (const auto& [state, recs] : t.finals) CHECK(!recs.empty());
  }
}

TEST_CASE("state cap aborts pathological inlining") {
  // doubling chain of calls: g_k inlines two copies of g_{k+1}
  std::string src;
  const int depth = 15;
  for (int k = 0; k < depth; ++k) {
    std::string header = "GRAPH g" + std::to_string(k);
    if (k == 0) header += " CATEGORY SMWE TAG QXPO";
    src += header + "\nSTART s\nFINAL f\n";
    if (k + 1 < depth) {
      src += "ARC s m @g" + std::to_string(k + 1) + "\n";
      src += "ARC m f @g" + std::to_string(k + 1) + "\n";
    } else {
      src += "ARC s f \"가\"\n";
    }
    src += "END\n";
  }
  src += "MAIN g0\n";
  GrammarSet gs = parse_grammar(std::string_view(src));
  CHECK_THROWS_AS(compile(gs), CompileError);
}

TEST_CASE("mask_matches on token kinds") {
  Lexicon lex = load_lexicon(std::string_view(
      "CLASS\tEV1\tEV\t다\n"
      "들\t들다\tV\t-\tEV1\n"
      "좋\t좋다\tA\tQXPO\tEV1\n"));
  auto seqs = segment_eojeol(lex, "들다");
  REQUIRE(seqs.size() == 1);
  const MorphToken& stem = seqs[0][0];
  const MorphToken& suffix = seqs[0][1];

  CHECK(mask_matches(Mask::lemma("들다"), stem));
  CHECK(mask_matches(Mask::lemma("들다", PosTag::V), stem));
  CHECK_FALSE(mask_matches(Mask::lemma("들다", PosTag::A), stem));
  CHECK_FALSE(mask_matches(Mask::lemma("들"), stem));
  CHECK(mask_matches(Mask::category(CatCode::EV), suffix));
  CHECK_FALSE(mask_matches(Mask::category(CatCode::EV),
                           segment_eojeol(lex, "좋다")[0][0]));
  CHECK(mask_matches(Mask::category(CatCode::QXPO),
                     segment_eojeol(lex, "좋다")[0][0]));
  CHECK(mask_matches(Mask::literal("들"), stem));
  CHECK_FALSE(mask_matches(Mask::literal("들다"), stem));

  MorphToken unknown{"왠지", nullptr, PosTag::Unk, {0, 2}};
  CHECK(mask_matches(Mask::literal("왠지"), unknown));
  CHECK_FALSE(mask_matches(Mask::literal("왠"), unknown));
  CHECK_FALSE(mask_matches(Mask::category(CatCode::N), unknown));
  CHECK_FALSE(mask_matches(Mask::lemma("왠지"), unknown));
  CHECK_FALSE(mask_matches(Mask::epsilon(), stem));
  CHECK_FALSE(mask_matches(Mask::call("g"), stem));
}

TEST_CASE("match_from walks the lattice end to end") {
  Lexicon lex = load_lexicon(std::string_view(kChainLexicon));
  GrammarSet gs = parse_grammar(std::string_view(kFigureChain));
  CompiledTransducer t = compile(gs);

  SentenceLattice lat = build_lattice(lex, "마음에 들어요");
  auto matches = match_from(t, lat, 0);
  REQUIRE(matches.size() == 1);
  CHECK(matches[0].start_node == 0);
  CHECK(matches[0].end_node == 7);
  CHECK(matches[0].tokens.size() == 4);
  CHECK(matches[0].accept->graph == "CatchFancy");

  // absent keyword: no match anywhere
  SentenceLattice none = build_lattice(lex, "들어요 들어요");
  for (size_t node : none.nodes) CHECK(match_from(t, none, node).empty());
}

TEST_CASE("DS arc admits zero to three adverbs") {
  Lexicon lex = load_lexicon(std::string_view(
      "CLASS\tJN2\tJN\t가\n"
      "CLASS\tEV1\tEV\t다\n"
      "커버\t-\tN\t-\tJN2\n"
      "되\t되다\tV\t-\tEV1\n"
      "잘\t-\tD\t-\t-\n"
      "아주\t-\tD\t-\t-\n"));
  GrammarSet gs = parse_grammar(std::string_view(
      "GRAPH Cover CATEGORY DMWE TAG QXPO\n"
      "START s\nFINAL f\n"
      "ARC s a \"커버\"\nARC a b <JN>\nARC b c <DS>\n"
      "ARC c d <되다>\nARC d f <EV>\nEND\nMAIN Cover\n"));
  CompiledTransducer t = compile(gs);

  auto covers = [&](const std::string& sentence, size_t tokens) {
    SentenceLattice lat = build_lattice(lex, sentence);
    auto ms = match_from(t, lat, 0);
    REQUIRE(ms.size() == 1);
    CHECK(ms[0].tokens.size() == tokens);
    CHECK(ms[0].end_node == lat.length());
  };
  covers("커버가 되다", 4);
  covers("커버가 잘 되다", 5);
  covers("커버가 아주 잘 되다", 6);
  covers("커버가 아주 아주 잘 되다", 7);

  // four adverbs exceed the cap
  SentenceLattice lat = build_lattice(lex, "커버가 아주 아주 아주 잘 되다");
  CHECK(match_from(t, lat, 0).empty());
}

TEST_CASE("matches stay inside the lattice") {
  Lexicon lex = load_lexicon(std::string_view(kChainLexicon));
  GrammarSet gs = parse_grammar(std::string_view(kFigureChain));
  CompiledTransducer t = compile(gs);
  SentenceLattice lat = build_lattice(lex, "마음에 들어요 마음에 들었다");
  for (size_t node : lat.nodes) {
    for (const auto& m : match_from(t, lat, node)) {
      size_t at = m.start_node;
      for (const auto& tok : m.tokens) {
        size_t hop = lat.skip_space(at);
        CHECK(tok.span.begin == hop);
        bool found = false;
        for (const auto& e : lat.edges_at(hop))
          if (e.span == tok.span && e.surface == tok.surface) found = true;
        CHECK(found);
        at = tok.span.end;
      }
      CHECK(at == m.end_node);
    }
  }
}

TEST_CASE("compiled language equals direct RTN enumeration") {
  std::mt19937 rng(123456);
  for (int i = 0; i < 120; ++i) {
    GrammarSet gs = testsupport::random_grammar_set(rng);
    REQUIRE(validate(gs).empty());
    CompiledTransducer t = compile(gs);
    std::set<MaskSeq> expected;
    for (const auto& main : gs.mains)
      for (const auto& seq : graph_language(gs, main, 8))
        expected.insert(seq);
    CHECK(enumerate_accepted(t, 8) == expected);
  }
}

TEST_CASE("accepted sequences are matched on a realizing lattice") {
  const Lexicon& lex = testsupport::realization_lexicon();
  std::mt19937 rng(98765);
  int checked = 0;
  for (int i = 0; i < 60 && checked < 150; ++i) {
    GrammarSet gs = testsupport::random_grammar_set(rng);
    CompiledTransducer t = compile(gs);
    for (const auto& seq : graph_language(gs, "g0", 6)) {
      if (seq.empty()) continue;
      std::string sentence = testsupport::realize_sequence(seq);
      SentenceLattice lat = build_lattice(lex, sentence);
      bool end_to_end = false;
      for (const auto& m : match_from(t, lat, 0))
        if (m.end_node == lat.length()) end_to_end = true;
      CAPTURE(sentence);
      CHECK(end_to_end);
      ++checked;
    }
  }
  CHECK(checked > 50);
}

TEST_CASE("literal sequences outside the language are rejected") {
  // restricted to DS-free sets: a <DS> arc may consume zero tokens, so
  // only there does end-to-end matching pin the mask sequence exactly
  const Lexicon& lex = testsupport::realization_lexicon();
  std::mt19937 rng(22222);
  std::vector<std::string> alphabet{"가", "나", "바"};
  int negatives = 0;
  for (int i = 0; i < 80; ++i) {
    GrammarSet gs = testsupport::random_grammar_set(rng);
    bool has_ds = false;
    for (const auto& [name, g] : gs.graphs)
      for (const auto& arc : g.arcs)
        if (arc.mask.kind == Mask::Kind::Category &&
            arc.mask.code == CatCode::DS)
          has_ds = true;
    if (has_ds) continue;
    CompiledTransducer t = compile(gs);
    auto language = graph_language(gs, "g0", 8);
    for (int k = 0; k < 8; ++k) {
      std::uniform_int_distribution<size_t> len(1, 4);
      MaskSeq seq;
      size_t n = len(rng);
      for (size_t j = 0; j < n; ++j) {
        std::uniform_int_distribution<size_t> pick(0, alphabet.size() - 1);
        seq.push_back(Mask::literal(alphabet[pick(rng)]));
      }
      if (language.count(seq)) continue;
      std::string sentence = testsupport::realize_sequence(seq);
      SentenceLattice lat = build_lattice(lex, sentence);
      for (const auto& m : match_from(t, lat, 0))
        CHECK(m.end_node != lat.length());
      ++negatives;
    }
  }
  CHECK(negatives > 100);
}

TEST_CASE("epsilon arc outputs survive elimination") {
  Lexicon lex = load_lexicon(std::string_view(kChainLexicon));
  // epsilon before the real arc: output prepends
  CompiledTransducer before = compile(parse_grammar(std::string_view(
      "GRAPH G CATEGORY FMWE TAG XQFT\nSTART s\nFINAL f\n"
      "ARC s a <E> OUTPUT \"p\"\nARC a f \"마음\" OUTPUT \"q\"\n"
      "END\nMAIN G\n")));
  SentenceLattice lat = build_lattice(lex, "마음");
  auto ms = match_from(before, lat, 0);
  REQUIRE(ms.size() == 1);
  CHECK(ms[0].outputs == "pq");

  // epsilon into the final: output lands in the accept record
  CompiledTransducer after = compile(parse_grammar(std::string_view(
      "GRAPH G CATEGORY FMWE TAG XQFT\nSTART s\nFINAL f\n"
      "ARC s a \"마음\" OUTPUT \"x\"\nARC a f <E> OUTPUT \"y\"\n"
      "END\nMAIN G\n")));
  auto ms2 = match_from(after, lat, 0);
  REQUIRE(ms2.size() == 1);
  CHECK(ms2[0].outputs == "xy");
}

TEST_CASE("debug dump lists states and accepts") {
  GrammarSet gs = parse_grammar(std::string_view(kFigureChain));
  CompiledTransducer t = compile(gs);
  std::string dump = t.dump();
  CHECK(dump.find("states 5") != std::string::npos);
  CHECK(dump.find("CatchFancy") != std::string::npos);
  CHECK(dump.find("SMWE_QXPO") != std::string::npos);
}
