// Command-line front end: compiles lexicon + grammars into a bundle,
// annotates text with it, and wraps the corpus/evaluation helpers.

#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "lgg/annotate.h"
#include "lgg/bundle.h"
#include "lgg/corpustools.h"
#include "lgg/evalkit.h"
#include "lgg/fstcore.h"
#include "lgg/grammar.h"
#include "lgg/lexicon.h"
#include "lgg/textio.h"
#include "lgg/utf8.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitResource = 2;  // lexicon/grammar/input content errors
constexpr int kExitMissingArtifact = 3;
constexpr int kExitInputMismatch = 4;

struct CliError {
  int code;
  std::string message;
};

void run_jobs(size_t jobs, size_t n, const std::function<void(size_t)>& fn) {
  jobs = std::max<size_t>(1, std::min(jobs, n));
  if (jobs <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> pool;
  for (size_t w = 0; w < jobs; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1))
          fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

lgg::Bundle open_bundle(const std::string& path) {
  if (!fs::exists(path))
    throw CliError{kExitMissingArtifact, "missing bundle: " + path};
  return lgg::load_bundle_file(path);
}

int cmd_compile(const std::string& lexicon_path,
                const std::vector<std::string>& grammar_paths,
                const std::string& out_path) {
  lgg::Lexicon lexicon = lgg::load_lexicon_file(lexicon_path);
  std::vector<fs::path> paths(grammar_paths.begin(), grammar_paths.end());
  lgg::GrammarSet gs = lgg::parse_grammar_files(paths);
  lgg::CompiledTransducer t = lgg::compile(gs);
  lgg::textio::write_file(out_path, lgg::serialize_bundle(lexicon, t));
  return kExitOk;
}

int cmd_annotate(const std::string& bundle_path,
                 const std::vector<std::string>& inputs,
                 const std::string& out_dir, size_t jobs) {
  lgg::Bundle bundle = open_bundle(bundle_path);
  fs::create_directories(out_dir);

  std::map<std::string, int> names;
  for (const auto& in : inputs)
    if (++names[fs::path(in).filename().string()] > 1)
      throw CliError{kExitUsage,
                     "duplicate input name: " + fs::path(in).filename().string()};

  run_jobs(jobs, inputs.size(), [&](size_t i) {
    std::string text = lgg::textio::read_file(inputs[i]);
    auto annotations =
        lgg::annotate(text, bundle.lexicon, bundle.transducer);
    fs::path out = fs::path(out_dir) / fs::path(inputs[i]).filename();
    lgg::textio::write_file(out, lgg::render(text, annotations));
  });
  return kExitOk;
}

int cmd_eval(const std::vector<std::string>& pred_paths,
             const std::vector<std::string>& gold_paths,
             const std::string& out_path, size_t jobs) {
  if (pred_paths.size() != gold_paths.size())
    throw CliError{kExitInputMismatch,
                   "prediction and gold file sets differ in size"};

  std::vector<std::pair<std::string, std::string>> pairs;
  if (pred_paths.size() == 1) {
    pairs.emplace_back(pred_paths[0], gold_paths[0]);
  } else {
    std::map<std::string, std::string> pred_by_name, gold_by_name;
    for (const auto& p : pred_paths)
      pred_by_name[fs::path(p).filename().string()] = p;
    for (const auto& g : gold_paths)
      gold_by_name[fs::path(g).filename().string()] = g;
    if (pred_by_name.size() != pred_paths.size() ||
        gold_by_name.size() != gold_paths.size())
      throw CliError{kExitInputMismatch, "duplicate file names in eval sets"};
    for (const auto& [name, p] : pred_by_name) {
      auto it = gold_by_name.find(name);
      if (it == gold_by_name.end())
        throw CliError{kExitInputMismatch, "no gold file named " + name};
      pairs.emplace_back(p, it->second);
    }
  }

  std::vector<lgg::EvalReport> reports(pairs.size());
  run_jobs(jobs, pairs.size(), [&](size_t i) {
    lgg::GoldDocument pred_doc =
        lgg::parse_gold(lgg::textio::read_file(pairs[i].first));
    lgg::GoldDocument gold =
        lgg::parse_gold(lgg::textio::read_file(pairs[i].second));
    if (pred_doc.text != gold.text)
      throw CliError{kExitInputMismatch,
                     "texts differ: " + pairs[i].first + " vs " +
                         pairs[i].second};
    std::vector<lgg::Annotation> pred;
    lgg::utf8::Index idx(pred_doc.text);
    for (const auto& g : pred_doc.annotations) {
      lgg::Annotation a;
      a.span = g.span;
      a.category = g.category;
      a.tag = g.tag;
      a.surface = std::string(idx.slice(g.span.begin, g.span.end));
      pred.push_back(std::move(a));
    }
    reports[i] = lgg::score(pred, gold);
  });

  lgg::EvalReport total = reports.empty() ? lgg::report_from_counts({})
                                          : reports[0];
  for (size_t i = 1; i < reports.size(); ++i)
    total = lgg::merge(total, reports[i]);

  std::cout << lgg::summary(total);
  if (!out_path.empty()) lgg::textio::write_file(out_path, lgg::to_tsv(total));
  return kExitOk;
}

lgg::Corpus load_corpora(const std::vector<std::string>& paths) {
  std::vector<std::string> sentences;
  for (const auto& p : paths) {
    lgg::Corpus c = lgg::load_corpus_file(p);
    for (auto& s : c.sentences) sentences.push_back(std::move(s));
  }
  return lgg::make_corpus(std::move(sentences));
}

void write_or_print(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content;
  else
    lgg::textio::write_file(out_path, content);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Korean multiword-expression annotator built on local "
               "grammar graphs compiled to finite-state transducers"};
  app.require_subcommand(1);

  std::string lexicon_path, bundle_path, out_path, pattern, filter;
  std::vector<std::string> grammar_paths, inputs, pred_paths, gold_paths;
  size_t window = 20;
  size_t jobs = 1;
  bool tsv = false;

  auto* compile = app.add_subcommand("compile", "build a resource bundle");
  compile->add_option("--lexicon", lexicon_path)->required()
      ->check(CLI::ExistingFile);
  compile->add_option("--grammar", grammar_paths)->required()
      ->check(CLI::ExistingFile);
  compile->add_option("--out", out_path)->required();

  auto* annotate = app.add_subcommand("annotate", "tag MWEs in text files");
  annotate->add_option("--bundle", bundle_path)->required();
  annotate->add_option("--out", out_path)->required();
  annotate->add_option("--jobs", jobs);
  annotate->add_option("inputs", inputs)->required()
      ->check(CLI::ExistingFile);

  auto* eval = app.add_subcommand("eval", "score tagged files against gold");
  eval->add_option("--pred", pred_paths)->required()
      ->check(CLI::ExistingFile);
  eval->add_option("--gold", gold_paths)->required()
      ->check(CLI::ExistingFile);
  eval->add_option("--out", out_path);
  eval->add_option("--jobs", jobs);

  auto* freq = app.add_subcommand("freq", "term-frequency table");
  freq->add_option("--lexicon", lexicon_path)->required()
      ->check(CLI::ExistingFile);
  freq->add_option("--filter", filter);
  freq->add_option("--out", out_path);
  freq->add_option("corpus", inputs)->required()->check(CLI::ExistingFile);

  auto* split = app.add_subcommand("split", "split corpus by polarity words");
  split->add_option("--lexicon", lexicon_path)->required()
      ->check(CLI::ExistingFile);
  split->add_option("--out", out_path)->required();
  split->add_option("corpus", inputs)->required()->check(CLI::ExistingFile);

  auto* concord = app.add_subcommand("concord", "keyword-in-context lines");
  concord->add_option("--lexicon", lexicon_path)->required()
      ->check(CLI::ExistingFile);
  concord->add_option("--pattern", pattern)->required();
  concord->add_option("--window", window);
  concord->add_flag("--tsv", tsv);
  concord->add_option("--out", out_path);
  concord->add_option("corpus", inputs)->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (compile->parsed())
      return cmd_compile(lexicon_path, grammar_paths, out_path);
    if (annotate->parsed())
      return cmd_annotate(bundle_path, inputs, out_path, jobs);
    if (eval->parsed()) return cmd_eval(pred_paths, gold_paths, out_path, jobs);
    if (freq->parsed()) {
      std::optional<lgg::SemTag> tag;
      if (!filter.empty()) {
        tag = lgg::parse_semtag(filter);
        if (!tag) throw CliError{kExitUsage, "unknown semtag " + filter};
      }
      lgg::Lexicon lexicon = lgg::load_lexicon_file(lexicon_path);
      auto table = lgg::term_frequency(load_corpora(inputs), lexicon, tag);
      write_or_print(out_path, lgg::to_tsv(table));
      return kExitOk;
    }
    if (split->parsed()) {
      lgg::Lexicon lexicon = lgg::load_lexicon_file(lexicon_path);
      auto [with, without] = lgg::split_by_polarity(load_corpora(inputs),
                                                    lexicon);
      auto dump = [](const lgg::Corpus& c) {
        std::string out;
        for (const auto& s : c.sentences) out += s + "\n";
        return out;
      };
      lgg::textio::write_file(out_path + ".with.txt", dump(with));
      lgg::textio::write_file(out_path + ".without.txt", dump(without));
      return kExitOk;
    }
    if (concord->parsed()) {
      lgg::Lexicon lexicon = lgg::load_lexicon_file(lexicon_path);
      auto lines =
          lgg::concordance(load_corpora(inputs), lexicon, pattern, window);
      write_or_print(out_path, tsv ? lgg::to_tsv(lines) : lgg::to_text(lines));
      return kExitOk;
    }
    return kExitUsage;
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const lgg::BundleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const lgg::LexiconError& e) {
    std::cerr << "error: lexicon: " << e.what() << "\n";
    return kExitResource;
  } catch (const lgg::GrammarError& e) {
    std::cerr << "error: grammar: " << e.what() << "\n";
    return kExitResource;
  } catch (const lgg::CompileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const lgg::GoldParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const lgg::utf8::DecodeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  }
}
