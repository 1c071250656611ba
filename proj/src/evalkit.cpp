#include "lgg/evalkit.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include "lgg/utf8.h"

namespace lgg {

namespace {

struct TagSpec {
  std::string open;  // "<SMWE_QXPO>"
  Category category;
  MweTag tag;
};

const std::vector<TagSpec>& tag_specs() {
  static const std::vector<TagSpec> specs = [] {
    std::vector<TagSpec> out;
    for (Category c : kEvalCategories) {
      for (MweTag t : {MweTag::QXPO, MweTag::QXNG, MweTag::XXPR,
                       MweTag::XQFT}) {
        bool ok = ((t == MweTag::QXPO || t == MweTag::QXNG) &&
                   (c == Category::SMWE || c == Category::DMWE)) ||
                  (t == MweTag::XXPR && c == Category::EMWE) ||
                  (t == MweTag::XQFT && c == Category::FMWE);
        if (!ok) continue;
        out.push_back({"<" + std::string(to_string(c)) + "_" +
                           std::string(to_string(t)) + ">",
                       c, t});
      }
    }
    return out;
  }();
  return specs;
}

std::string close_tag(MweTag t) {
  return "</" + std::string(to_string(t)) + ">";
}

std::string fmt3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

GoldDocument parse_gold(std::string_view tagged) {
  GoldDocument doc;
  auto bounds = utf8::boundaries(tagged);
  size_t n = bounds.size() - 1;

  bool open = false;
  Category open_cat = Category::None;
  MweTag open_tag = MweTag::None;
  size_t open_start = 0;  // codepoint offset in untagged text
  size_t out_cp = 0;

  size_t cp = 0;
  while (cp < n) {
    std::string_view rest = tagged.substr(bounds[cp]);
    if (rest.front() == '<') {
      bool handled = false;
      for (const TagSpec& spec : tag_specs()) {
        if (rest.rfind(spec.open, 0) == 0) {
          if (open) throw GoldParseError(cp, "nested annotation tag");
          open = true;
          open_cat = spec.category;
          open_tag = spec.tag;
          open_start = out_cp;
          cp += utf8::length(spec.open);
          handled = true;
          break;
        }
      }
      if (!handled) {
        for (MweTag t : {MweTag::QXPO, MweTag::QXNG, MweTag::XXPR,
                         MweTag::XQFT}) {
          std::string close = close_tag(t);
          if (rest.rfind(close, 0) == 0) {
            if (!open || t != open_tag)
              throw GoldParseError(cp, "unbalanced closing tag " + close);
            if (out_cp == open_start)
              throw GoldParseError(cp, "empty annotation span");
            doc.annotations.push_back(
                {{open_start, out_cp}, open_cat, open_tag});
            open = false;
            cp += utf8::length(close);
            handled = true;
            break;
          }
        }
      }
      if (handled) continue;
    }
    doc.text.append(tagged.substr(bounds[cp], bounds[cp + 1] - bounds[cp]));
    ++out_cp;
    ++cp;
  }
  if (open) throw GoldParseError(cp, "annotation tag never closed");
  return doc;
}

EvalRow make_row(const EvalCounts& counts) {
  EvalRow row;
  row.counts = counts;
  size_t pred = counts.tp + counts.fp;
  size_t gold = counts.tp + counts.fn;
  row.precision_defined = pred > 0;
  row.recall_defined = gold > 0;
  if (row.precision_defined)
    row.precision = static_cast<double>(counts.tp) / static_cast<double>(pred);
  if (row.recall_defined)
    row.recall = static_cast<double>(counts.tp) / static_cast<double>(gold);
  row.f_defined = row.precision + row.recall > 0.0;
  if (row.f_defined)
    row.f_measure =
        2.0 * row.precision * row.recall / (row.precision + row.recall);
  return row;
}

EvalReport score(const std::vector<Annotation>& pred,
                 const GoldDocument& gold) {
  utf8::Index idx(gold.text);
  for (const Annotation& a : pred) {
    if (a.span.end > idx.size() || a.span.begin > a.span.end ||
        idx.slice(a.span.begin, a.span.end) != a.surface)
      throw std::invalid_argument(
          "prediction does not match the gold document text");
  }

  std::map<Span, const Annotation*> pred_by_span;
  for (const Annotation& a : pred) pred_by_span[a.span] = &a;

  std::array<EvalCounts, 4> counts{};
  std::set<Span> matched;
  for (const GoldAnnotation& g : gold.annotations) {
    auto& c = counts[static_cast<size_t>(g.category)];
    auto it = pred_by_span.find(g.span);
    if (it != pred_by_span.end() && it->second->category == g.category) {
      c.tp++;
      if (it->second->tag != g.tag) c.tag_mismatches++;
      matched.insert(g.span);
    } else {
      c.fn++;
    }
  }
  for (const Annotation& a : pred)
    if (!matched.count(a.span))
      counts[static_cast<size_t>(a.category)].fp++;

  return report_from_counts(counts);
}

EvalRow aggregate(const EvalReport& report) {
  EvalCounts sum;
  for (const EvalRow& row : report.per_category) {
    sum.tp += row.counts.tp;
    sum.fp += row.counts.fp;
    sum.fn += row.counts.fn;
    sum.tag_mismatches += row.counts.tag_mismatches;
  }
  return make_row(sum);
}

EvalReport report_from_counts(const std::array<EvalCounts, 4>& counts) {
  EvalReport report;
  for (size_t i = 0; i < counts.size(); ++i)
    report.per_category[i] = make_row(counts[i]);
  report.total = aggregate(report);
  return report;
}

EvalReport merge(const EvalReport& a, const EvalReport& b) {
  std::array<EvalCounts, 4> counts{};
  for (size_t i = 0; i < counts.size(); ++i) {
    counts[i].tp = a.per_category[i].counts.tp + b.per_category[i].counts.tp;
    counts[i].fp = a.per_category[i].counts.fp + b.per_category[i].counts.fp;
    counts[i].fn = a.per_category[i].counts.fn + b.per_category[i].counts.fn;
    counts[i].tag_mismatches = a.per_category[i].counts.tag_mismatches +
                               b.per_category[i].counts.tag_mismatches;
  }
  return report_from_counts(counts);
}

std::string to_tsv(const EvalReport& report) {
  std::ostringstream out;
  out << "category\ttp\tfp\tfn\tprecision\trecall\tf_measure\t"
         "precision_defined\trecall_defined\tf_defined\ttag_mismatches\n";
  auto emit = [&](std::string_view name, const EvalRow& row) {
    out << name << "\t" << row.counts.tp << "\t" << row.counts.fp << "\t"
        << row.counts.fn << "\t" << fmt6(row.precision) << "\t"
        << fmt6(row.recall) << "\t" << fmt6(row.f_measure) << "\t"
        << (row.precision_defined ? 1 : 0) << "\t"
        << (row.recall_defined ? 1 : 0) << "\t" << (row.f_defined ? 1 : 0)
        << "\t" << row.counts.tag_mismatches << "\n";
  };
  for (size_t i = 0; i < kEvalCategories.size(); ++i)
    emit(to_string(kEvalCategories[i]), report.per_category[i]);
  emit("Total", report.total);
  return out.str();
}

std::string summary(const EvalReport& report) {
  std::ostringstream out;
  auto cell = [](const std::string& s) {
    std::string padded = s;
    while (padded.size() < 7) padded += ' ';
    return padded;
  };
  out << "           ";
  for (Category c : kEvalCategories) out << cell(std::string(to_string(c)));
  out << "Total\n";
  auto line = [&](std::string_view label, auto get) {
    out << label;
    for (const EvalRow& row : report.per_category) out << cell(get(row));
    out << get(report.total) << "\n";
  };
  auto p = [&](const EvalRow& r) {
    return r.precision_defined ? fmt3(r.precision) : std::string("-");
  };
  auto rcl = [&](const EvalRow& r) {
    return r.recall_defined ? fmt3(r.recall) : std::string("-");
  };
  auto f = [&](const EvalRow& r) {
    return r.f_defined ? fmt3(r.f_measure) : std::string("-");
  };
  line("Precision  ", p);
  line("Recall     ", rcl);
  line("F-Measure  ", f);
  return out.str();
}

}  // namespace lgg
