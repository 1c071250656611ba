#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lgg/annotate.h"

namespace lgg {

struct GoldAnnotation {
  Span span;
  Category category = Category::None;
  MweTag tag = MweTag::None;
  friend auto operator<=>(const GoldAnnotation&,
                          const GoldAnnotation&) = default;
};

struct GoldDocument {
  std::string text;  // untagged
  std::vector<GoldAnnotation> annotations;
};

struct GoldParseError : std::runtime_error {
  size_t offset;  // codepoint offset into the tagged text
  GoldParseError(size_t off, const std::string& msg)
      : std::runtime_error(msg + " at offset " + std::to_string(off)),
        offset(off) {}
};

// Reads the render() format back: <CATEGORY_TAG>...</TAG>, non-nested.
// Spans are re-based to the untagged text, so render(parse_gold(x)) == x.
GoldDocument parse_gold(std::string_view tagged);

struct EvalCounts {
  size_t tp = 0;
  size_t fp = 0;
  size_t fn = 0;
  size_t tag_mismatches = 0;  // TPs whose polarity/entity tag differs
};

struct EvalRow {
  EvalCounts counts;
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
  bool precision_defined = false;  // false when tp+fp == 0
  bool recall_defined = false;     // false when tp+fn == 0
  bool f_defined = false;          // false when precision+recall == 0
};

EvalRow make_row(const EvalCounts& counts);

constexpr std::array<Category, 4> kEvalCategories = {
    Category::SMWE, Category::DMWE, Category::EMWE, Category::FMWE};

struct EvalReport {
  std::array<EvalRow, 4> per_category;  // kEvalCategories order
  EvalRow total;                        // micro: summed counts

  EvalRow& row(Category c) { return per_category.at(static_cast<size_t>(c)); }
  const EvalRow& row(Category c) const {
    return per_category.at(static_cast<size_t>(c));
  }
};

// A true positive is an exact (span, category) match; the tag value may
// differ and is then counted in tag_mismatches. Predictions must refer
// to gold.text (std::invalid_argument otherwise).
EvalReport score(const std::vector<Annotation>& pred,
                 const GoldDocument& gold);

EvalRow aggregate(const EvalReport& report);
EvalReport report_from_counts(const std::array<EvalCounts, 4>& counts);
EvalReport merge(const EvalReport& a, const EvalReport& b);

std::string to_tsv(const EvalReport& report);
// Table layout: one column per category plus Total.
std::string summary(const EvalReport& report);

}  // namespace lgg
