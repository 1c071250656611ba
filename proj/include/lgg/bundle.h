#pragma once

#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>

#include "lgg/fstcore.h"
#include "lgg/lexicon.h"

namespace lgg {

inline constexpr int kBundleVersion = 1;

struct BundleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Bundle {
  Lexicon lexicon;
  CompiledTransducer transducer;
};

// Versioned textual bundle; serialization is canonical, so identical
// inputs produce byte-identical bundles.
std::string serialize_bundle(const Lexicon& lexicon,
                             const CompiledTransducer& t);
Bundle load_bundle(std::istream& in);
Bundle load_bundle_file(const std::filesystem::path& path);

}  // namespace lgg
