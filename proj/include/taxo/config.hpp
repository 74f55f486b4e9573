#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "taxo/corpus.hpp"
#include "taxo/extractors.hpp"
#include "taxo/relations.hpp"

namespace taxo {

// Declarative description of an end-to-end run. Read from an INI-style file:
//
//   [corpus]      path (comma-separated list), language, pos_map, pseudo_documents
//   [gold]        path
//   [vocabulary]  size, window
//   [methods]     list (comma-separated method names)
//   [patt]        patterns
//   [dsim]        measure
//   [slqs]        top_contexts
//   [docsub]      lambda (comma-separated)
//   [hclust]      clusters (comma-separated)
//   [output]      dir, best_parent
//
// Relative paths resolve against the config file's directory.
struct RunConfig {
  std::vector<std::filesystem::path> corpus_paths;
  Language language = Language::EN;
  std::optional<std::filesystem::path> pos_map;
  bool pseudo_documents = false;
  std::filesystem::path gold_path;
  std::size_t vocabulary_size = 1000;
  int window_size = 5;
  std::vector<Method> methods;
  std::optional<std::filesystem::path> patterns;
  DirectionalMeasure measure = DirectionalMeasure::ClarkeDE;
  std::size_t top_contexts = 50;
  std::vector<double> lambdas{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::vector<std::size_t> clusters{100};
  std::filesystem::path output_dir;
  bool best_parent = false;
};

// `overrides` hold "section.key=value" strings applied after the file.
// Throws Error on syntax errors or values of the wrong type.
RunConfig parse_config(std::istream& in, const std::filesystem::path& base_dir,
                       const std::vector<std::string>& overrides = {});
RunConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides = {});

// Human-readable problems; empty iff a run may start.
std::vector<std::string> validate(const RunConfig& config);

// Stable key=value rendering of every parameter (used for the config hash).
std::string canonical_form(const RunConfig& config);

}  // namespace taxo
