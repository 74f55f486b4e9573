#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "taxo/config.hpp"
#include "taxo/contexts.hpp"
#include "taxo/corpus.hpp"
#include "taxo/evaluation.hpp"
#include "taxo/gold.hpp"
#include "taxo/patterns.hpp"
#include "taxo/relations.hpp"
#include "taxo/taxonomy.hpp"
#include "taxo/weighting.hpp"

namespace taxo {

// A failure inside a named pipeline stage.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& cause)
      : Error("stage '" + stage + "' failed: " + cause), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

// Everything the extractors read. Weighted views are built lazily.
class ExtractionInputs {
 public:
  ExtractionInputs(Corpus corpus, ContextMatrix window, ContextMatrix documents, TermSet vocab);

  const Corpus& corpus() const { return corpus_; }
  const ContextMatrix& window() const { return window_; }
  const ContextMatrix& documents() const { return documents_; }
  const TermSet& vocab() const { return vocab_; }
  const WeightedMatrix& ppmi() const;
  const WeightedMatrix& lmi() const;
  const EntropyTable& entropies() const;

 private:
  Corpus corpus_;
  ContextMatrix window_;
  ContextMatrix documents_;
  TermSet vocab_;
  mutable std::optional<WeightedMatrix> ppmi_, lmi_;
  mutable std::optional<EntropyTable> entropies_;
};

struct MethodParams {
  Method method = Method::TF;
  DirectionalMeasure measure = DirectionalMeasure::ClarkeDE;
  std::size_t top_contexts = 50;
  double lambda = 0.1;
  std::size_t clusters = 100;
  const PatternSet* patterns = nullptr;  // defaults for the corpus language when null
};

RelationSet extract(const ExtractionInputs& inputs, const MethodParams& params);

// Loads the corpus (concatenating several paths), optionally splitting it
// into one document per sentence.
Corpus load_corpora(const std::vector<std::filesystem::path>& paths, Language language,
                    const std::optional<std::filesystem::path>& pos_map, bool pseudo_documents);

// Taxonomy metrics as written by the pipeline: cycles broken, transitively
// reduced. nullopt when the relation set is empty.
std::optional<HierarchyMetrics> reduced_metrics(const Taxonomy& t);

struct RunResult {
  std::string config_hash;
  std::vector<std::filesystem::path> files;  // every output, manifest last
};

// Full pipeline. On failure, every file written so far is removed and a
// StageError naming the stage is thrown.
RunResult run(const RunConfig& config);

std::string sha256_hex(std::string_view data);
std::string file_sha256(const std::filesystem::path& path);

}  // namespace taxo
