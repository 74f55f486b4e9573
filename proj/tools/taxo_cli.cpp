#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "taxo/config.hpp"
#include "taxo/contexts.hpp"
#include "taxo/corpus.hpp"
#include "taxo/evaluation.hpp"
#include "taxo/extractors.hpp"
#include "taxo/gold.hpp"
#include "taxo/patterns.hpp"
#include "taxo/pipeline.hpp"
#include "taxo/relations.hpp"
#include "taxo/taxonomy.hpp"

namespace fs = std::filesystem;
using namespace taxo;

namespace {

struct CorpusOptions {
  std::vector<fs::path> paths;
  std::string language = "EN";
  std::optional<fs::path> pos_map;
  bool pseudo_documents = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("-c,--corpus", paths, "Tagged corpus file or directory")->required()->check(CLI::ExistingPath);
    cmd->add_option("-l,--language", language, "EN or PT");
    cmd->add_option("--pos-map", pos_map, "Fine-to-coarse POS tag table")->check(CLI::ExistingFile);
    cmd->add_flag("--pseudo-documents", pseudo_documents, "Treat every sentence as a document");
  }

  Corpus load() const { return load_corpora(paths, parse_language(language), pos_map, pseudo_documents); }
};

// Writes to `path`, or stdout when empty.
template <typename F>
void emit(const std::optional<fs::path>& path, F&& write) {
  if (!path) {
    write(std::cout);
    return;
  }
  std::ofstream out(*path);
  if (!out) throw Error("cannot write " + path->string());
  write(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Taxonomy relation extraction and evaluation"};
  app.require_subcommand(1);

  CorpusOptions corpus_opts;
  std::optional<fs::path> out_path;

  auto* stats = app.add_subcommand("stats", "Corpus statistics");
  corpus_opts.attach(stats);
  stats->callback([&] {
    const auto s = corpus_stats(corpus_opts.load());
    fmt::print("documents\t{}\nsentences\t{}\ncontent_words\t{}\nvocabulary\t{}\n", s.num_documents,
               s.num_sentences, s.num_content_words, s.vocabulary_size);
  });

  std::string model = "window";
  int window = 5;
  auto* contexts = app.add_subcommand("contexts", "Term-context co-occurrence matrix");
  corpus_opts.attach(contexts);
  contexts->add_option("-m,--model", model, "window or document")->check(CLI::IsMember({"window", "document"}));
  contexts->add_option("-w,--window", window, "Window size (odd, >= 3)");
  contexts->add_option("-o,--out", out_path, "Output TSV (default stdout)");
  contexts->callback([&] {
    const Corpus corpus = corpus_opts.load();
    const ContextMatrix m =
        model == "window" ? extract_window_contexts(corpus, window) : extract_document_contexts(corpus);
    emit(out_path, [&](std::ostream& os) { write_matrix(m, os); });
  });

  fs::path gold_path;
  std::size_t vocab_size = 1000;
  std::string method_name;
  std::string measure_name = "ClarkeDE";
  std::size_t top_contexts = 50;
  double lambda = 0.1;
  std::size_t clusters = 100;
  std::optional<fs::path> patterns_path;
  auto* extract_cmd = app.add_subcommand("extract", "Extract hypernym relations with one method");
  corpus_opts.attach(extract_cmd);
  extract_cmd->add_option("-g,--gold", gold_path, "Gold taxonomy (selects the vocabulary)")
      ->required()
      ->check(CLI::ExistingFile);
  extract_cmd->add_option("-M,--method", method_name, "Patt, DSim, SLQS, TF, DF, DocSub or HClust")->required();
  extract_cmd->add_option("-n,--vocab-size", vocab_size, "Number of terms");
  extract_cmd->add_option("-w,--window", window, "Window size");
  extract_cmd->add_option("--measure", measure_name, "DSim measure: WeedsPrec or ClarkeDE");
  extract_cmd->add_option("--top-contexts", top_contexts, "SLQS top-N contexts");
  extract_cmd->add_option("--lambda", lambda, "DocSub threshold");
  extract_cmd->add_option("-k,--clusters", clusters, "HClust cluster count");
  extract_cmd->add_option("--patterns", patterns_path, "Pattern template file")->check(CLI::ExistingFile);
  extract_cmd->add_option("-o,--out", out_path, "Output TSV (default stdout)");
  extract_cmd->callback([&] {
    Corpus corpus = corpus_opts.load();
    const GoldTaxonomy gold = load_gold(gold_path);
    ContextMatrix win = extract_window_contexts(corpus, window);
    ContextMatrix docs = extract_document_contexts(corpus);
    TermSet vocab = select_vocabulary(win, gold, vocab_size);
    std::optional<PatternSet> patterns;
    if (patterns_path) patterns = PatternSet::load(*patterns_path, corpus.language);
    ExtractionInputs inputs(std::move(corpus), std::move(win), std::move(docs), std::move(vocab));
    MethodParams p;
    p.method = parse_method(method_name);
    p.measure = parse_measure(measure_name);
    p.top_contexts = top_contexts;
    p.lambda = lambda;
    p.clusters = clusters;
    p.patterns = patterns ? &*patterns : nullptr;
    const RelationSet rels = extract(inputs, p);
    emit(out_path, [&](std::ostream& os) { write_relations(rels, os); });
  });

  fs::path relations_path;
  auto* filter = app.add_subcommand("filter-parent", "Keep the best-scoring parent of every term");
  corpus_opts.attach(filter);
  filter->add_option("-r,--relations", relations_path, "Relations TSV")->required()->check(CLI::ExistingFile);
  filter->add_option("-o,--out", out_path, "Output TSV (default stdout)");
  filter->callback([&] {
    const RelationSet rels = read_relations_file(relations_path);
    const ContextMatrix docs = extract_document_contexts(corpus_opts.load());
    const Taxonomy t = best_parent_filter(build_taxonomy(rels), docs);
    const RelationSet kept = to_relations(t, rels.method());
    emit(out_path, [&](std::ostream& os) { write_relations(kept, os); });
  });

  bool as_json = false;
  auto* metrics = app.add_subcommand("metrics", "Hierarchy metrics of the reduced taxonomy");
  metrics->add_option("-r,--relations", relations_path, "Relations TSV")->required()->check(CLI::ExistingFile);
  metrics->add_flag("--json", as_json, "JSON output");
  metrics->add_option("-o,--out", out_path, "Output file (default stdout)");
  metrics->callback([&] {
    const auto m = reduced_metrics(build_taxonomy(read_relations_file(relations_path)));
    if (!m) throw Error("no relations in " + relations_path.string());
    emit(out_path, [&](std::ostream& os) {
      if (as_json)
        os << metrics_json(*m) << '\n';
      else
        write_metrics(*m, os);
    });
  });

  auto* evaluate_cmd = app.add_subcommand("evaluate", "Precision, recall and F-measure against a gold taxonomy");
  evaluate_cmd->add_option("-r,--relations", relations_path, "Relations TSV")->required()->check(CLI::ExistingFile);
  evaluate_cmd->add_option("-g,--gold", gold_path, "Gold taxonomy")->required()->check(CLI::ExistingFile);
  evaluate_cmd->add_option("-o,--out", out_path, "Output JSON (default stdout)");
  evaluate_cmd->callback([&] {
    const EvalReport r = evaluate(read_relations_file(relations_path), load_gold(gold_path));
    if (r.no_shared_terms) std::cerr << "warning: no terms shared with the gold taxonomy\n";
    emit(out_path, [&](std::ostream& os) { os << report_json(r) << '\n'; });
  });

  std::vector<fs::path> relation_files;
  std::optional<fs::path> complement_gold;
  fs::path out_dir = ".";
  auto* complement = app.add_subcommand("complement", "Pairwise complementarity of relation sets");
  complement->add_option("-r,--relations", relation_files, "Relations TSVs (two or more)")
      ->required()
      ->expected(2, -1)
      ->check(CLI::ExistingFile);
  complement->add_option("-g,--gold", complement_gold, "Gold taxonomy for relative precision")
      ->check(CLI::ExistingFile);
  complement->add_option("-d,--out-dir", out_dir, "Directory for the CSV files");
  complement->callback([&] {
    std::vector<RelationSet> sets;
    for (const auto& f : relation_files) {
      RelationSet s = read_relations_file(f);
      if (s.method().empty()) s.set_method(f.stem().string());
      sets.push_back(std::move(s));
    }
    std::optional<GoldTaxonomy> gold;
    if (complement_gold) gold = load_gold(*complement_gold);
    const auto cm = complementarity_matrix(sets, gold ? &*gold : nullptr);
    fs::create_directories(out_dir);
    const auto write = [&](const char* name, const Eigen::MatrixXd& values) {
      emit(out_dir / name, [&](std::ostream& os) { write_csv(cm.methods, values, os); });
    };
    write("complementarity_direct.csv", cm.direct);
    write("complementarity_inverse.csv", cm.inverse);
    if (gold) write("relative_precision.csv", cm.relative_precision);
  });

  fs::path config_path;
  std::vector<std::string> overrides;
  bool validate_only = false;
  auto* run_cmd = app.add_subcommand("run", "End-to-end run from a config file");
  run_cmd->add_option("config", config_path, "Run configuration")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("-s,--set", overrides, "Override a key: section.key=value");
  run_cmd->add_flag("--validate", validate_only, "Only check the configuration");
  run_cmd->callback([&] {
    const RunConfig config = load_config(config_path, overrides);
    if (validate_only) {
      const auto problems = validate(config);
      for (const auto& p : problems) std::cerr << "problem: " << p << '\n';
      if (!problems.empty()) throw Error(fmt::format("{} problem(s) in {}", problems.size(), config_path.string()));
      return;
    }
    const RunResult result = run(config);
    fmt::print("config_hash\t{}\n", result.config_hash);
    for (const auto& f : result.files) fmt::print("wrote\t{}\n", f.string());
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
