#include "taxo/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>
#include <openssl/evp.h>

namespace taxo {
namespace fs = std::filesystem;

ExtractionInputs::ExtractionInputs(Corpus corpus, ContextMatrix window, ContextMatrix documents, TermSet vocab)
    : corpus_(std::move(corpus)), window_(std::move(window)), documents_(std::move(documents)), vocab_(std::move(vocab)) {}

const WeightedMatrix& ExtractionInputs::ppmi() const {
  if (!ppmi_) ppmi_ = weight_ppmi(window_);
  return *ppmi_;
}

const WeightedMatrix& ExtractionInputs::lmi() const {
  if (!lmi_) lmi_ = weight_lmi(window_);
  return *lmi_;
}

const EntropyTable& ExtractionInputs::entropies() const {
  if (!entropies_) entropies_ = context_entropies(window_);
  return *entropies_;
}

RelationSet extract(const ExtractionInputs& in, const MethodParams& p) {
  switch (p.method) {
    case Method::Patt: {
      if (p.patterns) return extract_patterns(in.corpus(), *p.patterns, &in.vocab());
      return extract_patterns(in.corpus(), PatternSet::defaults(in.corpus().language), &in.vocab());
    }
    case Method::DSim: return extract_dsim(in.ppmi(), in.vocab(), p.measure);
    case Method::SLQS: return extract_slqs(in.lmi(), in.entropies(), in.vocab(), p.top_contexts);
    case Method::TF: return extract_tf(in.documents(), in.vocab());
    case Method::DF: return extract_df(in.documents(), in.vocab());
    case Method::DocSub: return extract_docsub(in.documents(), in.vocab(), p.lambda);
    case Method::HClust: {
      const std::size_t k = std::min(p.clusters, in.vocab().size());
      return extract_hclust(in.ppmi(), in.documents(), in.vocab(), k);
    }
  }
  throw Error("unhandled method");
}

Corpus load_corpora(const std::vector<fs::path>& paths, Language language, const std::optional<fs::path>& pos_map,
                    bool pseudo_documents) {
  const PosMapping mapping = pos_map ? PosMapping::load(*pos_map) : PosMapping{};
  Corpus corpus;
  corpus.language = language;
  std::set<std::string> ids;
  for (const auto& p : paths) {
    Corpus part = load_corpus(p, language, mapping);
    for (auto& doc : part.documents) {
      if (!ids.insert(doc.id).second) throw Error("duplicate document id across corpora: " + doc.id);
      corpus.documents.push_back(std::move(doc));
    }
  }
  if (corpus.documents.empty()) throw Error("empty corpus");
  return pseudo_documents ? sentences_as_documents(corpus) : corpus;
}

std::optional<HierarchyMetrics> reduced_metrics(const Taxonomy& t) {
  if (t.num_edges() == 0) return std::nullopt;
  return compute_metrics(transitive_reduction(break_cycles(t)));
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 computation failed");
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

std::string file_sha256(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return sha256_hex(buf.str());
}

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

struct Variant {
  std::string name;  // file stem
  MethodParams params;
};

std::vector<Variant> expand_variants(const RunConfig& c, const PatternSet* patterns) {
  std::vector<Variant> out;
  for (Method m : c.methods) {
    MethodParams base;
    base.method = m;
    base.measure = c.measure;
    base.top_contexts = c.top_contexts;
    base.patterns = patterns;
    const std::string stem = lower(to_string(m));
    if (m == Method::DocSub) {
      for (double l : c.lambdas) {
        auto p = base;
        p.lambda = l;
        out.push_back({fmt::format("{}_l{}", stem, l), p});
      }
    } else if (m == Method::HClust) {
      for (auto k : c.clusters) {
        auto p = base;
        p.clusters = k;
        out.push_back({fmt::format("{}_k{}", stem, k), p});
      }
    } else {
      out.push_back({stem, base});
    }
  }
  return out;
}

// Tracks written files so a failed run can clean up after itself.
class OutputWriter {
 public:
  explicit OutputWriter(fs::path dir) : dir_(std::move(dir)) {}

  void write(const std::string& name, const std::string& content) {
    const fs::path path = dir_ / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << content;
    if (!out) throw Error("write failed: " + path.string());
    files_.push_back(path);
  }

  void remove_all() noexcept {
    std::error_code ec;
    for (const auto& f : files_) fs::remove(f, ec);
    files_.clear();
  }

  const std::vector<fs::path>& files() const { return files_; }

 private:
  fs::path dir_;
  std::vector<fs::path> files_;
};

// Every input file the run read, in a stable order.
std::vector<fs::path> input_paths(const RunConfig& c) {
  std::vector<fs::path> out;
  for (const auto& p : c.corpus_paths) {
    if (fs::is_directory(p)) {
      std::vector<fs::path> files;
      for (const auto& e : fs::directory_iterator(p))
        if (e.is_regular_file()) files.push_back(e.path());
      std::sort(files.begin(), files.end());
      out.insert(out.end(), files.begin(), files.end());
    } else {
      out.push_back(p);
    }
  }
  out.push_back(c.gold_path);
  if (c.pos_map) out.push_back(*c.pos_map);
  if (c.patterns) out.push_back(*c.patterns);
  return out;
}

std::string render_relations(const RelationSet& rels) {
  std::ostringstream out;
  write_relations(rels, out);
  return out.str();
}

std::string render_metrics(const std::optional<HierarchyMetrics>& m) {
  if (!m) return "Empty\ttrue\n";
  std::ostringstream out;
  write_metrics(*m, out);
  return out.str();
}

nlohmann::ordered_json metrics_to_json(const std::optional<HierarchyMetrics>& m) {
  if (!m) return nullptr;
  return nlohmann::ordered_json::parse(metrics_json(*m));
}

}  // namespace

RunResult run(const RunConfig& config) {
  if (auto problems = validate(config); !problems.empty()) throw StageError("validate", problems.front());

  std::string stage = "prepare-output";
  std::error_code ec;
  fs::create_directories(config.output_dir, ec);
  if (ec) throw StageError(stage, ec.message());
  OutputWriter writer(config.output_dir);

  try {
    stage = "load-corpus";
    Corpus corpus = load_corpora(config.corpus_paths, config.language, config.pos_map, config.pseudo_documents);
    const CorpusStats stats = corpus_stats(corpus);

    stage = "load-gold";
    const GoldTaxonomy gold = load_gold(config.gold_path);

    stage = "contexts";
    ContextMatrix window = extract_window_contexts(corpus, config.window_size);
    ContextMatrix documents = extract_document_contexts(corpus);

    stage = "vocabulary";
    TermSet vocab = select_vocabulary(window, gold, config.vocabulary_size);

    std::optional<PatternSet> patterns;
    if (config.patterns) {
      stage = "load-patterns";
      patterns = PatternSet::load(*config.patterns, config.language);
    }

    ExtractionInputs inputs(std::move(corpus), std::move(window), std::move(documents), std::move(vocab));

    struct Outcome {
      std::string name;
      Method method;
      RelationSet relations;
      EvalReport report;
    };
    std::vector<Outcome> outcomes;
    for (const auto& variant : expand_variants(config, patterns ? &*patterns : nullptr)) {
      stage = "extract:" + variant.name;
      RelationSet rels = extract(inputs, variant.params);
      Taxonomy taxonomy = build_taxonomy(rels);
      if (config.best_parent) {
        stage = "filter-parent:" + variant.name;
        taxonomy = best_parent_filter(taxonomy, inputs.documents());
        rels = to_relations(taxonomy, rels.method());
        taxonomy.set_source_relations(rels.size());
      }

      stage = "metrics:" + variant.name;
      const auto metrics = reduced_metrics(taxonomy);

      stage = "evaluate:" + variant.name;
      const EvalReport report = evaluate(taxonomy, gold);

      stage = "write:" + variant.name;
      writer.write(variant.name + ".relations.tsv", render_relations(rels));
      writer.write(variant.name + ".metrics.txt", render_metrics(metrics));
      nlohmann::ordered_json j;
      j["method"] = std::string(to_string(variant.params.method));
      j["variant"] = variant.name;
      j["relations"] = rels.size();
      j["evaluation"] = nlohmann::ordered_json::parse(report_json(report));
      j["metrics"] = metrics_to_json(metrics);
      writer.write(variant.name + ".report.json", j.dump(2) + "\n");
      outcomes.push_back({variant.name, variant.params.method, std::move(rels), report});
    }

    // Best-F variant per method feeds the cross-method analysis.
    stage = "summaries";
    std::vector<const Outcome*> best;
    for (Method m : config.methods) {
      const Outcome* top = nullptr;
      std::string summary = "variant\tprecision\trecall\tfmeasure\trelations\n";
      std::size_t count = 0;
      for (const auto& o : outcomes) {
        if (o.method != m) continue;
        ++count;
        summary += fmt::format("{}\t{:.4f}\t{:.4f}\t{:.4f}\t{}\n", o.name, o.report.precision, o.report.recall,
                               o.report.fmeasure, o.relations.size());
        if (!top || o.report.fmeasure > top->report.fmeasure) top = &o;
      }
      if (!top) continue;
      best.push_back(top);
      if (count > 1) {
        summary += fmt::format("best\t{}\n", top->name);
        writer.write(lower(to_string(m)) + ".summary.tsv", summary);
      }
    }

    if (best.size() > 1) {
      stage = "complement";
      std::vector<RelationSet> sets;
      for (const auto* o : best) {
        RelationSet s = o->relations;
        s.set_method(std::string(to_string(o->method)));
        sets.push_back(std::move(s));
      }
      const auto cm = complementarity_matrix(sets, &gold);
      std::ostringstream direct, inverse, rel;
      write_csv(cm.methods, cm.direct, direct);
      write_csv(cm.methods, cm.inverse, inverse);
      write_csv(cm.methods, cm.relative_precision, rel);
      writer.write("complementarity_direct.csv", direct.str());
      writer.write("complementarity_inverse.csv", inverse.str());
      writer.write("relative_precision.csv", rel.str());
    }

    stage = "manifest";
    const std::string canonical = canonical_form(config);
    RunResult result;
    result.config_hash = sha256_hex(canonical);
    nlohmann::ordered_json manifest;
    manifest["config_hash"] = result.config_hash;
    nlohmann::ordered_json params;
    std::istringstream lines(canonical);
    for (std::string line; std::getline(lines, line);) {
      auto eq = line.find('=');
      params[line.substr(0, eq)] = line.substr(eq + 1);
    }
    manifest["parameters"] = params;
    manifest["corpus"] = {{"documents", stats.num_documents},
                          {"sentences", stats.num_sentences},
                          {"content_words", stats.num_content_words},
                          {"vocabulary", stats.vocabulary_size}};
    manifest["selected_terms"] = inputs.vocab().size();
    nlohmann::ordered_json input_files = nlohmann::ordered_json::array();
    for (const auto& f : input_paths(config))
      input_files.push_back({{"path", f.lexically_normal().string()}, {"sha256", file_sha256(f)}});
    manifest["inputs"] = input_files;
    nlohmann::ordered_json files = nlohmann::ordered_json::array();
    for (const auto& f : writer.files())
      files.push_back({{"path", f.filename().string()}, {"sha256", file_sha256(f)}});
    manifest["files"] = files;
    writer.write("manifest.json", manifest.dump(2) + "\n");
    result.files = writer.files();
    return result;
  } catch (const std::exception& e) {
    writer.remove_all();
    throw StageError(stage, e.what());
  }
}

}  // namespace taxo
