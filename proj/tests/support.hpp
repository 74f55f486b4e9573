#pragma once

// Fixtures and brute-force oracles shared by the unit tests and the
// acceptance binary. Oracles deliberately avoid the library's algorithms.

#include <cstdint>
#include <filesystem>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "taxo/contexts.hpp"
#include "taxo/corpus.hpp"
#include "taxo/gold.hpp"
#include "taxo/relations.hpp"
#include "taxo/taxonomy.hpp"

namespace taxo::testing {

using Edge = std::pair<std::string, std::string>;  // (hypernym, hyponym)

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
  // Writes `content` to `name` inside the directory and returns the path.
  std::filesystem::path write(const std::string& name, const std::string& content) const;

 private:
  std::filesystem::path path_;
};

// Tokens are "surface/lemma/POS" or "lemma/POS", separated by spaces.
Sentence sentence(const std::string& spec);

struct DocSpec {
  std::string id;
  std::vector<std::string> sentences;
};
Corpus make_corpus(const std::vector<DocSpec>& docs, Language lang = Language::EN);

// Relations from (hyponym, hypernym) pairs.
RelationSet relations(const std::vector<std::pair<std::string, std::string>>& hypo_hyper,
                      const std::string& method = "test");
Taxonomy graph(const std::vector<Edge>& edges, const std::vector<std::string>& extra_nodes = {});

// Single-sense gold: one synset per lemma, hypernym edges given as
// (hypernym, hyponym) lemma pairs.
GoldTaxonomy single_sense_gold(const std::vector<std::string>& lemmas, const std::vector<Edge>& edges);

// Document matrix from explicit term -> document membership lists.
ContextMatrix document_matrix(const std::vector<std::pair<std::string, std::vector<std::string>>>& postings);

// Scales every count by `factor`.
ContextMatrix scaled(const ContextMatrix& m, std::int64_t factor);

// Worked-example fixtures.
std::vector<Edge> two_tree_edges();  // two trees over terms "1".."17"
std::vector<Edge> shortcut_edges();  // DAG over A..F with three redundant edges into F
Taxonomy car_extracted();            // car under wheeled_vehicle
GoldTaxonomy car_gold();             // car under motor_vehicle, tram elsewhere
struct ParentChoiceFixture {
  Taxonomy taxonomy;
  ContextMatrix docs;
};
ParentChoiceFixture parent_choice_fixture();

// Oracles over dense boolean adjacency matrices.
using BoolMatrix = std::vector<std::vector<bool>>;
BoolMatrix closure(BoolMatrix adj);  // Floyd-Warshall, paths of length >= 1
BoolMatrix brute_force_reduction(const BoolMatrix& adj);
BoolMatrix adjacency(const Taxonomy& t);  // indexed by node id

std::vector<Edge> random_dag(std::mt19937& rng, int nodes, double density, const std::string& prefix = "n");

struct EvalCounts {
  std::size_t matched = 0, extracted = 0, gold = 0;
  double precision = 0.0, recall = 0.0, fmeasure = 0.0;
};
// Exhaustive per-term enumeration of common relations over explicit
// transitive closures of both structures.
EvalCounts enumerate_eval(const std::vector<std::string>& extracted_terms, const std::vector<Edge>& extracted_edges,
                          const std::vector<std::string>& gold_terms, const std::vector<Edge>& gold_edges);

// Dense PMI straight from probabilities: ln(p(t,c) / (p(t) p(c))).
double dense_pmi(const std::vector<std::vector<double>>& counts, std::size_t t, std::size_t c);

// Naive average linkage recomputing every cluster distance from scratch.
std::vector<std::set<int>> naive_average_linkage(const std::vector<std::vector<double>>& sim, std::size_t k);

// 200 documents over a planted 30-term tree (root, 5 mid terms, 24
// leaves). Every document mentioning a term also mentions all of its
// ancestors; noise words never belong to the gold.
struct PlantedBenchmark {
  Corpus corpus;
  GoldTaxonomy gold;
  std::vector<Edge> edges;
};
PlantedBenchmark planted_benchmark(std::uint32_t seed);

}  // namespace taxo::testing
