#pragma once

#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "taxo/contexts.hpp"
#include "taxo/relations.hpp"

namespace taxo {

// Directed graph of terms; an edge hypernym -> hyponym reads "is hypernym of".
class Taxonomy {
 public:
  Taxonomy() = default;

  int add_node(const std::string& term);
  // Self-loops are rejected.
  bool add_edge(const std::string& hypernym, const std::string& hyponym);
  bool remove_edge(int hypernym, int hyponym);
  bool has_edge(const std::string& hypernym, const std::string& hyponym) const;

  std::size_t num_nodes() const { return names_.size(); }
  std::size_t num_edges() const { return num_edges_; }
  bool empty() const { return names_.empty(); }

  const std::string& name(int node) const { return names_[static_cast<std::size_t>(node)]; }
  const std::vector<std::string>& names() const { return names_; }
  int find(const std::string& term) const;  // -1 when absent
  bool contains(const std::string& term) const { return find(term) >= 0; }

  const std::set<int>& children(int node) const { return children_[static_cast<std::size_t>(node)]; }
  const std::set<int>& parents(int node) const { return parents_[static_cast<std::size_t>(node)]; }

  // (hypernym, hyponym) pairs sorted by name.
  std::vector<std::pair<std::string, std::string>> edges() const;

  bool is_dag() const;
  bool is_reduced() const { return reduced_; }
  void mark_reduced(bool r) { reduced_ = r; }

  // Number of deduplicated relations the taxonomy was built from.
  std::size_t source_relations() const { return source_relations_; }
  void set_source_relations(std::size_t n) { source_relations_ = n; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::set<int>> children_;
  std::vector<std::set<int>> parents_;
  std::size_t num_edges_ = 0;
  std::size_t source_relations_ = 0;
  bool reduced_ = false;
};

// Dense reachability bit matrix over a taxonomy's nodes. reaches(a, b) is
// true iff a path of >= 1 edges leads from a to b; cycles are handled.
class Reachability {
 public:
  explicit Reachability(const Taxonomy& t);

  bool reaches(int from, int to) const {
    const auto bit = static_cast<std::size_t>(to);
    return (bits_[static_cast<std::size_t>(from) * words_ + bit / 64] >> (bit % 64)) & 1U;
  }
  std::size_t size() const { return n_; }

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

struct HierarchyMetrics {
  std::size_t total_terms = 0;
  std::size_t total_roots = 0;
  std::size_t number_rels = 0;
  std::size_t num_leaves = 0;
  std::size_t num_taxonomies = 0;  // weakly connected components with >= 1 edge
  std::size_t isolated_terms = 0;  // nodes without edges; excluded from every other figure
  std::size_t max_depth = 0;
  std::size_t min_depth = 0;
  double avg_depth = 0.0;           // sum of leaf depths / total_roots
  double avg_depth_per_leaf = 0.0;  // sum of leaf depths / num_leaves
  double depth_cohesion = 0.0;      // max_depth / avg_depth
  double depth_cohesion_per_leaf = 0.0;
  std::size_t max_width = 0;
  std::size_t min_width = 0;
  double avg_width = 0.0;
};

// Edge hypernym -> hyponym for every relation.
Taxonomy build_taxonomy(const RelationSet& rels);

// Repeatedly removes, among all edges lying on a cycle, the one whose
// (hyponym, hypernym) pair is lexicographically largest, until acyclic.
Taxonomy break_cycles(Taxonomy t);

// Minimum equivalent graph of a DAG. Throws Error on cyclic input.
Taxonomy transitive_reduction(const Taxonomy& t);

// Hierarchy metrics of a DAG. Leaf depth is the longest root-to-leaf path;
// width of a term is its number of direct hyponyms. Throws Error on an empty
// or cyclic taxonomy.
HierarchyMetrics compute_metrics(const Taxonomy& t);

// Keeps one parent per term: for a term x with several parents p,
// score(p, x) = P(p|x) + sum_{a in ancestors(p)} P(a|x) / d(a, x), with
// P(a|x) = |Da & Dx| / |Dx| from the document matrix and d(a, x) the
// shortest path length from a down to x. The best-scoring parent wins; ties
// go to the lexicographically smaller parent.
Taxonomy best_parent_filter(const Taxonomy& t, const ContextMatrix& docm);

// Relations (hyponym, hypernym) for every edge.
RelationSet to_relations(const Taxonomy& t, const std::string& method);

// `hypernym<TAB>hyponym`, sorted.
void write_taxonomy(const Taxonomy& t, std::ostream& out);
void write_metrics(const HierarchyMetrics& m, std::ostream& out);      // key<TAB>value lines
std::string metrics_json(const HierarchyMetrics& m);

}  // namespace taxo
