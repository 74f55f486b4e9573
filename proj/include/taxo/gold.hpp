#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace taxo {

struct Synset {
  int id = 0;
  std::vector<std::string> lemmas;
  std::set<int> hypernym_ids;
};

// Synset hypernym digraph (WordNet / Onto.PT style) with a case-folded lemma
// index. Cycles between distinct synsets are allowed; self-loops are dropped
// at construction.
class GoldTaxonomy {
 public:
  GoldTaxonomy() = default;

  // Throws Error on duplicate ids or dangling hypernym references.
  explicit GoldTaxonomy(std::vector<Synset> synsets);

  const std::map<int, Synset>& synsets() const { return synsets_; }
  std::size_t num_lemmas() const { return lemma_index_.size(); }

  bool contains_term(const std::string& lemma) const;
  const std::vector<int>& synsets_of(const std::string& lemma) const;

  // True iff some synset of `hypo` reaches a different synset of `hyper`
  // through one or more hypernym edges. Unknown lemmas yield false.
  bool is_hypernym(const std::string& hyper, const std::string& hypo) const;

  // Synsets reachable upward from `synset` via >= 1 edges (excluding `synset`
  // itself even when it lies on a cycle).
  std::set<int> strict_ancestors(int synset) const;

  // Every folded lemma in the index.
  std::vector<std::string> lemmas() const;

 private:
  std::map<int, Synset> synsets_;
  std::unordered_map<std::string, std::vector<int>> lemma_index_;
};

// Synset-lines format: `id<TAB>lemma1|lemma2|...<TAB>hypId1,hypId2,...`.
GoldTaxonomy load_gold(const std::filesystem::path& path);
GoldTaxonomy parse_gold(std::istream& in, const std::string& source);

}  // namespace taxo
