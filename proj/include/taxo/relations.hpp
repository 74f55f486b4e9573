#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>

namespace taxo {

enum class Method { Patt, DSim, SLQS, TF, DF, DocSub, HClust };

std::string_view to_string(Method m);
Method parse_method(std::string_view name);  // case-insensitive
bool is_statistical(Method m);

struct Relation {
  std::string hyponym;
  std::string hypernym;
  double score = 0.0;
};

// Deduplicated (hyponym, hypernym) pairs tagged with the producing method.
// Iteration is in lexicographic (hyponym, hypernym) order.
class RelationSet {
 public:
  using Key = std::pair<std::string, std::string>;  // (hyponym, hypernym)

  RelationSet() = default;
  explicit RelationSet(std::string method) : method_(std::move(method)) {}
  explicit RelationSet(Method method) : method_(to_string(method)) {}

  const std::string& method() const { return method_; }
  void set_method(std::string m) { method_ = std::move(m); }

  // Ignores self-relations; the first score recorded for a pair is kept.
  bool insert(const std::string& hyponym, const std::string& hypernym, double score = 0.0);
  bool contains(const std::string& hyponym, const std::string& hypernym) const;
  std::size_t size() const { return rels_.size(); }
  bool empty() const { return rels_.empty(); }

  auto begin() const { return rels_.begin(); }
  auto end() const { return rels_.end(); }

  bool same_pairs(const RelationSet& other) const;

 private:
  std::string method_;
  std::map<Key, double> rels_;
};

RelationSet invert(const RelationSet& rels);
RelationSet intersect(const RelationSet& a, const RelationSet& b);

// `hyponym<TAB>hypernym<TAB>method<TAB>score`, sorted.
void write_relations(const RelationSet& rels, std::ostream& out);
void write_relations_file(const RelationSet& rels, const std::filesystem::path& path);
RelationSet read_relations(std::istream& in, const std::string& source = "<stream>");
RelationSet read_relations_file(const std::filesystem::path& path);

}  // namespace taxo
