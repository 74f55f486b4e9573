#include "taxo/relations.hpp"

#include <algorithm>
#include <fstream>

#include <fmt/format.h>

#include "taxo/error.hpp"
#include "taxo/text.hpp"

namespace taxo {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::Patt: return "Patt";
    case Method::DSim: return "DSim";
    case Method::SLQS: return "SLQS";
    case Method::TF: return "TF";
    case Method::DF: return "DF";
    case Method::DocSub: return "DocSub";
    case Method::HClust: return "HClust";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  const std::string n = case_fold(trim(name));
  for (Method m : {Method::Patt, Method::DSim, Method::SLQS, Method::TF, Method::DF, Method::DocSub,
                   Method::HClust})
    if (case_fold(to_string(m)) == n) return m;
  throw Error(fmt::format("unknown method '{}'", name));
}

bool is_statistical(Method m) { return m != Method::Patt; }

bool RelationSet::insert(const std::string& hyponym, const std::string& hypernym, double score) {
  if (hyponym == hypernym) return false;
  return rels_.emplace(Key{hyponym, hypernym}, score).second;
}

bool RelationSet::contains(const std::string& hyponym, const std::string& hypernym) const {
  return rels_.count(Key{hyponym, hypernym}) > 0;
}

bool RelationSet::same_pairs(const RelationSet& other) const {
  return size() == other.size() &&
         std::equal(begin(), end(), other.begin(), [](const auto& a, const auto& b) { return a.first == b.first; });
}

RelationSet invert(const RelationSet& rels) {
  RelationSet out(rels.method());
  for (const auto& [key, score] : rels) out.insert(key.second, key.first, score);
  return out;
}

RelationSet intersect(const RelationSet& a, const RelationSet& b) {
  RelationSet out(a.method() + "&" + b.method());
  for (const auto& [key, score] : a)
    if (b.contains(key.first, key.second)) out.insert(key.first, key.second, score);
  return out;
}

void write_relations(const RelationSet& rels, std::ostream& out) {
  for (const auto& [key, score] : rels)
    out << fmt::format("{}\t{}\t{}\t{:.6g}\n", key.first, key.second, rels.method(), score);
}

void write_relations_file(const RelationSet& rels, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  write_relations(rels, out);
}

RelationSet read_relations(std::istream& in, const std::string& source) {
  RelationSet rels;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto fields = split(line, '\t');
    if (fields.size() < 2 || fields.size() > 4)
      throw ParseError(source, lineno, "expected hyponym<TAB>hypernym[<TAB>method[<TAB>score]]");
    double score = 0.0;
    if (fields.size() == 4) {
      try {
        score = std::stod(fields[3]);
      } catch (const std::exception&) {
        throw ParseError(source, lineno, "score is not a number");
      }
    }
    if (fields.size() >= 3 && rels.method().empty()) rels.set_method(fields[2]);
    rels.insert(fields[0], fields[1], score);
  }
  return rels;
}

RelationSet read_relations_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open relations file: " + path.string());
  return read_relations(in, path.string());
}

}  // namespace taxo
