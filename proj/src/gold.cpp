#include "taxo/gold.hpp"

#include <algorithm>
#include <deque>
#include <fstream>

#include <fmt/format.h>

#include "taxo/error.hpp"
#include "taxo/text.hpp"

namespace taxo {

GoldTaxonomy::GoldTaxonomy(std::vector<Synset> synsets) {
  for (auto& s : synsets) {
    if (s.lemmas.empty()) throw Error(fmt::format("synset {} has no lemmas", s.id));
    s.hypernym_ids.erase(s.id);
    const int id = s.id;
    if (!synsets_.emplace(id, std::move(s)).second) throw Error(fmt::format("duplicate synset id {}", id));
  }
  for (const auto& [id, s] : synsets_) {
    for (int h : s.hypernym_ids)
      if (!synsets_.count(h)) throw Error(fmt::format("synset {} references unknown hypernym id {}", id, h));
    for (const auto& lemma : s.lemmas) {
      auto& ids = lemma_index_[case_fold(lemma)];
      if (ids.empty() || ids.back() != id) ids.push_back(id);
    }
  }
}

bool GoldTaxonomy::contains_term(const std::string& lemma) const {
  return lemma_index_.count(case_fold(lemma)) > 0;
}

const std::vector<int>& GoldTaxonomy::synsets_of(const std::string& lemma) const {
  static const std::vector<int> none;
  auto it = lemma_index_.find(case_fold(lemma));
  return it == lemma_index_.end() ? none : it->second;
}

std::set<int> GoldTaxonomy::strict_ancestors(int synset) const {
  std::set<int> seen;
  std::deque<int> queue;
  auto start = synsets_.find(synset);
  if (start == synsets_.end()) return seen;
  for (int h : start->second.hypernym_ids)
    if (seen.insert(h).second) queue.push_back(h);
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    for (int h : synsets_.at(cur).hypernym_ids)
      if (seen.insert(h).second) queue.push_back(h);
  }
  seen.erase(synset);
  return seen;
}

bool GoldTaxonomy::is_hypernym(const std::string& hyper, const std::string& hypo) const {
  const auto& targets = synsets_of(hyper);
  if (targets.empty()) return false;
  for (int s : synsets_of(hypo)) {
    auto anc = strict_ancestors(s);
    for (int t : targets)
      if (anc.count(t)) return true;
  }
  return false;
}

std::vector<std::string> GoldTaxonomy::lemmas() const {
  std::vector<std::string> out;
  out.reserve(lemma_index_.size());
  for (const auto& [lemma, _] : lemma_index_) out.push_back(lemma);
  std::sort(out.begin(), out.end());
  return out;
}

GoldTaxonomy parse_gold(std::istream& in, const std::string& source) {
  std::vector<Synset> synsets;
  std::map<int, std::size_t> first_seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line[0] == '#') continue;
    auto fields = split(line, '\t');
    if (fields.size() == 2) fields.emplace_back();
    if (fields.size() != 3) throw ParseError(source, lineno, "expected id<TAB>lemmas<TAB>hypernym ids");
    Synset s;
    try {
      std::size_t used = 0;
      s.id = std::stoi(fields[0], &used);
      if (used != fields[0].size()) throw std::invalid_argument("id");
      for (auto& lemma : split(fields[1], '|'))
        if (!trim(lemma).empty()) s.lemmas.emplace_back(trim(lemma));
      if (!trim(fields[2]).empty())
        for (auto& h : split(fields[2], ',')) s.hypernym_ids.insert(std::stoi(std::string(trim(h))));
    } catch (const std::exception&) {
      throw ParseError(source, lineno, "malformed synset id or hypernym id");
    }
    if (s.lemmas.empty()) throw ParseError(source, lineno, "synset has no lemmas");
    if (auto [it, inserted] = first_seen.emplace(s.id, lineno); !inserted)
      throw ParseError(source, lineno, fmt::format("duplicate synset id {} (first on line {})", s.id, it->second));
    synsets.push_back(std::move(s));
  }
  try {
    return GoldTaxonomy(std::move(synsets));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw Error(source + ": " + e.what());
  }
}

GoldTaxonomy load_gold(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open gold standard: " + path.string());
  return parse_gold(in, path.string());
}

}  // namespace taxo
