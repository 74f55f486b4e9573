#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "taxo/contexts.hpp"
#include "taxo/corpus.hpp"
#include "taxo/relations.hpp"

namespace taxo {

// One lexico-syntactic template, e.g. "HYPER ,? such as HYPO+".
//   HYPER  - noun phrase holding the hypernym
//   HYPO   - a single hyponym noun phrase
//   HYPO+  - a list of noun phrases joined by commas and the language's
//            coordinating conjunctions
//   ,?     - optional comma
//   other  - literal, matched case-insensitively against surface or lemma
struct PatternTemplate {
  enum class Kind { Hyper, Hypo, HypoList, OptionalComma, Literal };
  struct Element {
    Kind kind;
    std::string literal;
  };

  std::string text;
  std::vector<Element> elements;

  static PatternTemplate parse(const std::string& text);  // throws Error
};

class PatternSet {
 public:
  PatternSet(Language language, std::vector<PatternTemplate> templates);

  // The six Hearst templates (EN) or their Portuguese adaptations (PT).
  static PatternSet defaults(Language language);
  // One template per line; blank lines and lines starting with '#' ignored.
  static PatternSet load(const std::filesystem::path& path, Language language);

  Language language() const { return language_; }
  const std::vector<PatternTemplate>& templates() const { return templates_; }
  const std::vector<std::string>& determiners() const { return determiners_; }
  const std::vector<std::string>& conjunctions() const { return conjunctions_; }

 private:
  Language language_;
  std::vector<PatternTemplate> templates_;
  std::vector<std::string> determiners_;
  std::vector<std::string> conjunctions_;
};

// Scans every sentence with every template. Noun phrases are maximal
// NOUN/PROPN runs with optional adjectives (preceding in EN, following in
// PT) and an optional leading determiner; the emitted term is the head noun
// lemma (rightmost in EN, leftmost in PT). When `vocab` is non-null, only
// relations with both terms in it are kept.
RelationSet extract_patterns(const Corpus& corpus, const PatternSet& patterns, const TermSet* vocab = nullptr);

// Same, for one sentence; relations are added to `out`.
void match_sentence(const Sentence& sentence, const PatternSet& patterns, const TermSet* vocab,
                    RelationSet& out);

}  // namespace taxo
