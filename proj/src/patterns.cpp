#include "taxo/patterns.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "taxo/error.hpp"
#include "taxo/text.hpp"

namespace taxo {
namespace {

const char* const kEnglishTemplates[] = {
    "HYPER ,? such as HYPO+",   "such HYPER as HYPO+",      "HYPO+ ,? or other HYPER",
    "HYPO+ ,? and other HYPER", "HYPER ,? including HYPO+", "HYPER ,? especially HYPO+",
};

const char* const kPortugueseTemplates[] = {
    "HYPER ,? tais como HYPO+",  "HYPER ,? como HYPO+",      "HYPO+ ,? e outros HYPER",
    "HYPO+ ,? ou outros HYPER",  "HYPER ,? incluindo HYPO+", "HYPER ,? especialmente HYPO+",
};

struct NounPhrase {
  std::size_t end;  // one past the last token
  const std::string* head;
};

class SentenceMatcher {
 public:
  SentenceMatcher(const Sentence& s, const PatternSet& p) : sent_(s), patterns_(p) {
    folded_surface_.reserve(s.size());
    folded_lemma_.reserve(s.size());
    for (const auto& tok : s) {
      folded_surface_.push_back(case_fold(tok.surface));
      folded_lemma_.push_back(case_fold(tok.lemma));
    }
  }

  // Tries `tmpl` anchored at `start`; on success fills hypernym/hyponyms.
  bool match(const PatternTemplate& tmpl, std::size_t start, const std::string*& hyper,
             std::vector<const std::string*>& hypos) {
    hyper = nullptr;
    hypos.clear();
    return match_from(tmpl, 0, start, hyper, hypos);
  }

 private:
  bool is_word(std::size_t i, const std::string& literal) const {
    return i < sent_.size() && (folded_surface_[i] == literal || folded_lemma_[i] == literal);
  }

  bool is_any(std::size_t i, const std::vector<std::string>& words) const {
    for (const auto& w : words)
      if (is_word(i, w)) return true;
    return false;
  }

  std::optional<NounPhrase> noun_phrase(std::size_t p) const {
    const std::size_t n = sent_.size();
    if (p >= n) return std::nullopt;
    if (p > 0 && is_noun(sent_[p - 1].pos)) return std::nullopt;  // not at a phrase boundary
    std::size_t i = p;
    if (sent_[i].pos == Pos::Other && is_any(i, patterns_.determiners())) ++i;
    if (patterns_.language() == Language::EN) {
      while (i < n && sent_[i].pos == Pos::Adj) ++i;
      std::size_t first_noun = i;
      while (i < n && is_noun(sent_[i].pos)) ++i;
      if (i == first_noun) return std::nullopt;
      return NounPhrase{i, &sent_[i - 1].lemma};
    }
    std::size_t first_noun = i;
    while (i < n && is_noun(sent_[i].pos)) ++i;
    if (i == first_noun) return std::nullopt;
    const std::string* head = &sent_[first_noun].lemma;
    while (i < n && sent_[i].pos == Pos::Adj) ++i;
    return NounPhrase{i, head};
  }

  // All ways to read a coordinated list of noun phrases starting at p,
  // longest first.
  std::vector<std::pair<std::size_t, std::vector<const std::string*>>> noun_phrase_lists(std::size_t p) const {
    std::vector<std::pair<std::size_t, std::vector<const std::string*>>> out;
    auto np = noun_phrase(p);
    if (!np) return out;
    std::vector<const std::string*> heads{np->head};
    out.emplace_back(np->end, heads);
    std::size_t pos = np->end;
    while (true) {
      std::size_t next = pos;
      bool sep = false;
      if (is_word(next, ",")) {
        ++next;
        sep = true;
      }
      if (is_any(next, patterns_.conjunctions())) {
        ++next;
        sep = true;
      }
      if (!sep) break;
      auto more = noun_phrase(next);
      if (!more) break;
      heads.push_back(more->head);
      pos = more->end;
      out.emplace_back(pos, heads);
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

  bool match_from(const PatternTemplate& tmpl, std::size_t elem, std::size_t pos, const std::string*& hyper,
                  std::vector<const std::string*>& hypos) const {
    if (elem == tmpl.elements.size()) return true;
    const auto& e = tmpl.elements[elem];
    using Kind = PatternTemplate::Kind;
    switch (e.kind) {
      case Kind::Literal:
        return is_word(pos, e.literal) && match_from(tmpl, elem + 1, pos + 1, hyper, hypos);
      case Kind::OptionalComma:
        if (is_word(pos, ",") && match_from(tmpl, elem + 1, pos + 1, hyper, hypos)) return true;
        return match_from(tmpl, elem + 1, pos, hyper, hypos);
      case Kind::Hyper: {
        auto np = noun_phrase(pos);
        if (!np) return false;
        hyper = np->head;
        return match_from(tmpl, elem + 1, np->end, hyper, hypos);
      }
      case Kind::Hypo: {
        auto np = noun_phrase(pos);
        if (!np) return false;
        hypos = {np->head};
        return match_from(tmpl, elem + 1, np->end, hyper, hypos);
      }
      case Kind::HypoList:
        for (auto& [end, heads] : noun_phrase_lists(pos)) {
          hypos = heads;
          if (match_from(tmpl, elem + 1, end, hyper, hypos)) return true;
        }
        return false;
    }
    return false;
  }

  const Sentence& sent_;
  const PatternSet& patterns_;
  std::vector<std::string> folded_surface_;
  std::vector<std::string> folded_lemma_;
};

}  // namespace

PatternTemplate PatternTemplate::parse(const std::string& text) {
  PatternTemplate t;
  t.text = std::string(trim(text));
  std::istringstream in(t.text);
  std::string tok;
  int hypers = 0, hypos = 0;
  while (in >> tok) {
    if (tok == "HYPER") {
      t.elements.push_back({Kind::Hyper, {}});
      ++hypers;
    } else if (tok == "HYPO") {
      t.elements.push_back({Kind::Hypo, {}});
      ++hypos;
    } else if (tok == "HYPO+") {
      t.elements.push_back({Kind::HypoList, {}});
      ++hypos;
    } else if (tok == ",?") {
      t.elements.push_back({Kind::OptionalComma, {}});
    } else {
      t.elements.push_back({Kind::Literal, case_fold(tok)});
    }
  }
  if (hypers != 1 || hypos != 1)
    throw Error(fmt::format("pattern '{}' must contain exactly one HYPER and one HYPO/HYPO+ slot", t.text));
  return t;
}

PatternSet::PatternSet(Language language, std::vector<PatternTemplate> templates)
    : language_(language), templates_(std::move(templates)) {
  if (language == Language::EN) {
    determiners_ = {"the", "a", "an"};
    conjunctions_ = {"and", "or"};
  } else {
    determiners_ = {"o", "a", "os", "as", "um", "uma", "uns", "umas"};
    conjunctions_ = {"e", "ou"};
  }
}

PatternSet PatternSet::defaults(Language language) {
  std::vector<PatternTemplate> templates;
  if (language == Language::EN)
    for (const char* t : kEnglishTemplates) templates.push_back(PatternTemplate::parse(t));
  else
    for (const char* t : kPortugueseTemplates) templates.push_back(PatternTemplate::parse(t));
  return PatternSet(language, std::move(templates));
}

PatternSet PatternSet::load(const std::filesystem::path& path, Language language) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open pattern file: " + path.string());
  std::vector<PatternTemplate> templates;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    try {
      templates.push_back(PatternTemplate::parse(std::string(t)));
    } catch (const Error& e) {
      throw ParseError(path.string(), lineno, e.what());
    }
  }
  return PatternSet(language, std::move(templates));
}

void match_sentence(const Sentence& sentence, const PatternSet& patterns, const TermSet* vocab, RelationSet& out) {
  SentenceMatcher matcher(sentence, patterns);
  const std::string* hyper = nullptr;
  std::vector<const std::string*> hypos;
  for (std::size_t start = 0; start < sentence.size(); ++start) {
    for (const auto& tmpl : patterns.templates()) {
      if (!matcher.match(tmpl, start, hyper, hypos)) continue;
      for (const auto* hypo : hypos) {
        if (vocab && (!vocab->contains(*hypo) || !vocab->contains(*hyper))) continue;
        out.insert(*hypo, *hyper, 1.0);
      }
    }
  }
}

RelationSet extract_patterns(const Corpus& corpus, const PatternSet& patterns, const TermSet* vocab) {
  if (corpus.language != patterns.language())
    throw Error(fmt::format("corpus language {} does not match pattern language {}", to_string(corpus.language),
                            to_string(patterns.language())));
  RelationSet out(Method::Patt);
  for (const auto& doc : corpus.documents)
    for (const auto& sentence : doc.sentences) match_sentence(sentence, patterns, vocab, out);
  return out;
}

}  // namespace taxo
