#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace taxo {

// Coarse part-of-speech tags. NOUN, PROPN, VERB and ADJ are content words.
enum class Pos { Noun, Propn, Verb, Adj, Other };

enum class Language { EN, PT };

std::string_view to_string(Pos pos);
Pos parse_pos(std::string_view tag);  // throws Error on unknown tag
std::string_view to_string(Language lang);
Language parse_language(std::string_view tag);

inline bool is_content(Pos p) { return p != Pos::Other; }
inline bool is_noun(Pos p) { return p == Pos::Noun || p == Pos::Propn; }

struct TaggedToken {
  std::string surface;
  std::string lemma;
  Pos pos = Pos::Other;

  bool operator==(const TaggedToken&) const = default;
};

using Sentence = std::vector<TaggedToken>;

struct Document {
  std::string id;
  std::vector<Sentence> sentences;

  bool operator==(const Document&) const = default;
};

struct Corpus {
  Language language = Language::EN;
  std::vector<Document> documents;

  bool operator==(const Corpus&) const = default;
};

struct CorpusStats {
  std::size_t num_documents = 0;
  std::size_t num_sentences = 0;
  std::size_t num_content_words = 0;
  std::size_t vocabulary_size = 0;
};

// Maps parser-specific fine tags onto the coarse tagset. Tags without an
// explicit entry that name a coarse tag (NOUN, PROPN, VERB, ADJ, OTHER) map to
// themselves; anything else maps to OTHER.
class PosMapping {
 public:
  PosMapping() = default;

  static PosMapping load(const std::filesystem::path& path);

  void add(std::string fine, Pos coarse) { table_[std::move(fine)] = coarse; }
  Pos map(std::string_view fine) const;

 private:
  std::map<std::string, Pos, std::less<>> table_;
};

// Loads a corpus in the vertical token format. `path` is either one file or a
// directory whose regular files are read in lexicographic order; each file is
// one document whose id is the file name.
Corpus load_corpus(const std::filesystem::path& path, Language language,
                   const PosMapping& mapping = {});

// Parses a single document from text. `source` is used for error messages.
Document parse_document(std::string_view text, std::string id, const PosMapping& mapping,
                        const std::string& source);

// Writes each document to `dir/<id>` in the vertical format using coarse tags.
void write_corpus(const Corpus& corpus, const std::filesystem::path& dir);
std::string format_document(const Document& doc);

CorpusStats corpus_stats(const Corpus& corpus);

// Treats every sentence as its own document ("<doc id>#<n>", n from 1).
Corpus sentences_as_documents(const Corpus& corpus);

}  // namespace taxo
