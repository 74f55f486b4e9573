#include "taxo/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "taxo/error.hpp"
#include "taxo/text.hpp"

namespace taxo {
namespace fs = std::filesystem;

std::string_view to_string(Pos pos) {
  switch (pos) {
    case Pos::Noun: return "NOUN";
    case Pos::Propn: return "PROPN";
    case Pos::Verb: return "VERB";
    case Pos::Adj: return "ADJ";
    case Pos::Other: return "OTHER";
  }
  return "OTHER";
}

Pos parse_pos(std::string_view tag) {
  if (tag == "NOUN") return Pos::Noun;
  if (tag == "PROPN") return Pos::Propn;
  if (tag == "VERB") return Pos::Verb;
  if (tag == "ADJ") return Pos::Adj;
  if (tag == "OTHER") return Pos::Other;
  throw Error(fmt::format("unknown coarse POS tag '{}'", tag));
}

std::string_view to_string(Language lang) { return lang == Language::EN ? "EN" : "PT"; }

Language parse_language(std::string_view tag) {
  if (tag == "EN" || tag == "en") return Language::EN;
  if (tag == "PT" || tag == "pt") return Language::PT;
  throw Error(fmt::format("unknown language '{}'", tag));
}

PosMapping PosMapping::load(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open POS mapping file: " + path.string());
  PosMapping mapping;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto fields = split(line, '\t');
    if (fields.size() != 2) throw ParseError(path.string(), lineno, "expected finePOS<TAB>coarsePOS");
    try {
      mapping.add(fields[0], parse_pos(trim(fields[1])));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(path.string(), lineno, e.what());
    }
  }
  return mapping;
}

Pos PosMapping::map(std::string_view fine) const {
  if (auto it = table_.find(fine); it != table_.end()) return it->second;
  if (fine == "NOUN") return Pos::Noun;
  if (fine == "PROPN") return Pos::Propn;
  if (fine == "VERB") return Pos::Verb;
  if (fine == "ADJ") return Pos::Adj;
  return Pos::Other;
}

Document parse_document(std::string_view text, std::string id, const PosMapping& mapping,
                        const std::string& source) {
  Document doc;
  doc.id = std::move(id);
  Sentence current;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) {
      if (!current.empty()) doc.sentences.push_back(std::move(current));
      current.clear();
      if (end == text.size()) break;
      continue;
    }
    auto fields = split(line, '\t');
    if (fields.size() != 3)
      throw ParseError(source, lineno,
                       fmt::format("expected 3 tab-separated fields, got {}", fields.size()));
    if (fields[0].empty() || fields[1].empty())
      throw ParseError(source, lineno, "empty surface or lemma");
    current.push_back({fields[0], fields[1], mapping.map(fields[2])});
    if (end == text.size()) break;
  }
  if (!current.empty()) doc.sentences.push_back(std::move(current));
  return doc;
}

Corpus load_corpus(const fs::path& path, Language language, const PosMapping& mapping) {
  if (!fs::exists(path)) throw Error("corpus path does not exist: " + path.string());
  std::vector<fs::path> files;
  if (fs::is_directory(path)) {
    for (const auto& entry : fs::directory_iterator(path))
      if (entry.is_regular_file()) files.push_back(entry.path());
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(path);
  }

  Corpus corpus;
  corpus.language = language;
  for (const auto& file : files) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw Error("cannot open corpus file: " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    auto doc = parse_document(buf.str(), file.filename().string(), mapping, file.string());
    if (!doc.sentences.empty()) corpus.documents.push_back(std::move(doc));
  }
  if (corpus.documents.empty()) throw Error("empty corpus: " + path.string());
  return corpus;
}

std::string format_document(const Document& doc) {
  std::string out;
  for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
    if (s > 0) out += '\n';
    for (const auto& tok : doc.sentences[s])
      out += fmt::format("{}\t{}\t{}\n", tok.surface, tok.lemma, to_string(tok.pos));
  }
  return out;
}

void write_corpus(const Corpus& corpus, const fs::path& dir) {
  fs::create_directories(dir);
  for (const auto& doc : corpus.documents) {
    std::ofstream out(dir / doc.id, std::ios::binary);
    if (!out) throw Error("cannot write " + (dir / doc.id).string());
    out << format_document(doc);
  }
}

CorpusStats corpus_stats(const Corpus& corpus) {
  CorpusStats stats;
  std::set<std::string_view> lemmas;
  stats.num_documents = corpus.documents.size();
  for (const auto& doc : corpus.documents) {
    stats.num_sentences += doc.sentences.size();
    for (const auto& sentence : doc.sentences)
      for (const auto& tok : sentence)
        if (is_content(tok.pos)) {
          ++stats.num_content_words;
          lemmas.insert(tok.lemma);
        }
  }
  stats.vocabulary_size = lemmas.size();
  return stats;
}

Corpus sentences_as_documents(const Corpus& corpus) {
  Corpus out;
  out.language = corpus.language;
  for (const auto& doc : corpus.documents)
    for (std::size_t s = 0; s < doc.sentences.size(); ++s)
      out.documents.push_back({fmt::format("{}#{}", doc.id, s + 1), {doc.sentences[s]}});
  return out;
}

}  // namespace taxo
