#include "taxo/contexts.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <ostream>

#include <fmt/format.h>

#include "taxo/error.hpp"
#include "taxo/gold.hpp"
#include "taxo/text.hpp"

namespace taxo {
namespace {

char pos_letter(Pos pos) {
  switch (pos) {
    case Pos::Noun: return 'n';
    case Pos::Propn: return 'p';
    case Pos::Verb: return 'v';
    case Pos::Adj: return 'j';
    case Pos::Other: return 'o';
  }
  return 'o';
}

Pos pos_from_letter(char c) {
  switch (c) {
    case 'n': return Pos::Noun;
    case 'p': return Pos::Propn;
    case 'v': return Pos::Verb;
    case 'j': return Pos::Adj;
    case 'o': return Pos::Other;
  }
  throw Error(fmt::format("unknown context POS letter '{}'", c));
}

}  // namespace

ContextKey ContextKey::window(std::string lemma, Pos pos, Side side) {
  ContextKey k;
  k.model = ContextModel::Window;
  k.lemma = std::move(lemma);
  k.pos = pos;
  k.side = side;
  return k;
}

ContextKey ContextKey::document(std::string doc_id) {
  ContextKey k;
  k.model = ContextModel::Document;
  k.doc_id = std::move(doc_id);
  return k;
}

std::string ContextKey::str() const {
  if (model == ContextModel::Document) return doc_id;
  std::string s = lemma;
  s += '-';
  s += pos_letter(pos);
  s += '-';
  s += side == Side::Left ? 'l' : 'r';
  return s;
}

ContextKey ContextKey::parse(ContextModel model, std::string_view text) {
  if (model == ContextModel::Document) return document(std::string(text));
  if (text.size() < 5 || text[text.size() - 2] != '-' || text[text.size() - 4] != '-')
    throw Error(fmt::format("malformed window context key '{}'", text));
  char side = text.back();
  if (side != 'l' && side != 'r') throw Error(fmt::format("bad side in context key '{}'", text));
  return window(std::string(text.substr(0, text.size() - 4)), pos_from_letter(text[text.size() - 3]),
                side == 'l' ? Side::Left : Side::Right);
}

template <typename Scalar>
CooccurrenceMatrix<Scalar> CooccurrenceBuilder<Scalar>::build() const {
  auto sorted_ranks = [](const std::vector<std::string>& names) {
    std::vector<int> order(names.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return names[a] < names[b]; });
    std::vector<int> rank(names.size());
    std::vector<std::string> sorted(names.size());
    for (std::size_t r = 0; r < order.size(); ++r) {
      rank[order[r]] = static_cast<int>(r);
      sorted[r] = names[order[r]];
    }
    return std::pair{rank, sorted};
  };
  auto [term_rank, terms] = sorted_ranks(term_names_);
  auto [context_rank, contexts] = sorted_ranks(context_names_);

  std::vector<Eigen::Triplet<Scalar, int>> remapped;
  remapped.reserve(triplets_.size());
  for (const auto& t : triplets_)
    remapped.emplace_back(term_rank[t.row()], context_rank[t.col()], t.value());

  typename CooccurrenceMatrix<Scalar>::Storage data(static_cast<int>(terms.size()),
                                                    static_cast<int>(contexts.size()));
  data.setFromTriplets(remapped.begin(), remapped.end());
  data.prune(Scalar(0));
  return CooccurrenceMatrix<Scalar>(model_, window_size_, std::move(terms), std::move(contexts),
                                    std::move(data));
}

template class CooccurrenceBuilder<std::int64_t>;
template class CooccurrenceBuilder<double>;

TermSet::TermSet(std::vector<std::string> terms) : terms_(std::move(terms)) {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    auto [_, inserted] = index_.emplace(terms_[i], i);
    if (!inserted) throw Error("duplicate term in term set: " + terms_[i]);
  }
}

ContextMatrix extract_window_contexts(const Corpus& corpus, int window_size) {
  if (window_size < 3 || window_size % 2 == 0)
    throw Error(fmt::format("window size must be odd and >= 3, got {}", window_size));
  const int half = (window_size - 1) / 2;
  CooccurrenceBuilder<std::int64_t> builder(ContextModel::Window, window_size);
  for (const auto& doc : corpus.documents) {
    for (const auto& sentence : doc.sentences) {
      const int len = static_cast<int>(sentence.size());
      for (int i = 0; i < len; ++i) {
        if (!is_noun(sentence[i].pos)) continue;
        for (int j = std::max(0, i - half); j <= std::min(len - 1, i + half); ++j) {
          if (j == i || !is_content(sentence[j].pos)) continue;
          auto key = ContextKey::window(sentence[j].lemma, sentence[j].pos, j < i ? Side::Left : Side::Right);
          builder.add(sentence[i].lemma, key.str());
        }
      }
    }
  }
  return builder.build();
}

ContextMatrix extract_document_contexts(const Corpus& corpus) {
  CooccurrenceBuilder<std::int64_t> builder(ContextModel::Document, 0);
  for (const auto& doc : corpus.documents)
    for (const auto& sentence : doc.sentences)
      for (const auto& tok : sentence)
        if (is_noun(tok.pos)) builder.add(tok.lemma, doc.id);
  return builder.build();
}

TermSet select_vocabulary(const ContextMatrix& matrix, const GoldTaxonomy& gold, std::size_t n) {
  if (n == 0) throw Error("vocabulary size must be >= 1");
  if (matrix.empty()) throw Error("cannot select vocabulary from an empty matrix");
  std::vector<std::pair<ContextMatrix::Index, const std::string*>> candidates;
  for (ContextMatrix::Index i = 0; i < matrix.rows(); ++i)
    if (gold.contains_term(matrix.term(i))) candidates.emplace_back(matrix.distinct_contexts(i), &matrix.term(i));
  if (candidates.empty()) throw Error("no matrix term is present in the gold standard");
  std::sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return *a.second < *b.second;
  });
  if (candidates.size() > n) candidates.resize(n);
  std::vector<std::string> terms;
  terms.reserve(candidates.size());
  for (const auto& c : candidates) terms.push_back(*c.second);
  return TermSet(std::move(terms));
}

template <typename Scalar>
CooccurrenceMatrix<Scalar> restrict_rows(const CooccurrenceMatrix<Scalar>& m, const TermSet& vocab) {
  CooccurrenceBuilder<Scalar> builder(m.model(), m.window_size());
  const auto& data = m.data();
  for (const auto& t : vocab) {
    auto i = m.find_term(t);
    if (!i) continue;
    for (typename CooccurrenceMatrix<Scalar>::Storage::InnerIterator it(data, *i); it; ++it)
      builder.add(t, m.context(it.col()), it.value());
  }
  return builder.build();
}

template CooccurrenceMatrix<std::int64_t> restrict_rows(const CooccurrenceMatrix<std::int64_t>&,
                                                        const TermSet&);
template CooccurrenceMatrix<double> restrict_rows(const CooccurrenceMatrix<double>&, const TermSet&);

template <typename Scalar>
void write_matrix(const CooccurrenceMatrix<Scalar>& m, std::ostream& out) {
  const auto& data = m.data();
  for (int i = 0; i < data.outerSize(); ++i)
    for (typename CooccurrenceMatrix<Scalar>::Storage::InnerIterator it(data, i); it; ++it)
      out << fmt::format("{}\t{}\t{}\n", m.term(i), m.context(it.col()), it.value());
}

template void write_matrix(const CooccurrenceMatrix<std::int64_t>&, std::ostream&);
template void write_matrix(const CooccurrenceMatrix<double>&, std::ostream&);

void write_matrix_file(const ContextMatrix& m, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  write_matrix(m, out);
}

ContextMatrix read_matrix(std::istream& in, ContextModel model, int window_size, const std::string& source) {
  CooccurrenceBuilder<std::int64_t> builder(model, window_size);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto fields = split(line, '\t');
    if (fields.size() != 3) throw ParseError(source, lineno, "expected term<TAB>context<TAB>count");
    std::int64_t count = 0;
    try {
      count = std::stoll(fields[2]);
    } catch (const std::exception&) {
      throw ParseError(source, lineno, "count is not an integer");
    }
    if (count <= 0) throw ParseError(source, lineno, "count must be positive");
    builder.add(fields[0], fields[1], count);
  }
  return builder.build();
}

}  // namespace taxo
