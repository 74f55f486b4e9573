#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/SparseCore>

#include "taxo/corpus.hpp"

namespace taxo {

class GoldTaxonomy;

enum class ContextModel { Window, Document };
enum class Side { Left, Right };

// Window contexts render as "<lemma>-<tag>-<side>" ("barked-v-r"); tags are
// n (NOUN), p (PROPN), v (VERB), j (ADJ); sides l and r. Document contexts
// render as the document id.
struct ContextKey {
  ContextModel model = ContextModel::Window;
  std::string lemma;  // window model
  Pos pos = Pos::Other;
  Side side = Side::Left;
  std::string doc_id;  // document model

  static ContextKey window(std::string lemma, Pos pos, Side side);
  static ContextKey document(std::string doc_id);
  static ContextKey parse(ContextModel model, std::string_view text);

  std::string str() const;
};

// Sparse term x context matrix. Rows and columns are kept in lexicographic
// order of their labels, so row-major traversal is already sorted.
template <typename Scalar>
class CooccurrenceMatrix {
 public:
  using Storage = Eigen::SparseMatrix<Scalar, Eigen::RowMajor>;
  using Index = typename Storage::StorageIndex;

  CooccurrenceMatrix() = default;
  CooccurrenceMatrix(ContextModel model, int window_size, std::vector<std::string> terms,
                     std::vector<std::string> contexts, Storage data)
      : model_(model),
        window_size_(window_size),
        terms_(std::move(terms)),
        contexts_(std::move(contexts)),
        data_(std::move(data)) {
    data_.makeCompressed();
    for (std::size_t i = 0; i < terms_.size(); ++i) term_index_.emplace(terms_[i], static_cast<Index>(i));
    for (std::size_t j = 0; j < contexts_.size(); ++j)
      context_index_.emplace(contexts_[j], static_cast<Index>(j));
  }

  ContextModel model() const { return model_; }
  int window_size() const { return window_size_; }
  Index rows() const { return static_cast<Index>(terms_.size()); }
  Index cols() const { return static_cast<Index>(contexts_.size()); }
  bool empty() const { return data_.nonZeros() == 0; }

  const std::vector<std::string>& terms() const { return terms_; }
  const std::vector<std::string>& contexts() const { return contexts_; }
  const std::string& term(Index i) const { return terms_[static_cast<std::size_t>(i)]; }
  const std::string& context(Index j) const { return contexts_[static_cast<std::size_t>(j)]; }
  const Storage& data() const { return data_; }

  std::optional<Index> find_term(const std::string& t) const {
    auto it = term_index_.find(t);
    if (it == term_index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<Index> find_context(const std::string& c) const {
    auto it = context_index_.find(c);
    if (it == context_index_.end()) return std::nullopt;
    return it->second;
  }

  Scalar at(const std::string& t, const std::string& c) const {
    auto i = find_term(t);
    auto j = find_context(c);
    if (!i || !j) return Scalar(0);
    return data_.coeff(*i, *j);
  }

  // Number of stored (non-zero) contexts of row i.
  Index distinct_contexts(Index i) const {
    return data_.outerIndexPtr()[i + 1] - data_.outerIndexPtr()[i];
  }

  Eigen::SparseVector<Scalar> row_vector(Index i) const { return data_.row(i); }

 private:
  ContextModel model_ = ContextModel::Window;
  int window_size_ = 0;
  std::vector<std::string> terms_;
  std::vector<std::string> contexts_;
  std::unordered_map<std::string, Index> term_index_;
  std::unordered_map<std::string, Index> context_index_;
  Storage data_;
};

using ContextMatrix = CooccurrenceMatrix<std::int64_t>;

// Accumulates (term, context) observations and produces a sorted matrix.
template <typename Scalar>
class CooccurrenceBuilder {
 public:
  CooccurrenceBuilder(ContextModel model, int window_size) : model_(model), window_size_(window_size) {}

  void add(const std::string& term, const std::string& context, Scalar value = Scalar(1)) {
    auto t = intern(term_ids_, term_names_, term);
    auto c = intern(context_ids_, context_names_, context);
    triplets_.emplace_back(t, c, value);
  }

  CooccurrenceMatrix<Scalar> build() const;

 private:
  static int intern(std::unordered_map<std::string, int>& ids, std::vector<std::string>& names,
                    const std::string& s) {
    auto [it, inserted] = ids.emplace(s, static_cast<int>(names.size()));
    if (inserted) names.push_back(s);
    return it->second;
  }

  ContextModel model_;
  int window_size_;
  std::unordered_map<std::string, int> term_ids_, context_ids_;
  std::vector<std::string> term_names_, context_names_;
  std::vector<Eigen::Triplet<Scalar, int>> triplets_;
};

// Ordered list of distinct target terms.
class TermSet {
 public:
  TermSet() = default;
  explicit TermSet(std::vector<std::string> terms);

  const std::vector<std::string>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  bool contains(const std::string& t) const { return index_.count(t) > 0; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

 private:
  std::vector<std::string> terms_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Co-occurrences of each NOUN/PROPN token with the content words at most
// (window_size-1)/2 positions away inside the same sentence. Every token,
// content or not, occupies a position. window_size must be odd and >= 3.
ContextMatrix extract_window_contexts(const Corpus& corpus, int window_size = 5);

// Frequency of each NOUN/PROPN lemma in each document.
ContextMatrix extract_document_contexts(const Corpus& corpus);

// Top-n terms present in both the matrix and the gold standard, by distinct
// context count (descending) then lemma.
TermSet select_vocabulary(const ContextMatrix& matrix, const GoldTaxonomy& gold, std::size_t n);

// Restricts a matrix to the rows in `vocab` (columns kept as-is).
template <typename Scalar>
CooccurrenceMatrix<Scalar> restrict_rows(const CooccurrenceMatrix<Scalar>& m, const TermSet& vocab);

// `term<TAB>context<TAB>value` lines, sorted.
template <typename Scalar>
void write_matrix(const CooccurrenceMatrix<Scalar>& m, std::ostream& out);
void write_matrix_file(const ContextMatrix& m, const std::filesystem::path& path);
ContextMatrix read_matrix(std::istream& in, ContextModel model, int window_size,
                          const std::string& source = "<stream>");

}  // namespace taxo
