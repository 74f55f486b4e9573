#include "taxo/extractors.hpp"

#include <algorithm>
#include <optional>

#include <fmt/format.h>

#include "taxo/text.hpp"

namespace taxo {
namespace {

// Vocabulary terms present in the matrix, in lexicographic order, paired with
// their row index.
template <typename Scalar>
std::vector<std::pair<std::string, int>> present_rows(const CooccurrenceMatrix<Scalar>& m, const TermSet& vocab) {
  std::vector<std::pair<std::string, int>> rows;
  for (const auto& t : vocab)
    if (auto i = m.find_term(t)) rows.emplace_back(t, static_cast<int>(*i));
  std::sort(rows.begin(), rows.end());
  return rows;
}

// Emits (u, v) for every pair whose statistic strictly increases from u to v.
RelationSet order_by_statistic(Method method, const std::vector<std::pair<std::string, double>>& stats) {
  RelationSet out(method);
  for (std::size_t a = 0; a < stats.size(); ++a)
    for (std::size_t b = a + 1; b < stats.size(); ++b) {
      const auto& [ta, sa] = stats[a];
      const auto& [tb, sb] = stats[b];
      if (sa < sb)
        out.insert(ta, tb, sb - sa);
      else if (sb < sa)
        out.insert(tb, ta, sa - sb);
    }
  return out;
}

std::vector<int> support(const ContextMatrix& docm, int row) {
  std::vector<int> cols;
  for (ContextMatrix::Storage::InnerIterator it(docm.data(), row); it; ++it) cols.push_back(static_cast<int>(it.col()));
  return cols;
}

std::size_t intersection_size(const std::vector<int>& a, const std::vector<int>& b) {
  std::size_t n = 0;
  auto ia = a.begin(), ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib)
      ++ia;
    else if (*ib < *ia)
      ++ib;
    else {
      ++n;
      ++ia;
      ++ib;
    }
  }
  return n;
}

}  // namespace

DirectionalMeasure parse_measure(std::string_view name) {
  auto n = case_fold(trim(name));
  if (n == "clarkede" || n == "clarke_de" || n == "clarke") return DirectionalMeasure::ClarkeDE;
  if (n == "weedsprec" || n == "weeds_prec" || n == "weeds") return DirectionalMeasure::WeedsPrec;
  throw Error(fmt::format("unknown directional measure '{}'", name));
}

std::string_view to_string(DirectionalMeasure m) {
  return m == DirectionalMeasure::ClarkeDE ? "ClarkeDE" : "WeedsPrec";
}

RelationSet extract_dsim(const WeightedMatrix& ppmi, const TermSet& vocab, DirectionalMeasure measure) {
  RelationSet out(Method::DSim);
  const auto rows = present_rows(ppmi, vocab);
  std::vector<Eigen::SparseVector<double>> vectors;
  vectors.reserve(rows.size());
  for (const auto& [t, i] : rows) vectors.push_back(ppmi.row_vector(i));

  for (std::size_t a = 0; a < rows.size(); ++a) {
    if (vectors[a].nonZeros() == 0) continue;
    for (std::size_t b = a + 1; b < rows.size(); ++b) {
      if (vectors[b].nonZeros() == 0) continue;
      const double ab = directional_similarity(measure, vectors[a], vectors[b]);
      if (ab == 0.0) continue;  // disjoint supports
      const double ba = directional_similarity(measure, vectors[b], vectors[a]);
      if (ab > ba)
        out.insert(rows[a].first, rows[b].first, ab);
      else if (ba > ab)
        out.insert(rows[b].first, rows[a].first, ba);
    }
  }
  return out;
}

RelationSet extract_slqs(const WeightedMatrix& lmi, const EntropyTable& ent, const TermSet& vocab,
                         std::size_t top_n) {
  std::vector<std::pair<std::string, double>> generality;
  for (const auto& t : vocab) {
    try {
      generality.emplace_back(t, word_generality(t, lmi, ent, top_n));
    } catch (const UndefinedValue&) {
    }
  }
  std::sort(generality.begin(), generality.end());
  RelationSet out(Method::SLQS);
  for (std::size_t a = 0; a < generality.size(); ++a)
    for (std::size_t b = a + 1; b < generality.size(); ++b) {
      const auto& [ta, ea] = generality[a];
      const auto& [tb, eb] = generality[b];
      if (ea < eb)
        out.insert(ta, tb, 1.0 - ea / eb);
      else if (eb < ea)
        out.insert(tb, ta, 1.0 - eb / ea);
    }
  return out;
}

std::int64_t term_frequency(const ContextMatrix& docm, const std::string& term) {
  auto i = docm.find_term(term);
  if (!i) return 0;
  std::int64_t total = 0;
  for (ContextMatrix::Storage::InnerIterator it(docm.data(), *i); it; ++it) total += it.value();
  return total;
}

std::int64_t document_frequency(const ContextMatrix& docm, const std::string& term) {
  auto i = docm.find_term(term);
  return i ? docm.distinct_contexts(*i) : 0;
}

RelationSet extract_tf(const ContextMatrix& docm, const TermSet& vocab) {
  std::vector<std::pair<std::string, double>> stats;
  for (const auto& [t, i] : present_rows(docm, vocab))
    stats.emplace_back(t, static_cast<double>(term_frequency(docm, t)));
  return order_by_statistic(Method::TF, stats);
}

RelationSet extract_df(const ContextMatrix& docm, const TermSet& vocab) {
  std::vector<std::pair<std::string, double>> stats;
  for (const auto& [t, i] : present_rows(docm, vocab)) stats.emplace_back(t, static_cast<double>(docm.distinct_contexts(i)));
  return order_by_statistic(Method::DF, stats);
}

RelationSet extract_docsub(const ContextMatrix& docm, const TermSet& vocab, double lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0)) throw Error(fmt::format("DocSub lambda must lie in (0, 1], got {}", lambda));
  const auto rows = present_rows(docm, vocab);
  std::vector<std::vector<int>> docs;
  docs.reserve(rows.size());
  for (const auto& [t, i] : rows) docs.push_back(support(docm, i));

  RelationSet out(Method::DocSub);
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = a + 1; b < rows.size(); ++b) {
      const std::size_t shared = intersection_size(docs[a], docs[b]);
      if (shared == 0) continue;
      const double p_a_given_b = static_cast<double>(shared) / static_cast<double>(docs[b].size());
      const double p_b_given_a = static_cast<double>(shared) / static_cast<double>(docs[a].size());
      // b is-a a
      if (p_a_given_b >= lambda && p_a_given_b > p_b_given_a) out.insert(rows[b].first, rows[a].first, p_a_given_b);
      // a is-a b
      if (p_b_given_a >= lambda && p_b_given_a > p_a_given_b) out.insert(rows[a].first, rows[b].first, p_b_given_a);
    }
  return out;
}

RelationSet extract_hclust(const std::vector<std::vector<std::string>>& clusters, const ContextMatrix& docm) {
  RelationSet out(Method::HClust);
  for (const auto& cluster : clusters) {
    if (cluster.size() < 2) continue;
    for (const auto& [key, score] : extract_df(docm, TermSet(cluster))) out.insert(key.first, key.second, score);
  }
  return out;
}

RelationSet extract_hclust(const WeightedMatrix& ppmi, const ContextMatrix& docm, const TermSet& vocab,
                           std::size_t k) {
  return extract_hclust(cluster_terms(ppmi, vocab, k), docm);
}

}  // namespace taxo
