#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "taxo/contexts.hpp"
#include "taxo/error.hpp"
#include "taxo/relations.hpp"
#include "taxo/weighting.hpp"

namespace taxo {

enum class DirectionalMeasure { ClarkeDE, WeedsPrec };

DirectionalMeasure parse_measure(std::string_view name);
std::string_view to_string(DirectionalMeasure m);

namespace detail {

// Visits features of u in support order, pairing each with v's weight (0 if
// absent). Only positive weights count as features.
template <typename Scalar, typename Visit>
Scalar visit_inclusion(const Eigen::SparseVector<Scalar>& u, const Eigen::SparseVector<Scalar>& v, Visit visit) {
  Scalar total(0);
  typename Eigen::SparseVector<Scalar>::InnerIterator iu(u), iv(v);
  for (; iu; ++iu) {
    if (!(iu.value() > Scalar(0))) continue;
    total += iu.value();
    while (iv && iv.index() < iu.index()) ++iv;
    Scalar wv = (iv && iv.index() == iu.index() && iv.value() > Scalar(0)) ? iv.value() : Scalar(0);
    visit(iu.value(), wv);
  }
  if (!(total > Scalar(0))) throw Error("directional measure undefined: first vector has no positive feature");
  return total;
}

}  // namespace detail

// Weeds precision: share of u's weight on features that v also has.
template <typename Scalar>
double weeds_precision(const Eigen::SparseVector<Scalar>& u, const Eigen::SparseVector<Scalar>& v) {
  Scalar shared(0);
  Scalar total = detail::visit_inclusion(u, v, [&](Scalar wu, Scalar wv) {
    if (wv > Scalar(0)) shared += wu;
  });
  return static_cast<double>(shared) / static_cast<double>(total);
}

// ClarkeDE: included features count with min(w_u, w_v).
template <typename Scalar>
double clarke_de(const Eigen::SparseVector<Scalar>& u, const Eigen::SparseVector<Scalar>& v) {
  Scalar shared(0);
  Scalar total = detail::visit_inclusion(u, v, [&](Scalar wu, Scalar wv) {
    if (wv > Scalar(0)) shared += std::min(wu, wv);
  });
  return static_cast<double>(shared) / static_cast<double>(total);
}

template <typename Scalar>
double directional_similarity(DirectionalMeasure m, const Eigen::SparseVector<Scalar>& u,
                              const Eigen::SparseVector<Scalar>& v) {
  return m == DirectionalMeasure::ClarkeDE ? clarke_de(u, v) : weeds_precision(u, v);
}

// For each vocabulary pair with overlapping PPMI supports, emits (u, v) iff
// m(u->v) > m(v->u).
RelationSet extract_dsim(const WeightedMatrix& ppmi, const TermSet& vocab,
                         DirectionalMeasure measure = DirectionalMeasure::ClarkeDE);

// Emits (u, v) iff generality(v) > generality(u). Terms with undefined
// generality are skipped.
RelationSet extract_slqs(const WeightedMatrix& lmi, const EntropyTable& ent, const TermSet& vocab,
                         std::size_t top_n = 50);

// Total corpus frequency / document frequency of each term of a document
// matrix. Terms absent from the matrix yield 0.
std::int64_t term_frequency(const ContextMatrix& docm, const std::string& term);
std::int64_t document_frequency(const ContextMatrix& docm, const std::string& term);

// Emit (u, v) iff the statistic of v is strictly larger. Terms absent from
// the document matrix are skipped.
RelationSet extract_tf(const ContextMatrix& docm, const TermSet& vocab);
RelationSet extract_df(const ContextMatrix& docm, const TermSet& vocab);

// Document subsumption: with P(x|y) = |Dx & Dy| / |Dy|, emits (y, x) iff
// P(x|y) >= lambda and P(x|y) > P(y|x). lambda must lie in (0, 1].
RelationSet extract_docsub(const ContextMatrix& docm, const TermSet& vocab, double lambda);

// Average-linkage agglomerative clustering on cosine similarity of PPMI rows,
// stopped at k clusters. Merge ties go to the lexicographically smallest pair
// of cluster labels (a cluster's label is its smallest term). Clusters are
// returned sorted internally and by label.
std::vector<std::vector<std::string>> cluster_terms(const WeightedMatrix& ppmi, const TermSet& vocab,
                                                    std::size_t k);

// Cosine similarity of the rows for `terms` (missing rows are zero vectors).
Eigen::MatrixXd cosine_similarity(const WeightedMatrix& ppmi, const std::vector<std::string>& terms);

// Average-linkage merging on a dense similarity matrix down to k clusters.
// Returns member index lists sorted by smallest member.
std::vector<std::vector<int>> average_linkage(const Eigen::MatrixXd& similarity, std::size_t k);

// DF-directed relations restricted to pairs inside the same cluster.
RelationSet extract_hclust(const WeightedMatrix& ppmi, const ContextMatrix& docm, const TermSet& vocab,
                           std::size_t k);
RelationSet extract_hclust(const std::vector<std::vector<std::string>>& clusters, const ContextMatrix& docm);

}  // namespace taxo
