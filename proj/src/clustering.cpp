#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "taxo/extractors.hpp"

namespace taxo {

Eigen::MatrixXd cosine_similarity(const WeightedMatrix& ppmi, const std::vector<std::string>& terms) {
  const auto n = static_cast<int>(terms.size());
  std::vector<Eigen::Triplet<double, int>> cells;
  for (int r = 0; r < n; ++r) {
    auto i = ppmi.find_term(terms[static_cast<std::size_t>(r)]);
    if (!i) continue;
    for (WeightedMatrix::Storage::InnerIterator it(ppmi.data(), *i); it; ++it)
      cells.emplace_back(r, static_cast<int>(it.col()), it.value());
  }
  Eigen::SparseMatrix<double, Eigen::RowMajor> rows(n, ppmi.cols());
  rows.setFromTriplets(cells.begin(), cells.end());
  for (int r = 0; r < n; ++r) {
    const double norm = rows.row(r).norm();
    if (norm > 0.0) rows.row(r) /= norm;
  }
  Eigen::SparseMatrix<double> gram = rows * rows.transpose();
  return Eigen::MatrixXd(gram);
}

std::vector<std::vector<int>> average_linkage(const Eigen::MatrixXd& similarity, std::size_t k) {
  const auto n = static_cast<std::size_t>(similarity.rows());
  if (k < 1 || k > n) throw Error(fmt::format("cluster count must lie in [1, {}], got {}", n, k));

  Eigen::MatrixXd sim = similarity;
  std::vector<std::vector<int>> members(n);
  for (std::size_t i = 0; i < n; ++i) members[i] = {static_cast<int>(i)};
  std::vector<int> active(n);
  for (std::size_t i = 0; i < n; ++i) active[i] = static_cast<int>(i);

  // Best partner of each cluster among later labels; ties go to the smaller label.
  std::vector<double> best_sim(n, -std::numeric_limits<double>::infinity());
  std::vector<int> best_with(n, -1);
  auto rescan = [&](int i) {
    best_sim[i] = -std::numeric_limits<double>::infinity();
    best_with[i] = -1;
    for (auto it = std::upper_bound(active.begin(), active.end(), i); it != active.end(); ++it)
      if (sim(i, *it) > best_sim[i]) {
        best_sim[i] = sim(i, *it);
        best_with[i] = *it;
      }
  };
  for (int i : active) rescan(i);

  while (active.size() > k) {
    // First maximal pair in label order.
    int keep = -1;
    for (int i : active)
      if (best_with[i] >= 0 && (keep < 0 || best_sim[i] > best_sim[keep])) keep = i;
    const int drop = best_with[keep];

    const double nk = static_cast<double>(members[keep].size());
    const double nd = static_cast<double>(members[drop].size());
    for (int c : active) {
      if (c == keep || c == drop) continue;
      const double merged = (nk * sim(keep, c) + nd * sim(drop, c)) / (nk + nd);
      sim(keep, c) = sim(c, keep) = merged;
    }
    members[keep].insert(members[keep].end(), members[drop].begin(), members[drop].end());
    std::sort(members[keep].begin(), members[keep].end());
    members[drop].clear();
    active.erase(std::lower_bound(active.begin(), active.end(), drop));

    for (int i : active) {
      if (i > drop) break;
      if (i == keep || best_with[i] == keep || best_with[i] == drop) {
        rescan(i);
      } else if (i < keep) {
        const double s = sim(i, keep);
        if (s > best_sim[i] || (s == best_sim[i] && keep < best_with[i])) {
          best_sim[i] = s;
          best_with[i] = keep;
        }
      }
    }
  }

  std::vector<std::vector<int>> clusters;
  clusters.reserve(active.size());
  for (int c : active) clusters.push_back(std::move(members[c]));
  return clusters;
}

std::vector<std::vector<std::string>> cluster_terms(const WeightedMatrix& ppmi, const TermSet& vocab, std::size_t k) {
  std::vector<std::string> terms = vocab.terms();
  std::sort(terms.begin(), terms.end());
  auto groups = average_linkage(cosine_similarity(ppmi, terms), k);
  std::vector<std::vector<std::string>> clusters;
  clusters.reserve(groups.size());
  for (const auto& g : groups) {
    std::vector<std::string> named;
    named.reserve(g.size());
    for (int i : g) named.push_back(terms[static_cast<std::size_t>(i)]);
    clusters.push_back(std::move(named));
  }
  return clusters;
}

}  // namespace taxo
