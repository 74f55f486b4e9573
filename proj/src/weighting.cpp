#include "taxo/weighting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "taxo/error.hpp"

namespace taxo {
namespace {

using Counts = ContextMatrix::Storage;

struct Marginals {
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1> rows;
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1> cols;
  std::int64_t total = 0;
};

Marginals marginals(const ContextMatrix& m) {
  Marginals mg;
  mg.rows = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>::Zero(m.rows());
  mg.cols = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>::Zero(m.cols());
  const auto& data = m.data();
  for (int i = 0; i < data.outerSize(); ++i)
    for (Counts::InnerIterator it(data, i); it; ++it) {
      mg.rows(i) += it.value();
      mg.cols(it.col()) += it.value();
    }
  mg.total = mg.rows.sum();
  return mg;
}

template <typename CellWeight>
WeightedMatrix reweight(const ContextMatrix& m, WeightScheme scheme, CellWeight weight) {
  if (m.empty()) throw Error("cannot weight an empty matrix");
  const auto mg = marginals(m);
  const auto& data = m.data();
  std::vector<Eigen::Triplet<double, int>> cells;
  cells.reserve(static_cast<std::size_t>(data.nonZeros()));
  for (int i = 0; i < data.outerSize(); ++i)
    for (Counts::InnerIterator it(data, i); it; ++it) {
      double w = weight(it.value(), pmi(it.value(), mg.rows(i), mg.cols(it.col()), mg.total));
      if (w > 0.0) cells.emplace_back(i, static_cast<int>(it.col()), w);
    }
  CooccurrenceMatrix<double>::Storage values(m.rows(), m.cols());
  values.setFromTriplets(cells.begin(), cells.end());
  return WeightedMatrix(scheme, CooccurrenceMatrix<double>(m.model(), m.window_size(), m.terms(),
                                                           m.contexts(), std::move(values)));
}

}  // namespace

double pmi(std::int64_t count, std::int64_t row_sum, std::int64_t col_sum, std::int64_t total) {
  const double num = static_cast<double>(count) * static_cast<double>(total);
  const double den = static_cast<double>(row_sum) * static_cast<double>(col_sum);
  return std::log(num / den);
}

WeightedMatrix weight_ppmi(const ContextMatrix& m) {
  return reweight(m, WeightScheme::PPMI, [](std::int64_t, double p) { return std::max(0.0, p); });
}

WeightedMatrix weight_lmi(const ContextMatrix& m) {
  return reweight(m, WeightScheme::LMI,
                  [](std::int64_t count, double p) { return std::max(0.0, static_cast<double>(count) * p); });
}

std::ptrdiff_t EntropyTable::find(const std::string& context) const {
  auto it = std::lower_bound(contexts.begin(), contexts.end(), context);
  if (it == contexts.end() || *it != context) return -1;
  return it - contexts.begin();
}

EntropyTable context_entropies(const ContextMatrix& m) {
  EntropyTable table;
  table.contexts = m.contexts();
  const auto n = static_cast<std::size_t>(m.cols());
  table.raw.assign(n, 0.0);
  table.normalized.assign(n, 0.0);

  const auto mg = marginals(m);
  const auto& data = m.data();
  for (int i = 0; i < data.outerSize(); ++i)
    for (Counts::InnerIterator it(data, i); it; ++it) {
      const double p = static_cast<double>(it.value()) / static_cast<double>(mg.cols(it.col()));
      table.raw[static_cast<std::size_t>(it.col())] -= p * std::log2(p);
    }
  for (auto& h : table.raw) h = std::max(0.0, h);  // clear -0.0

  if (n == 0) return table;
  const auto [lo, hi] = std::minmax_element(table.raw.begin(), table.raw.end());
  const double min = *lo, range = *hi - *lo;
  if (range > 0.0)
    for (std::size_t j = 0; j < n; ++j) table.normalized[j] = (table.raw[j] - min) / range;
  return table;
}

double median(std::vector<double> values) {
  if (values.empty()) throw UndefinedValue("median of an empty list");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return (values[mid - 1] + values[mid]) / 2.0;
}

double word_generality(const std::string& term, const WeightedMatrix& lmi, const EntropyTable& ent,
                       std::size_t top_n) {
  auto row = lmi.find_term(term);
  if (!row || lmi.distinct_contexts(*row) == 0)
    throw UndefinedValue("generality undefined: '" + term + "' has no associated contexts");

  std::vector<std::pair<double, int>> ranked;
  for (WeightedMatrix::Storage::InnerIterator it(lmi.data(), *row); it; ++it)
    ranked.emplace_back(it.value(), static_cast<int>(it.col()));
  // Columns are label-sorted, so the column index breaks ties lexicographically.
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  if (top_n > 0 && ranked.size() > top_n) ranked.resize(top_n);

  std::vector<double> entropies;
  entropies.reserve(ranked.size());
  for (const auto& [w, col] : ranked) {
    auto idx = ent.find(lmi.context(col));
    if (idx < 0) throw Error("entropy table has no entry for context " + lmi.context(col));
    entropies.push_back(ent.normalized[static_cast<std::size_t>(idx)]);
  }
  return median(std::move(entropies));
}

}  // namespace taxo
