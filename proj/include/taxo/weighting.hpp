#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "taxo/contexts.hpp"

namespace taxo {

enum class WeightScheme { PPMI, LMI };

// Association weights over the cells of a count matrix. Cells whose weight
// clamps to zero are not stored.
class WeightedMatrix : public CooccurrenceMatrix<double> {
 public:
  WeightedMatrix() = default;
  WeightedMatrix(WeightScheme scheme, CooccurrenceMatrix<double> values)
      : CooccurrenceMatrix<double>(std::move(values)), scheme_(scheme) {}

  WeightScheme scheme() const { return scheme_; }

 private:
  WeightScheme scheme_ = WeightScheme::PPMI;
};

// PMI(t,c) = ln( count(t,c)*total / (rowsum(t)*colsum(c)) ). The ratio is
// formed from integer products, so scaling every count by the same positive
// factor leaves it bit-identical.
double pmi(std::int64_t count, std::int64_t row_sum, std::int64_t col_sum, std::int64_t total);

WeightedMatrix weight_ppmi(const ContextMatrix& m);
WeightedMatrix weight_lmi(const ContextMatrix& m);

struct EntropyTable {
  std::vector<std::string> contexts;  // same order as the source matrix columns
  std::vector<double> raw;            // Shannon entropy in bits
  std::vector<double> normalized;     // min-max scaled to [0,1]

  // Label -> index lookup; -1 when absent.
  std::ptrdiff_t find(const std::string& context) const;
};

// H(c) = -sum_t p(t|c) log2 p(t|c), then min-max scaled over all contexts.
// When every context has the same entropy, all normalized values are 0.
EntropyTable context_entropies(const ContextMatrix& m);

// Median normalized entropy of the term's top-N contexts by LMI (ties broken
// by context label). Throws UndefinedValue when the term has no positive LMI
// context.
double word_generality(const std::string& term, const WeightedMatrix& lmi, const EntropyTable& ent,
                       std::size_t top_n = 50);

// Median of a non-empty list; even lengths average the two middle values.
double median(std::vector<double> values);

}  // namespace taxo
