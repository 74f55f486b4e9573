#pragma once

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "taxo/gold.hpp"
#include "taxo/relations.hpp"
#include "taxo/taxonomy.hpp"

namespace taxo {

// (hypernym, hyponym) pairs.
using PairSet = std::set<std::pair<std::string, std::string>>;

// Common relations of term c: for every other term c_i shared by both
// structures, (c_i, c) when c_i is above c in `o1` and (c, c_i) when c is
// above c_i, using o1's transitive order. Empty when c is missing from
// either structure.
PairSet common_relations(const std::string& c, const Taxonomy& o1, const Taxonomy& o2);
PairSet common_relations(const std::string& c, const Taxonomy& o1, const GoldTaxonomy& o2);
PairSet common_relations(const std::string& c, const GoldTaxonomy& o1, const Taxonomy& o2);

struct EvalReport {
  double precision = 0.0;
  double recall = 0.0;
  double fmeasure = 0.0;
  std::size_t matched = 0;         // sum_c |CR(c,T,GS) & CR(c,GS,T)|
  std::size_t extracted = 0;       // sum_c |CR(c,T,GS)|
  std::size_t gold = 0;            // sum_c |CR(c,GS,T)|
  std::size_t shared_terms = 0;    // |C_T & C_GS|
  bool no_shared_terms = false;    // warning: nothing to compare
};

double fmeasure(double precision, double recall);

EvalReport evaluate(const Taxonomy& extracted, const GoldTaxonomy& gold);
EvalReport evaluate(const RelationSet& extracted, const GoldTaxonomy& gold);

struct Complementarity {
  double direct = 0.0;   // |A & B| / |A|
  double inverse = 0.0;  // |A & invert(B)| / |A|
};

// Throws Error when A is empty.
Complementarity complementarity(const RelationSet& a, const RelationSet& b);

// P(A & B) / P(A); 0 when the intersection is empty. Throws UndefinedValue
// when P(A) = 0.
double relative_precision(const RelationSet& a, const RelationSet& b, const GoldTaxonomy& gold);

// Row = reference method, column = other method. Undefined cells are NaN.
struct ComplementarityMatrix {
  std::vector<std::string> methods;
  Eigen::MatrixXd direct;
  Eigen::MatrixXd inverse;
  Eigen::MatrixXd relative_precision;
};

// `gold` may be null, in which case relative precision is left NaN.
ComplementarityMatrix complementarity_matrix(const std::vector<RelationSet>& sets, const GoldTaxonomy* gold);

// Methods x methods CSV; NaN cells are written as NA.
void write_csv(const std::vector<std::string>& methods, const Eigen::MatrixXd& values, std::ostream& out);

std::string report_json(const EvalReport& r);

}  // namespace taxo
