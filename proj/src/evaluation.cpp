#include "taxo/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include <fmt/format.h>
#include <json.hpp>

#include "taxo/error.hpp"

namespace taxo {
namespace {

// Transitive order of a taxonomy.
class TaxonomyOrder {
 public:
  explicit TaxonomyOrder(const Taxonomy& t) : t_(t), reach_(t) {}
  bool has(const std::string& term) const { return t_.contains(term); }
  bool above(const std::string& a, const std::string& b) const {
    const int u = t_.find(a), v = t_.find(b);
    return u >= 0 && v >= 0 && reach_.reaches(u, v);
  }

 private:
  const Taxonomy& t_;
  Reachability reach_;
};

class GoldOrder {
 public:
  explicit GoldOrder(const GoldTaxonomy& g) : g_(g) {}
  bool has(const std::string& term) const { return g_.contains_term(term); }
  bool above(const std::string& a, const std::string& b) const { return g_.is_hypernym(a, b); }

 private:
  const GoldTaxonomy& g_;
};

template <typename First, typename Second>
PairSet common_relations_impl(const std::string& c, const First& o1, const Second& o2,
                              const std::vector<std::string>& candidates) {
  PairSet out;
  if (!o1.has(c) || !o2.has(c)) return out;
  for (const auto& ci : candidates) {
    if (ci == c || !o1.has(ci) || !o2.has(ci)) continue;
    if (o1.above(ci, c)) out.emplace(ci, c);
    if (o1.above(c, ci)) out.emplace(c, ci);
  }
  return out;
}

}  // namespace

PairSet common_relations(const std::string& c, const Taxonomy& o1, const Taxonomy& o2) {
  return common_relations_impl(c, TaxonomyOrder(o1), TaxonomyOrder(o2), o1.names());
}

PairSet common_relations(const std::string& c, const Taxonomy& o1, const GoldTaxonomy& o2) {
  return common_relations_impl(c, TaxonomyOrder(o1), GoldOrder(o2), o1.names());
}

PairSet common_relations(const std::string& c, const GoldTaxonomy& o1, const Taxonomy& o2) {
  return common_relations_impl(c, GoldOrder(o1), TaxonomyOrder(o2), o2.names());
}

double fmeasure(double precision, double recall) {
  return precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
}

EvalReport evaluate(const Taxonomy& extracted, const GoldTaxonomy& gold) {
  EvalReport r;
  std::vector<int> shared;  // taxonomy node ids
  for (std::size_t v = 0; v < extracted.num_nodes(); ++v)
    if (gold.contains_term(extracted.name(static_cast<int>(v)))) shared.push_back(static_cast<int>(v));
  r.shared_terms = shared.size();
  if (shared.empty()) {
    r.no_shared_terms = true;
    return r;
  }

  const Reachability reach(extracted);
  const std::size_t n = shared.size();
  // gold_above[a * n + b]: shared term a is a gold hypernym of shared term b.
  std::vector<char> gold_above(n * n, 0);
  std::vector<std::vector<int>> synsets(n);
  for (std::size_t a = 0; a < n; ++a) synsets[a] = gold.synsets_of(extracted.name(shared[a]));
  for (std::size_t b = 0; b < n; ++b) {
    std::vector<std::set<int>> ancestors;
    for (int s : synsets[b]) ancestors.push_back(gold.strict_ancestors(s));
    for (std::size_t a = 0; a < n; ++a) {
      if (a == b) continue;
      bool hit = false;
      for (const auto& anc : ancestors) {
        for (int s : synsets[a])
          if (anc.count(s)) {
            hit = true;
            break;
          }
        if (hit) break;
      }
      gold_above[a * n + b] = hit;
    }
  }

  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c) continue;
      const bool t_up = reach.reaches(shared[i], shared[c]);    // (c_i, c) in CR(c, T, GS)
      const bool t_down = reach.reaches(shared[c], shared[i]);  // (c, c_i)
      const bool g_up = gold_above[i * n + c];
      const bool g_down = gold_above[c * n + i];
      r.extracted += t_up + t_down;
      r.gold += g_up + g_down;
      r.matched += (t_up && g_up) + (t_down && g_down);
    }

  r.precision = r.extracted ? static_cast<double>(r.matched) / static_cast<double>(r.extracted) : 0.0;
  r.recall = r.gold ? static_cast<double>(r.matched) / static_cast<double>(r.gold) : 0.0;
  r.fmeasure = fmeasure(r.precision, r.recall);
  return r;
}

EvalReport evaluate(const RelationSet& extracted, const GoldTaxonomy& gold) {
  return evaluate(build_taxonomy(extracted), gold);
}

Complementarity complementarity(const RelationSet& a, const RelationSet& b) {
  if (a.empty()) throw Error("complementarity undefined for an empty reference relation set (" + a.method() + ")");
  std::size_t direct = 0, inverse = 0;
  for (const auto& [key, score] : a) {
    direct += b.contains(key.first, key.second);
    inverse += b.contains(key.second, key.first);
  }
  const double size = static_cast<double>(a.size());
  return {static_cast<double>(direct) / size, static_cast<double>(inverse) / size};
}

double relative_precision(const RelationSet& a, const RelationSet& b, const GoldTaxonomy& gold) {
  if (a.empty()) throw Error("relative precision undefined for an empty relation set");
  const double base = evaluate(a, gold).precision;
  if (base == 0.0) throw UndefinedValue("relative precision undefined: precision of " + a.method() + " is 0");
  const RelationSet shared = intersect(a, b);
  if (shared.empty()) return 0.0;
  return evaluate(shared, gold).precision / base;
}

ComplementarityMatrix complementarity_matrix(const std::vector<RelationSet>& sets, const GoldTaxonomy* gold) {
  const auto n = static_cast<Eigen::Index>(sets.size());
  const double nan = std::numeric_limits<double>::quiet_NaN();
  ComplementarityMatrix m;
  m.direct = Eigen::MatrixXd::Constant(n, n, nan);
  m.inverse = Eigen::MatrixXd::Constant(n, n, nan);
  m.relative_precision = Eigen::MatrixXd::Constant(n, n, nan);
  for (const auto& s : sets) m.methods.push_back(s.method());
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& a = sets[static_cast<std::size_t>(i)];
    if (a.empty()) continue;
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto& b = sets[static_cast<std::size_t>(j)];
      const auto c = complementarity(a, b);
      m.direct(i, j) = c.direct;
      m.inverse(i, j) = c.inverse;
      if (gold) {
        try {
          m.relative_precision(i, j) = relative_precision(a, b, *gold);
        } catch (const UndefinedValue&) {
        }
      }
    }
  }
  return m;
}

void write_csv(const std::vector<std::string>& methods, const Eigen::MatrixXd& values, std::ostream& out) {
  out << "method";
  for (const auto& m : methods) out << ',' << m;
  out << '\n';
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    out << methods[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      if (std::isnan(values(i, j)))
        out << ",NA";
      else
        out << fmt::format(",{:.4f}", values(i, j));
    }
    out << '\n';
  }
}

std::string report_json(const EvalReport& r) {
  nlohmann::ordered_json j;
  j["precision"] = r.precision;
  j["recall"] = r.recall;
  j["fmeasure"] = r.fmeasure;
  j["matched"] = r.matched;
  j["extracted"] = r.extracted;
  j["gold"] = r.gold;
  j["shared_terms"] = r.shared_terms;
  j["no_shared_terms"] = r.no_shared_terms;
  return j.dump(2) + "\n";
}

}  // namespace taxo
