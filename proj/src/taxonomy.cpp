#include "taxo/taxonomy.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <tuple>
#include <ostream>

#include <fmt/format.h>
#include <json.hpp>

#include "taxo/error.hpp"

namespace taxo {
namespace {

struct Components {
  std::vector<int> of;  // node -> component; components numbered sinks first
  int count = 0;
};

// Iterative Tarjan.
Components strongly_connected(const Taxonomy& t) {
  const int n = static_cast<int>(t.num_nodes());
  Components comps;
  comps.of.assign(static_cast<std::size_t>(n), -1);
  std::vector<int> index(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
  std::vector<char> on_stack(static_cast<std::size_t>(n), 0);
  std::vector<int> stack;
  int counter = 0;

  struct Frame {
    int node;
    std::set<int>::const_iterator next;
  };
  for (int root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    std::vector<Frame> frames;
    auto enter = [&](int v) {
      index[v] = low[v] = counter++;
      stack.push_back(v);
      on_stack[v] = 1;
      frames.push_back({v, t.children(v).begin()});
    };
    enter(root);
    while (!frames.empty()) {
      auto& f = frames.back();
      const int v = f.node;
      if (f.next != t.children(v).end()) {
        const int w = *f.next++;
        if (index[w] < 0)
          enter(w);
        else if (on_stack[w])
          low[v] = std::min(low[v], index[w]);
        continue;
      }
      if (low[v] == index[v]) {
        while (true) {
          const int w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comps.of[w] = comps.count;
          if (w == v) break;
        }
        ++comps.count;
      }
      frames.pop_back();
      if (!frames.empty()) {
        const int u = frames.back().node;
        low[u] = std::min(low[u], low[v]);
      }
    }
  }
  return comps;
}

// Topological order (parents before children) of a DAG; empty optional-like
// flag when cyclic.
bool topological_order(const Taxonomy& t, std::vector<int>& order) {
  const std::size_t n = t.num_nodes();
  std::vector<std::size_t> indeg(n);
  std::deque<int> ready;
  for (std::size_t v = 0; v < n; ++v) {
    indeg[v] = t.parents(static_cast<int>(v)).size();
    if (indeg[v] == 0) ready.push_back(static_cast<int>(v));
  }
  order.clear();
  while (!ready.empty()) {
    int v = ready.front();
    ready.pop_front();
    order.push_back(v);
    for (int c : t.children(v))
      if (--indeg[static_cast<std::size_t>(c)] == 0) ready.push_back(c);
  }
  return order.size() == n;
}

// Weakly connected components: node -> component id.
std::vector<int> weak_components(const Taxonomy& t, int& count) {
  const std::size_t n = t.num_nodes();
  std::vector<int> comp(n, -1);
  count = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::deque<int> queue{static_cast<int>(s)};
    comp[s] = count;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      auto visit = [&](int w) {
        if (comp[static_cast<std::size_t>(w)] < 0) {
          comp[static_cast<std::size_t>(w)] = count;
          queue.push_back(w);
        }
      };
      for (int w : t.children(v)) visit(w);
      for (int w : t.parents(v)) visit(w);
    }
    ++count;
  }
  return comp;
}

}  // namespace

int Taxonomy::add_node(const std::string& term) {
  auto [it, inserted] = index_.emplace(term, static_cast<int>(names_.size()));
  if (inserted) {
    names_.push_back(term);
    children_.emplace_back();
    parents_.emplace_back();
  }
  return it->second;
}

bool Taxonomy::add_edge(const std::string& hypernym, const std::string& hyponym) {
  if (hypernym == hyponym) return false;
  const int u = add_node(hypernym);
  const int v = add_node(hyponym);
  if (!children_[static_cast<std::size_t>(u)].insert(v).second) return false;
  parents_[static_cast<std::size_t>(v)].insert(u);
  ++num_edges_;
  reduced_ = false;
  return true;
}

bool Taxonomy::remove_edge(int hypernym, int hyponym) {
  if (children_[static_cast<std::size_t>(hypernym)].erase(hyponym) == 0) return false;
  parents_[static_cast<std::size_t>(hyponym)].erase(hypernym);
  --num_edges_;
  return true;
}

bool Taxonomy::has_edge(const std::string& hypernym, const std::string& hyponym) const {
  const int u = find(hypernym), v = find(hyponym);
  return u >= 0 && v >= 0 && children(u).count(v) > 0;
}

int Taxonomy::find(const std::string& term) const {
  auto it = index_.find(term);
  return it == index_.end() ? -1 : it->second;
}

std::vector<std::pair<std::string, std::string>> Taxonomy::edges() const {
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(num_edges_);
  for (std::size_t u = 0; u < names_.size(); ++u)
    for (int v : children_[u]) out.emplace_back(names_[u], names_[static_cast<std::size_t>(v)]);
  std::sort(out.begin(), out.end());
  return out;
}

bool Taxonomy::is_dag() const {
  std::vector<int> order;
  return topological_order(*this, order);
}

Reachability::Reachability(const Taxonomy& t) : n_(t.num_nodes()), words_((t.num_nodes() + 63) / 64) {
  bits_.assign(n_ * words_, 0);
  const auto comps = strongly_connected(t);
  std::vector<std::vector<int>> members(static_cast<std::size_t>(comps.count));
  for (std::size_t v = 0; v < n_; ++v) members[static_cast<std::size_t>(comps.of[v])].push_back(static_cast<int>(v));

  std::vector<std::uint64_t> comp_bits(static_cast<std::size_t>(comps.count) * words_, 0);
  auto set_bit = [&](std::uint64_t* row, int node) {
    row[static_cast<std::size_t>(node) / 64] |= std::uint64_t{1} << (static_cast<std::size_t>(node) % 64);
  };
  // Tarjan numbers sink components first, so successors are complete.
  for (int c = 0; c < comps.count; ++c) {
    std::uint64_t* row = &comp_bits[static_cast<std::size_t>(c) * words_];
    const auto& mem = members[static_cast<std::size_t>(c)];
    bool cyclic = mem.size() > 1;
    for (int v : mem)
      for (int w : t.children(v)) {
        const int d = comps.of[static_cast<std::size_t>(w)];
        if (d == c) {
          cyclic = true;
          continue;
        }
        set_bit(row, w);
        const std::uint64_t* other = &comp_bits[static_cast<std::size_t>(d) * words_];
        for (std::size_t k = 0; k < words_; ++k) row[k] |= other[k];
      }
    if (cyclic)
      for (int v : mem) set_bit(row, v);
  }
  for (std::size_t v = 0; v < n_; ++v)
    std::copy_n(&comp_bits[static_cast<std::size_t>(comps.of[v]) * words_], words_, &bits_[v * words_]);
}

Taxonomy build_taxonomy(const RelationSet& rels) {
  Taxonomy t;
  std::set<std::string> names;
  for (const auto& [key, score] : rels) {
    names.insert(key.first);
    names.insert(key.second);
  }
  for (const auto& n : names) t.add_node(n);
  for (const auto& [key, score] : rels) t.add_edge(key.second, key.first);
  t.set_source_relations(rels.size());
  return t;
}

Taxonomy break_cycles(Taxonomy t) {
  while (true) {
    const auto comps = strongly_connected(t);
    bool found = false;
    std::pair<const std::string*, const std::string*> worst{nullptr, nullptr};  // (hyponym, hypernym)
    int worst_u = -1, worst_v = -1;
    for (std::size_t u = 0; u < t.num_nodes(); ++u)
      for (int v : t.children(static_cast<int>(u))) {
        if (comps.of[u] != comps.of[static_cast<std::size_t>(v)]) continue;
        const std::string* hypo = &t.name(v);
        const std::string* hyper = &t.name(static_cast<int>(u));
        if (!found || std::tie(*hypo, *hyper) > std::tie(*worst.first, *worst.second)) {
          worst = {hypo, hyper};
          worst_u = static_cast<int>(u);
          worst_v = v;
          found = true;
        }
      }
    if (!found) return t;
    t.remove_edge(worst_u, worst_v);
  }
}

Taxonomy transitive_reduction(const Taxonomy& t) {
  if (!t.is_dag()) throw Error("transitive reduction requires an acyclic taxonomy; break cycles first");
  const Reachability reach(t);
  Taxonomy out;
  for (const auto& n : t.names()) out.add_node(n);
  for (std::size_t u = 0; u < t.num_nodes(); ++u) {
    const auto& kids = t.children(static_cast<int>(u));
    for (int v : kids) {
      bool implied = false;
      for (int w : kids)
        if (w != v && reach.reaches(w, v)) {
          implied = true;
          break;
        }
      if (!implied) out.add_edge(t.name(static_cast<int>(u)), t.name(v));
    }
  }
  out.set_source_relations(t.source_relations());
  out.mark_reduced(true);
  return out;
}

HierarchyMetrics compute_metrics(const Taxonomy& t) {
  if (t.num_edges() == 0) throw Error("cannot compute metrics of an empty taxonomy");
  std::vector<int> order;
  if (!topological_order(t, order)) throw Error("cannot compute metrics of a cyclic taxonomy");

  const std::size_t n = t.num_nodes();
  std::vector<std::size_t> depth(n, 0);
  for (int v : order)
    for (int c : t.children(v))
      depth[static_cast<std::size_t>(c)] = std::max(depth[static_cast<std::size_t>(c)], depth[static_cast<std::size_t>(v)] + 1);

  int ncomp = 0;
  const auto comp = weak_components(t, ncomp);
  std::vector<std::size_t> width_sum(static_cast<std::size_t>(ncomp), 0), width_count(static_cast<std::size_t>(ncomp), 0);

  HierarchyMetrics m;
  m.number_rels = t.source_relations() ? t.source_relations() : t.num_edges();
  m.min_depth = std::numeric_limits<std::size_t>::max();
  m.min_width = std::numeric_limits<std::size_t>::max();
  std::size_t depth_sum = 0;
  std::set<int> components_with_edges;
  for (std::size_t v = 0; v < n; ++v) {
    const auto& kids = t.children(static_cast<int>(v));
    const auto& pars = t.parents(static_cast<int>(v));
    if (kids.empty() && pars.empty()) {
      ++m.isolated_terms;
      continue;
    }
    ++m.total_terms;
    components_with_edges.insert(comp[v]);
    if (pars.empty()) ++m.total_roots;
    if (kids.empty()) {
      ++m.num_leaves;
      depth_sum += depth[v];
      m.max_depth = std::max(m.max_depth, depth[v]);
      m.min_depth = std::min(m.min_depth, depth[v]);
    } else {
      m.max_width = std::max(m.max_width, kids.size());
      m.min_width = std::min(m.min_width, kids.size());
      width_sum[static_cast<std::size_t>(comp[v])] += kids.size();
      ++width_count[static_cast<std::size_t>(comp[v])];
    }
  }
  m.num_taxonomies = components_with_edges.size();

  m.avg_depth = static_cast<double>(depth_sum) / static_cast<double>(m.total_roots);
  m.avg_depth_per_leaf = static_cast<double>(depth_sum) / static_cast<double>(m.num_leaves);
  m.depth_cohesion = static_cast<double>(m.max_depth) / m.avg_depth;
  m.depth_cohesion_per_leaf = static_cast<double>(m.max_depth) / m.avg_depth_per_leaf;
  double tax_width_sum = 0.0;
  for (int c : components_with_edges)
    tax_width_sum += static_cast<double>(width_sum[static_cast<std::size_t>(c)]) /
                     static_cast<double>(width_count[static_cast<std::size_t>(c)]);
  m.avg_width = tax_width_sum / static_cast<double>(m.total_roots);
  return m;
}

Taxonomy best_parent_filter(const Taxonomy& t, const ContextMatrix& docm) {
  const std::size_t n = t.num_nodes();
  std::vector<std::vector<int>> docs(n);
  for (std::size_t v = 0; v < n; ++v)
    if (auto row = docm.find_term(t.name(static_cast<int>(v))))
      for (ContextMatrix::Storage::InnerIterator it(docm.data(), *row); it; ++it)
        docs[v].push_back(static_cast<int>(it.col()));

  auto cond_prob = [&](int a, int x) {  // P(a|x)
    const auto& dx = docs[static_cast<std::size_t>(x)];
    const auto& da = docs[static_cast<std::size_t>(a)];
    if (dx.empty() || da.empty()) return 0.0;
    std::size_t shared = 0;
    auto ia = da.begin(), ix = dx.begin();
    while (ia != da.end() && ix != dx.end()) {
      if (*ia < *ix)
        ++ia;
      else if (*ix < *ia)
        ++ix;
      else {
        ++shared;
        ++ia;
        ++ix;
      }
    }
    return static_cast<double>(shared) / static_cast<double>(dx.size());
  };

  // Upward BFS distances from `start`; start itself excluded.
  auto distances_up = [&](int start) {
    std::map<int, std::size_t> dist;
    std::deque<int> queue{start};
    std::map<int, std::size_t> seen{{start, 0}};
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int p : t.parents(v))
        if (seen.emplace(p, seen[v] + 1).second) {
          dist[p] = seen[p];
          queue.push_back(p);
        }
    }
    return dist;
  };

  std::vector<std::pair<int, int>> drop;  // (parent, child)
  for (std::size_t xi = 0; xi < n; ++xi) {
    const int x = static_cast<int>(xi);
    const auto& pars = t.parents(x);
    if (pars.size() < 2) continue;
    const auto dist_from_x = distances_up(x);
    int best = -1;
    double best_score = 0.0;
    for (int p : pars) {
      double score = cond_prob(p, x);
      for (const auto& [a, _] : distances_up(p)) {
        if (a == x) continue;
        auto d = dist_from_x.find(a);
        if (d == dist_from_x.end()) continue;
        score += cond_prob(a, x) / static_cast<double>(d->second);
      }
      if (best < 0 || score > best_score || (score == best_score && t.name(p) < t.name(best))) {
        best = p;
        best_score = score;
      }
    }
    for (int p : pars)
      if (p != best) drop.emplace_back(p, x);
  }

  Taxonomy out = t;
  for (const auto& [p, x] : drop) out.remove_edge(p, x);
  out.mark_reduced(false);
  return out;
}

RelationSet to_relations(const Taxonomy& t, const std::string& method) {
  RelationSet out(method);
  for (const auto& [hyper, hypo] : t.edges()) out.insert(hypo, hyper, 0.0);
  return out;
}

void write_taxonomy(const Taxonomy& t, std::ostream& out) {
  for (const auto& [hyper, hypo] : t.edges()) out << hyper << '\t' << hypo << '\n';
}

void write_metrics(const HierarchyMetrics& m, std::ostream& out) {
  out << fmt::format(
      "TotalTerms\t{}\nTotalRoots\t{}\nNumberRels\t{}\nMaxDepth\t{}\nMinDepth\t{}\nAvgDepth\t{:.4f}\n"
      "AvgDepthPerLeaf\t{:.4f}\nDepthCohesion\t{:.4f}\nDepthCohesionPerLeaf\t{:.4f}\nMaxWidth\t{}\n"
      "MinWidth\t{}\nAvgWidth\t{:.4f}\nLeaves\t{}\nTaxonomies\t{}\nIsolatedTerms\t{}\n",
      m.total_terms, m.total_roots, m.number_rels, m.max_depth, m.min_depth, m.avg_depth, m.avg_depth_per_leaf,
      m.depth_cohesion, m.depth_cohesion_per_leaf, m.max_width, m.min_width, m.avg_width, m.num_leaves,
      m.num_taxonomies, m.isolated_terms);
}

std::string metrics_json(const HierarchyMetrics& m) {
  nlohmann::ordered_json j;
  j["TotalTerms"] = m.total_terms;
  j["TotalRoots"] = m.total_roots;
  j["NumberRels"] = m.number_rels;
  j["MaxDepth"] = m.max_depth;
  j["MinDepth"] = m.min_depth;
  j["AvgDepth"] = m.avg_depth;
  j["AvgDepthPerLeaf"] = m.avg_depth_per_leaf;
  j["DepthCohesion"] = m.depth_cohesion;
  j["DepthCohesionPerLeaf"] = m.depth_cohesion_per_leaf;
  j["MaxWidth"] = m.max_width;
  j["MinWidth"] = m.min_width;
  j["AvgWidth"] = m.avg_width;
  j["Leaves"] = m.num_leaves;
  j["Taxonomies"] = m.num_taxonomies;
  j["IsolatedTerms"] = m.isolated_terms;
  return j.dump(2) + "\n";
}

}  // namespace taxo
