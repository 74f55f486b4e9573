#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "taxo/error.hpp"
#include "taxo/text.hpp"

namespace taxo::testing {

TempDir::TempDir() {
  static std::mt19937_64 rng(std::random_device{}());
  path_ = std::filesystem::temp_directory_path() / ("taxo-test-" + std::to_string(rng()));
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::filesystem::path TempDir::write(const std::string& name, const std::string& content) const {
  const auto p = path_ / name;
  std::filesystem::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << content;
  return p;
}

Sentence sentence(const std::string& spec) {
  Sentence s;
  std::istringstream in(spec);
  for (std::string tok; in >> tok;) {
    auto parts = split(tok, '/');
    if (parts.size() == 2) parts.insert(parts.begin(), parts[0]);
    if (parts.size() != 3) throw Error("bad token spec: " + tok);
    s.push_back({parts[0], parts[1], parse_pos(parts[2])});
  }
  return s;
}

Corpus make_corpus(const std::vector<DocSpec>& docs, Language lang) {
  Corpus c;
  c.language = lang;
  for (const auto& d : docs) {
    Document doc{d.id, {}};
    for (const auto& s : d.sentences) doc.sentences.push_back(sentence(s));
    c.documents.push_back(std::move(doc));
  }
  return c;
}

RelationSet relations(const std::vector<std::pair<std::string, std::string>>& hypo_hyper, const std::string& method) {
  RelationSet r(method);
  for (const auto& [hypo, hyper] : hypo_hyper) r.insert(hypo, hyper, 1.0);
  return r;
}

Taxonomy graph(const std::vector<Edge>& edges, const std::vector<std::string>& extra_nodes) {
  Taxonomy t;
  for (const auto& [hyper, hypo] : edges) t.add_edge(hyper, hypo);
  for (const auto& n : extra_nodes) t.add_node(n);
  return t;
}

GoldTaxonomy single_sense_gold(const std::vector<std::string>& lemmas, const std::vector<Edge>& edges) {
  std::map<std::string, int> id;
  for (const auto& l : lemmas) id.emplace(l, static_cast<int>(id.size()) + 1);
  std::map<int, Synset> synsets;
  for (const auto& [l, i] : id) synsets[i] = Synset{i, {l}, {}};
  for (const auto& [hyper, hypo] : edges) synsets.at(id.at(hypo)).hypernym_ids.insert(id.at(hyper));
  std::vector<Synset> list;
  for (auto& [_, s] : synsets) list.push_back(s);
  return GoldTaxonomy(std::move(list));
}

ContextMatrix document_matrix(const std::vector<std::pair<std::string, std::vector<std::string>>>& postings) {
  CooccurrenceBuilder<std::int64_t> b(ContextModel::Document, 0);
  for (const auto& [term, docs] : postings)
    for (const auto& d : docs) b.add(term, d, 1);
  return b.build();
}

ContextMatrix scaled(const ContextMatrix& m, std::int64_t factor) {
  ContextMatrix::Storage data = m.data() * factor;
  return ContextMatrix(m.model(), m.window_size(), m.terms(), m.contexts(), std::move(data));
}

std::vector<Edge> two_tree_edges() {
  return {{"1", "2"},  {"1", "3"},  {"3", "4"},   {"4", "5"},   {"5", "6"},   {"5", "7"},   {"5", "9"},
          {"5", "10"}, {"7", "8"},  {"10", "11"}, {"10", "12"}, {"12", "13"}, {"14", "15"}, {"15", "16"},
          {"15", "17"}};
}

std::vector<Edge> shortcut_edges() {
  return {{"A", "D"}, {"A", "E"}, {"A", "F"}, {"B", "D"}, {"B", "F"}, {"C", "D"},
          {"C", "E"}, {"C", "F"}, {"D", "F"}, {"E", "F"}};
}

Taxonomy car_extracted() {
  return graph({{"vehicle", "wheeled_vehicle"}, {"wheeled_vehicle", "car"}, {"car", "cab"}, {"car", "tram"}});
}

GoldTaxonomy car_gold() {
  return single_sense_gold({"vehicle", "motor_vehicle", "car", "cab", "public_transport", "tram"},
                           {{"vehicle", "motor_vehicle"},
                            {"motor_vehicle", "car"},
                            {"car", "cab"},
                            {"vehicle", "public_transport"},
                            {"public_transport", "tram"}});
}

ParentChoiceFixture parent_choice_fixture() {
  auto docs = [](int from, int to) {
    std::vector<std::string> out;
    for (int i = from; i < to; ++i) out.push_back("d" + std::to_string(i));
    return out;
  };
  ParentChoiceFixture f;
  f.taxonomy = graph({{"p1", "x"}, {"p2", "x"}, {"a", "x"}, {"a", "p2"}});
  // x in d0..d9: P(p1|x) = 0.6, P(p2|x) = 0.3, P(a|x) = 0.5.
  auto p1 = docs(0, 6), p2 = docs(0, 3), a = docs(0, 5);
  p1.push_back("d20");
  a.push_back("d21");
  f.docs = document_matrix({{"x", docs(0, 10)}, {"p1", p1}, {"p2", p2}, {"a", a}});
  return f;
}

BoolMatrix closure(BoolMatrix r) {
  const std::size_t n = r.size();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (r[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (r[k][j]) r[i][j] = true;
  return r;
}

BoolMatrix brute_force_reduction(const BoolMatrix& adj) {
  const BoolMatrix target = closure(adj);
  BoolMatrix cur = adj;
  const std::size_t n = adj.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!cur[i][j]) continue;
      cur[i][j] = false;
      if (closure(cur) != target) cur[i][j] = true;
    }
  return cur;
}

BoolMatrix adjacency(const Taxonomy& t) {
  BoolMatrix m(t.num_nodes(), std::vector<bool>(t.num_nodes(), false));
  for (const auto& [hyper, hypo] : t.edges())
    m[static_cast<std::size_t>(t.find(hyper))][static_cast<std::size_t>(t.find(hypo))] = true;
  return m;
}

std::vector<Edge> random_dag(std::mt19937& rng, int nodes, double density, const std::string& prefix) {
  // Random topological order, edges only forward in it.
  std::vector<int> order(static_cast<std::size_t>(nodes));
  for (int i = 0; i < nodes; ++i) order[static_cast<std::size_t>(i)] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::bernoulli_distribution coin(density);
  std::vector<Edge> edges;
  for (int i = 0; i < nodes; ++i)
    for (int j = i + 1; j < nodes; ++j)
      if (coin(rng))
        edges.emplace_back(prefix + std::to_string(order[static_cast<std::size_t>(i)]),
                           prefix + std::to_string(order[static_cast<std::size_t>(j)]));
  return edges;
}

namespace {

// Closure over named terms.
std::set<Edge> term_closure(const std::vector<std::string>& terms, const std::vector<Edge>& edges) {
  std::map<std::string, std::size_t> idx;
  for (const auto& t : terms) idx.emplace(t, idx.size());
  BoolMatrix adj(idx.size(), std::vector<bool>(idx.size(), false));
  for (const auto& [a, b] : edges) adj[idx.at(a)][idx.at(b)] = true;
  const auto r = closure(adj);
  std::set<Edge> out;
  for (const auto& [a, i] : idx)
    for (const auto& [b, j] : idx)
      if (r[i][j]) out.emplace(a, b);
  return out;
}

}  // namespace

EvalCounts enumerate_eval(const std::vector<std::string>& extracted_terms, const std::vector<Edge>& extracted_edges,
                          const std::vector<std::string>& gold_terms, const std::vector<Edge>& gold_edges) {
  const auto above_t = term_closure(extracted_terms, extracted_edges);
  const auto above_g = term_closure(gold_terms, gold_edges);
  std::vector<std::string> shared;
  for (const auto& t : extracted_terms)
    if (std::find(gold_terms.begin(), gold_terms.end(), t) != gold_terms.end()) shared.push_back(t);

  auto cr = [&](const std::string& c, const std::set<Edge>& above) {
    std::set<Edge> out;
    for (const auto& ci : shared) {
      if (ci == c) continue;
      if (above.count({ci, c})) out.emplace(ci, c);
      if (above.count({c, ci})) out.emplace(c, ci);
    }
    return out;
  };

  EvalCounts e;
  for (const auto& c : shared) {
    const auto t = cr(c, above_t), g = cr(c, above_g);
    e.extracted += t.size();
    e.gold += g.size();
    for (const auto& p : t) e.matched += g.count(p);
  }
  e.precision = e.extracted ? static_cast<double>(e.matched) / static_cast<double>(e.extracted) : 0.0;
  e.recall = e.gold ? static_cast<double>(e.matched) / static_cast<double>(e.gold) : 0.0;
  e.fmeasure = e.precision + e.recall > 0 ? 2 * e.precision * e.recall / (e.precision + e.recall) : 0.0;
  return e;
}

double dense_pmi(const std::vector<std::vector<double>>& counts, std::size_t t, std::size_t c) {
  double total = 0.0, row = 0.0, col = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i)
    for (std::size_t j = 0; j < counts[i].size(); ++j) {
      total += counts[i][j];
      if (i == t) row += counts[i][j];
      if (j == c) col += counts[i][j];
    }
  const double ptc = counts[t][c] / total, pt = row / total, pc = col / total;
  return std::log(ptc / (pt * pc));
}

std::vector<std::set<int>> naive_average_linkage(const std::vector<std::vector<double>>& sim, std::size_t k) {
  std::vector<std::set<int>> clusters;
  for (std::size_t i = 0; i < sim.size(); ++i) clusters.push_back({static_cast<int>(i)});
  auto avg = [&](const std::set<int>& a, const std::set<int>& b) {
    double s = 0.0;
    for (int i : a)
      for (int j : b) s += sim[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return s / static_cast<double>(a.size() * b.size());
  };
  while (clusters.size() > k) {
    // Clusters stay sorted by smallest member, so the first maximum found is
    // the first pair in label order.
    std::sort(clusters.begin(), clusters.end(),
              [](const auto& a, const auto& b) { return *a.begin() < *b.begin(); });
    std::size_t bi = 0, bj = 1;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < clusters.size(); ++i)
      for (std::size_t j = i + 1; j < clusters.size(); ++j) {
        const double s = avg(clusters[i], clusters[j]);
        if (s > best) {
          best = s;
          bi = i;
          bj = j;
        }
      }
    clusters[bi].insert(clusters[bj].begin(), clusters[bj].end());
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bj));
  }
  std::sort(clusters.begin(), clusters.end(), [](const auto& a, const auto& b) { return *a.begin() < *b.begin(); });
  return clusters;
}

PlantedBenchmark planted_benchmark(std::uint32_t seed) {
  std::mt19937 rng(seed);
  PlantedBenchmark b;
  auto mid = [](int i) { return "mid" + std::to_string(i); };
  std::vector<std::string> terms{"root"};
  for (int i = 0; i < 5; ++i) {
    terms.push_back(mid(i));
    b.edges.emplace_back("root", mid(i));
  }
  std::vector<std::string> leaves;
  for (int j = 0; j < 24; ++j) {
    const std::string l = (j < 10 ? "leaf0" : "leaf") + std::to_string(j);
    leaves.push_back(l);
    terms.push_back(l);
    b.edges.emplace_back(mid(j % 5), l);
  }
  b.gold = single_sense_gold(terms, b.edges);

  const std::vector<std::string> adjs{"big", "small", "old", "new", "red", "green"};
  const std::vector<std::string> verbs{"see", "take", "make", "find", "hold", "move"};
  std::uniform_int_distribution<std::size_t> pick_adj(0, adjs.size() - 1), pick_verb(0, verbs.size() - 1);
  std::uniform_int_distribution<int> pick_noise(0, 39);

  auto clause = [&](const std::string& term) {
    const std::string noise = "noise" + std::to_string(pick_noise(rng));
    return "the/OTHER " + adjs[pick_adj(rng)] + "/ADJ " + term + "/NOUN " + verbs[pick_verb(rng)] +
           "/VERB a/OTHER " + noise + "/NOUN ./OTHER";
  };

  std::vector<DocSpec> docs;
  for (int d = 0; d < 200; ++d) {
    std::vector<std::string> mentioned;
    if (d < 192) {
      const int j = d % 24;
      mentioned = {leaves[static_cast<std::size_t>(j)], mid(j % 5), "root"};
    } else {
      mentioned = {mid(d % 5), "root"};
    }
    std::shuffle(mentioned.begin(), mentioned.end(), rng);
    DocSpec doc{"doc" + std::to_string(1000 + d), {}};
    for (const auto& m : mentioned) doc.sentences.push_back(clause(m));
    docs.push_back(std::move(doc));
  }
  b.corpus = make_corpus(docs);
  return b;
}

}  // namespace taxo::testing
