#include "taxo/config.hpp"

#include <fstream>
#include <set>
#include <type_traits>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "taxo/error.hpp"
#include "taxo/text.hpp"

namespace taxo {
namespace fs = std::filesystem;
namespace pt = boost::property_tree;

namespace {

std::vector<std::string> list_of(const std::string& value) {
  std::vector<std::string> out;
  for (auto& item : split(value, ','))
    if (auto t = trim(item); !t.empty()) out.emplace_back(t);
  return out;
}

bool parse_bool(const std::string& key, std::string_view v) {
  auto s = case_fold(trim(v));
  if (s == "true" || s == "yes" || s == "1" || s == "on") return true;
  if (s == "false" || s == "no" || s == "0" || s == "off") return false;
  throw Error(fmt::format("{}: expected a boolean, got '{}'", key, v));
}

template <typename T>
T parse_number(const std::string& key, std::string_view v) {
  const std::string text(trim(v));
  std::istringstream in{text};
  T out{};
  const bool negative_unsigned = std::is_unsigned_v<T> && !text.empty() && text[0] == '-';
  if (negative_unsigned || !(in >> out) || !in.eof())
    throw Error(fmt::format("{}: expected a number, got '{}'", key, v));
  return out;
}

const std::set<std::string> known_keys{
    "corpus.path",   "corpus.language", "corpus.pos_map", "corpus.pseudo_documents", "gold.path",
    "vocabulary.size", "vocabulary.window", "methods.list", "patt.patterns", "dsim.measure",
    "slqs.top_contexts", "docsub.lambda", "hclust.clusters", "output.dir", "output.best_parent"};

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

}  // namespace

RunConfig parse_config(std::istream& in, const fs::path& base_dir, const std::vector<std::string>& overrides) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(fmt::format("config line {}: {}", e.line(), e.message()));
  }
  for (const auto& o : overrides) {
    auto eq = o.find('=');
    if (eq == std::string::npos || o.find('.') > eq)
      throw Error(fmt::format("override '{}' must look like section.key=value", o));
    tree.put(std::string(trim(o.substr(0, eq))), std::string(trim(o.substr(eq + 1))));
  }

  for (const auto& [section, keys] : tree) {
    if (keys.empty()) {
      if (!keys.data().empty()) throw Error(fmt::format("config key '{}' must sit inside a section", section));
      continue;
    }
    for (const auto& [key, _] : keys)
      if (!known_keys.count(section + "." + key)) throw Error(fmt::format("unknown config key '{}.{}'", section, key));
  }

  RunConfig c;
  auto get = [&](const std::string& key) -> std::optional<std::string> {
    if (auto v = tree.get_optional<std::string>(pt::ptree::path_type(key, '.'))) return std::string(trim(*v));
    return std::nullopt;
  };

  if (auto v = get("corpus.path"))
    for (const auto& p : list_of(*v)) c.corpus_paths.push_back(resolve(base_dir, p));
  if (auto v = get("corpus.language")) c.language = parse_language(*v);
  if (auto v = get("corpus.pos_map"); v && !v->empty()) c.pos_map = resolve(base_dir, *v);
  if (auto v = get("corpus.pseudo_documents")) c.pseudo_documents = parse_bool("corpus.pseudo_documents", *v);
  if (auto v = get("gold.path")) c.gold_path = resolve(base_dir, *v);
  if (auto v = get("vocabulary.size")) c.vocabulary_size = parse_number<std::size_t>("vocabulary.size", *v);
  if (auto v = get("vocabulary.window")) c.window_size = parse_number<int>("vocabulary.window", *v);
  if (auto v = get("methods.list"))
    for (const auto& m : list_of(*v)) c.methods.push_back(parse_method(m));
  if (auto v = get("patt.patterns"); v && !v->empty()) c.patterns = resolve(base_dir, *v);
  if (auto v = get("dsim.measure")) c.measure = parse_measure(*v);
  if (auto v = get("slqs.top_contexts")) c.top_contexts = parse_number<std::size_t>("slqs.top_contexts", *v);
  if (auto v = get("docsub.lambda")) {
    c.lambdas.clear();
    for (const auto& l : list_of(*v)) c.lambdas.push_back(parse_number<double>("docsub.lambda", l));
  }
  if (auto v = get("hclust.clusters")) {
    c.clusters.clear();
    for (const auto& k : list_of(*v)) c.clusters.push_back(parse_number<std::size_t>("hclust.clusters", k));
  }
  if (auto v = get("output.dir")) c.output_dir = resolve(base_dir, *v);
  if (auto v = get("output.best_parent")) c.best_parent = parse_bool("output.best_parent", *v);
  return c;
}

RunConfig load_config(const fs::path& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file: " + path.string());
  return parse_config(in, path.parent_path(), overrides);
}

std::vector<std::string> validate(const RunConfig& c) {
  std::vector<std::string> problems;
  if (c.corpus_paths.empty()) problems.push_back("corpus.path is not set");
  for (const auto& p : c.corpus_paths)
    if (!fs::exists(p)) problems.push_back("corpus path does not exist: " + p.string());
  if (c.gold_path.empty())
    problems.push_back("gold.path is not set");
  else if (!fs::exists(c.gold_path))
    problems.push_back("gold path does not exist: " + c.gold_path.string());
  if (c.pos_map && !fs::exists(*c.pos_map)) problems.push_back("POS map does not exist: " + c.pos_map->string());
  if (c.patterns && !fs::exists(*c.patterns)) problems.push_back("pattern file does not exist: " + c.patterns->string());
  if (c.vocabulary_size < 1) problems.push_back("vocabulary.size must be >= 1");
  if (c.window_size < 3 || c.window_size % 2 == 0)
    problems.push_back(fmt::format("vocabulary.window must be odd and >= 3, got {}", c.window_size));
  if (c.methods.empty()) problems.push_back("methods.list is empty");
  if (c.top_contexts < 1) problems.push_back("slqs.top_contexts must be >= 1");
  if (c.lambdas.empty()) problems.push_back("docsub.lambda is empty");
  for (double l : c.lambdas)
    if (!(l > 0.0 && l <= 1.0)) problems.push_back(fmt::format("docsub.lambda {} is outside (0, 1]", l));
  if (c.clusters.empty()) problems.push_back("hclust.clusters is empty");
  for (auto k : c.clusters)
    if (k < 1) problems.push_back("hclust.clusters values must be >= 1");
  if (c.output_dir.empty()) problems.push_back("output.dir is not set");
  return problems;
}

std::string canonical_form(const RunConfig& c) {
  std::vector<std::string> corpora, methods, lambdas, clusters;
  for (const auto& p : c.corpus_paths) corpora.push_back(p.lexically_normal().string());
  for (auto m : c.methods) methods.emplace_back(to_string(m));
  for (double l : c.lambdas) lambdas.push_back(fmt::format("{}", l));
  for (auto k : c.clusters) clusters.push_back(fmt::format("{}", k));
  std::string out;
  out += fmt::format("corpus.path={}\n", fmt::join(corpora, ","));
  out += fmt::format("corpus.language={}\n", to_string(c.language));
  out += fmt::format("corpus.pos_map={}\n", c.pos_map ? c.pos_map->lexically_normal().string() : "");
  out += fmt::format("corpus.pseudo_documents={}\n", c.pseudo_documents);
  out += fmt::format("gold.path={}\n", c.gold_path.lexically_normal().string());
  out += fmt::format("vocabulary.size={}\n", c.vocabulary_size);
  out += fmt::format("vocabulary.window={}\n", c.window_size);
  out += fmt::format("methods.list={}\n", fmt::join(methods, ","));
  out += fmt::format("patt.patterns={}\n", c.patterns ? c.patterns->lexically_normal().string() : "");
  out += fmt::format("dsim.measure={}\n", to_string(c.measure));
  out += fmt::format("slqs.top_contexts={}\n", c.top_contexts);
  out += fmt::format("docsub.lambda={}\n", fmt::join(lambdas, ","));
  out += fmt::format("hclust.clusters={}\n", fmt::join(clusters, ","));
  out += fmt::format("output.dir={}\n", c.output_dir.lexically_normal().string());
  out += fmt::format("output.best_parent={}\n", c.best_parent);
  return out;
}

}  // namespace taxo
