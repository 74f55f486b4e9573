#include <doctest.h>

#include <map>
#include <random>
#include <sstream>

#include "support.hpp"
#include "taxo/contexts.hpp"
#include "taxo/error.hpp"

using namespace taxo;
using namespace taxo::testing;

TEST_CASE("window contexts of a tagged sentence") {
  const Corpus c = make_corpus({{"d", {"The/the/OTHER energetic/ADJ dog/NOUN barked/barked/VERB ./OTHER"}}});
  const ContextMatrix m = extract_window_contexts(c, 5);
  CHECK(m.terms() == std::vector<std::string>{"dog"});
  CHECK(m.at("dog", "energetic-j-l") == 1);
  CHECK(m.at("dog", "barked-v-r") == 1);
  CHECK(m.data().nonZeros() == 2);
}

TEST_CASE("single-token sentence has no contexts") {
  const ContextMatrix m = extract_window_contexts(make_corpus({{"d", {"dog/NOUN"}}}), 5);
  CHECK(m.empty());
  CHECK_FALSE(m.find_term("dog"));
}

TEST_CASE("big cat big cat") {
  // Windows of the two "cat" tokens (positions 1 and 3, radius 2):
  //   cat@1: big@0 left, big@2 right, cat@3 right
  //   cat@3: big@2 left, cat@1 left  (big@0 is 3 away)
  const ContextMatrix m = extract_window_contexts(make_corpus({{"d", {"big/ADJ cat/NOUN big/ADJ cat/NOUN"}}}), 5);
  CHECK(m.at("cat", "big-j-l") == 2);
  CHECK(m.at("cat", "big-j-r") == 1);
  CHECK(m.at("cat", "big-j-l") + m.at("cat", "big-j-r") == 3);
  CHECK(m.at("cat", "cat-n-l") == 1);
  CHECK(m.at("cat", "cat-n-r") == 1);
}

TEST_CASE("window boundaries") {
  const Corpus c = make_corpus({{"d", {"a/NOUN x/OTHER y/OTHER b/NOUN", "c/NOUN"}}});
  SUBCASE("non-content tokens still occupy positions") {
    const ContextMatrix m = extract_window_contexts(c, 5);
    CHECK(m.at("a", "b-n-r") == 0);
    CHECK(m.at("b", "a-n-l") == 0);
  }
  SUBCASE("wider window reaches further") {
    const ContextMatrix m = extract_window_contexts(c, 7);
    CHECK(m.at("a", "b-n-r") == 1);
    CHECK(m.at("b", "a-n-l") == 1);
  }
  SUBCASE("windows never cross sentences") {
    const ContextMatrix m = extract_window_contexts(c, 7);
    CHECK_FALSE(m.find_term("c"));
  }
  SUBCASE("invalid window sizes") {
    CHECK_THROWS_AS(extract_window_contexts(c, 4), Error);
    CHECK_THROWS_AS(extract_window_contexts(c, 1), Error);
  }
}

TEST_CASE("proper nouns are targets and tagged p") {
  const ContextMatrix m = extract_window_contexts(make_corpus({{"d", {"Rex/rex/PROPN runs/run/VERB"}}}), 5);
  CHECK(m.at("rex", "run-v-r") == 1);
  const ContextMatrix m2 = extract_window_contexts(make_corpus({{"d", {"dog/NOUN likes/like/VERB Rex/rex/PROPN"}}}), 5);
  CHECK(m2.at("dog", "rex-p-r") == 1);
}

TEST_CASE("window symmetry for noun pairs") {
  std::mt19937 rng(11);
  const std::vector<std::string> pool{"dog/NOUN", "cat/NOUN", "Rex/rex/PROPN", "big/ADJ", "run/VERB", "the/OTHER"};
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> len(1, 9);
  std::vector<DocSpec> docs;
  for (int d = 0; d < 20; ++d) {
    std::string s;
    for (int k = len(rng); k > 0; --k) s += pool[pick(rng)] + " ";
    docs.push_back({"d" + std::to_string(d), {s}});
  }
  const ContextMatrix m = extract_window_contexts(make_corpus(docs), 5);
  const std::map<std::string, char> tag{{"dog", 'n'}, {"cat", 'n'}, {"rex", 'p'}};
  for (const auto& [u, tu] : tag)
    for (const auto& [v, tv] : tag)
      CHECK(m.at(u, v + "-" + tv + "-r") == m.at(v, u + "-" + tu + "-l"));
}

TEST_CASE("document contexts") {
  SUBCASE("worked example") {
    const ContextMatrix m = extract_document_contexts(
        make_corpus({{"doc_1", {"dog/NOUN cat/NOUN"}}, {"doc_2", {"dog/NOUN fish/NOUN"}}}));
    CHECK(m.model() == ContextModel::Document);
    CHECK(m.at("dog", "doc_1") == 1);
    CHECK(m.at("cat", "doc_1") == 1);
    CHECK(m.at("dog", "doc_2") == 1);
    CHECK(m.at("fish", "doc_2") == 1);
    CHECK(m.data().nonZeros() == 4);
  }
  SUBCASE("repeats count") {
    const ContextMatrix m = extract_document_contexts(make_corpus({{"d", {"dog/NOUN", "dog/NOUN run/VERB"}}}));
    CHECK(m.at("dog", "d") == 2);
    CHECK_FALSE(m.find_term("run"));
  }
  SUBCASE("hand-built three-document table") {
    const ContextMatrix m = extract_document_contexts(make_corpus(
        {{"a", {"dog/NOUN cat/NOUN", "dog/NOUN"}}, {"b", {"cat/NOUN bird/NOUN"}}, {"c", {"Rex/rex/PROPN dog/NOUN"}}}));
    const std::map<std::pair<std::string, std::string>, std::int64_t> expected{
        {{"bird", "b"}, 1}, {{"cat", "a"}, 1}, {{"cat", "b"}, 1}, {{"dog", "a"}, 2}, {{"dog", "c"}, 1}, {{"rex", "c"}, 1}};
    CHECK(m.terms() == std::vector<std::string>{"bird", "cat", "dog", "rex"});
    CHECK(m.contexts() == std::vector<std::string>{"a", "b", "c"});
    CHECK(static_cast<std::size_t>(m.data().nonZeros()) == expected.size());
    for (const auto& [key, count] : expected) CHECK(m.at(key.first, key.second) == count);
  }
}

TEST_CASE("vocabulary selection") {
  const GoldTaxonomy gold = single_sense_gold({"a", "b", "c", "d"}, {});
  CooccurrenceBuilder<std::int64_t> b(ContextModel::Window, 5);
  for (int i = 0; i < 5; ++i) b.add("a", "x" + std::to_string(i), 1);
  for (int i = 0; i < 3; ++i) b.add("b", "x" + std::to_string(i), 7);
  for (int i = 0; i < 3; ++i) b.add("c", "x" + std::to_string(i), 1);
  for (int i = 0; i < 9; ++i) b.add("zz", "x" + std::to_string(i), 1);  // not in gold
  const ContextMatrix m = b.build();

  CHECK(select_vocabulary(m, gold, 1).terms() == std::vector<std::string>{"a"});
  // Tie on context count: lexicographically smaller lemma first.
  CHECK(select_vocabulary(m, gold, 2).terms() == std::vector<std::string>{"a", "b"});
  // n beyond the overlap returns every overlapping term.
  CHECK(select_vocabulary(m, gold, 100).size() == 3);
  CHECK_THROWS_AS(select_vocabulary(m, gold, 0), Error);
  CHECK_THROWS_AS(select_vocabulary(m, single_sense_gold({"q"}, {}), 3), Error);
  CHECK_THROWS_AS(select_vocabulary(ContextMatrix{}, gold, 3), Error);
}

TEST_CASE("vocabulary selection does not depend on input order") {
  const GoldTaxonomy gold = single_sense_gold({"a", "b", "c"}, {});
  std::vector<std::tuple<std::string, std::string, std::int64_t>> cells{
      {"c", "x", 1}, {"b", "y", 1}, {"a", "x", 2}, {"b", "x", 1}, {"c", "y", 3}};
  std::vector<std::vector<std::string>> seen;
  std::sort(cells.begin(), cells.end());
  do {
    CooccurrenceBuilder<std::int64_t> b(ContextModel::Window, 5);
    for (const auto& [t, c, v] : cells) b.add(t, c, v);
    seen.push_back(select_vocabulary(b.build(), gold, 2).terms());
  } while (std::next_permutation(cells.begin(), cells.end()));
  for (const auto& s : seen) CHECK(s == std::vector<std::string>{"b", "c"});
}

TEST_CASE("matrix text round trip") {
  const ContextMatrix m = extract_window_contexts(load_corpus(TAXO_FIXTURES "/animals", Language::EN), 5);
  std::stringstream buf;
  write_matrix(m, buf);
  const ContextMatrix back = read_matrix(buf, ContextModel::Window, 5);
  CHECK(back.terms() == m.terms());
  CHECK(back.contexts() == m.contexts());
  CHECK(back.data().isApprox(m.data()));
}

TEST_CASE("context keys") {
  CHECK(ContextKey::window("barked", Pos::Verb, Side::Right).str() == "barked-v-r");
  const auto k = ContextKey::parse(ContextModel::Window, "well-known-j-l");
  CHECK(k.lemma == "well-known");
  CHECK(k.pos == Pos::Adj);
  CHECK(k.side == Side::Left);
  CHECK(ContextKey::parse(ContextModel::Document, "doc-7.txt").doc_id == "doc-7.txt");
  CHECK_THROWS_AS(ContextKey::parse(ContextModel::Window, "nope"), Error);
}

TEST_CASE("restrict rows keeps only vocabulary terms") {
  const ContextMatrix m = extract_document_contexts(make_corpus({{"d", {"a/NOUN b/NOUN c/NOUN"}}}));
  const ContextMatrix r = restrict_rows(m, TermSet({"a", "c"}));
  CHECK(r.terms() == std::vector<std::string>{"a", "c"});
  CHECK(r.at("c", "d") == 1);
}

TEST_CASE("duplicate terms in a TermSet are rejected") {
  CHECK_THROWS_AS(TermSet({"a", "a"}), Error);
}
