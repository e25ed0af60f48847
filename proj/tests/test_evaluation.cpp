#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "hpsg/error.hpp"
#include "hpsg/evaluation.hpp"
#include "hpsg/treebank_io.hpp"

using namespace hpsg;

namespace {

ConstituentTree tree(const char* text) { return read_bracketed(std::string_view(text)).at(0); }

DependencyTree deps(const std::vector<std::string>& tags, std::vector<int> heads,
                    std::vector<std::string> labels) {
  std::vector<std::string> forms;
  for (std::size_t i = 0; i < tags.size(); ++i) forms.push_back("w" + std::to_string(i + 1));
  DependencyTree d;
  d.tokens = make_tokens(forms, tags);
  d.heads = std::move(heads);
  d.labels = std::move(labels);
  return d;
}

double round2(double v) { return std::round(v * 100.0) / 100.0; }

}  // namespace

TEST_CASE("identical corpora score 100") {
  const auto& c = fixtures::sample().constituents;
  const EvalReport r = bracket_f1(c, c);
  CHECK(r.f1 == 100.0);
  CHECK(r.recall == 100.0);
  CHECK(r.precision == 100.0);
  CHECK(r.exact_match == static_cast<int>(c.size()));
  const auto& d = fixtures::sample().dependencies;
  const EvalReport a = attachment_scores(d, d);
  CHECK(a.uas == 100.0);
  CHECK(a.las == 100.0);
  CHECK(a.has_las);
}

TEST_CASE("three gold brackets, four predicted, two correct") {
  // Gold S(1,4) NP(1,2) VP(3,4); predicted S(1,4) NP(1,2) X(3,4) Y(3,4).
  const EvalReport r = bracket_f1({tree("(S (NP (A a) (B b)) (VP (C c) (D d)))")},
                                  {tree("(S (NP (A a) (B b)) (X (Y (C c) (D d))))")});
  CHECK(r.gold_brackets == 3);
  CHECK(r.pred_brackets == 4);
  CHECK(r.matched_brackets == 2);
  CHECK(round2(r.recall) == 66.67);
  CHECK(round2(r.precision) == 50.00);
  CHECK(round2(r.f1) == 57.14);
  CHECK(r.exact_match == 0);
}

TEST_CASE("ten scored tokens, nine heads and eight labels right") {
  std::vector<std::string> tags(11, "NN");
  tags[10] = ".";
  const std::vector<int> gold_heads{2, 0, 2, 3, 4, 5, 6, 7, 8, 9, 2};
  std::vector<std::string> gold_labels(11, "dep");
  gold_labels[1] = "root";
  std::vector<int> pred_heads = gold_heads;
  pred_heads[4] = 3;   // token 5 wrong head
  pred_heads[10] = 1;  // punctuation, not scored
  std::vector<std::string> pred_labels = gold_labels;
  pred_labels[7] = "amod";  // token 8: right head, wrong label
  pred_labels[4] = "amod";  // token 5: already wrong
  const EvalReport r = attachment_scores({deps(tags, gold_heads, gold_labels)},
                                         {deps(tags, pred_heads, pred_labels)});
  CHECK(r.scored_tokens == 10);
  CHECK(r.correct_heads == 9);
  CHECK(round2(r.uas) == 90.00);
  CHECK(round2(r.las) == 80.00);
  CHECK(r.las <= r.uas);
}

TEST_CASE("punctuation is deleted before bracket matching") {
  const EvalReport r = bracket_f1({tree("(S (NP (A a) (B b)) (VP (C c) (. .)))")},
                                  {tree("(S (NP (A a) (B b)) (VP (C c)) (. .))")});
  CHECK(r.gold_brackets == 3);
  CHECK(r.matched_brackets == 3);
  CHECK(round2(r.f1) == 100.00);
  EvalOptions keep;
  keep.punctuation.clear();
  CHECK(round2(bracket_f1({tree("(S (NP (A a) (B b)) (VP (C c) (. .)))")},
                          {tree("(S (NP (A a) (B b)) (VP (C c)) (. .))")}, keep)
                   .f1) == 66.67);
}

TEST_CASE("label equivalences") {
  const ConstituentTree gold = tree("(S (NP (A a)) (ADVP (B b)))");
  const ConstituentTree pred = tree("(S (NP (A a)) (PRT (B b)))");
  const EvalReport plain = bracket_f1({gold}, {pred});
  CHECK(round2(plain.recall) == 66.67);
  CHECK(round2(plain.precision) == 66.67);
  CHECK(round2(plain.f1) == 66.67);
  EvalOptions eq;
  eq.equivalences["PRT"] = "ADVP";
  CHECK(bracket_f1({gold}, {pred}, eq).f1 == 100.0);
}

TEST_CASE("corpus totals are pooled over sentences") {
  // Sentence 1: 2 of 2 match. Sentence 2: gold 2, pred 3, 1 match.
  const std::vector<ConstituentTree> gold{tree("(S (NP (A a)) (B b))"), tree("(S (X (A a) (B b)) (C c))")};
  const std::vector<ConstituentTree> pred{tree("(S (NP (A a)) (B b))"),
                                          tree("(S (Y (A a) (Z (B b) (C c))))")};
  const EvalReport r = bracket_f1(gold, pred);
  CHECK(r.gold_brackets == 4);
  CHECK(r.pred_brackets == 5);
  CHECK(r.matched_brackets == 3);
  CHECK(round2(r.recall) == 75.00);
  CHECK(round2(r.precision) == 60.00);
  CHECK(round2(r.f1) == 66.67);
  CHECK(r.exact_match == 1);
}

TEST_CASE("split and empty nodes are ignored") {
  const ConstituentTree gold = tree("(S (NP (A a) (B b) (C c)))");
  const ConstituentTree pred = tree("(S (NP (# (A a) (B b)) (<E> (C c))))");
  CHECK(bracket_f1({gold}, {pred}).f1 == 100.0);
}

TEST_CASE("all-punctuation sentences add nothing") {
  const DependencyTree d = deps({".", ","}, {0, 1}, {"root", "punct"});
  const EvalReport r = attachment_scores({d}, {d});
  CHECK(r.scored_tokens == 0);
  const EvalReport b = bracket_f1({tree("(S (. .) (, ,))")}, {tree("(S (. .) (, ,))")});
  CHECK(b.gold_brackets == 0);
}

TEST_CASE("LAS is omitted without labels") {
  const DependencyTree labelled = deps({"NN", "VB"}, {2, 0}, {"nsubj", "root"});
  const DependencyTree bare = deps({"NN", "VB"}, {2, 0}, {});
  const EvalReport r = attachment_scores({labelled}, {bare});
  CHECK_FALSE(r.has_las);
  CHECK(r.uas == 100.0);
  CHECK(format_key_values(r).find("LAS") == std::string::npos);
}

TEST_CASE("misaligned input is rejected") {
  CHECK_THROWS_AS(bracket_f1({tree("(S (A a))")}, {}), AlignmentError);
  CHECK_THROWS_AS(bracket_f1({tree("(S (A a))")}, {tree("(S (A a) (B b))")}), AlignmentError);
  CHECK_THROWS_AS(attachment_scores({deps({"A"}, {0}, {})}, {deps({"A", "B"}, {0, 1}, {})}), AlignmentError);
}

TEST_CASE("an extra wrong bracket lowers precision only") {
  const ConstituentTree gold = tree("(S (NP (A a) (B b)) (VP (C c) (D d)))");
  const EvalReport before = bracket_f1({gold}, {gold});
  const EvalReport after = bracket_f1({gold}, {tree("(S (NP (A a) (B b)) (VP (W (C c) (D d))))")});
  CHECK(after.precision < before.precision);
  CHECK(after.recall == before.recall);
}

TEST_CASE("metrics ignore sentence order") {
  std::vector<ConstituentTree> gold = fixtures::sample().constituents;
  std::vector<ConstituentTree> pred = gold;
  for (std::size_t i = 0; i < pred.size(); i += 3) pred[i].root.children[0].label = "WRONG";
  const EvalReport a = bracket_f1(gold, pred);
  std::vector<std::size_t> order(gold.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), std::mt19937_64(5));
  std::vector<ConstituentTree> g2, p2;
  for (std::size_t i : order) {
    g2.push_back(gold[i]);
    p2.push_back(pred[i]);
  }
  const EvalReport b = bracket_f1(g2, p2);
  CHECK(a.f1 == b.f1);
  CHECK(a.matched_brackets == b.matched_brackets);
}

TEST_CASE("report formats") {
  const EvalReport r = bracket_f1({tree("(S (NP (A a) (B b)) (VP (C c) (D d)))")},
                                  {tree("(S (NP (A a) (B b)) (X (Y (C c) (D d))))")});
  const std::string kv = format_key_values(r);
  CHECK(kv.find("LR=66.67\n") != std::string::npos);
  CHECK(kv.find("LP=50.00\n") != std::string::npos);
  CHECK(kv.find("F1=57.14\n") != std::string::npos);
  const std::string table = format_table(r);
  CHECK(table.find("F1") != std::string::npos);
  CHECK(table.find("57.14") != std::string::npos);
  CHECK(parse_punctuation_set(",,.,``") == std::set<std::string>{".", "``"});
  CHECK_THROWS_AS(parse_punctuation_set(""), ConfigError);
}
