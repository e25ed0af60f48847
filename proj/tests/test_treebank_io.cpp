#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "hpsg/error.hpp"
#include "hpsg/treebank_io.hpp"

using namespace hpsg;

namespace {

const Node* find_span(const Node& node, int first, int last) {
  if (node.first == first && node.last == last && !node.is_preterminal()) return &node;
  for (const Node& child : node.children) {
    if (const Node* hit = find_span(child, first, last)) return hit;
  }
  return nullptr;
}

int count_leaves(const std::string& text) {
  // Every "(TAG word)" pair is a leaf; count closing parens preceded by a word.
  int leaves = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != ')') continue;
    std::size_t j = i;
    while (j > 0 && text[j - 1] != ' ' && text[j - 1] != '(' && text[j - 1] != ')') --j;
    if (j < i && text[j - 1] == ' ') ++leaves;
  }
  return leaves;
}

}  // namespace

TEST_CASE("bracketed reader on the Federal Paper Board sentence") {
  const ConstituentTree tree = fixtures::federal_constituents();
  CHECK(tree.size() == 9);
  CHECK(tree.tokens[2].form == "Board");
  CHECK(tree.tokens[2].pos == "NNP");
  const Node* np = find_span(tree.root, 1, 3);
  REQUIRE(np != nullptr);
  CHECK(np->label == "NP");  // function tag stripped
  CHECK(tree.root.label == "S");
  CHECK(tree.root.first == 1);
  CHECK(tree.root.last == 9);
}

TEST_CASE("minimal bracketed tree") {
  const auto trees = read_bracketed(std::string_view("(X (A a))"));
  REQUIRE(trees.size() == 1);
  CHECK(trees[0].size() == 1);
  CHECK(trees[0].root.label == "X");
  REQUIRE(trees[0].root.children.size() == 1);
  CHECK(trees[0].root.children[0].label == "A");
  CHECK(trees[0].root.children[0].is_preterminal());
}

TEST_CASE("empty elements are stripped and spans renumbered") {
  const std::string s1 = "(S (NP (DT the) (NN cat)) (VP (VBD sat)))";
  const std::string s2 = "(S (NP-SBJ (-NONE- *)) (VP (VBD ran) (ADVP (RB fast))))";
  const std::string s3 = "(S (NP (PRP it)) (VP (VBZ is)))";
  const std::string text = s1 + "\n" + s2 + "\n" + s3 + "\n";
  const auto trees = read_bracketed(text);
  REQUIRE(trees.size() == 3);
  int tokens = 0;
  for (const auto& t : trees) tokens += t.size();
  // Hand count: 3 + 3 + 2 leaves, one of them -NONE-.
  CHECK(count_leaves(text) == 8);
  CHECK(tokens == 7);
  CHECK(trees[1].size() == 2);
  CHECK(trees[1].root.children.size() == 1);  // the emptied NP is gone
  CHECK(trees[1].root.children[0].first == 1);
  CHECK(trees[1].root.children[0].last == 2);
}

TEST_CASE("trees emptied by stripping are skipped with a warning") {
  std::vector<ReadWarning> warnings;
  const auto trees = read_bracketed(std::string_view("(S (A a))\n(S (-NONE- *T*-1))\n(S (B b))\n"), &warnings);
  CHECK(trees.size() == 2);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].ordinal == 2);
  CHECK(warnings[0].line == 2);
}

TEST_CASE("unbalanced brackets report the line") {
  try {
    read_bracketed(std::string_view("(S (A a))\n(S (B b)\n"));
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() >= 2);
  }
  CHECK_THROWS_AS(read_bracketed(std::string_view("(S (A a)))")), ParseError);
}

TEST_CASE("function tags and indices") {
  CHECK(strip_function_tag("NP-SBJ-1") == "NP");
  CHECK(strip_function_tag("NP=2") == "NP");
  CHECK(strip_function_tag("-NONE-") == "-NONE-");
  CHECK(strip_function_tag("-LRB-") == "-LRB-");
  CHECK(strip_function_tag("#") == "#");
  CHECK(strip_function_tag("<E>") == "<E>");
  CHECK(strip_function_tag("PRP$") == "PRP$");
}

TEST_CASE("bracketed write then read is the identity") {
  for (const auto& tree : fixtures::sample().constituents) {
    std::ostringstream out;
    write_bracketed(out, tree);
    const auto back = read_bracketed(out.str());
    REQUIRE(back.size() == 1);
    CHECK(back[0] == tree);
  }
}

TEST_CASE("CoNLL reader") {
  SUBCASE("Federal Paper Board block") {
    const DependencyTree d = fixtures::federal_dependencies();
    CHECK(d.size() == 9);
    CHECK(d.head(3) == 4);  // Board -> sells
    CHECK(d.head(4) == 0);  // sells -> root
    CHECK(d.labels[2] == "nsubj");
  }
  SUBCASE("single token") {
    const auto trees = read_conll(std::string_view("1\ta\t_\tX\tX\t_\t0\troot\n"));
    REQUIRE(trees.size() == 1);
    CHECK(trees[0].size() == 1);
    CHECK(trees[0].head(1) == 0);
  }
  SUBCASE("cycle") {
    const std::string block =
        "1\ta\t_\tX\tX\t_\t2\tx\n2\tb\t_\tX\tX\t_\t3\tx\n3\tc\t_\tX\tX\t_\t2\tx\n"
        "4\td\t_\tX\tX\t_\t0\troot\n5\te\t_\tX\tX\t_\t4\tx\n";
    CHECK_THROWS_AS(read_conll(block), StructuralError);
  }
  SUBCASE("two roots") {
    CHECK_THROWS_AS(read_conll(std::string_view("1\ta\t_\tX\tX\t_\t0\tr\n2\tb\t_\tX\tX\t_\t0\tr\n")),
                    StructuralError);
  }
  SUBCASE("non-integer head") {
    CHECK_THROWS_AS(read_conll(std::string_view("1\ta\t_\tX\tX\t_\tzero\troot\n")), ParseError);
  }
  SUBCASE("too few columns") {
    CHECK_THROWS_AS(read_conll(std::string_view("1\ta\t_\tX\tX\t_\t0\n")), ParseError);
  }
}

TEST_CASE("CoNLL write then read is the identity") {
  for (const auto& tree : fixtures::sample().dependencies) {
    std::ostringstream out;
    write_conll(out, tree);
    const auto back = read_conll(out.str());
    REQUIRE(back.size() == 1);
    CHECK(back[0] == tree);
  }
}

TEST_CASE("pairing treebanks") {
  const std::string two = fixtures::kFederalBracketed + fixtures::kFederalBracketed;
  const std::string two_conll = fixtures::kFederalConll + fixtures::kFederalConll;
  CHECK(pair_treebanks(read_bracketed(two), read_conll(two_conll)).size() == 2);

  std::string bad = fixtures::kFederalConll;
  bad.replace(bad.find("paper\t"), 6, "papers\t");
  try {
    pair_treebanks(read_bracketed(fixtures::kFederalBracketed), read_conll(bad));
    FAIL("expected an alignment error");
  } catch (const AlignmentError& e) {
    const std::string what = e.what();
    CHECK(what.find("sentence 1") != std::string::npos);
    CHECK(what.find("token 5") != std::string::npos);
  }
  CHECK_THROWS_AS(pair_treebanks(read_bracketed(two), read_conll(fixtures::kFederalConll)), AlignmentError);
}

TEST_CASE("sample corpus pairs every sentence") {
  std::ifstream mrg(fixtures::data_path("sample.mrg"));
  std::ifstream conll(fixtures::data_path("sample.conll"));
  int tree_lines = 0;
  int blocks = 0;
  bool in_block = false;
  for (std::string line; std::getline(mrg, line);) tree_lines += !line.empty();
  for (std::string line; std::getline(conll, line);) {
    if (!line.empty() && !in_block) ++blocks;
    in_block = !line.empty();
  }
  CHECK(tree_lines == blocks);
  CHECK(static_cast<int>(fixtures::sample().fused.size()) == tree_lines);
  CHECK(tree_lines >= 200);
}

TEST_CASE("HPSG format") {
  const HpsgTree federal = fixtures::federal_hpsg();
  const std::string text = to_hpsg_string(federal);
  CHECK(text.find("(NP[3] (NNP[1] Federal) (NNP[2] Paper) (NNP[3] Board))") != std::string::npos);

  HpsgTree single;
  single.tokens = make_tokens({"w"}, {"P"});
  single.root = Node{"X", 1, 1, 1, {Node{"P", 1, 1, 1, {}}}};
  CHECK(to_hpsg_string(single) == "(X[1] (P[1] w))");

  CHECK_THROWS_AS(read_hpsg(std::string_view("(X[2] (P[1] w))\n")), ValidationError);
  CHECK_THROWS_AS(read_hpsg(std::string_view("(X (P[1] w))\n")), ParseError);
}

TEST_CASE("HPSG round trip over the sample corpus is byte identical") {
  std::ostringstream first;
  for (const auto& f : fixtures::sample().fused) write_hpsg(first, f.tree);
  const auto back = read_hpsg(first.str());
  REQUIRE(back.size() == fixtures::sample().fused.size());
  std::ostringstream second;
  for (const auto& t : back) write_hpsg(second, t);
  CHECK(first.str() == second.str());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].root == fixtures::sample().fused[i].tree.root);
    CHECK(back[i].tokens == fixtures::sample().fused[i].tree.tokens);
  }
}

TEST_CASE("malformed UTF-8 is rejected") {
  CHECK_NOTHROW(check_utf8("na\xc3\xafve"));
  CHECK_THROWS_AS(check_utf8("bad\xc3"), ParseError);
  CHECK_THROWS_AS(check_utf8("bad\xff"), ParseError);
}
