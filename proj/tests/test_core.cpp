#include <doctest.h>

#include <functional>

#include "fixtures.hpp"
#include "hpsg/core.hpp"
#include "hpsg/error.hpp"

using namespace hpsg;

namespace {

int count_label(const Node& node, std::string_view label) {
  int n = node.label == label && !node.is_preterminal();
  for (const Node& child : node.children) n += count_label(child, label);
  return n;
}

const Node* find_span(const Node& node, int first, int last) {
  if (node.first == first && node.last == last && !node.is_preterminal()) return &node;
  for (const Node& child : node.children) {
    if (const Node* hit = find_span(child, first, last)) return hit;
  }
  return nullptr;
}

// Independent residual count: a phrase with several external heads is
// resolvable when its children can be cut into contiguous runs that each have
// exactly one external head. Checked by dynamic programming over cut points.
int independent_residuals(const Node& node, const DependencyTree& deps) {
  if (node.is_preterminal()) return 0;
  int total = 0;
  if (external_heads(deps, node.first, node.last).size() >= 2) {
    const auto& kids = node.children;
    std::vector<bool> reach(kids.size() + 1, false);
    reach[0] = true;
    for (std::size_t j = 1; j <= kids.size(); ++j) {
      for (std::size_t i = 0; i < j && !reach[j]; ++i) {
        reach[j] = reach[i] && external_heads(deps, kids[i].first, kids[j - 1].last).size() == 1;
      }
    }
    total += !reach[kids.size()];
  }
  for (const Node& child : node.children) total += independent_residuals(child, deps);
  return total;
}

bool hfp_holds(const Node& node) {
  if (!node.contains(node.head)) return false;
  if (node.is_preterminal()) return node.head == node.first;
  int sharing = 0;
  for (const Node& child : node.children) {
    sharing += child.head == node.head;
    if (!hfp_holds(child)) return false;
  }
  return sharing == 1;
}

bool split_nested_same_span(const Node& node) {
  for (const Node& child : node.children) {
    if (node.label == kSplitLabel && child.label == kSplitLabel && child.first == node.first &&
        child.last == node.last) {
      return true;
    }
    if (split_nested_same_span(child)) return true;
  }
  return false;
}

// Re-attaches a few tokens to their grandparent, which keeps a tree but can
// give phrases several external heads.
DependencyTree perturb(DependencyTree deps, fixtures::RandomTrees& gen) {
  const int n = deps.size();
  for (int k = 0; k < 2; ++k) {
    const int t = gen.uniform(1, n);
    const int h = deps.head(t);
    if (h != 0 && deps.head(h) != 0) deps.heads[t - 1] = deps.head(h);
  }
  return deps;
}

}  // namespace

TEST_CASE("external heads of the Federal Paper Board spans") {
  const auto heads = heads_of_spans(fixtures::federal_constituents(), fixtures::federal_dependencies());
  CHECK(heads.at({1, 3}) == std::vector<int>{3});
  CHECK(heads.at({1, 9}) == std::vector<int>{4});
  CHECK(heads.at({5, 8}) == std::vector<int>{5, 8});
  CHECK(heads.at({4, 8}) == std::vector<int>{4});
}

TEST_CASE("whole-sentence span always has the root as its only head") {
  for (const auto& d : fixtures::sample().dependencies) {
    const auto e = external_heads(d, 1, d.size());
    REQUIRE(e.size() == 1);
    CHECK(d.head(e[0]) == 0);
  }
}

TEST_CASE("fuse splits the two-headed NP with #") {
  const FuseResult fused = fuse(fixtures::federal_constituents(), fixtures::federal_dependencies(), 1);
  CHECK(fused.audit.multi_head_before == 1);
  CHECK(fused.audit.residual == 0);
  CHECK(count_label(fused.tree.root, kSplitLabel) == 2);
  const Node* np = find_span(fused.tree.root, 5, 8);
  REQUIRE(np != nullptr);
  REQUIRE(np->children.size() == 2);
  CHECK(np->children[0].label == "#");
  CHECK(np->children[0].first == 5);
  CHECK(np->children[0].last == 6);
  CHECK(np->children[1].label == "#");
  CHECK(np->children[1].first == 7);
  CHECK(np->children[1].last == 8);
  CHECK(find_span(fused.tree.root, 1, 3)->head == 3);
  CHECK(fused.tree.root.head == 4);
  CHECK(validate(fused.tree).residual == 0);
  // A two-headed phrase cannot hand both heads to its parent: products now
  // depends on paper.
  CHECK(fused.audit.arc_mismatches == 1);
  CHECK_FALSE(fused.audit.clean());
}

TEST_CASE("projections of the Federal Paper Board tree") {
  const HpsgTree tree = fixtures::federal_hpsg();
  CHECK(project_constituents(tree) == fixtures::federal_constituents());
  const DependencyTree d = project_dependencies(tree);
  CHECK(d.head(3) == 4);  // Board -> sells
  CHECK(d.head(9) == 4);  // . -> sells
  CHECK(d.head(4) == 0);  // sells -> root
  CHECK(d.head(5) == 4);
  CHECK(d.head(8) == 5);
}

TEST_CASE("single-headed input is unchanged apart from heads") {
  const auto trees = read_bracketed(std::string_view("(S (NP (DT the) (NN cat)) (VP (VBD sat)))"));
  DependencyTree d;
  d.tokens = trees[0].tokens;
  d.heads = {2, 3, 0};
  const FuseResult fused = fuse(trees[0], d);
  CHECK(count_label(fused.tree.root, kSplitLabel) == 0);
  CHECK(fused.audit.clean());
  CHECK(project_constituents(fused.tree) == trees[0]);
  CHECK(project_dependencies(fused.tree).heads == d.heads);
  CHECK(fused.tree.root.head == 3);
  CHECK(fused.tree.root.children[0].head == 2);
}

TEST_CASE("single token") {
  const auto c = read_bracketed(std::string_view("(X (A a))"))[0];
  DependencyTree d;
  d.tokens = c.tokens;
  d.heads = {0};
  const FuseResult fused = fuse(c, d);
  CHECK(fused.audit.clean());
  CHECK(project_constituents(fused.tree) == c);
  CHECK(project_dependencies(fused.tree).heads == std::vector<int>{0});
}

TEST_CASE("validate flags a head outside its span") {
  HpsgTree tree;
  tree.tokens = make_tokens({"a", "b", "c", "d"}, {"X", "X", "X", "X"});
  Node inner{"A", 1, 2, 3, {Node{"X", 1, 1, 1, {}}, Node{"X", 2, 2, 2, {}}}};
  Node right{"B", 3, 4, 4, {Node{"X", 3, 3, 3, {}}, Node{"X", 4, 4, 4, {}}}};
  tree.root = Node{"S", 1, 4, 4, {inner, right}};
  const HeadAuditReport report = validate(tree);
  CHECK(report.residual == 1);
  REQUIRE(report.offending.size() == 1);
  CHECK(report.offending[0] == Span{1, 2});
}

TEST_CASE("random consistent pairs fuse back to their source tree") {
  fixtures::RandomTrees gen(11);
  for (int trial = 0; trial < 100; ++trial) {
    const HpsgTree source = gen.tree(gen.uniform(1, 12));
    const ConstituentTree c = project_constituents(source);
    const DependencyTree d = project_dependencies(source);
    const FuseResult fused = fuse(c, d);
    CHECK(validate(fused.tree).residual == 0);
    CHECK(fused.audit.clean());
    CHECK(fused.tree.root == source.root);
    CHECK(project_constituents(fused.tree) == c);
    CHECK(project_dependencies(fused.tree).heads == d.heads);
  }
}

TEST_CASE("fuse output satisfies the head principle on perturbed pairs") {
  fixtures::RandomTrees gen(12);
  int multi = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const HpsgTree source = gen.tree(gen.uniform(3, 12));
    const ConstituentTree c = project_constituents(source);
    const DependencyTree d = perturb(project_dependencies(source), gen);
    const FuseResult fused = fuse(c, d);
    multi += fused.audit.multi_head_before > 0;
    CHECK(hfp_holds(fused.tree.root));
    CHECK(validate(fused.tree).residual == 0);
    CHECK(fused.audit.residual == independent_residuals(c.root, d));
    CHECK(fused.audit.residual <= fused.audit.multi_head_before);
    CHECK(project_constituents(fused.tree) == c);
    CHECK_FALSE(split_nested_same_span(fused.tree.root));
    if (fused.audit.clean()) CHECK(project_dependencies(fused.tree).heads == d.heads);
  }
  CHECK(multi > 0);
}

TEST_CASE("sample corpus audit matches an independent validator") {
  const auto& corpus = fixtures::sample();
  int fuse_total = 0;
  int independent_total = 0;
  for (std::size_t i = 0; i < corpus.fused.size(); ++i) {
    fuse_total += corpus.fused[i].audit.residual;
    independent_total += independent_residuals(corpus.constituents[i].root, corpus.dependencies[i]);
    CHECK(hfp_holds(corpus.fused[i].tree.root));
    CHECK(project_constituents(corpus.fused[i].tree) == corpus.constituents[i]);
    if (corpus.fused[i].audit.clean()) {
      CHECK(project_dependencies(corpus.fused[i].tree).heads == corpus.dependencies[i].heads);
    }
  }
  CHECK(fuse_total == independent_total);
  CHECK(fuse_total >= 1);  // the corpus includes an irreducible sentence
}

TEST_CASE("fuse carries dependency labels through") {
  const HpsgTree tree = fixtures::federal_hpsg();
  CHECK(tree.labels == fixtures::federal_dependencies().labels);
}

TEST_CASE("heads_of_spans rejects unaligned input") {
  DependencyTree d;
  d.tokens = make_tokens({"a"}, {"X"});
  d.heads = {0};
  CHECK_THROWS_AS(heads_of_spans(fixtures::federal_constituents(), d), ContractError);
}
