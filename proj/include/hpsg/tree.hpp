#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace hpsg {

/// Spelling of the empty category used to binarize n-ary nodes.
inline constexpr std::string_view kEmptyLabel = "<E>";
/// Category of the node that groups one head's worth of children.
inline constexpr std::string_view kSplitLabel = "#";
/// Prefix marking division-span children at or left of the head daughter.
inline constexpr std::string_view kHeadPrefix = "H_";
/// Joins the categories of a collapsed unary chain.
inline constexpr char kChainJoin = '+';

struct Token {
  int index = 0;  // 1-based
  std::string form;
  std::string pos;

  bool operator==(const Token&) const = default;
};

/// A phrase-structure node. A node without children is a preterminal whose
/// label is the POS tag of token `first`. Spans are 1-based and inclusive.
/// `head` is 0 for trees without head annotation.
struct Node {
  std::string label;
  int first = 0;
  int last = 0;
  int head = 0;
  std::vector<Node> children;

  bool is_preterminal() const { return children.empty(); }
  int length() const { return last - first + 1; }
  bool contains(int token) const { return first <= token && token <= last; }

  bool operator==(const Node&) const = default;
};

struct ConstituentTree {
  std::vector<Token> tokens;
  Node root;

  int size() const { return static_cast<int>(tokens.size()); }
  bool operator==(const ConstituentTree&) const = default;
};

struct DependencyTree {
  std::vector<Token> tokens;
  std::vector<int> heads;           // heads[t-1] is the head of token t; 0 is root
  std::vector<std::string> labels;  // empty when the treebank has no relations

  int size() const { return static_cast<int>(tokens.size()); }
  int head(int token) const { return heads[token - 1]; }
  bool has_labels() const { return !labels.empty(); }
  bool operator==(const DependencyTree&) const = default;
};

/// Phrase tree where every node carries a category and a head token.
/// `labels` optionally carries per-token dependency relations through
/// conversion; it plays no part in decoding.
struct HpsgTree {
  std::vector<Token> tokens;
  Node root;
  std::vector<std::string> labels;

  int size() const { return static_cast<int>(tokens.size()); }
  bool operator==(const HpsgTree&) const = default;
};

/// One labelled span of a tree after unary chains are collapsed.
struct LabeledSpan {
  int first = 0;
  int last = 0;
  std::string label;

  bool operator==(const LabeledSpan&) const = default;
  auto operator<=>(const LabeledSpan&) const = default;
};

/// Every span of the tree once, labelled with its collapsed unary chain
/// (e.g. "S+VP"). Single-token spans without a phrase above the preterminal
/// get kEmptyLabel, as do explicit kEmptyLabel nodes.
std::vector<LabeledSpan> collapsed_spans(const Node& root);

/// Splits "S+VP" into {"S", "VP"}.
std::vector<std::string> split_chain(std::string_view atom);
std::string join_chain(const std::vector<std::string>& labels);

/// Recomputes first/last of every node from the preterminal order.
/// Preterminals are numbered 1..n left to right. Returns n.
int reindex(Node& root);

/// Preterminals left to right.
std::vector<const Node*> preterminals(const Node& root);

/// Removes nodes with the given label, splicing their children into the
/// parent. The root itself is never removed.
void splice_out(Node& root, std::string_view label);

std::vector<Token> make_tokens(const std::vector<std::string>& forms,
                               const std::vector<std::string>& tags);

}  // namespace hpsg
