#include "hpsg/decoders.hpp"

#include <string>
#include <utility>

namespace hpsg {

namespace {

Node preterminal(std::span<const Token> tokens, int index) {
  return Node{tokens[index - 1].pos, index, index, index, {}};
}

// Wraps `inner` in every category of the chain except the innermost, which
// `inner` already carries.
Node wrap_chain(std::vector<std::string> chain, Node inner) {
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    Node outer;
    outer.label = *it;
    outer.first = inner.first;
    outer.last = inner.last;
    outer.head = inner.head;
    outer.children.push_back(std::move(inner));
    inner = std::move(outer);
  }
  return inner;
}

Node build_hpsg(const SpanTree& spans, int index, std::span<const Token> tokens,
                const CategoryVocab& vocab) {
  const SpanNode& sn = spans.nodes[index];
  if (sn.is_leaf()) {
    Node leaf = preterminal(tokens, sn.first);
    if (sn.label == CategoryVocab::kEmpty) return leaf;
    return wrap_chain(split_chain(vocab.label(sn.label)), std::move(leaf));
  }
  Node inner;
  inner.first = sn.first;
  inner.last = sn.last;
  inner.head = sn.head;
  inner.children.push_back(build_hpsg(spans, sn.left, tokens, vocab));
  inner.children.push_back(build_hpsg(spans, sn.right, tokens, vocab));
  std::vector<std::string> chain = split_chain(vocab.label(sn.label));
  inner.label = chain.back();
  chain.pop_back();
  return wrap_chain(std::move(chain), std::move(inner));
}

Node build_atomic(const SpanTree& spans, int index, std::span<const Token> tokens,
                  const CategoryVocab& vocab) {
  const SpanNode& sn = spans.nodes[index];
  Node node;
  node.label = vocab.label(sn.label);
  node.first = sn.first;
  node.last = sn.last;
  if (sn.is_leaf()) {
    node.children.push_back(Node{tokens[sn.first - 1].pos, sn.first, sn.first, 0, {}});
  } else {
    node.children.push_back(build_atomic(spans, sn.left, tokens, vocab));
    node.children.push_back(build_atomic(spans, sn.right, tokens, vocab));
  }
  return node;
}

}  // namespace

HpsgTree span_tree_to_hpsg(const SpanTree& spans, std::span<const Token> tokens,
                           const CategoryVocab& vocab) {
  HpsgTree tree;
  tree.tokens.assign(tokens.begin(), tokens.end());
  tree.root = build_hpsg(spans, spans.root, tokens, vocab);
  return tree;
}

ConstituentTree span_tree_to_atomic(const SpanTree& spans, std::span<const Token> tokens,
                                    const CategoryVocab& vocab) {
  ConstituentTree tree;
  tree.tokens.assign(tokens.begin(), tokens.end());
  tree.root = build_atomic(spans, spans.root, tokens, vocab);
  return tree;
}

HpsgTree remove_empty_nodes(HpsgTree tree) {
  splice_out(tree.root, kEmptyLabel);
  return tree;
}

std::vector<Token> placeholder_tokens(int n) {
  std::vector<Token> tokens;
  for (int i = 1; i <= n; ++i) tokens.push_back({i, "w" + std::to_string(i), "X"});
  return tokens;
}

}  // namespace hpsg
