#include "hpsg/tree.hpp"

#include <utility>

namespace hpsg {

namespace {

void collect_spans(const Node& node, std::vector<LabeledSpan>& out) {
  if (node.is_preterminal()) {
    out.push_back({node.first, node.last, std::string(kEmptyLabel)});
    return;
  }
  std::vector<std::string> chain{node.label};
  const Node* cur = &node;
  while (cur->children.size() == 1 && !cur->children[0].is_preterminal()) {
    cur = &cur->children[0];
    chain.push_back(cur->label);
  }
  out.push_back({node.first, node.last, join_chain(chain)});
  if (cur->children.size() == 1) return;  // chain ends on a preterminal
  for (const Node& child : cur->children) collect_spans(child, out);
}

int number(Node& node, int next) {
  if (node.is_preterminal()) {
    node.first = node.last = next;
    return next + 1;
  }
  node.first = next;
  for (Node& child : node.children) next = number(child, next);
  node.last = next - 1;
  return next;
}

void collect_preterminals(const Node& node, std::vector<const Node*>& out) {
  if (node.is_preterminal()) {
    out.push_back(&node);
    return;
  }
  for (const Node& child : node.children) collect_preterminals(child, out);
}

}  // namespace

std::vector<LabeledSpan> collapsed_spans(const Node& root) {
  std::vector<LabeledSpan> out;
  collect_spans(root, out);
  return out;
}

std::vector<std::string> split_chain(std::string_view atom) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = atom.find(kChainJoin, start);
    parts.emplace_back(atom.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string join_chain(const std::vector<std::string>& labels) {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += kChainJoin;
    out += labels[i];
  }
  return out;
}

int reindex(Node& root) { return number(root, 1) - 1; }

std::vector<const Node*> preterminals(const Node& root) {
  std::vector<const Node*> out;
  collect_preterminals(root, out);
  return out;
}

void splice_out(Node& root, std::string_view label) {
  if (root.is_preterminal()) return;
  std::vector<Node> kept;
  kept.reserve(root.children.size());
  for (Node& child : root.children) {
    splice_out(child, label);
    if (!child.is_preterminal() && child.label == label) {
      for (Node& grandchild : child.children) kept.push_back(std::move(grandchild));
    } else {
      kept.push_back(std::move(child));
    }
  }
  root.children = std::move(kept);
}

std::vector<Token> make_tokens(const std::vector<std::string>& forms,
                               const std::vector<std::string>& tags) {
  std::vector<Token> tokens;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    tokens.push_back({static_cast<int>(i) + 1, forms[i], i < tags.size() ? tags[i] : "X"});
  }
  return tokens;
}

}  // namespace hpsg
