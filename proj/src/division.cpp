#include "hpsg/division.hpp"

#include <string>
#include <utility>

#include "hpsg/error.hpp"

namespace hpsg {

namespace {

std::string marked(bool head_side, std::string_view label) {
  return head_side ? std::string(kHeadPrefix) + std::string(label) : std::string(label);
}

std::string_view base_of(std::string_view label) {
  return has_head_prefix(label) ? label.substr(kHeadPrefix.size()) : label;
}

Node wrap(std::string label, Node left, Node right) {
  Node node;
  node.label = std::move(label);
  node.first = left.first;
  node.last = right.last;
  node.children.push_back(std::move(left));
  node.children.push_back(std::move(right));
  return node;
}

Node encode(const Node& node, bool head_side) {
  Node out;
  out.first = node.first;
  out.last = node.last;
  if (node.is_preterminal()) {
    out.label = marked(head_side, kEmptyLabel);
    out.children.push_back(Node{node.label, node.first, node.last, 0, {}});
    return out;
  }
  std::vector<std::string> chain{node.label};
  const Node* cur = &node;
  while (cur->children.size() == 1 && !cur->children[0].is_preterminal()) {
    cur = &cur->children[0];
    chain.push_back(cur->label);
  }
  const std::string label = marked(head_side, join_chain(chain));
  if (cur->children.size() == 1) {
    const Node& leaf = cur->children[0];
    out.label = label;
    out.children.push_back(Node{leaf.label, leaf.first, leaf.last, 0, {}});
    return out;
  }

  const int m = static_cast<int>(cur->children.size());
  int head_child = -1;
  int sharing = 0;
  for (int k = 0; k < m; ++k) {
    if (cur->children[k].head == cur->head) {
      head_child = k;
      ++sharing;
    }
  }
  if (sharing != 1) {
    throw ContractError("phrase (" + std::to_string(cur->first) + "," +
                        std::to_string(cur->last) + ") has no unique head daughter");
  }

  std::vector<Node> kids;
  for (int k = 0; k < m; ++k) kids.push_back(encode(cur->children[k], k <= head_child));
  // Right-branching: intermediate node k covers children k..m-1.
  Node acc = std::move(kids[m - 1]);
  for (int k = m - 2; k >= 1; --k) {
    acc = wrap(marked(k <= head_child, kEmptyLabel), std::move(kids[k]), std::move(acc));
  }
  return wrap(label, std::move(kids[0]), std::move(acc));
}

class Decoder {
 public:
  int repairs = 0;

  // Returns the decoded node and whether its category carried H_.
  std::pair<Node, bool> decode(const Node& node) {
    const bool head_side = has_head_prefix(node.label);
    const std::string base(base_of(node.label));

    if (node.is_preterminal()) return {Node{node.label, node.first, node.last, node.first, {}}, head_side};

    if (node.children.size() == 1 && node.children[0].is_preterminal()) {
      const Node& leaf = node.children[0];
      Node inner{leaf.label, leaf.first, leaf.last, leaf.first, {}};
      if (base == kEmptyLabel) return {std::move(inner), head_side};
      return {expand(base, std::move(inner)), head_side};
    }

    std::vector<const Node*> parts;
    for (const Node& child : node.children) flatten(child, parts);
    std::vector<Node> kids;
    std::vector<bool> marks;
    for (const Node* part : parts) {
      auto [kid, mark] = decode(*part);
      kids.push_back(std::move(kid));
      marks.push_back(mark);
    }
    int head_child = -1;
    for (int k = 0; k < static_cast<int>(marks.size()); ++k) {
      if (marks[k]) head_child = k;
    }
    bool ok = head_child >= 0;
    for (int k = 0; ok && k < static_cast<int>(marks.size()); ++k) ok = marks[k] == (k <= head_child);
    if (!ok) ++repairs;
    if (head_child < 0) head_child = 0;

    Node inner;
    inner.first = node.first;
    inner.last = node.last;
    inner.head = kids[head_child].head;
    inner.children = std::move(kids);
    if (base == kEmptyLabel) {
      // An empty category where a phrase belongs; keep it visible.
      ++repairs;
      inner.label = base;
      return {std::move(inner), head_side};
    }
    std::vector<std::string> chain = split_chain(base);
    inner.label = chain.back();
    chain.pop_back();
    if (chain.empty()) return {std::move(inner), head_side};
    return {expand(join_chain(chain), std::move(inner)), head_side};
  }

 private:
  static bool is_binarization(const Node& node) {
    return node.length() >= 2 && base_of(node.label) == kEmptyLabel;
  }

  static void flatten(const Node& node, std::vector<const Node*>& out) {
    if (is_binarization(node)) {
      for (const Node& child : node.children) flatten(child, out);
    } else {
      out.push_back(&node);
    }
  }

  // Wraps `inner` in the chain "A+B+C": A over B over C over inner.
  static Node expand(const std::string& atom, Node inner) {
    std::vector<std::string> chain = split_chain(atom);
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
};

}  // namespace

bool has_head_prefix(std::string_view label) {
  return label.size() > kHeadPrefix.size() && label.starts_with(kHeadPrefix);
}

DivisionTree to_division(const HpsgTree& tree) {
  DivisionTree out;
  out.tree.tokens = tree.tokens;
  out.tree.root = encode(tree.root, false);
  return out;
}

FromDivisionResult from_division(const DivisionTree& division) {
  Decoder decoder;
  FromDivisionResult result;
  result.tree.tokens = division.tree.tokens;
  result.tree.root = decoder.decode(division.tree.root).first;
  result.repairs = decoder.repairs;
  return result;
}

}  // namespace hpsg
