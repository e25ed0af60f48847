#include <limits>
#include <string>
#include <vector>

#include "hpsg/decoders.hpp"
#include "hpsg/error.hpp"

namespace hpsg {

namespace {

// An unlabelled binary head tree; the node at nodes.back() is the top.
struct Shape {
  std::vector<SpanNode> nodes;
  int head = 0;
};

std::vector<Shape> shapes(int i, int j) {
  if (i == j) return {Shape{{SpanNode{i, i, i, 0, -1, -1}}, i}};
  std::vector<Shape> out;
  for (int k = i; k < j; ++k) {
    const std::vector<Shape> lefts = shapes(i, k);
    const std::vector<Shape> rights = shapes(k + 1, j);
    for (const Shape& l : lefts) {
      for (const Shape& r : rights) {
        for (const int h : {l.head, r.head}) {
          Shape s;
          s.nodes = l.nodes;
          const int offset = static_cast<int>(l.nodes.size());
          for (SpanNode node : r.nodes) {
            if (!node.is_leaf()) {
              node.left += offset;
              node.right += offset;
            }
            s.nodes.push_back(node);
          }
          s.nodes.push_back(SpanNode{i, j, h, 0, offset - 1,
                                     static_cast<int>(s.nodes.size()) - 1});
          s.head = h;
          out.push_back(std::move(s));
        }
      }
    }
  }
  return out;
}

int argmax_label(const ScoreTable& scores, const CategoryVocab& vocab, int i, int j,
                 bool non_empty) {
  int best = -1;
  for (int l = 0; l < scores.num_labels(); ++l) {
    if (non_empty && vocab.is_empty(l)) continue;
    if (best < 0 || scores.span(i, j, l) > scores.span(i, j, best)) best = l;
  }
  return best;
}

// Complete spans (the top and every dependent half) may not be empty unless
// they cover a single token. Returns false when no category qualifies.
bool label(std::vector<SpanNode>& nodes, int index, bool complete, const ScoreTable& scores,
           const CategoryVocab& vocab) {
  SpanNode& node = nodes[index];
  node.label = argmax_label(scores, vocab, node.first, node.last,
                            complete && node.first < node.last);
  if (node.label < 0) return false;
  if (node.is_leaf()) return true;
  const int left = node.left;
  const int right = node.right;
  const bool left_heads = nodes[left].head == node.head;
  return label(nodes, left, !left_heads, scores, vocab) &&
         label(nodes, right, left_heads, scores, vocab);
}

}  // namespace

JointDecode brute_force(const ScoreTable& raw, std::span<const Token> tokens,
                        const CategoryVocab& vocab, const DecodeConfig& cfg) {
  check_lambda(cfg.lambda);
  const int n = raw.size();
  if (n == 0) throw ContractError("cannot decode an empty sentence");
  if (n > kBruteForceLimit) {
    throw ConfigError("brute force refuses sentences longer than " +
                      std::to_string(kBruteForceLimit) + " tokens");
  }
  const ScoreTable mixed = raw.mixed(cfg.lambda);
  JointDecode best;
  best.score = -std::numeric_limits<double>::infinity();
  bool found = false;
  for (Shape& shape : shapes(1, n)) {
    SpanTree candidate;
    candidate.nodes = std::move(shape.nodes);
    candidate.root = static_cast<int>(candidate.nodes.size()) - 1;
    if (!label(candidate.nodes, candidate.root, true, mixed, vocab)) continue;
    HpsgTree tree = span_tree_to_hpsg(candidate, tokens, vocab);
    const double score = tree_score(tree, raw, vocab, cfg.lambda);
    if (!found || score > best.score) {
      found = true;
      best.score = score;
      best.spans = std::move(candidate);
      best.binarized = std::move(tree);
    }
  }
  if (!found) throw ContractError("no category may label the root");
  best.tree = remove_empty_nodes(best.binarized);
  return best;
}

}  // namespace hpsg
