#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hpsg/division.hpp"
#include "hpsg/scores.hpp"
#include "hpsg/tree.hpp"
#include "hpsg/vocab.hpp"

namespace hpsg {

/// Node of a binary labelled span tree; leaves have left == right == -1.
struct SpanNode {
  int first = 0;
  int last = 0;
  int head = 0;
  int label = 0;
  int left = -1;
  int right = -1;

  bool is_leaf() const { return left < 0; }
};

struct SpanTree {
  std::vector<SpanNode> nodes;
  int root = -1;

  const SpanNode& top() const { return nodes[root]; }
};

/// Head-annotated tree with binarization nodes kept as <E> phrases, unary
/// atoms expanded and empty single-token spans as bare preterminals.
HpsgTree span_tree_to_hpsg(const SpanTree& spans, std::span<const Token> tokens,
                           const CategoryVocab& vocab);

/// One node per span labelled with its atomic category (division form).
ConstituentTree span_tree_to_atomic(const SpanTree& spans, std::span<const Token> tokens,
                                    const CategoryVocab& vocab);

/// Copy of the tree without <E> binarization nodes.
HpsgTree remove_empty_nodes(HpsgTree tree);

enum class TieBreak {
  /// Prefer the smaller split point, then the smaller sub-head, then the
  /// smaller category id.
  kLowestIndex,
};

struct DecodeConfig {
  double lambda = 0.5;
  TieBreak tie_break = TieBreak::kLowestIndex;
  /// Longer sentences skip the joint chart and use CKY plus greedy heads.
  int length_cap = 240;
};

// ---------------------------------------------------------------------------

struct CkyResult {
  SpanTree spans;
  double score = 0.0;
};

/// Best binary labelled tree for span scores that are already weighted.
/// For n >= 2 the root category may not be empty.
CkyResult cky(const ScoreTable& scores, const CategoryVocab& vocab);

struct DivisionDecode {
  DivisionTree tree;
  double score = 0.0;
};

DivisionDecode decode_division(const ScoreTable& scores, std::span<const Token> tokens,
                               const CategoryVocab& vocab);

// ---------------------------------------------------------------------------

struct JointDecode {
  SpanTree spans;
  HpsgTree binarized;  // includes <E> nodes; scores exactly to `score`
  HpsgTree tree;       // n-ary
  double score = 0.0;
  std::size_t chart_bytes = 0;
  bool fell_back = false;  // sentence exceeded the length cap
};

/// Joint span chart decoder over pre-weighted scores. O(n^5) time, O(n^3)
/// space.
JointDecode decode_joint_mixed(const ScoreTable& scores, std::span<const Token> tokens,
                               const CategoryVocab& vocab);

/// Weights raw scores by cfg.lambda, then decodes. The returned score equals
/// tree_score(result.binarized, raw, vocab, cfg.lambda).
JointDecode decode_joint(const ScoreTable& raw, std::span<const Token> tokens,
                         const CategoryVocab& vocab, const DecodeConfig& cfg);

/// CKY over the span scores, then each binary node picks the head side with
/// the better arc score. Used beyond the length cap.
JointDecode decode_cky_greedy_heads(const ScoreTable& scores, std::span<const Token> tokens,
                                    const CategoryVocab& vocab);

// ---------------------------------------------------------------------------

struct EisnerDecode {
  DependencyTree tree;
  double score = 0.0;
};

/// First-order projective decoder with a single root, over arc and root scores.
EisnerDecode decode_eisner(const ScoreTable& scores, std::span<const Token> tokens);

// ---------------------------------------------------------------------------

inline constexpr int kBruteForceLimit = 8;

/// Enumerates every binary head-annotated tree with its best category per
/// span and scores each with tree_score. Refuses n > kBruteForceLimit.
JointDecode brute_force(const ScoreTable& raw, std::span<const Token> tokens,
                        const CategoryVocab& vocab, const DecodeConfig& cfg);

/// Placeholder tokens w1..wn tagged X, for decoding tables without text.
std::vector<Token> placeholder_tokens(int n);

}  // namespace hpsg
