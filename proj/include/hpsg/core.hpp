#pragma once

#include <map>
#include <utility>
#include <vector>

#include "hpsg/tree.hpp"

namespace hpsg {

using Span = std::pair<int, int>;

/// Outcome of head assignment for one sentence.
struct HeadAuditReport {
  int sentence = 0;
  /// Phrases whose span had two or more external heads before `#` grouping.
  int multi_head_before = 0;
  /// Multi-head phrases that grouping could not resolve.
  int residual = 0;
  /// Tokens whose dependency head the fused tree cannot reproduce.
  int arc_mismatches = 0;
  std::vector<Span> offending;

  /// Clean sentences project back to exactly the input constituents and
  /// unlabelled dependencies.
  bool clean() const { return residual == 0 && arc_mismatches == 0; }
};

/// Tokens in [first, last] whose dependency head lies outside the span
/// (root counts as outside), ascending.
std::vector<int> external_heads(const DependencyTree& deps, int first, int last);

/// External head set of every constituent span.
std::map<Span, std::vector<int>> heads_of_spans(const ConstituentTree& tree,
                                                const DependencyTree& deps);

struct FuseResult {
  HpsgTree tree;
  HeadAuditReport audit;
};

/// Builds the head-annotated tree for an aligned pair. Children of a
/// multi-head phrase are grouped into maximal left-to-right runs with a
/// single external head; each run of two or more children is wrapped in a
/// `#` node. Heads are then assigned top-down: a node takes its parent's
/// head when it contains it, otherwise its leftmost external head.
FuseResult fuse(const ConstituentTree& constituents, const DependencyTree& deps,
                int ordinal = 0);

/// Structural head check: every head lies inside its span, preterminals head
/// themselves and every phrase shares its head with exactly one child.
HeadAuditReport validate(const HpsgTree& tree);

/// Drops heads and removes `#` and empty-category nodes.
ConstituentTree project_constituents(const HpsgTree& tree);

/// Each token depends on the head of the smallest enclosing node headed by
/// another token; the root's head depends on 0.
DependencyTree project_dependencies(const HpsgTree& tree);

}  // namespace hpsg
