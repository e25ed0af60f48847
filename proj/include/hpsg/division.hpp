#pragma once

#include "hpsg/tree.hpp"

namespace hpsg {

/// Binary constituent tree whose categories encode heads: children at or
/// left of the head daughter carry the H_ prefix, binarization nodes carry
/// <E> (H_<E> when they contain the head daughter), unary chains are single
/// "+"-joined atoms, and a single-token span without a phrase above its
/// preterminal is labelled <E>.
struct DivisionTree {
  ConstituentTree tree;

  bool operator==(const DivisionTree&) const = default;
};

/// Throws ContractError if some phrase does not share its head with exactly
/// one child (run fuse first).
DivisionTree to_division(const HpsgTree& tree);

struct FromDivisionResult {
  HpsgTree tree;
  /// Phrases whose H_ marks did not identify a head daughter; they fall back
  /// to the leftmost child.
  int repairs = 0;
};

FromDivisionResult from_division(const DivisionTree& division);

/// "H_NP" -> true, "NP" -> false.
bool has_head_prefix(std::string_view label);

}  // namespace hpsg
