#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hpsg/tree.hpp"

namespace hpsg {

/// A tree dropped while reading (e.g. nothing left after -NONE- removal).
struct ReadWarning {
  int ordinal = 0;  // 1-based position of the tree in the input
  int line = 0;
  std::string message;
};

struct BracketedOptions {
  bool strip_function_tags = true;
  bool strip_empty_elements = true;  // drop -NONE- preterminals
};

/// Reads zero or more s-expression trees. An outermost node with an empty
/// label wrapping a single tree is unwrapped. Throws ParseError on
/// unbalanced input.
std::vector<ConstituentTree> read_bracketed(std::istream& in,
                                            std::vector<ReadWarning>* warnings = nullptr,
                                            const BracketedOptions& options = {});
std::vector<ConstituentTree> read_bracketed(std::string_view text,
                                            std::vector<ReadWarning>* warnings = nullptr,
                                            const BracketedOptions& options = {});

void write_bracketed(std::ostream& out, const ConstituentTree& tree);
std::string to_bracketed(const Node& root, const std::vector<Token>& tokens);

/// Removes a trailing function tag or index: "NP-SBJ-1" -> "NP", "NP=2" -> "NP".
/// Reserved categories and labels starting with '-' are left alone.
std::string strip_function_tag(std::string_view label);

struct ConllOptions {
  bool require_heads = true;  // false: HEAD may be "_" and heads are left empty
};

/// CoNLL-X reader. Blank lines separate sentences; each line needs at least
/// eight tab-separated columns. Cycles and multiple roots are rejected.
std::vector<DependencyTree> read_conll(std::istream& in, const ConllOptions& options = {});
std::vector<DependencyTree> read_conll(std::string_view text, const ConllOptions& options = {});
void write_conll(std::ostream& out, const DependencyTree& tree);

/// Throws StructuralError when heads do not form a single-rooted tree.
void check_dependency_tree(const DependencyTree& tree, int ordinal);

/// Pairs sentence i of each treebank. Any count or form mismatch fails the
/// whole call with AlignmentError.
std::vector<std::pair<ConstituentTree, DependencyTree>> pair_treebanks(
    std::vector<ConstituentTree> constituents, std::vector<DependencyTree> dependencies);

/// Head-annotated trees, one per line: "(NP[3] (NNP[1] Federal) ...)".
void write_hpsg(std::ostream& out, const HpsgTree& tree);
std::string to_hpsg_string(const HpsgTree& tree);
std::vector<HpsgTree> read_hpsg(std::istream& in);
std::vector<HpsgTree> read_hpsg(std::string_view text);

/// Throws ParseError on the first malformed UTF-8 sequence.
void check_utf8(std::string_view text);

std::string slurp(std::istream& in);

}  // namespace hpsg
