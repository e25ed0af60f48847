#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "hpsg/tree.hpp"

namespace hpsg {

struct EvalOptions {
  /// Gold POS tags whose tokens are deleted before bracket comparison and
  /// excluded from attachment scores.
  std::set<std::string> punctuation{"``", "''", ":", ",", "."};
  /// Bracket labels mapped to a canonical label before matching.
  std::map<std::string, std::string> equivalences;
  /// Bracket labels dropped entirely. `#` and <E> are always dropped.
  std::set<std::string> deleted_labels;
};

/// Parses "a,b,c" into a punctuation set; throws ConfigError on an empty list.
std::set<std::string> parse_punctuation_set(const std::string& csv);

struct EvalReport {
  int sentences = 0;

  bool has_brackets = false;
  int exact_match = 0;
  long gold_brackets = 0;
  long pred_brackets = 0;
  long matched_brackets = 0;
  double recall = 0.0;     // percent
  double precision = 0.0;  // percent
  double f1 = 0.0;         // percent

  bool has_attachment = false;
  bool has_las = false;
  long scored_tokens = 0;
  long correct_heads = 0;
  long correct_labeled = 0;
  double uas = 0.0;  // percent
  double las = 0.0;  // percent
};

/// evalb-style labelled bracket scores. Preterminals are not brackets;
/// punctuation tokens (by gold tag) are removed and spans renumbered.
/// Throws AlignmentError when sentence or token counts differ.
EvalReport bracket_f1(const std::vector<ConstituentTree>& gold,
                      const std::vector<ConstituentTree>& pred, const EvalOptions& options = {});

/// UAS over non-punctuation tokens; LAS only when both sides carry labels.
EvalReport attachment_scores(const std::vector<DependencyTree>& gold,
                             const std::vector<DependencyTree>& pred,
                             const EvalOptions& options = {});

/// Bracket fields from `brackets`, attachment fields from `attachment`.
EvalReport combine(const EvalReport& brackets, const EvalReport& attachment);

/// Aligned two-column table.
std::string format_table(const EvalReport& report);
/// One key=value pair per line.
std::string format_key_values(const EvalReport& report);

}  // namespace hpsg
