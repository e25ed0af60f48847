#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

#include "hpsg/tree.hpp"
#include "hpsg/vocab.hpp"

namespace hpsg {

/// Per-sentence scores: s(i,j,l) for every span and category, d(r,h) for
/// every child/head pair and d(h,root). Spans are stored one row per
/// (i,j), n(n+1)/2 rows, one column per category id.
class ScoreTable {
 public:
  ScoreTable() = default;
  ScoreTable(int n, int num_labels);

  int size() const { return n_; }
  int num_labels() const { return static_cast<int>(spans_.cols()); }
  int num_spans() const { return static_cast<int>(spans_.rows()); }

  /// Row of span (i,j), 1 <= i <= j <= n.
  static int span_row(int n, int i, int j) {
    return (i - 1) * n - (i - 1) * (i - 2) / 2 + (j - i);
  }

  double span(int i, int j, int label) const { return spans_(span_row(n_, i, j), label); }
  double& span(int i, int j, int label) { return spans_(span_row(n_, i, j), label); }
  double arc(int child, int head) const { return arcs_(child - 1, head - 1); }
  double& arc(int child, int head) { return arcs_(child - 1, head - 1); }
  double root(int head) const { return root_(head - 1); }
  double& root(int head) { return root_(head - 1); }

  /// Range-checked span lookup; throws ContractError.
  double span_checked(int i, int j, int label) const;

  const Eigen::MatrixXd& spans() const { return spans_; }
  Eigen::MatrixXd& spans() { return spans_; }
  const Eigen::MatrixXd& arcs() const { return arcs_; }
  Eigen::MatrixXd& arcs() { return arcs_; }
  const Eigen::VectorXd& roots() const { return root_; }
  Eigen::VectorXd& roots() { return root_; }

  /// Span scores scaled by lambda, arc and root scores by (1 - lambda).
  ScoreTable mixed(double lambda) const;

  /// Grows or shrinks the category dimension; new columns are zero.
  void resize_labels(int num_labels);

  bool all_finite() const;
  bool operator==(const ScoreTable& other) const;

 private:
  int n_ = 0;
  Eigen::MatrixXd spans_;
  Eigen::MatrixXd arcs_;  // (child - 1, head - 1)
  Eigen::VectorXd root_;
};

/// Throws ConfigError unless 0 <= lambda <= 1.
void check_lambda(double lambda);

struct ScoredSentence {
  int ordinal = 0;
  ScoreTable scores;
};

/// Block per sentence: "#sent <ordinal> <n>", then "SPAN i j <category> <score>",
/// "ARC <child> <head> <score>" and "ROOT <head> <score>" lines. Zero
/// entries are omitted.
void write_scores(std::ostream& out, const std::vector<ScoredSentence>& sentences,
                  const CategoryVocab& vocab);
/// Unknown categories are added to `vocab`; every returned table has
/// vocab.size() columns.
std::vector<ScoredSentence> read_scores(std::istream& in, CategoryVocab& vocab);

/// lambda * (sum of span scores) + (1 - lambda) * (arc scores + root score).
/// Spans are the tree's collapsed spans, including empty-category ones.
double tree_score(const HpsgTree& tree, const ScoreTable& scores, const CategoryVocab& vocab,
                  double lambda);
/// Span part only, scaled by lambda.
double tree_score(const ConstituentTree& tree, const ScoreTable& scores,
                  const CategoryVocab& vocab, double lambda);

/// 1 for each gold (span, category) and gold arc, 0 elsewhere. The empty
/// category never scores.
ScoreTable oracle_scores(const HpsgTree& gold, const CategoryVocab& vocab);
/// 1 for each labelled span of a division tree, empty categories included.
ScoreTable division_oracle_scores(const ConstituentTree& division_tree,
                                  const CategoryVocab& vocab);

}  // namespace hpsg
