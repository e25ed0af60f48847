#include <limits>
#include <vector>

#include "hpsg/decoders.hpp"
#include "hpsg/error.hpp"

namespace hpsg {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct BestLabels {
  int any = 0;
  int non_empty = -1;
};

BestLabels best_labels(const ScoreTable& scores, const CategoryVocab& vocab, int row) {
  BestLabels best;
  const auto span = scores.spans().row(row);
  for (int l = 1; l < scores.num_labels(); ++l) {
    if (span(l) > span(best.any)) best.any = l;
    if (vocab.is_empty(l)) continue;
    if (best.non_empty < 0 || span(l) > span(best.non_empty)) best.non_empty = l;
  }
  return best;
}

int emit(SpanTree& out, const std::vector<int>& split, const std::vector<int>& label, int n,
         int i, int j) {
  const int row = ScoreTable::span_row(n, i, j);
  SpanNode node{i, j, 0, label[row], -1, -1};
  if (i < j) {
    const int k = split[row];
    node.left = emit(out, split, label, n, i, k);
    node.right = emit(out, split, label, n, k + 1, j);
  }
  out.nodes.push_back(node);
  return static_cast<int>(out.nodes.size()) - 1;
}

}  // namespace

CkyResult cky(const ScoreTable& scores, const CategoryVocab& vocab) {
  const int n = scores.size();
  if (n == 0) throw ContractError("cannot decode an empty sentence");
  if (scores.num_labels() > vocab.size()) {
    throw ContractError("score table has more categories than the vocabulary");
  }
  const int rows = scores.num_spans();
  std::vector<double> best(rows, kNegInf);
  std::vector<int> split(rows, -1);
  std::vector<int> label(rows, CategoryVocab::kEmpty);

  for (int len = 1; len <= n; ++len) {
    for (int i = 1; i + len - 1 <= n; ++i) {
      const int j = i + len - 1;
      const int row = ScoreTable::span_row(n, i, j);
      const BestLabels labels = best_labels(scores, vocab, row);
      const bool is_root = len == n && n > 1;
      const int l = is_root ? labels.non_empty : labels.any;
      if (l < 0) continue;
      label[row] = l;
      const double own = scores.spans()(row, l);
      if (len == 1) {
        best[row] = own;
        continue;
      }
      double inside = kNegInf;
      for (int k = i; k < j; ++k) {
        const double v = best[ScoreTable::span_row(n, i, k)] +
                         best[ScoreTable::span_row(n, k + 1, j)];
        if (v > inside) {
          inside = v;
          split[row] = k;
        }
      }
      best[row] = inside + own;
    }
  }

  const int top = ScoreTable::span_row(n, 1, n);
  if (best[top] == kNegInf) throw ContractError("no category may label the root");
  CkyResult result;
  result.score = best[top];
  result.spans.root = emit(result.spans, split, label, n, 1, n);
  return result;
}

DivisionDecode decode_division(const ScoreTable& scores, std::span<const Token> tokens,
                               const CategoryVocab& vocab) {
  if (static_cast<int>(tokens.size()) != scores.size()) {
    throw ContractError("token count differs from score table size");
  }
  CkyResult best = cky(scores, vocab);
  DivisionDecode out;
  out.tree.tree = span_tree_to_atomic(best.spans, tokens, vocab);
  out.score = best.score;
  return out;
}

}  // namespace hpsg
