#include <cstdint>
#include <limits>
#include <vector>

#include "hpsg/decoders.hpp"
#include "hpsg/error.hpp"

namespace hpsg {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Complete and incomplete scores for every (i, j, h) with i <= h <= j, packed
// span by span. Both charts share one backpointer per cell: the split point k
// and the sub-head r of the dependent half.
class JointChart {
 public:
  explicit JointChart(int n) : n_(n), offset_(n * (n + 1) / 2 + 1, 0) {
    for (int i = 1; i <= n; ++i) {
      for (int j = i; j <= n; ++j) {
        const int row = ScoreTable::span_row(n, i, j);
        offset_[row + 1] = offset_[row] + (j - i + 1);
      }
    }
    const std::size_t cells = offset_.back();
    complete_.assign(cells, kNegInf);
    incomplete_.assign(cells, kNegInf);
    split_.assign(cells, 0);
    sub_head_.assign(cells, 0);
    best_any_.assign(offset_.size() - 1, CategoryVocab::kEmpty);
    best_non_empty_.assign(offset_.size() - 1, -1);
  }

  std::size_t cell(int i, int j, int h) const {
    return offset_[ScoreTable::span_row(n_, i, j)] + (h - i);
  }

  double& complete(int i, int j, int h) { return complete_[cell(i, j, h)]; }
  double& incomplete(int i, int j, int h) { return incomplete_[cell(i, j, h)]; }
  std::int16_t& split(int i, int j, int h) { return split_[cell(i, j, h)]; }
  std::int16_t& sub_head(int i, int j, int h) { return sub_head_[cell(i, j, h)]; }
  int& best_any(int i, int j) { return best_any_[ScoreTable::span_row(n_, i, j)]; }
  int& best_non_empty(int i, int j) { return best_non_empty_[ScoreTable::span_row(n_, i, j)]; }

  std::size_t bytes() const {
    return sizeof(*this) + offset_.capacity() * sizeof(int) +
           (complete_.capacity() + incomplete_.capacity()) * sizeof(double) +
           (split_.capacity() + sub_head_.capacity()) * sizeof(std::int16_t) +
           (best_any_.capacity() + best_non_empty_.capacity()) * sizeof(int);
  }

 private:
  int n_;
  std::vector<int> offset_;
  std::vector<double> complete_;
  std::vector<double> incomplete_;
  std::vector<std::int16_t> split_;
  std::vector<std::int16_t> sub_head_;
  std::vector<int> best_any_;
  std::vector<int> best_non_empty_;
};

class Backtracker {
 public:
  Backtracker(JointChart& chart, SpanTree& out) : chart_(chart), out_(out) {}

  int emit(int i, int j, int h, bool complete) {
    SpanNode node{i, j, h, complete ? chart_.best_non_empty(i, j) : chart_.best_any(i, j), -1, -1};
    if (i == j) {
      node.label = chart_.best_any(i, j);
    } else {
      const int k = chart_.split(i, j, h);
      const int r = chart_.sub_head(i, j, h);
      if (r < h) {
        node.left = emit(i, k, r, true);
        node.right = emit(k + 1, j, h, false);
      } else {
        node.left = emit(i, k, h, false);
        node.right = emit(k + 1, j, r, true);
      }
    }
    out_.nodes.push_back(node);
    return static_cast<int>(out_.nodes.size()) - 1;
  }

 private:
  JointChart& chart_;
  SpanTree& out_;
};

}  // namespace

JointDecode decode_joint_mixed(const ScoreTable& scores, std::span<const Token> tokens,
                               const CategoryVocab& vocab) {
  const int n = scores.size();
  if (n == 0) throw ContractError("cannot decode an empty sentence");
  if (static_cast<int>(tokens.size()) != n) {
    throw ContractError("token count differs from score table size");
  }
  if (n > std::numeric_limits<std::int16_t>::max()) {
    throw ContractError("sentence too long for the joint chart");
  }
  JointChart chart(n);

  for (int i = 1; i <= n; ++i) {
    for (int j = i; j <= n; ++j) {
      const auto span = scores.spans().row(ScoreTable::span_row(n, i, j));
      int any = 0;
      int non_empty = -1;
      for (int l = 1; l < scores.num_labels(); ++l) {
        if (span(l) > span(any)) any = l;
        if (vocab.is_empty(l)) continue;
        if (non_empty < 0 || span(l) > span(non_empty)) non_empty = l;
      }
      chart.best_any(i, j) = any;
      chart.best_non_empty(i, j) = non_empty;
    }
  }

  for (int i = 1; i <= n; ++i) {
    const double s = scores.span(i, i, chart.best_any(i, i));
    chart.complete(i, i, i) = s;
    chart.incomplete(i, i, i) = s;
  }

  for (int len = 2; len <= n; ++len) {
    for (int i = 1; i + len - 1 <= n; ++i) {
      const int j = i + len - 1;
      const double any = scores.span(i, j, chart.best_any(i, j));
      const int ne = chart.best_non_empty(i, j);
      const double non_empty = ne < 0 ? kNegInf : scores.span(i, j, ne);
      for (int h = i; h <= j; ++h) {
        double best = kNegInf;
        int best_k = 0;
        int best_r = 0;
        for (int k = i; k < j; ++k) {
          if (k < h) {
            // Dependent r heads the left part [i, k].
            const double right = chart.incomplete(k + 1, j, h);
            if (right == kNegInf) continue;
            for (int r = i; r <= k; ++r) {
              const double v = chart.complete(i, k, r) + right + scores.arc(r, h);
              if (v > best) {
                best = v;
                best_k = k;
                best_r = r;
              }
            }
          } else {
            // Dependent r heads the right part [k + 1, j].
            const double left = chart.incomplete(i, k, h);
            if (left == kNegInf) continue;
            for (int r = k + 1; r <= j; ++r) {
              const double v = left + chart.complete(k + 1, j, r) + scores.arc(r, h);
              if (v > best) {
                best = v;
                best_k = k;
                best_r = r;
              }
            }
          }
        }
        if (best == kNegInf) continue;
        chart.split(i, j, h) = static_cast<std::int16_t>(best_k);
        chart.sub_head(i, j, h) = static_cast<std::int16_t>(best_r);
        chart.complete(i, j, h) = best + non_empty;
        chart.incomplete(i, j, h) = best + any;
      }
    }
  }

  double best = kNegInf;
  int root = 0;
  for (int h = 1; h <= n; ++h) {
    const double v = chart.complete(1, n, h) + scores.root(h);
    if (v > best) {
      best = v;
      root = h;
    }
  }
  if (root == 0) throw ContractError("no category may label the root");

  JointDecode out;
  out.score = best;
  out.chart_bytes = chart.bytes();
  Backtracker back(chart, out.spans);
  out.spans.root = back.emit(1, n, root, true);
  out.binarized = span_tree_to_hpsg(out.spans, tokens, vocab);
  out.tree = remove_empty_nodes(out.binarized);
  return out;
}

JointDecode decode_joint(const ScoreTable& raw, std::span<const Token> tokens,
                         const CategoryVocab& vocab, const DecodeConfig& cfg) {
  check_lambda(cfg.lambda);
  if (raw.size() == 0) throw ContractError("cannot decode an empty sentence");
  const ScoreTable mixed = raw.mixed(cfg.lambda);
  if (cfg.length_cap > 0 && raw.size() > cfg.length_cap) {
    return decode_cky_greedy_heads(mixed, tokens, vocab);
  }
  return decode_joint_mixed(mixed, tokens, vocab);
}

JointDecode decode_cky_greedy_heads(const ScoreTable& scores, std::span<const Token> tokens,
                                    const CategoryVocab& vocab) {
  if (static_cast<int>(tokens.size()) != scores.size()) {
    throw ContractError("token count differs from score table size");
  }
  CkyResult best = cky(scores, vocab);
  JointDecode out;
  out.fell_back = true;
  out.spans = std::move(best.spans);
  out.score = best.score;
  // Children precede parents in the node list.
  for (SpanNode& node : out.spans.nodes) {
    if (node.is_leaf()) {
      node.head = node.first;
      continue;
    }
    const int hl = out.spans.nodes[node.left].head;
    const int hr = out.spans.nodes[node.right].head;
    const bool is_root = &node == &out.spans.nodes[out.spans.root];
    const double keep_left = scores.arc(hr, hl) + (is_root ? scores.root(hl) : 0.0);
    const double keep_right = scores.arc(hl, hr) + (is_root ? scores.root(hr) : 0.0);
    if (keep_left >= keep_right) {
      node.head = hl;
      out.score += scores.arc(hr, hl);
    } else {
      node.head = hr;
      out.score += scores.arc(hl, hr);
    }
  }
  out.score += scores.root(out.spans.top().head);
  out.binarized = span_tree_to_hpsg(out.spans, tokens, vocab);
  out.tree = remove_empty_nodes(out.binarized);
  return out;
}

}  // namespace hpsg
