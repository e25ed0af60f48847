#include "hpsg/linear.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>

#include "hpsg/core.hpp"
#include "hpsg/decoders.hpp"
#include "hpsg/division.hpp"
#include "hpsg/error.hpp"

namespace hpsg {

LinearModel::LinearModel(CategoryVocab vocab, ModelKind kind, std::size_t dim)
    : vocab_(std::move(vocab)), kind_(kind), weights_(Eigen::VectorXd::Zero(dim)) {
  if (dim == 0) throw ConfigError("feature dimension must be positive");
}

bool LinearModel::scores_label(int label) const {
  return kind_ == ModelKind::kDivision || label != CategoryVocab::kEmpty;
}

ScoreTable LinearModel::score(std::span<const Token> tokens) const {
  const int n = static_cast<int>(tokens.size());
  const int k = vocab_.size();
  const std::size_t d = dim();
  ScoreTable table(n, k);
  for (int i = 1; i <= n; ++i) {
    for (int j = i; j <= n; ++j) {
      const std::vector<std::uint64_t> features = span_templates(tokens, i, j);
      for (int l = 0; l < k; ++l) {
        if (!scores_label(l)) continue;
        double s = 0.0;
        for (std::uint64_t f : features) s += weights_[span_index(f, l, d)];
        table.span(i, j, l) = s;
      }
    }
  }
  if (kind_ == ModelKind::kDivision) return table;
  auto dot = [&](int child, int head) {
    double s = 0.0;
    for (std::uint64_t f : arc_templates(tokens, child, head)) s += weights_[arc_index(f, d)];
    return s;
  };
  for (int r = 1; r <= n; ++r) {
    for (int h = 1; h <= n; ++h) {
      if (r != h) table.arc(r, h) = dot(r, h);
    }
    table.root(r) = dot(r, 0);
  }
  return table;
}

void LinearModel::save(std::ostream& out) const {
  out << "hpsg-linear 1\n";
  out << "kind " << (kind_ == ModelKind::kJoint ? "joint" : "division") << "\n";
  out << "dim " << dim() << "\n";
  out << "categories " << vocab_.size() << "\n";
  for (int l = 0; l < vocab_.size(); ++l) out << vocab_.label(l) << "\n";
  std::size_t nonzero = 0;
  for (Eigen::Index i = 0; i < weights_.size(); ++i) nonzero += weights_[i] != 0.0;
  out << "weights " << nonzero << "\n";
  char buf[64];
  for (Eigen::Index i = 0; i < weights_.size(); ++i) {
    if (weights_[i] == 0.0) continue;
    std::snprintf(buf, sizeof buf, "%.17g", weights_[i]);
    out << i << ' ' << buf << "\n";
  }
}

LinearModel LinearModel::load(std::istream& in) {
  int line_no = 0;
  std::string line;
  auto next = [&](const char* what) {
    if (!std::getline(in, line)) throw ParseError(line_no + 1, std::string("missing ") + what);
    ++line_no;
    return std::istringstream(line);
  };
  auto expect = [&](std::istringstream& ss, const std::string& key) {
    std::string got;
    ss >> got;
    if (got != key) throw ParseError(line_no, "expected '" + key + "'");
  };

  auto header = next("header");
  expect(header, "hpsg-linear");
  int version = 0;
  if (!(header >> version) || version != 1) throw ParseError(line_no, "unsupported model version");

  auto kind_line = next("kind");
  expect(kind_line, "kind");
  std::string kind;
  kind_line >> kind;
  if (kind != "joint" && kind != "division") throw ParseError(line_no, "unknown model kind");

  auto dim_line = next("dim");
  expect(dim_line, "dim");
  std::size_t dim = 0;
  if (!(dim_line >> dim) || dim == 0) throw ParseError(line_no, "bad dimension");

  auto cat_line = next("categories");
  expect(cat_line, "categories");
  int count = 0;
  if (!(cat_line >> count) || count < 2) throw ParseError(line_no, "bad category count");
  CategoryVocab vocab;
  for (int l = 0; l < count; ++l) {
    next("category");
    if (vocab.add(line) != l) throw ParseError(line_no, "category '" + line + "' out of order");
  }

  LinearModel model(std::move(vocab), kind == "joint" ? ModelKind::kJoint : ModelKind::kDivision,
                    dim);
  auto weight_line = next("weights");
  expect(weight_line, "weights");
  std::size_t nonzero = 0;
  if (!(weight_line >> nonzero)) throw ParseError(line_no, "bad weight count");
  for (std::size_t w = 0; w < nonzero; ++w) {
    auto ss = next("weight");
    std::size_t index = 0;
    double value = 0.0;
    if (!(ss >> index >> value) || index >= dim || !std::isfinite(value)) {
      throw ParseError(line_no, "bad weight entry");
    }
    model.weights_[static_cast<Eigen::Index>(index)] = value;
  }
  return model;
}

bool LinearModel::operator==(const LinearModel& other) const {
  return kind_ == other.kind_ && vocab_ == other.vocab_ && weights_ == other.weights_;
}

namespace {

// Sparse feature counts of one analysis, scaled by the mixing weights.
using SparseVector = std::vector<std::pair<std::size_t, double>>;

void add_span_features(SparseVector& out, std::span<const Token> tokens,
                       const std::vector<LabeledSpan>& spans, const LinearModel& model,
                       double coef) {
  if (coef == 0.0) return;
  for (const LabeledSpan& span : spans) {
    const int l = model.vocab().find_or_empty(span.label);
    if (!model.scores_label(l)) continue;
    for (std::uint64_t f : span_templates(tokens, span.first, span.last)) {
      out.emplace_back(span_index(f, l, model.dim()), coef);
    }
  }
}

void add_arc_features(SparseVector& out, std::span<const Token> tokens,
                      const std::vector<int>& heads, const LinearModel& model, double coef) {
  if (coef == 0.0) return;
  for (int t = 1; t <= static_cast<int>(heads.size()); ++t) {
    for (std::uint64_t f : arc_templates(tokens, t, heads[t - 1])) {
      out.emplace_back(arc_index(f, model.dim()), coef);
    }
  }
}

SparseVector joint_features(const HpsgTree& tree, const LinearModel& model, double lambda) {
  SparseVector out;
  add_span_features(out, tree.tokens, collapsed_spans(tree.root), model, lambda);
  add_arc_features(out, tree.tokens, project_dependencies(tree).heads, model, 1.0 - lambda);
  return out;
}

SparseVector division_features(const ConstituentTree& tree, const LinearModel& model) {
  SparseVector out;
  add_span_features(out, tree.tokens, collapsed_spans(tree.root), model, 1.0);
  return out;
}

// Adds 1 to every (i, j, l) whose category differs from the gold one; spans
// outside the gold tree have the empty category as gold.
void augment(ScoreTable& table, const std::vector<LabeledSpan>& gold, const CategoryVocab& vocab) {
  const int n = table.size();
  std::vector<int> gold_label(table.num_spans(), CategoryVocab::kEmpty);
  for (const LabeledSpan& span : gold) {
    gold_label[ScoreTable::span_row(n, span.first, span.last)] = vocab.find_or_empty(span.label);
  }
  table.spans().array() += 1.0;
  for (int row = 0; row < table.num_spans(); ++row) table.spans()(row, gold_label[row]) -= 1.0;
}

struct Example {
  HpsgTree tree;
  ConstituentTree division;  // only for division models
  std::vector<LabeledSpan> gold_spans;
};

class Trainer {
 public:
  Trainer(const LinearConfig& cfg, LinearModel model)
      : cfg_(cfg), model_(std::move(model)), total_(Eigen::VectorXd::Zero(model_.dim())) {}

  // Returns the sentence's hinge loss; updates when it is positive.
  double visit(const Example& ex) {
    const std::span<const Token> tokens(ex.tree.tokens);
    ScoreTable raw = model_.score(tokens);
    double hinge = 0.0;
    SparseVector gold;
    SparseVector pred;
    if (model_.kind() == ModelKind::kJoint) {
      ScoreTable aug = raw.mixed(cfg_.lambda);
      augment(aug, ex.gold_spans, model_.vocab());
      const JointDecode best = cfg_.length_cap > 0 && raw.size() > cfg_.length_cap
                                   ? decode_cky_greedy_heads(aug, tokens, model_.vocab())
                                   : decode_joint_mixed(aug, tokens, model_.vocab());
      hinge = best.score - tree_score(ex.tree, raw, model_.vocab(), cfg_.lambda);
      if (hinge > kMargin) {
        gold = joint_features(ex.tree, model_, cfg_.lambda);
        pred = joint_features(best.binarized, model_, cfg_.lambda);
      }
    } else {
      ScoreTable aug = raw;
      augment(aug, ex.gold_spans, model_.vocab());
      const DivisionDecode best = decode_division(aug, tokens, model_.vocab());
      hinge = best.score - tree_score(ex.division, raw, model_.vocab(), 1.0);
      if (hinge > kMargin) {
        gold = division_features(ex.division, model_);
        pred = division_features(best.tree.tree, model_);
      }
    }
    if (hinge > kMargin) {
      apply(gold, cfg_.step);
      apply(pred, -cfg_.step);
    }
    ++steps_;
    return std::max(hinge, 0.0);
  }

  // Mean of the weight vectors seen so far, the initial zero vector included.
  LinearModel averaged() const {
    LinearModel out = model_;
    if (cfg_.average && steps_ > 0) {
      out.weights() = model_.weights() - total_ / static_cast<double>(steps_ + 1);
    }
    return out;
  }

  static constexpr double kMargin = 1e-9;

 private:
  // Updates made at visit t are also accumulated with weight t, so the mean
  // needs no per-visit pass over the weights.
  void apply(const SparseVector& features, double scale) {
    for (const auto& [index, coef] : features) {
      const auto i = static_cast<Eigen::Index>(index);
      model_.weights()[i] += scale * coef;
      total_[i] += static_cast<double>(steps_ + 1) * scale * coef;
    }
  }

  const LinearConfig& cfg_;
  LinearModel model_;
  Eigen::VectorXd total_;
  long long steps_ = 0;
};

}  // namespace

TrainResult train_linear(const std::vector<HpsgTree>& corpus, const LinearConfig& cfg) {
  if (corpus.empty()) throw ConfigError("training corpus is empty");
  check_lambda(cfg.lambda);
  if (cfg.epochs < 1) throw ConfigError("epochs must be at least 1");
  if (!(cfg.step > 0.0)) throw ConfigError("step size must be positive");

  std::vector<Example> examples;
  CategoryVocab vocab = cfg.kind == ModelKind::kJoint ? CategoryVocab::from_trees(corpus)
                                                      : CategoryVocab::division();
  for (const HpsgTree& tree : corpus) {
    Example ex;
    ex.tree = tree;
    if (cfg.kind == ModelKind::kDivision) {
      ex.division = to_division(tree).tree;
      ex.gold_spans = collapsed_spans(ex.division.root);
      for (const LabeledSpan& span : ex.gold_spans) vocab.add(span.label);
    } else {
      ex.gold_spans = collapsed_spans(tree.root);
    }
    examples.push_back(std::move(ex));
  }

  Trainer trainer(cfg, LinearModel(std::move(vocab), cfg.kind, cfg.dim));
  std::mt19937_64 rng(cfg.seed);
  std::vector<std::size_t> order(examples.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  TrainResult result;
  double best_metric = -std::numeric_limits<double>::infinity();
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[rng() % i]);
    }
    EpochLog entry;
    entry.epoch = epoch;
    for (std::size_t idx : order) {
      const double hinge = trainer.visit(examples[idx]);
      entry.objective += hinge;
      entry.violations += hinge > Trainer::kMargin;
    }
    LinearModel current = trainer.averaged();
    if (cfg.dev_metric) {
      entry.dev_metric = cfg.dev_metric(current);
      if (entry.dev_metric > best_metric) {
        best_metric = entry.dev_metric;
        result.model = std::move(current);
        result.best_epoch = epoch;
      }
    } else {
      result.model = std::move(current);
      result.best_epoch = epoch;
    }
    result.log.push_back(entry);
  }
  return result;
}

HpsgTree parse_with_model(const LinearModel& model, std::span<const Token> tokens, double lambda,
                          int length_cap) {
  const ScoreTable raw = model.score(tokens);
  if (model.kind() == ModelKind::kDivision) {
    DivisionDecode best = decode_division(raw, tokens, model.vocab());
    return from_division(best.tree).tree;
  }
  DecodeConfig cfg;
  cfg.lambda = lambda;
  cfg.length_cap = length_cap;
  return decode_joint(raw, tokens, model.vocab(), cfg).tree;
}

}  // namespace hpsg
