#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "hpsg/scores.hpp"
#include "hpsg/tree.hpp"
#include "hpsg/vocab.hpp"

namespace hpsg {

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view text, std::uint64_t seed = 0xcbf29ce484222325ULL);

/// Label-free span templates: boundary words and tags, their neighbours and
/// a length bucket. Each entry is a hash, later conjoined with a category.
std::vector<std::uint64_t> span_templates(std::span<const Token> tokens, int i, int j);
/// Arc templates for child r and head h (h = 0 is the root): head/child
/// words and tags, direction and distance.
std::vector<std::uint64_t> arc_templates(std::span<const Token> tokens, int child, int head);

/// Weight index of a span template conjoined with category `label`.
std::size_t span_index(std::uint64_t feature, int label, std::size_t dim);
std::size_t arc_index(std::uint64_t feature, std::size_t dim);

enum class ModelKind {
  /// Joint-span categories; the empty category always scores 0.
  kJoint,
  /// Division categories; every category, empty ones included, is scored.
  kDivision,
};

class LinearModel {
 public:
  LinearModel() = default;
  LinearModel(CategoryVocab vocab, ModelKind kind, std::size_t dim);

  const CategoryVocab& vocab() const { return vocab_; }
  ModelKind kind() const { return kind_; }
  std::size_t dim() const { return static_cast<std::size_t>(weights_.size()); }
  const Eigen::VectorXd& weights() const { return weights_; }
  Eigen::VectorXd& weights() { return weights_; }

  bool scores_label(int label) const;

  /// Raw (unmixed) scores for every span, category, arc and root.
  ScoreTable score(std::span<const Token> tokens) const;

  /// Text format: header, categories, then non-zero weights as index/value
  /// pairs with 17 significant digits.
  void save(std::ostream& out) const;
  static LinearModel load(std::istream& in);

  bool operator==(const LinearModel& other) const;

 private:
  CategoryVocab vocab_;
  ModelKind kind_ = ModelKind::kJoint;
  Eigen::VectorXd weights_;
};

struct LinearConfig {
  int epochs = 10;
  double step = 0.1;
  double lambda = 0.5;
  bool average = true;
  std::uint64_t seed = 1;
  std::size_t dim = std::size_t{1} << 22;
  ModelKind kind = ModelKind::kJoint;
  int length_cap = 240;
  /// Higher is better; when set, the model of the best epoch is returned.
  std::function<double(const LinearModel&)> dev_metric;
};

struct EpochLog {
  int epoch = 0;
  /// Sum over sentences of max(0, max_T [s(T) + loss(T)] - s(gold)),
  /// measured before each sentence's update.
  double objective = 0.0;
  int violations = 0;
  double dev_metric = 0.0;
};

struct TrainResult {
  LinearModel model;
  std::vector<EpochLog> log;
  int best_epoch = 0;
};

/// Hinge training with loss-augmented decoding. Training trees should have a
/// clean head audit. Throws ConfigError on an empty corpus.
TrainResult train_linear(const std::vector<HpsgTree>& corpus, const LinearConfig& cfg);

/// Best tree for `tokens` under the model, using the decoder that matches its kind.
HpsgTree parse_with_model(const LinearModel& model, std::span<const Token> tokens,
                          double lambda, int length_cap = 240);

}  // namespace hpsg
