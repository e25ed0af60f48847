#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hpsg {

struct HpsgTree;

/// Dense ids for span categories. Id 0 is always the empty category and
/// id 1 the `#` category; collapsed unary chains ("S+VP") are ordinary
/// entries.
class CategoryVocab {
 public:
  static constexpr int kEmpty = 0;
  static constexpr int kSplit = 1;

  CategoryVocab();

  /// Vocabulary for division trees: also reserves H_<E> as id 2.
  static CategoryVocab division();

  /// All collapsed span labels of the trees, in first-seen order.
  static CategoryVocab from_trees(const std::vector<HpsgTree>& trees);

  int add(std::string_view label);
  /// -1 when absent.
  int find(std::string_view label) const;
  /// Unknown labels map to the empty category.
  int find_or_empty(std::string_view label) const;
  const std::string& label(int id) const { return labels_[id]; }
  int size() const { return static_cast<int>(labels_.size()); }

  /// The empty category, with or without the head prefix.
  bool is_empty(int id) const;

  bool operator==(const CategoryVocab& other) const { return labels_ == other.labels_; }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> ids_;
};

}  // namespace hpsg
