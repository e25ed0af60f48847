#include "hpsg/vocab.hpp"

#include "hpsg/tree.hpp"

namespace hpsg {

CategoryVocab::CategoryVocab() {
  add(kEmptyLabel);
  add(kSplitLabel);
}

CategoryVocab CategoryVocab::division() {
  CategoryVocab vocab;
  vocab.add(std::string(kHeadPrefix) + std::string(kEmptyLabel));
  return vocab;
}

CategoryVocab CategoryVocab::from_trees(const std::vector<HpsgTree>& trees) {
  CategoryVocab vocab;
  for (const HpsgTree& tree : trees) {
    for (const LabeledSpan& span : collapsed_spans(tree.root)) vocab.add(span.label);
  }
  return vocab;
}

int CategoryVocab::add(std::string_view label) {
  std::string key(label);
  auto it = ids_.find(key);
  if (it != ids_.end()) return it->second;
  int id = size();
  ids_.emplace(key, id);
  labels_.push_back(std::move(key));
  return id;
}

int CategoryVocab::find(std::string_view label) const {
  auto it = ids_.find(std::string(label));
  return it == ids_.end() ? -1 : it->second;
}

int CategoryVocab::find_or_empty(std::string_view label) const {
  int id = find(label);
  return id < 0 ? kEmpty : id;
}

bool CategoryVocab::is_empty(int id) const {
  if (id == kEmpty) return true;
  const std::string& l = labels_[id];
  return l.size() == kHeadPrefix.size() + kEmptyLabel.size() && l.starts_with(kHeadPrefix) &&
         l.ends_with(kEmptyLabel);
}

}  // namespace hpsg
