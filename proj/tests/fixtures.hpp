#pragma once

#include <algorithm>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "hpsg/core.hpp"
#include "hpsg/tree.hpp"
#include "hpsg/treebank_io.hpp"

namespace fixtures {

inline const std::string kFederalBracketed =
    "(S (NP-SBJ (NNP Federal) (NNP Paper) (NNP Board)) (VP (VBZ sells) (NP (NN paper) "
    "(CC and) (NN wood) (NNS products))) (. .))\n";

inline const std::string kFederalConll =
    "1\tFederal\t_\tNNP\tNNP\t_\t3\tnn\t_\t_\n"
    "2\tPaper\t_\tNNP\tNNP\t_\t3\tnn\t_\t_\n"
    "3\tBoard\t_\tNNP\tNNP\t_\t4\tnsubj\t_\t_\n"
    "4\tsells\t_\tVBZ\tVBZ\t_\t0\troot\t_\t_\n"
    "5\tpaper\t_\tNN\tNN\t_\t4\tdobj\t_\t_\n"
    "6\tand\t_\tCC\tCC\t_\t5\tcc\t_\t_\n"
    "7\twood\t_\tNN\tNN\t_\t8\tnn\t_\t_\n"
    "8\tproducts\t_\tNNS\tNNS\t_\t4\tdobj\t_\t_\n"
    "9\t.\t_\t.\t.\t_\t4\tpunct\t_\t_\n"
    "\n";

inline hpsg::ConstituentTree federal_constituents() { return hpsg::read_bracketed(kFederalBracketed).at(0); }
inline hpsg::DependencyTree federal_dependencies() { return hpsg::read_conll(kFederalConll).at(0); }
inline hpsg::HpsgTree federal_hpsg() { return hpsg::fuse(federal_constituents(), federal_dependencies()).tree; }

inline std::string data_path(const std::string& name) { return std::string(HPSG_DATA_DIR) + "/" + name; }

struct SampleCorpus {
  std::vector<hpsg::ConstituentTree> constituents;
  std::vector<hpsg::DependencyTree> dependencies;
  std::vector<hpsg::FuseResult> fused;

  std::vector<hpsg::HpsgTree> trees() const {
    std::vector<hpsg::HpsgTree> out;
    for (const auto& f : fused) out.push_back(f.tree);
    return out;
  }
};

inline const SampleCorpus& sample() {
  static const SampleCorpus corpus = [] {
    SampleCorpus c;
    std::ifstream mrg(data_path("sample.mrg"));
    std::ifstream conll(data_path("sample.conll"));
    auto pairs = hpsg::pair_treebanks(hpsg::read_bracketed(mrg), hpsg::read_conll(conll));
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      c.constituents.push_back(pairs[i].first);
      c.dependencies.push_back(pairs[i].second);
      c.fused.push_back(hpsg::fuse(pairs[i].first, pairs[i].second, static_cast<int>(i) + 1));
    }
    return c;
  }();
  return corpus;
}

// Random single-headed trees over n tokens: up to four children per phrase,
// a random head daughter and occasional unary chains.
class RandomTrees {
 public:
  explicit RandomTrees(std::uint64_t seed) : rng_(seed) {}

  hpsg::HpsgTree tree(int n) {
    hpsg::HpsgTree out;
    for (int i = 1; i <= n; ++i) {
      out.tokens.push_back({i, "w" + std::to_string(i), pick(kTags)});
    }
    out.root = phrase(out.tokens, 1, n);
    return out;
  }

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  std::mt19937_64& rng() { return rng_; }

 private:
  static constexpr const char* kTags[] = {"NN", "VB", "DT", "JJ", "IN"};
  static constexpr const char* kLabels[] = {"NP", "VP", "S", "PP", "ADJP"};

  template <std::size_t N>
  std::string pick(const char* const (&options)[N]) {
    return options[uniform(0, static_cast<int>(N) - 1)];
  }

  hpsg::Node unary(hpsg::Node inner) {
    while (uniform(0, 4) == 0) {
      hpsg::Node outer{pick(kLabels), inner.first, inner.last, inner.head, {}};
      outer.children.push_back(std::move(inner));
      inner = std::move(outer);
    }
    return inner;
  }

  hpsg::Node constituent(const std::vector<hpsg::Token>& tokens, int i, int j) {
    if (i == j) {
      hpsg::Node leaf{tokens[i - 1].pos, i, i, i, {}};
      if (uniform(0, 2) > 0) return leaf;
      hpsg::Node wrapped{pick(kLabels), i, i, i, {}};
      wrapped.children.push_back(std::move(leaf));
      return unary(std::move(wrapped));
    }
    return phrase(tokens, i, j);
  }

  hpsg::Node phrase(const std::vector<hpsg::Token>& tokens, int i, int j) {
    if (i == j) {
      hpsg::Node wrapped{pick(kLabels), i, i, i, {}};
      wrapped.children.push_back(hpsg::Node{tokens[i - 1].pos, i, i, i, {}});
      return unary(std::move(wrapped));
    }
    const int len = j - i + 1;
    const int m = uniform(2, std::min(4, len));
    // m - 1 distinct cut points in [i, j - 1].
    std::vector<int> cuts;
    for (int k = i; k < j; ++k) cuts.push_back(k);
    std::shuffle(cuts.begin(), cuts.end(), rng_);
    cuts.resize(m - 1);
    std::sort(cuts.begin(), cuts.end());
    hpsg::Node node{pick(kLabels), i, j, 0, {}};
    int start = i;
    for (int c = 0; c <= m - 1; ++c) {
      const int end = c < m - 1 ? cuts[c] : j;
      node.children.push_back(constituent(tokens, start, end));
      start = end + 1;
    }
    node.head = node.children[uniform(0, m - 1)].head;
    return unary(std::move(node));
  }

  std::mt19937_64 rng_;
};

}  // namespace fixtures
