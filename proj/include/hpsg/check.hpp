#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hpsg/decoders.hpp"
#include "hpsg/scores.hpp"
#include "hpsg/tree.hpp"
#include "hpsg/vocab.hpp"

namespace hpsg {

/// Vocabulary with the reserved categories plus `extra` categories C1, C2, ...
CategoryVocab synthetic_vocab(int extra);

/// Every span, arc and root entry uniform in [lo, hi].
ScoreTable random_scores(int n, int num_labels, std::mt19937_64& rng, double lo = -1.0,
                         double hi = 1.0);

/// Seed of trial `trial` under a run seed; each trial is reproducible alone.
std::uint64_t trial_seed(std::uint64_t seed, int n, int trial);

struct TrialFailure {
  int n = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  double joint = 0.0;
  double reference = 0.0;
};

struct EquivalenceReport {
  int trials = 0;
  double max_discrepancy = 0.0;
  std::vector<TrialFailure> failures;
};

/// Joint decoder against brute force on random tables, for every n in
/// [2, max_n]. Tolerance 1e-9.
EquivalenceReport check_brute_force(int max_n, int trials, std::uint64_t seed, double lambda,
                                    int threads, const CategoryVocab& vocab);

struct OracleReport {
  int sentences = 0;
  int exact = 0;
  std::vector<int> mismatched;  // 1-based ordinals
};

/// Decodes each tree's oracle scores and compares with the tree itself.
OracleReport check_oracle(const std::vector<HpsgTree>& corpus, double lambda, int threads);

}  // namespace hpsg
