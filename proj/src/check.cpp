#include "hpsg/check.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "hpsg/parallel.hpp"

namespace hpsg {

CategoryVocab synthetic_vocab(int extra) {
  CategoryVocab vocab;
  for (int c = 1; c <= extra; ++c) vocab.add("C" + std::to_string(c));
  return vocab;
}

ScoreTable random_scores(int n, int num_labels, std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  ScoreTable table(n, num_labels);
  for (int row = 0; row < table.num_spans(); ++row) {
    for (int l = 0; l < num_labels; ++l) table.spans()(row, l) = dist(rng);
  }
  for (int r = 1; r <= n; ++r) {
    for (int h = 1; h <= n; ++h) {
      if (r != h) table.arc(r, h) = dist(rng);
    }
    table.root(r) = dist(rng);
  }
  return table;
}

std::uint64_t trial_seed(std::uint64_t seed, int n, int trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(trial)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

EquivalenceReport check_brute_force(int max_n, int trials, std::uint64_t seed, double lambda,
                                    int threads, const CategoryVocab& vocab) {
  struct Job {
    int n;
    int trial;
  };
  std::vector<Job> jobs;
  for (int n = 2; n <= max_n; ++n) {
    for (int t = 0; t < trials; ++t) jobs.push_back({n, t});
  }
  DecodeConfig cfg;
  cfg.lambda = lambda;
  // Refuse oversize requests before spending time on the smaller ones.
  if (max_n > kBruteForceLimit) {
    brute_force(ScoreTable(max_n, vocab.size()), placeholder_tokens(max_n), vocab, cfg);
  }
  std::vector<double> discrepancy(jobs.size(), 0.0);
  std::vector<TrialFailure> outcome(jobs.size());
  parallel_for(jobs.size(), threads, [&](std::size_t k) {
    const Job& job = jobs[k];
    const std::uint64_t s = trial_seed(seed, job.n, job.trial);
    std::mt19937_64 rng(s);
    const ScoreTable raw = random_scores(job.n, vocab.size(), rng);
    const std::vector<Token> tokens = placeholder_tokens(job.n);
    const double joint = decode_joint(raw, tokens, vocab, cfg).score;
    const double brute = brute_force(raw, tokens, vocab, cfg).score;
    discrepancy[k] = std::abs(joint - brute);
    outcome[k] = {job.n, job.trial, s, joint, brute};
  });
  EquivalenceReport report;
  report.trials = static_cast<int>(jobs.size());
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    report.max_discrepancy = std::max(report.max_discrepancy, discrepancy[k]);
    if (!(discrepancy[k] <= 1e-9)) report.failures.push_back(outcome[k]);
  }
  return report;
}

OracleReport check_oracle(const std::vector<HpsgTree>& corpus, double lambda, int threads) {
  const CategoryVocab vocab = CategoryVocab::from_trees(corpus);
  std::vector<char> exact(corpus.size(), 0);
  DecodeConfig cfg;
  cfg.lambda = lambda;
  parallel_for(corpus.size(), threads, [&](std::size_t k) {
    const HpsgTree& gold = corpus[k];
    const JointDecode best = decode_joint(oracle_scores(gold, vocab), gold.tokens, vocab, cfg);
    HpsgTree decoded = best.tree;
    decoded.labels = gold.labels;
    exact[k] = decoded == gold;
  });
  OracleReport report;
  report.sentences = static_cast<int>(corpus.size());
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    if (exact[k]) {
      ++report.exact;
    } else {
      report.mismatched.push_back(static_cast<int>(k) + 1);
    }
  }
  return report;
}

}  // namespace hpsg
