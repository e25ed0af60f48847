#include <limits>
#include <vector>

#include "hpsg/decoders.hpp"
#include "hpsg/error.hpp"

namespace hpsg {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Square (n+1) x (n+1) tables indexed [s][t], 1 <= s <= t <= n.
struct Table {
  int n;
  std::vector<double> score;
  std::vector<int> back;

  explicit Table(int n)
      : n(n), score((n + 1) * (n + 1), kNegInf), back((n + 1) * (n + 1), 0) {}
  double& at(int s, int t) { return score[s * (n + 1) + t]; }
  int& arg(int s, int t) { return back[s * (n + 1) + t]; }
};

class Eisner {
 public:
  explicit Eisner(const ScoreTable& scores)
      : scores_(scores), n_(scores.size()), cl_(n_), cr_(n_), il_(n_), ir_(n_),
        heads_(n_, 0) {}

  double run() {
    for (int s = 1; s <= n_; ++s) {
      cl_.at(s, s) = 0.0;
      cr_.at(s, s) = 0.0;
    }
    for (int len = 1; len < n_; ++len) {
      for (int s = 1; s + len <= n_; ++s) {
        const int t = s + len;
        double best = kNegInf;
        int arg = s;
        for (int q = s; q < t; ++q) {
          const double v = cr_.at(s, q) + cl_.at(q + 1, t);
          if (v > best) {
            best = v;
            arg = q;
          }
        }
        il_.at(s, t) = best + scores_.arc(s, t);
        il_.arg(s, t) = arg;
        ir_.at(s, t) = best + scores_.arc(t, s);
        ir_.arg(s, t) = arg;

        best = kNegInf;
        for (int q = s; q < t; ++q) {
          const double v = cl_.at(s, q) + il_.at(q, t);
          if (v > best) {
            best = v;
            arg = q;
          }
        }
        cl_.at(s, t) = best;
        cl_.arg(s, t) = arg;

        best = kNegInf;
        for (int q = s + 1; q <= t; ++q) {
          const double v = ir_.at(s, q) + cr_.at(q, t);
          if (v > best) {
            best = v;
            arg = q;
          }
        }
        cr_.at(s, t) = best;
        cr_.arg(s, t) = arg;
      }
    }
    double best = kNegInf;
    int root = 1;
    for (int h = 1; h <= n_; ++h) {
      const double v = cl_.at(1, h) + cr_.at(h, n_) + scores_.root(h);
      if (v > best) {
        best = v;
        root = h;
      }
    }
    heads_[root - 1] = 0;
    left_complete(1, root);
    right_complete(root, n_);
    return best;
  }

  const std::vector<int>& heads() const { return heads_; }

 private:
  // Head t spans [s, t].
  void left_complete(int s, int t) {
    if (s == t) return;
    const int q = cl_.arg(s, t);
    left_complete(s, q);
    left_incomplete(q, t);
  }
  void right_complete(int s, int t) {
    if (s == t) return;
    const int q = cr_.arg(s, t);
    right_incomplete(s, q);
    right_complete(q, t);
  }
  // Arc t -> s.
  void left_incomplete(int s, int t) {
    heads_[s - 1] = t;
    const int q = il_.arg(s, t);
    right_complete(s, q);
    left_complete(q + 1, t);
  }
  // Arc s -> t.
  void right_incomplete(int s, int t) {
    heads_[t - 1] = s;
    const int q = ir_.arg(s, t);
    right_complete(s, q);
    left_complete(q + 1, t);
  }

  const ScoreTable& scores_;
  int n_;
  Table cl_, cr_, il_, ir_;
  std::vector<int> heads_;
};

}  // namespace

EisnerDecode decode_eisner(const ScoreTable& scores, std::span<const Token> tokens) {
  if (scores.size() == 0) throw ContractError("cannot decode an empty sentence");
  if (static_cast<int>(tokens.size()) != scores.size()) {
    throw ContractError("token count differs from score table size");
  }
  Eisner eisner(scores);
  EisnerDecode out;
  out.score = eisner.run();
  out.tree.tokens.assign(tokens.begin(), tokens.end());
  out.tree.heads = eisner.heads();
  return out;
}

}  // namespace hpsg
