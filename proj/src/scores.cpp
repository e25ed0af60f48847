#include "hpsg/scores.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "hpsg/core.hpp"
#include "hpsg/error.hpp"

namespace hpsg {

namespace {

std::string format_score(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int label_id(const CategoryVocab& vocab, const std::string& label) {
  int id = vocab.find(label);
  if (id < 0) throw ContractError("category '" + label + "' is not in the vocabulary");
  return id;
}

}  // namespace

ScoreTable::ScoreTable(int n, int num_labels)
    : n_(n),
      spans_(Eigen::MatrixXd::Zero(n * (n + 1) / 2, num_labels)),
      arcs_(Eigen::MatrixXd::Zero(n, n)),
      root_(Eigen::VectorXd::Zero(n)) {}

double ScoreTable::span_checked(int i, int j, int label) const {
  if (i < 1 || j < i || j > n_ || label < 0 || label >= num_labels()) {
    throw ContractError("span (" + std::to_string(i) + "," + std::to_string(j) + ") category " +
                        std::to_string(label) + " outside a table of size " +
                        std::to_string(n_));
  }
  return span(i, j, label);
}

ScoreTable ScoreTable::mixed(double lambda) const {
  check_lambda(lambda);
  ScoreTable out = *this;
  out.spans_ *= lambda;
  out.arcs_ *= 1.0 - lambda;
  out.root_ *= 1.0 - lambda;
  return out;
}

void ScoreTable::resize_labels(int num_labels) {
  const int old = this->num_labels();
  spans_.conservativeResize(Eigen::NoChange, num_labels);
  if (num_labels > old) spans_.rightCols(num_labels - old).setZero();
}

bool ScoreTable::all_finite() const {
  return spans_.allFinite() && arcs_.allFinite() && root_.allFinite();
}

bool ScoreTable::operator==(const ScoreTable& other) const {
  return n_ == other.n_ && spans_.rows() == other.spans_.rows() &&
         spans_.cols() == other.spans_.cols() && spans_ == other.spans_ &&
         arcs_ == other.arcs_ && root_ == other.root_;
}

void check_lambda(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw ConfigError("lambda must lie in [0, 1], got " + std::to_string(lambda));
  }
}

// ---------------------------------------------------------------------------

void write_scores(std::ostream& out, const std::vector<ScoredSentence>& sentences,
                  const CategoryVocab& vocab) {
  for (const ScoredSentence& sent : sentences) {
    const ScoreTable& s = sent.scores;
    const int n = s.size();
    out << "#sent " << sent.ordinal << ' ' << n << '\n';
    for (int i = 1; i <= n; ++i) {
      for (int j = i; j <= n; ++j) {
        for (int l = 0; l < s.num_labels(); ++l) {
          double v = s.span(i, j, l);
          if (v != 0.0) {
            out << "SPAN " << i << ' ' << j << ' ' << vocab.label(l) << ' ' << format_score(v)
                << '\n';
          }
        }
      }
    }
    for (int r = 1; r <= n; ++r) {
      for (int h = 1; h <= n; ++h) {
        if (r != h && s.arc(r, h) != 0.0) {
          out << "ARC " << r << ' ' << h << ' ' << format_score(s.arc(r, h)) << '\n';
        }
      }
    }
    for (int h = 1; h <= n; ++h) {
      if (s.root(h) != 0.0) out << "ROOT " << h << ' ' << format_score(s.root(h)) << '\n';
    }
  }
}

std::vector<ScoredSentence> read_scores(std::istream& in, CategoryVocab& vocab) {
  std::vector<ScoredSentence> out;
  std::string line;
  int line_no = 0;
  auto index = [&](std::istringstream& ss, int n, const char* what) {
    int v = 0;
    if (!(ss >> v)) throw ParseError(line_no, std::string("missing ") + what);
    if (v < 1 || v > n) {
      throw ParseError(line_no, std::string(what) + " " + std::to_string(v) + " outside 1.." +
                                    std::to_string(n));
    }
    return v;
  };
  auto value = [&](std::istringstream& ss) {
    std::string text;
    if (!(ss >> text)) throw ParseError(line_no, "missing score");
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != text.size() || !std::isfinite(v)) {
      throw ParseError(line_no, "bad score '" + text + "'");
    }
    std::string rest;
    if (ss >> rest) throw ParseError(line_no, "trailing text '" + rest + "'");
    return v;
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ss(line);
    std::string kind;
    if (!(ss >> kind)) continue;
    if (kind == "#sent") {
      int ordinal = 0, n = 0;
      if (!(ss >> ordinal >> n) || n < 1) throw ParseError(line_no, "bad #sent header");
      out.push_back({ordinal, ScoreTable(n, vocab.size())});
      continue;
    }
    if (out.empty()) throw ParseError(line_no, "score line before any #sent header");
    ScoreTable& table = out.back().scores;
    const int n = table.size();
    if (kind == "SPAN") {
      int i = index(ss, n, "span start");
      int j = index(ss, n, "span end");
      if (j < i) throw ParseError(line_no, "span end before start");
      std::string category;
      if (!(ss >> category)) throw ParseError(line_no, "missing category");
      int id = vocab.add(category);
      if (id >= table.num_labels()) table.resize_labels(vocab.size());
      table.span(i, j, id) = value(ss);
    } else if (kind == "ARC") {
      int r = index(ss, n, "child");
      int h = index(ss, n, "head");
      if (r == h) throw ParseError(line_no, "arc from a token to itself");
      table.arc(r, h) = value(ss);
    } else if (kind == "ROOT") {
      int h = index(ss, n, "head");
      table.root(h) = value(ss);
    } else {
      throw ParseError(line_no, "unknown record '" + kind + "'");
    }
  }
  for (ScoredSentence& sent : out) sent.scores.resize_labels(vocab.size());
  return out;
}

// ---------------------------------------------------------------------------

double tree_score(const ConstituentTree& tree, const ScoreTable& scores,
                  const CategoryVocab& vocab, double lambda) {
  check_lambda(lambda);
  if (tree.size() != scores.size()) throw ContractError("tree and score table differ in length");
  double total = 0.0;
  for (const LabeledSpan& span : collapsed_spans(tree.root)) {
    total += scores.span_checked(span.first, span.last, label_id(vocab, span.label));
  }
  return lambda * total;
}

double tree_score(const HpsgTree& tree, const ScoreTable& scores, const CategoryVocab& vocab,
                  double lambda) {
  double span_part = tree_score(ConstituentTree{tree.tokens, tree.root}, scores, vocab, lambda);
  DependencyTree deps = project_dependencies(tree);
  double arc_part = 0.0;
  for (int t = 1; t <= deps.size(); ++t) {
    int h = deps.head(t);
    arc_part += h == 0 ? scores.root(t) : scores.arc(t, h);
  }
  return span_part + (1.0 - lambda) * arc_part;
}

ScoreTable oracle_scores(const HpsgTree& gold, const CategoryVocab& vocab) {
  ScoreTable table(gold.size(), vocab.size());
  for (const LabeledSpan& span : collapsed_spans(gold.root)) {
    int id = label_id(vocab, span.label);
    if (id != CategoryVocab::kEmpty) table.span(span.first, span.last, id) = 1.0;
  }
  DependencyTree deps = project_dependencies(gold);
  for (int t = 1; t <= deps.size(); ++t) {
    int h = deps.head(t);
    if (h == 0) {
      table.root(t) = 1.0;
    } else {
      table.arc(t, h) = 1.0;
    }
  }
  return table;
}

ScoreTable division_oracle_scores(const ConstituentTree& division_tree,
                                  const CategoryVocab& vocab) {
  ScoreTable table(division_tree.size(), vocab.size());
  for (const LabeledSpan& span : collapsed_spans(division_tree.root)) {
    table.span(span.first, span.last, label_id(vocab, span.label)) = 1.0;
  }
  return table;
}

}  // namespace hpsg
