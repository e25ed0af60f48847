#include "hpsg/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <tuple>
#include <utility>

#include "hpsg/error.hpp"

namespace hpsg {

namespace {

using Bracket = std::tuple<std::string, int, int>;

double percent(long part, long whole) {
  return whole == 0 ? 0.0 : 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

// position[t] is the renumbered index of token t, counting only
// non-punctuation tokens up to and including t.
std::vector<int> renumbering(const std::vector<Token>& gold_tokens, const EvalOptions& options) {
  std::vector<int> position(gold_tokens.size() + 1, 0);
  for (std::size_t t = 1; t <= gold_tokens.size(); ++t) {
    const bool punct = options.punctuation.count(gold_tokens[t - 1].pos) > 0;
    position[t] = position[t - 1] + (punct ? 0 : 1);
  }
  return position;
}

void collect(const Node& node, const std::vector<int>& position, const EvalOptions& options,
             std::vector<Bracket>& out) {
  if (node.is_preterminal()) return;
  for (const Node& child : node.children) collect(child, position, options, out);
  if (node.label == kSplitLabel || node.label == kEmptyLabel) return;
  if (options.deleted_labels.count(node.label)) return;
  const int first = position[node.first - 1] + 1;
  const int last = position[node.last];
  if (first > last) return;  // punctuation only
  auto eq = options.equivalences.find(node.label);
  out.emplace_back(eq == options.equivalences.end() ? node.label : eq->second, first, last);
}

std::vector<Bracket> brackets(const ConstituentTree& tree, const std::vector<int>& position,
                              const EvalOptions& options) {
  std::vector<Bracket> out;
  collect(tree.root, position, options, out);
  std::sort(out.begin(), out.end());
  return out;
}

long multiset_overlap(const std::vector<Bracket>& a, const std::vector<Bracket>& b) {
  long matched = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++matched;
      ++i;
      ++j;
    }
  }
  return matched;
}

void check_aligned(std::size_t gold, std::size_t pred) {
  if (gold != pred) {
    throw AlignmentError("gold has " + std::to_string(gold) + " sentences, prediction has " +
                         std::to_string(pred));
  }
}

void check_tokens(std::size_t sentence, std::size_t gold, std::size_t pred) {
  if (gold != pred) {
    throw AlignmentError("sentence " + std::to_string(sentence + 1) + ": gold has " +
                         std::to_string(gold) + " tokens, prediction has " +
                         std::to_string(pred));
  }
}

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::set<std::string> parse_punctuation_set(const std::string& csv) {
  std::set<std::string> out;
  std::istringstream in(csv);
  std::string tag;
  while (std::getline(in, tag, ',')) {
    if (!tag.empty()) out.insert(tag);
  }
  if (out.empty()) throw ConfigError("punctuation set is empty");
  return out;
}

EvalReport bracket_f1(const std::vector<ConstituentTree>& gold,
                      const std::vector<ConstituentTree>& pred, const EvalOptions& options) {
  check_aligned(gold.size(), pred.size());
  EvalReport report;
  report.has_brackets = true;
  report.sentences = static_cast<int>(gold.size());
  for (std::size_t s = 0; s < gold.size(); ++s) {
    check_tokens(s, gold[s].tokens.size(), pred[s].tokens.size());
    const std::vector<int> position = renumbering(gold[s].tokens, options);
    const std::vector<Bracket> g = brackets(gold[s], position, options);
    const std::vector<Bracket> p = brackets(pred[s], position, options);
    const long matched = multiset_overlap(g, p);
    report.gold_brackets += static_cast<long>(g.size());
    report.pred_brackets += static_cast<long>(p.size());
    report.matched_brackets += matched;
    if (matched == static_cast<long>(g.size()) && matched == static_cast<long>(p.size())) {
      ++report.exact_match;
    }
  }
  report.recall = percent(report.matched_brackets, report.gold_brackets);
  report.precision = percent(report.matched_brackets, report.pred_brackets);
  const double sum = report.recall + report.precision;
  report.f1 = sum == 0.0 ? 0.0 : 2.0 * report.recall * report.precision / sum;
  return report;
}

EvalReport attachment_scores(const std::vector<DependencyTree>& gold,
                             const std::vector<DependencyTree>& pred,
                             const EvalOptions& options) {
  check_aligned(gold.size(), pred.size());
  EvalReport report;
  report.has_attachment = true;
  report.sentences = static_cast<int>(gold.size());
  report.has_las = !gold.empty();
  for (std::size_t s = 0; s < gold.size(); ++s) {
    check_tokens(s, gold[s].tokens.size(), pred[s].tokens.size());
    check_tokens(s, gold[s].heads.size(), pred[s].heads.size());
    if (!gold[s].has_labels() || !pred[s].has_labels()) report.has_las = false;
  }
  for (std::size_t s = 0; s < gold.size(); ++s) {
    const DependencyTree& g = gold[s];
    const DependencyTree& p = pred[s];
    for (int t = 1; t <= g.size(); ++t) {
      if (options.punctuation.count(g.tokens[t - 1].pos)) continue;
      ++report.scored_tokens;
      if (g.head(t) != p.head(t)) continue;
      ++report.correct_heads;
      if (report.has_las && g.labels[t - 1] == p.labels[t - 1]) ++report.correct_labeled;
    }
  }
  report.uas = percent(report.correct_heads, report.scored_tokens);
  if (report.has_las) report.las = percent(report.correct_labeled, report.scored_tokens);
  return report;
}

EvalReport combine(const EvalReport& brackets, const EvalReport& attachment) {
  EvalReport out = brackets;
  out.sentences = std::max(brackets.sentences, attachment.sentences);
  out.has_attachment = attachment.has_attachment;
  out.has_las = attachment.has_las;
  out.scored_tokens = attachment.scored_tokens;
  out.correct_heads = attachment.correct_heads;
  out.correct_labeled = attachment.correct_labeled;
  out.uas = attachment.uas;
  out.las = attachment.las;
  return out;
}

namespace {

std::vector<std::pair<std::string, std::string>> rows(const EvalReport& r) {
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("sentences", std::to_string(r.sentences));
  if (r.has_brackets) {
    out.emplace_back("gold_brackets", std::to_string(r.gold_brackets));
    out.emplace_back("pred_brackets", std::to_string(r.pred_brackets));
    out.emplace_back("matched_brackets", std::to_string(r.matched_brackets));
    out.emplace_back("LR", fixed2(r.recall));
    out.emplace_back("LP", fixed2(r.precision));
    out.emplace_back("F1", fixed2(r.f1));
    out.emplace_back("exact_match", std::to_string(r.exact_match));
  }
  if (r.has_attachment) {
    out.emplace_back("scored_tokens", std::to_string(r.scored_tokens));
    out.emplace_back("UAS", fixed2(r.uas));
    if (r.has_las) out.emplace_back("LAS", fixed2(r.las));
  }
  return out;
}

}  // namespace

std::string format_table(const EvalReport& report) {
  const auto lines = rows(report);
  std::size_t width = 0;
  for (const auto& [key, value] : lines) width = std::max(width, key.size());
  std::string out;
  for (const auto& [key, value] : lines) {
    out += key + std::string(width - key.size() + 2, ' ') + value + "\n";
  }
  return out;
}

std::string format_key_values(const EvalReport& report) {
  std::string out;
  for (const auto& [key, value] : rows(report)) out += key + "=" + value + "\n";
  return out;
}

}  // namespace hpsg
