#include "hpsg/core.hpp"

#include <string>

#include "hpsg/error.hpp"

namespace hpsg {

namespace {

class Fuser {
 public:
  Fuser(const DependencyTree& deps, HeadAuditReport& audit) : deps_(deps), audit_(audit) {}

  Node build(const Node& source) {
    Node node;
    node.label = source.label;
    node.first = source.first;
    node.last = source.last;
    if (source.is_preterminal()) return node;
    for (const Node& child : source.children) node.children.push_back(build(child));
    if (external_heads(deps_, node.first, node.last).size() >= 2) split(node);
    return node;
  }

  void assign_heads(Node& node, int required) const {
    if (node.is_preterminal()) {
      node.head = node.first;
      return;
    }
    node.head = node.contains(required) ? required
                                        : external_heads(deps_, node.first, node.last).front();
    for (Node& child : node.children) assign_heads(child, node.head);
  }

  int count_mismatches(const Node& node) const {
    int bad = 0;
    for (const Node& child : node.children) {
      if (child.head != node.head && deps_.head(child.head) != node.head) ++bad;
      bad += count_mismatches(child);
    }
    return bad;
  }

 private:
  void split(Node& node) {
    ++audit_.multi_head_before;
    std::vector<Node> grouped;
    bool resolved = true;
    const int m = static_cast<int>(node.children.size());
    for (int start = 0; start < m;) {
      int end = start;
      for (int e = m - 1; e >= start; --e) {
        if (external_heads(deps_, node.children[start].first, node.children[e].last).size() == 1) {
          end = e;
          break;
        }
      }
      const Node& lo = node.children[start];
      const Node& hi = node.children[end];
      if (external_heads(deps_, lo.first, hi.last).size() != 1) resolved = false;
      if (end == start) {
        grouped.push_back(std::move(node.children[start]));
      } else {
        Node run;
        run.label = std::string(kSplitLabel);
        run.first = lo.first;
        run.last = hi.last;
        for (int k = start; k <= end; ++k) run.children.push_back(std::move(node.children[k]));
        grouped.push_back(std::move(run));
      }
      start = end + 1;
    }
    node.children = std::move(grouped);
    if (!resolved) {
      ++audit_.residual;
      audit_.offending.emplace_back(node.first, node.last);
    }
  }

  const DependencyTree& deps_;
  HeadAuditReport& audit_;
};

void collect_heads(const Node& node, const DependencyTree& deps,
                   std::map<Span, std::vector<int>>& out) {
  auto heads = external_heads(deps, node.first, node.last);
  if (heads.empty()) {
    throw ContractError("span (" + std::to_string(node.first) + "," + std::to_string(node.last) +
                        ") has no external head");
  }
  out[{node.first, node.last}] = std::move(heads);
  for (const Node& child : node.children) collect_heads(child, deps, out);
}

void check_node(const Node& node, HeadAuditReport& report) {
  bool ok = node.contains(node.head);
  if (ok && node.is_preterminal()) ok = node.head == node.first;
  if (ok && !node.is_preterminal()) {
    int sharing = 0;
    for (const Node& child : node.children) sharing += child.head == node.head;
    ok = sharing == 1;
  }
  if (!ok) {
    ++report.residual;
    report.offending.emplace_back(node.first, node.last);
  }
  for (const Node& child : node.children) check_node(child, report);
}

// Head of the deepest node on the path to `token` whose head is not `token`.
int governor(const Node& node, int token, int best) {
  if (node.head != token) best = node.head;
  for (const Node& child : node.children) {
    if (child.contains(token)) return governor(child, token, best);
  }
  return best;
}

}  // namespace

std::vector<int> external_heads(const DependencyTree& deps, int first, int last) {
  std::vector<int> out;
  for (int t = first; t <= last; ++t) {
    int h = deps.head(t);
    if (h < first || h > last) out.push_back(t);
  }
  return out;
}

std::map<Span, std::vector<int>> heads_of_spans(const ConstituentTree& tree,
                                                const DependencyTree& deps) {
  if (tree.size() != deps.size()) throw ContractError("heads_of_spans: unaligned pair");
  std::map<Span, std::vector<int>> out;
  collect_heads(tree.root, deps, out);
  return out;
}

FuseResult fuse(const ConstituentTree& constituents, const DependencyTree& deps, int ordinal) {
  if (constituents.size() != deps.size()) throw ContractError("fuse: unaligned pair");
  FuseResult result;
  result.audit.sentence = ordinal;
  Fuser fuser(deps, result.audit);
  result.tree.tokens = constituents.tokens;
  result.tree.labels = deps.labels;
  result.tree.root = fuser.build(constituents.root);
  fuser.assign_heads(result.tree.root, 0);
  result.audit.arc_mismatches = fuser.count_mismatches(result.tree.root);
  return result;
}

HeadAuditReport validate(const HpsgTree& tree) {
  HeadAuditReport report;
  check_node(tree.root, report);
  report.multi_head_before = report.residual;
  return report;
}

ConstituentTree project_constituents(const HpsgTree& tree) {
  ConstituentTree out;
  out.tokens = tree.tokens;
  out.root = tree.root;
  splice_out(out.root, kSplitLabel);
  splice_out(out.root, kEmptyLabel);
  auto clear = [](auto& self, Node& node) -> void {
    node.head = 0;
    for (Node& child : node.children) self(self, child);
  };
  clear(clear, out.root);
  return out;
}

DependencyTree project_dependencies(const HpsgTree& tree) {
  DependencyTree out;
  out.tokens = tree.tokens;
  out.labels = tree.labels;
  out.heads.resize(tree.tokens.size());
  for (int t = 1; t <= tree.size(); ++t) out.heads[t - 1] = governor(tree.root, t, 0);
  return out;
}

}  // namespace hpsg
