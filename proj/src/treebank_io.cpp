#include "hpsg/treebank_io.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>

#include "hpsg/error.hpp"

namespace hpsg {

namespace {

// ---------------------------------------------------------------------------
// s-expressions

struct Sexpr {
  std::string label;
  std::string word;  // set for preterminals
  bool has_word = false;
  int line = 0;
  std::vector<Sexpr> children;
};

class SexprReader {
 public:
  explicit SexprReader(std::string_view text) : text_(text) {}

  // Returns false at end of input.
  bool next(Sexpr& out) {
    skip_space();
    if (pos_ >= text_.size()) return false;
    if (text_[pos_] != '(') throw ParseError(line_, "expected '(' at start of tree");
    out = node();
    return true;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && is_space(text_[pos_])) {
      if (text_[pos_] == '\n') ++line_;
      ++pos_;
    }
  }

  static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

  std::string atom() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && !is_space(text_[pos_]) && text_[pos_] != '(' &&
           text_[pos_] != ')') {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  Sexpr node() {
    Sexpr out;
    out.line = line_;
    ++pos_;  // '('
    skip_space();
    if (pos_ >= text_.size()) throw ParseError(out.line, "unbalanced parentheses");
    if (text_[pos_] != '(' && text_[pos_] != ')') out.label = atom();
    while (true) {
      skip_space();
      if (pos_ >= text_.size()) throw ParseError(out.line, "unbalanced parentheses");
      char c = text_[pos_];
      if (c == ')') {
        ++pos_;
        break;
      }
      if (c == '(') {
        if (out.has_word) throw ParseError(line_, "word mixed with subtrees");
        out.children.push_back(node());
        continue;
      }
      if (out.has_word || !out.children.empty()) {
        throw ParseError(line_, "unexpected token '" + atom() + "'");
      }
      out.word = atom();
      out.has_word = true;
    }
    if (!out.has_word && out.children.empty()) throw ParseError(out.line, "empty node");
    if (out.has_word && out.label.empty()) throw ParseError(out.line, "word without a tag");
    return out;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

bool is_reserved(std::string_view label) {
  return label == "-NONE-" || label == kSplitLabel || label == kEmptyLabel;
}

// Returns nullopt when nothing survives -NONE- removal.
std::optional<Node> to_node(const Sexpr& s, const BracketedOptions& options,
                            std::vector<std::string>& forms) {
  if (s.has_word) {
    if (options.strip_empty_elements && s.label == "-NONE-") return std::nullopt;
    Node leaf;
    leaf.label = s.label;
    forms.push_back(s.word);
    return leaf;
  }
  Node node;
  node.label = options.strip_function_tags ? strip_function_tag(s.label) : s.label;
  for (const Sexpr& child : s.children) {
    if (auto kid = to_node(child, options, forms)) node.children.push_back(std::move(*kid));
  }
  if (node.children.empty()) return std::nullopt;
  return node;
}

std::vector<Token> tokens_of(const Node& root, const std::vector<std::string>& forms) {
  std::vector<Token> tokens;
  for (const Node* leaf : preterminals(root)) {
    tokens.push_back({leaf->first, forms[leaf->first - 1], leaf->label});
  }
  return tokens;
}

const Sexpr& unwrap(const Sexpr& s) {
  const Sexpr* cur = &s;
  while (cur->label.empty() && !cur->has_word) {
    if (cur->children.size() != 1) {
      throw ParseError(cur->line, "unlabelled node with several children");
    }
    cur = &cur->children[0];
  }
  return *cur;
}

void write_node(std::ostream& out, const Node& node, const std::vector<Token>& tokens,
                bool with_heads) {
  out << '(' << node.label;
  if (with_heads) out << '[' << node.head << ']';
  if (node.is_preterminal()) {
    out << ' ' << tokens[node.first - 1].form << ')';
    return;
  }
  for (const Node& child : node.children) {
    out << ' ';
    write_node(out, child, tokens, with_heads);
  }
  out << ')';
}

// "NP[3]" -> ("NP", 3)
std::pair<std::string, int> split_head(const std::string& label, int line) {
  std::size_t open = label.rfind('[');
  if (open == std::string::npos || open == 0 || label.back() != ']') {
    throw ParseError(line, "missing head annotation on '" + label + "'");
  }
  int head = 0;
  const char* begin = label.data() + open + 1;
  const char* end = label.data() + label.size() - 1;
  auto [ptr, ec] = std::from_chars(begin, end, head);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(line, "bad head index in '" + label + "'");
  }
  return {label.substr(0, open), head};
}

Node to_hpsg_node(const Sexpr& s, std::vector<std::string>& forms) {
  auto [label, head] = split_head(s.label, s.line);
  Node node;
  node.label = std::move(label);
  node.head = head;
  if (s.has_word) {
    forms.push_back(s.word);
    return node;
  }
  for (const Sexpr& child : s.children) node.children.push_back(to_hpsg_node(child, forms));
  return node;
}

void check_heads(const Node& node, int line) {
  if (!node.contains(node.head)) {
    throw ValidationError("line " + std::to_string(line) + ": head " +
                          std::to_string(node.head) + " of " + node.label + " lies outside span (" +
                          std::to_string(node.first) + "," + std::to_string(node.last) + ")");
  }
  for (const Node& child : node.children) check_heads(child, line);
}

std::vector<std::string> split_columns(const std::string& line) {
  std::vector<std::string> cols;
  if (line.find('\t') != std::string::npos) {
    std::size_t start = 0;
    while (true) {
      std::size_t tab = line.find('\t', start);
      cols.push_back(line.substr(start, tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
  } else {
    std::istringstream ss(line);
    std::string col;
    while (ss >> col) cols.push_back(col);
  }
  return cols;
}

std::optional<int> parse_int(std::string_view s) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

}  // namespace

// ---------------------------------------------------------------------------

std::string slurp(std::istream& in) {
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void check_utf8(std::string_view text) {
  int line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    auto c = static_cast<unsigned char>(text[i]);
    if (c == '\n') ++line;
    int extra = 0;
    std::uint32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      extra = 1;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      extra = 3;
      cp = c & 0x07;
    } else {
      throw ParseError(line, "malformed UTF-8 byte");
    }
    if (i + extra >= text.size()) {
      throw ParseError(line, "truncated UTF-8 sequence");
    }
    for (int k = 1; k <= extra; ++k) {
      auto cc = static_cast<unsigned char>(text[i + k]);
      if ((cc & 0xC0) != 0x80) throw ParseError(line, "malformed UTF-8 byte");
      cp = (cp << 6) | (cc & 0x3F);
    }
    static constexpr std::uint32_t kMin[] = {0, 0x80, 0x800, 0x10000};
    if (cp < kMin[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      throw ParseError(line, "malformed UTF-8 sequence");
    }
    i += extra + 1;
  }
}

std::string strip_function_tag(std::string_view label) {
  if (is_reserved(label) || label.empty() || label.front() == '-') return std::string(label);
  std::size_t cut = label.find_first_of("-=", 1);
  return std::string(label.substr(0, cut));
}

std::vector<ConstituentTree> read_bracketed(std::string_view text,
                                            std::vector<ReadWarning>* warnings,
                                            const BracketedOptions& options) {
  check_utf8(text);
  std::vector<ConstituentTree> trees;
  SexprReader reader(text);
  Sexpr s;
  int ordinal = 0;
  while (reader.next(s)) {
    ++ordinal;
    const Sexpr& top = unwrap(s);
    std::vector<std::string> forms;
    std::optional<Node> root = to_node(top, options, forms);
    if (!root) {
      if (warnings) warnings->push_back({ordinal, s.line, "tree is empty after -NONE- removal"});
      continue;
    }
    reindex(*root);
    ConstituentTree tree;
    tree.tokens = tokens_of(*root, forms);
    tree.root = std::move(*root);
    trees.push_back(std::move(tree));
  }
  return trees;
}

std::vector<ConstituentTree> read_bracketed(std::istream& in, std::vector<ReadWarning>* warnings,
                                            const BracketedOptions& options) {
  return read_bracketed(slurp(in), warnings, options);
}

std::string to_bracketed(const Node& root, const std::vector<Token>& tokens) {
  std::ostringstream out;
  write_node(out, root, tokens, false);
  return out.str();
}

void write_bracketed(std::ostream& out, const ConstituentTree& tree) {
  write_node(out, tree.root, tree.tokens, false);
  out << '\n';
}

// ---------------------------------------------------------------------------
// CoNLL-X

void check_dependency_tree(const DependencyTree& tree, int ordinal) {
  const int n = tree.size();
  int roots = 0;
  for (int t = 1; t <= n; ++t) {
    int h = tree.head(t);
    if (h < 0 || h > n) {
      throw StructuralError("sentence " + std::to_string(ordinal) + ": head " +
                            std::to_string(h) + " of token " + std::to_string(t) +
                            " out of range");
    }
    if (h == t) {
      throw StructuralError("sentence " + std::to_string(ordinal) + ": token " +
                            std::to_string(t) + " heads itself");
    }
    if (h == 0) ++roots;
  }
  if (roots != 1) {
    throw StructuralError("sentence " + std::to_string(ordinal) + ": " + std::to_string(roots) +
                          " root tokens, expected exactly one");
  }
  // Every walk toward the root must terminate within n steps.
  for (int t = 1; t <= n; ++t) {
    int cur = t;
    for (int steps = 0; cur != 0; ++steps) {
      if (steps > n) {
        throw StructuralError("sentence " + std::to_string(ordinal) +
                              ": cyclic heads through token " + std::to_string(t));
      }
      cur = tree.head(cur);
    }
  }
}

std::vector<DependencyTree> read_conll(std::string_view text, const ConllOptions& options) {
  check_utf8(text);
  std::vector<DependencyTree> trees;
  DependencyTree current;
  bool labelled = false;
  int line_no = 0;

  auto finish = [&] {
    if (current.tokens.empty()) return;
    if (!labelled) current.labels.clear();
    if (options.require_heads) check_dependency_tree(current, static_cast<int>(trees.size()) + 1);
    trees.push_back(std::move(current));
    current = DependencyTree{};
    labelled = false;
  };

  std::istringstream lines{std::string(text)};
  std::string line;
  while (std::getline(lines, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) {
      finish();
      continue;
    }
    if (line[0] == '#') continue;
    std::vector<std::string> cols = split_columns(line);
    if (cols.size() < 8) {
      throw ParseError(line_no, "expected at least 8 columns, found " + std::to_string(cols.size()));
    }
    auto id = parse_int(cols[0]);
    int expected = current.size() + 1;
    if (!id || *id != expected) {
      throw ParseError(line_no, "token id '" + cols[0] + "' should be " + std::to_string(expected));
    }
    if (cols[1].empty()) throw ParseError(line_no, "empty form");
    std::string pos_tag = cols[4] != "_" ? cols[4] : cols[3];
    current.tokens.push_back({expected, cols[1], pos_tag});
    if (options.require_heads || cols[6] != "_") {
      auto head = parse_int(cols[6]);
      if (!head) throw ParseError(line_no, "non-integer HEAD '" + cols[6] + "'");
      current.heads.push_back(*head);
    }
    current.labels.push_back(cols[7]);
    if (cols[7] != "_") labelled = true;
  }
  finish();
  if (!options.require_heads) {
    for (auto& tree : trees) {
      if (static_cast<int>(tree.heads.size()) != tree.size()) tree.heads.clear();
    }
  }
  return trees;
}

std::vector<DependencyTree> read_conll(std::istream& in, const ConllOptions& options) {
  return read_conll(slurp(in), options);
}

void write_conll(std::ostream& out, const DependencyTree& tree) {
  for (int t = 1; t <= tree.size(); ++t) {
    const Token& tok = tree.tokens[t - 1];
    out << t << '\t' << tok.form << "\t_\t" << tok.pos << '\t' << tok.pos << "\t_\t"
        << (tree.heads.empty() ? std::string("_") : std::to_string(tree.head(t))) << '\t'
        << (tree.has_labels() ? tree.labels[t - 1] : std::string("_")) << "\t_\t_\n";
  }
  out << '\n';
}

// ---------------------------------------------------------------------------

std::vector<std::pair<ConstituentTree, DependencyTree>> pair_treebanks(
    std::vector<ConstituentTree> constituents, std::vector<DependencyTree> dependencies) {
  if (constituents.size() != dependencies.size()) {
    throw AlignmentError("treebanks hold " + std::to_string(constituents.size()) +
                         " constituent and " + std::to_string(dependencies.size()) +
                         " dependency sentences");
  }
  std::vector<std::pair<ConstituentTree, DependencyTree>> pairs;
  pairs.reserve(constituents.size());
  for (std::size_t s = 0; s < constituents.size(); ++s) {
    const auto& c = constituents[s];
    const auto& d = dependencies[s];
    const std::string where = "sentence " + std::to_string(s + 1);
    if (c.size() != d.size()) {
      throw AlignmentError(where + ": " + std::to_string(c.size()) + " vs " +
                           std::to_string(d.size()) + " tokens");
    }
    for (int t = 0; t < c.size(); ++t) {
      if (c.tokens[t].form != d.tokens[t].form) {
        throw AlignmentError(where + ", token " + std::to_string(t + 1) + ": '" +
                             c.tokens[t].form + "' vs '" + d.tokens[t].form + "'");
      }
    }
    pairs.emplace_back(std::move(constituents[s]), std::move(dependencies[s]));
  }
  return pairs;
}

// ---------------------------------------------------------------------------
// HPSG format

std::string to_hpsg_string(const HpsgTree& tree) {
  std::ostringstream out;
  write_node(out, tree.root, tree.tokens, true);
  return out.str();
}

void write_hpsg(std::ostream& out, const HpsgTree& tree) {
  write_node(out, tree.root, tree.tokens, true);
  out << '\n';
}

std::vector<HpsgTree> read_hpsg(std::string_view text) {
  check_utf8(text);
  std::vector<HpsgTree> trees;
  SexprReader reader(text);
  Sexpr s;
  while (reader.next(s)) {
    std::vector<std::string> forms;
    HpsgTree tree;
    tree.root = to_hpsg_node(s, forms);
    reindex(tree.root);
    check_heads(tree.root, s.line);
    tree.tokens = tokens_of(tree.root, forms);
    trees.push_back(std::move(tree));
  }
  return trees;
}

std::vector<HpsgTree> read_hpsg(std::istream& in) { return read_hpsg(slurp(in)); }

}  // namespace hpsg
