#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hpsg/check.hpp"
#include "hpsg/core.hpp"
#include "hpsg/decoders.hpp"
#include "hpsg/division.hpp"
#include "hpsg/error.hpp"
#include "hpsg/evaluation.hpp"
#include "hpsg/linear.hpp"
#include "hpsg/parallel.hpp"
#include "hpsg/scores.hpp"
#include "hpsg/treebank_io.hpp"

using namespace hpsg;

namespace {

constexpr std::uint64_t kDefaultSeed = 20190701;

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  return out;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool is_conll(const std::string& path) {
  return ends_with(path, ".conll") || ends_with(path, ".conllx") || ends_with(path, ".conllu");
}

bool is_bracketed(const std::string& path) {
  return ends_with(path, ".mrg") || ends_with(path, ".tree") || ends_with(path, ".trees") ||
         ends_with(path, ".ptb");
}

std::vector<HpsgTree> load_hpsg(const std::string& path) {
  auto in = open_in(path);
  return read_hpsg(in);
}

// Tokens of every sentence in a CoNLL, bracketed or HPSG file.
std::vector<std::vector<Token>> load_sentences(const std::string& path) {
  std::vector<std::vector<Token>> out;
  auto in = open_in(path);
  if (is_conll(path)) {
    ConllOptions options;
    options.require_heads = false;
    for (DependencyTree& t : read_conll(in, options)) out.push_back(std::move(t.tokens));
  } else if (is_bracketed(path)) {
    for (ConstituentTree& t : read_bracketed(in)) out.push_back(std::move(t.tokens));
  } else {
    for (HpsgTree& t : read_hpsg(in)) out.push_back(std::move(t.tokens));
  }
  return out;
}

void print_report(const EvalReport& report, const std::string& format) {
  if (format == "table" || format == "both") std::cout << format_table(report);
  if (format == "both") std::cout << "\n";
  if (format == "kv" || format == "both") std::cout << format_key_values(report);
}

// ---------------------------------------------------------------------------

struct ConvertArgs {
  std::string constituents;
  std::string dependencies;
  std::string out;
  bool keep_function_tags = false;
};

int cmd_convert(const ConvertArgs& a) {
  std::vector<ReadWarning> warnings;
  BracketedOptions bopts;
  bopts.strip_function_tags = !a.keep_function_tags;
  auto cin = open_in(a.constituents);
  auto din = open_in(a.dependencies);
  auto constituents = read_bracketed(cin, &warnings, bopts);
  for (const ReadWarning& w : warnings) {
    std::cerr << "warning: tree " << w.ordinal << " (line " << w.line << "): " << w.message << "\n";
  }
  auto pairs = pair_treebanks(std::move(constituents), read_conll(din));

  auto out = open_out(a.out);
  int multi = 0;
  int residual = 0;
  int mismatched = 0;
  int clean = 0;
  std::vector<HeadAuditReport> offenders;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    FuseResult fused = fuse(pairs[i].first, pairs[i].second, static_cast<int>(i) + 1);
    write_hpsg(out, fused.tree);
    multi += fused.audit.multi_head_before;
    residual += fused.audit.residual;
    mismatched += fused.audit.arc_mismatches;
    clean += fused.audit.clean();
    if (fused.audit.residual > 0) offenders.push_back(fused.audit);
  }
  std::cerr << "sentences=" << pairs.size() << " multi_head_before=" << multi
            << " residual=" << residual << " arc_mismatches=" << mismatched
            << " clean=" << clean << "\n";
  for (const HeadAuditReport& r : offenders) {
    std::cerr << "residual sentence " << r.sentence << ":";
    for (const Span& s : r.offending) std::cerr << " (" << s.first << "," << s.second << ")";
    std::cerr << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct ScoresArgs {
  std::string input;
  std::string model;
  std::string out;
  bool division = false;
  int threads = 1;
};

int cmd_scores(const ScoresArgs& a) {
  std::vector<ScoredSentence> tables;
  CategoryVocab vocab;
  if (!a.model.empty()) {
    auto min = open_in(a.model);
    const LinearModel model = LinearModel::load(min);
    vocab = model.vocab();
    const auto sentences = load_sentences(a.input);
    tables.resize(sentences.size());
    parallel_for(sentences.size(), a.threads, [&](std::size_t i) {
      tables[i] = {static_cast<int>(i) + 1, model.score(sentences[i])};
    });
  } else {
    const std::vector<HpsgTree> gold = load_hpsg(a.input);
    if (a.division) {
      vocab = CategoryVocab::division();
      std::vector<DivisionTree> trees;
      for (const HpsgTree& t : gold) {
        trees.push_back(to_division(t));
        for (const LabeledSpan& s : collapsed_spans(trees.back().tree.root)) vocab.add(s.label);
      }
      for (std::size_t i = 0; i < trees.size(); ++i) {
        tables.push_back({static_cast<int>(i) + 1, division_oracle_scores(trees[i].tree, vocab)});
      }
    } else {
      vocab = CategoryVocab::from_trees(gold);
      for (std::size_t i = 0; i < gold.size(); ++i) {
        tables.push_back({static_cast<int>(i) + 1, oracle_scores(gold[i], vocab)});
      }
    }
  }
  auto out = open_out(a.out);
  write_scores(out, tables, vocab);
  return 0;
}

// ---------------------------------------------------------------------------

struct ParseArgs {
  std::string input;
  std::string scores;
  std::string model;
  std::string out;
  std::string constituents_out;
  std::string dependencies_out;
  std::string decoder = "joint";
  double lambda = 0.5;
  int length_cap = 240;
  int threads = 1;
};

struct Parsed {
  bool ok = false;
  std::string error;
  HpsgTree tree;
  DependencyTree deps;
};

HpsgTree flat_tree(const std::vector<Token>& tokens) {
  HpsgTree tree;
  tree.tokens = tokens;
  tree.root = Node{"X", 1, static_cast<int>(tokens.size()), 1, {}};
  for (const Token& t : tokens) tree.root.children.push_back(Node{t.pos, t.index, t.index, t.index, {}});
  return tree;
}

int cmd_parse(const ParseArgs& a) {
  check_lambda(a.lambda);
  if (a.scores.empty() == a.model.empty()) {
    throw ConfigError("give exactly one of --scores and --model");
  }
  if (!a.model.empty() && a.input.empty()) throw ConfigError("--model needs --input");

  std::optional<LinearModel> model;
  CategoryVocab vocab;
  std::vector<ScoredSentence> tables;
  if (!a.model.empty()) {
    auto min = open_in(a.model);
    model = LinearModel::load(min);
    vocab = model->vocab();
  } else {
    auto sin = open_in(a.scores);
    tables = read_scores(sin, vocab);
  }

  std::vector<std::vector<Token>> sentences;
  if (!a.input.empty()) {
    sentences = load_sentences(a.input);
  } else {
    for (const ScoredSentence& s : tables) sentences.push_back(placeholder_tokens(s.scores.size()));
  }

  DecodeConfig cfg;
  cfg.lambda = a.lambda;
  cfg.length_cap = a.length_cap;

  std::vector<Parsed> results(sentences.size());
  parallel_for(sentences.size(), a.threads, [&](std::size_t i) {
    Parsed& r = results[i];
    const std::vector<Token>& tokens = sentences[i];
    try {
      ScoreTable raw;
      if (model) {
        raw = model->score(tokens);
      } else {
        if (i >= tables.size()) throw AlignmentError("no scores for this sentence");
        raw = tables[i].scores;
        if (raw.size() != static_cast<int>(tokens.size())) {
          throw AlignmentError("scores cover " + std::to_string(raw.size()) + " tokens, sentence has " +
                               std::to_string(tokens.size()));
        }
      }
      if (a.decoder == "eisner") {
        r.deps = decode_eisner(raw.mixed(0.0), tokens).tree;
      } else if (a.decoder == "division") {
        r.tree = from_division(decode_division(raw.mixed(1.0), tokens, vocab).tree).tree;
        r.deps = project_dependencies(r.tree);
      } else {
        r.tree = decode_joint(raw, tokens, vocab, cfg).tree;
        r.deps = project_dependencies(r.tree);
      }
      r.ok = true;
    } catch (const Error& e) {
      r.error = e.what();
      r.tree = flat_tree(tokens);
      r.deps = project_dependencies(r.tree);
    }
  });

  int failures = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (results[i].ok) continue;
    ++failures;
    std::cerr << "sentence " << i + 1 << ": " << results[i].error << "\n";
  }

  if (a.decoder == "eisner") {
    if (!a.constituents_out.empty()) throw ConfigError("the eisner decoder produces no constituents");
    auto out = open_out(a.out);
    for (const Parsed& r : results) write_conll(out, r.deps);
  } else {
    auto out = open_out(a.out);
    for (const Parsed& r : results) write_hpsg(out, r.tree);
    if (!a.constituents_out.empty()) {
      auto cout = open_out(a.constituents_out);
      for (const Parsed& r : results) write_bracketed(cout, project_constituents(r.tree));
    }
    if (!a.dependencies_out.empty()) {
      auto dout = open_out(a.dependencies_out);
      for (const Parsed& r : results) write_conll(dout, r.deps);
    }
  }
  std::cerr << "parsed=" << results.size() - failures << " failed=" << failures << "\n";
  return failures == 0 ? 0 : static_cast<int>(ErrorKind::kData);
}

// ---------------------------------------------------------------------------

struct TrainArgs {
  std::string train;
  std::string dev;
  std::string model_out;
  std::string decoder = "joint";
  double lambda = 0.5;
  int epochs = 10;
  double step = 0.1;
  std::uint64_t seed = kDefaultSeed;
  int dim_bits = 22;
  bool no_average = false;
  int length_cap = 240;
  int threads = 1;
  std::string punct;
};

EvalReport evaluate_model(const LinearModel& model, const std::vector<HpsgTree>& gold, double lambda,
                          int length_cap, int threads, const EvalOptions& options) {
  std::vector<HpsgTree> pred(gold.size());
  parallel_for(gold.size(), threads, [&](std::size_t i) {
    pred[i] = parse_with_model(model, gold[i].tokens, lambda, length_cap);
  });
  std::vector<ConstituentTree> gc, pc;
  std::vector<DependencyTree> gd, pd;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    gc.push_back(project_constituents(gold[i]));
    pc.push_back(project_constituents(pred[i]));
    gd.push_back(project_dependencies(gold[i]));
    pd.push_back(project_dependencies(pred[i]));
  }
  return combine(bracket_f1(gc, pc, options), attachment_scores(gd, pd, options));
}

int cmd_train(const TrainArgs& a) {
  std::vector<HpsgTree> corpus;
  int skipped = 0;
  for (HpsgTree& t : load_hpsg(a.train)) {
    if (validate(t).clean()) {
      corpus.push_back(std::move(t));
    } else {
      ++skipped;
    }
  }
  if (skipped) std::cerr << "skipped " << skipped << " trees failing the head check\n";
  std::vector<HpsgTree> dev;
  if (!a.dev.empty()) dev = load_hpsg(a.dev);
  if (a.dim_bits < 8 || a.dim_bits > 30) throw ConfigError("--dim-bits must be in [8, 30]");

  EvalOptions options;
  if (!a.punct.empty()) options.punctuation = parse_punctuation_set(a.punct);

  LinearConfig cfg;
  cfg.epochs = a.epochs;
  cfg.step = a.step;
  cfg.lambda = a.lambda;
  cfg.average = !a.no_average;
  cfg.seed = a.seed;
  cfg.dim = std::size_t{1} << a.dim_bits;
  cfg.kind = a.decoder == "division" ? ModelKind::kDivision : ModelKind::kJoint;
  cfg.length_cap = a.length_cap;
  std::vector<EvalReport> dev_reports;
  if (!dev.empty()) {
    cfg.dev_metric = [&](const LinearModel& m) {
      dev_reports.push_back(evaluate_model(m, dev, a.lambda, a.length_cap, a.threads, options));
      const EvalReport& r = dev_reports.back();
      return cfg.kind == ModelKind::kDivision ? r.f1 : (r.f1 + r.uas) / 2.0;
    };
  }

  const TrainResult result = train_linear(corpus, cfg);
  for (std::size_t e = 0; e < result.log.size(); ++e) {
    const EpochLog& log = result.log[e];
    char line[256];
    std::snprintf(line, sizeof line, "epoch=%d objective=%.6f violations=%d", log.epoch,
                  log.objective, log.violations);
    std::cerr << line;
    if (e < dev_reports.size()) {
      std::snprintf(line, sizeof line, " dev_f1=%.2f dev_uas=%.2f", dev_reports[e].f1,
                    dev_reports[e].uas);
      std::cerr << line;
    }
    std::cerr << "\n";
  }
  std::cerr << "best_epoch=" << result.best_epoch << "\n";
  auto out = open_out(a.model_out);
  result.model.save(out);
  return 0;
}

// ---------------------------------------------------------------------------

struct EvalArgs {
  std::string gold;
  std::string pred;
  std::string gold_dependencies;
  std::string pred_dependencies;
  std::string punct;
  std::string format = "both";
};

std::vector<ConstituentTree> load_constituents(const std::string& path) {
  if (is_bracketed(path)) {
    auto in = open_in(path);
    return read_bracketed(in);
  }
  std::vector<ConstituentTree> out;
  for (const HpsgTree& t : load_hpsg(path)) out.push_back(project_constituents(t));
  return out;
}

std::vector<DependencyTree> load_dependencies(const std::string& path) {
  if (is_conll(path)) {
    auto in = open_in(path);
    return read_conll(in);
  }
  std::vector<DependencyTree> out;
  for (const HpsgTree& t : load_hpsg(path)) out.push_back(project_dependencies(t));
  return out;
}

int cmd_eval(const EvalArgs& a) {
  EvalOptions options;
  if (!a.punct.empty()) options.punctuation = parse_punctuation_set(a.punct);
  const bool brackets = !a.gold.empty() || !a.pred.empty();
  const bool arcs = !a.gold_dependencies.empty() || !a.pred_dependencies.empty();
  if (a.gold.empty() != a.pred.empty()) throw ConfigError("--gold and --pred go together");
  if (a.gold_dependencies.empty() != a.pred_dependencies.empty()) {
    throw ConfigError("--gold-deps and --pred-deps go together");
  }
  if (!brackets && !arcs) throw ConfigError("nothing to evaluate");

  EvalReport bracket_report;
  EvalReport arc_report;
  if (brackets) bracket_report = bracket_f1(load_constituents(a.gold), load_constituents(a.pred), options);
  if (arcs) {
    arc_report = attachment_scores(load_dependencies(a.gold_dependencies),
                                   load_dependencies(a.pred_dependencies), options);
  } else if (brackets && !is_bracketed(a.gold) && !is_bracketed(a.pred)) {
    // HPSG files carry both analyses.
    arc_report = attachment_scores(load_dependencies(a.gold), load_dependencies(a.pred), options);
  }
  EvalReport report = brackets ? combine(bracket_report, arc_report) : arc_report;
  print_report(report, a.format);
  return 0;
}

// ---------------------------------------------------------------------------

struct CheckArgs {
  std::string input;
  int n_cap = 6;
  int trials = 200;
  std::uint64_t seed = kDefaultSeed;
  double lambda = 0.5;
  int categories = 3;
  int threads = 1;
};

int cmd_check(const CheckArgs& a) {
  check_lambda(a.lambda);
  if (a.n_cap < 2) throw ConfigError("--n-cap must be at least 2");
  if (a.trials < 1) throw ConfigError("--trials must be positive");
  const CategoryVocab vocab = synthetic_vocab(a.categories);
  const EquivalenceReport eq = check_brute_force(a.n_cap, a.trials, a.seed, a.lambda, a.threads, vocab);
  char line[128];
  std::snprintf(line, sizeof line, "brute_force trials=%d max_discrepancy=%.3g", eq.trials,
                eq.max_discrepancy);
  std::cout << line << "\n";
  bool ok = eq.failures.empty();
  for (const TrialFailure& f : eq.failures) {
    std::snprintf(line, sizeof line, "  n=%d trial=%d seed=%llu joint=%.17g brute=%.17g", f.n,
                  f.trial, static_cast<unsigned long long>(f.seed), f.joint, f.reference);
    std::cerr << line << "\n";
    std::mt19937_64 rng(f.seed);
    std::vector<ScoredSentence> table{{f.trial + 1, random_scores(f.n, vocab.size(), rng)}};
    write_scores(std::cerr, table, vocab);
  }
  if (!a.input.empty()) {
    const OracleReport oracle = check_oracle(load_hpsg(a.input), a.lambda, a.threads);
    std::cout << "oracle sentences=" << oracle.sentences << " exact=" << oracle.exact << "\n";
    for (int s : oracle.mismatched) std::cerr << "  oracle mismatch in sentence " << s << "\n";
    ok = ok && oracle.mismatched.empty();
  }
  std::cout << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? 0 : static_cast<int>(ErrorKind::kInvariant);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint constituent and dependency parsing over head-annotated spans"};
  app.set_config("--config", "", "TOML or INI file with option defaults");
  app.require_subcommand(1);

  const std::vector<std::string> decoders{"division", "joint", "eisner"};

  ConvertArgs convert;
  auto* c = app.add_subcommand("convert", "Fuse paired bracketed and CoNLL treebanks into HPSG trees");
  c->add_option("--constituents", convert.constituents, "Bracketed treebank")->required()->check(CLI::ExistingFile);
  c->add_option("--dependencies", convert.dependencies, "CoNLL treebank")->required()->check(CLI::ExistingFile);
  c->add_option("-o,--out", convert.out, "HPSG output")->required();
  c->add_flag("--keep-function-tags", convert.keep_function_tags, "Do not strip -SBJ, -1, =2 suffixes");

  ScoresArgs scores;
  auto* s = app.add_subcommand("scores", "Write oracle or model score files");
  s->add_option("--input", scores.input, "HPSG corpus (oracle) or sentences (model)")->required()->check(CLI::ExistingFile);
  s->add_option("--model", scores.model, "Linear model; default is oracle scores")->check(CLI::ExistingFile);
  s->add_flag("--division", scores.division, "Oracle scores over division categories");
  s->add_option("-o,--out", scores.out, "Score file")->required();
  s->add_option("--threads", scores.threads, "Worker threads")->check(CLI::PositiveNumber);

  ParseArgs parse;
  auto* p = app.add_subcommand("parse", "Decode sentences from a score file or a model");
  p->add_option("--input", parse.input, "Sentences (.conll, .mrg or HPSG)")->check(CLI::ExistingFile);
  p->add_option("--scores", parse.scores, "Score file")->check(CLI::ExistingFile);
  p->add_option("--model", parse.model, "Linear model")->check(CLI::ExistingFile);
  p->add_option("--decoder", parse.decoder, "division, joint or eisner")->check(CLI::IsMember(decoders));
  p->add_option("--lambda", parse.lambda, "Span/arc mixing weight in [0,1]");
  p->add_option("--len-cap", parse.length_cap, "Longer sentences fall back to CKY with greedy heads");
  p->add_option("-o,--out", parse.out, "HPSG trees (CoNLL for eisner)")->required();
  p->add_option("--constituents-out", parse.constituents_out, "Projected bracketed trees");
  p->add_option("--dependencies-out", parse.dependencies_out, "Projected CoNLL trees");
  p->add_option("--threads", parse.threads, "Worker threads")->check(CLI::PositiveNumber);

  TrainArgs train;
  auto* t = app.add_subcommand("train", "Train the linear scorer");
  t->add_option("--train", train.train, "HPSG training corpus")->required()->check(CLI::ExistingFile);
  t->add_option("--dev", train.dev, "HPSG development corpus")->check(CLI::ExistingFile);
  t->add_option("--model", train.model_out, "Model output")->required();
  t->add_option("--decoder", train.decoder, "joint or division")->check(CLI::IsMember({"joint", "division"}));
  t->add_option("--lambda", train.lambda, "Span/arc mixing weight in [0,1]");
  t->add_option("--epochs", train.epochs, "Passes over the corpus");
  t->add_option("--step", train.step, "Update step size");
  t->add_option("--seed", train.seed, "Shuffling seed");
  t->add_option("--dim-bits", train.dim_bits, "log2 of the feature dimension");
  t->add_flag("--no-average", train.no_average, "Return the last weights instead of the average");
  t->add_option("--len-cap", train.length_cap, "Length cap for the joint decoder");
  t->add_option("--punct-set", train.punct, "Comma-separated punctuation tags for dev scoring");
  t->add_option("--threads", train.threads, "Worker threads for dev scoring")->check(CLI::PositiveNumber);

  EvalArgs eval;
  auto* e = app.add_subcommand("eval", "Bracket F1 and attachment scores");
  e->add_option("--gold", eval.gold, "Gold HPSG or bracketed trees")->check(CLI::ExistingFile);
  e->add_option("--pred", eval.pred, "Predicted HPSG or bracketed trees")->check(CLI::ExistingFile);
  e->add_option("--gold-deps", eval.gold_dependencies, "Gold CoNLL or HPSG")->check(CLI::ExistingFile);
  e->add_option("--pred-deps", eval.pred_dependencies, "Predicted CoNLL or HPSG")->check(CLI::ExistingFile);
  e->add_option("--punct-set", eval.punct, "Comma-separated punctuation tags");
  e->add_option("--format", eval.format, "table, kv or both")->check(CLI::IsMember({"table", "kv", "both"}));

  CheckArgs check;
  auto* k = app.add_subcommand("check", "Joint decoder against brute force and oracle scores");
  k->add_option("--input", check.input, "HPSG corpus for the oracle suite")->check(CLI::ExistingFile);
  k->add_option("--n-cap", check.n_cap, "Largest random sentence length");
  k->add_option("--trials", check.trials, "Random tables per length");
  k->add_option("--seed", check.seed, "Run seed");
  k->add_option("--lambda", check.lambda, "Span/arc mixing weight in [0,1]");
  k->add_option("--categories", check.categories, "Extra categories in random tables");
  k->add_option("--threads", check.threads, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : static_cast<int>(ErrorKind::kUsage);
  }

  try {
    if (c->parsed()) return cmd_convert(convert);
    if (s->parsed()) return cmd_scores(scores);
    if (p->parsed()) return cmd_parse(parse);
    if (t->parsed()) return cmd_train(train);
    if (e->parsed()) return cmd_eval(eval);
    if (k->parsed()) return cmd_check(check);
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return static_cast<int>(err.kind());
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return static_cast<int>(ErrorKind::kInvariant);
  }
  return 0;
}
