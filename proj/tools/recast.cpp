// recast: treebank-driven probabilistic parsing with type-system pruning.
//
// Subcommands: induce, parse, ambiguate, evaluate, wsd, patterns.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "recast/baselines.hpp"
#include "recast/chart.hpp"
#include "recast/error.hpp"
#include "recast/experiment.hpp"
#include "recast/grammar.hpp"
#include "recast/infer.hpp"
#include "recast/text.hpp"
#include "recast/treebank.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "recast 0.1.0";

// Flat key-value configuration, JSON-compatible; command line wins.
struct RunConfig {
  std::string signature;
  std::string treebank;
  std::string output_dir = ".";
  recast::AmbiguationSpec spec;
  recast::ExperimentConfig exp;
  std::string hook = "typed";
  std::string oov = "fail";

  recast::HookKind hook_kind() const {
    if (hook == "typed") return recast::HookKind::Typed;
    if (hook == "none") return recast::HookKind::None;
    throw recast::ConfigError("hook must be 'typed' or 'none'");
  }
  recast::OovPolicy oov_policy() const {
    if (oov == "fail") return recast::OovPolicy::Fail;
    if (oov == "open_class") return recast::OovPolicy::OpenClass;
    throw recast::ConfigError("oov_policy must be 'fail' or 'open_class'");
  }
  void finish() {
    exp.hook = hook_kind();
    exp.oov = oov_policy();
  }
};

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw recast::ConfigError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw recast::ConfigError("config parse error in " + path + ": " + e.what());
  }
  if (!j.is_object()) throw recast::ConfigError("config must be a JSON object");
  for (auto& [key, value] : j.items()) {
    try {
      if (key == "signature") cfg.signature = value.get<std::string>();
      else if (key == "treebank") cfg.treebank = value.get<std::string>();
      else if (key == "output_dir") cfg.output_dir = value.get<std::string>();
      else if (key == "cast_set") {
        cfg.spec.cast_set.clear();
        for (auto& c : value) cfg.spec.cast_set.insert(c.get<std::string>());
      } else if (key == "merge_map") {
        cfg.spec.merge_map.clear();
        for (auto& [from, to] : value.items()) {
          cfg.spec.merge_map[from] = to.get<std::string>();
        }
      } else if (key == "k") cfg.exp.k = value.get<size_t>();
      else if (key == "seed") cfg.exp.seed = value.get<uint64_t>();
      else if (key == "test_ratio") cfg.exp.test_ratio = value.get<double>();
      else if (key == "hook") cfg.hook = value.get<std::string>();
      else if (key == "require_gold_root") cfg.exp.require_gold_root = value.get<bool>();
      else if (key == "max_unary_chain") cfg.exp.max_unary_chain = value.get<size_t>();
      else if (key == "oov_policy") cfg.oov = value.get<std::string>();
      else if (key == "beam") cfg.exp.beam = value.get<size_t>();
      else if (key == "jobs") cfg.exp.jobs = value.get<size_t>();
      else throw recast::ConfigError("unknown config key: " + key);
    } catch (const json::exception& e) {
      throw recast::ConfigError("config key '" + key + "': " + e.what());
    }
  }
}

void write_atomic(const std::string& path, const std::string& content) {
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw recast::ConfigError("cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, target);
}

void require_file(const std::string& path, const std::string& what) {
  if (path.empty()) throw recast::ConfigError("missing " + what + " path");
  if (!fs::exists(path)) throw recast::ConfigError(what + " not found: " + path);
}

int cmd_induce(const RunConfig& cfg, const std::string& out_path) {
  require_file(cfg.signature, "signature");
  require_file(cfg.treebank, "treebank");
  recast::Signature sig = recast::Signature::load(cfg.signature);
  auto entries = recast::load_treebank(cfg.treebank, sig);
  std::vector<recast::RawTree> trees;
  trees.reserve(entries.size());
  for (const auto& e : entries) trees.push_back(recast::binarize_tree(e.gold_tree));
  recast::Grammar g = recast::induce(trees, cfg.exp.max_unary_chain);
  write_atomic(out_path, g.dump());
  std::cerr << "induced " << g.rules().size() << " rules from " << entries.size()
            << " trees -> " << out_path << "\n";
  return 0;
}

int cmd_parse(const RunConfig& cfg, const std::string& grammar_path,
              const std::string& tokens_line, const std::string& input_path,
              const std::string& require_root) {
  require_file(grammar_path, "grammar");
  recast::Grammar g = recast::load_grammar(grammar_path, cfg.exp.max_unary_chain);

  std::unique_ptr<recast::TypedPruningHook> hook;
  std::optional<recast::Signature> sig;
  if (cfg.exp.hook == recast::HookKind::Typed) {
    require_file(cfg.signature, "signature (required by --hook typed)");
    sig = recast::Signature::load(cfg.signature);
    hook = recast::typed_pruning_hook(*sig);
  }

  std::vector<std::vector<std::string>> sentences;
  if (!tokens_line.empty()) {
    sentences.push_back(recast::split_quoted(tokens_line));
  } else if (!input_path.empty()) {
    require_file(input_path, "input");
    std::ifstream in(input_path);
    std::string line;
    while (std::getline(in, line)) {
      std::string body = recast::trim(line);
      if (body.empty() || body[0] == '#') continue;
      sentences.push_back(recast::split_quoted(line));
    }
  } else {
    throw recast::ConfigError("parse needs --tokens or --input");
  }

  recast::ParseOptions popt;
  popt.k = cfg.exp.k;
  popt.hook = hook.get();
  popt.oov = cfg.exp.oov;
  popt.beam = cfg.exp.beam;
  if (!require_root.empty()) popt.require_root = &require_root;

  bool any_parsed = false;
  for (const auto& tokens : sentences) {
    recast::ParseResult res = recast::parse_chart(g, tokens, popt);
    switch (res.status) {
      case recast::ParseStatus::Parsed:
        any_parsed = true;
        for (const auto& st : res.trees) {
          std::cout << recast::format_double(st.logprob) << '\t'
                    << recast::render_sexpr(st.tree) << '\n';
        }
        break;
      case recast::ParseStatus::NoParse:
        std::cout << "no_parse\n";
        break;
      case recast::ParseStatus::OovFailure:
        std::cout << "oov_failure\n";
        break;
    }
  }
  return any_parsed ? 0 : 1;
}

int cmd_ambiguate(const RunConfig& cfg, const std::string& out_path) {
  require_file(cfg.signature, "signature");
  require_file(cfg.treebank, "treebank");
  recast::Signature sig = recast::Signature::load(cfg.signature);
  auto entries = recast::load_treebank(cfg.treebank, sig);
  std::string out;
  for (const auto& e : entries) {
    recast::AmbiguatedEntry amb = recast::ambiguate(e, cfg.spec, sig);
    std::vector<std::string> toks;
    toks.reserve(amb.tokens.size());
    for (const auto& t : amb.tokens) toks.push_back(recast::quote_token(t));
    out += amb.id;
    out += '\t';
    out += recast::render_sexpr(amb.train_tree);
    out += '\t';
    out += recast::join(toks, " ");
    out += '\n';
  }
  write_atomic(out_path, out);
  std::cerr << "ambiguated " << entries.size() << " entries -> " << out_path << "\n";
  return 0;
}

int cmd_evaluate(const RunConfig& cfg) {
  require_file(cfg.signature, "signature");
  require_file(cfg.treebank, "treebank");
  recast::Signature sig = recast::Signature::load(cfg.signature);
  auto entries = recast::load_treebank(cfg.treebank, sig);
  recast::Report report = recast::run_experiment(entries, cfg.spec, sig, cfg.exp);
  fs::path out_dir(cfg.output_dir);
  write_atomic((out_dir / "report.json").string(), recast::report_json(report));
  std::cout << recast::report_table(report);
  size_t failures = report.no_parse + report.oov_failures;
  return (2 * failures > report.test_size) ? 1 : 0;
}

int cmd_wsd(const std::string& train_path, const std::string& test_path,
            const std::string& fallback, const std::string& out_path) {
  require_file(train_path, "train corpus");
  auto train = recast::load_wsd_corpus(train_path);
  recast::SenseTable table = recast::wsd_train(train);
  if (test_path.empty()) {
    std::cout << "trained " << table.senses.size() << " tokens; global sense = "
              << table.global_most_frequent << "\n";
    return 0;
  }
  require_file(test_path, "test corpus");
  auto test = recast::load_wsd_corpus(test_path);
  recast::WsdFallback fb;
  if (fallback == "global") fb = recast::WsdFallback::Global;
  else if (fallback == "abstain") fb = recast::WsdFallback::Abstain;
  else throw recast::ConfigError("fallback must be 'global' or 'abstain'");
  recast::WsdScore score = recast::wsd_evaluate(table, test, fb);

  std::string jout = "{\"accuracy\":";
  jout += score.accuracy ? recast::format_fixed6(*score.accuracy) : std::string("null");
  jout += ",\"attempted\":" + std::to_string(score.attempted);
  jout += ",\"correct\":" + std::to_string(score.correct);
  jout += ",\"coverage\":" + recast::format_fixed6(score.coverage);
  jout += ",\"total\":" + std::to_string(score.total);
  jout += "}\n";
  if (!out_path.empty()) write_atomic(out_path, jout);
  std::cout << jout;
  return 0;
}

int cmd_patterns(const std::string& input_path, const std::string& tsv_path,
                 const std::string& json_path) {
  require_file(input_path, "sentence corpus");
  std::ifstream in(input_path);
  std::vector<std::string> sentences;
  std::string line;
  while (std::getline(in, line)) {
    if (!recast::trim(line).empty()) sentences.push_back(line);
  }
  recast::NormalizeConfig ncfg;
  recast::PatternStats stats = recast::pattern_stats(sentences, ncfg);
  std::string tsv = recast::pattern_stats_tsv(stats);
  if (!tsv_path.empty()) write_atomic(tsv_path, tsv);
  if (!json_path.empty()) write_atomic(json_path, recast::pattern_stats_json(stats));
  std::cout << tsv;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"treebank-driven probabilistic parsing with type-system pruning"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // Command-line values land here; config-file values fill cfg first and
  // explicit flags then overwrite them (command line wins).
  RunConfig cli;
  std::string config_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--signature", cli.signature, "signature file");
    sub->add_option("--treebank", cli.treebank, "treebank file");
    sub->add_option("--output-dir", cli.output_dir, "output directory");
    sub->add_option("--k", cli.exp.k, "k-best list size");
    sub->add_option("--seed", cli.exp.seed, "split seed");
    sub->add_option("--test-ratio", cli.exp.test_ratio, "held-out fraction (0 = retrain set)");
    sub->add_option("--max-unary-chain", cli.exp.max_unary_chain, "unary chain cap");
    sub->add_option("--beam", cli.exp.beam, "per-cell beam width (0 = exact)");
    sub->add_option("--jobs", cli.exp.jobs, "concurrent sentence evaluations (0 = auto)");
    sub->add_option("--hook", cli.hook, "pruning hook: none|typed");
    sub->add_option("--oov", cli.oov, "oov policy: fail|open_class");
  };

  auto* induce_cmd = app.add_subcommand("induce", "treebank -> grammar dump");
  std::string induce_out = "grammar.txt";
  add_common(induce_cmd);
  induce_cmd->add_option("--out", induce_out, "grammar output path");

  auto* parse_cmd = app.add_subcommand("parse", "grammar + tokens -> k-best trees");
  std::string grammar_path, tokens_line, input_path, require_root;
  add_common(parse_cmd);
  parse_cmd->add_option("--grammar", grammar_path, "grammar dump")->required();
  parse_cmd->add_option("--tokens", tokens_line, "space-separated sentence");
  parse_cmd->add_option("--input", input_path, "file with one sentence per line");
  parse_cmd->add_option("--require-root", require_root, "restrict parses to this root label");

  auto* amb_cmd = app.add_subcommand("ambiguate", "treebank + spec -> ambiguated treebank");
  std::string amb_out = "ambiguated.tb";
  std::vector<std::string> cast_flags, merge_flags;
  add_common(amb_cmd);
  amb_cmd->add_option("--out", amb_out, "output path");
  amb_cmd->add_option("--cast", cast_flags, "cast constant to erase (repeatable)");
  amb_cmd->add_option("--merge", merge_flags, "surface merge FROM=TO (repeatable)");

  auto* eval_cmd = app.add_subcommand("evaluate", "full experiment -> report.json");
  bool eval_root_on = false, eval_root_off = false;
  add_common(eval_cmd);
  eval_cmd->add_option("--cast", cast_flags, "cast constant to erase (repeatable)");
  eval_cmd->add_option("--merge", merge_flags, "surface merge FROM=TO (repeatable)");
  eval_cmd->add_flag("--require-gold-root", eval_root_on, "require the gold root label");
  eval_cmd->add_flag("--no-require-gold-root", eval_root_off, "accept any root label");

  auto* wsd_cmd = app.add_subcommand("wsd", "most-frequent-sense baseline");
  std::string wsd_train_path, wsd_test_path, wsd_fallback = "global", wsd_out;
  wsd_cmd->add_option("--train", wsd_train_path, "training TSV")->required();
  wsd_cmd->add_option("--test", wsd_test_path, "test TSV");
  wsd_cmd->add_option("--fallback", wsd_fallback, "unseen-token policy: global|abstain");
  wsd_cmd->add_option("--out", wsd_out, "JSON report path");

  auto* pat_cmd = app.add_subcommand("patterns", "sentence corpus -> pattern statistics");
  std::string pat_input, pat_tsv, pat_json;
  pat_cmd->add_option("--input", pat_input, "one sentence per line")->required();
  pat_cmd->add_option("--tsv", pat_tsv, "TSV output path");
  pat_cmd->add_option("--json", pat_json, "JSON summary path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    RunConfig cfg;
    if (!config_path.empty()) apply_config_file(cfg, config_path);

    auto overlay = [&](const char* flag, auto member) {
      if (sub->count(flag) > 0) cfg.*member = cli.*member;
    };
    auto get_opt = [&](const char* flag) { return sub->get_option_no_throw(flag); };
    if (get_opt("--signature")) overlay("--signature", &RunConfig::signature);
    if (get_opt("--treebank")) overlay("--treebank", &RunConfig::treebank);
    if (get_opt("--output-dir")) overlay("--output-dir", &RunConfig::output_dir);
    if (get_opt("--hook")) overlay("--hook", &RunConfig::hook);
    if (get_opt("--oov")) overlay("--oov", &RunConfig::oov);
    auto overlay_exp = [&](const char* flag, auto member) {
      if (get_opt(flag) && sub->count(flag) > 0) cfg.exp.*member = cli.exp.*member;
    };
    overlay_exp("--k", &recast::ExperimentConfig::k);
    overlay_exp("--seed", &recast::ExperimentConfig::seed);
    overlay_exp("--test-ratio", &recast::ExperimentConfig::test_ratio);
    overlay_exp("--max-unary-chain", &recast::ExperimentConfig::max_unary_chain);
    overlay_exp("--beam", &recast::ExperimentConfig::beam);
    overlay_exp("--jobs", &recast::ExperimentConfig::jobs);

    for (const auto& c : cast_flags) cfg.spec.cast_set.insert(c);
    for (const auto& m : merge_flags) {
      auto eq = m.find('=');
      if (eq == std::string::npos) {
        throw recast::ConfigError("--merge expects FROM=TO, got '" + m + "'");
      }
      cfg.spec.merge_map[m.substr(0, eq)] = m.substr(eq + 1);
    }
    if (eval_root_on && eval_root_off) {
      throw recast::ConfigError("conflicting --require-gold-root flags");
    }
    if (eval_root_on) cfg.exp.require_gold_root = true;
    if (eval_root_off) cfg.exp.require_gold_root = false;
    cfg.finish();

    if (induce_cmd->parsed()) return cmd_induce(cfg, induce_out);
    if (parse_cmd->parsed()) {
      return cmd_parse(cfg, grammar_path, tokens_line, input_path, require_root);
    }
    if (amb_cmd->parsed()) return cmd_ambiguate(cfg, amb_out);
    if (eval_cmd->parsed()) return cmd_evaluate(cfg);
    if (wsd_cmd->parsed()) return cmd_wsd(wsd_train_path, wsd_test_path, wsd_fallback, wsd_out);
    if (pat_cmd->parsed()) return cmd_patterns(pat_input, pat_tsv, pat_json);
  } catch (const recast::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const recast::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
