#include "recast/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include "recast/error.hpp"
#include "recast/infer.hpp"
#include "recast/text.hpp"

namespace recast {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool is_cast_preterminal(const RawTree& t, const std::set<std::string>& cast_set) {
  return !t.is_leaf() && t.children.size() == 1 && t.children[0].is_leaf() &&
         cast_set.count(t.children[0].label) > 0;
}

std::string label_head(const std::string& label) {
  auto at = label.find('@');
  return at == std::string::npos ? std::string() : label.substr(at + 1);
}

// Removes cast applications: a binary node whose function child is a cast
// preterminal is replaced by its argument subtree, which inherits the
// node's label type (and the argument's own lexical head, if any).
RawTree splice_casts(const RawTree& t, const std::set<std::string>& cast_set) {
  if (t.is_leaf()) return t;
  if (t.children.size() == 2 && is_cast_preterminal(t.children[0], cast_set)) {
    RawTree promoted = splice_casts(t.children[1], cast_set);
    std::string type_part = strip_lex(t.label);
    std::string head = label_head(promoted.label);
    promoted.label = head.empty() ? type_part : type_part + "@" + head;
    return promoted;
  }
  std::vector<RawTree> kids;
  kids.reserve(t.children.size());
  for (const auto& c : t.children) kids.push_back(splice_casts(c, cast_set));
  return RawTree::node(t.label, std::move(kids));
}

void rename_tree(RawTree& t, const std::map<std::string, std::string>& merge_map) {
  if (t.is_leaf()) {
    auto it = merge_map.find(t.label);
    if (it != merge_map.end()) t.label = it->second;
    return;
  }
  // Lexical heads are surface material too.
  std::string head = label_head(t.label);
  if (!head.empty()) {
    auto it = merge_map.find(head);
    if (it != merge_map.end()) t.label = strip_lex(t.label) + "@" + it->second;
  }
  for (auto& c : t.children) rename_tree(c, merge_map);
}

}  // namespace

AmbiguatedEntry ambiguate(const TreebankEntry& entry, const AmbiguationSpec& spec,
                          const Signature& sig) {
  if (!entry.gold_term) {
    throw MissingGoldTermError("entry '" + entry.id + "' carries no gold term");
  }
  for (const auto& c : spec.cast_set) {
    if (!sig.is_coercion(c)) {
      throw ConfigError("cast set entry '" + c + "' is not a declared coercion");
    }
  }
  AmbiguatedEntry out;
  out.id = entry.id;
  out.gold_term = entry.gold_term;
  out.train_tree = splice_casts(entry.gold_tree, spec.cast_set);
  rename_tree(out.train_tree, spec.merge_map);
  out.tokens = tree_yield(out.train_tree);
  out.gold_root_label = out.train_tree.label;
  return out;
}

namespace {

// Knuth's MMIX linear congruential generator; documented in the README
// config reference so splits reproduce across implementations.
struct Lcg {
  uint64_t state;
  explicit Lcg(uint64_t seed) : state(seed) {}
  uint64_t next() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return state >> 33;
  }
};

}  // namespace

void split_corpus(const std::vector<AmbiguatedEntry>& entries, double test_ratio,
                  uint64_t seed, std::vector<size_t>& train_idx,
                  std::vector<size_t>& test_idx) {
  const size_t n = entries.size();
  if (n < 2) throw TooSmallError("need at least 2 entries to split");
  if (!(test_ratio > 0.0 && test_ratio < 1.0)) {
    throw TooSmallError("test ratio must be strictly between 0 and 1");
  }
  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = i;
  Lcg rng(seed);
  for (size_t i = n - 1; i >= 1; --i) {
    size_t j = static_cast<size_t>(rng.next() % (i + 1));
    std::swap(order[i], order[j]);
  }
  size_t t = static_cast<size_t>(std::llround(test_ratio * static_cast<double>(n)));
  t = std::max<size_t>(1, std::min(t, n - 1));
  test_idx.assign(order.begin(), order.begin() + static_cast<long>(t));
  train_idx.assign(order.begin() + static_cast<long>(t), order.end());
  std::sort(test_idx.begin(), test_idx.end());
  std::sort(train_idx.begin(), train_idx.end());
}

namespace {

struct EntryOutcome {
  enum class Kind { Hit, Miss, RepairAmbiguous, NoParse, Oov };
  Kind kind = Kind::Miss;
  size_t first_hit_rank = 0;  // 1-based when kind == Hit
  ChartStats stats;
};

EntryOutcome evaluate_entry(const AmbiguatedEntry& entry, const Grammar& grammar,
                            const Signature& merged_sig, const ExperimentConfig& config) {
  EntryOutcome out;
  std::unique_ptr<TypedPruningHook> hook;
  if (config.hook == HookKind::Typed) hook = typed_pruning_hook(merged_sig);

  ParseOptions popt;
  popt.k = config.k;
  popt.hook = hook.get();
  popt.oov = config.oov;
  popt.beam = config.beam;
  if (config.require_gold_root) popt.require_root = &entry.gold_root_label;

  ParseResult res = parse_chart(grammar, entry.tokens, popt);
  out.stats = res.stats;
  if (res.status == ParseStatus::OovFailure) {
    out.kind = EntryOutcome::Kind::Oov;
    return out;
  }
  if (res.status == ParseStatus::NoParse) {
    out.kind = EntryOutcome::Kind::NoParse;
    return out;
  }

  bool top1_ambiguous = false;
  for (size_t rank = 0; rank < res.trees.size(); ++rank) {
    const RawTree& tree = res.trees[rank].tree;
    TermPtr reconstructed;
    try {
      reconstructed = term_of_labeled_tree(tree, merged_sig);
    } catch (const Error&) {
      continue;
    }
    // Repair directed at the predicted root's label type; an untyped label
    // falls back to undirected repair.
    const TypeExpr* want_ptr = nullptr;
    TypeExpr want;
    try {
      want = parse_type(strip_lex(tree.label));
      want_ptr = &want;
    } catch (const Error&) {
      want_ptr = nullptr;
    }
    RepairOutcome rep = repair_coercions(reconstructed, merged_sig, want_ptr);
    if (rep.status == RepairStatus::Ambiguous) {
      if (rank == 0) top1_ambiguous = true;
      continue;
    }
    if (rep.status != RepairStatus::Ok) continue;
    if (alpha_equal(rep.term, entry.gold_term)) {
      out.kind = EntryOutcome::Kind::Hit;
      out.first_hit_rank = rank + 1;
      return out;
    }
  }
  out.kind = top1_ambiguous ? EntryOutcome::Kind::RepairAmbiguous : EntryOutcome::Kind::Miss;
  return out;
}

}  // namespace

Report run_experiment(const std::vector<TreebankEntry>& corpus, const AmbiguationSpec& spec,
                      const Signature& sig, const ExperimentConfig& config) {
  Report report;
  report.config = config;
  report.spec = spec;
  report.k = config.k;

  // Surfaces after merging; shared read-only by workers. Merge images must
  // not collide with symbols that keep their own name as surface.
  Signature merged_sig = sig;
  for (const auto& [from, to] : spec.merge_map) {
    (void)from;
    for (const auto& owner : sig.owners_of_surface(to)) {
      if (!spec.merge_map.count(owner)) {
        throw ConfigError("merge image '" + to + "' collides with unmapped symbol '" +
                          owner + "'");
      }
    }
  }
  for (const auto& [from, to] : spec.merge_map) {
    for (const auto& owner : sig.owners_of_surface(from)) {
      merged_sig.set_surface(owner, to);
    }
  }

  auto t0 = std::chrono::steady_clock::now();
  std::vector<AmbiguatedEntry> ambiguated;
  ambiguated.reserve(corpus.size());
  for (const auto& entry : corpus) {
    try {
      ambiguated.push_back(ambiguate(entry, spec, sig));
    } catch (const Error& e) {
      report.entry_errors.push_back(entry.id + ": " + e.what());
    }
  }
  std::sort(report.entry_errors.begin(), report.entry_errors.end());
  if (report.entry_errors.size() * 2 > corpus.size()) {
    std::string msg = "more than half of the corpus failed validation:";
    for (const auto& e : report.entry_errors) msg += "\n  " + e;
    throw ValidationError(msg);
  }
  report.elapsed_ambiguate = seconds_since(t0);

  std::vector<size_t> train_idx, test_idx;
  if (config.test_ratio == 0.0) {
    train_idx.resize(ambiguated.size());
    for (size_t i = 0; i < ambiguated.size(); ++i) train_idx[i] = i;
    test_idx = train_idx;
  } else {
    split_corpus(ambiguated, config.test_ratio, config.seed, train_idx, test_idx);
  }
  report.train_size = train_idx.size();
  report.test_size = test_idx.size();

  t0 = std::chrono::steady_clock::now();
  std::vector<RawTree> train_trees;
  train_trees.reserve(train_idx.size());
  for (size_t i : train_idx) train_trees.push_back(binarize_tree(ambiguated[i].train_tree));
  Grammar grammar = induce(train_trees, config.max_unary_chain);
  report.elapsed_induce = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  std::vector<EntryOutcome> outcomes(test_idx.size());
  size_t jobs = config.jobs == 0 ? std::thread::hardware_concurrency() : config.jobs;
  jobs = std::max<size_t>(1, std::min(jobs, test_idx.size()));
  if (jobs <= 1) {
    for (size_t i = 0; i < test_idx.size(); ++i) {
      outcomes[i] = evaluate_entry(ambiguated[test_idx[i]], grammar, merged_sig, config);
    }
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (size_t w = 0; w < jobs; ++w) {
      pool.emplace_back([&]() {
        for (;;) {
          size_t i = next.fetch_add(1);
          if (i >= test_idx.size()) return;
          outcomes[i] = evaluate_entry(ambiguated[test_idx[i]], grammar, merged_sig, config);
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  report.elapsed_evaluate = seconds_since(t0);

  size_t total_items = 0, total_hook_inv = 0, total_hook_rej = 0;
  for (size_t r = 1; r <= config.k; ++r) report.topk_hits[r] = 0;
  for (const auto& o : outcomes) {
    total_items += o.stats.items_created;
    total_hook_inv += o.stats.hook_invocations;
    total_hook_rej += o.stats.hook_rejections;
    switch (o.kind) {
      case EntryOutcome::Kind::Hit:
        for (size_t r = o.first_hit_rank; r <= config.k; ++r) ++report.topk_hits[r];
        break;
      case EntryOutcome::Kind::Miss:
        ++report.misses;
        break;
      case EntryOutcome::Kind::RepairAmbiguous:
        ++report.repair_ambiguous;
        break;
      case EntryOutcome::Kind::NoParse:
        ++report.no_parse;
        break;
      case EntryOutcome::Kind::Oov:
        ++report.oov_failures;
        break;
    }
  }
  if (!outcomes.empty()) {
    report.mean_chart_items = static_cast<double>(total_items) / outcomes.size();
    report.mean_hook_invocations = static_cast<double>(total_hook_inv) / outcomes.size();
    report.mean_hook_rejections = static_cast<double>(total_hook_rej) / outcomes.size();
  }
  return report;
}

namespace {

void json_kv(std::string& out, const std::string& key, const std::string& value,
             bool& first) {
  if (!first) out += ',';
  first = false;
  out += '"';
  out += key;
  out += "\":";
  out += value;
}

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

}  // namespace

std::string report_json(const Report& r) {
  // Keys emitted in sorted order at every level; floats fixed to six
  // decimals; no timings (wall clock is not deterministic).
  std::string out = "{";
  bool f0 = true;

  {
    std::string chart = "{";
    bool f = true;
    json_kv(chart, "mean_hook_invocations", format_fixed6(r.mean_hook_invocations), f);
    json_kv(chart, "mean_hook_rejections", format_fixed6(r.mean_hook_rejections), f);
    json_kv(chart, "mean_items", format_fixed6(r.mean_chart_items), f);
    chart += '}';
    json_kv(out, "chart", chart, f0);
  }
  {
    std::string cfg = "{";
    bool f = true;
    std::string casts = "[";
    bool fc = true;
    for (const auto& c : r.spec.cast_set) {
      if (!fc) casts += ',';
      fc = false;
      casts += json_string(c);
    }
    casts += ']';
    json_kv(cfg, "cast_set", casts, f);
    json_kv(cfg, "hook", json_string(r.config.hook == HookKind::Typed ? "typed" : "none"), f);
    json_kv(cfg, "k", std::to_string(r.config.k), f);
    json_kv(cfg, "max_unary_chain", std::to_string(r.config.max_unary_chain), f);
    std::string merges = "{";
    bool fm = true;
    for (const auto& [from, to] : r.spec.merge_map) {
      if (!fm) merges += ',';
      fm = false;
      merges += json_string(from);
      merges += ':';
      merges += json_string(to);
    }
    merges += '}';
    json_kv(cfg, "merge_map", merges, f);
    json_kv(cfg, "oov_policy",
            json_string(r.config.oov == OovPolicy::Fail ? "fail" : "open_class"), f);
    json_kv(cfg, "require_gold_root", r.config.require_gold_root ? "true" : "false", f);
    json_kv(cfg, "seed", std::to_string(r.config.seed), f);
    json_kv(cfg, "test_ratio", format_fixed6(r.config.test_ratio), f);
    cfg += '}';
    json_kv(out, "config", cfg, f0);
  }
  {
    std::string corpus = "{";
    bool f = true;
    json_kv(corpus, "test", std::to_string(r.test_size), f);
    json_kv(corpus, "train", std::to_string(r.train_size), f);
    corpus += '}';
    json_kv(out, "corpus", corpus, f0);
  }
  {
    std::string counts = "{";
    bool f = true;
    size_t hits = r.topk_hits.count(r.k) ? r.topk_hits.at(r.k) : 0;
    json_kv(counts, "hits", std::to_string(hits), f);
    json_kv(counts, "misses", std::to_string(r.misses), f);
    json_kv(counts, "no_parse", std::to_string(r.no_parse), f);
    json_kv(counts, "oov_failures", std::to_string(r.oov_failures), f);
    json_kv(counts, "repair_ambiguous", std::to_string(r.repair_ambiguous), f);
    counts += '}';
    json_kv(out, "counts", counts, f0);
  }
  if (!r.entry_errors.empty()) {
    std::string errs = "[";
    bool f = true;
    for (const auto& e : r.entry_errors) {
      if (!f) errs += ',';
      f = false;
      errs += json_string(e);
    }
    errs += ']';
    json_kv(out, "entry_errors", errs, f0);
  }
  json_kv(out, "top1", format_fixed6(r.top1()), f0);
  {
    std::string topk = "{";
    bool f = true;
    for (const auto& [rank, hits] : r.topk_hits) {
      json_kv(topk, std::to_string(rank),
              format_fixed6(r.test_size == 0
                                ? 0.0
                                : static_cast<double>(hits) / static_cast<double>(r.test_size)),
              f);
    }
    topk += '}';
    json_kv(out, "topk", topk, f0);
  }
  out += "}\n";
  return out;
}

std::string report_table(const Report& r) {
  std::string out;
  auto line = [&](const std::string& key, const std::string& value) {
    out += "  ";
    out += key;
    for (size_t i = key.size(); i < 24; ++i) out += ' ';
    out += value;
    out += '\n';
  };
  out += "experiment report\n";
  line("train / test", std::to_string(r.train_size) + " / " + std::to_string(r.test_size));
  line("hook", r.config.hook == HookKind::Typed ? "typed" : "none");
  line("require_gold_root", r.config.require_gold_root ? "yes" : "no");
  line("top-1", format_fixed6(r.top1()));
  for (const auto& [rank, hits] : r.topk_hits) {
    if (rank == 1) continue;
    line("top-" + std::to_string(rank),
         format_fixed6(r.test_size == 0 ? 0.0
                                        : static_cast<double>(hits) /
                                              static_cast<double>(r.test_size)));
  }
  line("misses", std::to_string(r.misses));
  line("repair_ambiguous", std::to_string(r.repair_ambiguous));
  line("no_parse", std::to_string(r.no_parse));
  line("oov_failures", std::to_string(r.oov_failures));
  line("mean chart items", format_fixed6(r.mean_chart_items));
  line("mean hook invocations", format_fixed6(r.mean_hook_invocations));
  line("mean hook rejections", format_fixed6(r.mean_hook_rejections));
  line("ambiguate [s]", format_fixed6(r.elapsed_ambiguate));
  line("induce [s]", format_fixed6(r.elapsed_induce));
  line("evaluate [s]", format_fixed6(r.elapsed_evaluate));
  if (!r.entry_errors.empty()) {
    line("excluded entries", std::to_string(r.entry_errors.size()));
  }
  return out;
}

}  // namespace recast
