#ifndef RECAST_EXPERIMENT_HPP
#define RECAST_EXPERIMENT_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "recast/chart.hpp"
#include "recast/grammar.hpp"
#include "recast/signature.hpp"
#include "recast/treebank.hpp"

namespace recast {

struct AmbiguationSpec {
  std::set<std::string> cast_set;                  // constants to erase
  std::map<std::string, std::string> merge_map;    // surface -> surface
};

struct AmbiguatedEntry {
  std::string id;
  std::vector<std::string> tokens;  // merged yield of the spliced tree
  RawTree train_tree;               // cast-spliced, leaves renamed
  TermPtr gold_term;                // original term, casts intact
  std::string gold_root_label;      // train_tree root label
};

// Splices every cast application out of the labeled tree (the cast node's
// label transfers onto the promoted argument subtree root), renames leaf
// tokens through merge_map, and keeps the gold term untouched for scoring.
AmbiguatedEntry ambiguate(const TreebankEntry& entry, const AmbiguationSpec& spec,
                          const Signature& sig);

// Deterministic seeded split; |test| = round(ratio * n), at least one
// entry on each side, original order preserved within the halves.
void split_corpus(const std::vector<AmbiguatedEntry>& entries, double test_ratio,
                  uint64_t seed, std::vector<size_t>& train_idx,
                  std::vector<size_t>& test_idx);

enum class HookKind { None, Typed };

struct ExperimentConfig {
  size_t k = 1;
  uint64_t seed = 7;
  double test_ratio = 0.2;  // 0 re-parses the training corpus
  HookKind hook = HookKind::Typed;
  bool require_gold_root = true;
  size_t max_unary_chain = 3;
  OovPolicy oov = OovPolicy::Fail;
  size_t beam = 0;
  size_t jobs = 0;  // 0 = hardware concurrency
};

struct Report {
  size_t train_size = 0;
  size_t test_size = 0;
  size_t k = 1;
  // topk_hits[r] = entries whose first correct candidate ranks <= r.
  std::map<size_t, size_t> topk_hits;
  size_t oov_failures = 0;
  size_t no_parse = 0;
  size_t repair_ambiguous = 0;
  size_t misses = 0;
  double mean_chart_items = 0.0;
  double mean_hook_invocations = 0.0;
  double mean_hook_rejections = 0.0;
  // Wall times; reported in the human-readable table only, never in the
  // canonical JSON (byte-identical reruns).
  double elapsed_ambiguate = 0.0;
  double elapsed_induce = 0.0;
  double elapsed_evaluate = 0.0;
  std::vector<std::string> entry_errors;  // excluded entries, sorted by id

  ExperimentConfig config;
  AmbiguationSpec spec;

  double top1() const { return fraction(1); }
  double fraction(size_t r) const {
    auto it = topk_hits.find(r);
    return test_size == 0 ? 0.0
                          : static_cast<double>(it == topk_hits.end() ? 0 : it->second) /
                                static_cast<double>(test_size);
  }
};

Report run_experiment(const std::vector<TreebankEntry>& corpus, const AmbiguationSpec& spec,
                      const Signature& sig, const ExperimentConfig& config);

// Canonical JSON: sorted keys, fixed 6-decimal floats, no whitespace
// variation; byte-identical for identical inputs and seed.
std::string report_json(const Report& report);

// Aligned human-readable summary, including wall times.
std::string report_table(const Report& report);

}  // namespace recast

#endif
