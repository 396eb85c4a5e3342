#ifndef RECAST_BASELINES_HPP
#define RECAST_BASELINES_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace recast {

// Most-frequent-sense disambiguation over (token, sense) pairs.
struct SenseTable {
  // Per token: (sense, count) sorted by count desc, then sense asc.
  std::map<std::string, std::vector<std::pair<std::string, size_t>>> senses;
  std::string global_most_frequent;
};

enum class WsdFallback { Global, Abstain };

SenseTable wsd_train(const std::vector<std::pair<std::string, std::string>>& pairs);

// Seen token: its majority sense. Unseen: the corpus-global majority under
// Global, nullopt under Abstain.
std::optional<std::string> wsd_predict(const SenseTable& table, const std::string& token,
                                       WsdFallback fallback);

struct WsdScore {
  size_t attempted = 0;
  size_t correct = 0;
  size_t total = 0;
  // accuracy = correct / attempted; unset when nothing was attempted.
  std::optional<double> accuracy;
  double coverage = 0.0;  // attempted / total
};

WsdScore wsd_evaluate(const SenseTable& table,
                      const std::vector<std::pair<std::string, std::string>>& test,
                      WsdFallback fallback);

// TSV `token<TAB>senseId` per line; `#` comments and blank lines ignored.
std::vector<std::pair<std::string, std::string>> load_wsd_corpus(const std::string& path);

struct NormalizeConfig {
  // Math span delimiters: (open, close) pairs, matched leftmost-first.
  std::vector<std::pair<std::string, std::string>> math_delims = {{"$", "$"},
                                                                  {"\\(", "\\)"}};
  // Reference keywords; a keyword followed by one non-space word becomes <R>.
  std::vector<std::string> ref_keywords = {"Theorem", "Lemma", "Definition",
                                           "Corollary", "Axiom"};
};

// Maps math spans to <M>, reference phrases to <R>, lowercases everything
// else, splits punctuation into standalone tokens and collapses
// whitespace. Idempotent on its own output. An unterminated math span runs
// to the end of the sentence and bumps *unterminated_warnings.
std::string normalize_sentence(const std::string& sentence, const NormalizeConfig& config,
                               size_t* unterminated_warnings = nullptr);

struct PatternStats {
  // (pattern, count) sorted by count desc, then pattern asc.
  std::vector<std::pair<std::string, size_t>> patterns;
  size_t total_sentences = 0;
  // coverage[i] = share of sentences covered by the top i+1 patterns.
  std::vector<double> coverage;
};

PatternStats pattern_stats(const std::vector<std::string>& sentences,
                           const NormalizeConfig& config);

// TSV `count<TAB>pattern` in rank order.
std::string pattern_stats_tsv(const PatternStats& stats);

// Canonical JSON summary with the cumulative coverage curve.
std::string pattern_stats_json(const PatternStats& stats);

}  // namespace recast

#endif
