#ifndef RECAST_CHART_HPP
#define RECAST_CHART_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "recast/grammar.hpp"
#include "recast/sexpr.hpp"
#include "recast/signature.hpp"

namespace recast {

// Judges candidate constituents before they enter the chart. Must be pure
// with respect to parse state: it sees only the debinarized candidate
// subtree and its span.
class PruningHook {
 public:
  virtual ~PruningHook() = default;
  virtual bool accept(const RawTree& candidate, size_t start, size_t end) = 0;

  size_t invocations = 0;
  size_t rejections = 0;
};

// Accepts a constituent iff its reconstruction under the signature admits
// a coercion repair directed at the constituent's label type (lexical
// suffix stripped). Verdicts are memoized by rendered subtree.
class TypedPruningHook : public PruningHook {
 public:
  explicit TypedPruningHook(const Signature& sig) : sig_(sig) {}
  bool accept(const RawTree& candidate, size_t start, size_t end) override;

 private:
  const Signature& sig_;
  std::map<std::string, bool> memo_;
};

std::unique_ptr<TypedPruningHook> typed_pruning_hook(const Signature& sig);

enum class ParseStatus { Parsed, NoParse, OovFailure };

struct ScoredTree {
  RawTree tree;   // debinarized, original labels
  double logprob; // sum of rule logprobs
};

struct ChartStats {
  size_t items_created = 0;
  size_t items_pruned = 0;
  size_t hook_invocations = 0;
  size_t hook_rejections = 0;
};

struct ParseResult {
  ParseStatus status = ParseStatus::NoParse;
  std::vector<ScoredTree> trees;  // best first, deterministic tie order
  ChartStats stats;
  double elapsed_seconds = 0.0;
};

struct ParseOptions {
  size_t k = 1;
  PruningHook* hook = nullptr;
  OovPolicy oov = OovPolicy::Fail;
  size_t beam = 0;  // 0 = exact; otherwise per-cell beam width (approximate)
  // When set, only parses whose root label equals this complete the chart.
  const std::string* require_root = nullptr;
};

ParseResult parse_chart(const Grammar& grammar, const std::vector<std::string>& tokens,
                        const ParseOptions& options);

// Maximum-probability parse; Viterbi over the whole chart.
ParseResult cyk_viterbi(const Grammar& grammar, const std::vector<std::string>& tokens,
                        PruningHook* hook = nullptr);

// Exact k-best parses, globally ranked as exhaustive enumeration.
ParseResult cyk_kbest(const Grammar& grammar, const std::vector<std::string>& tokens,
                      size_t k, PruningHook* hook = nullptr);

}  // namespace recast

#endif
