#ifndef RECAST_GRAMMAR_HPP
#define RECAST_GRAMMAR_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "recast/sexpr.hpp"

namespace recast {

// Marker splicing rank->2 chains into the original rank-n node.
inline constexpr char kIntermediateMarker = '|';

struct Rule {
  std::string lhs;
  std::vector<std::string> rhs;  // length 1 or 2
  size_t count = 0;
  double logprob = 0.0;  // ln(count / sum of counts sharing lhs)
};

enum class OovPolicy { Fail, OpenClass };

// Relative-frequency PCFG over binarized trees, with bottom-up rule
// indexes and a precomputed unary closure.
class Grammar {
 public:
  struct ClosureEntry {
    std::string to;       // reachable label
    double logprob;       // best chain score
    std::vector<size_t> chain;  // rule indexes along the best chain
  };

  const std::vector<Rule>& rules() const { return rules_; }
  const std::set<std::string>& nonterminals() const { return nonterminals_; }
  const std::set<std::string>& terminals() const { return terminals_; }

  bool is_nonterminal(const std::string& s) const { return nonterminals_.count(s) > 0; }
  bool is_terminal(const std::string& s) const { return terminals_.count(s) > 0; }

  // Binary rules by (rhs[0], rhs[1]); unary rules (emissions and
  // nonterminal chains alike) by rhs[0]. Values are indexes into rules().
  const std::vector<size_t>* binary_by_rhs(const std::string& left,
                                           const std::string& right) const;
  const std::vector<size_t>* unary_by_rhs(const std::string& sym) const;

  // Best unary nonterminal chains from each label (non-empty chains only;
  // the empty chain is implicit and always scores 0).
  const std::vector<ClosureEntry>* closure_from(const std::string& from) const;

  size_t max_unary_chain() const { return max_unary_chain_; }
  bool lexicalized() const { return lexicalized_; }
  void set_lexicalized(bool v) { lexicalized_ = v; }

  // Preterminals that emitted a hapax in training; open-class OOV
  // candidates.
  const std::set<std::string>& hapax_preterminals() const { return hapax_preterminals_; }

  friend Grammar induce(const std::vector<RawTree>& trees, size_t max_unary_chain);
  friend Grammar load_grammar_text(const std::string& text, size_t max_unary_chain);

  // Line-oriented dump, sorted by (lhs, rhs) lexicographically:
  //   lhs -> rhs1 [rhs2] <TAB> count <TAB> logprob
  std::string dump() const;

 private:
  void index_rules();
  void compute_closure();

  std::vector<Rule> rules_;
  std::set<std::string> nonterminals_;
  std::set<std::string> terminals_;
  std::set<std::string> hapax_preterminals_;
  std::map<std::pair<std::string, std::string>, std::vector<size_t>> binary_index_;
  std::map<std::string, std::vector<size_t>> unary_index_;
  std::map<std::string, std::vector<ClosureEntry>> closure_;
  size_t max_unary_chain_ = 3;
  bool lexicalized_ = false;
};

// Right-branching binarization with exact intermediate labels
// `lhs|c1.c2...` carrying the remaining child-label sequence.
RawTree binarize_tree(const RawTree& tree);

// Exact inverse on binarize_tree's image; splices out every marker node.
// Throws MalformedIntermediateError on a marker in non-chain position.
RawTree debinarize_tree(const RawTree& tree);

// Relative-frequency induction over binarized trees.
Grammar induce(const std::vector<RawTree>& trees, size_t max_unary_chain = 3);

Grammar load_grammar_text(const std::string& text, size_t max_unary_chain = 3);
Grammar load_grammar(const std::string& path, size_t max_unary_chain = 3);

}  // namespace recast

#endif
