#ifndef RECAST_TREEBANK_HPP
#define RECAST_TREEBANK_HPP

#include <optional>
#include <string>
#include <vector>

#include "recast/sexpr.hpp"
#include "recast/signature.hpp"
#include "recast/term.hpp"

namespace recast {

// Label of the distinguished binder preterminal in the Abs encoding.
inline constexpr const char* kBindLabel = "BIND";

struct TreebankEntry {
  std::string id;
  std::vector<std::string> tokens;  // == tree_yield(gold_tree)
  RawTree gold_tree;
  TermPtr gold_term;  // null when the tree is not term-shaped
};

// Labels the application tree of a well-typed term. Internal (App/Abs)
// nodes carry the canonical type of the subterm, suffixed with `@<head>`
// when lexicalized (head = head constant of the function spine); every
// Const/Var leaf becomes a preterminal labeled with its type over a
// single surface-token leaf. Abs is encoded as
//   (<type> (BIND <var>) <body>).
RawTree label_with_types(const TermPtr& term, const Signature& sig, bool lexicalized);

// Inverse of label_with_types on its image. Internal nodes must be binary
// (App) or the Abs encoding; preterminals resolve their token against the
// signature. When several symbols share a surface token, the preterminal
// label picks the owner whose type matches, then the owner reachable by a
// single declared coercion, then fails with UnknownSymbolError.
TermPtr term_of_labeled_tree(const RawTree& tree, const Signature& sig);

// Strips the lexical `@head` decoration from a label.
std::string strip_lex(const std::string& label);

// One entry per line: `id<TAB>s-expression[<TAB>tokens...]`. Blank lines
// and `#` comments ignored. The optional third column declares the yield
// and is validated against the tree. Gold terms are re-derived via
// term_of_labeled_tree where the tree is term-shaped.
std::vector<TreebankEntry> load_treebank(const std::string& path, const Signature& sig);
std::vector<TreebankEntry> parse_treebank(const std::string& text, const Signature& sig);

std::string format_treebank(const std::vector<TreebankEntry>& entries);

}  // namespace recast

#endif
