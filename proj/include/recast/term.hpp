#ifndef RECAST_TERM_HPP
#define RECAST_TERM_HPP

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace recast {

// Application-tree term language: constants, variables, application and
// (monomorphic) abstraction. Terms are immutable and shared via Ptr;
// ill-typed terms are representable, `infer` judges them.
struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  enum class Kind { Const, Var, App, Abs };

  Kind kind;
  std::string name;       // Const/Var name, Abs bound variable
  TermPtr fun, arg;       // App children
  TermPtr body;           // Abs body

  static TermPtr constant(std::string n);
  static TermPtr variable(std::string n);
  static TermPtr app(TermPtr f, TermPtr a);
  static TermPtr abs(std::string bound, TermPtr body);
};

// Structural equality up to consistent renaming of Abs-bound variables;
// free names are compared literally.
bool alpha_equal(const TermPtr& a, const TermPtr& b);

// Compact prefix rendering for diagnostics and test oracles:
//   (plus_r x (& zero)) ; (\x. (sin x)) for abstraction.
std::string render_term(const TermPtr& t);

// Left-to-right sequence of Const/Var surface occurrences; Abs contributes
// its bound variable name before the body, mirroring the labeled-tree leaf
// order.
std::vector<std::string> term_yield(const TermPtr& t);

// Removes every App(Const c, t) with c in cast_set, recursively. A bare
// cast constant outside application position is left in place and counted
// in *bare_warnings when the pointer is non-null.
TermPtr erase_casts(const TermPtr& t, const std::set<std::string>& cast_set,
                    size_t* bare_warnings = nullptr);

}  // namespace recast

#endif
