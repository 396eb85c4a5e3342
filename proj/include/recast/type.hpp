#ifndef RECAST_TYPE_HPP
#define RECAST_TYPE_HPP

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace recast {

// A simple type: either a variable (`?a`) or a constructor application
// (`real`, `(fun real real)`). Constructors of arity 0 are atoms.
struct TypeExpr {
  bool is_var = false;
  std::string name;
  std::vector<TypeExpr> args;  // empty for variables and atoms

  static TypeExpr var(std::string n) {
    TypeExpr t;
    t.is_var = true;
    t.name = std::move(n);
    return t;
  }
  static TypeExpr ctor(std::string n, std::vector<TypeExpr> a = {}) {
    TypeExpr t;
    t.name = std::move(n);
    t.args = std::move(a);
    return t;
  }
  static TypeExpr fun(TypeExpr dom, TypeExpr cod) {
    return ctor("fun", {std::move(dom), std::move(cod)});
  }

  bool operator==(const TypeExpr& o) const {
    return is_var == o.is_var && name == o.name && args == o.args;
  }
  bool operator!=(const TypeExpr& o) const { return !(*this == o); }

  bool is_ground() const;
  bool contains_var(const std::string& v) const;
  void collect_vars(std::vector<std::string>& order, std::set<std::string>& seen) const;
};

// Renders without variable renaming: `(fun real (fun ?a real))`.
std::string render_type(const TypeExpr& t);

// Canonical rendering: variables renamed ?a, ?b, ... in first-occurrence
// (leftmost-outermost) order. Byte-equality of canonical renderings is
// type equality up to renaming.
std::string canonical_type(const TypeExpr& t);

// The canonically renamed tree itself.
TypeExpr canonicalize(const TypeExpr& t);

bool canonical_equal(const TypeExpr& a, const TypeExpr& b);

// Parses the fully parenthesized prefix form. Variables start with `?`.
TypeExpr parse_type(std::string_view text);

// Idempotent substitution from type-variable names to types.
class Substitution {
 public:
  Substitution() = default;

  const TypeExpr* lookup(const std::string& v) const;
  bool empty() const { return map_.empty(); }
  size_t size() const { return map_.size(); }

  TypeExpr apply(const TypeExpr& t) const;

  // Binds v := t (t is applied under the current substitution first) and
  // re-applies the binding to all existing images, keeping idempotence.
  // Throws OccursCheckError when v occurs in t.
  void bind(const std::string& v, const TypeExpr& t);

  const std::map<std::string, TypeExpr>& entries() const { return map_; }

 private:
  std::map<std::string, TypeExpr> map_;
};

// Most general unifier of t1 and t2. Throws MismatchError / OccursCheckError.
Substitution unify(const TypeExpr& t1, const TypeExpr& t2);

// Extends s so that s(t1) == s(t2); same errors as unify.
void unify_into(Substitution& s, const TypeExpr& t1, const TypeExpr& t2);

// Non-throwing variant; returns false on Mismatch/OccursCheck and leaves
// s unspecified in that case (callers snapshot beforehand).
bool try_unify_into(Substitution& s, const TypeExpr& t1, const TypeExpr& t2);

// A type scheme: body quantified over `quantified`. Instantiation renames
// quantified variables to fresh ones drawn from the supplied counter.
struct TypeScheme {
  std::set<std::string> quantified;
  TypeExpr body;

  // Generalizes over every variable occurring in t.
  static TypeScheme over_all_vars(const TypeExpr& t);

  TypeExpr instantiate(unsigned long& fresh_counter) const;
};

// Fresh inference variables are named `?%N`; `%` never appears in user
// type syntax, so freshness is structural.
TypeExpr fresh_var(unsigned long& counter);

}  // namespace recast

#endif
