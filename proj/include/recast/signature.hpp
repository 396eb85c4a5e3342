#ifndef RECAST_SIGNATURE_HPP
#define RECAST_SIGNATURE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "recast/type.hpp"

namespace recast {

struct Coercion {
  std::string name;   // constant implementing the coercion
  TypeExpr source;    // ground
  TypeExpr target;    // ground
};

// Declared constants, free variables and coercions. Immutable after load;
// safe to share across parser workers.
class Signature {
 public:
  void declare_const(const std::string& name, const TypeExpr& type);
  void declare_var(const std::string& name, const TypeExpr& type);
  void declare_coercion(const std::string& const_name);

  const TypeScheme* find_const(const std::string& name) const;
  const TypeExpr* find_var(const std::string& name) const;
  bool is_coercion(const std::string& name) const;

  // Declaration order; used for deterministic tie-breaking.
  const std::vector<Coercion>& coercions() const { return coercions_; }

  // Surface form of a symbol (identity unless remapped). Used when a
  // corpus merges several symbols onto one surface token.
  const std::string& surface_of(const std::string& name) const;
  void set_surface(const std::string& name, const std::string& surface);

  // All declared symbols (constants first, then variables, each in
  // declaration order) whose surface equals `surface`.
  std::vector<std::string> owners_of_surface(const std::string& surface) const;

  const std::map<std::string, TypeScheme>& consts() const { return consts_; }
  const std::map<std::string, TypeExpr>& vars() const { return vars_; }

  // Parses the line-oriented signature file:
  //   const <name> : <type>
  //   var <name> : <type>
  //   coercion <name>
  // `#` starts a comment; blank lines ignored; UTF-8.
  static Signature load(const std::string& path);
  static Signature parse(const std::string& text);

 private:
  void check_name(const std::string& name) const;
  void check_arities(const TypeExpr& t, const std::string& context);

  std::map<std::string, TypeScheme> consts_;
  std::map<std::string, TypeExpr> vars_;
  std::vector<std::string> const_order_;
  std::vector<std::string> var_order_;
  std::vector<Coercion> coercions_;
  std::map<std::string, size_t> ctor_arity_;
  std::map<std::string, std::string> surface_;          // name -> surface
  std::map<std::string, std::vector<std::string>> by_surface_;
};

}  // namespace recast

#endif
