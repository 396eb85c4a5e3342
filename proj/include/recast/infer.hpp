#ifndef RECAST_INFER_HPP
#define RECAST_INFER_HPP

#include <optional>
#include <string>

#include "recast/signature.hpp"
#include "recast/term.hpp"
#include "recast/type.hpp"

namespace recast {

// Principal type of `term` under `sig`, in canonical rendering.
// Throws UnknownSymbolError / TypeError. Constants instantiate their
// schemes at the leaves; Abs binders are monomorphic.
TypeExpr infer(const TermPtr& term, const Signature& sig);

// Non-throwing variant for hot paths.
std::optional<TypeExpr> try_infer(const TermPtr& term, const Signature& sig);

enum class RepairStatus { Ok, NoRepair, Ambiguous };

struct RepairOutcome {
  RepairStatus status = RepairStatus::NoRepair;
  TermPtr term;          // repaired term when Ok
  TypeExpr type;         // its principal type (canonical)
  size_t insertions = 0;
  std::string first, second;  // two candidate renderings when Ambiguous
};

// Inserts declared coercions so the result type-checks, wrapping at most
// one coercion around the argument or the function of each application
// edge (plus one around the whole term). Insertion count is minimized;
// among equal-count repairs the argument side is preferred over the
// function side and coercions are tried in declaration order. Two minimal
// repairs touching different edge sets are reported as ambiguous.
//
// When `expected` is non-null the result's type must additionally unify
// with *expected (the repair is directed at that type).
RepairOutcome repair_coercions(const TermPtr& term, const Signature& sig,
                               const TypeExpr* expected = nullptr);

// Throwing wrapper per the library surface: returns the repaired term,
// raising NoRepairError / AmbiguousRepairError.
TermPtr insert_coercions(const TermPtr& term, const Signature& sig,
                         const TypeExpr* expected = nullptr);

}  // namespace recast

#endif
