#include "recast/infer.hpp"

#include <functional>
#include <set>

#include "recast/error.hpp"

namespace recast {

namespace {

struct InferState {
  const Signature& sig;
  Substitution subst;
  unsigned long fresh = 0;
  std::map<std::string, std::vector<TypeExpr>> bound;  // Abs binder stack

  TypeExpr lookup_leaf(const Term& t) {
    if (t.kind == Term::Kind::Var) {
      auto it = bound.find(t.name);
      if (it != bound.end() && !it->second.empty()) return it->second.back();
      if (const TypeExpr* vt = sig.find_var(t.name)) return *vt;
      throw UnknownSymbolError("undeclared variable: " + t.name);
    }
    if (const TypeScheme* sch = sig.find_const(t.name)) return sch->instantiate(fresh);
    throw UnknownSymbolError("undeclared constant: " + t.name);
  }

  TypeExpr w(const Term& t) {
    switch (t.kind) {
      case Term::Kind::Const:
      case Term::Kind::Var:
        return lookup_leaf(t);
      case Term::Kind::App: {
        TypeExpr tf = w(*t.fun);
        TypeExpr ta = w(*t.arg);
        TypeExpr beta = fresh_var(fresh);
        try {
          unify_into(subst, tf, TypeExpr::fun(ta, beta));
        } catch (const UnifyError& e) {
          throw TypeError(std::string("ill-typed application of ") +
                          render_term(t.fun) + " to " + render_term(t.arg) + ": " +
                          e.what());
        }
        return subst.apply(beta);
      }
      case Term::Kind::Abs: {
        TypeExpr alpha = fresh_var(fresh);
        bound[t.name].push_back(alpha);
        TypeExpr tb = w(*t.body);
        bound[t.name].pop_back();
        return TypeExpr::fun(subst.apply(alpha), tb);
      }
    }
    throw TypeError("unreachable term kind");
  }
};

}  // namespace

TypeExpr infer(const TermPtr& term, const Signature& sig) {
  InferState st{sig};
  TypeExpr t = st.w(*term);
  return canonicalize(st.subst.apply(t));
}

std::optional<TypeExpr> try_infer(const TermPtr& term, const Signature& sig) {
  try {
    return infer(term, sig);
  } catch (const Error&) {
    return std::nullopt;
  }
}

namespace {

// Bounded search over at-most-one-coercion-per-application-edge insertion
// assignments, iterative-deepened on total insertion count. Substitution
// state is snapshotted around every choice point so polymorphic constants
// thread constraints across subtrees.
struct RepairSearch {
  const Signature& sig;
  const TypeExpr* expected;
  Substitution subst;
  unsigned long fresh = 0;
  std::map<std::string, std::vector<TypeExpr>> bound;

  struct Solution {
    TermPtr term;
    TypeExpr type;
    size_t insertions;
    std::set<int> edges;  // App-node preorder ids (+ -1 for the root wrap)
  };
  std::vector<Solution> solutions;
  size_t budget = 0;

  TypeExpr leaf_type(const Term& t) {
    if (t.kind == Term::Kind::Var) {
      auto it = bound.find(t.name);
      if (it != bound.end() && !it->second.empty()) return it->second.back();
      if (const TypeExpr* vt = sig.find_var(t.name)) return *vt;
      throw UnknownSymbolError("undeclared variable: " + t.name);
    }
    if (const TypeScheme* sch = sig.find_const(t.name)) return sch->instantiate(fresh);
    throw UnknownSymbolError("undeclared constant: " + t.name);
  }

  // Enumerates elaborations of `t`; `next_edge` numbers App nodes in
  // preorder. `cont` receives (term', type, used, edges) and returns the
  // edge counter after the subtree.
  using Cont = std::function<void(const TermPtr&, const TypeExpr&, size_t,
                                  std::set<int>&)>;

  static int count_apps(const Term& t) {
    switch (t.kind) {
      case Term::Kind::App:
        return 1 + count_apps(*t.fun) + count_apps(*t.arg);
      case Term::Kind::Abs:
        return count_apps(*t.body);
      default:
        return 0;
    }
  }

  void visit(const TermPtr& t, int edge_id, size_t used, std::set<int>& edges,
             const Cont& cont) {
    switch (t->kind) {
      case Term::Kind::Const:
      case Term::Kind::Var: {
        TypeExpr ty = leaf_type(*t);
        cont(t, ty, used, edges);
        return;
      }
      case Term::Kind::Abs: {
        TypeExpr alpha = fresh_var(fresh);
        bound[t->name].push_back(alpha);
        visit(t->body, edge_id, used, edges,
              [&](const TermPtr& b, const TypeExpr& tb, size_t u, std::set<int>& es) {
                TermPtr out = (b == t->body) ? t : Term::abs(t->name, b);
                cont(out, TypeExpr::fun(subst.apply(alpha), tb), u, es);
              });
        bound[t->name].pop_back();
        return;
      }
      case Term::Kind::App:
        break;
    }

    const int my_edge = edge_id;
    const int fun_apps = count_apps(*t->fun);
    visit(t->fun, my_edge + 1, used, edges,
          [&](const TermPtr& f, const TypeExpr& tf, size_t u1, std::set<int>& es1) {
            visit(t->arg, my_edge + 1 + fun_apps, u1, es1,
                  [&](const TermPtr& a, const TypeExpr& ta, size_t u2, std::set<int>& es2) {
                    apply_edge(t, my_edge, f, tf, a, ta, u2, es2, cont);
                  });
          });
  }

  void apply_edge(const TermPtr& orig, int edge, const TermPtr& f, const TypeExpr& tf,
                  const TermPtr& a, const TypeExpr& ta, size_t used,
                  std::set<int>& edges, const Cont& cont) {
    // no insertion
    {
      Substitution snap = subst;
      TypeExpr beta = fresh_var(fresh);
      if (try_unify_into(subst, tf, TypeExpr::fun(ta, beta))) {
        TermPtr out = (f == orig->fun && a == orig->arg) ? orig : Term::app(f, a);
        cont(out, subst.apply(beta), used, edges);
      }
      subst = snap;
    }
    if (used >= budget) return;
    // argument-side coercion
    for (const auto& k : sig.coercions()) {
      Substitution snap = subst;
      TypeExpr beta = fresh_var(fresh);
      if (try_unify_into(subst, ta, k.source) &&
          try_unify_into(subst, tf, TypeExpr::fun(k.target, beta))) {
        edges.insert(edge);
        TermPtr out = Term::app(f, Term::app(Term::constant(k.name), a));
        cont(out, subst.apply(beta), used + 1, edges);
        edges.erase(edge);
      }
      subst = snap;
    }
    // function-side coercion
    for (const auto& k : sig.coercions()) {
      if (k.target.is_var || k.target.name != "fun" || k.target.args.size() != 2) continue;
      Substitution snap = subst;
      TypeExpr beta = fresh_var(fresh);
      if (try_unify_into(subst, tf, k.source) &&
          try_unify_into(subst, TypeExpr::fun(ta, beta), k.target)) {
        edges.insert(edge);
        TermPtr out = Term::app(Term::app(Term::constant(k.name), f), a);
        cont(out, subst.apply(beta), used + 1, edges);
        edges.erase(edge);
      }
      subst = snap;
    }
  }

  void finish(const TermPtr& t, const TypeExpr& ty, size_t used, std::set<int>& edges) {
    // exact-budget solutions only; smaller counts were found in earlier sweeps
    if (!expected) {
      if (used == budget) {
        solutions.push_back({t, canonicalize(subst.apply(ty)), used, edges});
      }
      maybe_root_wrap(t, ty, used, edges, nullptr);
      return;
    }
    {
      Substitution snap = subst;
      if (try_unify_into(subst, ty, *expected) && used == budget) {
        solutions.push_back({t, canonicalize(subst.apply(ty)), used, edges});
      }
      subst = snap;
    }
    maybe_root_wrap(t, ty, used, edges, expected);
  }

  void maybe_root_wrap(const TermPtr& t, const TypeExpr& ty, size_t used,
                       std::set<int>& edges, const TypeExpr* want) {
    if (used >= budget) return;
    for (const auto& k : sig.coercions()) {
      Substitution snap = subst;
      if (try_unify_into(subst, ty, k.source) &&
          (!want || try_unify_into(subst, k.target, *want))) {
        if (used + 1 == budget) {
          edges.insert(-1);
          solutions.push_back({Term::app(Term::constant(k.name), t),
                               canonicalize(subst.apply(k.target)), used + 1, edges});
          edges.erase(-1);
        }
      }
      subst = snap;
    }
  }

  // Undirected mode must not count a root wrap as a solution when the bare
  // term already type-checks at a smaller budget; exactness of `used ==
  // budget` in finish() handles that. Root wrap in undirected mode is only
  // reachable when the bare term fails, i.e. never (a wrap needs a typed
  // term below it). It therefore only matters in the directed mode.
};

}  // namespace

RepairOutcome repair_coercions(const TermPtr& term, const Signature& sig,
                               const TypeExpr* expected) {
  const size_t max_budget = static_cast<size_t>(RepairSearch::count_apps(*term)) + 1;
  for (size_t b = 0; b <= max_budget; ++b) {
    RepairSearch search{sig, expected};
    search.budget = b;
    std::set<int> edges;
    try {
      search.visit(term, 0, 0, edges,
                   [&](const TermPtr& t, const TypeExpr& ty, size_t used,
                       std::set<int>& es) { search.finish(t, ty, used, es); });
    } catch (const UnknownSymbolError&) {
      throw;
    }
    if (search.solutions.empty()) continue;

    // Distinct edge sets at the minimal count mean the repair is
    // under-determined; same-set candidates are already ordered by the
    // enumeration (arg before fun, declaration order of coercions).
    const auto& first = search.solutions.front();
    for (const auto& sol : search.solutions) {
      if (sol.edges != first.edges) {
        RepairOutcome out;
        out.status = RepairStatus::Ambiguous;
        out.insertions = b;
        out.first = render_term(first.term);
        out.second = render_term(sol.term);
        return out;
      }
    }
    RepairOutcome out;
    out.status = RepairStatus::Ok;
    out.term = first.term;
    out.type = first.type;
    out.insertions = b;
    return out;
  }
  RepairOutcome out;
  out.status = RepairStatus::NoRepair;
  return out;
}

TermPtr insert_coercions(const TermPtr& term, const Signature& sig,
                         const TypeExpr* expected) {
  RepairOutcome out = repair_coercions(term, sig, expected);
  switch (out.status) {
    case RepairStatus::Ok:
      return out.term;
    case RepairStatus::Ambiguous:
      throw AmbiguousRepairError("ambiguous coercion repair of " + render_term(term),
                                 out.first, out.second);
    case RepairStatus::NoRepair:
      break;
  }
  throw NoRepairError("no coercion repair of " + render_term(term) +
                      (expected ? " toward " + render_type(*expected) : std::string()));
}

}  // namespace recast
