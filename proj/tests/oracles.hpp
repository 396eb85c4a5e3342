#ifndef RECAST_TESTS_ORACLES_HPP
#define RECAST_TESTS_ORACLES_HPP

// Independent oracles used by the property and acceptance suites. These
// are deliberately implemented on different routes than the library:
// constraint collection + worklist solving for typing, exhaustive
// enumeration for parsing, repair and unary closure.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "recast/error.hpp"
#include "recast/grammar.hpp"
#include "recast/infer.hpp"
#include "recast/sexpr.hpp"
#include "recast/signature.hpp"
#include "recast/term.hpp"
#include "recast/type.hpp"

namespace recast::oracle {

// ---------------------------------------------------------------------
// Algorithm W oracle: collect equations, then solve them by worklist
// decomposition over a binding map.
class WOracle {
 public:
  explicit WOracle(const Signature& sig) : sig_(sig) {}

  std::optional<TypeExpr> principal(const TermPtr& term) {
    eqs_.clear();
    bindings_.clear();
    fresh_ = 0;
    TypeExpr ty;
    try {
      ty = collect(*term);
    } catch (const Error&) {
      return std::nullopt;
    }
    if (!solve()) return std::nullopt;
    return canonicalize(resolve(ty));
  }

 private:
  TypeExpr collect(const Term& t) {
    switch (t.kind) {
      case Term::Kind::Const: {
        const TypeScheme* sch = sig_.find_const(t.name);
        if (!sch) throw UnknownSymbolError(t.name);
        return sch->instantiate(fresh_);
      }
      case Term::Kind::Var: {
        auto it = bound_.find(t.name);
        if (it != bound_.end() && !it->second.empty()) return it->second.back();
        if (const TypeExpr* vt = sig_.find_var(t.name)) return *vt;
        throw UnknownSymbolError(t.name);
      }
      case Term::Kind::App: {
        TypeExpr tf = collect(*t.fun);
        TypeExpr ta = collect(*t.arg);
        TypeExpr beta = fresh_var(fresh_);
        eqs_.push_back({tf, TypeExpr::fun(ta, beta)});
        return beta;
      }
      case Term::Kind::Abs: {
        TypeExpr alpha = fresh_var(fresh_);
        bound_[t.name].push_back(alpha);
        TypeExpr tb = collect(*t.body);
        bound_[t.name].pop_back();
        return TypeExpr::fun(alpha, tb);
      }
    }
    throw TypeError("unreachable");
  }

  TypeExpr walk(TypeExpr t) const {
    while (t.is_var) {
      auto it = bindings_.find(t.name);
      if (it == bindings_.end()) return t;
      t = it->second;
    }
    return t;
  }

  TypeExpr resolve(const TypeExpr& t) const {
    TypeExpr w = walk(t);
    if (w.is_var) return w;
    TypeExpr out = TypeExpr::ctor(w.name);
    for (const auto& a : w.args) out.args.push_back(resolve(a));
    return out;
  }

  bool occurs(const std::string& v, const TypeExpr& t) const {
    TypeExpr w = walk(t);
    if (w.is_var) return w.name == v;
    for (const auto& a : w.args) {
      if (occurs(v, a)) return true;
    }
    return false;
  }

  bool solve() {
    std::vector<std::pair<TypeExpr, TypeExpr>> wl = eqs_;
    while (!wl.empty()) {
      auto [a, b] = wl.back();
      wl.pop_back();
      TypeExpr wa = walk(a), wb = walk(b);
      if (wa.is_var && wb.is_var && wa.name == wb.name) continue;
      if (wa.is_var) {
        if (occurs(wa.name, wb)) return false;
        bindings_.emplace(wa.name, wb);
        continue;
      }
      if (wb.is_var) {
        if (occurs(wb.name, wa)) return false;
        bindings_.emplace(wb.name, wa);
        continue;
      }
      if (wa.name != wb.name || wa.args.size() != wb.args.size()) return false;
      for (size_t i = 0; i < wa.args.size(); ++i) wl.push_back({wa.args[i], wb.args[i]});
    }
    return true;
  }

  const Signature& sig_;
  unsigned long fresh_ = 0;
  std::vector<std::pair<TypeExpr, TypeExpr>> eqs_;
  std::map<std::string, TypeExpr> bindings_;
  std::map<std::string, std::vector<TypeExpr>> bound_;
};

// ---------------------------------------------------------------------
// Brute-force coercion repair: enumerate every <=1-per-edge insertion
// assignment, type-check each candidate with the (independently tested)
// infer, and reduce per the stated preference order.
struct RepairOracleResult {
  RepairStatus status = RepairStatus::NoRepair;
  TermPtr term;
  size_t insertions = 0;
  std::vector<TermPtr> minimal;  // all minimal candidates, enumeration order
};

namespace detail {

struct EdgeOption {
  int edge;           // App preorder id; -1 = root wrap
  int side;           // 0 = none, 1 = arg, 2 = fun
  std::string coercion;
};

inline int count_apps(const Term& t) {
  switch (t.kind) {
    case Term::Kind::App:
      return 1 + count_apps(*t.fun) + count_apps(*t.arg);
    case Term::Kind::Abs:
      return count_apps(*t.body);
    default:
      return 0;
  }
}

inline TermPtr apply_assignment(const TermPtr& t, const std::map<int, EdgeOption>& chosen,
                                int& next_id) {
  switch (t->kind) {
    case Term::Kind::Const:
    case Term::Kind::Var:
      return t;
    case Term::Kind::Abs: {
      TermPtr body = apply_assignment(t->body, chosen, next_id);
      return Term::abs(t->name, std::move(body));
    }
    case Term::Kind::App:
      break;
  }
  const int my_id = next_id++;
  TermPtr f = apply_assignment(t->fun, chosen, next_id);
  TermPtr a = apply_assignment(t->arg, chosen, next_id);
  auto it = chosen.find(my_id);
  if (it == chosen.end()) return Term::app(std::move(f), std::move(a));
  const EdgeOption& opt = it->second;
  if (opt.side == 1) {
    return Term::app(std::move(f), Term::app(Term::constant(opt.coercion), std::move(a)));
  }
  return Term::app(Term::app(Term::constant(opt.coercion), std::move(f)), std::move(a));
}

}  // namespace detail

inline RepairOracleResult repair_oracle(const TermPtr& term, const Signature& sig,
                                        const TypeExpr* expected) {
  using detail::EdgeOption;
  const int apps = detail::count_apps(*term);
  auto coercion_rank = [&](const std::string& name) {
    int i = 0;
    for (const auto& k : sig.coercions()) {
      if (k.name == name) return i;
      ++i;
    }
    return i;
  };

  // Options per application edge: none, then arg-side coercions in
  // declaration order, then fun-side ones. Edge ids are App preorder ids;
  // -1 is the virtual root edge.
  std::vector<std::vector<EdgeOption>> per_edge;
  for (int e = 0; e < apps; ++e) {
    std::vector<EdgeOption> opts{{e, 0, ""}};
    for (const auto& k : sig.coercions()) opts.push_back({e, 1, k.name});
    for (const auto& k : sig.coercions()) opts.push_back({e, 2, k.name});
    per_edge.push_back(std::move(opts));
  }
  std::vector<std::string> root_opts{""};
  for (const auto& k : sig.coercions()) root_opts.push_back(k.name);

  struct Candidate {
    TermPtr term;
    size_t insertions;
    std::set<int> edges;
    std::vector<int> key;  // (edge, side, coercion rank) triples, edge asc
  };
  std::vector<Candidate> successes;

  std::vector<size_t> odo(per_edge.size(), 0);
  for (;;) {
    for (size_t root_i = 0; root_i < root_opts.size(); ++root_i) {
      const std::string& root = root_opts[root_i];
      std::map<int, EdgeOption> chosen;
      Candidate cand;
      cand.insertions = 0;
      if (!root.empty()) {
        cand.edges.insert(-1);
        cand.key.push_back(-1);
        cand.key.push_back(1);
        cand.key.push_back(coercion_rank(root));
        ++cand.insertions;
      }
      for (size_t e = 0; e < per_edge.size(); ++e) {
        const EdgeOption& o = per_edge[e][odo[e]];
        if (o.side != 0) {
          chosen[static_cast<int>(e)] = o;
          cand.edges.insert(static_cast<int>(e));
          cand.key.push_back(static_cast<int>(e));
          cand.key.push_back(o.side);
          cand.key.push_back(coercion_rank(o.coercion));
          ++cand.insertions;
        }
      }
      int next_id = 0;
      TermPtr built = detail::apply_assignment(term, chosen, next_id);
      if (!root.empty()) built = Term::app(Term::constant(root), built);
      auto ty = try_infer(built, sig);
      if (!ty) continue;
      if (expected) {
        Substitution s;
        if (!try_unify_into(s, *ty, *expected)) continue;
      }
      cand.term = built;
      successes.push_back(std::move(cand));
    }
    size_t e = 0;
    for (; e < odo.size(); ++e) {
      if (++odo[e] < per_edge[e].size()) break;
      odo[e] = 0;
    }
    if (e == odo.size()) break;
  }

  RepairOracleResult out;
  if (successes.empty()) return out;
  size_t best = SIZE_MAX;
  for (const auto& c : successes) best = std::min(best, c.insertions);
  std::set<std::set<int>> edge_sets;
  std::vector<const Candidate*> minimal;
  for (const auto& c : successes) {
    if (c.insertions == best) {
      edge_sets.insert(c.edges);
      minimal.push_back(&c);
      out.minimal.push_back(c.term);
    }
  }
  out.insertions = best;
  if (edge_sets.size() > 1) {
    out.status = RepairStatus::Ambiguous;
    return out;
  }
  std::sort(minimal.begin(), minimal.end(),
            [](const Candidate* a, const Candidate* b) { return a->key < b->key; });
  out.status = RepairStatus::Ok;
  out.term = minimal.front()->term;
  return out;
}

// ---------------------------------------------------------------------
// Exhaustive parse enumeration with bounded unary runs.
struct OracleParse {
  RawTree tree;
  double lp;
};

class ParseOracle {
 public:
  ParseOracle(const Grammar& g, std::vector<std::string> tokens, size_t max_derivs = 200000)
      : g_(g), tokens_(std::move(tokens)), cap_(g.max_unary_chain()), limit_(max_derivs) {}

  // All complete parses (any nonterminal root), unsorted. Returns nullopt
  // when enumeration exceeds the safety limit.
  std::optional<std::vector<OracleParse>> all_parses() {
    memo_.clear();
    total_ = 0;
    overflow_ = false;
    std::vector<OracleParse> out;
    for (const auto& nt : g_.nonterminals()) {
      const auto& ds = derive(0, tokens_.size(), nt, cap_);
      if (overflow_) return std::nullopt;
      out.insert(out.end(), ds.begin(), ds.end());
    }
    return out;
  }

 private:
  using Key = std::tuple<size_t, size_t, std::string, size_t>;

  const std::vector<OracleParse>& derive(size_t i, size_t j, const std::string& sym,
                                         size_t unary_left) {
    Key key{i, j, sym, unary_left};
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::vector<OracleParse> out;
    if (g_.is_terminal(sym)) {
      if (j - i == 1 && tokens_[i] == sym) out.push_back({RawTree::leaf(sym), 0.0});
    } else {
      for (const auto& r : g_.rules()) {
        if (r.lhs != sym) continue;
        if (r.rhs.size() == 1) {
          if (unary_left == 0) continue;
          // A terminal rhs ends the unary run; a nonterminal rhs consumes
          // one step of it.
          size_t next_budget = g_.is_terminal(r.rhs[0]) ? cap_ : unary_left - 1;
          const auto& subs = derive(i, j, r.rhs[0], next_budget);
          for (const auto& s : subs) {
            out.push_back({RawTree::node(r.lhs, {s.tree}), s.lp + r.logprob});
          }
        } else {
          for (size_t s = i + 1; s < j; ++s) {
            const auto& ls = derive(i, s, r.rhs[0], cap_);
            if (ls.empty()) continue;
            const auto& rs = derive(s, j, r.rhs[1], cap_);
            for (const auto& l : ls) {
              for (const auto& rr : rs) {
                out.push_back(
                    {RawTree::node(r.lhs, {l.tree, rr.tree}), l.lp + rr.lp + r.logprob});
              }
            }
          }
        }
        total_ += out.size();
        if (total_ > limit_) {
          overflow_ = true;
          break;
        }
      }
    }
    auto [mit, _] = memo_.emplace(std::move(key), std::move(out));
    return mit->second;
  }

  const Grammar& g_;
  std::vector<std::string> tokens_;
  size_t cap_;
  size_t limit_;
  size_t total_ = 0;
  bool overflow_ = false;
  std::map<Key, std::vector<OracleParse>> memo_;
};

// Ranked view: (lp desc, rendered tree asc).
inline std::vector<OracleParse> ranked(std::vector<OracleParse> parses) {
  std::sort(parses.begin(), parses.end(), [](const OracleParse& a, const OracleParse& b) {
    if (std::fabs(a.lp - b.lp) > 1e-12) return a.lp > b.lp;
    return render_sexpr(a.tree) < render_sexpr(b.tree);
  });
  return parses;
}

// ---------------------------------------------------------------------
// Exhaustive unary-chain enumeration for closure checking.
struct ChainResult {
  double lp;
  std::vector<size_t> rules;
};

inline std::map<std::pair<std::string, std::string>, ChainResult> closure_oracle(
    const Grammar& g, size_t cap) {
  std::map<std::pair<std::string, std::string>, ChainResult> best;
  struct Edge {
    std::string from, to;
    double lp;
    size_t rule;
  };
  std::vector<Edge> edges;
  for (size_t i = 0; i < g.rules().size(); ++i) {
    const Rule& r = g.rules()[i];
    if (r.rhs.size() == 1 && g.is_nonterminal(r.rhs[0])) {
      edges.push_back({r.lhs, r.rhs[0], r.logprob, i});
    }
  }
  std::function<void(const std::string&, const std::string&, double, std::vector<size_t>&)>
      dfs = [&](const std::string& origin, const std::string& at, double lp,
                std::vector<size_t>& chain) {
        if (!chain.empty()) {
          auto key = std::make_pair(origin, at);
          auto it = best.find(key);
          bool better = it == best.end() || lp > it->second.lp + 1e-12 ||
                        (lp > it->second.lp - 1e-12 &&
                         (chain.size() < it->second.rules.size() ||
                          (chain.size() == it->second.rules.size() && chain < it->second.rules)));
          if (better) best[key] = {lp, chain};
        }
        if (chain.size() >= cap) return;
        for (const auto& e : edges) {
          if (e.from != at) continue;
          chain.push_back(e.rule);
          dfs(origin, e.to, lp + e.lp, chain);
          chain.pop_back();
        }
      };
  for (const auto& nt : g.nonterminals()) {
    std::vector<size_t> chain;
    dfs(nt, nt, 0.0, chain);
  }
  // Reflexive chains never beat the empty chain.
  for (auto it = best.begin(); it != best.end();) {
    if (it->first.first == it->first.second && it->second.lp <= 1e-12) {
      it = best.erase(it);
    } else {
      ++it;
    }
  }
  return best;
}

}  // namespace recast::oracle

#endif
