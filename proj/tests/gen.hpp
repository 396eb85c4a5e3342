#ifndef RECAST_TESTS_GEN_HPP
#define RECAST_TESTS_GEN_HPP

// Deterministic random generators for property tests. Everything is
// seeded explicitly so failures reproduce.

#include <cstdint>
#include <string>
#include <vector>

#include "recast/grammar.hpp"
#include "recast/sexpr.hpp"
#include "recast/signature.hpp"
#include "recast/term.hpp"
#include "recast/type.hpp"

namespace recast::testgen {

struct Rng {
  uint64_t state;
  explicit Rng(uint64_t seed) : state(seed ^ 0x9e3779b97f4a7c15ULL) {}
  uint64_t next() {
    // splitmix64
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  size_t below(size_t n) { return n == 0 ? 0 : static_cast<size_t>(next() % n); }
  double unit() { return static_cast<double>(next() >> 11) / 9007199254740992.0; }
  bool chance(double p) { return unit() < p; }
};

// Random simple type over atoms {real, num, bool} and constructors
// fun/2, list/1, with variables ?a..?c.
inline TypeExpr random_type(Rng& rng, size_t depth) {
  static const char* atoms[] = {"real", "num", "bool"};
  static const char* vars[] = {"a", "b", "c"};
  if (depth == 0 || rng.chance(0.45)) {
    if (rng.chance(0.4)) return TypeExpr::var(vars[rng.below(3)]);
    return TypeExpr::ctor(atoms[rng.below(3)]);
  }
  if (rng.chance(0.3)) {
    return TypeExpr::ctor("list", {random_type(rng, depth - 1)});
  }
  return TypeExpr::fun(random_type(rng, depth - 1), random_type(rng, depth - 1));
}

// Fixture signature used across the formal-core tests; mirrors a small
// trigonometric corpus with casts.
inline Signature fixture_signature() {
  Signature sig;
  sig.declare_const("sin", parse_type("(fun real real)"));
  sig.declare_const("cos", parse_type("(fun real real)"));
  sig.declare_const("plus_r", parse_type("(fun real (fun real real))"));
  sig.declare_const("amp", parse_type("(fun num real)"));
  sig.declare_const("cpx", parse_type("(fun real complex)"));
  sig.declare_const("zero", parse_type("num"));
  sig.declare_const("suc", parse_type("(fun num num)"));
  sig.declare_const("eq", parse_type("(fun ?a (fun ?a bool))"));
  sig.declare_const("c_i", parse_type("complex"));
  sig.declare_var("x", parse_type("real"));
  sig.declare_var("y", parse_type("real"));
  sig.declare_var("k", parse_type("num"));
  sig.declare_coercion("amp");
  sig.declare_coercion("cpx");
  return sig;
}

// Random well-typed term over the fixture signature: goal-directed
// construction toward a requested ground type.
inline TermPtr random_typed_term(Rng& rng, const std::string& want, size_t depth) {
  auto leaf_of = [&](const std::string& ty) -> TermPtr {
    if (ty == "real") {
      switch (rng.below(3)) {
        case 0: return Term::variable("x");
        case 1: return Term::variable("y");
        default: return Term::app(Term::constant("amp"), Term::constant("zero"));
      }
    }
    if (ty == "num") {
      return rng.chance(0.5) ? Term::constant("zero") : Term::variable("k");
    }
    return Term::constant("c_i");  // complex
  };
  if (depth == 0) return leaf_of(want);
  if (want == "real") {
    switch (rng.below(4)) {
      case 0:
        return Term::app(Term::constant(rng.chance(0.5) ? "sin" : "cos"),
                         random_typed_term(rng, "real", depth - 1));
      case 1:
        return Term::app(Term::app(Term::constant("plus_r"),
                                   random_typed_term(rng, "real", depth - 1)),
                         random_typed_term(rng, "real", depth - 1));
      case 2:
        return Term::app(Term::constant("amp"), random_typed_term(rng, "num", depth - 1));
      default:
        return leaf_of("real");
    }
  }
  if (want == "num") {
    if (rng.chance(0.5)) {
      return Term::app(Term::constant("suc"), random_typed_term(rng, "num", depth - 1));
    }
    return leaf_of("num");
  }
  if (want == "bool") {
    std::string inner = rng.chance(0.5) ? "real" : "num";
    return Term::app(Term::app(Term::constant("eq"), random_typed_term(rng, inner, depth - 1)),
                     random_typed_term(rng, inner, depth - 1));
  }
  if (want == "complex") {
    if (rng.chance(0.5)) {
      return Term::app(Term::constant("cpx"), random_typed_term(rng, "real", depth - 1));
    }
    return leaf_of("complex");
  }
  return leaf_of("real");
}

// Random tree with letter labels; leaves lowercase tokens, internal nodes
// uppercase labels (never containing the binarization marker).
inline RawTree random_tree(Rng& rng, size_t depth, size_t max_children = 4) {
  static const char* leaves[] = {"a", "b", "c", "d", "e"};
  static const char* labels[] = {"S", "A", "B", "C"};
  if (depth == 0 || rng.chance(0.35)) return RawTree::leaf(leaves[rng.below(5)]);
  size_t n = 1 + rng.below(max_children);
  std::vector<RawTree> kids;
  kids.reserve(n);
  for (size_t i = 0; i < n; ++i) kids.push_back(random_tree(rng, depth - 1, max_children));
  return RawTree::node(labels[rng.below(4)], std::move(kids));
}

struct RandomGrammarSpec {
  size_t max_rules = 20;
  size_t max_nonterminals = 6;
  size_t max_terminals = 4;
  bool with_unary = true;
};

// Random normalized PCFG. Guarantees every nonterminal has at least one
// rule and per-lhs probabilities summing to one.
inline Grammar random_grammar(Rng& rng, const RandomGrammarSpec& spec) {
  std::vector<std::string> nts, ts;
  size_t n_nt = 2 + rng.below(spec.max_nonterminals - 1);
  size_t n_t = 1 + rng.below(spec.max_terminals);
  for (size_t i = 0; i < n_nt; ++i) nts.push_back("N" + std::to_string(i));
  for (size_t i = 0; i < n_t; ++i) ts.push_back(std::string(1, static_cast<char>('a' + i)));

  // Draw raw rules, then normalize counts per lhs into a dump and load it.
  struct Draft {
    std::string lhs;
    std::vector<std::string> rhs;
    size_t count;
  };
  std::vector<Draft> drafts;
  auto add = [&](std::string lhs, std::vector<std::string> rhs) {
    for (auto& d : drafts) {
      if (d.lhs == lhs && d.rhs == rhs) return;
    }
    drafts.push_back({std::move(lhs), std::move(rhs), 1 + rng.below(9)});
  };
  // Every nonterminal emits at least one terminal so parses terminate.
  for (const auto& nt : nts) add(nt, {ts[rng.below(ts.size())]});
  size_t extra = rng.below(spec.max_rules - nts.size() + 1);
  for (size_t i = 0; i < extra && drafts.size() < spec.max_rules; ++i) {
    const std::string& lhs = nts[rng.below(nts.size())];
    double roll = rng.unit();
    if (roll < 0.55) {
      add(lhs, {nts[rng.below(nts.size())], nts[rng.below(nts.size())]});
    } else if (roll < 0.75 && spec.with_unary) {
      std::string rhs = nts[rng.below(nts.size())];
      if (rhs != lhs || true) add(lhs, {rhs});  // self-loops allowed
    } else {
      add(lhs, {ts[rng.below(ts.size())]});
    }
  }

  std::map<std::string, size_t> totals;
  for (const auto& d : drafts) totals[d.lhs] += d.count;
  std::string dump;
  std::sort(drafts.begin(), drafts.end(), [](const Draft& a, const Draft& b) {
    if (a.lhs != b.lhs) return a.lhs < b.lhs;
    return a.rhs < b.rhs;
  });
  for (const auto& d : drafts) {
    dump += d.lhs + " ->";
    for (const auto& s : d.rhs) dump += " " + s;
    dump += "\t" + std::to_string(d.count) + "\t";
    dump += format_double(std::log(static_cast<double>(d.count) / totals[d.lhs]));
    dump += "\n";
  }
  return load_grammar_text(dump);
}

// Random sentence likely to parse: expand a random nonterminal top-down,
// bounded by max_len; falls back to random terminals when expansion
// overshoots.
inline std::vector<std::string> random_sentence(Rng& rng, const Grammar& g, size_t max_len) {
  std::vector<std::string> nts(g.nonterminals().begin(), g.nonterminals().end());
  std::vector<std::string> ts(g.terminals().begin(), g.terminals().end());
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::vector<std::string> out;
    bool ok = true;
    std::function<void(const std::string&, size_t)> expand = [&](const std::string& sym,
                                                                 size_t depth) {
      if (!ok || out.size() > max_len) {
        ok = false;
        return;
      }
      if (g.is_terminal(sym)) {
        out.push_back(sym);
        return;
      }
      std::vector<const Rule*> options;
      for (const auto& r : g.rules()) {
        if (r.lhs == sym) options.push_back(&r);
      }
      if (options.empty() || depth > 12) {
        ok = false;
        return;
      }
      // Beyond a modest depth prefer emissions to terminate.
      if (depth > 6) {
        std::vector<const Rule*> emitting;
        for (const Rule* r : options) {
          if (r->rhs.size() == 1 && g.is_terminal(r->rhs[0])) emitting.push_back(r);
        }
        if (!emitting.empty()) options = emitting;
      }
      const Rule* pick = options[rng.below(options.size())];
      for (const auto& s : pick->rhs) expand(s, depth + 1);
    };
    expand(nts[rng.below(nts.size())], 0);
    if (ok && !out.empty() && out.size() <= max_len) return out;
  }
  // Fallback: short random terminal string.
  std::vector<std::string> out;
  size_t n = 1 + rng.below(max_len);
  for (size_t i = 0; i < n; ++i) out.push_back(ts[rng.below(ts.size())]);
  return out;
}

}  // namespace recast::testgen

#endif
