#include "recast/chart.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <functional>

#include "recast/error.hpp"
#include "recast/infer.hpp"
#include "recast/term.hpp"
#include "recast/treebank.hpp"

namespace recast {

bool TypedPruningHook::accept(const RawTree& candidate, size_t, size_t) {
  ++invocations;
  std::string label = strip_lex(candidate.label);
  if (label == kBindLabel) return true;  // binder nodes carry no term
  TypeExpr want;
  try {
    want = parse_type(label);
  } catch (const Error&) {
    return true;  // not a type label; nothing to judge
  }
  std::string key = render_sexpr(candidate);
  if (auto it = memo_.find(key); it != memo_.end()) {
    if (!it->second) ++rejections;
    return it->second;
  }
  bool ok = false;
  try {
    TermPtr term = term_of_labeled_tree(candidate, sig_);
    RepairOutcome rep = repair_coercions(term, sig_, &want);
    ok = rep.status == RepairStatus::Ok;
  } catch (const Error&) {
    ok = false;  // reconstruction failures count as rejections
  }
  memo_.emplace(std::move(key), ok);
  if (!ok) ++rejections;
  return ok;
}

std::unique_ptr<TypedPruningHook> typed_pruning_hook(const Signature& sig) {
  return std::make_unique<TypedPruningHook>(sig);
}

namespace {

constexpr double kTieSlack = 1e-12;
const double kOovLogprob = std::log(1e-6);
const double kOovComplement = std::log1p(-1e-6);

struct Deriv {
  enum class Kind { Token, Unary, Binary };
  Kind kind;
  std::string label;
  double lp = 0.0;
  // Binary
  size_t rule = 0;
  size_t split = 0;  // absolute split position
  const Deriv* left = nullptr;
  const Deriv* right = nullptr;
  // Unary: rule chain top-down; empty chain marks an open-class OOV
  // emission. child holds the subtree below.
  std::vector<size_t> chain;
  const Deriv* child = nullptr;
};

// Deterministic order below equal scores: token < unary < binary, then
// split point, then rule identity, then recursively the children.
int structural_compare(const Grammar& g, const Deriv* a, const Deriv* b) {
  if (a == b) return 0;
  if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
  switch (a->kind) {
    case Deriv::Kind::Token:
      return a->label.compare(b->label);
    case Deriv::Kind::Unary: {
      const size_t n = std::min(a->chain.size(), b->chain.size());
      for (size_t i = 0; i < n; ++i) {
        const Rule& ra = g.rules()[a->chain[i]];
        const Rule& rb = g.rules()[b->chain[i]];
        if (ra.lhs != rb.lhs) return ra.lhs < rb.lhs ? -1 : 1;
        if (ra.rhs != rb.rhs) return ra.rhs < rb.rhs ? -1 : 1;
      }
      if (a->chain.size() != b->chain.size()) {
        return a->chain.size() < b->chain.size() ? -1 : 1;
      }
      if (a->label != b->label) return a->label < b->label ? -1 : 1;
      return structural_compare(g, a->child, b->child);
    }
    case Deriv::Kind::Binary: {
      if (a->split != b->split) return a->split < b->split ? -1 : 1;
      const Rule& ra = g.rules()[a->rule];
      const Rule& rb = g.rules()[b->rule];
      if (ra.lhs != rb.lhs) return ra.lhs < rb.lhs ? -1 : 1;
      if (ra.rhs != rb.rhs) return ra.rhs < rb.rhs ? -1 : 1;
      if (int c = structural_compare(g, a->left, b->left)) return c;
      return structural_compare(g, a->right, b->right);
    }
  }
  return 0;
}

struct DerivBetter {
  const Grammar& g;
  bool operator()(const Deriv* a, const Deriv* b) const {
    if (a->lp > b->lp + kTieSlack) return true;
    if (b->lp > a->lp + kTieSlack) return false;
    return structural_compare(g, a, b) < 0;
  }
};

RawTree deriv_tree(const Grammar& g, const Deriv* d) {
  switch (d->kind) {
    case Deriv::Kind::Token:
      return RawTree::leaf(d->label);
    case Deriv::Kind::Unary: {
      RawTree below = deriv_tree(g, d->child);
      if (d->chain.empty()) {
        return RawTree::node(d->label, {std::move(below)});  // OOV emission
      }
      for (auto it = d->chain.rbegin(); it != d->chain.rend(); ++it) {
        below = RawTree::node(g.rules()[*it].lhs, {std::move(below)});
      }
      return below;
    }
    case Deriv::Kind::Binary:
      return RawTree::node(g.rules()[d->rule].lhs,
                           {deriv_tree(g, d->left), deriv_tree(g, d->right)});
  }
  return RawTree::leaf("?");
}

bool is_intermediate_label(const std::string& l) {
  return l.find(kIntermediateMarker) != std::string::npos;
}

using Cell = std::map<std::string, std::vector<const Deriv*>>;

struct Parser {
  const Grammar& g;
  const std::vector<std::string>& tokens;
  const ParseOptions& opt;
  ChartStats stats;
  std::deque<Deriv> arena;
  std::vector<Cell> cells;
  size_t n = 0;

  size_t cell_index(size_t i, size_t j) const { return i * (n + 1) + j; }

  double rule_lp(size_t idx) const {
    const Rule& r = g.rules()[idx];
    if (opt.oov == OovPolicy::OpenClass && g.hapax_preterminals().count(r.lhs)) {
      return r.logprob + kOovComplement;
    }
    return r.logprob;
  }

  const Deriv* store(Deriv d) {
    arena.push_back(std::move(d));
    return &arena.back();
  }

  // Hook judgment for original labels, then insertion into the per-label
  // k-list.
  void admit(Cell& cell, Deriv cand, size_t start, size_t end) {
    if (opt.hook && !is_intermediate_label(cand.label)) {
      RawTree original = debinarize_tree(deriv_tree(g, &cand));
      if (!opt.hook->accept(original, start, end)) {
        ++stats.items_pruned;
        return;
      }
    }
    auto& list = cell[cand.label];
    const Deriv* stored = store(std::move(cand));
    DerivBetter better{g};
    auto pos = std::lower_bound(list.begin(), list.end(), stored, better);
    list.insert(pos, stored);
    ++stats.items_created;
    if (list.size() > opt.k) {
      list.pop_back();
      ++stats.items_pruned;
    }
  }

  // All unary chains of length 1..max_unary_chain above the items present
  // before this call. Exhaustive enumeration keeps the k-best ranking
  // exact; the precomputed closure coincides with the best chain per
  // endpoint pair.
  void apply_unary_chains(Cell& cell, size_t start, size_t end) {
    std::vector<std::pair<std::string, std::vector<const Deriv*>>> base(cell.begin(),
                                                                        cell.end());
    std::vector<size_t> chain_bottom_up;
    std::function<void(const std::string&, double, const std::vector<const Deriv*>&)> grow =
        [&](const std::string& top, double chain_lp, const std::vector<const Deriv*>& derivs) {
          std::vector<size_t> chain(chain_bottom_up.rbegin(), chain_bottom_up.rend());
          for (const Deriv* d : derivs) {
            Deriv cand;
            cand.kind = Deriv::Kind::Unary;
            cand.label = top;
            cand.lp = d->lp + chain_lp;
            cand.chain = chain;
            cand.child = d;
            admit(cell, std::move(cand), start, end);
          }
          if (chain_bottom_up.size() >= g.max_unary_chain()) return;
          if (const auto* rules = g.unary_by_rhs(top)) {
            for (size_t ri : *rules) {
              chain_bottom_up.push_back(ri);
              grow(g.rules()[ri].lhs, chain_lp + rule_lp(ri), derivs);
              chain_bottom_up.pop_back();
            }
          }
        };
    for (const auto& [sym, derivs] : base) {
      if (const auto* rules = g.unary_by_rhs(sym)) {
        for (size_t ri : *rules) {
          chain_bottom_up.push_back(ri);
          grow(g.rules()[ri].lhs, rule_lp(ri), derivs);
          chain_bottom_up.pop_back();
        }
      }
    }
  }

  void apply_beam(Cell& cell) {
    if (opt.beam == 0) return;
    std::vector<const Deriv*> all;
    for (const auto& [label, list] : cell) all.insert(all.end(), list.begin(), list.end());
    if (all.size() <= opt.beam) return;
    std::sort(all.begin(), all.end(), DerivBetter{g});
    stats.items_pruned += all.size() - opt.beam;
    all.resize(opt.beam);
    Cell kept;
    for (const Deriv* d : all) kept[d->label].push_back(d);
    cell = std::move(kept);
  }

  ParseResult run() {
    auto t0 = std::chrono::steady_clock::now();
    n = tokens.size();
    if (n == 0) throw EmptyInputError("cannot parse an empty token sequence");
    if (opt.k < 1) throw InvalidKError("k must be >= 1");

    ParseResult result;
    cells.assign((n + 1) * (n + 1), {});

    bool oov = false;
    for (size_t i = 0; i < n && !oov; ++i) {
      auto& cell = cells[cell_index(i, i + 1)];
      const std::string& tok = tokens[i];
      if (!g.is_terminal(tok)) {
        if (opt.oov == OovPolicy::Fail) {
          oov = true;
          break;
        }
        Deriv leaf;
        leaf.kind = Deriv::Kind::Token;
        leaf.label = tok;
        const Deriv* stored = store(std::move(leaf));
        for (const auto& pre : g.hapax_preterminals()) {
          Deriv cand;
          cand.kind = Deriv::Kind::Unary;
          cand.label = pre;
          cand.lp = kOovLogprob;
          cand.child = stored;
          admit(cell, std::move(cand), i, i + 1);
        }
        apply_unary_chains(cell, i, i + 1);
        apply_beam(cell);
        continue;
      }
      Deriv leaf;
      leaf.kind = Deriv::Kind::Token;
      leaf.label = tok;
      cell[tok].push_back(store(std::move(leaf)));
      ++stats.items_created;
      apply_unary_chains(cell, i, i + 1);
      apply_beam(cell);
    }
    if (oov) {
      result.status = ParseStatus::OovFailure;
      finish_stats(result, t0);
      return result;
    }

    for (size_t span = 2; span <= n; ++span) {
      for (size_t i = 0; i + span <= n; ++i) {
        const size_t j = i + span;
        auto& cell = cells[cell_index(i, j)];
        for (size_t s = i + 1; s < j; ++s) {
          const auto& left_cell = cells[cell_index(i, s)];
          const auto& right_cell = cells[cell_index(s, j)];
          if (left_cell.empty() || right_cell.empty()) continue;
          for (const auto& [lsym, llist] : left_cell) {
            for (const auto& [rsym, rlist] : right_cell) {
              const auto* rules = g.binary_by_rhs(lsym, rsym);
              if (!rules) continue;
              for (size_t ri : *rules) {
                for (const Deriv* ld : llist) {
                  for (const Deriv* rd : rlist) {
                    Deriv cand;
                    cand.kind = Deriv::Kind::Binary;
                    cand.label = g.rules()[ri].lhs;
                    cand.lp = rule_lp(ri) + ld->lp + rd->lp;
                    cand.rule = ri;
                    cand.split = s;
                    cand.left = ld;
                    cand.right = rd;
                    admit(cell, std::move(cand), i, j);
                  }
                }
              }
            }
          }
        }
        apply_unary_chains(cell, i, j);
        apply_beam(cell);
      }
    }

    // Any nonterminal spanning (0, n) completes a parse, optionally
    // restricted to a required root label.
    const auto& top = cells[cell_index(0, n)];
    std::vector<const Deriv*> finals;
    for (const auto& [label, list] : top) {
      if (!g.is_nonterminal(label)) continue;
      if (is_intermediate_label(label)) continue;
      if (opt.require_root && label != *opt.require_root) continue;
      finals.insert(finals.end(), list.begin(), list.end());
    }
    std::sort(finals.begin(), finals.end(), DerivBetter{g});
    if (finals.size() > opt.k) finals.resize(opt.k);

    if (finals.empty()) {
      result.status = ParseStatus::NoParse;
    } else {
      result.status = ParseStatus::Parsed;
      for (const Deriv* d : finals) {
        RawTree t = debinarize_tree(deriv_tree(g, d));
        result.trees.push_back(ScoredTree{std::move(t), d->lp});
      }
    }
    finish_stats(result, t0);
    return result;
  }

  void finish_stats(ParseResult& result, std::chrono::steady_clock::time_point t0) {
    result.stats = stats;
    if (opt.hook) {
      result.stats.hook_invocations = opt.hook->invocations;
      result.stats.hook_rejections = opt.hook->rejections;
    }
    result.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

}  // namespace

ParseResult parse_chart(const Grammar& grammar, const std::vector<std::string>& tokens,
                        const ParseOptions& options) {
  Parser p{grammar, tokens, options};
  return p.run();
}

ParseResult cyk_viterbi(const Grammar& grammar, const std::vector<std::string>& tokens,
                        PruningHook* hook) {
  ParseOptions opt;
  opt.k = 1;
  opt.hook = hook;
  return parse_chart(grammar, tokens, opt);
}

ParseResult cyk_kbest(const Grammar& grammar, const std::vector<std::string>& tokens,
                      size_t k, PruningHook* hook) {
  if (k < 1) throw InvalidKError("k must be >= 1");
  ParseOptions opt;
  opt.k = k;
  opt.hook = hook;
  return parse_chart(grammar, tokens, opt);
}

}  // namespace recast
