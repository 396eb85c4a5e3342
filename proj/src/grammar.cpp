#include "recast/grammar.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "recast/error.hpp"
#include "recast/text.hpp"

namespace recast {

namespace {

bool is_intermediate(const std::string& label) {
  return label.find(kIntermediateMarker) != std::string::npos;
}

RawTree binarize_rec(const RawTree& t) {
  if (t.is_leaf()) return t;
  if (is_intermediate(t.label)) {
    throw MalformedIntermediateError("input label already contains '|': " + t.label);
  }
  std::vector<RawTree> kids;
  kids.reserve(t.children.size());
  for (const auto& c : t.children) kids.push_back(binarize_rec(c));
  if (kids.size() <= 2) return RawTree::node(t.label, std::move(kids));

  // Right-branching chain; each intermediate label records the exact
  // remaining child-label sequence, so debinarization is exact.
  std::vector<std::string> labels;
  for (const auto& c : t.children) labels.push_back(c.label);

  RawTree chain = std::move(kids.back());
  for (size_t i = kids.size() - 2; i >= 1; --i) {
    std::string inter = t.label;
    inter += kIntermediateMarker;
    for (size_t j = i; j < labels.size(); ++j) {
      if (j > i) inter += '.';
      inter += labels[j];
    }
    chain = RawTree::node(std::move(inter), {std::move(kids[i]), std::move(chain)});
  }
  return RawTree::node(t.label, {std::move(kids[0]), std::move(chain)});
}

void debinarize_rec(const RawTree& t, std::vector<RawTree>& out_children) {
  // Splice an intermediate node's children into the parent's list.
  for (const auto& c : t.children) {
    if (!c.is_leaf() && is_intermediate(c.label)) {
      if (&c != &t.children.back()) {
        throw MalformedIntermediateError("intermediate label '" + c.label +
                                         "' not in rightmost chain position");
      }
      debinarize_rec(c, out_children);
    } else {
      out_children.push_back(debinarize_tree(c));
    }
  }
}

}  // namespace

RawTree binarize_tree(const RawTree& tree) { return binarize_rec(tree); }

RawTree debinarize_tree(const RawTree& tree) {
  if (tree.is_leaf()) return tree;
  if (is_intermediate(tree.label)) {
    throw MalformedIntermediateError("intermediate label at subtree root: " + tree.label);
  }
  std::vector<RawTree> children;
  debinarize_rec(tree, children);
  return RawTree::node(tree.label, std::move(children));
}

const std::vector<size_t>* Grammar::binary_by_rhs(const std::string& left,
                                                  const std::string& right) const {
  auto it = binary_index_.find({left, right});
  return it == binary_index_.end() ? nullptr : &it->second;
}

const std::vector<size_t>* Grammar::unary_by_rhs(const std::string& sym) const {
  auto it = unary_index_.find(sym);
  return it == unary_index_.end() ? nullptr : &it->second;
}

const std::vector<Grammar::ClosureEntry>* Grammar::closure_from(const std::string& from) const {
  auto it = closure_.find(from);
  return it == closure_.end() ? nullptr : &it->second;
}

void Grammar::index_rules() {
  binary_index_.clear();
  unary_index_.clear();
  for (size_t i = 0; i < rules_.size(); ++i) {
    const Rule& r = rules_[i];
    if (r.rhs.size() == 2) {
      binary_index_[{r.rhs[0], r.rhs[1]}].push_back(i);
    } else {
      unary_index_[r.rhs[0]].push_back(i);
    }
  }
}

void Grammar::compute_closure() {
  closure_.clear();
  // Unary nonterminal rules only.
  struct Edge {
    std::string to;
    double lp;
    size_t rule;
  };
  std::map<std::string, std::vector<Edge>> edges;
  for (size_t i = 0; i < rules_.size(); ++i) {
    const Rule& r = rules_[i];
    if (r.rhs.size() == 1 && is_nonterminal(r.rhs[0])) {
      edges[r.lhs].push_back({r.rhs[0], r.logprob, i});
    }
  }
  if (edges.empty()) return;

  // Best chains from each source by widened Bellman-Ford over at most
  // max_unary_chain_ steps. Ties prefer shorter chains, then smaller rule
  // index sequences, for full determinism.
  for (const auto& [from, _] : edges) {
    std::map<std::string, ClosureEntry> best;
    struct Frontier {
      std::string at;
      double lp;
      std::vector<size_t> chain;
    };
    std::vector<Frontier> frontier{{from, 0.0, {}}};
    for (size_t step = 0; step < max_unary_chain_; ++step) {
      std::vector<Frontier> next;
      for (const auto& f : frontier) {
        auto eit = edges.find(f.at);
        if (eit == edges.end()) continue;
        for (const auto& e : eit->second) {
          Frontier g{e.to, f.lp + e.lp, f.chain};
          g.chain.push_back(e.rule);
          auto bit = best.find(g.at);
          bool better = false;
          if (bit == best.end()) {
            better = true;
          } else if (g.lp > bit->second.logprob + 1e-12) {
            better = true;
          } else if (g.lp > bit->second.logprob - 1e-12) {
            // tie: shorter chain, then lexicographically smaller rule ids
            if (g.chain.size() < bit->second.chain.size() ||
                (g.chain.size() == bit->second.chain.size() && g.chain < bit->second.chain)) {
              better = true;
            }
          }
          if (better) {
            best[g.at] = ClosureEntry{g.at, g.lp, g.chain};
            next.push_back(std::move(g));
          }
        }
      }
      frontier = std::move(next);
      if (frontier.empty()) break;
    }
    // The empty chain always beats any cycle back to `from` (products of
    // probabilities never exceed 1); drop reflexive entries that are not
    // strictly better than staying put.
    std::vector<ClosureEntry> out;
    for (auto& [to, entry] : best) {
      if (to == from && entry.logprob <= 0.0 + 1e-12) continue;
      out.push_back(std::move(entry));
    }
    if (!out.empty()) closure_[from] = std::move(out);
  }
}

Grammar induce(const std::vector<RawTree>& trees, size_t max_unary_chain) {
  if (trees.empty()) throw EmptyTreebankError("cannot induce a grammar from zero trees");
  if (max_unary_chain < 1) throw ConfigError("max_unary_chain must be >= 1");

  Grammar g;
  g.max_unary_chain_ = max_unary_chain;

  std::map<std::pair<std::string, std::vector<std::string>>, size_t> counts;
  std::map<std::string, size_t> lhs_totals;

  std::function<void(const RawTree&)> count = [&](const RawTree& t) {
    if (t.is_leaf()) {
      g.terminals_.insert(t.label);
      return;
    }
    if (t.children.size() > 2) {
      throw ConfigError("induce expects binarized trees; node '" + t.label + "' has " +
                        std::to_string(t.children.size()) + " children");
    }
    g.nonterminals_.insert(t.label);
    std::vector<std::string> rhs;
    for (const auto& c : t.children) rhs.push_back(c.label);
    ++counts[{t.label, rhs}];
    ++lhs_totals[t.label];
    for (const auto& c : t.children) count(c);
  };
  for (const auto& t : trees) count(t);

  for (const auto& nt : g.nonterminals_) {
    if (g.terminals_.count(nt)) {
      throw LabelClashError("symbol '" + nt + "' occurs both as leaf and internal label");
    }
  }

  for (const auto& [key, c] : counts) {
    Rule r;
    r.lhs = key.first;
    r.rhs = key.second;
    r.count = c;
    r.logprob = std::log(static_cast<double>(c) / lhs_totals[key.first]);
    g.rules_.push_back(std::move(r));
  }
  std::sort(g.rules_.begin(), g.rules_.end(), [](const Rule& a, const Rule& b) {
    if (a.lhs != b.lhs) return a.lhs < b.lhs;
    return a.rhs < b.rhs;
  });

  // Hapax emitters for the open-class OOV policy.
  for (const auto& r : g.rules_) {
    if (r.rhs.size() == 1 && r.count == 1 && !g.nonterminals_.count(r.rhs[0])) {
      g.hapax_preterminals_.insert(r.lhs);
    }
  }

  g.index_rules();
  g.compute_closure();
  return g;
}

std::string Grammar::dump() const {
  // rules_ are kept sorted by (lhs, rhs).
  std::string out;
  for (const auto& r : rules_) {
    out += quote_token(r.lhs);
    out += " ->";
    for (const auto& s : r.rhs) {
      out += ' ';
      out += quote_token(s);
    }
    out += '\t';
    out += std::to_string(r.count);
    out += '\t';
    out += format_double(r.logprob);
    out += '\n';
  }
  return out;
}

Grammar load_grammar_text(const std::string& text, size_t max_unary_chain) {
  Grammar g;
  g.max_unary_chain_ = max_unary_chain;
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;
  std::map<std::string, size_t> lhs_totals;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto tab1 = line.find('\t');
    auto tab2 = tab1 == std::string::npos ? std::string::npos : line.find('\t', tab1 + 1);
    if (tab2 == std::string::npos) {
      throw ConfigError("grammar line " + std::to_string(lineno) + ": expected two tabs");
    }
    std::vector<std::string> syms = split_quoted(line.substr(0, tab1));
    if (syms.size() < 3 || syms.size() > 4 || syms[1] != "->") {
      throw ConfigError("grammar line " + std::to_string(lineno) + ": malformed rule");
    }
    Rule r;
    r.lhs = syms[0];
    r.rhs.assign(syms.begin() + 2, syms.end());
    r.count = static_cast<size_t>(std::stoull(line.substr(tab1 + 1, tab2 - tab1 - 1)));
    r.logprob = parse_double(trim(line.substr(tab2 + 1)));
    lhs_totals[r.lhs] += r.count;
    g.nonterminals_.insert(r.lhs);
    g.rules_.push_back(std::move(r));
  }
  if (g.rules_.empty()) throw EmptyTreebankError("empty grammar dump");
  // Terminals: rhs symbols never used as lhs.
  for (const auto& r : g.rules_) {
    for (const auto& s : r.rhs) {
      if (!g.nonterminals_.count(s)) g.terminals_.insert(s);
    }
  }
  for (const auto& r : g.rules_) {
    if (r.rhs.size() == 1 && r.count == 1 && g.terminals_.count(r.rhs[0])) {
      g.hapax_preterminals_.insert(r.lhs);
    }
  }
  std::sort(g.rules_.begin(), g.rules_.end(), [](const Rule& a, const Rule& b) {
    if (a.lhs != b.lhs) return a.lhs < b.lhs;
    return a.rhs < b.rhs;
  });
  g.index_rules();
  g.compute_closure();
  return g;
}

Grammar load_grammar(const std::string& path, size_t max_unary_chain) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open grammar file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return load_grammar_text(buf.str(), max_unary_chain);
}

}  // namespace recast
