#include "recast/treebank.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "recast/error.hpp"
#include "recast/infer.hpp"
#include "recast/text.hpp"

namespace recast {

std::string strip_lex(const std::string& label) {
  auto at = label.find('@');
  return at == std::string::npos ? label : label.substr(0, at);
}

namespace {

// Single inference pass that builds the labeled tree skeleton and records
// each node's raw type in completion order; labels are stamped afterwards
// under the final substitution, so every label reflects the whole-term
// typing.
struct Labeler {
  const Signature& sig;
  bool lexicalized;
  Substitution subst;
  unsigned long fresh = 0;
  std::map<std::string, std::vector<TypeExpr>> bound;

  struct Rec {
    TypeExpr type;
    std::string head;
    bool internal;
  };
  std::vector<Rec> recs;

  RawTree walk(const Term& t, TypeExpr& type_out, std::string& head_out) {
    switch (t.kind) {
      case Term::Kind::Const: {
        const TypeScheme* sch = sig.find_const(t.name);
        if (!sch) throw UnknownSymbolError("undeclared constant: " + t.name);
        type_out = sch->instantiate(fresh);
        head_out = t.name;
        recs.push_back({type_out, head_out, false});
        return RawTree::node("", {RawTree::leaf(t.name)});
      }
      case Term::Kind::Var: {
        auto it = bound.find(t.name);
        if (it != bound.end() && !it->second.empty()) {
          type_out = it->second.back();
        } else if (const TypeExpr* vt = sig.find_var(t.name)) {
          type_out = *vt;
        } else {
          throw UnknownSymbolError("undeclared variable: " + t.name);
        }
        head_out = t.name;
        recs.push_back({type_out, head_out, false});
        return RawTree::node("", {RawTree::leaf(t.name)});
      }
      case Term::Kind::App: {
        TypeExpr tf, ta;
        std::string hf, ha;
        RawTree fun_tree = walk(*t.fun, tf, hf);
        RawTree arg_tree = walk(*t.arg, ta, ha);
        TypeExpr beta = fresh_var(fresh);
        try {
          unify_into(subst, tf, TypeExpr::fun(ta, beta));
        } catch (const UnifyError& e) {
          throw TypeError("ill-typed application (" + render_term(t.fun) + " " +
                          render_term(t.arg) + "): " + e.what());
        }
        type_out = beta;
        head_out = hf;
        recs.push_back({type_out, head_out, true});
        return RawTree::node("", {std::move(fun_tree), std::move(arg_tree)});
      }
      case Term::Kind::Abs: {
        TypeExpr alpha = fresh_var(fresh);
        bound[t.name].push_back(alpha);
        TypeExpr tb;
        std::string hb;
        RawTree body_tree = walk(*t.body, tb, hb);
        bound[t.name].pop_back();
        type_out = TypeExpr::fun(alpha, tb);
        head_out = hb;
        recs.push_back({type_out, head_out, true});
        RawTree binder = RawTree::node(kBindLabel, {RawTree::leaf(t.name)});
        return RawTree::node("", {std::move(binder), std::move(body_tree)});
      }
    }
    throw TypeError("unreachable term kind");
  }

  // Mirrors walk()'s completion order.
  void stamp(RawTree& node, const Term& t, size_t& next) {
    switch (t.kind) {
      case Term::Kind::Const:
      case Term::Kind::Var:
        break;
      case Term::Kind::App:
        stamp(node.children[0], *t.fun, next);
        stamp(node.children[1], *t.arg, next);
        break;
      case Term::Kind::Abs:
        stamp(node.children[1], *t.body, next);
        break;
    }
    const Rec& r = recs.at(next++);
    std::string label = canonical_type(subst.apply(r.type));
    if (lexicalized && r.internal) label += "@" + r.head;
    node.label = std::move(label);
  }
};

}  // namespace

RawTree label_with_types(const TermPtr& term, const Signature& sig, bool lexicalized) {
  Labeler lab{sig, lexicalized};
  TypeExpr root_type;
  std::string root_head;
  RawTree tree = lab.walk(*term, root_type, root_head);
  size_t next = 0;
  lab.stamp(tree, *term, next);
  return tree;
}

namespace {

struct TreeReader {
  const Signature& sig;
  std::map<std::string, int> bound;  // active Abs binders

  static bool is_preterminal(const RawTree& t) {
    return !t.is_leaf() && t.children.size() == 1 && t.children[0].is_leaf();
  }

  TypeExpr owner_type(const std::string& name, unsigned long& fresh) const {
    if (const TypeScheme* sch = sig.find_const(name)) return sch->instantiate(fresh);
    return *sig.find_var(name);
  }

  TermPtr make_symbol(const std::string& name) const {
    if (sig.find_const(name)) return Term::constant(name);
    return Term::variable(name);
  }

  TermPtr resolve_token(const std::string& token, const std::string* label_type) {
    if (auto it = bound.find(token); it != bound.end() && it->second > 0) {
      return Term::variable(token);
    }
    std::vector<std::string> owners = sig.owners_of_surface(token);
    if (owners.empty()) throw UnknownSymbolError("unknown leaf token: " + token);
    if (owners.size() == 1) return make_symbol(owners[0]);
    if (!label_type) {
      throw UnknownSymbolError("ambiguous leaf token '" + token + "' without type label");
    }
    TypeExpr want;
    try {
      want = parse_type(*label_type);
    } catch (const Error&) {
      throw UnknownSymbolError("ambiguous leaf token '" + token +
                               "' under non-type label '" + *label_type + "'");
    }
    // First an owner whose declared type fits the label directly, then one
    // a single declared coercion away. Declaration order breaks ties.
    for (const auto& name : owners) {
      unsigned long fresh = 0;
      Substitution s;
      if (try_unify_into(s, owner_type(name, fresh), want)) return make_symbol(name);
    }
    for (const auto& name : owners) {
      unsigned long fresh = 0;
      TypeExpr ty = owner_type(name, fresh);
      for (const auto& k : sig.coercions()) {
        Substitution s;
        if (try_unify_into(s, ty, k.source) && try_unify_into(s, k.target, want)) {
          return make_symbol(name);
        }
      }
    }
    throw UnknownSymbolError("no declared owner of token '" + token +
                             "' fits label type " + *label_type);
  }

  TermPtr read(const RawTree& t) {
    if (t.is_leaf()) {
      return resolve_token(t.label, nullptr);
    }
    if (is_preterminal(t)) {
      std::string label = strip_lex(t.label);
      return resolve_token(t.children[0].label, &label);
    }
    if (t.children.size() == 2) {
      const RawTree& first = t.children[0];
      if (!first.is_leaf() && strip_lex(first.label) == kBindLabel) {
        if (first.children.size() != 1 || !first.children[0].is_leaf()) {
          throw ArityError("malformed binder node under '" + t.label + "'");
        }
        const std::string& v = first.children[0].label;
        ++bound[v];
        TermPtr body = read(t.children[1]);
        --bound[v];
        return Term::abs(v, std::move(body));
      }
      TermPtr f = read(t.children[0]);
      TermPtr a = read(t.children[1]);
      return Term::app(std::move(f), std::move(a));
    }
    throw ArityError("internal node '" + t.label + "' has " +
                     std::to_string(t.children.size()) +
                     " children; expected binary or Abs encoding");
  }
};

}  // namespace

TermPtr term_of_labeled_tree(const RawTree& tree, const Signature& sig) {
  TreeReader r{sig};
  return r.read(tree);
}

std::vector<TreebankEntry> parse_treebank(const std::string& text, const Signature& sig) {
  std::vector<TreebankEntry> entries;
  std::vector<std::string> parse_errors;
  std::set<std::string> seen_ids;
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;

  auto valid_id = [](const std::string& id) {
    if (id.empty()) return false;
    for (char c : id) {
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-')) {
        return false;
      }
    }
    return true;
  };

  while (std::getline(in, line)) {
    ++lineno;
    std::string body = trim(line);
    if (body.empty() || body[0] == '#') continue;
    auto tab1 = line.find('\t');
    if (tab1 == std::string::npos) {
      parse_errors.push_back("line " + std::to_string(lineno) + ": missing tab separator");
      continue;
    }
    std::string id = trim(line.substr(0, tab1));
    auto tab2 = line.find('\t', tab1 + 1);
    std::string sexpr_text =
        tab2 == std::string::npos ? line.substr(tab1 + 1) : line.substr(tab1 + 1, tab2 - tab1 - 1);
    std::string tokens_text = tab2 == std::string::npos ? "" : line.substr(tab2 + 1);

    if (!valid_id(id)) {
      parse_errors.push_back("line " + std::to_string(lineno) + ": bad id '" + id + "'");
      continue;
    }
    RawTree tree;
    try {
      tree = parse_sexpr(sexpr_text);
    } catch (const Error& e) {
      parse_errors.push_back("line " + std::to_string(lineno) + " (" + id + "): " + e.what());
      continue;
    }

    if (!seen_ids.insert(id).second) {
      throw ValidationError("duplicate treebank id: " + id);
    }

    TreebankEntry entry;
    entry.id = id;
    entry.gold_tree = std::move(tree);
    entry.tokens = tree_yield(entry.gold_tree);
    if (!tokens_text.empty()) {
      std::vector<std::string> declared = split_quoted(tokens_text);
      if (declared != entry.tokens) {
        throw ValidationError("entry '" + id + "': declared yield does not match tree");
      }
    }
    // Gold term, where the tree is term-shaped.
    try {
      entry.gold_term = term_of_labeled_tree(entry.gold_tree, sig);
    } catch (const ArityError&) {
      entry.gold_term = nullptr;  // not term-shaped; legal
    } catch (const UnknownSymbolError& e) {
      throw ValidationError("entry '" + id + "': " + e.what());
    }
    entries.push_back(std::move(entry));
  }

  if (!parse_errors.empty()) {
    std::string msg = "treebank parse errors:";
    for (const auto& e : parse_errors) msg += "\n  " + e;
    throw ValidationError(msg);
  }
  return entries;
}

std::vector<TreebankEntry> load_treebank(const std::string& path, const Signature& sig) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open treebank file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_treebank(buf.str(), sig);
}

std::string format_treebank(const std::vector<TreebankEntry>& entries) {
  std::string out;
  for (const auto& e : entries) {
    std::vector<std::string> toks;
    toks.reserve(e.tokens.size());
    for (const auto& t : e.tokens) toks.push_back(quote_token(t));
    out += e.id;
    out += '\t';
    out += render_sexpr(e.gold_tree);
    out += '\t';
    out += join(toks, " ");
    out += '\n';
  }
  return out;
}

}  // namespace recast
