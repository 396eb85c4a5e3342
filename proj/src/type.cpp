#include "recast/type.hpp"

#include "recast/error.hpp"

namespace recast {

bool TypeExpr::is_ground() const {
  if (is_var) return false;
  for (const auto& a : args) {
    if (!a.is_ground()) return false;
  }
  return true;
}

bool TypeExpr::contains_var(const std::string& v) const {
  if (is_var) return name == v;
  for (const auto& a : args) {
    if (a.contains_var(v)) return true;
  }
  return false;
}

void TypeExpr::collect_vars(std::vector<std::string>& order,
                            std::set<std::string>& seen) const {
  if (is_var) {
    if (seen.insert(name).second) order.push_back(name);
    return;
  }
  for (const auto& a : args) a.collect_vars(order, seen);
}

std::string render_type(const TypeExpr& t) {
  if (t.is_var) return "?" + t.name;
  if (t.args.empty()) return t.name;
  std::string out = "(" + t.name;
  for (const auto& a : t.args) {
    out += ' ';
    out += render_type(a);
  }
  out += ')';
  return out;
}

namespace {

std::string canonical_var_name(size_t index) {
  // ?a .. ?z, then ?aa, ?ab, ...
  std::string s;
  size_t n = index;
  do {
    s.insert(s.begin(), static_cast<char>('a' + n % 26));
    n = n / 26;
  } while (n-- > 0);
  return s;
}

void canonicalize_rec(const TypeExpr& t, std::map<std::string, std::string>& renaming,
                      TypeExpr& out) {
  if (t.is_var) {
    auto it = renaming.find(t.name);
    if (it == renaming.end()) {
      it = renaming.emplace(t.name, canonical_var_name(renaming.size())).first;
    }
    out = TypeExpr::var(it->second);
    return;
  }
  out.is_var = false;
  out.name = t.name;
  out.args.resize(t.args.size());
  for (size_t i = 0; i < t.args.size(); ++i) {
    canonicalize_rec(t.args[i], renaming, out.args[i]);
  }
}

}  // namespace

TypeExpr canonicalize(const TypeExpr& t) {
  std::map<std::string, std::string> renaming;
  TypeExpr out;
  canonicalize_rec(t, renaming, out);
  return out;
}

std::string canonical_type(const TypeExpr& t) { return render_type(canonicalize(t)); }

bool canonical_equal(const TypeExpr& a, const TypeExpr& b) {
  return canonicalize(a) == canonicalize(b);
}

namespace {

struct TypeParser {
  std::string_view text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  std::string atom() {
    size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '(' && text[pos] != ')') {
      ++pos;
    }
    if (pos == start) throw ConfigError("expected type atom in: " + std::string(text));
    return std::string(text.substr(start, pos - start));
  }

  TypeExpr expr() {
    skip_ws();
    if (pos >= text.size()) throw ConfigError("empty type in: " + std::string(text));
    if (text[pos] == '(') {
      ++pos;
      skip_ws();
      std::string head = atom();
      if (head[0] == '?') throw ConfigError("type variable cannot take arguments: " + head);
      std::vector<TypeExpr> args;
      skip_ws();
      while (pos < text.size() && text[pos] != ')') {
        args.push_back(expr());
        skip_ws();
      }
      if (pos >= text.size()) throw ConfigError("unbalanced parens in type: " + std::string(text));
      ++pos;  // ')'
      if (args.empty()) throw ConfigError("constructor with parens needs arguments: " + head);
      return TypeExpr::ctor(std::move(head), std::move(args));
    }
    std::string a = atom();
    if (a[0] == '?') return TypeExpr::var(a.substr(1));
    return TypeExpr::ctor(std::move(a));
  }
};

}  // namespace

TypeExpr parse_type(std::string_view text) {
  TypeParser p{text};
  TypeExpr t = p.expr();
  p.skip_ws();
  if (p.pos != text.size()) {
    throw ConfigError("trailing content after type: " + std::string(text));
  }
  return t;
}

const TypeExpr* Substitution::lookup(const std::string& v) const {
  auto it = map_.find(v);
  return it == map_.end() ? nullptr : &it->second;
}

TypeExpr Substitution::apply(const TypeExpr& t) const {
  if (t.is_var) {
    if (const TypeExpr* img = lookup(t.name)) return *img;
    return t;
  }
  TypeExpr out;
  out.is_var = false;
  out.name = t.name;
  out.args.reserve(t.args.size());
  for (const auto& a : t.args) out.args.push_back(apply(a));
  return out;
}

void Substitution::bind(const std::string& v, const TypeExpr& t) {
  TypeExpr img = apply(t);
  if (img.is_var && img.name == v) return;  // trivial binding
  if (img.contains_var(v)) {
    throw OccursCheckError("occurs check: ?" + v + " in " + render_type(img));
  }
  Substitution single;
  single.map_.emplace(v, img);
  for (auto& [key, val] : map_) val = single.apply(val);
  map_.emplace(v, std::move(img));
}

void unify_into(Substitution& s, const TypeExpr& t1, const TypeExpr& t2) {
  TypeExpr a = s.apply(t1);
  TypeExpr b = s.apply(t2);
  if (a.is_var) {
    s.bind(a.name, b);
    return;
  }
  if (b.is_var) {
    s.bind(b.name, a);
    return;
  }
  if (a.name != b.name || a.args.size() != b.args.size()) {
    throw MismatchError("cannot unify " + render_type(a) + " with " + render_type(b));
  }
  for (size_t i = 0; i < a.args.size(); ++i) {
    unify_into(s, a.args[i], b.args[i]);
  }
}

bool try_unify_into(Substitution& s, const TypeExpr& t1, const TypeExpr& t2) {
  try {
    unify_into(s, t1, t2);
    return true;
  } catch (const UnifyError&) {
    return false;
  }
}

Substitution unify(const TypeExpr& t1, const TypeExpr& t2) {
  Substitution s;
  unify_into(s, t1, t2);
  return s;
}

TypeScheme TypeScheme::over_all_vars(const TypeExpr& t) {
  TypeScheme sch;
  sch.body = t;
  std::vector<std::string> order;
  std::set<std::string> seen;
  t.collect_vars(order, seen);
  sch.quantified = std::move(seen);
  return sch;
}

TypeExpr fresh_var(unsigned long& counter) {
  return TypeExpr::var("%" + std::to_string(counter++));
}

namespace {
TypeExpr rename_quantified(const TypeExpr& t, const std::map<std::string, TypeExpr>& ren) {
  if (t.is_var) {
    auto it = ren.find(t.name);
    return it == ren.end() ? t : it->second;
  }
  TypeExpr out;
  out.is_var = false;
  out.name = t.name;
  out.args.reserve(t.args.size());
  for (const auto& a : t.args) out.args.push_back(rename_quantified(a, ren));
  return out;
}
}  // namespace

TypeExpr TypeScheme::instantiate(unsigned long& fresh_counter) const {
  if (quantified.empty()) return body;
  std::map<std::string, TypeExpr> ren;
  for (const auto& q : quantified) ren.emplace(q, fresh_var(fresh_counter));
  return rename_quantified(body, ren);
}

}  // namespace recast
