#include "recast/term.hpp"

#include <map>

namespace recast {

TermPtr Term::constant(std::string n) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Const;
  t->name = std::move(n);
  return t;
}

TermPtr Term::variable(std::string n) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Var;
  t->name = std::move(n);
  return t;
}

TermPtr Term::app(TermPtr f, TermPtr a) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::App;
  t->fun = std::move(f);
  t->arg = std::move(a);
  return t;
}

TermPtr Term::abs(std::string bound, TermPtr body) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Abs;
  t->name = std::move(bound);
  t->body = std::move(body);
  return t;
}

namespace {

bool alpha_rec(const Term& a, const Term& b, std::map<std::string, std::string>& a2b,
               std::map<std::string, std::string>& b2a) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Term::Kind::Const:
      return a.name == b.name;
    case Term::Kind::Var: {
      auto ia = a2b.find(a.name);
      auto ib = b2a.find(b.name);
      if (ia != a2b.end() || ib != b2a.end()) {
        return ia != a2b.end() && ib != b2a.end() && ia->second == b.name &&
               ib->second == a.name;
      }
      return a.name == b.name;  // both free
    }
    case Term::Kind::App:
      return alpha_rec(*a.fun, *b.fun, a2b, b2a) && alpha_rec(*a.arg, *b.arg, a2b, b2a);
    case Term::Kind::Abs: {
      auto olda = a2b.find(a.name) == a2b.end()
                      ? std::pair<bool, std::string>{false, {}}
                      : std::pair<bool, std::string>{true, a2b[a.name]};
      auto oldb = b2a.find(b.name) == b2a.end()
                      ? std::pair<bool, std::string>{false, {}}
                      : std::pair<bool, std::string>{true, b2a[b.name]};
      a2b[a.name] = b.name;
      b2a[b.name] = a.name;
      bool ok = alpha_rec(*a.body, *b.body, a2b, b2a);
      if (olda.first) a2b[a.name] = olda.second; else a2b.erase(a.name);
      if (oldb.first) b2a[b.name] = oldb.second; else b2a.erase(b.name);
      return ok;
    }
  }
  return false;
}

}  // namespace

bool alpha_equal(const TermPtr& a, const TermPtr& b) {
  if (!a || !b) return a == b;
  std::map<std::string, std::string> a2b, b2a;
  return alpha_rec(*a, *b, a2b, b2a);
}

std::string render_term(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Const:
    case Term::Kind::Var:
      return t->name;
    case Term::Kind::App: {
      // Flatten the application spine: ((f a) b) -> (f a b).
      std::vector<const Term*> spine;
      const Term* cur = t.get();
      while (cur->kind == Term::Kind::App) {
        spine.push_back(cur);
        cur = cur->fun.get();
      }
      std::string out = "(";
      out += render_term(std::make_shared<Term>(*cur));
      for (auto it = spine.rbegin(); it != spine.rend(); ++it) {
        out += ' ';
        out += render_term((*it)->arg);
      }
      out += ')';
      return out;
    }
    case Term::Kind::Abs:
      return "(\\" + t->name + ". " + render_term(t->body) + ")";
  }
  return {};
}

namespace {
void yield_rec(const Term& t, std::vector<std::string>& out) {
  switch (t.kind) {
    case Term::Kind::Const:
    case Term::Kind::Var:
      out.push_back(t.name);
      return;
    case Term::Kind::App:
      yield_rec(*t.fun, out);
      yield_rec(*t.arg, out);
      return;
    case Term::Kind::Abs:
      out.push_back(t.name);
      yield_rec(*t.body, out);
      return;
  }
}
}  // namespace

std::vector<std::string> term_yield(const TermPtr& t) {
  std::vector<std::string> out;
  yield_rec(*t, out);
  return out;
}

TermPtr erase_casts(const TermPtr& t, const std::set<std::string>& cast_set,
                    size_t* bare_warnings) {
  switch (t->kind) {
    case Term::Kind::Const:
      if (cast_set.count(t->name) && bare_warnings) ++*bare_warnings;
      return t;
    case Term::Kind::Var:
      return t;
    case Term::Kind::App: {
      if (t->fun->kind == Term::Kind::Const && cast_set.count(t->fun->name)) {
        return erase_casts(t->arg, cast_set, bare_warnings);
      }
      TermPtr f = erase_casts(t->fun, cast_set, bare_warnings);
      TermPtr a = erase_casts(t->arg, cast_set, bare_warnings);
      if (f == t->fun && a == t->arg) return t;
      return Term::app(std::move(f), std::move(a));
    }
    case Term::Kind::Abs: {
      TermPtr b = erase_casts(t->body, cast_set, bare_warnings);
      if (b == t->body) return t;
      return Term::abs(t->name, std::move(b));
    }
  }
  return t;
}

}  // namespace recast
