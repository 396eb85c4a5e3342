#include "recast/signature.hpp"

#include <fstream>
#include <sstream>

#include "recast/error.hpp"
#include "recast/text.hpp"

namespace recast {

void Signature::check_name(const std::string& name) const {
  if (name.empty()) throw ConfigError("empty symbol name");
  for (char c : name) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' ||
        c == '@' || c == '|') {
      throw ConfigError("illegal character in symbol name: '" + name + "'");
    }
  }
}

void Signature::check_arities(const TypeExpr& t, const std::string& context) {
  if (!t.is_var) {
    auto [it, inserted] = ctor_arity_.emplace(t.name, t.args.size());
    if (!inserted && it->second != t.args.size()) {
      throw ConfigError("type constructor '" + t.name + "' used with arity " +
                        std::to_string(t.args.size()) + " and " +
                        std::to_string(it->second) + " (in " + context + ")");
    }
  }
  for (const auto& a : t.args) check_arities(a, context);
}

void Signature::declare_const(const std::string& name, const TypeExpr& type) {
  check_name(name);
  if (vars_.count(name)) throw ConfigError("'" + name + "' declared as both const and var");
  check_arities(type, name);
  if (!consts_.emplace(name, TypeScheme::over_all_vars(type)).second) {
    throw ConfigError("duplicate const declaration: " + name);
  }
  const_order_.push_back(name);
  surface_.emplace(name, name);
  by_surface_[name].push_back(name);
}

void Signature::declare_var(const std::string& name, const TypeExpr& type) {
  check_name(name);
  if (consts_.count(name)) throw ConfigError("'" + name + "' declared as both const and var");
  check_arities(type, name);
  if (!vars_.emplace(name, type).second) {
    throw ConfigError("duplicate var declaration: " + name);
  }
  var_order_.push_back(name);
  surface_.emplace(name, name);
  by_surface_[name].push_back(name);
}

void Signature::declare_coercion(const std::string& const_name) {
  auto it = consts_.find(const_name);
  if (it == consts_.end()) {
    throw ConfigError("coercion '" + const_name + "' is not a declared constant");
  }
  const TypeExpr& body = it->second.body;
  if (body.is_var || body.name != "fun" || body.args.size() != 2 ||
      !body.args[0].is_ground() || !body.args[1].is_ground()) {
    throw ConfigError("coercion '" + const_name +
                      "' must have a ground functional type, got " + render_type(body));
  }
  for (const auto& c : coercions_) {
    if (c.name == const_name) throw ConfigError("duplicate coercion: " + const_name);
  }
  coercions_.push_back(Coercion{const_name, body.args[0], body.args[1]});
}

const TypeScheme* Signature::find_const(const std::string& name) const {
  auto it = consts_.find(name);
  return it == consts_.end() ? nullptr : &it->second;
}

const TypeExpr* Signature::find_var(const std::string& name) const {
  auto it = vars_.find(name);
  return it == vars_.end() ? nullptr : &it->second;
}

bool Signature::is_coercion(const std::string& name) const {
  for (const auto& c : coercions_) {
    if (c.name == name) return true;
  }
  return false;
}

const std::string& Signature::surface_of(const std::string& name) const {
  auto it = surface_.find(name);
  if (it == surface_.end()) {
    throw UnknownSymbolError("unknown symbol: " + name);
  }
  return it->second;
}

void Signature::set_surface(const std::string& name, const std::string& surface) {
  auto it = surface_.find(name);
  if (it == surface_.end()) throw UnknownSymbolError("unknown symbol: " + name);
  // drop from the old bucket
  auto& old_bucket = by_surface_[it->second];
  for (auto bit = old_bucket.begin(); bit != old_bucket.end(); ++bit) {
    if (*bit == name) {
      old_bucket.erase(bit);
      break;
    }
  }
  it->second = surface;
  // insertion order within a bucket follows declaration order: consts in
  // declaration order, then vars. Rebuild the bucket to keep that stable.
  auto& bucket = by_surface_[surface];
  bucket.clear();
  for (const auto& n : const_order_) {
    if (surface_.at(n) == surface) bucket.push_back(n);
  }
  for (const auto& n : var_order_) {
    if (surface_.at(n) == surface) bucket.push_back(n);
  }
}

std::vector<std::string> Signature::owners_of_surface(const std::string& surface) const {
  auto it = by_surface_.find(surface);
  if (it == by_surface_.end()) return {};
  return it->second;
}

Signature Signature::parse(const std::string& text) {
  Signature sig;
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string body = trim(line);
    if (body.empty()) continue;
    std::istringstream ls(body);
    std::string kw, name;
    ls >> kw >> name;
    try {
      if (kw == "coercion") {
        sig.declare_coercion(name);
        continue;
      }
      std::string colon;
      ls >> colon;
      if (colon != ":") throw ConfigError("expected ':' after name");
      std::string type_text;
      std::getline(ls, type_text);
      TypeExpr t = parse_type(trim(type_text));
      if (kw == "const") {
        sig.declare_const(name, t);
      } else if (kw == "var") {
        if (!t.is_ground()) {
          throw ConfigError("variable '" + name + "' must have a ground type");
        }
        sig.declare_var(name, t);
      } else {
        throw ConfigError("unknown keyword '" + kw + "'");
      }
    } catch (const Error& e) {
      throw ConfigError("signature line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return sig;
}

Signature Signature::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open signature file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

}  // namespace recast
