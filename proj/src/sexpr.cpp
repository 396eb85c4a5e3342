#include "recast/sexpr.hpp"

#include "recast/error.hpp"
#include "recast/text.hpp"

namespace recast {

namespace {

struct SexprParser {
  std::string_view text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  std::string token() {
    skip_ws();
    if (pos >= text.size()) throw EmptyExpressionError("expected token at end of input");
    std::string tok;
    if (text[pos] == '|') {
      ++pos;
      bool closed = false;
      while (pos < text.size()) {
        char c = text[pos];
        if (c == '\\' && pos + 1 < text.size()) {
          tok.push_back(text[pos + 1]);
          pos += 2;
        } else if (c == '|') {
          ++pos;
          closed = true;
          break;
        } else {
          tok.push_back(c);
          ++pos;
        }
      }
      if (!closed) throw UnbalancedParensError("unterminated quoted token");
      if (tok.empty()) throw EmptyExpressionError("empty quoted token");
      return tok;
    }
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '(' && text[pos] != ')') {
      tok.push_back(text[pos]);
      ++pos;
    }
    if (tok.empty()) throw EmptyExpressionError("expected token, found delimiter");
    return tok;
  }

  RawTree expr() {
    skip_ws();
    if (pos >= text.size()) throw EmptyExpressionError("empty expression");
    if (text[pos] == ')') throw UnbalancedParensError("unexpected ')'");
    if (text[pos] != '(') return RawTree::leaf(token());
    ++pos;  // '('
    skip_ws();
    if (pos < text.size() && text[pos] == ')') {
      throw EmptyExpressionError("empty parenthesized expression");
    }
    std::string label = token();
    std::vector<RawTree> children;
    for (;;) {
      skip_ws();
      if (pos >= text.size()) throw UnbalancedParensError("missing ')'");
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      children.push_back(expr());
    }
    if (children.empty()) {
      throw EmptyChildrenError("internal node '" + label + "' has no children");
    }
    return RawTree::node(std::move(label), std::move(children));
  }
};

void render_rec(const RawTree& t, std::string& out) {
  if (t.is_leaf()) {
    out += quote_token(t.label);
    return;
  }
  out += '(';
  out += quote_token(t.label);
  for (const auto& c : t.children) {
    out += ' ';
    render_rec(c, out);
  }
  out += ')';
}

void yield_rec(const RawTree& t, std::vector<std::string>& out) {
  if (t.is_leaf()) {
    out.push_back(t.label);
    return;
  }
  for (const auto& c : t.children) yield_rec(c, out);
}

}  // namespace

RawTree parse_sexpr(std::string_view text) {
  SexprParser p{text};
  RawTree t = p.expr();
  if (!p.at_end()) {
    throw StrayTokenError("trailing content after expression: '" +
                          std::string(text.substr(p.pos)) + "'");
  }
  return t;
}

std::string render_sexpr(const RawTree& tree) {
  std::string out;
  render_rec(tree, out);
  return out;
}

std::vector<std::string> tree_yield(const RawTree& tree) {
  std::vector<std::string> out;
  yield_rec(tree, out);
  return out;
}

}  // namespace recast
