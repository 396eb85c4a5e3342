#include "recast/text.hpp"

#include <charconv>
#include <cstdio>
#include <cstring>

#include "recast/error.hpp"

namespace recast {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

double parse_double(std::string_view s) {
  double v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ConfigError("bad floating-point literal: '" + std::string(s) + "'");
  }
  return v;
}

bool token_needs_quoting(std::string_view tok) {
  if (tok.empty()) return true;
  for (char c : tok) {
    if (c == '(' || c == ')' || c == '|' || c == '\\' || c == ' ' ||
        c == '\t' || c == '\n' || c == '\r') {
      return true;
    }
  }
  return false;
}

std::string quote_token(std::string_view tok) {
  if (!token_needs_quoting(tok)) return std::string(tok);
  std::string out;
  out.reserve(tok.size() + 2);
  out.push_back('|');
  for (char c : tok) {
    if (c == '|' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('|');
  return out;
}

std::vector<std::string> split_quoted(std::string_view line) {
  std::vector<std::string> out;
  size_t i = 0;
  const size_t n = line.size();
  while (i < n) {
    while (i < n && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= n) break;
    std::string tok;
    if (line[i] == '|') {
      ++i;
      bool closed = false;
      while (i < n) {
        char c = line[i];
        if (c == '\\' && i + 1 < n) {
          tok.push_back(line[i + 1]);
          i += 2;
        } else if (c == '|') {
          ++i;
          closed = true;
          break;
        } else {
          tok.push_back(c);
          ++i;
        }
      }
      if (!closed) throw ConfigError("unterminated quoted token in: " + std::string(line));
    } else {
      while (i < n && line[i] != ' ' && line[i] != '\t') {
        tok.push_back(line[i]);
        ++i;
      }
    }
    out.push_back(std::move(tok));
  }
  return out;
}

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.size() >= prefix.size() && s.substr(0, prefix.size()) == prefix;
}

std::string trim(std::string_view s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

}  // namespace recast
