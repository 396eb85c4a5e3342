#ifndef RECAST_TEXT_HPP
#define RECAST_TEXT_HPP

#include <string>
#include <string_view>
#include <vector>

namespace recast {

// Shortest round-trip decimal rendering of a double (via std::to_chars).
std::string format_double(double v);

// Fixed 6-decimal rendering used by canonical report output.
std::string format_fixed6(double v);

// Parse a double rendered by format_double; throws ConfigError on garbage.
double parse_double(std::string_view s);

// True if the token can be written bare inside an s-expression or a
// grammar dump line (no whitespace, parens, pipes or backslashes).
bool token_needs_quoting(std::string_view tok);

// Pipe-quotes a token when needed: `(fun real real)` -> `|(fun real real)|`.
// Inside quotes, `|` and `\` are backslash-escaped.
std::string quote_token(std::string_view tok);

// Splits a line into tokens, honouring pipe-quoting. Parens are NOT special
// here; this is for line-oriented formats (grammar dumps, token lists).
std::vector<std::string> split_quoted(std::string_view line);

std::vector<std::string> split_ws(std::string_view line);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

bool starts_with(std::string_view s, std::string_view prefix);

std::string trim(std::string_view s);

}  // namespace recast

#endif
