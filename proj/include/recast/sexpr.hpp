#ifndef RECAST_SEXPR_HPP
#define RECAST_SEXPR_HPP

#include <string>
#include <string_view>
#include <vector>

namespace recast {

// A bracketed tree. Leaves carry surface tokens, internal nodes grammar
// labels. Labels containing parens, pipes, backslashes or whitespace are
// pipe-quoted on disk (`|(fun real real)|`); in memory they are plain.
struct RawTree {
  std::string label;
  std::vector<RawTree> children;

  bool is_leaf() const { return children.empty(); }

  static RawTree leaf(std::string l) { return RawTree{std::move(l), {}}; }
  static RawTree node(std::string l, std::vector<RawTree> cs) {
    return RawTree{std::move(l), std::move(cs)};
  }

  bool operator==(const RawTree& o) const {
    return label == o.label && children == o.children;
  }
  bool operator!=(const RawTree& o) const { return !(*this == o); }
};

// Parses exactly one expression; trailing content raises StrayTokenError.
// `(a)` (an internal node without children) raises EmptyChildrenError.
RawTree parse_sexpr(std::string_view text);

// Inverse of parse_sexpr: single spaces between siblings, no trailing
// whitespace, quoting only where needed.
std::string render_sexpr(const RawTree& tree);

// Left-to-right leaf labels.
std::vector<std::string> tree_yield(const RawTree& tree);

}  // namespace recast

#endif
