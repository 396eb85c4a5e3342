#ifndef RECAST_TESTS_FIXTURES_HPP
#define RECAST_TESTS_FIXTURES_HPP

// The bundled trigonometric micro-corpus: thirty expressions over reals,
// naturals and complex numbers with the casting constants `&` (num->real)
// and `Cx` (real->complex) and the overloaded surface `+`. The corpus is
// engineered so the cast-erased corpus stays recoverable under typed
// parsing while the untyped parser prefers a wrong reading for at least
// one held-out sentence.

#include <string>
#include <vector>

#include "recast/signature.hpp"
#include "recast/term.hpp"
#include "recast/treebank.hpp"

namespace recast::fixtures {

inline const char* trig_signature_text() {
  return R"(# Signature of the trigonometric fixture corpus.
const sin : (fun real real)
const cos : (fun real real)
const plus_r : (fun real (fun real real))
const mul_r : (fun real (fun real real))
const plus_c : (fun complex (fun complex complex))
const plus_n : (fun num (fun num num))
const neg_r : (fun real real)
const conj : (fun complex complex)
const norm : (fun complex real)
const suc : (fun num num)
const zero : num
const one : num
const pi : real
const i_c : complex
const & : (fun num real)
const Cx : (fun real complex)
var x : real
var y : real
var u : complex
var k : num
coercion &
coercion Cx
)";
}

inline Signature trig_signature() { return Signature::parse(trig_signature_text()); }

// Term shorthands.
namespace tb {
inline TermPtr c(const std::string& n) { return Term::constant(n); }
inline TermPtr v(const std::string& n) { return Term::variable(n); }
inline TermPtr a(TermPtr f, TermPtr x) { return Term::app(std::move(f), std::move(x)); }
inline TermPtr a2(const std::string& f, TermPtr x, TermPtr y) {
  return a(a(c(f), std::move(x)), std::move(y));
}
inline TermPtr amp(TermPtr t) { return a(c("&"), std::move(t)); }
inline TermPtr cx(TermPtr t) { return a(c("Cx"), std::move(t)); }
}  // namespace tb

inline std::vector<std::pair<std::string, TermPtr>> trig_terms() {
  using namespace tb;
  std::vector<std::pair<std::string, TermPtr>> ts;
  auto add = [&](const std::string& id, TermPtr t) { ts.emplace_back(id, std::move(t)); };
  add("t01", a(c("sin"), v("x")));
  add("t02", a(c("cos"), v("y")));
  add("t03", a(c("sin"), a(c("cos"), v("x"))));
  add("t04", a2("plus_r", v("x"), v("y")));
  add("t05", a2("plus_r", a(c("sin"), v("x")), a(c("cos"), v("y"))));
  add("t06", a(c("sin"), a2("plus_r", v("x"), c("pi"))));
  add("t07", a2("mul_r", v("x"), a(c("sin"), v("y"))));
  add("t08", a2("plus_r", c("pi"), amp(c("zero"))));
  add("t09", a(c("sin"), amp(a(c("suc"), c("zero")))));
  add("t10", a2("plus_r", v("x"), amp(a(c("suc"), v("k")))));
  add("t11", a(c("neg_r"), a(c("sin"), v("x"))));
  add("t12", a2("plus_r", amp(c("zero")), a(c("sin"), v("x"))));
  add("t13", a2("plus_r", amp(c("one")), amp(c("zero"))));
  add("t14", a2("plus_r", amp(c("zero")), c("pi")));
  add("t15", a2("plus_r", v("y"), amp(c("one"))));
  add("t16", a(c("cos"), a2("plus_r", v("x"), v("y"))));
  add("t17", a(c("neg_r"), a2("plus_r", v("x"), v("y"))));
  add("t18", a2("mul_r", a(c("sin"), v("x")), a(c("cos"), v("x"))));
  add("t19", a2("plus_r", amp(c("one")), c("pi")));
  add("t20", a(c("suc"), c("zero")));
  add("t21", a(c("suc"), a(c("suc"), v("k"))));
  add("t22", a2("plus_n", c("zero"), c("one")));
  add("t23", a2("plus_n", v("k"), a(c("suc"), c("zero"))));
  add("t24", a2("plus_n", a(c("suc"), v("k")), c("zero")));
  add("t25", a2("plus_c", v("u"), cx(v("x"))));
  add("t26", a2("plus_c", cx(v("y")), v("u")));
  add("t27", a(c("norm"), a2("plus_c", v("u"), cx(v("x")))));
  add("t28", a(c("conj"), a2("plus_c", v("u"), cx(c("pi")))));
  add("t29", a2("plus_c", cx(a(c("sin"), v("x"))), v("u")));
  add("t30", a2("plus_r", amp(c("zero")), amp(c("one"))));
  return ts;
}

inline std::vector<TreebankEntry> trig_corpus(const Signature& sig, bool lexicalized = false) {
  std::vector<TreebankEntry> entries;
  for (const auto& [id, term] : trig_terms()) {
    TreebankEntry e;
    e.id = id;
    e.gold_tree = label_with_types(term, sig, lexicalized);
    e.tokens = tree_yield(e.gold_tree);
    e.gold_term = term;
    entries.push_back(std::move(e));
  }
  return entries;
}

}  // namespace recast::fixtures

#endif
