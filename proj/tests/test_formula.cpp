#include "doctest.h"

#include "bllp/syntax.hpp"

using namespace bllp;

namespace {
Formula F(const char* s) { return parse_formula(s); }
LabelledFormula L(const char* s) { return parse_labelled(s); }
ResourcePoly P(const char* s) { return parse_poly(s); }
}  // namespace

TEST_CASE("negation") {
  for (const char* s : {"V", "~V", "1", "bot", "V * !{x<y+1} ~W", "?{x<2} (V * W) par ~U", "~A -[x<y]-> ~B"}) {
    Formula a = F(s);
    CHECK(negate(negate(a)).same(a));
    CHECK(negate(a).positive() == a.negative());
  }
  CHECK(negate(Formula::one()).kind() == FormulaKind::Bottom);
  CHECK(negate(F("!{x<p} ~V")).same(F("?{x<p} V")));
  CHECK(negate(F("A * B")).same(F("~A par ~B")));
}

TEST_CASE("formula_leq") {
  Formula a = F("!{x<y} (~V -[z<x]-> bot)");
  CHECK(formula_leq(a, a));
  CHECK(formula_leq(F("!{x<p+1} ~V"), F("!{x<p} ~V")));
  CHECK_FALSE(formula_leq(F("!{x<p} ~V"), F("!{x<p+1} ~V")));
  CHECK(formula_leq(F("?{x<p} V"), F("?{x<p+1} V")));
  CHECK_FALSE(formula_leq(F("V"), F("W")));
  CHECK_FALSE(formula_leq(F("V * V"), F("V")));
  CHECK(formula_leq(F("?{x<1} !{y<x} ~V"), F("?{z<1} !{y<z} ~V")));
}

TEST_CASE("alpha equality") {
  CHECK(alpha_equal(F("?{x<q} !{y<x} ~V"), F("?{u<q} !{w<u} ~V")));
  CHECK_FALSE(alpha_equal(F("?{x<q} !{y<x} ~V"), F("?{u<q} !{w<x} ~V")));
}

TEST_CASE("lf_leq") {
  CHECK(lf_leq(L("<~V>[x<p+1]"), L("<~V>[x<p]")));
  CHECK_FALSE(lf_leq(L("<~V>[x<p]"), L("<~V>[x<p+1]")));
  CHECK(lf_leq(L("<V>[x<p]"), L("<V>[x<p+1]")));
  LabelledFormula a = L("<?{y<x} V par bot>[x<2]");
  CHECK(lf_leq(a, a));
  CHECK_THROWS_AS(lf_leq(L("<V>[1]"), L("<~V>[1]")), Error);
  // duality
  LabelledFormula n1 = L("<?{y<x+1} V>[x<3]"), n2 = L("<?{y<x+2} V>[x<2]");
  CHECK(lf_leq(n1, n2) == lf_leq(negate(n2), negate(n1)));
  CHECK(lf_leq(n1, n2));
}

TEST_CASE("subst_poly") {
  Formula a = F("?{y<x} V par ?{z<x+y} !{u<1} ~W");
  CHECK(subst_poly(a, "x", ResourcePoly::var("x")).same(a));
  CHECK(subst_poly(F("?{y<x} V"), "x", 3).same(F("?{y<3} V")));
  Formula b = F("!{x<p} (?{y<x} V)");
  CHECK(subst_poly(b, "x", P("q")).same(b));
  // capture: substituting y into a formula binding y renames the binder
  Formula c = subst_poly(F("!{y<1} ?{z<x+y} V"), "x", ResourcePoly::var("y"));
  CHECK(alpha_equal(c, F("!{w<1} ?{z<y+w} V")));
  CHECK(negate(subst_poly(a, "x", P("u+1"))).same(subst_poly(negate(a), "x", P("u+1"))));
}

TEST_CASE("lf_sum") {
  LabelledFormula a = L("<?{z<x} V>[x<p]");
  LabelledFormula b = L("<?{z<y+p} V>[y<q]");
  LabelledFormula s = lf_sum(a, b);
  CHECK(lf_equal(s, L("<?{z<x} V>[x<p+q]")));
  CHECK(lf_equal(lf_sum(L("<bot>[x<p]"), L("<bot>[y<q]")), L("<bot>[x<p+q]")));
  CHECK_THROWS_AS(lf_sum(L("<?{z<x} V>[x<1]"), L("<?{z<x} V>[y<1]")), Error);
  CHECK(lf_equal(lf_sum(a, lf_shifted(a, P("q"))), s));
}

TEST_CASE("bounded sums") {
  LabelledFormula constant = L("<~V>[y<z+1]");
  CHECK(lf_equal(lf_bounded_sum(constant, "z", P("q")), L("<~V>[y<bin(q,2)+q]")));

  LabelledFormula member = L("<?{w<y+z} V>[y<1]");
  CHECK(lf_equal(lf_bounded_sum(member, "z", P("q")), L("<?{w<x} V>[x<q]")));
  CHECK_THROWS_AS(lf_bounded_sum(L("<?{w<y+2*z} V>[y<1]"), "z", P("q")), Error);
  BoundedSumWitness wit{F("?{w<x} V"), "x"};
  CHECK(verify_bounded_sum(L("<?{w<x} V>[x<q]"), "z", P("q"), member, wit));
  CHECK_FALSE(verify_bounded_sum(L("<?{w<x} V>[x<q+1]"), "z", P("q"), member, wit));
  CHECK(lf_equal(lf_bounded_sum(member, "z", P("q"), wit), L("<?{w<x} V>[x<q]")));

  // a single-index sum dominates the member at z = 0
  LabelledFormula one = lf_bounded_sum(member, "z", 1, wit);
  CHECK(lf_leq(one, lf_subst(member, "z", 0)));

  BoundedSumWitness bad{F("?{w<x+z} V"), "x"};
  CHECK_THROWS_AS(verify_bounded_sum(L("<?{w<x} V>[x<q]"), "z", P("q"), member, bad), Error);
}

TEST_CASE("classify") {
  CHECK(classify(F("bot")) == FormulaClass::Typing);
  CHECK(classify(F("~X")) == FormulaClass::Typing);
  CHECK(classify(F("~X -[x<p]-> bot")) == FormulaClass::Typing);
  CHECK(classify(F("?{x<p} X")) == FormulaClass::Modal);
  CHECK(classify(F("V * V")) == FormulaClass::Neither);
  CHECK(classify(F("~X par ~Y")) == FormulaClass::Neither);
  CHECK(to_string(FormulaClass::Modal) == "modal");
}

TEST_CASE("printing round-trips") {
  for (const char* s : {"~A -[x<y+1]-> ~B -[z<x]-> bot", "(~A par ~B) par ~C", "!{x<2} (~A par bot) * 1",
                        "?{x<bin(y,2)} (A * B)", "(~A -[x<1]-> ~B) -[y<2]-> ~C"}) {
    Formula a = F(s);
    CHECK(parse_formula(a.str()).same(a));
  }
  LabelledFormula l = L("<~A -[x<y]-> bot>[y<3]");
  CHECK(lf_equal(parse_labelled(l.str()), l));
}
