#include "doctest.h"

#include "bllp/syntax.hpp"
#include "term_gen.hpp"

using namespace bllp;

namespace {
Term T(const char* s) { return parse_term(s); }
const char* kKappa = "\\x. mu a. [a] x (\\y. mu b. [a] y)";
const char* kAleph = "\\f. mu a. f (\\x. [a] x)";
}  // namespace

TEST_CASE("parsing and printing") {
  Term t = T("\\x y. x y (mu a. [a] y) z");
  CHECK(t.str() == "\\x. \\y. x y (mu a. [a] y) z");
  CHECK(T("f \\x. x").kind() == TermKind::App);
  CHECK(parse_term(T(kKappa).str()).same(T(kKappa)));
  CHECK_THROWS_AS(T("\\x. "), ParseError);
  CHECK_THROWS_AS(T("x )"), ParseError);
}

TEST_CASE("free variables and names") {
  Term t = T("\\x. mu a. [b] x y");
  CHECK(t.free_vars() == NameSet{"y"});
  CHECK(t.free_names() == NameSet{"b"});
}

TEST_CASE("alpha equality") {
  CHECK(alpha_equal(T("\\x. mu a. [a] x"), T("\\y. mu b. [b] y")));
  CHECK_FALSE(alpha_equal(T("\\x. mu a. [a] x"), T("\\y. mu b. [a] y")));
  CHECK_FALSE(alpha_equal(T("\\x. x"), T("\\x. y")));
}

TEST_CASE("subst") {
  Term u = T("\\z. z");
  CHECK(subst(T("x"), "x", u).same(u));
  Term r = subst(T("\\y. x"), "x", T("y"));
  CHECK(r.kind() == TermKind::Lam);
  CHECK(r.id() != "y");
  CHECK(r.body().same(T("y")));
  Term e = T("z w");
  CHECK(subst(e, "k", T("\\y. mu b. [a] y")).same(e));
  // names bound in t are renamed away from free names of u
  Term m = subst(T("mu a. [a] x"), "x", T("[a] y"));
  CHECK(alpha_equal(m, T("mu c. [c] [a] y")));
}

TEST_CASE("mu_subst") {
  Term u = T("u");
  CHECK(mu_subst(T("[a] x"), "a", u).same(T("[a] x u")));
  CHECK(mu_subst(T("[b] x"), "a", u).same(T("[b] x")));
  CHECK(mu_subst(T("[a] [a] x"), "a", u).same(T("[a] ([a] x u) u")));
  CHECK(mu_subst(T("mu a. [a] x"), "a", u).same(T("mu a. [a] x")));
  Term c = mu_subst(T("\\u. [a] u"), "a", u);
  CHECK(alpha_equal(c, T("\\v. [a] v u")));
}

TEST_CASE("head reduction") {
  CHECK(step_head(T("(\\x. x z) w"))->same(T("w z")));
  CHECK_FALSE(step_head(T("\\x. x")).has_value());
  CHECK(step_head(T("\\x. (\\y. y) x"))->same(T("\\x. x")));
  CHECK(step_head(T("mu a. (\\y. y) x"))->same(T("mu a. x")));

  auto k = reduce(Term::app(T(kKappa), T("\\k. e")), Strategy::Head, 10, true);
  CHECK(k.term.same(T("e")));
  CHECK(k.steps == 3);
  CHECK_FALSE(k.exhausted);
  REQUIRE(k.trace.size() == 3);
  CHECK(k.trace[0].redex == Redex::Beta);
  CHECK(k.trace[1].redex == Redex::Beta);
  CHECK(k.trace[1].path == Path{0, 0});
  CHECK(k.trace[2].redex == Redex::Theta);

  // k free in the body is not discarded
  auto k2 = reduce(Term::app(T(kKappa), T("\\k. k e")), Strategy::Head, 10);
  CHECK_FALSE(k2.exhausted);
  CHECK_FALSE(alpha_equal(k2.term, T("e")));
}

TEST_CASE("aleph under head reduction") {
  for (int n = 0; n <= 3; ++n) {
    std::vector<Term> ts;
    std::string expected = "mu a. w (\\x. [a] x";
    for (int i = 1; i <= n; ++i) {
      ts.push_back(T(("t" + std::to_string(i)).c_str()));
      expected += " t" + std::to_string(i);
    }
    expected += ")";
    auto r = reduce(Term::apps(T(kAleph), [&] {
                      std::vector<Term> args{T("w")};
                      args.insert(args.end(), ts.begin(), ts.end());
                      return args;
                    }()),
                    Strategy::Head, 100);
    CHECK(alpha_equal(r.term, T(expected.c_str())));
    CHECK(r.steps == static_cast<std::size_t>(1 + n));
  }
}

TEST_CASE("weak reduction") {
  CHECK(step_weak(T("(\\x. x) y"))->same(T("y")));
  CHECK_FALSE(step_weak(T("\\x. (\\y. y) x")).has_value());
  CHECK_FALSE(step_weak(T("mu a. [b] (\\x. x) y")).has_value());
  CHECK(step_weak(T("[a] (\\x. x) y"))->same(T("[a] y")));
  // the root theta redex fires regardless of the redex below it
  CHECK(step_weak(T("mu a. [a] (\\x. x) y"))->same(T("(\\x. x) y")));

  auto k = reduce(Term::app(T(kKappa), T("\\k. e")), Strategy::Weak, 10);
  CHECK(k.steps == 1);
  CHECK_FALSE(k.exhausted);
  CHECK(alpha_equal(k.term, T("mu a. [a] (\\k. e) (\\y. mu b. [a] y)")));
}

TEST_CASE("machine reduction") {
  CHECK(step_machine(T("mu a. [b] (\\x. x) y"))->same(T("mu a. [b] y")));
  CHECK(step_machine(T("mu a. [a] (\\x. x) ([a] y)"))->same(T("mu a. [a] [a] y")));
  CHECK_FALSE(step_machine(T("\\x. (\\y. y) z")).has_value());
  CHECK(step_machine(T("mu a. [a] x y"))->same(T("x y")));
  CHECK(step_machine(T("mu a. [a] (\\x. x) y"))->same(T("(\\x. x) y")));
}

TEST_CASE("reduce") {
  auto r = reduce(T("\\x. x"), Strategy::Head, 5);
  CHECK(r.steps == 0);
  CHECK_FALSE(r.exhausted);
  auto omega = reduce(T("(\\x. x x) (\\x. x x)"), Strategy::Weak, 7);
  CHECK(omega.steps == 7);
  CHECK(omega.exhausted);
  CHECK(parse_strategy("machine") == Strategy::Machine);
  CHECK_THROWS_AS(parse_strategy("lazy"), Error);
}

TEST_CASE("reduction properties on random terms") {
  std::mt19937 rng(5);
  for (int i = 0; i < 400; ++i) {
    Term t = bllp::testing::random_term(rng, 5);
    auto w = find_step(t, Strategy::Weak);
    auto h = find_step(t, Strategy::Head);
    auto m = find_step(t, Strategy::Machine);
    if (w) {
      REQUIRE(h);
      CHECK(h->result.same(w->result));
      CHECK(h->path == w->path);
      REQUIRE(m);
      CHECK(m->path == w->path);
    }
    for (const auto& s : {h, m}) {
      if (!s || s->redex != Redex::Theta) continue;
      const Term& redex = subterm(t, s->path);
      CHECK_FALSE(redex.body().body().free_names().count(redex.id()));
    }
    Term v = bllp::testing::rename_binders(t, "_r");
    CHECK(alpha_equal(t, v));
    Term u = bllp::testing::random_term(rng, 2);
    CHECK(alpha_equal(subst(t, "x", u), subst(v, "x", u)));
    CHECK(alpha_equal(mu_subst(t, "a", u), mu_subst(v, "a", u)));
  }
}
