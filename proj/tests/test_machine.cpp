#include "doctest.h"

#include "bllp/machine.hpp"
#include "bllp/syntax.hpp"
#include "term_gen.hpp"

using namespace bllp;

namespace {
Term T(const char* s) { return parse_term(s); }
const char* kKappa = "\\x. mu a. [a] x (\\y. mu b. [a] y)";
}  // namespace

TEST_CASE("load") {
  for (const char* s : {"x", kKappa, "\\x. x"}) {
    Config c = load(T(s));
    CHECK(c.focus.term.same(T(s)));
    CHECK(c.focus.env.empty());
    CHECK(c.stack.empty());
    CHECK(alpha_equal(readback(c), T(s)));
  }
}

TEST_CASE("application transition") {
  auto s = step(load(T("t u")));
  REQUIRE(s);
  CHECK(s->rule == Transition::App);
  CHECK(s->next.str() == "<(t, {}), [(u, {})]>");
}

TEST_CASE("mu transition captures the stack") {
  Config c = load(T("mu a. [a] t"));
  c.stack = c.stack.push(Closure{T("u"), Env()});
  auto s = step(c);
  REQUIRE(s);
  CHECK(s->rule == Transition::Mu);
  CHECK(s->next.stack.empty());
  auto b = s->next.focus.env.lookup_name("a");
  REQUIRE(b);
  CHECK(b->stack.size() == 1);
  CHECK(s->next.str() == "<([a] t, {a:=a_0[(u, {})]}), []> under mu a_0. ");
}

TEST_CASE("name transition restores the stack") {
  Env env = Env().bind_name("a", MuBinding{"a_0", Stack().push(Closure{T("u"), Env()})});
  Config c{Closure{T("[a] t"), env}, Stack(), {}, 1, nullptr};
  auto s = step(c);
  REQUIRE(s);
  CHECK(s->rule == Transition::Name);
  CHECK(s->next.str() == "<(t, {a:=a_0[(u, {})]}), [(u, {})]> under [a_0] ");
  // a non-empty stack blocks the name rule
  c.stack = c.stack.push(Closure{T("v"), Env()});
  CHECK_FALSE(step(c));
  CHECK(status(c) == MachineStatus::Stuck);
}

TEST_CASE("identity application") {
  auto r = run(load(T("(\\x. x) y")), 10, true);
  CHECK(r.steps == 3);
  CHECK(r.rules == std::vector<Transition>{Transition::App, Transition::Lam, Transition::Var});
  CHECK(r.status == MachineStatus::Final);
  CHECK(readback(r.config).same(T("y")));
  auto id = run(load(T("\\x. x")), 10);
  CHECK(id.steps == 0);
  CHECK(id.status == MachineStatus::Final);
}

TEST_CASE("kappa on the machine") {
  auto r = run(load(Term::app(T(kKappa), T("\\k. y"))), 100);
  CHECK(r.status == MachineStatus::Final);
  CHECK(readback(r.config).same(T("y")));
}

TEST_CASE("readback agrees with machine reduction on random terms") {
  std::mt19937 rng(17);
  int compared = 0;
  for (int i = 0; i < 500; ++i) {
    Term t = bllp::testing::random_term(rng, 6);
    auto ref = reduce(t, Strategy::Machine, 200);
    if (ref.exhausted) continue;
    auto r = run(load(t), 5000);
    REQUIRE_FALSE(r.exhausted);
    // [a]t in function position has no machine counterpart
    if (r.status == MachineStatus::Stuck) continue;
    INFO(t.str());
    CHECK(alpha_equal(readback(r.config), ref.term));
    ++compared;
  }
  CHECK(compared > 250);
}
