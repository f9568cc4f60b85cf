#include <random>

#include "doctest.h"

#include "bllp/corpus.hpp"
#include "bllp/syntax.hpp"

using namespace bllp;

namespace {
LabelledFormula L(const char* s) { return parse_labelled(s); }
Term T(const char* s) { return parse_term(s); }

std::size_t count_rule(const Derivation& d, TypingRule r) {
  std::size_t n = d.rule == r;
  for (const auto& p : d.premises) n += count_rule(p, r);
  return n;
}

std::size_t depth(const Derivation& d) {
  std::size_t m = 0;
  for (const auto& p : d.premises) m = std::max(m, depth(p));
  return m + 1;
}

// Visits every node in preorder.
template <class F>
void each_node(Derivation& d, F&& f) {
  f(d);
  for (auto& p : d.premises) each_node(p, f);
}
}  // namespace

TEST_CASE("corpus derivations check additively") {
  for (const auto& e : corpus()) {
    if (!e.derivation) continue;
    INFO(e.name);
    CheckReport r = check_additive(*e.derivation);
    CHECK_MESSAGE(r.ok, r.str());
    CHECK(alpha_equal(e.derivation->conclusion.subject, e.term));
    CHECK(e.derivation->conclusion.lam_ctx.size() == e.term.free_vars().size());
  }
}

TEST_CASE("kappa side conditions") {
  CHECK(check_additive(kappa_derivation(2)).ok);
  CHECK(check_additive(kappa_derivation(5)).ok);
  for (unsigned k : {0u, 1u}) {
    CheckReport r = check_additive(kappa_derivation(k));
    CHECK_FALSE(r.ok);
    CHECK(r.rule == "mu-name");
    CHECK(r.path == Path{0, 0});
  }
}

TEST_CASE("elaboration") {
  for (const auto& e : corpus()) {
    if (!e.derivation) continue;
    INFO(e.name);
    Derivation m = add_to_mult(*e.derivation);
    CheckReport r = check_mult(m);
    CHECK_MESSAGE(r.ok, r.str());
    CHECK(alpha_equal(m.conclusion.subject, e.term));
    CHECK(ctx_equal(m.conclusion.lam_ctx, e.derivation->conclusion.lam_ctx));
    CHECK(lf_equal(m.conclusion.type, e.derivation->conclusion.type));
    CHECK(count_rule(m, TypingRule::Var) == 0);
    CHECK(count_rule(m, TypingRule::App) == 0);
  }

  SUBCASE("var with a two-entry context") {
    LamCtx ctx{{"x", L("<?{_<1} X>[1]")}, {"y", L("<?{_<1} Y>[1]")}, {"z", L("<?{_<1} Y>[2]")}};
    Derivation d = add_var(ctx, "x", L("<~X>[1]"));
    REQUIRE(check_additive(d).ok);
    Derivation m = add_to_mult(d);
    CHECK(m.rule == TypingRule::WeakLam);
    CHECK(count_rule(m, TypingRule::WeakLam) == 2);
    CHECK(count_rule(m, TypingRule::VarM) == 1);
    CHECK(check_mult(m).ok);
  }

  SUBCASE("shared variable gets a contraction") {
    Derivation m = add_to_mult(church_derivation(2));
    CHECK(count_rule(m, TypingRule::ContrLam) == 1);
    CHECK(check_mult(m).ok);
  }

  SUBCASE("identity") {
    Derivation m = add_to_mult(identity_derivation());
    CHECK(depth(m) == 2);
    CHECK(m.premises[0].rule == TypingRule::VarM);
  }

  SUBCASE("failed additive check propagates") {
    CHECK_THROWS_AS(add_to_mult(kappa_derivation(1)), Error);
  }
}

TEST_CASE("multiplicative rejections") {
  Derivation v = add_var({{"x", L("<?{_<1} X>[1]")}, {"y", L("<?{_<1} Y>[1]")}}, "x", L("<~X>[1]"));
  CHECK(check_additive(v).ok);
  CheckReport r = check_mult(v);
  CHECK_FALSE(r.ok);
  CHECK(r.message.find("extra context") != std::string::npos);

  Derivation a = mk_weak_lam("y", L("<?{_<1} X>[1]"), mk_var("x", L("<?{_<1} X>[1]"), L("<~X>[1]")));
  CHECK(check_mult(mk_contr_lam("x", "y", "z", L("<?{_<1} X>[2]"), a)).ok);
  CHECK(check_mult(mk_contr_lam("x", "y", "z", L("<?{_<1} X>[3]"), a)).ok);
  CheckReport bad = check_mult(mk_contr_lam("x", "y", "z", L("<?{_<1} X>[1]"), a));
  CHECK_FALSE(bad.ok);
  CHECK(bad.rule == "c_lam");
  CHECK(bad.path.empty());
}

TEST_CASE("subject reduction along head reduction") {
  for (const auto& e : corpus()) {
    if (!e.derivation) continue;
    INFO(e.name);
    Derivation m = add_to_mult(*e.derivation);
    Term t = e.term;
    std::size_t steps = 0;
    while (auto s = find_step(t, Strategy::Head)) {
      REQUIRE(steps < 20);
      m = subject_reduce(m, s->path);
      CheckReport r = check_mult(m);
      REQUIRE_MESSAGE(r.ok, r.str());
      CHECK(alpha_equal(m.conclusion.subject, s->result));
      CHECK(lf_equal(m.conclusion.type, e.derivation->conclusion.type));
      t = s->result;
      ++steps;
    }
    CHECK(steps == e.expected.at(Strategy::Head).steps);
  }
}

TEST_CASE("subject reduction errors") {
  Derivation m = add_to_mult(corpus_entry("identity_app").derivation.value());
  CHECK_THROWS_AS(subject_reduce(m, Path{1}), Error);
  CHECK_THROWS_AS(subject_reduce(m, Path{0, 0}), Error);
  Derivation bad = m;
  bad.premises[0].conclusion.type = L("<~X -[1]-> ~X>[0]");
  CHECK_THROWS_AS(subject_reduce(bad, Path{}), Error);
}

TEST_CASE("theta step keeps the type through subtyping") {
  // mu a.[a]y with a fresh for y
  Derivation y = mk_var("y", L("<?{_<1} X>[1]"), L("<~X>[1]"));
  Derivation d = mk_mu_abs("a", mk_mu_name("a", y, L("<bot>[0]")));
  REQUIRE(check_mult(d).ok);
  Derivation r = subject_reduce(d, Path{});
  CHECK(check_mult(r).ok);
  CHECK(r.conclusion.subject.same(T("y")));
  CHECK(lf_equal(r.conclusion.type, L("<~X>[1]")));
}

TEST_CASE("derivation subtyping") {
  Derivation m = add_to_mult(kappa_derivation(2));
  Judgment target = m.conclusion;
  target.type.label = 4;
  Derivation s = d_subtype(m, target);
  CHECK(check_mult(s).ok);
  CHECK(lf_equal(s.conclusion.type, target.type));
  target.type.label = 1;
  CHECK_THROWS_AS(d_subtype(m, target), Error);
}

TEST_CASE("label perturbations") {
  std::mt19937 rng(7);
  std::size_t accepted = 0, rejected = 0;
  for (int round = 0; round < 120; ++round) {
    const auto& entries = corpus();
    const CorpusEntry& e = entries[rng() % entries.size()];
    if (!e.derivation) continue;
    Derivation d = *e.derivation;
    std::vector<LabelledFormula*> slots;
    each_node(d, [&](Derivation& n) {
      slots.push_back(&n.conclusion.type);
      for (auto& [_, f] : n.conclusion.lam_ctx) slots.push_back(&f);
      for (auto& [_, f] : n.conclusion.mu_ctx) slots.push_back(&f);
    });
    slots[rng() % slots.size()]->label = static_cast<unsigned long long>(rng() % 4);
    INFO(e.name, " round ", round);
    if (check_additive(d).ok) {
      ++accepted;
      CheckReport r = check_mult(add_to_mult(d));
      CHECK_MESSAGE(r.ok, r.str());
    } else {
      ++rejected;
      CHECK_THROWS_AS(add_to_mult(d), Error);
    }
  }
  CHECK(accepted > 0);
  CHECK(rejected > 0);
}
