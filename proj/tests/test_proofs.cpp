#include "doctest.h"

#include "bllp/corpus.hpp"
#include "bllp/proofs.hpp"
#include "bllp/syntax.hpp"

using namespace bllp;

namespace {
LabelledFormula L(const char* s) { return parse_labelled(s); }
ResourcePoly P(const char* s) { return parse_poly(s); }

std::size_t count_rule(const Proof& p, ProofRule r) {
  std::size_t n = p.rule == r;
  for (const auto& q : p.premises) n += count_rule(q, r);
  return n;
}

Proof mapped(const char* name) { return map_derivation(add_to_mult(*corpus_entry(name).derivation)); }

}  // namespace

TEST_CASE("rule checks") {
  Proof ax = mk_ax(L("<X>[1]"), L("<~X>[1]"));
  CHECK(check_proof(ax).ok);
  CHECK(weight(ax) == ResourcePoly(0));

  Proof one = mk_one(L("<1>[1]"));
  CHECK(check_proof(one).ok);
  CHECK(weight(one) == ResourcePoly(0));
  Proof bot = mk_bot(one, L("<bot>[1]"));
  CHECK(check_proof(bot).ok);

  Proof ax2 = mk_ax(L("<Y>[1]"), L("<~Y>[1]"));
  CHECK(check_proof(mk_tensor(ax, 0, ax2, 0, L("<X * Y>[1]"))).ok);
  ProofReport bad = check_proof(mk_tensor(ax, 0, ax2, 0, L("<X * Y>[2]")));
  CHECK_FALSE(bad.ok);
  CHECK(bad.path.empty());

  CHECK_FALSE(check_proof(mk_ax(L("<X>[1]"), L("<~Y>[1]"))).ok);
}

TEST_CASE("bot/1 cut") {
  Proof bot = mk_bot(mk_one(L("<1>[1]")), L("<bot>[1]"));
  Proof cut = mk_cut(bot, 1, mk_one(L("<1>[1]")), 0);
  REQUIRE(check_proof(cut).ok);
  CHECK(weight(cut) == ResourcePoly(1));
  REQUIRE(logical_kind(cut, {}) == StepKind::BotOne);
  Proof out = fire_logical(cut, {});
  CHECK(out.rule == ProofRule::One);
  CHECK(check_proof(out).ok);
  CHECK(weight(out) == ResourcePoly(0));
}

TEST_CASE("commutation exposes the cut") {
  Proof inner = mk_bot(mk_bot(mk_one(L("<1>[1]")), L("<bot>[1]")), L("<bot>[1]"));
  Proof p2 = mk_par(inner, 1, 2, L("<bot par bot>[1]"));
  Proof c2 = mk_cut(mk_bot(p2, L("<bot>[1]")), 2, mk_one(L("<1>[1]")), 0);
  REQUIRE(check_proof(c2).ok);
  Exposed e = expose_logical(c2, {});
  CHECK(e.commutations == 0);

  // The cut formula is not introduced by the last rule of the negative side.
  Proof b3 = mk_bot(inner, L("<bot>[1]"));
  Proof p3 = mk_par(b3, 1, 2, L("<bot par bot>[1]"));
  Proof c3 = mk_cut(p3, 1, mk_one(L("<1>[1]")), 0);
  REQUIRE(check_proof(c3).ok);
  CHECK_FALSE(logical_kind(c3, {}));
  Exposed e3 = expose_logical(c3, {});
  CHECK(e3.commutations == 1);
  REQUIRE(e3.weights.size() == 1);
  CHECK(e3.weights[0] == weight(c3));
  CHECK(check_proof(e3.proof).ok);
  CHECK(logical_kind(e3.proof, e3.cut) == StepKind::BotOne);
}

TEST_CASE("multiplicative step") {
  Proof ax = mk_ax(L("<X>[1]"), L("<~X>[1]"));
  Proof ay = mk_ax(L("<Y>[1]"), L("<~Y>[1]"));
  Proof ten = mk_tensor(ax, 0, ay, 0, L("<X * Y>[1]"));
  Proof bx = mk_ax(L("<X>[1]"), L("<~X>[1]"));
  Proof by = mk_ax(L("<Y>[1]"), L("<~Y>[1]"));
  Proof two = mk_tensor(bx, 0, by, 0, L("<X * Y>[1]"));
  Proof par = mk_par(two, 0, 1, L("<~X par ~Y>[1]"));
  Proof cut = mk_cut(par, static_cast<int>(par.conclusion.size()) - 1, ten, 2);
  REQUIRE(check_proof(cut).ok);
  REQUIRE(logical_kind(cut, {}) == StepKind::Multiplicative);
  Proof out = fire_logical(cut, {});
  CHECK(check_proof(out).ok);
  CHECK(count_rule(out, ProofRule::Cut) == 2);
  CHECK(poly_leq(weight(out) + ResourcePoly(1), weight(cut)));
}

TEST_CASE("proof_sim") {
  Proof p = mapped("church2");
  CHECK(proof_sim(p, p));
  CHECK(proof_sim(p, m_subst(p, "zz", P("3"))));
  CHECK_FALSE(proof_sim(p, mapped("church1")));
  CHECK_FALSE(proof_sim(mk_ax(L("<X>[1]"), L("<~X>[1]")), mk_one(L("<1>[1]"))));
}

TEST_CASE("malleability") {
  SUBCASE("splitting an axiom") {
    Proof ax = mk_ax(L("<X>[2]"), L("<~X>[2]"));
    auto [a, b] = m_split(ax, P("1"), P("1"));
    CHECK(check_proof(a).ok);
    CHECK(check_proof(b).ok);
    CHECK(proof_sim(a, ax));
    CHECK(proof_sim(b, ax));
    CHECK(lf_equal(a.conclusion[0], L("<X>[1]")));
  }
  SUBCASE("parametric splitting of one") {
    Proof one = mk_one(L("<1>[1]"));
    Proof out = m_parsplit(one, "x", P("1"), L("<1>[1]"));
    CHECK(check_proof(out).ok);
    CHECK(proof_sim(out, one));
  }
  SUBCASE("subtyping an axiom") {
    Proof ax = mk_ax(L("<X>[2]"), L("<~X>[2]"));
    Proof out = m_subtype(ax, 0, L("<X>[1]"));
    CHECK(check_proof(out).ok);
    CHECK(lf_equal(out.conclusion[0], L("<X>[1]")));
    CHECK_THROWS(m_subtype(ax, 0, L("<X>[3]")));
  }
  SUBCASE("corpus proofs") {
    for (const auto& e : corpus()) {
      if (!e.derivation) continue;
      INFO(e.name);
      Proof p = map_derivation(add_to_mult(*e.derivation));
      Proof s = m_subst(p, "fresh_var", P("2"));
      CHECK(check_proof(s).ok);
      CHECK(proof_sim(s, p));
      for (std::size_t i = 0; i < p.conclusion.size(); ++i) {
        const auto& f = p.conclusion[i];
        if (!f.positive()) continue;
        LabelledFormula smaller{f.formula, f.binder, ResourcePoly(0)};
        Proof q = m_subtype(p, static_cast<int>(i), smaller);
        CHECK(check_proof(q).ok);
        CHECK(proof_sim(q, p));
      }
    }
  }
}

TEST_CASE("occurrences") {
  Proof bot = mk_bot(mk_one(L("<1>[1]")), L("<bot>[1]"));
  Proof cut = mk_cut(bot, 1, mk_one(L("<1>[1]")), 0);
  CHECK(classify_occurrence(cut, {0}, 1) == Occurrence::Active);
  CHECK(classify_occurrence(cut, {0}, 0) == Occurrence::Passive);
  CHECK(classify_occurrence(cut, {0, 0}, 0) == Occurrence::Passive);
  CHECK(external_cuts(cut).size() == 1);
  CHECK(external_cuts(bot).empty());
}

TEST_CASE("mapping") {
  for (const auto& e : corpus()) {
    if (!e.derivation) continue;
    INFO(e.name);
    Proof p = map_derivation(add_to_mult(*e.derivation));
    ProofReport r = check_proof(p);
    CHECK_MESSAGE(r.ok, r.str());
  }
  Proof id = mapped("identity");
  CHECK(id.rule == ProofRule::Par);
  CHECK(id.premises[0].rule == ProofRule::Der);
  CHECK(id.premises[0].premises[0].rule == ProofRule::Ax);
  CHECK(count_rule(mapped("aleph"), ProofRule::Bot) >= 1);
  CHECK(weight(id) == ResourcePoly(0));
  CHECK_FALSE(step_special(id).has_value());
}

TEST_CASE("normalization") {
  for (const char* name : {"identity_app", "kappa_app", "church2_app", "aleph_app0", "aleph_app3"}) {
    INFO(name);
    Proof p = mapped(name);
    ResourcePoly w = weight(p);
    NormalizeResult r = normalize(p, 200, true);
    CHECK_FALSE(r.fuel_exhausted);
    CHECK(poly_leq(ResourcePoly(static_cast<long>(r.steps)), w));
    CHECK(check_proof(r.proof).ok);
    ResourcePoly prev = w;
    for (const auto& s : r.trace) {
      for (const auto& cw : s.commutation_weights) CHECK(cw == prev);
      ResourcePoly next = weight(s.result);
      CHECK(poly_leq(next + ResourcePoly(1), prev));
      CHECK(check_proof(s.result).ok);
      prev = next;
    }
    CHECK_FALSE(step_special(r.proof).has_value());
  }

  NormalizeResult c = normalize(mapped("church2_app"), 200, true);
  bool contraction = false;
  for (const auto& s : c.trace) contraction = contraction || s.kind == StepKind::Contraction;
  CHECK(contraction);
}
