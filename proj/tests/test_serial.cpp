#include "doctest.h"

#include "bllp/corpus.hpp"
#include "bllp/serial.hpp"
#include "bllp/syntax.hpp"

using namespace bllp;

namespace {
bool same_derivation(const Derivation& a, const Derivation& b) {
  if (a.rule != b.rule || a.premises.size() != b.premises.size()) return false;
  if (!alpha_equal(a.conclusion.subject, b.conclusion.subject)) return false;
  if (!lf_equal(a.conclusion.type, b.conclusion.type)) return false;
  if (!ctx_equal(a.conclusion.lam_ctx, b.conclusion.lam_ctx) || !ctx_equal(a.conclusion.mu_ctx, b.conclusion.mu_ctx))
    return false;
  if (a.names != b.names || a.polys != b.polys) return false;
  for (std::size_t i = 0; i < a.premises.size(); ++i)
    if (!same_derivation(a.premises[i], b.premises[i])) return false;
  return true;
}
}  // namespace

TEST_CASE("derivation files round-trip") {
  for (const auto& e : corpus()) {
    if (!e.derivation) continue;
    INFO(e.name);
    for (const Derivation& d : {*e.derivation, add_to_mult(*e.derivation)}) {
      Derivation back = parse_derivation(derivation_to_text(d));
      CHECK(same_derivation(d, back));
      CHECK(check_additive(back).ok == check_additive(d).ok);
      CHECK(check_mult(back).ok == check_mult(d).ok);
    }
  }
}

TEST_CASE("proof files round-trip") {
  for (const auto& e : corpus()) {
    if (!e.derivation) continue;
    INFO(e.name);
    Proof p = map_derivation(add_to_mult(*e.derivation));
    Proof back = parse_proof(proof_to_text(p));
    CHECK(proof_sim(p, back));
    CHECK(erase(p) == erase(back));
    CHECK(check_proof(back).ok);
    CHECK(weight(back) == weight(p));
  }
}

TEST_CASE("malformed files") {
  CHECK_THROWS_AS(parse_derivation("{"), ParseError);
  CHECK_THROWS_AS(parse_derivation(R"({"format":"derivation","version":7,"root":{}})"), ParseError);
  CHECK_THROWS_AS(parse_proof(R"({"format":"derivation","version":1,"root":{}})"), ParseError);
  CHECK_THROWS_AS(parse_proof(R"({"format":"proof","version":1,"root":{"rule":"Ax","conclusion":["<X>[1"]}})"),
                  ParseError);
  Proof ax = parse_proof(R"({"format":"proof","version":1,"root":{"rule":"Ax","conclusion":["<X>[1]","<~X>[1]"]}})");
  CHECK(check_proof(ax).ok);
}
