#include "doctest.h"

#include "bllp/frontend.hpp"
#include "bllp/syntax.hpp"

using namespace bllp;

TEST_CASE("polystep soundness") {
  struct Case {
    const char* name;
    std::size_t steps;
  };
  for (Case c : {Case{"kappa_app", 3}, Case{"aleph_app1", 2}, Case{"identity_app", 1}}) {
    INFO(c.name);
    PolystepReport r = verify_polystep(corpus_entry(c.name));
    CHECK(r.checked);
    CHECK(r.normal);
    CHECK(r.steps == c.steps);
    CHECK(Natural(r.steps) <= r.bound);
    CHECK(r.ok);
  }
  for (const auto& e : corpus()) {
    if (!e.derivation) continue;
    INFO(e.name);
    PolystepReport r = verify_polystep(e);
    CHECK_MESSAGE(r.ok, r.str());
  }
}

TEST_CASE("polystep rejects a mismatched derivation") {
  PolystepReport r = verify_polystep(parse_term("y"), *corpus_entry("identity_app").derivation);
  CHECK_FALSE(r.checked);
  CHECK_FALSE(r.ok);
}

TEST_CASE("subject chains reach head normal forms") {
  for (const auto& e : corpus()) {
    if (!e.derivation) continue;
    INFO(e.name);
    auto chain = subject_chain(*e.derivation, 100);
    CHECK_FALSE(find_step(chain.back().term, Strategy::Head).has_value());
    for (const auto& l : chain) {
      CHECK(check_mult(l.derivation).ok);
      CHECK(alpha_equal(l.derivation.conclusion.subject, l.term));
    }
  }
}
