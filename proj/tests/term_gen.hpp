// Random lambda-mu terms for property tests.

#ifndef BLLP_TESTS_TERM_GEN_HPP
#define BLLP_TESTS_TERM_GEN_HPP

#include <random>

#include "bllp/lammu.hpp"

namespace bllp::testing {

inline Term random_term(std::mt19937& rng, int depth) {
  static const char* vars[] = {"x", "y", "z"};
  static const char* names[] = {"a", "b"};
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 0 : 5), v(0, 2), n(0, 1);
  switch (pick(rng)) {
    case 0:
      return Term::var(vars[v(rng)]);
    case 1:
      return Term::lam(vars[v(rng)], random_term(rng, depth - 1));
    case 2:
      return Term::mu(names[n(rng)], random_term(rng, depth - 1));
    case 3:
      return Term::name(names[n(rng)], random_term(rng, depth - 1));
    default:
      return Term::app(random_term(rng, depth - 1), random_term(rng, depth - 1));
  }
}

// An alpha-variant of t with every binder renamed.
inline Term rename_binders(const Term& t, const std::string& suffix) {
  switch (t.kind()) {
    case TermKind::Var:
      return t;
    case TermKind::App:
      return Term::app(rename_binders(t.fun(), suffix), rename_binders(t.arg(), suffix));
    case TermKind::Name:
      return Term::name(t.id(), rename_binders(t.body(), suffix));
    case TermKind::Lam: {
      std::string y = t.id() + suffix;
      return Term::lam(y, rename_binders(rename_var(t.body(), t.id(), y), suffix));
    }
    case TermKind::Mu: {
      std::string c = t.id() + suffix;
      return Term::mu(c, rename_binders(rename_name(t.body(), t.id(), c), suffix));
    }
  }
  return t;
}

}  // namespace bllp::testing

#endif
