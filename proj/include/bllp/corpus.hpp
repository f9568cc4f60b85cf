// The bundled terms and additive type derivations.

#ifndef BLLP_CORPUS_HPP
#define BLLP_CORPUS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bllp/typing.hpp"

namespace bllp {

struct Expectation {
  Term normal_form;
  std::size_t steps = 0;
};

struct CorpusEntry {
  std::string name;
  Term term;
  /// Additive derivation of term, if the entry is typed.
  std::optional<Derivation> derivation;
  std::map<Strategy, Expectation> expected;
};

/// Entries sorted by name.
const std::vector<CorpusEntry>& corpus();
const CorpusEntry& corpus_entry(const std::string& name);

/// kappa typed with Pierce's law at r = s = 1 and the given k.
Derivation kappa_derivation(const ResourcePoly& k);
/// aleph typed at h = r = k = 1 with x as the answer type.
Derivation aleph_derivation(const Formula& x);
Derivation identity_derivation();
/// The Church numeral n at type (X -> X) -> X -> X.
Derivation church_derivation(unsigned n);

}  // namespace bllp

#endif  // BLLP_CORPUS_HPP
