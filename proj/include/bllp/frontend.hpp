// Workflows combining the typing, proof and reduction layers.

#ifndef BLLP_FRONTEND_HPP
#define BLLP_FRONTEND_HPP

#include <string>
#include <vector>

#include "bllp/corpus.hpp"
#include "bllp/proofs.hpp"

namespace bllp {

struct PolystepReport {
  bool checked = false;
  /// Head steps taken, capped at bound + 1.
  std::size_t steps = 0;
  ResourcePoly weight;
  /// The weight with residual variables set to zero.
  Natural bound = 0;
  bool normal = false;
  bool ok = false;
  std::string message;

  std::string str() const;
};

/// Checks d, weighs its proof and head-reduces t with fuel bound + 1.
PolystepReport verify_polystep(const Term& t, const Derivation& d);
PolystepReport verify_polystep(const CorpusEntry& e);

struct ChainLink {
  Term term;
  Derivation derivation;
  ResourcePoly weight;
};

/// Follows head reduction from d's subject, rebuilding the derivation with
/// subject_reduce at every step. Stops at a normal form or after fuel steps.
std::vector<ChainLink> subject_chain(const Derivation& d, std::size_t fuel);

}  // namespace bllp

#endif  // BLLP_FRONTEND_HPP
