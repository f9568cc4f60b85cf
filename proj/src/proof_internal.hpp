// Helpers shared by the proof sources.

#ifndef BLLP_PROOF_INTERNAL_HPP
#define BLLP_PROOF_INTERNAL_HPP

#include "bllp/proofs.hpp"

namespace bllp::detail {

/// lf_leq that answers false on polarity or shape errors.
bool safe_leq(const LabelledFormula& a, const LabelledFormula& b);
VarSet proof_vars(const Proof& p);
/// A node with shape's rule and links over new premises. Context formulas
/// are copied from the premises (summed over the copy index for boxes).
Proof rebuild(const Proof& shape, std::vector<Proof> premises, const std::optional<LabelledFormula>& principal);
/// Premise position of the active slot (-1, -2) in premise k.
int active_pos(const Proof& p, std::size_t k, int slot);
/// Labelled components of a binary formula, over a fresh binder.
std::pair<LabelledFormula, LabelledFormula> components(const LabelledFormula& a);

/// Moves the last rule of premise k of a Cut or Tensor node below it.
/// Returns the new subproof and the premise index now holding the node.
std::pair<Proof, int> sink(const Proof& lower, std::size_t k);
/// Pulls one non-⊗ rule out of the ⊗-tree part of a ⊗-rooted proof.
std::optional<Proof> float_once(const Proof& p);

}  // namespace bllp::detail

#endif
