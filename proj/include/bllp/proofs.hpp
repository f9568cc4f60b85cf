// Proofs of the bounded polarized sequent calculus: checking, erasure,
// weights, malleability transformations, the image of type derivations, and
// cut elimination.

#ifndef BLLP_PROOFS_HPP
#define BLLP_PROOFS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bllp/formula.hpp"
#include "bllp/lammu.hpp"
#include "bllp/typing.hpp"

namespace bllp {

using Sequent = std::vector<LabelledFormula>;

enum class ProofRule { Ax, Cut, Par, Tensor, Bang, Der, Weak, Contr, Bot, One };
std::string to_string(ProofRule r);
ProofRule parse_proof_rule(const std::string& s);

/// A proof node. The conclusion is an ordered sequent; links[k][i] gives the
/// conclusion position of formula i of premise k, or -1 / -2 for the first
/// and second active formula of the rule. principal is the position of the
/// introduced formula (-1 for Ax and Cut).
///
/// Active formulas per rule: Cut takes -1 in both premises (negative in the
/// first); Par takes -1 (left) and -2 (right); Tensor -1 in each premise;
/// Bang -1 for the main formula; Der -1; Contr -1 and -2 in sum order.
/// Bang context formulas satisfy M_i ⊑ Σ_{y<q} N_i, y and q being the
/// principal's binder and label.
struct Proof {
  ProofRule rule = ProofRule::One;
  Sequent conclusion;
  std::vector<Proof> premises;
  std::vector<std::vector<int>> links;
  int principal = -1;

  std::size_t size() const;
  std::string str() const;
};

/// Premise indices from the root to a node.
using ProofPath = std::vector<int>;
const Proof& proof_at(const Proof& p, const ProofPath& path);
Proof replace_proof_at(const Proof& p, const ProofPath& path, Proof sub);

struct ProofReport {
  bool ok = true;
  ProofPath path;
  std::string rule;
  std::string message;

  std::string str() const;
};
ProofReport check_proof(const Proof& p);

/// Leaf and node constructors. Conclusions list the context formulas of the
/// premises in order, followed by the principal formula.
Proof mk_ax(const LabelledFormula& a, const LabelledFormula& b);
Proof mk_one(const LabelledFormula& a);
Proof mk_cut(const Proof& neg, int a, const Proof& pos, int b);
Proof mk_par(const Proof& premise, int left, int right, const LabelledFormula& principal);
Proof mk_tensor(const Proof& left, int a, const Proof& right, int b, const LabelledFormula& principal);
/// contexts[i] is the conclusion formula for the i-th non-main premise formula.
Proof mk_bang(const Proof& premise, int main, const Sequent& contexts, const LabelledFormula& principal);
Proof mk_der(const Proof& premise, int active, const LabelledFormula& principal);
Proof mk_weak(const Proof& premise, const LabelledFormula& principal);
Proof mk_contr(const Proof& premise, int first, int second, const LabelledFormula& principal);
Proof mk_bot(const Proof& premise, const LabelledFormula& principal);

/// Reorders the conclusion of p to match target (lf_equal, greedy).
Proof reorder(const Proof& p, const Sequent& target);
/// Moves conclusion position i to position j.
Proof permute(const Proof& p, const std::vector<int>& perm);

/// Rule tree with formulas reduced to their polynomial-free skeletons.
std::string erase(const Proof& p);
bool proof_sim(const Proof& a, const Proof& b);
std::string skeleton(const Formula& a);

struct PreWeight {
  ResourcePoly poly;
  std::vector<VarSet> var_sets;
};
/// Multiplier of a box's inner weight: the sum over the copy index y<q of
/// the conclusion label, or the literal bound p of !_{x<p}.
enum class BoxWeight { LabelSum, BangBound };
PreWeight preweight(const Proof& p, BoxWeight mode = BoxWeight::LabelSum);
ResourcePoly weight(const Proof& p, BoxWeight mode = BoxWeight::LabelSum);

/// Malleability. m_subtype replaces the conclusion formula at pos by target,
/// which must be below it.
Proof m_subtype(const Proof& p, int pos, const LabelledFormula& target);
Proof m_subst(const Proof& p, const VarId& x, const ResourcePoly& q);
bool is_tensor_tree(const Proof& p);
/// Position of the positive conclusion formula, or -1.
int positive_position(const Proof& p);
/// Splits a ⊗-tree of ⟨P⟩[x<p] into proofs of ⟨P⟩[x<r] and ⟨P{x:=y+r}⟩[y<s].
std::pair<Proof, Proof> m_split(const Proof& p, const ResourcePoly& r, const ResourcePoly& s);
/// One member of a parametric split: given a ⊗-tree of a formula above
/// Σ_{x<bound} member, a proof of member (with x free) whose context sums
/// over x<bound above the original context.
Proof m_parsplit(const Proof& p, const VarId& x, const ResourcePoly& bound, const LabelledFormula& member);

enum class Occurrence { Active, Passive };
std::string to_string(Occurrence o);
Occurrence classify_occurrence(const Proof& p, const ProofPath& node, int pos);

/// Paths of the cuts of p that are not inside a box, leftmost-outermost first.
std::vector<ProofPath> external_cuts(const Proof& p);

enum class StepKind { Axiom, Multiplicative, BotOne, Dereliction, Contraction, Weakening, Digging };
std::string to_string(StepKind k);

struct Exposed {
  Proof proof;
  ProofPath cut;
  /// Weight after each commutation, in order.
  std::vector<ResourcePoly> weights;
  std::size_t commutations = 0;
};
/// Commutes the designated cut upward until it is logical.
Exposed expose_logical(const Proof& p, const ProofPath& cut);
/// The logical step kind of the cut at path, or nothing if it is not logical.
std::optional<StepKind> logical_kind(const Proof& p, const ProofPath& cut);
Proof fire_logical(const Proof& p, const ProofPath& cut);

struct SpecialStep {
  Proof before_fire;  // after commutations
  Proof result;
  ProofPath cut;
  StepKind kind;
  std::size_t commutations = 0;
  std::vector<ResourcePoly> commutation_weights;
};
std::optional<SpecialStep> step_special_traced(const Proof& p);
std::optional<Proof> step_special(const Proof& p);

struct NormalizeResult {
  Proof proof;
  std::size_t steps = 0;
  bool fuel_exhausted = false;
  std::vector<SpecialStep> trace;
};
NormalizeResult normalize(const Proof& p, std::size_t fuel, bool keep_trace = false);

/// The proof image of a multiplicative derivation.
Proof map_derivation(const Derivation& d);

}  // namespace bllp

#endif  // BLLP_PROOFS_HPP
