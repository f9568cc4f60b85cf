// Type derivations for lambda-mu terms: checking in the additive and the
// multiplicative systems, elaboration, and subject reduction.

#ifndef BLLP_TYPING_HPP
#define BLLP_TYPING_HPP

#include <map>
#include <string>
#include <vector>

#include "bllp/formula.hpp"
#include "bllp/lammu.hpp"

namespace bllp {

using LamCtx = std::map<LamVarId, LabelledFormula>;
using MuCtx = std::map<MuVarId, LabelledFormula>;

/// Gamma |- t : N | Delta. Gamma holds labelled modal formulas, N and
/// Delta labelled typing formulas.
struct Judgment {
  LamCtx lam_ctx;
  Term subject;
  LabelledFormula type;
  MuCtx mu_ctx;

  std::string str() const;
};

enum class TypingRule { Var, Abs, App, MuName, MuAbs, WeakLam, ContrLam, WeakMu, ContrMu, VarM, AppM };
std::string to_string(TypingRule r);
TypingRule parse_typing_rule(const std::string& s);

struct Derivation {
  TypingRule rule;
  Judgment conclusion;
  std::vector<Derivation> premises;
  /// Polynomial annotations; applications carry h.
  std::map<std::string, ResourcePoly> polys;
  /// Additive applications: the context witnesses Upsilon and Pi.
  LamCtx upsilon;
  MuCtx pi;
  /// Contraction rules: "x" and "y" are merged into "z".
  std::map<std::string, std::string> names;

  std::size_t size() const;
};

struct CheckReport {
  bool ok = true;
  /// Premise indices from the root to the failing node.
  Path path;
  std::string rule;
  std::string message;

  std::string str() const;
};

CheckReport check_additive(const Derivation& d);
CheckReport check_mult(const Derivation& d);

/// Context relations. ctx_leq allows a to have entries b lacks unless
/// exact is set.
bool ctx_equal(const LamCtx& a, const LamCtx& b);
bool ctx_leq(const LamCtx& a, const LamCtx& b, bool exact = false);
/// Pointwise sum; entries present on both sides are combined with lf_sum.
LamCtx ctx_union(const LamCtx& a, const LamCtx& b);
/// sum_{b<h} of every entry.
LamCtx ctx_sum(const LamCtx& c, const VarId& b, const ResourcePoly& h);
LabelledFormula with_binder(const LabelledFormula& a, const VarId& x);

/// Renames a free lambda variable (or mu name) throughout a derivation.
Derivation d_rename_var(const Derivation& d, const LamVarId& x, const LamVarId& y);
Derivation d_rename_name(const Derivation& d, const MuVarId& a, const MuVarId& b);
/// Every resource variable occurring in d, binders included.
VarSet resource_vars(const Derivation& d);
/// Substitutes p for the resource variable x in every judgment.
Derivation d_subst(const Derivation& d, const VarId& x, const ResourcePoly& p);
/// A multiplicative derivation of target, which must be pointwise below
/// the conclusion of d and have the same subject.
Derivation d_subtype(const Derivation& d, const Judgment& target);

/// Multiplicative node constructors; subjects are computed from premises.
Derivation mk_var(const LamVarId& x, const LabelledFormula& entry, const LabelledFormula& type);
Derivation mk_abs(const LamVarId& x, const Derivation& premise, const LabelledFormula& type);
Derivation mk_app(const Derivation& fun, const Derivation& arg, const ResourcePoly& h, const LabelledFormula& type,
                  const LamCtx& psi, const MuCtx& phi);
Derivation mk_mu_name(const MuVarId& a, const Derivation& premise, const LabelledFormula& type);
Derivation mk_mu_abs(const MuVarId& a, const Derivation& premise);
Derivation mk_weak_lam(const LamVarId& x, const LabelledFormula& entry, const Derivation& premise);
Derivation mk_weak_mu(const MuVarId& a, const LabelledFormula& entry, const Derivation& premise);
Derivation mk_contr_lam(const LamVarId& x, const LamVarId& y, const LamVarId& z, const LabelledFormula& entry,
                        const Derivation& premise);
Derivation mk_contr_mu(const MuVarId& x, const MuVarId& y, const MuVarId& z, const LabelledFormula& entry,
                       const Derivation& premise);

/// Additive constructors for the leaf, application and naming rules;
/// abs and mu-abs are shared with the multiplicative system.
Derivation add_var(const LamCtx& ctx, const LamVarId& x, const LabelledFormula& type, const MuCtx& mu = {});
Derivation add_app(const Derivation& fun, const Derivation& arg, const ResourcePoly& h, const LabelledFormula& type,
                   const LamCtx& lam_ctx, const MuCtx& mu_ctx, const LamCtx& upsilon, const MuCtx& pi);
Derivation add_mu_name(const MuVarId& a, const Derivation& premise, const LabelledFormula& type,
                       const LabelledFormula& entry);

/// Elaborates an additive derivation into a multiplicative one with the
/// same conclusion. Throws if d does not check.
Derivation add_to_mult(const Derivation& d);

/// A multiplicative derivation for the head reduct of the subject, given
/// the path of the head redex. Throws on a non-redex position.
Derivation subject_reduce(const Derivation& d, const Path& position);

}  // namespace bllp

#endif  // BLLP_TYPING_HPP
