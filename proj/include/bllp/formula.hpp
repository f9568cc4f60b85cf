// Polarized formulas and labelled formulas.

#ifndef BLLP_FORMULA_HPP
#define BLLP_FORMULA_HPP

#include <memory>
#include <optional>
#include <string>

#include "bllp/respoly.hpp"

namespace bllp {

enum class FormulaKind { Atom, Tensor, One, Bang, NegAtom, Par, Bottom, WhyNot };

/// Immutable formula. Positive: V, P*Q, 1, !{x<p}N. Negative: ~V, N par M,
/// bot, ?{x<p}P. The binder x of !/? scopes over the body, not over p.
class Formula {
 public:
  Formula();  // bottom

  static Formula atom(const std::string& name);
  static Formula neg_atom(const std::string& name);
  static Formula one();
  static Formula bottom();
  static Formula tensor(const Formula& a, const Formula& b);
  static Formula par(const Formula& a, const Formula& b);
  static Formula bang(const VarId& x, const ResourcePoly& bound, const Formula& body);
  static Formula whynot(const VarId& x, const ResourcePoly& bound, const Formula& body);
  /// N -[x<p]-> M, i.e. ?{x<p}~N par M.
  static Formula arrow(const Formula& n, const VarId& x, const ResourcePoly& p, const Formula& m);

  FormulaKind kind() const;
  bool positive() const;
  bool negative() const { return !positive(); }

  const std::string& name() const;
  const Formula& left() const;
  const Formula& right() const;
  const VarId& binder() const;
  const ResourcePoly& bound() const;
  const Formula& body() const;

  VarSet free_vars() const;
  bool mentions(const VarId& x) const;
  /// Structural size, used for measures.
  std::size_t size() const;

  std::string str() const;

  /// Structural identity (not alpha-equivalence).
  bool same(const Formula& other) const;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

Formula negate(const Formula& a);
bool alpha_equal(const Formula& a, const Formula& b);
bool formula_leq(const Formula& a, const Formula& b);

/// Capture-avoiding substitution of p for x in every polynomial position.
Formula subst_poly(const Formula& a, const VarId& x, const ResourcePoly& p);
Formula subst_polys(const Formula& a, const std::map<VarId, ResourcePoly>& s);

/// <A>[x<p]: x is bound in A and must not occur in p.
struct LabelledFormula {
  Formula formula;
  VarId binder = "_";
  ResourcePoly label;

  bool positive() const { return formula.positive(); }
  VarSet free_vars() const;
  std::string str() const;
};

LabelledFormula labelled(const Formula& a, const VarId& x, const ResourcePoly& p);
LabelledFormula labelled(const Formula& a, const ResourcePoly& p);

LabelledFormula negate(const LabelledFormula& a);
/// Formula part of b expressed with a's binder.
Formula rebind(const LabelledFormula& b, const VarId& binder);
bool lf_equal(const LabelledFormula& a, const LabelledFormula& b);
/// Throws on polarity mismatch.
bool lf_leq(const LabelledFormula& a, const LabelledFormula& b);
LabelledFormula lf_subst(const LabelledFormula& a, const VarId& x, const ResourcePoly& p);
LabelledFormula lf_subst_all(const LabelledFormula& a, const std::map<VarId, ResourcePoly>& s);

/// <N>[x<p] ⊎ <N{x/y+p}>[y<q] = <N>[x<p+q]. Throws on shape mismatch.
LabelledFormula lf_sum(const LabelledFormula& a, const LabelledFormula& b);
/// The second summand that pairs with a at label q: <N{x/y+p}>[y<q].
LabelledFormula lf_shifted(const LabelledFormula& a, const ResourcePoly& q);

/// Witness for a bounded sum of labelled formulas: the base formula N with
/// binder x such that the family member is N{x / y + sum_{u<z} r{z/u}}.
struct BoundedSumWitness {
  Formula base;
  VarId base_binder;
};

bool verify_bounded_sum(const LabelledFormula& candidate, const VarId& z, const ResourcePoly& bound,
                        const LabelledFormula& member, const BoundedSumWitness& witness);

/// sum_{z<bound} member. Without a witness the base is taken to be the
/// z = 0 member; throws if the family is not of the required shape.
LabelledFormula lf_bounded_sum(const LabelledFormula& member, const VarId& z, const ResourcePoly& bound,
                               const std::optional<BoundedSumWitness>& witness = std::nullopt);

enum class FormulaClass { Typing, Modal, Neither };
FormulaClass classify(const Formula& a);
std::string to_string(FormulaClass c);

}  // namespace bllp

#endif  // BLLP_FORMULA_HPP
