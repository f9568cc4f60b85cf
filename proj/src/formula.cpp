#include "bllp/formula.hpp"

#include <sstream>

namespace bllp {

struct Formula::Node {
  FormulaKind kind;
  std::string name;
  Formula a;  // left operand, or body of !/?
  Formula b;  // right operand
  VarId binder;
  ResourcePoly bound;
  bool leaf = false;
};

Formula::Formula() {
  static const std::shared_ptr<const Node> bot = [] {
    auto n = std::make_shared<Node>(Node{FormulaKind::Bottom, "", Formula(nullptr), Formula(nullptr), "", {}, true});
    return std::shared_ptr<const Node>(n);
  }();
  node_ = bot;
}

Formula Formula::atom(const std::string& name) {
  return Formula(std::make_shared<const Node>(Node{FormulaKind::Atom, name, Formula(nullptr), Formula(nullptr), "", {}, true}));
}

Formula Formula::neg_atom(const std::string& name) {
  return Formula(std::make_shared<const Node>(Node{FormulaKind::NegAtom, name, Formula(nullptr), Formula(nullptr), "", {}, true}));
}

Formula Formula::one() {
  static const Formula f(std::make_shared<const Node>(Node{FormulaKind::One, "", Formula(nullptr), Formula(nullptr), "", {}, true}));
  return f;
}

Formula Formula::bottom() { return Formula(); }

Formula Formula::tensor(const Formula& a, const Formula& b) {
  if (!a.positive() || !b.positive()) throw Error("tensor of non-positive formulas");
  return Formula(std::make_shared<const Node>(Node{FormulaKind::Tensor, "", a, b, "", {}, false}));
}

Formula Formula::par(const Formula& a, const Formula& b) {
  if (!a.negative() || !b.negative()) throw Error("par of non-negative formulas");
  return Formula(std::make_shared<const Node>(Node{FormulaKind::Par, "", a, b, "", {}, false}));
}

Formula Formula::bang(const VarId& x, const ResourcePoly& bound, const Formula& body) {
  if (!body.negative()) throw Error("! applied to a positive formula");
  if (bound.mentions(x)) throw Error("binder " + x + " occurs in its own bound");
  return Formula(std::make_shared<const Node>(Node{FormulaKind::Bang, "", body, Formula(nullptr), x, bound, false}));
}

Formula Formula::whynot(const VarId& x, const ResourcePoly& bound, const Formula& body) {
  if (!body.positive()) throw Error("? applied to a negative formula");
  if (bound.mentions(x)) throw Error("binder " + x + " occurs in its own bound");
  return Formula(std::make_shared<const Node>(Node{FormulaKind::WhyNot, "", body, Formula(nullptr), x, bound, false}));
}

Formula Formula::arrow(const Formula& n, const VarId& x, const ResourcePoly& p, const Formula& m) {
  return par(whynot(x, p, negate(n)), m);
}

FormulaKind Formula::kind() const { return node_->kind; }

bool Formula::positive() const {
  switch (node_->kind) {
    case FormulaKind::Atom:
    case FormulaKind::Tensor:
    case FormulaKind::One:
    case FormulaKind::Bang:
      return true;
    default:
      return false;
  }
}

const std::string& Formula::name() const { return node_->name; }
const Formula& Formula::left() const { return node_->a; }
const Formula& Formula::right() const { return node_->b; }
const VarId& Formula::binder() const { return node_->binder; }
const ResourcePoly& Formula::bound() const { return node_->bound; }
const Formula& Formula::body() const { return node_->a; }

VarSet Formula::free_vars() const {
  switch (kind()) {
    case FormulaKind::Tensor:
    case FormulaKind::Par: {
      VarSet s = left().free_vars();
      for (const auto& v : right().free_vars()) s.insert(v);
      return s;
    }
    case FormulaKind::Bang:
    case FormulaKind::WhyNot: {
      VarSet s = body().free_vars();
      s.erase(binder());
      for (const auto& v : bound().free_vars()) s.insert(v);
      return s;
    }
    default:
      return {};
  }
}

bool Formula::mentions(const VarId& x) const { return free_vars().count(x) > 0; }

std::size_t Formula::size() const {
  switch (kind()) {
    case FormulaKind::Tensor:
    case FormulaKind::Par:
      return 1 + left().size() + right().size();
    case FormulaKind::Bang:
    case FormulaKind::WhyNot:
      return 1 + body().size();
    default:
      return 1;
  }
}

bool Formula::same(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case FormulaKind::Atom:
    case FormulaKind::NegAtom:
      return name() == other.name();
    case FormulaKind::Tensor:
    case FormulaKind::Par:
      return left().same(other.left()) && right().same(other.right());
    case FormulaKind::Bang:
    case FormulaKind::WhyNot:
      return binder() == other.binder() && bound() == other.bound() && body().same(other.body());
    default:
      return true;
  }
}

namespace {

// Binding strength: 0 par/arrow, 1 tensor, 2 prefix and atoms.
int level(const Formula& a) {
  switch (a.kind()) {
    case FormulaKind::Par:
      return 0;
    case FormulaKind::Tensor:
      return 1;
    default:
      return 2;
  }
}

void print(std::ostream& out, const Formula& a, int need) {
  bool parens = level(a) < need;
  if (parens) out << "(";
  switch (a.kind()) {
    case FormulaKind::Atom:
      out << a.name();
      break;
    case FormulaKind::NegAtom:
      out << "~" << a.name();
      break;
    case FormulaKind::One:
      out << "1";
      break;
    case FormulaKind::Bottom:
      out << "bot";
      break;
    case FormulaKind::Tensor:
      print(out, a.left(), 2);
      out << " * ";
      print(out, a.right(), 1);
      break;
    case FormulaKind::Par:
      if (a.left().kind() == FormulaKind::WhyNot) {
        const Formula& w = a.left();
        print(out, negate(w.body()), 1);
        out << " -[" << w.binder() << "<" << w.bound().str() << "]-> ";
      } else {
        print(out, a.left(), 1);
        out << " par ";
      }
      print(out, a.right(), 0);
      break;
    case FormulaKind::Bang:
    case FormulaKind::WhyNot:
      out << (a.kind() == FormulaKind::Bang ? "!{" : "?{") << a.binder() << "<" << a.bound().str() << "} ";
      print(out, a.body(), 2);
      break;
  }
  if (parens) out << ")";
}

// Renames every binder to a depth-indexed reserved name.
Formula canon(const Formula& a, unsigned depth) {
  switch (a.kind()) {
    case FormulaKind::Tensor:
      return Formula::tensor(canon(a.left(), depth), canon(a.right(), depth));
    case FormulaKind::Par:
      return Formula::par(canon(a.left(), depth), canon(a.right(), depth));
    case FormulaKind::Bang:
    case FormulaKind::WhyNot: {
      VarId c = "%" + std::to_string(depth);
      Formula body = canon(subst_poly(a.body(), a.binder(), ResourcePoly::var(c)), depth + 1);
      return a.kind() == FormulaKind::Bang ? Formula::bang(c, a.bound(), body) : Formula::whynot(c, a.bound(), body);
    }
    default:
      return a;
  }
}

bool leq_canon(const Formula& a, const Formula& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::NegAtom:
      return a.name() == b.name();
    case FormulaKind::Tensor:
    case FormulaKind::Par:
      return leq_canon(a.left(), b.left()) && leq_canon(a.right(), b.right());
    case FormulaKind::Bang:
      return poly_leq(b.bound(), a.bound()) && leq_canon(a.body(), b.body());
    case FormulaKind::WhyNot:
      return poly_leq(a.bound(), b.bound()) && leq_canon(a.body(), b.body());
    default:
      return true;
  }
}

VarSet avoid_set(const Formula& a, const Formula& b, const VarId& extra = {}) {
  VarSet s = a.free_vars();
  for (const auto& v : b.free_vars()) s.insert(v);
  if (!extra.empty()) s.insert(extra);
  return s;
}

}  // namespace

std::string Formula::str() const {
  std::ostringstream out;
  print(out, *this, 0);
  return out.str();
}

Formula negate(const Formula& a) {
  switch (a.kind()) {
    case FormulaKind::Atom:
      return Formula::neg_atom(a.name());
    case FormulaKind::NegAtom:
      return Formula::atom(a.name());
    case FormulaKind::One:
      return Formula::bottom();
    case FormulaKind::Bottom:
      return Formula::one();
    case FormulaKind::Tensor:
      return Formula::par(negate(a.left()), negate(a.right()));
    case FormulaKind::Par:
      return Formula::tensor(negate(a.left()), negate(a.right()));
    case FormulaKind::Bang:
      return Formula::whynot(a.binder(), a.bound(), negate(a.body()));
    case FormulaKind::WhyNot:
      return Formula::bang(a.binder(), a.bound(), negate(a.body()));
  }
  return a;
}

bool alpha_equal(const Formula& a, const Formula& b) { return canon(a, 0).same(canon(b, 0)); }

bool formula_leq(const Formula& a, const Formula& b) { return leq_canon(canon(a, 0), canon(b, 0)); }

Formula subst_polys(const Formula& a, const std::map<VarId, ResourcePoly>& s) {
  if (s.empty()) return a;
  switch (a.kind()) {
    case FormulaKind::Tensor:
      return Formula::tensor(subst_polys(a.left(), s), subst_polys(a.right(), s));
    case FormulaKind::Par:
      return Formula::par(subst_polys(a.left(), s), subst_polys(a.right(), s));
    case FormulaKind::Bang:
    case FormulaKind::WhyNot: {
      ResourcePoly bound = compose_all(a.bound(), s);
      std::map<VarId, ResourcePoly> inner = s;
      inner.erase(a.binder());
      VarId x = a.binder();
      Formula body = a.body();
      VarSet captured;
      for (const auto& [v, p] : inner) {
        if (!body.mentions(v)) continue;
        for (const auto& fv : p.free_vars()) captured.insert(fv);
      }
      if (captured.count(x)) {
        VarSet avoid = captured;
        for (const auto& v : body.free_vars()) avoid.insert(v);
        for (const auto& [v, _] : inner) avoid.insert(v);
        VarId y = fresh_name(x, avoid);
        body = subst_poly(body, x, ResourcePoly::var(y));
        x = y;
      }
      body = subst_polys(body, inner);
      return a.kind() == FormulaKind::Bang ? Formula::bang(x, bound, body) : Formula::whynot(x, bound, body);
    }
    default:
      return a;
  }
}

Formula subst_poly(const Formula& a, const VarId& x, const ResourcePoly& p) {
  if (!a.mentions(x)) return a;
  return subst_polys(a, {{x, p}});
}

VarSet LabelledFormula::free_vars() const {
  VarSet s = formula.free_vars();
  s.erase(binder);
  for (const auto& v : label.free_vars()) s.insert(v);
  return s;
}

std::string LabelledFormula::str() const {
  return "<" + formula.str() + ">[" + binder + "<" + label.str() + "]";
}

LabelledFormula labelled(const Formula& a, const VarId& x, const ResourcePoly& p) {
  if (p.mentions(x)) throw Error("label binder " + x + " occurs in its label");
  return LabelledFormula{a, x, p};
}

LabelledFormula labelled(const Formula& a, const ResourcePoly& p) {
  VarSet avoid = a.free_vars();
  for (const auto& v : p.free_vars()) avoid.insert(v);
  return LabelledFormula{a, fresh_name("_", avoid), p};
}

LabelledFormula negate(const LabelledFormula& a) { return LabelledFormula{negate(a.formula), a.binder, a.label}; }

Formula rebind(const LabelledFormula& b, const VarId& binder) {
  if (binder == b.binder) return b.formula;
  return subst_poly(b.formula, b.binder, ResourcePoly::var(binder));
}

namespace {

// Both formula parts over a shared fresh binder.
std::pair<Formula, Formula> common_binder(const LabelledFormula& a, const LabelledFormula& b) {
  if (a.binder == b.binder) return {a.formula, b.formula};
  VarSet avoid = avoid_set(a.formula, b.formula, a.binder);
  avoid.insert(b.binder);
  VarId c = fresh_name("%c", avoid);
  return {rebind(a, c), rebind(b, c)};
}

}  // namespace

bool lf_equal(const LabelledFormula& a, const LabelledFormula& b) {
  if (a.label != b.label) return false;
  auto [fa, fb] = common_binder(a, b);
  return alpha_equal(fa, fb);
}

bool lf_leq(const LabelledFormula& a, const LabelledFormula& b) {
  if (a.positive() != b.positive()) throw Error("comparing labelled formulas of different polarity");
  auto [fa, fb] = common_binder(a, b);
  if (!formula_leq(fa, fb)) return false;
  return a.positive() ? poly_leq(a.label, b.label) : poly_leq(b.label, a.label);
}

LabelledFormula lf_subst_all(const LabelledFormula& a, const std::map<VarId, ResourcePoly>& s) {
  std::map<VarId, ResourcePoly> inner = s;
  inner.erase(a.binder);
  ResourcePoly label = compose_all(a.label, s);
  VarId x = a.binder;
  Formula f = a.formula;
  VarSet captured;
  for (const auto& [v, p] : inner)
    for (const auto& fv : p.free_vars()) captured.insert(fv);
  if (captured.count(x) && f.mentions(x)) {
    VarSet avoid = captured;
    for (const auto& v : f.free_vars()) avoid.insert(v);
    for (const auto& v : label.free_vars()) avoid.insert(v);
    for (const auto& [v, _] : inner) avoid.insert(v);
    VarId y = fresh_name(x, avoid);
    f = subst_poly(f, x, ResourcePoly::var(y));
    x = y;
  }
  return LabelledFormula{subst_polys(f, inner), x, label};
}

LabelledFormula lf_subst(const LabelledFormula& a, const VarId& x, const ResourcePoly& p) {
  return lf_subst_all(a, {{x, p}});
}

LabelledFormula lf_shifted(const LabelledFormula& a, const ResourcePoly& q) {
  if (!a.formula.mentions(a.binder)) return LabelledFormula{a.formula, a.binder, q};
  VarSet avoid = a.formula.free_vars();
  for (const auto& v : a.label.free_vars()) avoid.insert(v);
  for (const auto& v : q.free_vars()) avoid.insert(v);
  avoid.insert(a.binder);
  VarId y = fresh_name(a.binder, avoid);
  return LabelledFormula{subst_poly(a.formula, a.binder, ResourcePoly::var(y) + a.label), y, q};
}

LabelledFormula lf_sum(const LabelledFormula& a, const LabelledFormula& b) {
  if (a.positive() != b.positive()) throw Error("sum of labelled formulas of different polarity");
  Formula expected = subst_poly(a.formula, a.binder, ResourcePoly::var(b.binder) + a.label);
  if (!alpha_equal(expected, b.formula))
    throw Error("shape mismatch in labelled sum: " + a.str() + " and " + b.str());
  return LabelledFormula{a.formula, a.binder, a.label + b.label};
}

bool verify_bounded_sum(const LabelledFormula& candidate, const VarId& z, const ResourcePoly& bound,
                        const LabelledFormula& member, const BoundedSumWitness& witness) {
  const Formula& base = witness.base;
  const VarId& x = witness.base_binder;
  const VarId& y = member.binder;
  VarSet base_fv = base.free_vars();
  base_fv.erase(x);
  if (base_fv.count(y) || base_fv.count(z)) throw Error("bounded-sum witness mentions its index variables");
  if (member.label.mentions(y)) throw Error("family label mentions its own binder");

  VarSet avoid = base.free_vars();
  for (const auto& v : member.free_vars()) avoid.insert(v);
  avoid.insert(z);
  avoid.insert(y);
  VarId u = fresh_name("u", avoid);
  ResourcePoly offset = ResourcePoly::var(y) + bounded_sum(u, ResourcePoly::var(z), rename(member.label, z, u));
  if (!alpha_equal(subst_poly(base, x, offset), member.formula)) return false;
  LabelledFormula expected{base, x, bounded_sum(z, bound, member.label)};
  return lf_equal(candidate, expected);
}

LabelledFormula lf_bounded_sum(const LabelledFormula& member, const VarId& z, const ResourcePoly& bound,
                               const std::optional<BoundedSumWitness>& witness) {
  ResourcePoly label = bounded_sum(z, bound, member.label);
  if (witness) {
    LabelledFormula candidate{witness->base, witness->base_binder, label};
    if (!verify_bounded_sum(candidate, z, bound, member, *witness))
      throw Error("bounded-sum witness does not match " + member.str());
    return candidate;
  }
  if (!member.formula.mentions(z) && !member.formula.mentions(member.binder))
    return LabelledFormula{member.formula, member.binder, label};
  // The z = 0 member is the only possible base.
  BoundedSumWitness inferred{subst_poly(member.formula, z, ResourcePoly()), member.binder};
  LabelledFormula candidate{inferred.base, inferred.base_binder, label};
  bool ok = false;
  try {
    ok = verify_bounded_sum(candidate, z, bound, member, inferred);
  } catch (const Error&) {
  }
  if (!ok) throw Error("not a bounded sum: " + member.str());
  return candidate;
}

FormulaClass classify(const Formula& a) {
  switch (a.kind()) {
    case FormulaKind::Bottom:
    case FormulaKind::NegAtom:
      return FormulaClass::Typing;
    case FormulaKind::WhyNot:
      return classify(negate(a.body())) == FormulaClass::Typing ? FormulaClass::Modal : FormulaClass::Neither;
    case FormulaKind::Par:
      if (classify(a.left()) == FormulaClass::Modal && classify(a.right()) == FormulaClass::Typing)
        return FormulaClass::Typing;
      return FormulaClass::Neither;
    default:
      return FormulaClass::Neither;
  }
}

std::string to_string(FormulaClass c) {
  switch (c) {
    case FormulaClass::Typing:
      return "typing";
    case FormulaClass::Modal:
      return "modal";
    default:
      return "neither";
  }
}

}  // namespace bllp
