#include <algorithm>
#include <functional>

#include "bllp/proofs.hpp"
#include "proof_internal.hpp"

namespace bllp {

namespace {

const std::pair<ProofRule, const char*> kRuleNames[] = {
    {ProofRule::Ax, "Ax"},     {ProofRule::Cut, "Cut"},   {ProofRule::Par, "par"}, {ProofRule::Tensor, "tensor"},
    {ProofRule::Bang, "!"},    {ProofRule::Der, "?d"},    {ProofRule::Weak, "?w"}, {ProofRule::Contr, "?c"},
    {ProofRule::Bot, "bot"},   {ProofRule::One, "1"},
};

// Conclusion of a node whose premises contribute their non-active formulas
// in order, followed by the principal formula if any.
Proof assemble(ProofRule rule, std::vector<Proof> premises, const std::vector<std::vector<int>>& actives,
               const std::optional<LabelledFormula>& principal, const Sequent* replaced = nullptr) {
  Proof out;
  out.rule = rule;
  std::size_t ctx = 0;
  for (std::size_t k = 0; k < premises.size(); ++k) {
    const auto& c = premises[k].conclusion;
    std::vector<int> link(c.size(), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      auto it = std::find(actives[k].begin(), actives[k].end(), static_cast<int>(i));
      if (it != actives[k].end()) {
        link[i] = -1 - static_cast<int>(it - actives[k].begin());
        continue;
      }
      if (actives[k].size() > 2) throw Error("too many active formulas");
      link[i] = static_cast<int>(out.conclusion.size());
      if (replaced) {
        if (ctx >= replaced->size()) throw Error("box context list too short");
        out.conclusion.push_back((*replaced)[ctx++]);
      } else {
        out.conclusion.push_back(c[i]);
      }
    }
    for (int a : actives[k])
      if (a < 0 || a >= static_cast<int>(c.size())) throw Error("active position out of range");
    out.links.push_back(std::move(link));
  }
  if (replaced && ctx != replaced->size()) throw Error("box context list too long");
  if (principal) {
    out.principal = static_cast<int>(out.conclusion.size());
    out.conclusion.push_back(*principal);
  }
  out.premises = std::move(premises);
  return out;
}

VarId fresh_binder(std::initializer_list<const LabelledFormula*> fs) {
  VarSet avoid;
  for (const auto* f : fs) {
    auto v = f->free_vars();
    avoid.insert(v.begin(), v.end());
    avoid.insert(f->binder);
  }
  return fresh_name("%c", avoid);
}

void render(const Proof& p, int depth, std::string& out) {
  out += std::string(2 * depth, ' ') + to_string(p.rule) + "  |-";
  for (std::size_t i = 0; i < p.conclusion.size(); ++i)
    out += (i ? ", " : " ") + p.conclusion[i].str();
  out += "\n";
  for (const auto& q : p.premises) render(q, depth + 1, out);
}

using detail::safe_leq;

}  // namespace

bool detail::safe_leq(const LabelledFormula& a, const LabelledFormula& b) {
  try {
    return a.positive() == b.positive() && lf_leq(a, b);
  } catch (const Error&) {
    return false;
  }
}

std::string to_string(ProofRule r) {
  for (const auto& [rule, name] : kRuleNames)
    if (rule == r) return name;
  return "?";
}

ProofRule parse_proof_rule(const std::string& s) {
  for (const auto& [rule, name] : kRuleNames)
    if (s == name) return rule;
  throw Error("unknown proof rule: " + s);
}

std::size_t Proof::size() const {
  std::size_t n = 1;
  for (const auto& p : premises) n += p.size();
  return n;
}

std::string Proof::str() const {
  std::string out;
  render(*this, 0, out);
  return out;
}

const Proof& proof_at(const Proof& p, const ProofPath& path) {
  const Proof* cur = &p;
  for (int k : path) {
    if (k < 0 || k >= static_cast<int>(cur->premises.size())) throw Error("proof path out of range");
    cur = &cur->premises[k];
  }
  return *cur;
}

Proof replace_proof_at(const Proof& p, const ProofPath& path, Proof sub) {
  Proof out = p;
  Proof* cur = &out;
  for (int k : path) {
    if (k < 0 || k >= static_cast<int>(cur->premises.size())) throw Error("proof path out of range");
    cur = &cur->premises[k];
  }
  *cur = std::move(sub);
  return out;
}

std::string ProofReport::str() const {
  if (ok) return "ok";
  std::string ps = "[";
  for (std::size_t i = 0; i < path.size(); ++i) ps += (i ? "," : "") + std::to_string(path[i]);
  return "node " + ps + "] (" + rule + "): " + message;
}

Proof mk_ax(const LabelledFormula& a, const LabelledFormula& b) {
  Proof p;
  p.rule = ProofRule::Ax;
  p.conclusion = {a, b};
  return p;
}

Proof mk_one(const LabelledFormula& a) {
  Proof p;
  p.rule = ProofRule::One;
  p.conclusion = {a};
  p.principal = 0;
  return p;
}

Proof mk_cut(const Proof& neg, int a, const Proof& pos, int b) {
  return assemble(ProofRule::Cut, {neg, pos}, {{a}, {b}}, std::nullopt);
}

Proof mk_par(const Proof& premise, int left, int right, const LabelledFormula& principal) {
  return assemble(ProofRule::Par, {premise}, {{left, right}}, principal);
}

Proof mk_tensor(const Proof& left, int a, const Proof& right, int b, const LabelledFormula& principal) {
  return assemble(ProofRule::Tensor, {left, right}, {{a}, {b}}, principal);
}

Proof mk_bang(const Proof& premise, int main, const Sequent& contexts, const LabelledFormula& principal) {
  return assemble(ProofRule::Bang, {premise}, {{main}}, principal, &contexts);
}

Proof mk_der(const Proof& premise, int active, const LabelledFormula& principal) {
  return assemble(ProofRule::Der, {premise}, {{active}}, principal);
}

Proof mk_weak(const Proof& premise, const LabelledFormula& principal) {
  return assemble(ProofRule::Weak, {premise}, {{}}, principal);
}

Proof mk_contr(const Proof& premise, int first, int second, const LabelledFormula& principal) {
  return assemble(ProofRule::Contr, {premise}, {{first, second}}, principal);
}

Proof mk_bot(const Proof& premise, const LabelledFormula& principal) {
  return assemble(ProofRule::Bot, {premise}, {{}}, principal);
}

Proof permute(const Proof& p, const std::vector<int>& perm) {
  if (perm.size() != p.conclusion.size()) throw Error("permutation size mismatch");
  Proof out = p;
  for (std::size_t i = 0; i < perm.size(); ++i) out.conclusion[perm[i]] = p.conclusion[i];
  for (auto& link : out.links)
    for (int& t : link)
      if (t >= 0) t = perm[t];
  if (p.principal >= 0) out.principal = perm[p.principal];
  return out;
}

Proof reorder(const Proof& p, const Sequent& target) {
  if (target.size() != p.conclusion.size()) throw Error("reorder: sequent sizes differ");
  std::vector<int> perm(p.conclusion.size(), -1);
  std::vector<bool> used(target.size(), false);
  for (std::size_t i = 0; i < p.conclusion.size(); ++i) {
    for (std::size_t j = 0; j < target.size(); ++j) {
      if (used[j] || p.conclusion[i].positive() != target[j].positive()) continue;
      if (lf_equal(p.conclusion[i], target[j])) {
        perm[i] = static_cast<int>(j);
        used[j] = true;
        break;
      }
    }
    if (perm[i] < 0) throw Error("reorder: no match for " + p.conclusion[i].str());
  }
  return permute(p, perm);
}

std::string skeleton(const Formula& a) {
  switch (a.kind()) {
    case FormulaKind::Atom: return a.name();
    case FormulaKind::NegAtom: return "~" + a.name();
    case FormulaKind::One: return "1";
    case FormulaKind::Bottom: return "bot";
    case FormulaKind::Tensor: return "(" + skeleton(a.left()) + " * " + skeleton(a.right()) + ")";
    case FormulaKind::Par: return "(" + skeleton(a.left()) + " | " + skeleton(a.right()) + ")";
    case FormulaKind::Bang: return "!" + skeleton(a.body());
    case FormulaKind::WhyNot: return "?" + skeleton(a.body());
  }
  return "";
}

std::string erase(const Proof& p) {
  std::string out = to_string(p.rule) + "[";
  for (std::size_t i = 0; i < p.conclusion.size(); ++i) out += (i ? "," : "") + skeleton(p.conclusion[i].formula);
  out += "]";
  for (std::size_t k = 0; k < p.premises.size(); ++k) {
    out += "{";
    for (int t : p.links[k]) out += std::to_string(t) + ";";
    out += erase(p.premises[k]) + "}";
  }
  return out;
}

bool proof_sim(const Proof& a, const Proof& b) { return erase(a) == erase(b); }

int positive_position(const Proof& p) {
  for (std::size_t i = 0; i < p.conclusion.size(); ++i)
    if (p.conclusion[i].positive()) return static_cast<int>(i);
  return -1;
}

namespace {

// The premise formula at active slot `slot` (-1 or -2) of premise k.
const LabelledFormula* active(const Proof& p, std::size_t k, int slot) {
  for (std::size_t i = 0; i < p.links[k].size(); ++i)
    if (p.links[k][i] == slot) return &p.premises[k].conclusion[i];
  return nullptr;
}

std::optional<std::string> check_node(const Proof& p) {
  std::size_t positives = 0;
  for (const auto& f : p.conclusion) positives += f.positive() ? 1 : 0;
  if (positives > 1) return "more than one positive formula";

  std::size_t arity = 0, slots = 0;
  switch (p.rule) {
    case ProofRule::Ax: arity = 0; break;
    case ProofRule::One: arity = 0; break;
    case ProofRule::Cut: arity = 2; slots = 1; break;
    case ProofRule::Tensor: arity = 2; slots = 1; break;
    case ProofRule::Par: case ProofRule::Contr: arity = 1; slots = 2; break;
    case ProofRule::Bang: case ProofRule::Der: arity = 1; slots = 1; break;
    case ProofRule::Weak: case ProofRule::Bot: arity = 1; slots = 0; break;
  }
  if (p.premises.size() != arity || p.links.size() != arity) return "wrong number of premises";
  bool has_principal = p.rule != ProofRule::Ax && p.rule != ProofRule::Cut;
  if (has_principal != (p.principal >= 0 && p.principal < static_cast<int>(p.conclusion.size())))
    return "bad principal position";

  std::vector<int> hits(p.conclusion.size(), 0);
  if (p.principal >= 0) hits[p.principal]++;
  for (std::size_t k = 0; k < arity; ++k) {
    if (p.links[k].size() != p.premises[k].conclusion.size()) return "link table size mismatch";
    std::vector<int> slot_hits(slots, 0);
    for (std::size_t i = 0; i < p.links[k].size(); ++i) {
      int t = p.links[k][i];
      if (t < 0) {
        if (-t > static_cast<int>(slots)) return "bad active slot";
        slot_hits[-t - 1]++;
        continue;
      }
      if (t >= static_cast<int>(p.conclusion.size())) return "link out of range";
      hits[t]++;
      const auto& from = p.premises[k].conclusion[i];
      const auto& to = p.conclusion[t];
      if (p.rule == ProofRule::Bang) {
        if (from.positive()) return "positive formula in a box context";
        const auto& pr = p.conclusion[p.principal];
        bool ok = false;
        try {
          ok = safe_leq(to, lf_bounded_sum(from, pr.binder, pr.label));
        } catch (const Error&) {
          ok = false;
        }
        if (!ok) return "box context " + to.str() + " is not below the sum of " + from.str();
      } else if (!lf_equal(from, to)) {
        return "context formula " + from.str() + " changed to " + to.str();
      }
    }
    for (int h : slot_hits)
      if (h != 1) return "active formulas missing or repeated";
  }
  for (int h : hits)
    if (h != 1 && p.rule != ProofRule::Ax) return "conclusion formulas not in bijection with premises";

  const Sequent& c = p.conclusion;
  switch (p.rule) {
    case ProofRule::Ax: {
      if (c.size() != 2 || c[0].positive() == c[1].positive()) return "axiom needs one negative and one positive";
      const auto& n = c[0].positive() ? c[1] : c[0];
      const auto& pp = c[0].positive() ? c[0] : c[1];
      if (!safe_leq(n, negate(pp))) return "axiom formulas are not dual up to subtyping";
      return std::nullopt;
    }
    case ProofRule::One:
      if (c.size() != 1 || c[0].formula.kind() != FormulaKind::One) return "the 1 rule concludes exactly <1>";
      return std::nullopt;
    case ProofRule::Cut: {
      const auto* a = active(p, 0, -1);
      const auto* b = active(p, 1, -1);
      if (a->positive()) return "the first cut formula must be negative";
      if (!b->positive() || !lf_equal(negate(*a), *b)) return "cut formulas are not dual";
      return std::nullopt;
    }
    case ProofRule::Par: {
      const auto* l = active(p, 0, -1);
      const auto* r = active(p, 0, -2);
      const auto& w = c[p.principal];
      if (w.formula.kind() != FormulaKind::Par) return "principal is not a par";
      if (l->positive() || r->positive()) return "par of a positive formula";
      VarId z = fresh_binder({l, r, &w});
      if (!alpha_equal(rebind(w, z), Formula::par(rebind(*l, z), rebind(*r, z)))) return "par components differ";
      if (!poly_leq(l->label, w.label) || !poly_leq(r->label, w.label)) return "par label too small";
      return std::nullopt;
    }
    case ProofRule::Tensor: {
      const auto* l = active(p, 0, -1);
      const auto* r = active(p, 1, -1);
      const auto& w = c[p.principal];
      if (w.formula.kind() != FormulaKind::Tensor) return "principal is not a tensor";
      if (!l->positive() || !r->positive()) return "tensor of a negative formula";
      VarId z = fresh_binder({l, r, &w});
      if (!alpha_equal(rebind(w, z), Formula::tensor(rebind(*l, z), rebind(*r, z))))
        return "tensor components differ";
      if (!poly_leq(w.label, l->label) || !poly_leq(w.label, r->label)) return "tensor label too large";
      return std::nullopt;
    }
    case ProofRule::Bang: {
      const auto* m = active(p, 0, -1);
      const auto& w = c[p.principal];
      if (m->positive()) return "box main formula must be negative";
      if (w.formula.kind() != FormulaKind::Bang) return "principal is not a bang";
      if (!alpha_equal(w.formula, Formula::bang(m->binder, m->label, m->formula)))
        return "bang does not match the main formula";
      return std::nullopt;
    }
    case ProofRule::Der: {
      const auto* a = active(p, 0, -1);
      const auto& w = c[p.principal];
      if (w.formula.kind() != FormulaKind::WhyNot) return "principal is not a why-not";
      if (!poly_leq(ResourcePoly(1), w.label)) return "dereliction label is not at least 1";
      Formula z = subst_poly(w.formula, w.binder, ResourcePoly(0));
      LabelledFormula inst = labelled(z.body(), z.binder(), z.bound());
      if (!safe_leq(inst, *a)) return "premise " + a->str() + " is not above the zero instance " + inst.str();
      return std::nullopt;
    }
    case ProofRule::Weak:
      if (c[p.principal].positive()) return "weakening of a positive formula";
      return std::nullopt;
    case ProofRule::Contr: {
      const auto* a = active(p, 0, -1);
      const auto* b = active(p, 0, -2);
      const auto& w = c[p.principal];
      if (w.positive()) return "contraction of a positive formula";
      bool ok = false;
      try {
        ok = safe_leq(w, lf_sum(*a, *b));
      } catch (const Error&) {
        ok = false;
      }
      if (!ok) return "contracted formula is not below the sum of " + a->str() + " and " + b->str();
      return std::nullopt;
    }
    case ProofRule::Bot:
      if (c[p.principal].formula.kind() != FormulaKind::Bottom) return "principal is not bot";
      return std::nullopt;
  }
  return std::nullopt;
}

void check_rec(const Proof& p, ProofPath& path, ProofReport& rep) {
  for (std::size_t k = 0; k < p.premises.size() && rep.ok; ++k) {
    path.push_back(static_cast<int>(k));
    check_rec(p.premises[k], path, rep);
    path.pop_back();
  }
  if (!rep.ok) return;
  std::optional<std::string> err;
  try {
    err = check_node(p);
  } catch (const Error& e) {
    err = e.what();
  }
  if (err) {
    rep.ok = false;
    rep.path = path;
    rep.rule = to_string(p.rule);
    rep.message = *err;
  }
}

}  // namespace

ProofReport check_proof(const Proof& p) {
  ProofReport rep;
  ProofPath path;
  check_rec(p, path, rep);
  return rep;
}

}  // namespace bllp
