#include "bllp/proofs.hpp"
#include "proof_internal.hpp"

namespace bllp {

using detail::safe_leq;

namespace {

void collect_vars(const Proof& p, VarSet& out) {
  for (const auto& f : p.conclusion) {
    auto v = f.free_vars();
    out.insert(v.begin(), v.end());
    out.insert(f.binder);
  }
  for (const auto& q : p.premises) collect_vars(q, out);
}

VarId fresh_for(const Proof& p, const VarSet& extra, const std::string& hint = "%y") {
  VarSet avoid = detail::proof_vars(p);
  avoid.insert(extra.begin(), extra.end());
  return fresh_name(hint, avoid);
}

LabelledFormula bang_of(const LabelledFormula& main, const VarId& y, const ResourcePoly& q) {
  return LabelledFormula{Formula::bang(main.binder, main.label, main.formula), y, q};
}

}  // namespace

VarSet detail::proof_vars(const Proof& p) {
  VarSet out;
  collect_vars(p, out);
  return out;
}

int detail::active_pos(const Proof& p, std::size_t k, int slot) {
  for (std::size_t i = 0; i < p.links[k].size(); ++i)
    if (p.links[k][i] == slot) return static_cast<int>(i);
  throw Error("missing active formula");
}

std::pair<LabelledFormula, LabelledFormula> detail::components(const LabelledFormula& a) {
  VarSet avoid = a.free_vars();
  avoid.insert(a.binder);
  VarId c = fresh_name("%c", avoid);
  Formula f = rebind(a, c);
  return {LabelledFormula{f.left(), c, a.label}, LabelledFormula{f.right(), c, a.label}};
}

Proof detail::rebuild(const Proof& shape, std::vector<Proof> premises,
                      const std::optional<LabelledFormula>& principal) {
  Proof out;
  out.rule = shape.rule;
  out.links = shape.links;
  out.principal = shape.principal;
  out.conclusion = shape.conclusion;
  if (principal) out.conclusion.at(shape.principal) = *principal;
  for (std::size_t k = 0; k < premises.size(); ++k) {
    if (premises[k].conclusion.size() != shape.links[k].size()) throw Error("rebuild: premise shape changed");
    for (std::size_t i = 0; i < shape.links[k].size(); ++i) {
      int t = shape.links[k][i];
      if (t < 0) continue;
      const auto& f = premises[k].conclusion[i];
      if (shape.rule == ProofRule::Bang) {
        const auto& w = out.conclusion[out.principal];
        out.conclusion[t] = lf_bounded_sum(f, w.binder, w.label);
      } else {
        out.conclusion[t] = f;
      }
    }
  }
  out.premises = std::move(premises);
  return out;
}

Proof m_subtype(const Proof& p, int pos, const LabelledFormula& target) {
  if (pos < 0 || pos >= static_cast<int>(p.conclusion.size())) throw Error("m_subtype: position out of range");
  const auto& cur = p.conclusion[pos];
  if (!safe_leq(target, cur)) throw Error("m_subtype: " + target.str() + " is not below " + cur.str());
  Proof out = p;
  out.conclusion[pos] = target;
  if (lf_equal(target, cur)) return p;

  for (std::size_t k = 0; k < p.premises.size(); ++k)
    for (std::size_t i = 0; i < p.links[k].size(); ++i)
      if (p.links[k][i] == pos) {
        if (p.rule != ProofRule::Bang) out.premises[k] = m_subtype(p.premises[k], static_cast<int>(i), target);
        return out;
      }

  if (pos != p.principal) return out;  // axiom formula
  switch (p.rule) {
    case ProofRule::Par: {
      auto [l, r] = detail::components(target);
      int i = detail::active_pos(p, 0, -1), j = detail::active_pos(p, 0, -2);
      Proof q = p.premises[0];
      q = m_subtype(q, i, LabelledFormula{l.formula, l.binder, q.conclusion[i].label});
      q = m_subtype(q, j, LabelledFormula{r.formula, r.binder, q.conclusion[j].label});
      out.premises[0] = q;
      return out;
    }
    case ProofRule::Tensor: {
      auto parts = detail::components(target);
      const LabelledFormula* comp[2] = {&parts.first, &parts.second};
      for (std::size_t k = 0; k < 2; ++k) {
        int i = detail::active_pos(p, k, -1);
        const auto& a = p.premises[k].conclusion[i];
        out.premises[k] = m_subtype(p.premises[k], i, LabelledFormula{comp[k]->formula, comp[k]->binder, a.label});
      }
      return out;
    }
    case ProofRule::Bang: {
      const VarId& y = cur.binder;
      if (target.binder != y && target.free_vars().count(y)) throw Error("m_subtype: box index captured");
      Formula f = rebind(target, y);
      int i = detail::active_pos(p, 0, -1);
      out.premises[0] = m_subtype(p.premises[0], i, LabelledFormula{f.body(), f.binder(), f.bound()});
      out.conclusion[pos] = LabelledFormula{f, y, target.label};
      return out;
    }
    default:
      return out;
  }
}

Proof m_subst(const Proof& p, const VarId& x, const ResourcePoly& q) {
  Proof out = p;
  if (p.rule == ProofRule::Bang) {
    auto& w = out.conclusion[p.principal];
    if (w.binder != x) {
      if (q.mentions(w.binder)) {
        VarSet extra = q.free_vars();
        extra.insert(x);
        VarId y2 = fresh_for(p, extra);
        out.premises[0] = m_subst(out.premises[0], w.binder, ResourcePoly::var(y2));
        w = LabelledFormula{rebind(w, y2), y2, w.label};
      }
      out.premises[0] = m_subst(out.premises[0], x, q);
    }
  } else {
    for (auto& pr : out.premises) pr = m_subst(pr, x, q);
  }
  for (auto& f : out.conclusion) f = lf_subst(f, x, q);
  return out;
}

bool is_tensor_tree(const Proof& p) {
  switch (p.rule) {
    case ProofRule::Ax: case ProofRule::One: case ProofRule::Bang: return true;
    case ProofRule::Tensor: return is_tensor_tree(p.premises[0]) && is_tensor_tree(p.premises[1]);
    default: return false;
  }
}

std::pair<Proof, Proof> m_split(const Proof& p, const ResourcePoly& r, const ResourcePoly& s) {
  if (!is_tensor_tree(p)) throw Error("m_split: not a tensor tree");
  int pos = positive_position(p);
  if (pos < 0) throw Error("m_split: no positive formula");
  const LabelledFormula& P = p.conclusion[pos];
  if (!poly_leq(r + s, P.label)) throw Error("m_split: label " + P.label.str() + " is too small");
  LabelledFormula first{P.formula, P.binder, r};
  LabelledFormula second = lf_shifted(first, s);

  switch (p.rule) {
    case ProofRule::Ax: {
      Proof a = p, b = p;
      int n = 1 - pos;
      LabelledFormula nf{p.conclusion[n].formula, p.conclusion[n].binder, r};
      a.conclusion[pos] = first;
      a.conclusion[n] = nf;
      b.conclusion[pos] = second;
      b.conclusion[n] = lf_shifted(nf, s);
      return {a, b};
    }
    case ProofRule::One:
      return {mk_one(first), mk_one(second)};
    case ProofRule::Tensor: {
      auto [a0, b0] = m_split(p.premises[0], r, s);
      auto [a1, b1] = m_split(p.premises[1], r, s);
      return {detail::rebuild(p, {a0, a1}, first), detail::rebuild(p, {b0, b1}, second)};
    }
    case ProofRule::Bang: {
      const Proof& body = p.premises[0];
      int m = detail::active_pos(p, 0, -1);
      Proof a = detail::rebuild(p, {body}, LabelledFormula{P.formula, P.binder, r});
      VarSet extra = r.free_vars();
      auto sv = s.free_vars();
      extra.insert(sv.begin(), sv.end());
      VarId y = fresh_for(p, extra);
      Proof shifted = m_subst(body, P.binder, ResourcePoly::var(y) + r);
      Proof b = detail::rebuild(p, {shifted}, bang_of(shifted.conclusion[m], y, s));
      return {a, b};
    }
    default:
      throw Error("m_split: not a tensor tree");
  }
}

Proof m_parsplit(const Proof& p, const VarId& x, const ResourcePoly& bound, const LabelledFormula& member) {
  if (!is_tensor_tree(p)) throw Error("m_parsplit: not a tensor tree");
  int pos = positive_position(p);
  if (pos < 0 || !member.positive()) throw Error("m_parsplit: no positive formula");
  const LabelledFormula& P = p.conclusion[pos];
  if (!safe_leq(lf_bounded_sum(member, x, bound), P))
    throw Error("m_parsplit: the sum of " + member.str() + " is not below " + P.str());

  switch (p.rule) {
    case ProofRule::Ax: {
      Proof out = p;
      out.conclusion[pos] = member;
      out.conclusion[1 - pos] = negate(member);
      return out;
    }
    case ProofRule::One:
      return mk_one(member);
    case ProofRule::Tensor: {
      auto [l, r] = detail::components(member);
      Proof a = m_parsplit(p.premises[0], x, bound, l);
      Proof b = m_parsplit(p.premises[1], x, bound, r);
      return detail::rebuild(p, {a, b}, member);
    }
    case ProofRule::Bang: {
      VarSet extra = member.free_vars();
      extra.insert(x);
      auto bv = bound.free_vars();
      extra.insert(bv.begin(), bv.end());
      VarId y = fresh_for(p, extra);
      VarId u = fresh_name("%u", [&] { VarSet s = extra; s.insert(y); return s; }());
      LabelledFormula mem{rebind(member, y), y, member.label};
      ResourcePoly offset = bounded_sum(u, ResourcePoly::var(x), compose(mem.label, x, ResourcePoly::var(u)));
      Proof body = m_subst(p.premises[0], P.binder, ResourcePoly::var(y) + offset);
      int m = detail::active_pos(p, 0, -1);
      Proof out = detail::rebuild(p, {body}, bang_of(body.conclusion[m], y, mem.label));
      return m_subtype(out, pos, mem);
    }
    default:
      throw Error("m_parsplit: not a tensor tree");
  }
}

}  // namespace bllp
