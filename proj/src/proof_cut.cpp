#include <algorithm>

#include "bllp/proofs.hpp"
#include "proof_internal.hpp"

namespace bllp {

using detail::active_pos;

std::string to_string(StepKind k) {
  switch (k) {
    case StepKind::Axiom: return "axiom";
    case StepKind::Multiplicative: return "multiplicative";
    case StepKind::BotOne: return "bot/1";
    case StepKind::Dereliction: return "dereliction";
    case StepKind::Contraction: return "contraction";
    case StepKind::Weakening: return "weakening";
    case StepKind::Digging: return "digging";
  }
  return "?";
}

std::optional<StepKind> logical_kind(const Proof& p, const ProofPath& cut) {
  const Proof& c = proof_at(p, cut);
  if (c.rule != ProofRule::Cut) throw Error("logical_kind: not a cut");
  const Proof& a = c.premises[0];
  const Proof& b = c.premises[1];
  int ai = active_pos(c, 0, -1), bi = active_pos(c, 1, -1);
  if (a.rule == ProofRule::Ax || b.rule == ProofRule::Ax) return StepKind::Axiom;
  if (b.principal != bi) return std::nullopt;
  if (a.principal != ai) {
    if (a.rule == ProofRule::Bang && is_tensor_tree(b)) return StepKind::Digging;
    return std::nullopt;
  }
  switch (a.rule) {
    case ProofRule::Par:
      if (b.rule == ProofRule::Tensor) return StepKind::Multiplicative;
      break;
    case ProofRule::Bot:
      if (b.rule == ProofRule::One) return StepKind::BotOne;
      break;
    case ProofRule::Der:
      if (b.rule == ProofRule::Bang) return StepKind::Dereliction;
      break;
    case ProofRule::Contr:
      if (is_tensor_tree(b)) return StepKind::Contraction;
      break;
    case ProofRule::Weak:
      if (is_tensor_tree(b)) return StepKind::Weakening;
      break;
    default:
      break;
  }
  return std::nullopt;
}

namespace {

// Position in mk_cut's conclusion of formula i of the first premise (i != a).
int after_removal(int i, int removed) { return i - (i > removed ? 1 : 0); }

// Contexts of the positive side, excluding its active formula.
std::vector<int> context_positions(const Proof& b, int bi) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(b.conclusion.size()); ++i)
    if (i != bi) out.push_back(i);
  return out;
}

Proof fire_axiom(const Proof& a, int ai, const Proof& b, int bi) {
  if (a.rule == ProofRule::Ax) return m_subtype(b, bi, a.conclusion[1 - ai]);
  return m_subtype(a, ai, b.conclusion[1 - bi]);
}

Proof fire_mult(const Proof& a, int ai, const Proof& b) {
  auto [cn, cm] = detail::components(a.conclusion[ai]);
  int i = active_pos(a, 0, -1), j = active_pos(a, 0, -2);
  Proof pi = m_subtype(m_subtype(a.premises[0], i, cn), j, cm);
  int i1 = active_pos(b, 0, -1), i2 = active_pos(b, 1, -1);
  Proof s1 = m_subtype(b.premises[0], i1, negate(cn));
  Proof s2 = m_subtype(b.premises[1], i2, negate(cm));
  Proof inner = mk_cut(pi, i, s1, i1);
  return mk_cut(inner, after_removal(j, i), s2, i2);
}

Proof fire_dereliction(const Proof& a, const Proof& b) {
  const LabelledFormula& w = b.conclusion[b.principal];
  int m = active_pos(b, 0, -1);
  Proof sigma = m_subst(b.premises[0], w.binder, ResourcePoly(0));
  for (std::size_t i = 0; i < b.links[0].size(); ++i)
    if (b.links[0][i] >= 0) sigma = m_subtype(sigma, static_cast<int>(i), b.conclusion[b.links[0][i]]);
  int r = active_pos(a, 0, -1);
  Proof rho = m_subtype(a.premises[0], r, negate(sigma.conclusion[m]));
  return mk_cut(sigma, m, rho, r);
}

Proof fire_contraction(const Proof& a, const Proof& b, int bi) {
  const Proof& rho = a.premises[0];
  int i = active_pos(a, 0, -1), j = active_pos(a, 0, -2);
  const LabelledFormula& first = rho.conclusion[i];
  const LabelledFormula& second = rho.conclusion[j];
  LabelledFormula dual = negate(first);
  Proof base = m_subtype(b, bi, LabelledFormula{dual.formula, dual.binder, b.conclusion[bi].label});
  auto [s1, s2] = m_split(base, first.label, second.label);
  if (!lf_equal(s2.conclusion[bi], negate(second))) s2 = m_subtype(s2, bi, negate(second));

  Proof cut = mk_cut(mk_cut(rho, i, s1, bi), after_removal(j, i), s2, bi);
  // Tags: -1 for the contracted side, otherwise the context index in b and
  // the copy (0 or 1).
  std::vector<std::pair<int, int>> tags;
  for (std::size_t n = 0; n + 2 < rho.conclusion.size(); ++n) tags.push_back({-1, 0});
  auto ctx = context_positions(b, bi);
  for (int copy = 0; copy < 2; ++copy)
    for (int c : ctx) tags.push_back({c, copy});
  for (int c : ctx) {
    auto f0 = std::find(tags.begin(), tags.end(), std::make_pair(c, 0)) - tags.begin();
    auto f1 = std::find(tags.begin(), tags.end(), std::make_pair(c, 1)) - tags.begin();
    cut = mk_contr(cut, static_cast<int>(f0), static_cast<int>(f1), b.conclusion[c]);
    std::vector<std::pair<int, int>> next;
    for (std::size_t n = 0; n < tags.size(); ++n)
      if (static_cast<long>(n) != f0 && static_cast<long>(n) != f1) next.push_back(tags[n]);
    next.push_back({-1, 0});
    tags = std::move(next);
  }
  return cut;
}

Proof fire_weakening(const Proof& a, const Proof& b, int bi) {
  Proof out = a.premises[0];
  for (int c : context_positions(b, bi)) out = mk_weak(out, b.conclusion[c]);
  return out;
}

Proof fire_digging(Proof a, int ai, const Proof& b, int bi) {
  LabelledFormula w = a.conclusion[a.principal];
  VarSet bv = detail::proof_vars(b);
  if (bv.count(w.binder)) {
    VarSet avoid = bv;
    auto av = detail::proof_vars(a);
    avoid.insert(av.begin(), av.end());
    VarId x2 = fresh_name("%x", avoid);
    Proof body = m_subst(a.premises[0], w.binder, ResourcePoly::var(x2));
    w = LabelledFormula{rebind(w, x2), x2, w.label};
    a.premises[0] = body;
    a.conclusion[a.principal] = w;
  }
  const Proof& lambda = a.premises[0];
  int j = -1;
  for (std::size_t i = 0; i < a.links[0].size(); ++i)
    if (a.links[0][i] == ai) j = static_cast<int>(i);
  int m = active_pos(a, 0, -1);
  Proof sigma = m_parsplit(b, w.binder, w.label, negate(lambda.conclusion[j]));
  Proof inner = mk_cut(lambda, j, sigma, bi);

  Sequent ctx;
  for (std::size_t i = 0; i < lambda.conclusion.size(); ++i)
    if (static_cast<int>(i) != j && static_cast<int>(i) != m) ctx.push_back(a.conclusion[a.links[0][i]]);
  for (int c : context_positions(b, bi)) ctx.push_back(b.conclusion[c]);
  return mk_bang(inner, after_removal(m, j), ctx, w);
}

}  // namespace

Proof fire_logical(const Proof& p, const ProofPath& cut) {
  auto kind = logical_kind(p, cut);
  if (!kind) throw Error("fire_logical: the cut is not logical");
  const Proof& c = proof_at(p, cut);
  const Proof& a = c.premises[0];
  const Proof& b = c.premises[1];
  int ai = active_pos(c, 0, -1), bi = active_pos(c, 1, -1);
  Proof out;
  switch (*kind) {
    case StepKind::Axiom: out = fire_axiom(a, ai, b, bi); break;
    case StepKind::Multiplicative: out = fire_mult(a, ai, b); break;
    case StepKind::BotOne: out = a.premises[0]; break;
    case StepKind::Dereliction: out = fire_dereliction(a, b); break;
    case StepKind::Contraction: out = fire_contraction(a, b, bi); break;
    case StepKind::Weakening: out = fire_weakening(a, b, bi); break;
    case StepKind::Digging: out = fire_digging(a, ai, b, bi); break;
  }
  return replace_proof_at(p, cut, reorder(out, c.conclusion));
}

namespace {

bool special(StepKind k) {
  return k == StepKind::Dereliction || k == StepKind::Contraction || k == StepKind::Digging;
}

// Negative context formulas of the positive side all lead to a conclusion.
bool eligible(const Proof& p, const ProofPath& cut) {
  const Proof& c = proof_at(p, cut);
  for (int t : c.links[1])
    if (t >= 0 && !c.conclusion[t].positive() && classify_occurrence(p, cut, t) == Occurrence::Active)
      return false;
  return true;
}

}  // namespace

std::optional<SpecialStep> step_special_traced(const Proof& p) {
  for (const auto& path : external_cuts(p)) {
    Exposed e;
    try {
      e = expose_logical(p, path);
    } catch (const Error&) {
      continue;
    }
    StepKind kind = *logical_kind(e.proof, e.cut);
    if (special(kind) && !eligible(e.proof, e.cut)) continue;
    SpecialStep s{e.proof, fire_logical(e.proof, e.cut), e.cut, kind, e.commutations, e.weights};
    return s;
  }
  return std::nullopt;
}

std::optional<Proof> step_special(const Proof& p) {
  if (auto s = step_special_traced(p)) return s->result;
  return std::nullopt;
}

NormalizeResult normalize(const Proof& p, std::size_t fuel, bool keep_trace) {
  NormalizeResult r{p, 0, false, {}};
  for (;;) {
    auto s = step_special_traced(r.proof);
    if (!s) return r;
    if (r.steps == fuel) {
      r.fuel_exhausted = true;
      return r;
    }
    r.proof = s->result;
    ++r.steps;
    if (keep_trace) r.trace.push_back(std::move(*s));
  }
}

}  // namespace bllp
