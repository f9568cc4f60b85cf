#include "bllp/typing.hpp"

namespace bllp {

namespace {

LamCtx without(LamCtx c, const std::string& k) {
  c.erase(k);
  return c;
}

LamCtx with(LamCtx c, const std::string& k, const LabelledFormula& f) {
  c[k] = f;
  return c;
}

LamCtx merged(const LamCtx& a, const LamCtx& b) {
  LamCtx out = a;
  for (const auto& [k, f] : b) {
    if (out.count(k)) throw Error("contexts are not disjoint on " + k);
    out.emplace(k, f);
  }
  return out;
}

Derivation leaf(TypingRule r, Judgment j) { return Derivation{r, std::move(j), {}, {}, {}, {}, {}}; }

Derivation unary(TypingRule r, Judgment j, const Derivation& p) {
  Derivation d = leaf(r, std::move(j));
  d.premises.push_back(p);
  return d;
}

}  // namespace

Derivation mk_var(const LamVarId& x, const LabelledFormula& entry, const LabelledFormula& type) {
  return leaf(TypingRule::VarM, Judgment{{{x, entry}}, Term::var(x), type, {}});
}

Derivation mk_abs(const LamVarId& x, const Derivation& premise, const LabelledFormula& type) {
  const Judgment& p = premise.conclusion;
  return unary(TypingRule::Abs, Judgment{without(p.lam_ctx, x), Term::lam(x, p.subject), type, p.mu_ctx}, premise);
}

Derivation mk_app(const Derivation& fun, const Derivation& arg, const ResourcePoly& h, const LabelledFormula& type,
                  const LamCtx& psi, const MuCtx& phi) {
  const Judgment& t = fun.conclusion;
  Judgment j{merged(t.lam_ctx, psi), Term::app(t.subject, arg.conclusion.subject), type, merged(t.mu_ctx, phi)};
  Derivation d = leaf(TypingRule::AppM, std::move(j));
  d.premises = {fun, arg};
  d.polys["h"] = h;
  return d;
}

Derivation mk_mu_name(const MuVarId& a, const Derivation& premise, const LabelledFormula& type) {
  const Judgment& p = premise.conclusion;
  if (p.mu_ctx.count(a)) throw Error("name " + a + " already in context");
  return unary(TypingRule::MuName, Judgment{p.lam_ctx, Term::name(a, p.subject), type, with(p.mu_ctx, a, p.type)},
               premise);
}

Derivation mk_mu_abs(const MuVarId& a, const Derivation& premise) {
  const Judgment& p = premise.conclusion;
  auto it = p.mu_ctx.find(a);
  if (it == p.mu_ctx.end()) throw Error("name " + a + " missing from premise");
  return unary(TypingRule::MuAbs, Judgment{p.lam_ctx, Term::mu(a, p.subject), it->second, without(p.mu_ctx, a)},
               premise);
}

Derivation add_var(const LamCtx& ctx, const LamVarId& x, const LabelledFormula& type, const MuCtx& mu) {
  return leaf(TypingRule::Var, Judgment{ctx, Term::var(x), type, mu});
}

Derivation add_app(const Derivation& fun, const Derivation& arg, const ResourcePoly& h, const LabelledFormula& type,
                   const LamCtx& lam_ctx, const MuCtx& mu_ctx, const LamCtx& upsilon, const MuCtx& pi) {
  Derivation d = leaf(TypingRule::App,
                      Judgment{lam_ctx, Term::app(fun.conclusion.subject, arg.conclusion.subject), type, mu_ctx});
  d.premises = {fun, arg};
  d.polys["h"] = h;
  d.upsilon = upsilon;
  d.pi = pi;
  return d;
}

Derivation add_mu_name(const MuVarId& a, const Derivation& premise, const LabelledFormula& type,
                       const LabelledFormula& entry) {
  const Judgment& p = premise.conclusion;
  return unary(TypingRule::MuName, Judgment{p.lam_ctx, Term::name(a, p.subject), type, with(p.mu_ctx, a, entry)},
               premise);
}

Derivation mk_weak_lam(const LamVarId& x, const LabelledFormula& entry, const Derivation& premise) {
  Judgment j = premise.conclusion;
  if (j.lam_ctx.count(x)) throw Error("variable " + x + " already in context");
  j.lam_ctx[x] = entry;
  return unary(TypingRule::WeakLam, std::move(j), premise);
}

Derivation mk_weak_mu(const MuVarId& a, const LabelledFormula& entry, const Derivation& premise) {
  Judgment j = premise.conclusion;
  if (j.mu_ctx.count(a)) throw Error("name " + a + " already in context");
  j.mu_ctx[a] = entry;
  return unary(TypingRule::WeakMu, std::move(j), premise);
}

Derivation mk_contr_lam(const LamVarId& x, const LamVarId& y, const LamVarId& z, const LabelledFormula& entry,
                        const Derivation& premise) {
  Judgment j = premise.conclusion;
  j.lam_ctx = with(without(without(j.lam_ctx, x), y), z, entry);
  j.subject = rename_var(rename_var(j.subject, x, z), y, z);
  Derivation d = unary(TypingRule::ContrLam, std::move(j), premise);
  d.names = {{"x", x}, {"y", y}, {"z", z}};
  return d;
}

Derivation mk_contr_mu(const MuVarId& x, const MuVarId& y, const MuVarId& z, const LabelledFormula& entry,
                       const Derivation& premise) {
  Judgment j = premise.conclusion;
  j.mu_ctx = with(without(without(j.mu_ctx, x), y), z, entry);
  j.subject = rename_name(rename_name(j.subject, x, z), y, z);
  Derivation d = unary(TypingRule::ContrMu, std::move(j), premise);
  d.names = {{"x", x}, {"y", y}, {"z", z}};
  return d;
}

namespace {

Derivation rename_free(const Derivation& d, const std::string& x, const std::string& y, bool names) {
  const Judgment& j = d.conclusion;
  const LamCtx& ctx = names ? j.mu_ctx : j.lam_ctx;
  bool in_subject = names ? j.subject.free_names().count(x) > 0 : j.subject.free_vars().count(x) > 0;
  if (!ctx.count(x) && !in_subject) return d;
  if (ctx.count(y)) throw Error("renaming " + x + " to " + y + " clashes with the context");
  Derivation out = d;
  Judgment& o = out.conclusion;
  LamCtx& octx = names ? o.mu_ctx : o.lam_ctx;
  if (auto it = octx.find(x); it != octx.end()) {
    LabelledFormula f = it->second;
    octx.erase(it);
    octx[y] = f;
  }
  o.subject = names ? rename_name(o.subject, x, y) : rename_var(o.subject, x, y);
  LamCtx& wit = names ? out.pi : out.upsilon;
  if (auto it = wit.find(x); it != wit.end()) {
    LabelledFormula f = it->second;
    wit.erase(it);
    wit[y] = f;
  }
  TypingRule contr = names ? TypingRule::ContrMu : TypingRule::ContrLam;
  if (d.rule == contr && d.names.at("z") == x) {
    out.names["z"] = y;
    return out;
  }
  for (auto& p : out.premises) p = rename_free(p, x, y, names);
  return out;
}

LamCtx ctx_subst(const LamCtx& c, const VarId& x, const ResourcePoly& p) {
  LamCtx out;
  for (const auto& [k, f] : c) out.emplace(k, lf_subst(f, x, p));
  return out;
}

}  // namespace

VarSet resource_vars(const Derivation& d) {
  VarSet out;
  auto add = [&](const LabelledFormula& f) {
    for (const auto& v : f.free_vars()) out.insert(v);
    out.insert(f.binder);
  };
  for (const auto& [_, f] : d.conclusion.lam_ctx) add(f);
  for (const auto& [_, f] : d.conclusion.mu_ctx) add(f);
  add(d.conclusion.type);
  for (const auto& [_, p] : d.polys)
    for (const auto& v : p.free_vars()) out.insert(v);
  for (const auto& p : d.premises) out.merge(resource_vars(p));
  return out;
}

Derivation d_rename_var(const Derivation& d, const LamVarId& x, const LamVarId& y) {
  return x == y ? d : rename_free(d, x, y, false);
}

Derivation d_rename_name(const Derivation& d, const MuVarId& a, const MuVarId& b) {
  return a == b ? d : rename_free(d, a, b, true);
}

Derivation d_subst(const Derivation& d, const VarId& x, const ResourcePoly& p) {
  Derivation out = d;
  Judgment& j = out.conclusion;
  j.lam_ctx = ctx_subst(j.lam_ctx, x, p);
  j.mu_ctx = ctx_subst(j.mu_ctx, x, p);
  j.type = lf_subst(j.type, x, p);
  out.upsilon = ctx_subst(out.upsilon, x, p);
  out.pi = ctx_subst(out.pi, x, p);
  for (auto& [_, q] : out.polys) q = compose(q, x, p);
  bool app = d.rule == TypingRule::App || d.rule == TypingRule::AppM;
  if (!app) {
    for (auto& prem : out.premises) prem = d_subst(prem, x, p);
    return out;
  }
  // The function type's label binder indexes the argument side.
  Derivation& fun = out.premises[0];
  Derivation& arg = out.premises[1];
  VarId b = d.premises[0].conclusion.type.binder;
  if (b == x) {
    fun = d_subst(fun, x, p);
    return out;
  }
  if (p.mentions(b)) {
    VarSet avoid = resource_vars(d);
    for (const auto& v : p.free_vars()) avoid.insert(v);
    avoid.insert(x);
    VarId c = fresh_name(b, avoid);
    fun.conclusion.type = with_binder(fun.conclusion.type, c);
    arg = d_subst(arg, b, ResourcePoly::var(c));
  }
  fun = d_subst(fun, x, p);
  arg = d_subst(arg, x, p);
  return out;
}

namespace {

void require_below(const LamCtx& target, const LamCtx& have, const char* what) {
  if (!ctx_leq(target, have, true))
    throw Error(std::string("subtyping target is not below the ") + what + " context");
}

LamCtx restrict(const LamCtx& c, const LamCtx& keys) {
  LamCtx out;
  for (const auto& [k, _] : keys) out.emplace(k, c.at(k));
  return out;
}

}  // namespace

Derivation d_subtype(const Derivation& d, const Judgment& target) {
  const Judgment& j = d.conclusion;
  require_below(target.lam_ctx, j.lam_ctx, "lambda");
  require_below(target.mu_ctx, j.mu_ctx, "mu");
  if (!lf_leq(target.type, j.type)) throw Error("subtyping target type " + target.type.str() + " is not below " + j.type.str());
  switch (d.rule) {
    case TypingRule::Var:
    case TypingRule::VarM: {
      Derivation out = d;
      out.conclusion = Judgment{target.lam_ctx, j.subject, target.type, target.mu_ctx};
      return out;
    }
    case TypingRule::Abs: {
      const Judgment& p = d.premises[0].conclusion;
      const LamVarId& x = j.subject.id();
      const LabelledFormula& e = p.lam_ctx.at(x);
      Formula arrow_e = rebind(target.type, e.binder);
      Formula arrow_t = rebind(target.type, p.type.binder);
      Judgment pt{with(target.lam_ctx, x, LabelledFormula{arrow_e.left(), e.binder, e.label}), p.subject,
                  LabelledFormula{arrow_t.right(), p.type.binder, p.type.label}, target.mu_ctx};
      return mk_abs(x, d_subtype(d.premises[0], pt), target.type);
    }
    case TypingRule::App:
      throw Error("subtyping is defined on multiplicative derivations");
    case TypingRule::AppM: {
      const Judgment& t = d.premises[0].conclusion;
      const Judgment& u = d.premises[1].conclusion;
      Formula m = rebind(target.type, t.type.binder);
      Judgment tt{restrict(target.lam_ctx, t.lam_ctx), t.subject,
                  LabelledFormula{Formula::par(t.type.formula.left(), m), t.type.binder, t.type.label},
                  restrict(target.mu_ctx, t.mu_ctx)};
      return mk_app(d_subtype(d.premises[0], tt), d.premises[1], d.polys.at("h"), target.type,
                    restrict(target.lam_ctx, u.lam_ctx), restrict(target.mu_ctx, u.mu_ctx));
    }
    case TypingRule::MuName: {
      const MuVarId& a = j.subject.id();
      const Judgment& p = d.premises[0].conclusion;
      Judgment pt{target.lam_ctx, p.subject, target.mu_ctx.at(a), without(target.mu_ctx, a)};
      return mk_mu_name(a, d_subtype(d.premises[0], pt), target.type);
    }
    case TypingRule::MuAbs: {
      const MuVarId& a = j.subject.id();
      const Judgment& p = d.premises[0].conclusion;
      Judgment pt{target.lam_ctx, p.subject, p.type, with(target.mu_ctx, a, target.type)};
      return mk_mu_abs(a, d_subtype(d.premises[0], pt));
    }
    case TypingRule::WeakLam:
    case TypingRule::WeakMu: {
      bool lam = d.rule == TypingRule::WeakLam;
      const Judgment& p = d.premises[0].conclusion;
      const LamCtx& pc = lam ? p.lam_ctx : p.mu_ctx;
      const LamCtx& tc = lam ? target.lam_ctx : target.mu_ctx;
      std::string w;
      for (const auto& [k, _] : tc)
        if (!pc.count(k)) w = k;
      Judgment pt = target;
      pt.subject = p.subject;
      (lam ? pt.lam_ctx : pt.mu_ctx).erase(w);
      Derivation sub = d_subtype(d.premises[0], pt);
      return lam ? mk_weak_lam(w, tc.at(w), sub) : mk_weak_mu(w, tc.at(w), sub);
    }
    default: {
      bool lam = d.rule == TypingRule::ContrLam;
      const Judgment& p = d.premises[0].conclusion;
      const std::string &x = d.names.at("x"), &y = d.names.at("y"), &z = d.names.at("z");
      const LamCtx& pc = lam ? p.lam_ctx : p.mu_ctx;
      const LamCtx& tc = lam ? target.lam_ctx : target.mu_ctx;
      Judgment pt = target;
      pt.subject = p.subject;
      LamCtx inner = with(with(without(tc, z), x, pc.at(x)), y, pc.at(y));
      (lam ? pt.lam_ctx : pt.mu_ctx) = inner;
      Derivation sub = d_subtype(d.premises[0], pt);
      return lam ? mk_contr_lam(x, y, z, tc.at(z), sub) : mk_contr_mu(x, y, z, tc.at(z), sub);
    }
  }
}

}  // namespace bllp
