#include "bllp/typing.hpp"

namespace bllp {

namespace {

bool is_structural(TypingRule r) {
  return r == TypingRule::WeakLam || r == TypingRule::ContrLam || r == TypingRule::WeakMu ||
         r == TypingRule::ContrMu;
}

LamCtx restrict_to(const LamCtx& c, const LamCtx& keys) {
  LamCtx out;
  for (const auto& [k, _] : keys)
    if (auto it = c.find(k); it != c.end()) out.emplace(k, it->second);
  return out;
}

LamCtx minus_keys(const LamCtx& c, const LamCtx& keys) {
  LamCtx out;
  for (const auto& [k, f] : c)
    if (!keys.count(k)) out.emplace(k, f);
  return out;
}

LamCtx joined(LamCtx a, const LamCtx& b) {
  for (const auto& [k, f] : b) a[k] = f;
  return a;
}

std::string added_key(const LamCtx& whole, const LamCtx& part) {
  for (const auto& [k, _] : whole)
    if (!part.count(k)) return k;
  throw Error("weakening adds no entry");
}

/// Rebuilds d over new premises, keeping its rule parameters. For
/// applications the argument-side context is d's minus the old function
/// premise's context, so new entries may only arrive from the function side.
Derivation remake(const Derivation& d, const std::vector<Derivation>& prem) {
  const Judgment& j = d.conclusion;
  switch (d.rule) {
    case TypingRule::Var:
    case TypingRule::VarM:
      return d;
    case TypingRule::Abs:
      return mk_abs(j.subject.id(), prem[0], j.type);
    case TypingRule::AppM: {
      const Judgment& f = d.premises[0].conclusion;
      return mk_app(prem[0], prem[1], d.polys.at("h"), j.type, minus_keys(j.lam_ctx, f.lam_ctx),
                    minus_keys(j.mu_ctx, f.mu_ctx));
    }
    case TypingRule::MuName:
      return mk_mu_name(j.subject.id(), prem[0], j.type);
    case TypingRule::MuAbs:
      return mk_mu_abs(j.subject.id(), prem[0]);
    case TypingRule::WeakLam: {
      std::string w = added_key(j.lam_ctx, d.premises[0].conclusion.lam_ctx);
      return mk_weak_lam(w, j.lam_ctx.at(w), prem[0]);
    }
    case TypingRule::WeakMu: {
      std::string w = added_key(j.mu_ctx, d.premises[0].conclusion.mu_ctx);
      return mk_weak_mu(w, j.mu_ctx.at(w), prem[0]);
    }
    case TypingRule::ContrLam: {
      const std::string& z = d.names.at("z");
      return mk_contr_lam(d.names.at("x"), d.names.at("y"), z, j.lam_ctx.at(z), prem[0]);
    }
    case TypingRule::ContrMu: {
      const std::string& z = d.names.at("z");
      return mk_contr_mu(d.names.at("x"), d.names.at("y"), z, j.mu_ctx.at(z), prem[0]);
    }
    default:
      throw Error("rule " + to_string(d.rule) + " is not multiplicative");
  }
}

void collect_ids(const Derivation& d, NameSet& out) {
  const Judgment& j = d.conclusion;
  out.merge(j.subject.all_ids());
  for (const auto& [k, _] : j.lam_ctx) out.insert(k);
  for (const auto& [k, _] : j.mu_ctx) out.insert(k);
  for (const auto& [_, v] : d.names) out.insert(v);
  for (const auto& p : d.premises) collect_ids(p, out);
}

Term replace_at(const Term& t, const Path& p, std::size_t i, const Term& u) {
  if (i == p.size()) return u;
  switch (t.kind()) {
    case TermKind::Lam:
      return Term::lam(t.id(), replace_at(t.body(), p, i + 1, u));
    case TermKind::Mu:
      return Term::mu(t.id(), replace_at(t.body(), p, i + 1, u));
    case TermKind::Name:
      return Term::name(t.id(), replace_at(t.body(), p, i + 1, u));
    case TermKind::App:
      return p[i] == 0 ? Term::app(replace_at(t.fun(), p, i + 1, u), t.arg())
                       : Term::app(t.fun(), replace_at(t.arg(), p, i + 1, u));
    default:
      throw Error("path leaves the term");
  }
}

class Reducer {
 public:
  explicit Reducer(const Derivation& d) {
    collect_ids(d, used_);
    res_used_ = resource_vars(d);
  }

  Derivation reduce(const Derivation& d, const Path& path, std::size_t i) {
    if (is_structural(d.rule)) return remake(d, {reduce(d.premises[0], path, i)});
    if (i == path.size()) return root(d);
    std::vector<Derivation> prem = d.premises;
    std::size_t k = d.rule == TypingRule::AppM ? static_cast<std::size_t>(path[i]) : 0;
    if (prem.empty() || k >= prem.size()) throw Error("position is not a redex");
    prem[k] = reduce(prem[k], path, i + 1);
    return remake(d, prem);
  }

 private:
  NameSet used_;
  VarSet res_used_;

  std::string fresh(const std::string& hint) {
    std::string n = fresh_id(hint, used_);
    used_.insert(n);
    return n;
  }

  VarId fresh_res(const VarId& hint) {
    VarId v = fresh_name(hint == "_" ? "b" : hint, res_used_);
    res_used_.insert(v);
    return v;
  }

  // Peels structural nodes off d; returns them outermost first.
  static std::vector<const Derivation*> peel(const Derivation*& d) {
    std::vector<const Derivation*> out;
    while (is_structural(d->rule)) {
      out.push_back(d);
      d = &d->premises[0];
    }
    return out;
  }

  static Derivation wrap(Derivation inner, const std::vector<const Derivation*>& nodes) {
    for (auto it = nodes.rbegin(); it != nodes.rend(); ++it) inner = remake(**it, {inner});
    return inner;
  }

  Derivation root(const Derivation& d) {
    auto redex = root_redex(d.conclusion.subject);
    if (!redex) throw Error("position is not a redex");
    Derivation out = *redex == Redex::Theta ? theta(d) : *redex == Redex::Beta ? beta(d) : mu(d);
    Judgment target = d.conclusion;
    target.subject = out.conclusion.subject;
    return d_subtype(out, target);
  }

  Derivation beta(const Derivation& d) {
    if (d.rule != TypingRule::AppM) throw Error("derivation does not match the beta redex");
    const Derivation* f = &d.premises[0];
    auto nodes = peel(f);
    if (f->rule != TypingRule::Abs) throw Error("derivation does not match the beta redex");
    VarId b = d.premises[0].conclusion.type.binder;
    Derivation body = f->premises[0];
    const Derivation& arg = d.premises[1];
    return wrap(lam_subst_top(body, f->conclusion.subject.id(), arg, b), nodes);
  }

  Derivation mu(const Derivation& d) {
    if (d.rule != TypingRule::AppM) throw Error("derivation does not match the mu redex");
    const Derivation* f = &d.premises[0];
    auto nodes = peel(f);
    if (f->rule != TypingRule::MuAbs) throw Error("derivation does not match the mu redex");
    VarId b = d.premises[0].conclusion.type.binder;
    const Derivation& arg = d.premises[1];
    MuVarId a = f->conclusion.subject.id();
    Derivation body = f->premises[0];
    NameSet arg_ids;
    collect_ids(arg, arg_ids);
    if (arg_ids.count(a)) {
      MuVarId a2 = fresh(a);
      body = d_rename_name(body, a, a2);
      a = a2;
    }
    VarId bs = fresh_res(b);
    Derivation rho = freshen_apart(d_subst(arg, b, ResourcePoly::var(bs)));
    body = freshen(body, rho);
    return wrap(mk_mu_abs(a, mu_subst(body, a, rho, bs)), nodes);
  }

  Derivation theta(const Derivation& d) {
    if (d.rule != TypingRule::MuAbs) throw Error("derivation does not match the theta redex");
    NameSet lineage{d.conclusion.subject.id()};
    std::vector<const Derivation*> kept;
    const Derivation* p = &d.premises[0];
    while (is_structural(p->rule)) {
      const Judgment& j = p->conclusion;
      if (p->rule == TypingRule::ContrMu && lineage.count(p->names.at("z"))) {
        lineage.erase(p->names.at("z"));
        lineage.insert(p->names.at("x"));
        lineage.insert(p->names.at("y"));
      } else if (p->rule == TypingRule::WeakMu && lineage.count(added_key(j.mu_ctx, p->premises[0].conclusion.mu_ctx))) {
      } else {
        kept.push_back(p);
      }
      p = &p->premises[0];
    }
    if (p->rule != TypingRule::MuName || !lineage.count(p->conclusion.subject.id()))
      throw Error("derivation does not match the theta redex");
    Derivation body = p->premises[0];
    for (const auto& a : lineage)
      if (body.conclusion.mu_ctx.count(a)) body = strengthen(body, a);
    return wrap(body, kept);
  }

  // Drops the name a, which is not free in the subject, from d.
  static Derivation strengthen(const Derivation& d, const MuVarId& a) {
    const Judgment& j = d.conclusion;
    if (d.rule == TypingRule::WeakMu && added_key(j.mu_ctx, d.premises[0].conclusion.mu_ctx) == a)
      return d.premises[0];
    if (d.rule == TypingRule::ContrMu && d.names.at("z") == a)
      return strengthen(strengthen(d.premises[0], d.names.at("x")), d.names.at("y"));
    std::vector<Derivation> prem = d.premises;
    bool found = false;
    for (auto& q : prem)
      if (q.conclusion.mu_ctx.count(a)) {
        q = strengthen(q, a);
        found = true;
      }
    if (!found) throw Error("name " + a + " is not introduced by weakening");
    if (d.rule != TypingRule::AppM) return remake(d, prem);
    MuCtx phi = minus_keys(j.mu_ctx, d.premises[0].conclusion.mu_ctx);
    phi.erase(a);
    return mk_app(prem[0], prem[1], d.polys.at("h"), j.type, minus_keys(j.lam_ctx, d.premises[0].conclusion.lam_ctx),
                  phi);
  }

  // Renames the free variables and names of rho to fresh ones.
  Derivation rename_apart(const Derivation& rho, std::map<std::string, std::string>& vars,
                          std::map<std::string, std::string>& names) {
    Derivation out = rho;
    for (const auto& [k, _] : rho.conclusion.lam_ctx) {
      vars[k] = fresh(k);
      out = d_rename_var(out, k, vars[k]);
    }
    for (const auto& [k, _] : rho.conclusion.mu_ctx) {
      names[k] = fresh(k);
      out = d_rename_name(out, k, names[k]);
    }
    return out;
  }

  // Renames the bound names of rho away from everything else in play.
  Derivation freshen_apart(const Derivation& rho) {
    NameSet mine;
    collect_ids(rho, mine);
    return freshen_names(rho, mine, true);
  }

  // Renames binders and contraction names of pi that clash with rho.
  Derivation freshen(const Derivation& pi, const Derivation& rho) {
    NameSet avoid;
    collect_ids(rho, avoid);
    return freshen_names(pi, avoid, false);
  }

  Derivation freshen_names(const Derivation& d, const NameSet& avoid, bool all) {
    std::vector<Derivation> prem = d.premises;
    const Judgment& j = d.conclusion;
    auto clash = [&](const std::string& n) { return all || avoid.count(n) > 0; };
    if (d.rule == TypingRule::Abs && clash(j.subject.id())) {
      LamVarId x = fresh(j.subject.id());
      prem[0] = d_rename_var(prem[0], j.subject.id(), x);
      return mk_abs(x, freshen_names(prem[0], avoid, all), j.type);
    }
    if (d.rule == TypingRule::MuAbs && clash(j.subject.id())) {
      MuVarId a = fresh(j.subject.id());
      prem[0] = d_rename_name(prem[0], j.subject.id(), a);
      return mk_mu_abs(a, freshen_names(prem[0], avoid, all));
    }
    if (d.rule == TypingRule::ContrLam || d.rule == TypingRule::ContrMu) {
      bool lam = d.rule == TypingRule::ContrLam;
      std::string x = d.names.at("x"), y = d.names.at("y");
      const std::string& z = d.names.at("z");
      for (std::string* n : {&x, &y}) {
        if (!clash(*n)) continue;
        std::string m = fresh(*n);
        prem[0] = lam ? d_rename_var(prem[0], *n, m) : d_rename_name(prem[0], *n, m);
        *n = m;
      }
      Derivation sub = freshen_names(prem[0], avoid, all);
      const LabelledFormula& e = (lam ? j.lam_ctx : j.mu_ctx).at(z);
      return lam ? mk_contr_lam(x, y, z, e, sub) : mk_contr_mu(x, y, z, e, sub);
    }
    for (auto& p : prem) p = freshen_names(p, avoid, all);
    return remake(d, prem);
  }

  // Makes the label binder of an application's function side fresh.
  Derivation fresh_index(const Derivation& app) {
    Derivation out = app;
    VarId b = app.premises[0].conclusion.type.binder;
    VarId c = fresh_res(b);
    out.premises[0].conclusion.type = with_binder(out.premises[0].conclusion.type, c);
    out.premises[1] = d_subst(out.premises[1], b, ResourcePoly::var(c));
    return out;
  }

  Derivation lam_subst_top(const Derivation& pi, const LamVarId& x, const Derivation& arg, const VarId& b) {
    VarId bs = fresh_res(b);
    Derivation rho = freshen_apart(d_subst(arg, b, ResourcePoly::var(bs)));
    return lam_subst(freshen(pi, rho), x, rho, bs);
  }

  Derivation lam_subst(const Derivation& pi, const LamVarId& x, const Derivation& rho, const VarId& b);
  Derivation mu_subst(const Derivation& pi, const MuVarId& a, const Derivation& rho, const VarId& b);
  Derivation merge_copies(Derivation out, const Derivation& rho, const std::map<std::string, std::string>& v1,
                          const std::map<std::string, std::string>& n1,
                          const std::map<std::string, std::string>& v2,
                          const std::map<std::string, std::string>& n2, const LamCtx& theta, const MuCtx& xi);
  ResourcePoly offset(const VarId& index, const ResourcePoly& label);
};

ResourcePoly Reducer::offset(const VarId& index, const ResourcePoly& label) {
  VarId v = fresh_res("v");
  return bounded_sum(v, ResourcePoly::var(index), rename(label, index, v));
}

Derivation Reducer::merge_copies(Derivation out, const Derivation& rho, const std::map<std::string, std::string>& v1,
                                 const std::map<std::string, std::string>& n1,
                                 const std::map<std::string, std::string>& v2,
                                 const std::map<std::string, std::string>& n2, const LamCtx& theta,
                                 const MuCtx& xi) {
  for (const auto& [k, _] : rho.conclusion.lam_ctx) out = mk_contr_lam(v1.at(k), v2.at(k), k, theta.at(k), out);
  for (const auto& [k, _] : rho.conclusion.mu_ctx) out = mk_contr_mu(n1.at(k), n2.at(k), k, xi.at(k), out);
  return out;
}

// pi derives Gamma, x : <?{z<s} ~N>[b<p]; the result derives Gamma,
// sum_{b<p} Theta |- t{x:=u} with sum_{b<p} Xi, rho being Theta |- u : <N>[z<s] | Xi.
Derivation Reducer::lam_subst(const Derivation& pi, const LamVarId& x, const Derivation& rho, const VarId& b) {
  const Judgment& j = pi.conclusion;
  LabelledFormula e = with_binder(j.lam_ctx.at(x), b);
  LamCtx theta = ctx_sum(rho.conclusion.lam_ctx, b, e.label);
  MuCtx xi = ctx_sum(rho.conclusion.mu_ctx, b, e.label);
  switch (pi.rule) {
    case TypingRule::Var:
    case TypingRule::VarM:
      return d_subtype(d_subst(rho, b, 0), Judgment{theta, rho.conclusion.subject, j.type, xi});
    case TypingRule::WeakLam: {
      const Derivation& prem = pi.premises[0];
      if (added_key(j.lam_ctx, prem.conclusion.lam_ctx) != x) break;
      Derivation out = prem;
      for (const auto& [k, f] : xi) out = mk_weak_mu(k, f, out);
      for (const auto& [k, f] : theta) out = mk_weak_lam(k, f, out);
      return out;
    }
    case TypingRule::ContrLam: {
      if (pi.names.at("z") != x) break;
      const Derivation& prem = pi.premises[0];
      const std::string &x1 = pi.names.at("x"), &x2 = pi.names.at("y");
      LabelledFormula a1 = with_binder(prem.conclusion.lam_ctx.at(x1), b);
      std::map<std::string, std::string> v1, n1, v2, n2;
      Derivation r1 = rename_apart(rho, v1, n1);
      Derivation r2 = d_subst(rename_apart(rho, v2, n2), b, ResourcePoly::var(b) + a1.label);
      Derivation out = lam_subst(lam_subst(prem, x1, r1, b), x2, r2, b);
      return merge_copies(out, rho, v1, n1, v2, n2, theta, xi);
    }
    case TypingRule::AppM: {
      if (pi.premises[0].conclusion.lam_ctx.count(x))
        return remake(pi, {lam_subst(pi.premises[0], x, rho, b), pi.premises[1]});
      Derivation app = pi;
      if (resource_vars(rho).count(app.premises[0].conclusion.type.binder)) app = fresh_index(app);
      const Derivation& fun = app.premises[0];
      const Derivation& arg = app.premises[1];
      LabelledFormula eu = with_binder(arg.conclusion.lam_ctx.at(x), b);
      ResourcePoly shift = ResourcePoly::var(b) + offset(fun.conclusion.type.binder, eu.label);
      Derivation sub = lam_subst(arg, x, d_subst(rho, b, shift), b);
      LamCtx psi = restrict_to(j.lam_ctx, arg.conclusion.lam_ctx);
      psi.erase(x);
      return mk_app(fun, sub, app.polys.at("h"), j.type, joined(psi, theta),
                    joined(restrict_to(j.mu_ctx, arg.conclusion.mu_ctx), xi));
    }
    default:
      break;
  }
  std::vector<Derivation> prem = pi.premises;
  for (auto& q : prem)
    if (q.conclusion.lam_ctx.count(x)) {
      q = lam_subst(q, x, rho, b);
      return remake(pi, prem);
    }
  throw Error("variable " + x + " is not traced through the derivation");
}

// pi derives Delta, a : <N -[z<s]-> M>[b<p]; the result replaces every
// [a]w by [a](w)u and gives a the type <M>[b<p].
Derivation Reducer::mu_subst(const Derivation& pi, const MuVarId& a, const Derivation& rho, const VarId& b) {
  const Judgment& j = pi.conclusion;
  LabelledFormula e = with_binder(j.mu_ctx.at(a), b);
  const Formula& arrow = e.formula;
  if (arrow.kind() != FormulaKind::Par || arrow.left().kind() != FormulaKind::WhyNot)
    throw Error("name " + a + " does not have an arrow type");
  LabelledFormula m_type{arrow.right(), b, e.label};
  LamCtx theta = ctx_sum(rho.conclusion.lam_ctx, b, e.label);
  MuCtx xi = ctx_sum(rho.conclusion.mu_ctx, b, e.label);
  switch (pi.rule) {
    case TypingRule::MuName: {
      if (j.subject.id() != a) break;
      Derivation fun = pi.premises[0];
      fun.conclusion.type = with_binder(fun.conclusion.type, b);
      const Formula& why = arrow.left();
      Judgment target = rho.conclusion;
      target.type = LabelledFormula{negate(why.body()), why.binder(), why.bound()};
      Derivation app = mk_app(fun, d_subtype(rho, target), e.label, m_type, theta, xi);
      return mk_mu_name(a, app, j.type);
    }
    case TypingRule::WeakMu: {
      const Derivation& prem = pi.premises[0];
      if (added_key(j.mu_ctx, prem.conclusion.mu_ctx) != a) break;
      Derivation out = prem;
      for (const auto& [k, f] : xi) out = mk_weak_mu(k, f, out);
      for (const auto& [k, f] : theta) out = mk_weak_lam(k, f, out);
      return mk_weak_mu(a, m_type, out);
    }
    case TypingRule::ContrMu: {
      if (pi.names.at("z") != a) break;
      const Derivation& prem = pi.premises[0];
      const std::string &a1 = pi.names.at("x"), &a2 = pi.names.at("y");
      LabelledFormula e1 = with_binder(prem.conclusion.mu_ctx.at(a1), b);
      std::map<std::string, std::string> v1, n1, v2, n2;
      Derivation r1 = rename_apart(rho, v1, n1);
      Derivation r2 = d_subst(rename_apart(rho, v2, n2), b, ResourcePoly::var(b) + e1.label);
      Derivation out = mu_subst(mu_subst(prem, a1, r1, b), a2, r2, b);
      out = merge_copies(out, rho, v1, n1, v2, n2, theta, xi);
      return mk_contr_mu(a1, a2, a, m_type, out);
    }
    case TypingRule::AppM: {
      if (pi.premises[0].conclusion.mu_ctx.count(a))
        return remake(pi, {mu_subst(pi.premises[0], a, rho, b), pi.premises[1]});
      Derivation app = pi;
      if (resource_vars(rho).count(app.premises[0].conclusion.type.binder)) app = fresh_index(app);
      const Derivation& fun = app.premises[0];
      const Derivation& arg = app.premises[1];
      LabelledFormula eu = with_binder(arg.conclusion.mu_ctx.at(a), b);
      ResourcePoly shift = ResourcePoly::var(b) + offset(fun.conclusion.type.binder, eu.label);
      Derivation sub = mu_subst(arg, a, d_subst(rho, b, shift), b);
      MuCtx phi = restrict_to(j.mu_ctx, arg.conclusion.mu_ctx);
      phi[a] = m_type;
      return mk_app(fun, sub, app.polys.at("h"), j.type, joined(restrict_to(j.lam_ctx, arg.conclusion.lam_ctx), theta),
                    joined(phi, xi));
    }
    default:
      break;
  }
  std::vector<Derivation> prem = pi.premises;
  for (auto& q : prem)
    if (q.conclusion.mu_ctx.count(a)) {
      q = mu_subst(q, a, rho, b);
      return remake(pi, prem);
    }
  throw Error("name " + a + " is not traced through the derivation");
}

}  // namespace

Derivation subject_reduce(const Derivation& d, const Path& position) {
  CheckReport r = check_mult(d);
  if (!r.ok) throw Error("multiplicative check failed: " + r.str());
  const Term& subject = d.conclusion.subject;
  const Term& redex = subterm(subject, position);
  if (!root_redex(redex)) throw Error("no redex at " + path_str(position));
  Term expected = replace_at(subject, position, 0, contract(redex));
  Derivation out = Reducer(d).reduce(d, position, 0);
  if (!alpha_equal(out.conclusion.subject, expected))
    throw Error("reduct mismatch: " + out.conclusion.subject.str() + " vs " + expected.str());
  return out;
}

}  // namespace bllp
