#include "bllp/typing.hpp"

namespace bllp {

namespace {

void collect_ids(const Derivation& d, NameSet& out) {
  const Judgment& j = d.conclusion;
  out.merge(j.subject.all_ids());
  for (const auto& [k, _] : j.lam_ctx) out.insert(k);
  for (const auto& [k, _] : j.mu_ctx) out.insert(k);
  for (const auto& [k, _] : d.upsilon) out.insert(k);
  for (const auto& [k, _] : d.pi) out.insert(k);
  for (const auto& [_, v] : d.names) out.insert(v);
  for (const auto& p : d.premises) collect_ids(p, out);
}

class Elaborator {
 public:
  explicit Elaborator(NameSet used) : used_(std::move(used)) {}

  Derivation run(const Derivation& d) {
    Derivation out = elab(d);
    out.conclusion = d.conclusion;
    return out;
  }

 private:
  NameSet used_;

  std::string fresh(const std::string& hint) {
    std::string n = fresh_id(hint, used_);
    used_.insert(n);
    return n;
  }

  Derivation elab(const Derivation& d) {
    const Judgment& j = d.conclusion;
    switch (d.rule) {
      case TypingRule::Var:
        return var(d);
      case TypingRule::Abs:
        return mk_abs(j.subject.id(), run(d.premises[0]), j.type);
      case TypingRule::MuAbs:
        return mk_mu_abs(j.subject.id(), run(d.premises[0]));
      case TypingRule::MuName:
        return mu_name(d);
      case TypingRule::App:
        return app(d);
      default:
        throw Error("rule " + to_string(d.rule) + " is not additive");
    }
  }

  Derivation var(const Derivation& d) {
    const Judgment& j = d.conclusion;
    const LamVarId& x = j.subject.id();
    Derivation out = mk_var(x, j.lam_ctx.at(x), j.type);
    for (const auto& [a, f] : j.mu_ctx) out = mk_weak_mu(a, f, out);
    for (const auto& [y, f] : j.lam_ctx)
      if (y != x) out = mk_weak_lam(y, f, out);
    return out;
  }

  Derivation mu_name(const Derivation& d) {
    const Judgment& j = d.conclusion;
    const Judgment& p = d.premises[0].conclusion;
    const MuVarId& a = j.subject.id();
    Derivation sub = run(d.premises[0]);
    if (!p.mu_ctx.count(a)) {
      Judgment target = p;
      target.type = j.mu_ctx.at(a);
      return mk_mu_name(a, d_subtype(sub, target), j.type);
    }
    MuVarId b = fresh(a);
    return mk_contr_mu(b, a, a, j.mu_ctx.at(a), mk_mu_name(b, sub, j.type));
  }

  // One side of an application: contexts of the function premise, the
  // argument side witness, the conclusion, and the renamings applied to
  // shared entries of the argument premise.
  struct Side {
    LamCtx fun_target;
    LamCtx arg_ctx;
    std::vector<std::pair<std::string, std::string>> shared;
    std::vector<std::string> weakened;
  };

  Side split(const LamCtx& whole, const LamCtx& fun, const LamCtx& wit, Derivation& arg, bool names) {
    Side s;
    for (const auto& [k, f] : fun) s.fun_target[k] = wit.count(k) ? f : whole.at(k);
    for (const auto& [k, f] : wit) {
      if (!fun.count(k)) {
        s.arg_ctx[k] = whole.at(k);
        continue;
      }
      std::string k2 = fresh(k);
      arg = names ? d_rename_name(arg, k, k2) : d_rename_var(arg, k, k2);
      s.arg_ctx[k2] = f;
      s.shared.emplace_back(k, k2);
    }
    for (const auto& [k, _] : whole)
      if (!fun.count(k) && !wit.count(k)) s.weakened.push_back(k);
    return s;
  }

  Derivation app(const Derivation& d) {
    const Judgment& j = d.conclusion;
    Derivation fun = run(d.premises[0]);
    Derivation arg = run(d.premises[1]);
    const Judgment& t = d.premises[0].conclusion;
    Side lam = split(j.lam_ctx, t.lam_ctx, d.upsilon, arg, false);
    Side mu = split(j.mu_ctx, t.mu_ctx, d.pi, arg, true);
    Judgment ft = t;
    ft.lam_ctx = lam.fun_target;
    ft.mu_ctx = mu.fun_target;
    Derivation out = mk_app(d_subtype(fun, ft), arg, d.polys.at("h"), j.type, lam.arg_ctx, mu.arg_ctx);
    for (const auto& [k, k2] : lam.shared) out = mk_contr_lam(k, k2, k, j.lam_ctx.at(k), out);
    for (const auto& [k, k2] : mu.shared) out = mk_contr_mu(k, k2, k, j.mu_ctx.at(k), out);
    for (const auto& k : lam.weakened) out = mk_weak_lam(k, j.lam_ctx.at(k), out);
    for (const auto& k : mu.weakened) out = mk_weak_mu(k, j.mu_ctx.at(k), out);
    return out;
  }
};

}  // namespace

Derivation add_to_mult(const Derivation& d) {
  CheckReport r = check_additive(d);
  if (!r.ok) throw Error("additive check failed: " + r.str());
  NameSet used;
  collect_ids(d, used);
  return Elaborator(std::move(used)).run(d);
}

}  // namespace bllp
