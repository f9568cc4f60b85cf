#include <optional>

#include "bllp/typing.hpp"

namespace bllp {

std::string Judgment::str() const {
  std::string out;
  bool first = true;
  for (const auto& [x, a] : lam_ctx) {
    if (!first) out += ", ";
    first = false;
    out += x + " : " + a.str();
  }
  out += (lam_ctx.empty() ? "|- " : " |- ") + subject.str() + " : " + type.str() + " |";
  first = true;
  for (const auto& [a, f] : mu_ctx) {
    out += (first ? " " : ", ") + a + " : " + f.str();
    first = false;
  }
  return out;
}

namespace {

const std::pair<TypingRule, const char*> kRuleNames[] = {
    {TypingRule::Var, "var"},        {TypingRule::Abs, "abs"},         {TypingRule::App, "app"},
    {TypingRule::MuName, "mu-name"}, {TypingRule::MuAbs, "mu-abs"},    {TypingRule::WeakLam, "w_lam"},
    {TypingRule::ContrLam, "c_lam"}, {TypingRule::WeakMu, "w_mu"},     {TypingRule::ContrMu, "c_mu"},
    {TypingRule::VarM, "var_m"},     {TypingRule::AppM, "app_m"},
};

}  // namespace

std::string to_string(TypingRule r) {
  for (const auto& [rule, name] : kRuleNames)
    if (rule == r) return name;
  return "?";
}

TypingRule parse_typing_rule(const std::string& s) {
  for (const auto& [rule, name] : kRuleNames)
    if (s == name) return rule;
  throw Error("unknown typing rule: " + s);
}

std::size_t Derivation::size() const {
  std::size_t n = 1;
  for (const auto& p : premises) n += p.size();
  return n;
}

std::string CheckReport::str() const {
  if (ok) return "ok";
  return "node " + path_str(path) + " (" + rule + "): " + message;
}

LabelledFormula with_binder(const LabelledFormula& a, const VarId& x) {
  if (a.binder == x) return a;
  return LabelledFormula{rebind(a, x), x, a.label};
}

bool ctx_equal(const LamCtx& a, const LamCtx& b) {
  if (a.size() != b.size()) return false;
  for (const auto& [k, f] : a) {
    auto it = b.find(k);
    if (it == b.end() || !lf_equal(f, it->second)) return false;
  }
  return true;
}

bool ctx_leq(const LamCtx& a, const LamCtx& b, bool exact) {
  if (exact && a.size() != b.size()) return false;
  for (const auto& [k, f] : b) {
    auto it = a.find(k);
    if (it == a.end() || !lf_leq(it->second, f)) return false;
  }
  return true;
}

LamCtx ctx_union(const LamCtx& a, const LamCtx& b) {
  LamCtx out = a;
  for (const auto& [k, f] : b) {
    auto it = out.find(k);
    if (it == out.end())
      out.emplace(k, f);
    else
      it->second = lf_sum(it->second, f);
  }
  return out;
}

LamCtx ctx_sum(const LamCtx& c, const VarId& b, const ResourcePoly& h) {
  LamCtx out;
  for (const auto& [k, f] : c) {
    LabelledFormula g = f;
    if (g.binder == b) {
      VarSet avoid = f.free_vars();
      avoid.insert(b);
      for (const auto& v : h.free_vars()) avoid.insert(v);
      g = with_binder(f, fresh_name(b, avoid));
    }
    out.emplace(k, lf_bounded_sum(g, b, h));
  }
  return out;
}

namespace {

struct Failure {
  std::string message;
};

[[noreturn]] void fail(const std::string& m) { throw Failure{m}; }

void require(bool cond, const std::string& m) {
  if (!cond) fail(m);
}

LamCtx without(LamCtx c, const std::string& k) {
  c.erase(k);
  return c;
}

bool has(const LamCtx& c, const std::string& k) { return c.count(k) > 0; }

class Checker {
 public:
  explicit Checker(bool mult) : mult_(mult) {}

  CheckReport run(const Derivation& d) {
    CheckReport r;
    visit(d, r);
    return r;
  }

 private:
  bool mult_;
  Path path_;

  bool visit(const Derivation& d, CheckReport& r) {
    for (std::size_t i = 0; i < d.premises.size(); ++i) {
      path_.push_back(static_cast<int>(i));
      bool ok = visit(d.premises[i], r);
      path_.pop_back();
      if (!ok) return false;
    }
    try {
      node(d);
    } catch (const Failure& f) {
      r = CheckReport{false, path_, to_string(d.rule), f.message};
      return false;
    } catch (const Error& e) {
      r = CheckReport{false, path_, to_string(d.rule), e.what()};
      return false;
    }
    return true;
  }

  void arity(const Derivation& d, std::size_t n) {
    require(d.premises.size() == n, "expected " + std::to_string(n) + " premises");
  }

  static void classes(const Judgment& j) {
    for (const auto& [x, a] : j.lam_ctx)
      require(classify(a.formula) == FormulaClass::Modal, "context entry " + x + " is not modal");
    require(classify(j.type.formula) == FormulaClass::Typing, "type is not a typing formula");
    for (const auto& [a, f] : j.mu_ctx)
      require(classify(f.formula) == FormulaClass::Typing, "name " + a + " is not given a typing formula");
  }

  static void same_subject(const Term& got, const Term& want) {
    require(alpha_equal(got, want), "subject mismatch: " + got.str() + " vs " + want.str());
  }

  void node(const Derivation& d) {
    const Judgment& j = d.conclusion;
    classes(j);
    switch (d.rule) {
      case TypingRule::Var:
      case TypingRule::VarM:
        require(mult_ || d.rule == TypingRule::Var, "var_m is not an additive rule");
        return var(d, mult_);
      case TypingRule::Abs:
        return abs(d);
      case TypingRule::App:
      case TypingRule::AppM:
        require(mult_ || d.rule == TypingRule::App, "app_m is not an additive rule");
        return mult_ ? app_mult(d) : app_add(d);
      case TypingRule::MuName:
        return mu_name(d);
      case TypingRule::MuAbs:
        return mu_abs(d);
      default:
        require(mult_, to_string(d.rule) + " is not an additive rule");
        return structural(d);
    }
  }

  void var(const Derivation& d, bool mult) {
    arity(d, 0);
    const Judgment& j = d.conclusion;
    require(j.subject.kind() == TermKind::Var, "subject is not a variable");
    auto it = j.lam_ctx.find(j.subject.id());
    require(it != j.lam_ctx.end(), "variable " + j.subject.id() + " not in context");
    if (mult) require(j.lam_ctx.size() == 1 && j.mu_ctx.empty(), "multiplicative var has non-empty extra context");
    const LabelledFormula& e = it->second;
    const Formula& why = e.formula;
    const VarId& z = why.binder();
    Formula n = negate(why.body());
    Formula m = rebind(j.type, z);
    require(poly_leq(1, e.label), "1 ⊑ p fails");
    require(poly_leq(compose(why.bound(), e.binder, 0), j.type.label), "r{y:=0} ⊑ q fails");
    require(formula_leq(m, subst_poly(n, e.binder, 0)), "M ⊑ N{y:=0} fails");
  }

  void abs(const Derivation& d) {
    arity(d, 1);
    const Judgment& j = d.conclusion;
    const Judgment& p = d.premises[0].conclusion;
    require(j.subject.kind() == TermKind::Lam, "subject is not an abstraction");
    const LamVarId& x = j.subject.id();
    same_subject(p.subject, j.subject.body());
    require(has(p.lam_ctx, x), "bound variable " + x + " missing from premise context");
    require(!has(j.lam_ctx, x), "bound variable " + x + " still in context");
    require(ctx_equal(without(p.lam_ctx, x), j.lam_ctx), "lambda context not transferred");
    require(ctx_equal(p.mu_ctx, j.mu_ctx), "mu context not transferred");
    const LabelledFormula& e = p.lam_ctx.at(x);
    VarSet avoid = j.type.free_vars();
    for (const auto& v : e.free_vars()) avoid.insert(v);
    for (const auto& v : p.type.free_vars()) avoid.insert(v);
    VarId c = fresh_name("%a", avoid);
    Formula want = Formula::par(rebind(e, c), rebind(p.type, c));
    require(alpha_equal(rebind(j.type, c), want), "type is not the arrow of the premise");
    require(poly_leq(p.type.label, j.type.label), "r ⊒ q fails");
    require(poly_leq(e.label, j.type.label), "r ⊒ p fails");
  }

  struct AppParts {
    VarId b;
    ResourcePoly h;
  };

  AppParts app_common(const Derivation& d) {
    arity(d, 2);
    const Judgment& j = d.conclusion;
    const Judgment& pt = d.premises[0].conclusion;
    const Judgment& pu = d.premises[1].conclusion;
    require(j.subject.kind() == TermKind::App, "subject is not an application");
    same_subject(pt.subject, j.subject.fun());
    same_subject(pu.subject, j.subject.arg());
    const Formula& ft = pt.type.formula;
    require(ft.kind() == FormulaKind::Par && ft.left().kind() == FormulaKind::WhyNot,
            "function type is not an arrow");
    const Formula& why = ft.left();
    require(pu.type.label == why.bound(), "argument label differs from the arrow bound");
    require(alpha_equal(rebind(pu.type, why.binder()), negate(why.body())), "argument type mismatch");
    require(alpha_equal(rebind(j.type, pt.type.binder), ft.right()), "result type mismatch");
    auto h = d.polys.find("h");
    require(h != d.polys.end(), "witness h missing");
    require(poly_leq(pt.type.label, h->second), "h ⊒ q fails");
    require(poly_leq(pt.type.label, j.type.label), "k ⊒ q fails");
    return {pt.type.binder, h->second};
  }

  void app_add(const Derivation& d) {
    AppParts a = app_common(d);
    const Judgment& j = d.conclusion;
    const Judgment& pt = d.premises[0].conclusion;
    const Judgment& pu = d.premises[1].conclusion;
    require(d.upsilon.size() == pu.lam_ctx.size(), "witness Upsilon does not cover the argument context");
    require(d.pi.size() == pu.mu_ctx.size(), "witness Pi does not cover the argument names");
    require(ctx_leq(d.upsilon, ctx_sum(pu.lam_ctx, a.b, a.h), true), "Upsilon ⊑ sum Xi fails");
    require(ctx_leq(j.lam_ctx, ctx_union(pt.lam_ctx, d.upsilon)), "Gamma ⊑ Theta ⊎ Upsilon fails");
    require(ctx_leq(d.pi, ctx_sum(pu.mu_ctx, a.b, a.h), true), "Pi ⊑ sum Phi fails");
    require(ctx_leq(j.mu_ctx, ctx_union(pt.mu_ctx, d.pi)), "Delta ⊑ Psi ⊎ Pi fails");
  }

  static void split_ctx(const LamCtx& whole, const LamCtx& left, const LamCtx& right, const VarId& b,
                        const ResourcePoly& h, const std::string& what) {
    for (const auto& [k, _] : left) require(!has(right, k), what + " contexts share " + k);
    require(whole.size() == left.size() + right.size(), what + " context is not the union of the premises");
    for (const auto& [k, f] : left) {
      auto it = whole.find(k);
      require(it != whole.end() && lf_equal(it->second, f), what + " entry " + k + " not transferred");
    }
    LamCtx summed = ctx_sum(right, b, h);
    for (const auto& [k, f] : summed) {
      auto it = whole.find(k);
      require(it != whole.end() && lf_leq(it->second, f), what + " entry " + k + " not below its sum");
    }
  }

  void app_mult(const Derivation& d) {
    AppParts a = app_common(d);
    const Judgment& j = d.conclusion;
    const Judgment& pt = d.premises[0].conclusion;
    const Judgment& pu = d.premises[1].conclusion;
    split_ctx(j.lam_ctx, pt.lam_ctx, pu.lam_ctx, a.b, a.h, "lambda");
    split_ctx(j.mu_ctx, pt.mu_ctx, pu.mu_ctx, a.b, a.h, "mu");
  }

  void mu_name(const Derivation& d) {
    arity(d, 1);
    const Judgment& j = d.conclusion;
    const Judgment& p = d.premises[0].conclusion;
    require(j.subject.kind() == TermKind::Name, "subject is not a named term");
    const MuVarId& a = j.subject.id();
    same_subject(p.subject, j.subject.body());
    require(j.type.formula.kind() == FormulaKind::Bottom, "type of a named term is not bot");
    require(ctx_equal(p.lam_ctx, j.lam_ctx), "lambda context not transferred");
    require(has(j.mu_ctx, a), "name " + a + " missing from conclusion");
    require(ctx_equal(without(p.mu_ctx, a), without(j.mu_ctx, a)), "mu context not transferred");
    const LabelledFormula& l = j.mu_ctx.at(a);
    if (mult_) {
      require(!has(p.mu_ctx, a), "name " + a + " already in premise");
      require(lf_equal(l, p.type), "name type differs from premise type");
    } else if (has(p.mu_ctx, a)) {
      require(lf_leq(l, lf_sum(p.type, p.mu_ctx.at(a))), "L ⊑ N ⊎ M fails");
    } else {
      require(lf_leq(l, p.type), "L ⊑ N fails");
    }
  }

  void mu_abs(const Derivation& d) {
    arity(d, 1);
    const Judgment& j = d.conclusion;
    const Judgment& p = d.premises[0].conclusion;
    require(j.subject.kind() == TermKind::Mu, "subject is not a mu abstraction");
    const MuVarId& a = j.subject.id();
    same_subject(p.subject, j.subject.body());
    require(p.type.formula.kind() == FormulaKind::Bottom, "premise type is not bot");
    require(has(p.mu_ctx, a), "bound name " + a + " missing from premise");
    require(!has(j.mu_ctx, a), "bound name " + a + " still in context");
    require(lf_equal(j.type, p.mu_ctx.at(a)), "type differs from the bound name's type");
    require(ctx_equal(without(p.mu_ctx, a), j.mu_ctx), "mu context not transferred");
    require(ctx_equal(p.lam_ctx, j.lam_ctx), "lambda context not transferred");
  }

  void structural(const Derivation& d) {
    arity(d, 1);
    const Judgment& j = d.conclusion;
    const Judgment& p = d.premises[0].conclusion;
    require(lf_equal(j.type, p.type), "type not transferred");
    bool lam = d.rule == TypingRule::WeakLam || d.rule == TypingRule::ContrLam;
    const LamCtx& jc = lam ? j.lam_ctx : j.mu_ctx;
    const LamCtx& pc = lam ? p.lam_ctx : p.mu_ctx;
    require(ctx_equal(lam ? p.mu_ctx : p.lam_ctx, lam ? j.mu_ctx : j.lam_ctx), "untouched context not transferred");
    if (d.rule == TypingRule::WeakLam || d.rule == TypingRule::WeakMu) {
      same_subject(p.subject, j.subject);
      require(jc.size() == pc.size() + 1, "weakening must add exactly one entry");
      for (const auto& [k, f] : jc)
        if (!has(pc, k)) return require(ctx_equal(without(jc, k), pc), "weakening changed other entries");
      fail("weakening must add exactly one entry");
    }
    auto name = [&](const char* key) {
      auto it = d.names.find(key);
      require(it != d.names.end(), std::string("contraction name ") + key + " missing");
      return it->second;
    };
    std::string x = name("x"), y = name("y"), z = name("z");
    require(x != y, "contracted names coincide");
    require(has(pc, x) && has(pc, y), "contracted names missing from premise");
    LamCtx rest = without(without(pc, x), y);
    require(!has(rest, z), "merged name clashes with the context");
    require(has(jc, z) && ctx_equal(without(jc, z), rest), "contraction context mismatch");
    require(lf_leq(jc.at(z), lf_sum(pc.at(x), pc.at(y))), "L ⊑ N ⊎ M fails");
    Term want = lam ? rename_var(rename_var(p.subject, x, z), y, z) : rename_name(rename_name(p.subject, x, z), y, z);
    same_subject(j.subject, want);
  }
};

}  // namespace

CheckReport check_additive(const Derivation& d) { return Checker(false).run(d); }
CheckReport check_mult(const Derivation& d) { return Checker(true).run(d); }

}  // namespace bllp
