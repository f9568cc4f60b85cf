#include "bllp/corpus.hpp"

#include <algorithm>

#include "bllp/syntax.hpp"

namespace bllp {

namespace {

const Formula kX = Formula::neg_atom("X");
const Formula kY = Formula::neg_atom("Y");
const Formula kBot = Formula::bottom();

Formula arr(const Formula& n, const ResourcePoly& p, const Formula& m, const VarId& x = "_") {
  return Formula::arrow(n, x, p, m);
}

// <?{z<s} ~n>[1], the hypothesis for a variable of type <n>[s].
LabelledFormula hyp(const Formula& n, const ResourcePoly& s, const VarId& z = "_") {
  return labelled(Formula::whynot(z, s, negate(n)), 1);
}

Derivation var(const LamVarId& x, const Formula& n, const LamCtx& extra = {}, const MuCtx& mu = {}) {
  LamCtx ctx = extra;
  ctx[x] = hyp(n, 1);
  return add_var(ctx, x, labelled(n, 1), mu);
}

Formula aleph_arg(const Formula& x) { return arr(arr(x, 1, kBot), 1, kBot); }

// The answer type ~T1 -> ... -> ~Tn -> ~Z of aleph applied to n arguments.
Formula answer(unsigned n, unsigned i = 1) {
  if (i > n) return Formula::neg_atom("Z");
  return arr(Formula::neg_atom("T" + std::to_string(i)), 1, answer(n, i + 1));
}

Derivation identity_app() {
  Derivation y = var("y", kX);
  return add_app(identity_derivation(), y, 1, labelled(kX, 1), y.conclusion.lam_ctx, {}, y.conclusion.lam_ctx, {});
}

Derivation kappa_app() {
  Formula xy = arr(kX, 1, kY);
  Derivation body = var("y", kX, {{"k", hyp(xy, 1)}});
  Derivation arg = mk_abs("k", body, labelled(arr(xy, 1, kX), 1));
  LamCtx y{{"y", labelled(hyp(kX, 1).formula, 2)}};
  return add_app(kappa_derivation(2), arg, 2, labelled(kX, 2), y, {}, y, {});
}

Derivation aleph_app(unsigned n) {
  Formula x = answer(n);
  Formula b = aleph_arg(x);
  LamCtx ctx{{"w", hyp(b, 1, "v")}};
  Derivation w = add_var(ctx, "w", labelled(b, "v", 1));
  Derivation d = add_app(aleph_derivation(x), w, 1, labelled(x, 1), ctx, {}, ctx, {});
  Formula rest = x;
  for (unsigned i = 1; i <= n; ++i) {
    std::string t = "t" + std::to_string(i);
    Derivation ti = var(t, Formula::neg_atom("T" + std::to_string(i)));
    rest = rest.right();
    ctx[t] = hyp(Formula::neg_atom("T" + std::to_string(i)), 1);
    d = add_app(d, ti, 1, labelled(rest, 1), ctx, {}, ti.conclusion.lam_ctx, {});
  }
  return d;
}

// (2)(\z.z)y: the numeral's f is used twice.
Derivation church_app() {
  Formula xx = arr(kX, 1, kX);
  Derivation z = var("z", kX);
  Derivation id = mk_abs("z", z, labelled(xx, 1));
  Derivation d = add_app(church_derivation(2), id, 2, labelled(xx, 2), {}, {}, {}, {});
  Derivation y = var("y", kX);
  LamCtx ctx{{"y", labelled(hyp(kX, 1).formula, 2)}};
  return add_app(d, y, 2, labelled(kX, 2), ctx, {}, ctx, {});
}

CorpusEntry entry(const std::string& name, const std::string& term, std::optional<Derivation> d,
                  std::map<Strategy, std::pair<std::string, std::size_t>> expected) {
  CorpusEntry e{name, parse_term(term), std::move(d), {}};
  for (const auto& [s, v] : expected) e.expected.emplace(s, Expectation{parse_term(v.first), v.second});
  return e;
}

std::vector<CorpusEntry> build() {
  const std::string kappa = "(\\x. mu a. [a] x (\\y. mu b. [a] y))";
  const std::string aleph = "(\\f. mu a. f (\\x. [a] x))";
  std::vector<CorpusEntry> out;
  out.push_back(entry("identity", "\\x. x", identity_derivation(), {{Strategy::Head, {"\\x. x", 0}}}));
  out.push_back(entry("identity_app", "(\\x. x) y", identity_app(), {{Strategy::Head, {"y", 1}}}));
  out.push_back(entry("kappa", kappa, kappa_derivation(2), {{Strategy::Head, {kappa, 0}}}));
  out.push_back(entry("kappa_app", kappa + " (\\k. y)", kappa_app(),
                      {{Strategy::Head, {"y", 3}},
                       {Strategy::Weak, {"mu a. [a] (\\k. y) (\\y. mu b. [a] y)", 1}}}));
  out.push_back(entry("aleph", aleph, aleph_derivation(kX), {{Strategy::Head, {aleph, 0}}}));
  for (unsigned n = 0; n <= 3; ++n) {
    std::string args, nf = "mu a. w (\\x. [a] x";
    for (unsigned i = 1; i <= n; ++i) {
      args += " t" + std::to_string(i);
      nf += " t" + std::to_string(i);
    }
    out.push_back(entry("aleph_app" + std::to_string(n), aleph + " w" + args, aleph_app(n),
                        {{Strategy::Head, {nf + ")", 1 + n}}}));
  }
  for (unsigned n = 0; n <= 3; ++n) {
    std::string body = "x";
    for (unsigned i = 0; i < n; ++i) body = "f (" + body + ")";
    std::string t = "\\f. \\x. " + body;
    out.push_back(entry("church" + std::to_string(n), t, church_derivation(n), {{Strategy::Head, {t, 0}}}));
  }
  out.push_back(entry("church2_app", "(\\f. \\x. f (f x)) (\\z. z) y", church_app(), {{Strategy::Head, {"y", 4}}}));
  std::sort(out.begin(), out.end(), [](const CorpusEntry& a, const CorpusEntry& b) { return a.name < b.name; });
  return out;
}

}  // namespace

Derivation kappa_derivation(const ResourcePoly& k) {
  Formula xy = arr(kX, 1, kY);
  Formula a = arr(xy, 1, kX);
  Derivation y = var("y", kX, {}, {{"a", labelled(kX, 0)}, {"b", labelled(kY, 0)}});
  Derivation named = add_mu_name("a", y, labelled(kBot, 0), labelled(kX, 1));
  Derivation lam_y = mk_abs("y", mk_mu_abs("b", named), labelled(xy, 1));
  LamCtx ctx{{"x", hyp(a, 1, "v")}};
  Derivation x = add_var(ctx, "x", labelled(a, "v", 1), {{"a", labelled(kX, 0)}});
  MuCtx alpha{{"a", labelled(kX, 1)}};
  Derivation app = add_app(x, lam_y, 1, labelled(kX, "v", 1), ctx, alpha, {}, alpha);
  Derivation outer = add_mu_name("a", app, labelled(kBot, 1), labelled(kX, k));
  return mk_abs("x", mk_mu_abs("a", outer), labelled(arr(a, 1, kX, "v"), k));
}

Derivation aleph_derivation(const Formula& x) {
  Formula neg = arr(x, 1, kBot);
  Formula b = aleph_arg(x);
  Derivation named = add_mu_name("a", var("x", x), labelled(kBot, 0), labelled(x, 1));
  Derivation lam_x = mk_abs("x", named, labelled(neg, 1));
  LamCtx ctx{{"f", hyp(b, 1, "v")}};
  Derivation f = add_var(ctx, "f", labelled(b, "v", 1), {{"a", labelled(x, 0)}});
  MuCtx alpha{{"a", labelled(x, 1)}};
  Derivation app = add_app(f, lam_x, 1, labelled(kBot, "v", 1), ctx, alpha, {}, alpha);
  return mk_abs("f", mk_mu_abs("a", app), labelled(arr(b, 1, x, "v"), 1));
}

Derivation identity_derivation() { return mk_abs("x", var("x", kX), labelled(arr(kX, 1, kX), 1)); }

Derivation church_derivation(unsigned n) {
  Formula xx = arr(kX, 1, kX);
  LamCtx fx{{"f", hyp(xx, 1)}};
  Derivation body = n == 0 ? var("x", kX, fx) : var("x", kX);
  for (unsigned i = 1; i <= n; ++i) {
    Derivation f = add_var(fx, "f", labelled(xx, 1));
    LamCtx ctx{{"f", labelled(hyp(xx, 1).formula, i)}, {"x", hyp(kX, 1)}};
    body = add_app(f, body, 1, labelled(kX, 1), ctx, {}, body.conclusion.lam_ctx, {});
  }
  Derivation lam_x = mk_abs("x", body, labelled(xx, 1));
  return mk_abs("f", lam_x, labelled(arr(xx, 1, xx), std::max(n, 1u)));
}

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = build();
  return entries;
}

const CorpusEntry& corpus_entry(const std::string& name) {
  for (const auto& e : corpus())
    if (e.name == name) return e;
  throw Error("no corpus entry " + name);
}

}  // namespace bllp
