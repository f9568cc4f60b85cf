#include "bllp/lammu.hpp"

#include <map>
#include <sstream>

namespace bllp {

struct Term::Node {
  TermKind kind;
  std::string id;
  Term a, b;
};

Term Term::var(const LamVarId& x) {
  return Term(std::make_shared<const Node>(Node{TermKind::Var, x, Term(nullptr), Term(nullptr)}));
}

Term Term::lam(const LamVarId& x, const Term& body) {
  return Term(std::make_shared<const Node>(Node{TermKind::Lam, x, body, Term(nullptr)}));
}

Term Term::mu(const MuVarId& a, const Term& body) {
  return Term(std::make_shared<const Node>(Node{TermKind::Mu, a, body, Term(nullptr)}));
}

Term Term::name(const MuVarId& a, const Term& body) {
  return Term(std::make_shared<const Node>(Node{TermKind::Name, a, body, Term(nullptr)}));
}

Term Term::app(const Term& f, const Term& a) {
  return Term(std::make_shared<const Node>(Node{TermKind::App, "", f, a}));
}

Term Term::apps(const Term& f, const std::vector<Term>& args) {
  Term t = f;
  for (const auto& a : args) t = app(t, a);
  return t;
}

TermKind Term::kind() const { return node_->kind; }
const std::string& Term::id() const { return node_->id; }

const Term& Term::body() const {
  if (kind() == TermKind::Var || kind() == TermKind::App) throw Error("term has no body");
  return node_->a;
}

const Term& Term::fun() const {
  if (kind() != TermKind::App) throw Error("term is not an application");
  return node_->a;
}

const Term& Term::arg() const {
  if (kind() != TermKind::App) throw Error("term is not an application");
  return node_->b;
}

const Term& Term::child(int i) const {
  if (kind() == TermKind::App) return i == 0 ? fun() : arg();
  if (i != 0) throw Error("bad child index");
  return body();
}

NameSet Term::free_vars() const {
  switch (kind()) {
    case TermKind::Var:
      return {id()};
    case TermKind::Lam: {
      NameSet s = body().free_vars();
      s.erase(id());
      return s;
    }
    case TermKind::Mu:
    case TermKind::Name:
      return body().free_vars();
    case TermKind::App: {
      NameSet s = fun().free_vars();
      s.merge(arg().free_vars());
      return s;
    }
  }
  return {};
}

NameSet Term::free_names() const {
  switch (kind()) {
    case TermKind::Var:
      return {};
    case TermKind::Lam:
      return body().free_names();
    case TermKind::Mu: {
      NameSet s = body().free_names();
      s.erase(id());
      return s;
    }
    case TermKind::Name: {
      NameSet s = body().free_names();
      s.insert(id());
      return s;
    }
    case TermKind::App: {
      NameSet s = fun().free_names();
      s.merge(arg().free_names());
      return s;
    }
  }
  return {};
}

NameSet Term::all_ids() const {
  NameSet s;
  if (kind() != TermKind::App) s.insert(id());
  if (kind() == TermKind::App) {
    s.merge(fun().all_ids());
    s.merge(arg().all_ids());
  } else if (kind() != TermKind::Var) {
    s.merge(body().all_ids());
  }
  return s;
}

std::size_t Term::size() const {
  switch (kind()) {
    case TermKind::Var:
      return 1;
    case TermKind::App:
      return 1 + fun().size() + arg().size();
    default:
      return 1 + body().size();
  }
}

namespace {

// Contexts: 0 anywhere, 1 function position, 2 argument position.
void print(std::ostream& out, const Term& t, int ctx) {
  switch (t.kind()) {
    case TermKind::Var:
      out << t.id();
      return;
    case TermKind::App: {
      bool parens = ctx == 2;
      if (parens) out << "(";
      print(out, t.fun(), 1);
      out << " ";
      print(out, t.arg(), 2);
      if (parens) out << ")";
      return;
    }
    default: {
      bool parens = ctx != 0;
      if (parens) out << "(";
      if (t.kind() == TermKind::Lam) out << "\\" << t.id() << ". ";
      if (t.kind() == TermKind::Mu) out << "mu " << t.id() << ". ";
      if (t.kind() == TermKind::Name) out << "[" << t.id() << "] ";
      print(out, t.body(), 0);
      if (parens) out << ")";
    }
  }
}

Term canon(const Term& t, std::map<std::string, std::string>& vars, std::map<std::string, std::string>& names,
           unsigned depth) {
  switch (t.kind()) {
    case TermKind::Var: {
      auto it = vars.find(t.id());
      return it == vars.end() ? t : Term::var(it->second);
    }
    case TermKind::App:
      return Term::app(canon(t.fun(), vars, names, depth), canon(t.arg(), vars, names, depth));
    case TermKind::Name: {
      auto it = names.find(t.id());
      return Term::name(it == names.end() ? t.id() : it->second, canon(t.body(), vars, names, depth));
    }
    case TermKind::Lam:
    case TermKind::Mu: {
      auto& env = t.kind() == TermKind::Lam ? vars : names;
      std::string c = "%" + std::to_string(depth);
      auto saved = env.find(t.id());
      std::optional<std::string> old;
      if (saved != env.end()) old = saved->second;
      env[t.id()] = c;
      Term body = canon(t.body(), vars, names, depth + 1);
      if (old)
        env[t.id()] = *old;
      else
        env.erase(t.id());
      return t.kind() == TermKind::Lam ? Term::lam(c, body) : Term::mu(c, body);
    }
  }
  return t;
}

}  // namespace

std::string Term::str() const {
  std::ostringstream out;
  print(out, *this, 0);
  return out.str();
}

bool Term::same(const Term& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case TermKind::Var:
      return id() == other.id();
    case TermKind::App:
      return fun().same(other.fun()) && arg().same(other.arg());
    default:
      return id() == other.id() && body().same(other.body());
  }
}

bool alpha_equal(const Term& a, const Term& b) {
  std::map<std::string, std::string> va, na, vb, nb;
  return canon(a, va, na, 0).same(canon(b, vb, nb, 0));
}

std::string fresh_id(const std::string& hint, const NameSet& avoid) {
  std::string base = hint.empty() ? "v" : hint;
  std::string c = base;
  while (avoid.count(c)) c += "'";
  return c;
}

Term rename_var(const Term& t, const LamVarId& x, const LamVarId& y) {
  if (x == y) return t;
  return subst(t, x, Term::var(y));
}

Term rename_name(const Term& t, const MuVarId& a, const MuVarId& b) {
  if (a == b) return t;
  switch (t.kind()) {
    case TermKind::Var:
      return t;
    case TermKind::App:
      return Term::app(rename_name(t.fun(), a, b), rename_name(t.arg(), a, b));
    case TermKind::Lam:
      return Term::lam(t.id(), rename_name(t.body(), a, b));
    case TermKind::Name:
      return Term::name(t.id() == a ? b : t.id(), rename_name(t.body(), a, b));
    case TermKind::Mu: {
      if (t.id() == a) return t;
      if (t.id() == b && t.body().free_names().count(a)) {
        NameSet avoid = t.body().all_ids();
        avoid.insert(b);
        std::string c = fresh_id(t.id(), avoid);
        return Term::mu(c, rename_name(rename_name(t.body(), t.id(), c), a, b));
      }
      return Term::mu(t.id(), rename_name(t.body(), a, b));
    }
  }
  return t;
}

Term subst(const Term& t, const LamVarId& x, const Term& u) {
  switch (t.kind()) {
    case TermKind::Var:
      return t.id() == x ? u : t;
    case TermKind::App:
      return Term::app(subst(t.fun(), x, u), subst(t.arg(), x, u));
    case TermKind::Name:
      return Term::name(t.id(), subst(t.body(), x, u));
    case TermKind::Lam: {
      if (t.id() == x || !t.body().free_vars().count(x)) return t;
      NameSet ufv = u.free_vars();
      if (ufv.count(t.id())) {
        NameSet avoid = t.body().all_ids();
        avoid.merge(ufv);
        avoid.insert(x);
        std::string y = fresh_id(t.id(), avoid);
        return Term::lam(y, subst(subst(t.body(), t.id(), Term::var(y)), x, u));
      }
      return Term::lam(t.id(), subst(t.body(), x, u));
    }
    case TermKind::Mu: {
      if (!t.body().free_vars().count(x)) return t;
      NameSet ufn = u.free_names();
      if (ufn.count(t.id())) {
        NameSet avoid = t.body().all_ids();
        avoid.merge(ufn);
        std::string c = fresh_id(t.id(), avoid);
        return Term::mu(c, subst(rename_name(t.body(), t.id(), c), x, u));
      }
      return Term::mu(t.id(), subst(t.body(), x, u));
    }
  }
  return t;
}

Term mu_subst(const Term& t, const MuVarId& a, const Term& u) {
  switch (t.kind()) {
    case TermKind::Var:
      return t;
    case TermKind::App:
      return Term::app(mu_subst(t.fun(), a, u), mu_subst(t.arg(), a, u));
    case TermKind::Name: {
      Term inner = mu_subst(t.body(), a, u);
      return Term::name(t.id(), t.id() == a ? Term::app(inner, u) : inner);
    }
    case TermKind::Lam: {
      if (!t.body().free_names().count(a)) return t;
      NameSet ufv = u.free_vars();
      if (ufv.count(t.id())) {
        NameSet avoid = t.body().all_ids();
        avoid.merge(ufv);
        std::string y = fresh_id(t.id(), avoid);
        return Term::lam(y, mu_subst(rename_var(t.body(), t.id(), y), a, u));
      }
      return Term::lam(t.id(), mu_subst(t.body(), a, u));
    }
    case TermKind::Mu: {
      if (t.id() == a || !t.body().free_names().count(a)) return t;
      NameSet ufn = u.free_names();
      if (ufn.count(t.id())) {
        NameSet avoid = t.body().all_ids();
        avoid.merge(ufn);
        avoid.insert(a);
        std::string c = fresh_id(t.id(), avoid);
        return Term::mu(c, mu_subst(rename_name(t.body(), t.id(), c), a, u));
      }
      return Term::mu(t.id(), mu_subst(t.body(), a, u));
    }
  }
  return t;
}

std::string to_string(Redex r) {
  switch (r) {
    case Redex::Beta:
      return "beta";
    case Redex::Mu:
      return "mu";
    default:
      return "theta";
  }
}

std::string path_str(const Path& p) {
  std::string s = "/";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += "/";
    s += std::to_string(p[i]);
  }
  return s;
}

const Term& subterm(const Term& t, const Path& p) {
  const Term* cur = &t;
  for (int i : p) cur = &cur->child(i);
  return *cur;
}

std::optional<Redex> root_redex(const Term& t) {
  if (t.kind() == TermKind::App) {
    if (t.fun().kind() == TermKind::Lam) return Redex::Beta;
    if (t.fun().kind() == TermKind::Mu) return Redex::Mu;
  }
  if (t.kind() == TermKind::Mu && t.body().kind() == TermKind::Name && t.body().id() == t.id() &&
      !t.body().body().free_names().count(t.id()))
    return Redex::Theta;
  return std::nullopt;
}

Term contract(const Term& t) {
  auto r = root_redex(t);
  if (!r) throw Error("no redex at the root of " + t.str());
  switch (*r) {
    case Redex::Beta:
      return subst(t.fun().body(), t.fun().id(), t.arg());
    case Redex::Mu: {
      const Term& m = t.fun();
      const Term& u = t.arg();
      MuVarId a = m.id();
      Term body = m.body();
      NameSet ufn = u.free_names();
      if (ufn.count(a)) {
        NameSet avoid = body.all_ids();
        avoid.merge(ufn);
        MuVarId c = fresh_id(a, avoid);
        body = rename_name(body, a, c);
        a = c;
      }
      return Term::mu(a, mu_subst(body, a, u));
    }
    case Redex::Theta:
      return t.body().body();
  }
  return t;
}

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::Weak:
      return "weak";
    case Strategy::Head:
      return "head";
    default:
      return "machine";
  }
}

Strategy parse_strategy(const std::string& s) {
  if (s == "weak") return Strategy::Weak;
  if (s == "head") return Strategy::Head;
  if (s == "machine") return Strategy::Machine;
  throw Error("unknown strategy: " + s);
}

namespace {

Term replace_child(const Term& t, int i, const Term& c) {
  switch (t.kind()) {
    case TermKind::App:
      return i == 0 ? Term::app(c, t.arg()) : Term::app(t.fun(), c);
    case TermKind::Lam:
      return Term::lam(t.id(), c);
    case TermKind::Mu:
      return Term::mu(t.id(), c);
    case TermKind::Name:
      return Term::name(t.id(), c);
    default:
      throw Error("variable has no children");
  }
}

std::optional<StepInfo> descend(const Term& t, int i, Strategy s) {
  auto inner = find_step(t.child(i), s);
  if (!inner) return std::nullopt;
  inner->result = replace_child(t, i, inner->result);
  inner->path.insert(inner->path.begin(), i);
  return inner;
}

}  // namespace

std::optional<StepInfo> find_step(const Term& t, Strategy s) {
  if (auto r = root_redex(t)) return StepInfo{contract(t), *r, {}};
  switch (t.kind()) {
    case TermKind::App:
      return descend(t, 0, s == Strategy::Head ? Strategy::Weak : s);
    case TermKind::Name:
      return descend(t, 0, s == Strategy::Head ? Strategy::Weak : s);
    case TermKind::Lam:
      if (s == Strategy::Head) return descend(t, 0, s);
      return std::nullopt;
    case TermKind::Mu:
      if (s == Strategy::Head || s == Strategy::Machine) return descend(t, 0, s);
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

std::optional<Term> step_head(const Term& t) {
  auto s = find_step(t, Strategy::Head);
  return s ? std::optional<Term>(s->result) : std::nullopt;
}

std::optional<Term> step_weak(const Term& t) {
  auto s = find_step(t, Strategy::Weak);
  return s ? std::optional<Term>(s->result) : std::nullopt;
}

std::optional<Term> step_machine(const Term& t) {
  auto s = find_step(t, Strategy::Machine);
  return s ? std::optional<Term>(s->result) : std::nullopt;
}

ReduceResult reduce(const Term& t, Strategy s, std::size_t fuel, bool keep_trace) {
  ReduceResult r{t, 0, false, {}};
  while (true) {
    auto step = find_step(r.term, s);
    if (!step) return r;
    if (r.steps == fuel) {
      r.exhausted = true;
      return r;
    }
    r.term = step->result;
    ++r.steps;
    if (keep_trace) r.trace.push_back(std::move(*step));
  }
}

}  // namespace bllp
