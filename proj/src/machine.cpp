#include "bllp/machine.hpp"

#include <map>

namespace bllp {

struct Env::Node {
  std::string key;
  bool is_name;
  std::optional<Closure> closure;
  std::optional<MuBinding> binding;
  std::shared_ptr<const Node> next;
};

Env Env::bind_var(const LamVarId& x, const Closure& c) const {
  return Env(std::make_shared<const Node>(Node{x, false, c, std::nullopt, node_}));
}

Env Env::bind_name(const MuVarId& a, const MuBinding& b) const {
  return Env(std::make_shared<const Node>(Node{a, true, std::nullopt, b, node_}));
}

std::optional<Closure> Env::lookup_var(const LamVarId& x) const {
  for (const Node* n = node_.get(); n; n = n->next.get())
    if (!n->is_name && n->key == x) return n->closure;
  return std::nullopt;
}

std::optional<MuBinding> Env::lookup_name(const MuVarId& a) const {
  for (const Node* n = node_.get(); n; n = n->next.get())
    if (n->is_name && n->key == a) return n->binding;
  return std::nullopt;
}

std::string Env::str() const {
  std::string out = "{";
  NameSet seen;
  bool first = true;
  for (const Node* n = node_.get(); n; n = n->next.get()) {
    std::string tag = (n->is_name ? "@" : "") + n->key;
    if (!seen.insert(tag).second) continue;
    if (!first) out += ", ";
    first = false;
    if (n->is_name)
      out += n->key + ":=" + n->binding->name + n->binding->stack.str();
    else
      out += n->key + ":=" + n->closure->str();
  }
  return out + "}";
}

struct Stack::Node {
  Closure head;
  std::shared_ptr<const Node> tail;
};

Stack Stack::push(const Closure& c) const { return Stack(std::make_shared<const Node>(Node{c, node_})); }

const Closure& Stack::top() const {
  if (!node_) throw Error("top of empty stack");
  return node_->head;
}

Stack Stack::pop() const {
  if (!node_) throw Error("pop of empty stack");
  return Stack(node_->tail);
}

std::size_t Stack::size() const {
  std::size_t n = 0;
  for (const Node* p = node_.get(); p; p = p->tail.get()) ++n;
  return n;
}

std::vector<Closure> Stack::items() const {
  std::vector<Closure> out;
  for (const Node* p = node_.get(); p; p = p->tail.get()) out.push_back(p->head);
  return out;
}

std::string Stack::str() const {
  if (empty()) return "[]";
  std::string out = "[";
  bool first = true;
  for (const auto& c : items()) {
    if (!first) out += "; ";
    first = false;
    out += c.str();
  }
  return out + "]";
}

std::string Closure::str() const { return "(" + term.str() + ", " + env.str() + ")"; }

std::string Config::str() const {
  std::string out = "<" + focus.str() + ", " + stack.str() + ">";
  if (!trail.empty()) {
    out += " under ";
    for (const auto& f : trail) out += (f.is_mu ? "mu " + f.name + ". " : "[" + f.name + "] ");
  }
  return out;
}

std::string to_string(Transition t) {
  switch (t) {
    case Transition::Var:
      return "var";
    case Transition::Lam:
      return "lam";
    case Transition::App:
      return "app";
    case Transition::Mu:
      return "mu";
    default:
      return "name";
  }
}

std::string to_string(MachineStatus s) {
  switch (s) {
    case MachineStatus::Running:
      return "running";
    case MachineStatus::Final:
      return "final";
    default:
      return "stuck";
  }
}

Config load(const Term& t) {
  Config c{Closure{t, Env()}, Stack(), {}, 0, std::make_shared<const NameSet>(t.all_ids())};
  return c;
}

namespace {

MuVarId fresh_frame_name(const Config& c, const MuVarId& a, std::size_t& counter) {
  while (true) {
    MuVarId n = a + "_" + std::to_string(counter++);
    if (!c.reserved || !c.reserved->count(n)) return n;
  }
}

}  // namespace

std::optional<MachineStep> step(const Config& c) {
  const Term& t = c.focus.term;
  const Env& env = c.focus.env;
  switch (t.kind()) {
    case TermKind::Var: {
      auto bound = env.lookup_var(t.id());
      if (!bound) return std::nullopt;
      Config next = c;
      next.focus = *bound;
      return MachineStep{next, Transition::Var};
    }
    case TermKind::Lam: {
      if (c.stack.empty()) return std::nullopt;
      Config next = c;
      next.focus = Closure{t.body(), env.bind_var(t.id(), c.stack.top())};
      next.stack = c.stack.pop();
      return MachineStep{next, Transition::Lam};
    }
    case TermKind::App: {
      Config next = c;
      next.focus = Closure{t.fun(), env};
      next.stack = c.stack.push(Closure{t.arg(), env});
      return MachineStep{next, Transition::App};
    }
    case TermKind::Mu: {
      Config next = c;
      MuVarId n = fresh_frame_name(c, t.id(), next.counter);
      next.focus = Closure{t.body(), env.bind_name(t.id(), MuBinding{n, c.stack})};
      next.stack = Stack();
      next.trail.push_back(Frame{true, n});
      return MachineStep{next, Transition::Mu};
    }
    case TermKind::Name: {
      if (!c.stack.empty()) return std::nullopt;
      Config next = c;
      auto bound = env.lookup_name(t.id());
      MuBinding b = bound ? *bound : MuBinding{t.id(), Stack()};
      next.focus = Closure{t.body(), env};
      next.stack = b.stack;
      next.trail.push_back(Frame{false, b.name});
      return MachineStep{next, Transition::Name};
    }
  }
  return std::nullopt;
}

MachineStatus status(const Config& c) {
  if (step(c)) return MachineStatus::Running;
  if (c.focus.term.kind() == TermKind::Name) return MachineStatus::Stuck;
  return MachineStatus::Final;
}

RunResult run(const Config& c, std::size_t fuel, bool keep_trace) {
  RunResult r{c, 0, false, MachineStatus::Running, {}, {}};
  while (true) {
    auto s = step(r.config);
    if (!s) break;
    if (r.steps == fuel) {
      r.exhausted = true;
      break;
    }
    if (keep_trace) {
      r.dumps.push_back(r.config.str());
      r.rules.push_back(s->rule);
    }
    r.config = std::move(s->next);
    ++r.steps;
  }
  if (keep_trace) r.dumps.push_back(r.config.str());
  r.status = r.exhausted ? MachineStatus::Running : status(r.config);
  return r;
}

namespace {

class Reader {
 public:
  explicit Reader(NameSet reserved) : reserved_(std::move(reserved)) {}

  Term closure(const Closure& c) { return term(c.term, c.env, {}, {}); }

  Term applied(Term head, const Stack& s) {
    for (const auto& c : s.items()) head = Term::app(head, closure(c));
    return head;
  }

 private:
  using Ren = std::map<std::string, std::string>;
  NameSet reserved_;
  std::size_t counter_ = 0;

  std::string fresh(const std::string& base) {
    while (true) {
      std::string n = base + "_r" + std::to_string(counter_++);
      if (!reserved_.count(n)) return n;
    }
  }

  Term term(const Term& t, const Env& env, const Ren& vars, const Ren& names) {
    switch (t.kind()) {
      case TermKind::Var: {
        if (auto it = vars.find(t.id()); it != vars.end()) return Term::var(it->second);
        if (auto c = env.lookup_var(t.id())) return closure(*c);
        return t;
      }
      case TermKind::App:
        return Term::app(term(t.fun(), env, vars, names), term(t.arg(), env, vars, names));
      case TermKind::Lam: {
        Ren inner = vars;
        std::string x = fresh(t.id());
        inner[t.id()] = x;
        return Term::lam(x, term(t.body(), env, inner, names));
      }
      case TermKind::Mu: {
        Ren inner = names;
        std::string a = fresh(t.id());
        inner[t.id()] = a;
        return Term::mu(a, term(t.body(), env, vars, inner));
      }
      case TermKind::Name: {
        Term body = term(t.body(), env, vars, names);
        if (auto it = names.find(t.id()); it != names.end()) return Term::name(it->second, body);
        if (auto b = env.lookup_name(t.id())) return Term::name(b->name, applied(body, b->stack));
        return Term::name(t.id(), body);
      }
    }
    return t;
  }
};

void collect_ids(const Closure& c, NameSet& out, std::size_t depth) {
  if (depth > 10000) throw Error("environment too deep");
  out.merge(c.term.all_ids());
  for (const auto& x : c.term.free_vars())
    if (auto b = c.env.lookup_var(x)) collect_ids(*b, out, depth + 1);
  for (const auto& a : c.term.free_names())
    if (auto b = c.env.lookup_name(a)) {
      out.insert(b->name);
      for (const auto& d : b->stack.items()) collect_ids(d, out, depth + 1);
    }
}

}  // namespace

Term readback(const Closure& c) {
  NameSet ids;
  collect_ids(c, ids, 0);
  return Reader(std::move(ids)).closure(c);
}

Term readback(const Config& c) {
  NameSet ids;
  collect_ids(c.focus, ids, 0);
  for (const auto& d : c.stack.items()) collect_ids(d, ids, 0);
  for (const auto& f : c.trail) ids.insert(f.name);
  Reader reader(std::move(ids));
  Term t = reader.applied(reader.closure(c.focus), c.stack);
  for (auto it = c.trail.rbegin(); it != c.trail.rend(); ++it) {
    if (!it->is_mu) {
      t = Term::name(it->name, t);
      continue;
    }
    // A binder directly around its own name is a theta redex; contract it.
    if (t.kind() == TermKind::Name && t.id() == it->name && !t.body().free_names().count(it->name))
      t = t.body();
    else
      t = Term::mu(it->name, t);
  }
  return t;
}

}  // namespace bllp
