// Acceptance runner: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "bllp/frontend.hpp"
#include "bllp/machine.hpp"
#include "bllp/syntax.hpp"
#include "oracles.hpp"

using namespace bllp;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    else detail += "; " + why;
    ok = false;
  }
};

int failures = 0;

void criterion(const std::string& name, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  if (!o.ok) ++failures;
  std::cout << (o.ok ? "PASS " : "FAIL ") << name;
  if (!o.detail.empty()) std::cout << " -- " << o.detail;
  std::cout << std::endl;
}

Term T(const std::string& s) { return parse_term(s); }

Proof mapped(const CorpusEntry& e) { return map_derivation(add_to_mult(*e.derivation)); }

Outcome poly_oracles() {
  Outcome o;
  std::mt19937 rng(2024);
  auto t0 = Clock::now();
  int bad = 0;
  for (int i = 0; i < 200; ++i)
    if (auto err = testing::poly_oracle_instance(rng)) {
      if (!bad++) o.fail(*err);
    }
  double s = seconds_since(t0);
  if (bad) o.fail(std::to_string(bad) + " of 200 instances disagree");
  if (s >= 5.0) o.fail("took " + std::to_string(s) + " s (limit 5 s)");
  if (o.ok) o.detail = "200 instances, " + std::to_string(s) + " s";
  return o;
}

Outcome kappa_behaviour() {
  Outcome o;
  Term t = corpus_entry("kappa_app").term;
  ReduceResult h = reduce(t, Strategy::Head, 100);
  if (h.exhausted || !alpha_equal(h.term, T("y")) || h.steps != 3)
    o.fail("head: " + h.term.str() + " in " + std::to_string(h.steps));
  ReduceResult w = reduce(t, Strategy::Weak, 100);
  // One beta step fires; the second step would substitute a term with a free name.
  if (w.exhausted || w.steps != 1 || !alpha_equal(w.term, T("mu a. [a] (\\k. y) (\\y. mu b. [a] y)")))
    o.fail("weak: " + w.term.str() + " in " + std::to_string(w.steps));
  if (find_step(w.term, Strategy::Weak)) o.fail("weak reduction does not stall");
  if (o.ok) o.detail = "head (y, 3); weak stuck at the second step";
  return o;
}

Outcome aleph_behaviour() {
  Outcome o;
  for (unsigned k = 0; k <= 3; ++k) {
    std::string args, nf = "mu a. w (\\x. [a] x";
    for (unsigned i = 1; i <= k; ++i) {
      args += " t" + std::to_string(i);
      nf += " t" + std::to_string(i);
    }
    Term t = T("(\\f. mu a. f (\\x. [a] x)) w" + args);
    ReduceResult r = reduce(t, Strategy::Head, 100);
    if (r.exhausted || r.steps != 1 + k || !alpha_equal(r.term, T(nf + ")")))
      o.fail("k=" + std::to_string(k) + ": " + r.term.str() + " in " + std::to_string(r.steps));
  }
  return o;
}

Outcome figure_derivations() {
  Outcome o;
  std::vector<std::pair<std::string, Derivation>> ds{{"kappa", kappa_derivation(2)},
                                                     {"aleph", aleph_derivation(Formula::neg_atom("X"))}};
  for (const auto& [name, d] : ds) {
    CheckReport a = check_additive(d);
    if (!a.ok) o.fail(name + " additive: " + a.str());
    Derivation m = add_to_mult(d);
    CheckReport mr = check_mult(m);
    if (!mr.ok) o.fail(name + " mult: " + mr.str());
    ProofReport p = check_proof(map_derivation(m));
    if (!p.ok) o.fail(name + " proof: " + p.str());
  }
  return o;
}

Outcome subject_reduction() {
  Outcome o;
  std::size_t links = 0;
  for (const auto& e : corpus()) {
    if (!e.derivation) continue;
    auto chain = subject_chain(*e.derivation, 100);
    if (find_step(chain.back().term, Strategy::Head)) o.fail(e.name + ": no head normal form");
    for (std::size_t i = 0; i < chain.size(); ++i) {
      CheckReport r = check_mult(chain[i].derivation);
      if (!r.ok) o.fail(e.name + " step " + std::to_string(i) + ": " + r.str());
      if (i == 0) continue;
      ++links;
      const ResourcePoly& prev = chain[i - 1].weight;
      const ResourcePoly& next = chain[i].weight;
      if (!poly_leq(next + ResourcePoly(1), prev))
        o.fail(e.name + " step " + std::to_string(i) + ": weight " + prev.str() + " -> " + next.str());
    }
  }
  if (o.ok) o.detail = std::to_string(links) + " steps, weights strictly decreasing";
  return o;
}

Outcome polystep() {
  Outcome o;
  for (const auto& e : corpus()) {
    if (!e.derivation) continue;
    PolystepReport r = verify_polystep(e);
    if (!r.ok) o.fail(e.name + ": " + r.str());
  }
  return o;
}

Outcome cut_elimination() {
  Outcome o;
  auto t0 = Clock::now();
  std::size_t total = 0;
  for (const auto& e : corpus()) {
    if (!e.derivation) continue;
    Proof p = mapped(e);
    ResourcePoly w = weight(p);
    NormalizeResult r = normalize(p, static_cast<std::size_t>(eval_at_zero(w)), true);
    if (r.fuel_exhausted) o.fail(e.name + ": not normal within fuel " + w.str());
    ResourcePoly prev = w;
    for (const auto& s : r.trace) {
      for (const auto& cw : s.commutation_weights)
        if (cw != prev) o.fail(e.name + ": commutation changed the weight " + prev.str() + " -> " + cw.str());
      ResourcePoly next = weight(s.result);
      if (!poly_leq(next + ResourcePoly(1), prev)) o.fail(e.name + ": step did not decrease the weight");
      prev = next;
    }
    ProofReport rep = check_proof(r.proof);
    if (!rep.ok) o.fail(e.name + ": result does not check");
    total += r.steps;
  }
  double s = seconds_since(t0);
  if (s >= 30.0) o.fail("took " + std::to_string(s) + " s (limit 30 s)");
  if (o.ok) o.detail = std::to_string(total) + " steps, " + std::to_string(s) + " s";
  return o;
}

Outcome machine_agreement() {
  Outcome o;
  std::size_t compared = 0;
  for (const auto& e : corpus()) {
    ReduceResult ref = reduce(e.term, Strategy::Machine, 1000);
    if (ref.exhausted) continue;
    RunResult r = run(load(e.term), 100000);
    if (r.exhausted || !alpha_equal(readback(r.config), ref.term))
      o.fail(e.name + ": machine gives " + readback(r.config).str());
    ++compared;
  }

  auto golden = [&](const std::string& label, const Config& c, Transition rule, const std::string& expect) {
    auto s = step(c);
    if (!s || s->rule != rule || s->next.str() != expect)
      o.fail(label + ": got " + (s ? to_string(s->rule) + " " + s->next.str() : std::string("no step")));
  };
  golden("application", load(T("t u")), Transition::App, "<(t, {}), [(u, {})]>");
  Config mu = load(T("mu a. [a] t"));
  mu.stack = mu.stack.push(Closure{T("u"), Env()});
  golden("mu", mu, Transition::Mu, "<([a] t, {a:=a_0[(u, {})]}), []> under mu a_0. ");
  Env env = Env().bind_name("a", MuBinding{"a_0", Stack().push(Closure{T("u"), Env()})});
  golden("name", Config{Closure{T("[a] t"), env}, Stack(), {}, 1, nullptr}, Transition::Name,
         "<(t, {a:=a_0[(u, {})]}), [(u, {})]> under [a_0] ");
  if (o.ok) o.detail = std::to_string(compared) + " corpus terms, 3 golden transitions";
  return o;
}

// Conclusion-label perturbation: a random lf-smaller formula, if one is found.
std::optional<LabelledFormula> smaller(std::mt19937& rng, const LabelledFormula& f) {
  std::vector<ResourcePoly> labels{ResourcePoly(0), ResourcePoly(1), f.label + ResourcePoly(1),
                                   f.label + ResourcePoly(2), f.label * ResourcePoly(2)};
  std::shuffle(labels.begin(), labels.end(), rng);
  for (const auto& l : labels) {
    LabelledFormula g{f.formula, f.binder, l};
    if (!lf_equal(g, f) && lf_leq(g, f)) return g;
  }
  return std::nullopt;
}

void collect(const Proof& p, ProofPath& path, std::vector<ProofPath>& out) {
  out.push_back(path);
  for (std::size_t k = 0; k < p.premises.size(); ++k) {
    path.push_back(static_cast<int>(k));
    collect(p.premises[k], path, out);
    path.pop_back();
  }
}

Outcome malleability() {
  Outcome o;
  std::mt19937 rng(7);
  std::vector<Proof> proofs;
  for (const auto& e : corpus())
    if (e.derivation) proofs.push_back(mapped(e));
  int done[4] = {0, 0, 0, 0};
  const char* names[4] = {"m_subtype", "m_subst", "m_split", "m_parsplit"};
  auto verify = [&](int op, const Proof& in, const Proof& out) {
    ProofReport r = check_proof(out);
    if (!r.ok) o.fail(std::string(names[op]) + ": " + r.str());
    else if (!proof_sim(in, out)) o.fail(std::string(names[op]) + ": shape changed");
  };
  for (int trial = 0, attempts = 0; trial < 100 && attempts < 10000; ++attempts) {
    const Proof& root = proofs[rng() % proofs.size()];
    std::vector<ProofPath> nodes;
    ProofPath path;
    collect(root, path, nodes);
    const Proof& p = proof_at(root, nodes[rng() % nodes.size()]);
    int op = trial % 4;
    if (op == 0) {
      int pos = static_cast<int>(rng() % p.conclusion.size());
      auto g = smaller(rng, p.conclusion[pos]);
      if (!g) continue;
      verify(op, p, m_subtype(p, pos, *g));
    } else if (op == 1) {
      if (p.rule != ProofRule::Bang) continue;
      const VarId& y = p.conclusion[p.principal].binder;
      ResourcePoly q = ResourcePoly(rng() % 3) + ResourcePoly::binomial("n", 1 + rng() % 2);
      verify(op, p.premises[0], m_subst(p.premises[0], y, q));
    } else {
      if (!is_tensor_tree(p)) continue;
      int pos = positive_position(p);
      if (pos < 0) continue;
      const LabelledFormula& P = p.conclusion[pos];
      if (op == 2) {
        ResourcePoly r(rng() % 2), s(rng() % 2);
        if (!poly_leq(r + s, P.label)) continue;
        auto [a, b] = m_split(p, r, s);
        verify(op, p, a);
        verify(op, p, b);
      } else {
        auto g = smaller(rng, P);
        LabelledFormula member = g && rng() % 2 ? *g : P;
        ResourcePoly bound(rng() % 2);
        if (!lf_leq(lf_bounded_sum(member, "%bound", bound), P)) continue;
        verify(op, p, m_parsplit(p, "%bound", bound, member));
      }
    }
    ++done[op];
    ++trial;
  }
  int total = done[0] + done[1] + done[2] + done[3];
  if (total < 100) o.fail("only " + std::to_string(total) + " perturbations applied");
  if (o.ok) {
    std::ostringstream os;
    for (int i = 0; i < 4; ++i) os << (i ? ", " : "") << names[i] << " " << done[i];
    o.detail = os.str();
  }
  return o;
}

}  // namespace

int main() {
  criterion("polynomial oracle equivalence", poly_oracles);
  criterion("kappa behaviour", kappa_behaviour);
  criterion("aleph behaviour for k = 0..3", aleph_behaviour);
  criterion("kappa and aleph derivations check and map to proofs", figure_derivations);
  criterion("subject reduction with strictly decreasing weights", subject_reduction);
  criterion("polystep soundness", polystep);
  criterion("cut elimination within the weight", cut_elimination);
  criterion("K-machine agreement and golden transitions", machine_agreement);
  criterion("malleability on 100 perturbations", malleability);
  std::cout << (failures ? std::to_string(failures) + " criteria failed" : std::string("all criteria passed"))
            << std::endl;
  return failures ? 1 : 0;
}
