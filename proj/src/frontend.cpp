#include "bllp/frontend.hpp"

#include <sstream>

namespace bllp {

std::string PolystepReport::str() const {
  std::ostringstream os;
  os << (ok ? "pass" : "FAIL") << ": n=" << steps << " w=" << weight.str() << " bound=" << bound;
  if (!normal) os << " (no normal form within fuel)";
  if (!message.empty()) os << " " << message;
  return os.str();
}

PolystepReport verify_polystep(const Term& t, const Derivation& d) {
  PolystepReport r;
  CheckReport c = check_additive(d);
  if (!c.ok) {
    r.message = "derivation does not check: " + c.str();
    return r;
  }
  if (!alpha_equal(d.conclusion.subject, t)) {
    r.message = "derivation subject differs from the term";
    return r;
  }
  r.checked = true;
  r.weight = weight(map_derivation(add_to_mult(d)));
  r.bound = eval_at_zero(r.weight);
  ReduceResult red = reduce(t, Strategy::Head, static_cast<std::size_t>(r.bound) + 1);
  r.steps = red.steps;
  r.normal = !red.exhausted;
  r.ok = r.normal && Natural(r.steps) <= r.bound;
  if (!r.ok) r.message = "head steps exceed the weight";
  return r;
}

PolystepReport verify_polystep(const CorpusEntry& e) {
  if (!e.derivation) {
    PolystepReport r;
    r.message = "entry " + e.name + " has no derivation";
    return r;
  }
  return verify_polystep(e.term, *e.derivation);
}

std::vector<ChainLink> subject_chain(const Derivation& d, std::size_t fuel) {
  Derivation m = add_to_mult(d);
  Term t = m.conclusion.subject;
  std::vector<ChainLink> out{{t, m, weight(map_derivation(m))}};
  for (std::size_t i = 0; i < fuel; ++i) {
    auto s = find_step(t, Strategy::Head);
    if (!s) break;
    m = subject_reduce(m, s->path);
    t = s->result;
    out.push_back({t, m, weight(map_derivation(m))});
  }
  return out;
}

}  // namespace bllp
