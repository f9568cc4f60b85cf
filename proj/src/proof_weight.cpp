#include "bllp/proofs.hpp"

namespace bllp {

namespace {

struct Weigher {
  BoxWeight mode;
  unsigned counter = 0;

  VarId fresh() { return "#" + std::to_string(++counter); }

  static ResourcePoly set_to(const ResourcePoly& p, const VarSet& vars, unsigned v) {
    std::map<VarId, ResourcePoly> s;
    for (const auto& x : vars) s.emplace(x, ResourcePoly(v));
    return s.empty() ? p : compose_all(p, s);
  }

  static const VarSet& active_set(const Proof& p, const std::vector<PreWeight>& pw, std::size_t k, int slot) {
    for (std::size_t i = 0; i < p.links[k].size(); ++i)
      if (p.links[k][i] == slot) return pw[k].var_sets[i];
    throw Error("preweight: missing active formula");
  }

  PreWeight run(const Proof& p) {
    std::vector<PreWeight> pw;
    for (const auto& q : p.premises) pw.push_back(run(q));

    PreWeight out;
    out.var_sets.assign(p.conclusion.size(), {});
    for (std::size_t k = 0; k < p.premises.size(); ++k)
      for (std::size_t i = 0; i < p.links[k].size(); ++i)
        if (p.links[k][i] >= 0) out.var_sets[p.links[k][i]] = pw[k].var_sets[i];

    switch (p.rule) {
      case ProofRule::Ax: {
        VarId y = fresh();
        for (std::size_t i = 0; i < p.conclusion.size(); ++i)
          if (!p.conclusion[i].positive()) out.var_sets[i] = {y};
        out.poly = ResourcePoly::var(y);
        break;
      }
      case ProofRule::One:
        out.poly = ResourcePoly(0);
        break;
      case ProofRule::Cut:
        out.poly = set_to(pw[0].poly, active_set(p, pw, 0, -1), 1) + set_to(pw[1].poly, active_set(p, pw, 1, -1), 1);
        break;
      case ProofRule::Par:
      case ProofRule::Contr: {
        VarId y = fresh();
        VarSet s = active_set(p, pw, 0, -1);
        const VarSet& t = active_set(p, pw, 0, -2);
        s.insert(t.begin(), t.end());
        s.insert(y);
        out.var_sets[p.principal] = s;
        out.poly = pw[0].poly + ResourcePoly::var(y);
        break;
      }
      case ProofRule::Tensor: {
        VarSet s = active_set(p, pw, 0, -1);
        const VarSet& t = active_set(p, pw, 1, -1);
        s.insert(t.begin(), t.end());
        out.var_sets[p.principal] = s;
        out.poly = pw[0].poly + pw[1].poly;
        break;
      }
      case ProofRule::Bang: {
        const auto& w = p.conclusion[p.principal];
        ResourcePoly inner = set_to(pw[0].poly, active_set(p, pw, 0, -1), 1);
        out.poly = mode == BoxWeight::LabelSum ? bounded_sum(w.binder, w.label, inner)
                                               : w.formula.bound() * inner;
        for (std::size_t i = 0; i < p.conclusion.size(); ++i) {
          if (static_cast<int>(i) == p.principal) continue;
          VarId y = fresh();
          out.var_sets[i].insert(y);
          out.poly = out.poly + ResourcePoly::var(y);
        }
        break;
      }
      case ProofRule::Der: {
        VarId y = fresh();
        VarSet s = active_set(p, pw, 0, -1);
        s.insert(y);
        out.var_sets[p.principal] = s;
        out.poly = pw[0].poly + ResourcePoly::var(y);
        break;
      }
      case ProofRule::Weak:
      case ProofRule::Bot: {
        VarId y = fresh();
        out.var_sets[p.principal] = {y};
        out.poly = pw[0].poly + ResourcePoly::var(y);
        break;
      }
    }
    return out;
  }
};

}  // namespace

PreWeight preweight(const Proof& p, BoxWeight mode) {
  auto rep = check_proof(p);
  if (!rep.ok) throw Error("preweight of an invalid proof: " + rep.str());
  Weigher w{mode};
  return w.run(p);
}

ResourcePoly weight(const Proof& p, BoxWeight mode) {
  PreWeight pw = preweight(p, mode);
  VarSet all;
  for (const auto& s : pw.var_sets) all.insert(s.begin(), s.end());
  std::map<VarId, ResourcePoly> zero;
  for (const auto& v : all) zero.emplace(v, ResourcePoly(0));
  return zero.empty() ? pw.poly : compose_all(pw.poly, zero);
}

}  // namespace bllp
