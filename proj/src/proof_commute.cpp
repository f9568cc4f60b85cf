#include "bllp/proofs.hpp"
#include "proof_internal.hpp"

namespace bllp {

std::string to_string(Occurrence o) { return o == Occurrence::Active ? "active" : "passive"; }

Occurrence classify_occurrence(const Proof& p, const ProofPath& node, int pos) {
  const Proof& start = proof_at(p, node);
  if (pos < 0 || pos >= static_cast<int>(start.conclusion.size())) throw Error("occurrence out of range");
  for (std::size_t i = node.size(); i > 0; --i) {
    ProofPath up(node.begin(), node.begin() + static_cast<long>(i) - 1);
    const Proof& parent = proof_at(p, up);
    int t = parent.links[node[i - 1]][pos];
    if (t < 0) {
      if (parent.rule == ProofRule::Cut) return Occurrence::Active;
      t = parent.principal;
    }
    pos = t;
  }
  return Occurrence::Passive;
}

namespace {

void cuts_rec(const Proof& p, ProofPath& path, std::vector<ProofPath>& out) {
  if (p.rule == ProofRule::Cut) out.push_back(path);
  if (p.rule == ProofRule::Bang) return;
  for (std::size_t k = 0; k < p.premises.size(); ++k) {
    path.push_back(static_cast<int>(k));
    cuts_rec(p.premises[k], path, out);
    path.pop_back();
  }
}

// Origin of a formula of the rebuilt inner node.
struct Origin {
  int premise;  // premise index of the lower node, or -1 for its principal
  int index;    // formula index in that premise (in R's premise when premise == k)
};

}  // namespace

std::vector<ProofPath> external_cuts(const Proof& p) {
  std::vector<ProofPath> out;
  ProofPath path;
  cuts_rec(p, path, out);
  return out;
}

namespace detail {

// Lower node L (a Cut or a Tensor) whose premise k ends with a rule R that
// carries L's active formula as context: R is moved below L. Returns the new
// subproof (same conclusion as L) and the premise index of R leading to L.
std::pair<Proof, int> sink(const Proof& lower, std::size_t k) {
  const Proof& r = lower.premises[k];
  if (r.rule == ProofRule::Bang || r.premises.empty()) throw Error("sink: rule cannot be moved");
  int act = active_pos(lower, k, -1);
  int k2 = -1, j2 = -1;
  for (std::size_t kk = 0; kk < r.premises.size() && k2 < 0; ++kk)
    for (std::size_t i = 0; i < r.links[kk].size(); ++i)
      if (r.links[kk][i] == act) {
        k2 = static_cast<int>(kk);
        j2 = static_cast<int>(i);
        break;
      }
  if (k2 < 0) throw Error("sink: active formula is introduced by the rule");

  Proof inner;
  inner.rule = lower.rule;
  inner.premises = lower.premises;
  inner.premises[k] = r.premises[k2];
  std::vector<Origin> origin;
  for (std::size_t kk = 0; kk < inner.premises.size(); ++kk) {
    const auto& c = inner.premises[kk].conclusion;
    std::vector<int> link(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      bool active = kk == k ? static_cast<int>(i) == j2 : lower.links[kk][i] < 0;
      if (active) {
        link[i] = kk == k ? -1 : lower.links[kk][i];
        continue;
      }
      link[i] = static_cast<int>(inner.conclusion.size());
      inner.conclusion.push_back(c[i]);
      origin.push_back({static_cast<int>(kk), static_cast<int>(i)});
    }
    inner.links.push_back(std::move(link));
  }
  if (lower.principal >= 0) {
    inner.principal = static_cast<int>(inner.conclusion.size());
    inner.conclusion.push_back(lower.conclusion[lower.principal]);
    origin.push_back({-1, 0});
  }

  const auto& lk = lower.links[k];
  auto through = [&](int t) { return t < 0 ? t : lk[t]; };
  Proof out;
  out.rule = r.rule;
  out.conclusion = lower.conclusion;
  out.premises = r.premises;
  out.premises[k2] = inner;
  out.principal = r.principal >= 0 ? lk[r.principal] : -1;
  for (std::size_t kk = 0; kk < r.premises.size(); ++kk) {
    if (static_cast<int>(kk) == k2) {
      std::vector<int> link;
      for (const auto& o : origin) {
        if (o.premise < 0) link.push_back(lower.principal);
        else if (o.premise == static_cast<int>(k)) link.push_back(through(r.links[k2][o.index]));
        else link.push_back(lower.links[o.premise][o.index]);
      }
      out.links.push_back(std::move(link));
    } else {
      std::vector<int> link;
      for (int t : r.links[kk]) link.push_back(through(t));
      out.links.push_back(std::move(link));
    }
  }
  return {out, k2};
}

// One step pulling a non-⊗ rule out of the ⊗-tree part of a positive proof.
std::optional<Proof> float_once(const Proof& p) {
  if (p.rule != ProofRule::Tensor) return std::nullopt;
  for (std::size_t k = 0; k < 2; ++k) {
    const Proof& q = p.premises[k];
    int act = active_pos(p, k, -1);
    bool intro = q.rule == ProofRule::Ax || q.principal == act;
    if (!intro) return sink(p, k).first;
    if (auto inner = float_once(q)) {
      Proof out = p;
      out.premises[k] = *inner;
      return out;
    }
  }
  return std::nullopt;
}

}  // namespace detail

Exposed expose_logical(const Proof& p, const ProofPath& cut) {
  Exposed e{p, cut, {}, 0};
  if (proof_at(p, cut).rule != ProofRule::Cut) throw Error("expose_logical: not a cut");
  for (;;) {
    if (logical_kind(e.proof, e.cut)) return e;
    const Proof& c = proof_at(e.proof, e.cut);
    const Proof& a = c.premises[0];
    const Proof& b = c.premises[1];
    int ai = detail::active_pos(c, 0, -1), bi = detail::active_pos(c, 1, -1);
    if (a.rule != ProofRule::Ax && a.principal != ai && a.rule != ProofRule::Bang) {
      auto [moved, k2] = detail::sink(c, 0);
      e.proof = replace_proof_at(e.proof, e.cut, std::move(moved));
      e.cut.push_back(k2);
    } else if (b.rule != ProofRule::Ax && b.principal != bi) {
      auto [moved, k2] = detail::sink(c, 1);
      e.proof = replace_proof_at(e.proof, e.cut, std::move(moved));
      e.cut.push_back(k2);
    } else if (auto fl = detail::float_once(b)) {
      Proof nc = c;
      nc.premises[1] = std::move(*fl);
      e.proof = replace_proof_at(e.proof, e.cut, std::move(nc));
    } else {
      throw Error("expose_logical: no commutation applies to the cut at this node");
    }
    ++e.commutations;
    e.weights.push_back(weight(e.proof));
  }
}

}  // namespace bllp
