#include <algorithm>

#include "bllp/proofs.hpp"
#include "proof_internal.hpp"

namespace bllp {

namespace {

struct Image {
  Proof proof;
  std::vector<std::string> keys;  // per conclusion formula: "l:x", "m:a" or "type"
};

int find_key(const Image& im, const std::string& key) {
  auto it = std::find(im.keys.begin(), im.keys.end(), key);
  if (it == im.keys.end()) throw Error("map_derivation: missing formula " + key);
  return static_cast<int>(it - im.keys.begin());
}

// Keys of a node built by the assemble convention: contexts of the premises
// in order, then the principal.
std::vector<std::string> carried(const std::vector<const Image*>& prem, const std::vector<std::vector<int>>& actives,
                                 const std::vector<std::pair<std::string, std::string>>& renames = {}) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < prem.size(); ++k)
    for (std::size_t i = 0; i < prem[k]->keys.size(); ++i) {
      if (std::find(actives[k].begin(), actives[k].end(), static_cast<int>(i)) != actives[k].end()) continue;
      std::string key = prem[k]->keys[i];
      for (const auto& [from, to] : renames)
        if (key == from) key = to;
      out.push_back(key);
    }
  return out;
}

std::string name_of(const Derivation& d, const char* which) {
  auto it = d.names.find(which);
  if (it == d.names.end()) throw Error(std::string("map_derivation: contraction name ") + which + " missing");
  return it->second;
}

Image map_rec(const Derivation& d) {
  const Judgment& j = d.conclusion;
  switch (d.rule) {
    case TypingRule::Var:
    case TypingRule::VarM: {
      if (j.lam_ctx.size() != 1 || !j.mu_ctx.empty()) throw Error("map_derivation: var with extra context");
      const auto& [x, e] = *j.lam_ctx.begin();
      Formula z = subst_poly(e.formula, e.binder, ResourcePoly(0));
      Proof ax = mk_ax(labelled(z.body(), z.binder(), z.bound()), j.type);
      return {mk_der(ax, 0, e), {"type", "l:" + x}};
    }
    case TypingRule::Abs: {
      Image p = map_rec(d.premises[0]);
      int l = find_key(p, "l:" + j.subject.id()), r = find_key(p, "type");
      auto keys = carried({&p}, {{l, r}});
      keys.push_back("type");
      return {mk_par(p.proof, l, r, j.type), keys};
    }
    case TypingRule::App:
    case TypingRule::AppM: {
      Image f = map_rec(d.premises[0]);
      Image a = map_rec(d.premises[1]);
      const Judgment& pt = d.premises[0].conclusion;
      const ResourcePoly& h = d.polys.at("h");
      const VarId& b = pt.type.binder;

      int main = find_key(a, "type");
      Sequent ctx;
      std::vector<std::string> box_keys;
      for (std::size_t i = 0; i < a.keys.size(); ++i) {
        if (static_cast<int>(i) == main) continue;
        const std::string& key = a.keys[i];
        const std::string id = key.substr(2);
        ctx.push_back(key[0] == 'l' ? j.lam_ctx.at(id) : j.mu_ctx.at(id));
        box_keys.push_back(key);
      }
      LabelledFormula bang{Formula::bang(a.proof.conclusion[main].binder, a.proof.conclusion[main].label,
                                         a.proof.conclusion[main].formula),
                           b, h};
      Proof box = mk_bang(a.proof, main, ctx, bang);
      box_keys.push_back("bang");

      Proof ax = mk_ax(negate(j.type), j.type);
      Proof ten = mk_tensor(box, static_cast<int>(box_keys.size()) - 1, ax, 0, negate(pt.type));
      std::vector<std::string> ten_keys(box_keys.begin(), box_keys.end() - 1);
      ten_keys.push_back("type");
      ten_keys.push_back("cut");

      int c = find_key(f, "type");
      Proof cut = mk_cut(f.proof, c, ten, static_cast<int>(ten_keys.size()) - 1);
      std::vector<std::string> keys;
      for (std::size_t i = 0; i < f.keys.size(); ++i)
        if (static_cast<int>(i) != c) keys.push_back(f.keys[i]);
      keys.insert(keys.end(), ten_keys.begin(), ten_keys.end() - 1);
      return {cut, keys};
    }
    case TypingRule::MuName: {
      Image p = map_rec(d.premises[0]);
      auto keys = carried({&p}, {{}}, {{"type", "m:" + j.subject.id()}});
      keys.push_back("type");
      return {mk_bot(p.proof, j.type), keys};
    }
    case TypingRule::MuAbs: {
      Image p = map_rec(d.premises[0]);
      const LabelledFormula& bot = d.premises[0].conclusion.type;
      int c = find_key(p, "type");
      Proof cut = mk_cut(p.proof, c, mk_one(negate(bot)), 0);
      auto keys = carried({&p}, {{c}}, {{"m:" + j.subject.id(), "type"}});
      return {cut, keys};
    }
    case TypingRule::WeakLam:
    case TypingRule::WeakMu: {
      Image p = map_rec(d.premises[0]);
      bool lam = d.rule == TypingRule::WeakLam;
      const auto& jc = lam ? j.lam_ctx : j.mu_ctx;
      const auto& pc = lam ? d.premises[0].conclusion.lam_ctx : d.premises[0].conclusion.mu_ctx;
      for (const auto& [k, e] : jc)
        if (!pc.count(k)) {
          auto keys = p.keys;
          keys.push_back((lam ? "l:" : "m:") + k);
          return {mk_weak(p.proof, e), keys};
        }
      throw Error("map_derivation: weakening adds no entry");
    }
    case TypingRule::ContrLam:
    case TypingRule::ContrMu: {
      Image p = map_rec(d.premises[0]);
      std::string pre = d.rule == TypingRule::ContrLam ? "l:" : "m:";
      std::string z = name_of(d, "z");
      int x = find_key(p, pre + name_of(d, "x")), y = find_key(p, pre + name_of(d, "y"));
      const auto& e = d.rule == TypingRule::ContrLam ? j.lam_ctx.at(z) : j.mu_ctx.at(z);
      auto keys = carried({&p}, {{x, y}});
      keys.push_back(pre + z);
      return {mk_contr(p.proof, x, y, e), keys};
    }
  }
  throw Error("map_derivation: unknown rule");
}

}  // namespace

Proof map_derivation(const Derivation& d) {
  auto rep = check_mult(d);
  if (!rep.ok) throw Error("map_derivation: derivation does not check: " + rep.str());
  Image im = map_rec(d);
  std::vector<std::string> order;
  for (const auto& [x, _] : d.conclusion.lam_ctx) order.push_back("l:" + x);
  order.push_back("type");
  for (const auto& [a, _] : d.conclusion.mu_ctx) order.push_back("m:" + a);
  if (order.size() != im.keys.size()) throw Error("map_derivation: conclusion size mismatch");
  std::vector<int> perm(im.keys.size());
  for (std::size_t i = 0; i < im.keys.size(); ++i) {
    auto it = std::find(order.begin(), order.end(), im.keys[i]);
    if (it == order.end()) throw Error("map_derivation: stray formula " + im.keys[i]);
    perm[i] = static_cast<int>(it - order.begin());
  }
  return permute(im.proof, perm);
}

}  // namespace bllp
