// Independent oracles shared by unit tests and the acceptance runner.

#ifndef BLLP_TESTS_ORACLES_HPP
#define BLLP_TESTS_ORACLES_HPP

#include <optional>
#include <string>

#include "poly_gen.hpp"

namespace bllp::testing {

inline std::map<VarId, unsigned> degrees(const ResourcePoly& p) {
  std::map<VarId, unsigned> d;
  for (const auto& v : p.free_vars()) d[v] = p.degree_in(v);
  return d;
}

inline std::vector<VarId> keys(const std::map<VarId, unsigned>& m) {
  std::vector<VarId> out;
  for (const auto& [v, _] : m) out.push_back(v);
  return out;
}

inline Natural brute_bounded_sum(const VarId& z, const ResourcePoly& bound, const ResourcePoly& body,
                                 const Assignment& sigma) {
  Natural n = eval(bound, sigma), total = 0;
  Assignment s = sigma;
  for (Natural k = 0; k < n; ++k) {
    s[z] = k;
    total += eval(body, s);
  }
  return total;
}

// One random instance of mul, compose and bounded_sum, each compared with
// fd_oracle and with brute-force evaluation on a grid.
inline std::optional<std::string> poly_oracle_instance(std::mt19937& rng) {
  const std::vector<VarId> all{"x", "y", "z"};
  std::uniform_int_distribution<unsigned> nv(1, 3), small(0, 2);
  auto pick_vars = [&](unsigned n) { return std::vector<VarId>(all.begin(), all.begin() + n); };
  ResourcePoly p = random_poly(rng, pick_vars(nv(rng)), 4);
  ResourcePoly q = random_poly(rng, pick_vars(nv(rng)), 2);

  auto fail = [&](const std::string& op, const ResourcePoly& got) {
    return op + " mismatch: p=" + p.str() + " q=" + q.str() + " got " + got.str();
  };

  {
    ResourcePoly got = p * q;
    auto deg = degrees(p);
    for (const auto& [v, d] : degrees(q)) deg[v] += d;
    auto f = [&](const Assignment& s) { return eval(p, s) * eval(q, s); };
    if (fd_oracle(f, keys(deg), deg) != got) return fail("mul/fd", got);
    for (const auto& s : grid(keys(deg), 3))
      if (eval(got, s) != f(s)) return fail("mul/eval", got);
  }
  {
    ResourcePoly qx = random_poly(rng, {"y", "z"}, 2, 2, 3);
    ResourcePoly got = compose(p, "x", qx);
    std::map<VarId, unsigned> deg;
    for (const auto& [v, d] : degrees(p))
      if (v != "x") deg[v] = d;
    for (const auto& [v, d] : degrees(qx)) deg[v] += p.degree_in("x") * d;
    auto f = [&](const Assignment& s) {
      Assignment t = s;
      t["x"] = eval(qx, s);
      return eval(p, t);
    };
    if (fd_oracle(f, keys(deg), deg) != got) return fail("compose/fd", got);
    for (const auto& s : grid(keys(deg), 3))
      if (eval(got, s) != f(s)) return fail("compose/eval", got);
  }
  {
    ResourcePoly bound = small(rng) ? random_poly(rng, {"x", "y"}, 1, 2, 2) : ResourcePoly(small(rng));
    ResourcePoly got = bounded_sum("z", bound, p);
    std::map<VarId, unsigned> deg;
    for (const auto& [v, d] : degrees(p))
      if (v != "z") deg[v] = d;
    for (const auto& [v, d] : degrees(bound)) deg[v] += (p.degree_in("z") + 1) * d;
    auto f = [&](const Assignment& s) { return brute_bounded_sum("z", bound, p, s); };
    if (fd_oracle(f, keys(deg), deg) != got) return fail("bounded_sum/fd", got);
    for (const auto& s : grid(keys(deg), 3))
      if (eval(got, s) != f(s)) return fail("bounded_sum/eval", got);
  }
  return std::nullopt;
}

}  // namespace bllp::testing

#endif
