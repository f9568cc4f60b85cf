#include "bllp/respoly.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>

namespace bllp {

namespace {

using Rational = boost::multiprecision::cpp_rational;

// Polynomials in the power basis x1^e1 * ... with rational coefficients.
// Only used internally by compose; never escapes this file.
using PowerMono = std::map<VarId, unsigned>;
using PowerPoly = std::map<PowerMono, Rational>;

void power_add(PowerPoly& acc, const PowerMono& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = acc.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) acc.erase(it);
  }
}

PowerPoly power_mul(const PowerPoly& a, const PowerPoly& b) {
  PowerPoly out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      PowerMono m = ma;
      for (const auto& [v, e] : mb) m[v] += e;
      power_add(out, m, ca * cb);
    }
  }
  return out;
}

// Coefficients of choose(x, n) in powers of x: falling factorial / n!.
std::vector<Rational> binomial_in_powers(unsigned n) {
  std::vector<Rational> c{Rational(1)};
  for (unsigned i = 0; i < n; ++i) {
    std::vector<Rational> next(c.size() + 1, Rational(0));
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= c[k] * Rational(i);
    }
    c = std::move(next);
  }
  Rational fact = 1;
  for (unsigned i = 2; i <= n; ++i) fact *= i;
  for (auto& v : c) v /= fact;
  return c;
}

// x^k = sum_j S(k, j) j! choose(x, j), S the Stirling numbers of the second kind.
std::vector<Natural> power_in_binomials(unsigned k) {
  std::vector<std::vector<Natural>> s(k + 1, std::vector<Natural>(k + 1, 0));
  s[0][0] = 1;
  for (unsigned n = 1; n <= k; ++n)
    for (unsigned j = 1; j <= n; ++j) s[n][j] = Natural(j) * s[n - 1][j] + s[n - 1][j - 1];
  std::vector<Natural> out(k + 1, 0);
  Natural fact = 1;
  for (unsigned j = 0; j <= k; ++j) {
    if (j > 0) fact *= j;
    out[j] = s[k][j] * fact;
  }
  return out;
}

PowerPoly to_power(const ResourcePoly& p) {
  PowerPoly out;
  for (const auto& [mono, coef] : p.terms()) {
    PowerPoly acc{{PowerMono{}, Rational(coef)}};
    for (const auto& [v, n] : mono) {
      PowerPoly factor;
      auto c = binomial_in_powers(n);
      for (unsigned e = 0; e < c.size(); ++e) {
        PowerMono m;
        if (e > 0) m[v] = e;
        power_add(factor, m, c[e]);
      }
      acc = power_mul(acc, factor);
    }
    for (const auto& [m, c] : acc) power_add(out, m, c);
  }
  return out;
}

ResourcePoly from_power(const PowerPoly& p) {
  std::map<Monomial, Rational> acc;
  for (const auto& [pm, coef] : p) {
    std::map<Monomial, Rational> part{{Monomial{}, coef}};
    for (const auto& [v, e] : pm) {
      auto c = power_in_binomials(e);
      std::map<Monomial, Rational> next;
      for (const auto& [m, val] : part) {
        for (unsigned j = 0; j <= e; ++j) {
          if (c[j] == 0) continue;
          Monomial m2 = m;
          if (j > 0) m2[v] = j;
          next[m2] += val * Rational(c[j]);
        }
      }
      part = std::move(next);
    }
    for (const auto& [m, val] : part) acc[m] += val;
  }
  ResourcePoly out;
  for (const auto& [m, val] : acc) {
    if (val == 0) continue;
    if (denominator(val) != 1 || val < 0)
      throw Error("composition left the resource-polynomial cone");
    out.add_term(m, numerator(val));
  }
  return out;
}

// choose(x,a) * choose(x,b) = sum_k C(k,a) C(a, a+b-k) choose(x,k), k = max(a,b) .. a+b.
std::map<unsigned, Natural> same_var_product(unsigned a, unsigned b) {
  std::map<unsigned, Natural> out;
  for (unsigned k = std::max(a, b); k <= a + b; ++k) {
    Natural c = binomial(Natural(k), a) * binomial(Natural(a), a + b - k);
    if (c != 0) out[k] = c;
  }
  return out;
}

std::map<Monomial, Natural> mono_product(const Monomial& ma, const Monomial& mb) {
  std::map<Monomial, Natural> acc{{Monomial{}, 1}};
  VarSet vars;
  for (const auto& [v, _] : ma) vars.insert(v);
  for (const auto& [v, _] : mb) vars.insert(v);
  for (const auto& v : vars) {
    auto ia = ma.find(v);
    auto ib = mb.find(v);
    unsigned a = ia == ma.end() ? 0 : ia->second;
    unsigned b = ib == mb.end() ? 0 : ib->second;
    std::map<unsigned, Natural> factor;
    if (a == 0 || b == 0)
      factor[a + b] = 1;
    else
      factor = same_var_product(a, b);
    std::map<Monomial, Natural> next;
    for (const auto& [m, c] : acc) {
      for (const auto& [deg, fc] : factor) {
        Monomial m2 = m;
        m2[v] = deg;
        next[m2] += c * fc;
      }
    }
    acc = std::move(next);
  }
  return acc;
}

}  // namespace

ResourcePoly::ResourcePoly(unsigned long long c) {
  if (c != 0) terms_[Monomial{}] = Natural(c);
}

ResourcePoly ResourcePoly::constant(const Natural& c) {
  if (c < 0) throw Error("negative constant in resource polynomial");
  ResourcePoly p;
  p.add_term(Monomial{}, c);
  return p;
}

ResourcePoly ResourcePoly::binomial(const VarId& x, unsigned n) {
  ResourcePoly p;
  Monomial m;
  if (n > 0) m[x] = n;
  p.add_term(m, 1);
  return p;
}

void ResourcePoly::add_term(const Monomial& m, const Natural& c) {
  if (c == 0) return;
  if (c < 0) throw Error("negative coefficient in resource polynomial");
  Monomial clean;
  for (const auto& [v, n] : m)
    if (n > 0) clean[v] = n;
  terms_[clean] += c;
}

bool ResourcePoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Natural ResourcePoly::constant_term() const { return coefficient(Monomial{}); }

Natural ResourcePoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Natural(0) : it->second;
}

VarSet ResourcePoly::free_vars() const {
  VarSet out;
  for (const auto& [m, _] : terms_)
    for (const auto& [v, _n] : m) out.insert(v);
  return out;
}

bool ResourcePoly::mentions(const VarId& x) const {
  for (const auto& [m, _] : terms_)
    if (m.count(x)) return true;
  return false;
}

unsigned ResourcePoly::degree_in(const VarId& x) const {
  unsigned d = 0;
  for (const auto& [m, _] : terms_) {
    auto it = m.find(x);
    if (it != m.end()) d = std::max(d, it->second);
  }
  return d;
}

std::string ResourcePoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  // Highest total degree first reads more naturally.
  std::vector<std::pair<Monomial, Natural>> ordered(terms_.begin(), terms_.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    unsigned da = 0, db = 0;
    for (const auto& [_, n] : a.first) da += n;
    for (const auto& [_, n] : b.first) db += n;
    return da > db;
  });
  for (const auto& [m, c] : ordered) {
    if (!first) out << " + ";
    first = false;
    if (m.empty()) {
      out << c;
      continue;
    }
    if (c != 1) out << c << "*";
    bool first_factor = true;
    for (const auto& [v, n] : m) {
      if (!first_factor) out << "*";
      first_factor = false;
      if (n == 1)
        out << v;
      else
        out << "bin(" << v << "," << n << ")";
    }
  }
  return out.str();
}

ResourcePoly add(const ResourcePoly& p, const ResourcePoly& q) {
  ResourcePoly out = p;
  for (const auto& [m, c] : q.terms()) out.add_term(m, c);
  return out;
}

ResourcePoly mul(const ResourcePoly& p, const ResourcePoly& q) {
  ResourcePoly out;
  for (const auto& [ma, ca] : p.terms())
    for (const auto& [mb, cb] : q.terms())
      for (const auto& [m, c] : mono_product(ma, mb)) out.add_term(m, ca * cb * c);
  return out;
}

ResourcePoly operator+(const ResourcePoly& p, const ResourcePoly& q) { return add(p, q); }
ResourcePoly operator*(const ResourcePoly& p, const ResourcePoly& q) { return mul(p, q); }

ResourcePoly compose(const ResourcePoly& p, const VarId& x, const ResourcePoly& q) {
  return compose_all(p, {{x, q}});
}

ResourcePoly compose_all(const ResourcePoly& p, const std::map<VarId, ResourcePoly>& subst) {
  bool touches = false;
  for (const auto& [v, _] : subst) touches = touches || p.mentions(v);
  if (!touches) return p;

  // Fast path: a variable-for-variable renaming keeps the basis intact
  // unless two renamed variables collide.
  bool renaming = true;
  for (const auto& [v, q] : subst) {
    if (q.terms().size() != 1 || q.terms().begin()->second != 1) {
      renaming = false;
      break;
    }
    const auto& m = q.terms().begin()->first;
    if (m.size() != 1 || m.begin()->second != 1) renaming = false;
  }

  if (!renaming) {
    PowerPoly pp = to_power(p);
    std::map<VarId, PowerPoly> qp;
    for (const auto& [v, q] : subst) qp[v] = to_power(q);
    PowerPoly out;
    for (const auto& [mono, coef] : pp) {
      PowerPoly acc{{PowerMono{}, coef}};
      PowerMono rest;
      for (const auto& [v, e] : mono) {
        auto it = qp.find(v);
        if (it == qp.end()) {
          rest[v] = e;
          continue;
        }
        for (unsigned i = 0; i < e; ++i) acc = power_mul(acc, it->second);
      }
      acc = power_mul(acc, PowerPoly{{rest, Rational(1)}});
      for (const auto& [m, c] : acc) power_add(out, m, c);
    }
    return from_power(out);
  }

  ResourcePoly out;
  for (const auto& [mono, coef] : p.terms()) {
    ResourcePoly term = ResourcePoly::constant(coef);
    for (const auto& [v, n] : mono) {
      auto it = subst.find(v);
      VarId target = it == subst.end() ? v : it->second.terms().begin()->first.begin()->first;
      term = mul(term, ResourcePoly::binomial(target, n));
    }
    out = add(out, term);
  }
  return out;
}

ResourcePoly rename(const ResourcePoly& p, const VarId& from, const VarId& to) {
  if (from == to) return p;
  return compose(p, from, ResourcePoly::var(to));
}

ResourcePoly bounded_sum(const VarId& z, const ResourcePoly& bound, const ResourcePoly& body) {
  if (bound.mentions(z)) throw Error("bounded sum index " + z + " occurs in its bound");
  // body = sum_n choose(z, n) * rest_n, and sum_{z<b} choose(z, n) = choose(b, n+1).
  std::map<unsigned, ResourcePoly> by_degree;
  for (const auto& [m, c] : body.terms()) {
    Monomial rest = m;
    unsigned n = 0;
    auto it = rest.find(z);
    if (it != rest.end()) {
      n = it->second;
      rest.erase(it);
    }
    by_degree[n].add_term(rest, c);
  }
  ResourcePoly out;
  const VarId t = fresh_name("t", [&] {
    VarSet avoid = bound.free_vars();
    for (const auto& v : body.free_vars()) avoid.insert(v);
    return avoid;
  }());
  for (const auto& [n, rest] : by_degree) {
    ResourcePoly lifted = compose(ResourcePoly::binomial(t, n + 1), t, bound);
    out = add(out, mul(rest, lifted));
  }
  return out;
}

Natural binomial(const Natural& n, unsigned k) {
  if (n < k) return 0;
  Natural r = 1;
  for (unsigned i = 0; i < k; ++i) {
    r *= (n - i);
    r /= (i + 1);
  }
  return r;
}

Natural eval(const ResourcePoly& p, const Assignment& sigma) {
  Natural total = 0;
  for (const auto& [m, c] : p.terms()) {
    Natural term = c;
    for (const auto& [v, n] : m) {
      auto it = sigma.find(v);
      if (it == sigma.end()) throw Error("no value for resource variable " + v);
      term *= binomial(it->second, n);
      if (term == 0) break;
    }
    total += term;
  }
  return total;
}

Natural eval_at_zero(const ResourcePoly& p) { return p.constant_term(); }

bool poly_leq(const ResourcePoly& p, const ResourcePoly& q) {
  for (const auto& [m, c] : p.terms())
    if (q.coefficient(m) < c) return false;
  return true;
}

bool poly_lt(const ResourcePoly& p, const ResourcePoly& q) { return p != q && poly_leq(p, q); }

ResourcePoly fd_oracle(const PolyFunction& f, const std::vector<VarId>& vars,
                       const std::map<VarId, unsigned>& degree_bounds) {
  const std::size_t k = vars.size();
  std::vector<unsigned> bound(k);
  for (std::size_t i = 0; i < k; ++i) {
    auto it = degree_bounds.find(vars[i]);
    bound[i] = it == degree_bounds.end() ? 0 : it->second;
  }

  // Tabulate f on the grid [0, bound_i].
  std::map<std::vector<unsigned>, Natural> table;
  std::vector<unsigned> idx(k, 0);
  while (true) {
    Assignment sigma;
    for (std::size_t i = 0; i < k; ++i) sigma[vars[i]] = idx[i];
    table[idx] = f(sigma);
    std::size_t i = 0;
    while (i < k && idx[i] == bound[i]) idx[i++] = 0;
    if (i == k) break;
    ++idx[i];
  }

  // Coefficient at n = sum_{j <= n} prod_i (-1)^{n_i - j_i} C(n_i, j_i) f(j).
  ResourcePoly out;
  for (const auto& [n, _] : table) {
    Natural positive = 0, negative = 0;
    std::vector<unsigned> j(k, 0);
    while (true) {
      Natural weight = 1;
      unsigned sign = 0;
      for (std::size_t i = 0; i < k; ++i) {
        weight *= binomial(Natural(n[i]), j[i]);
        sign += n[i] - j[i];
      }
      Natural term = weight * table.at(j);
      (sign % 2 == 0 ? positive : negative) += term;
      std::size_t i = 0;
      while (i < k && j[i] == n[i]) j[i++] = 0;
      if (i == k) break;
      ++j[i];
    }
    if (positive < negative) throw Error("function has a negative binomial coefficient");
    Monomial m;
    for (std::size_t i = 0; i < k; ++i)
      if (n[i] > 0) m[vars[i]] = n[i];
    out.add_term(m, positive - negative);
  }
  return out;
}

VarId fresh_name(const std::string& hint, const VarSet& avoid) {
  std::string base = hint.empty() ? "v" : hint;
  if (!avoid.count(base)) return base;
  for (unsigned i = 1;; ++i) {
    std::string candidate = base + std::to_string(i);
    if (!avoid.count(candidate)) return candidate;
  }
}

}  // namespace bllp
