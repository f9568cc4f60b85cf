// Resource polynomials: finite sums of products of binomial coefficients
// choose(x, n) with natural-number coefficients, kept in canonical form.

#ifndef BLLP_RESPOLY_HPP
#define BLLP_RESPOLY_HPP

#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace bllp {

using Natural = boost::multiprecision::cpp_int;
using VarId = std::string;
using VarSet = std::set<VarId>;
using Assignment = std::map<VarId, Natural>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A product of binomial coefficients choose(x_i, n_i); no zero degrees.
/// The empty monomial is the constant 1.
using Monomial = std::map<VarId, unsigned>;

class ResourcePoly {
 public:
  ResourcePoly() = default;
  ResourcePoly(unsigned long long c);  // NOLINT: constants convert implicitly

  static ResourcePoly constant(const Natural& c);
  /// choose(x, n); choose(x, 0) is 1.
  static ResourcePoly binomial(const VarId& x, unsigned n);
  /// The identity polynomial choose(x, 1).
  static ResourcePoly var(const VarId& x) { return binomial(x, 1); }

  const std::map<Monomial, Natural>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Natural constant_term() const;
  Natural coefficient(const Monomial& m) const;
  VarSet free_vars() const;
  bool mentions(const VarId& x) const;
  /// Highest n with choose(x, n) occurring.
  unsigned degree_in(const VarId& x) const;

  std::string str() const;

  friend bool operator==(const ResourcePoly& a, const ResourcePoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const ResourcePoly& a, const ResourcePoly& b) { return !(a == b); }
  friend bool operator<(const ResourcePoly& a, const ResourcePoly& b) { return a.terms_ < b.terms_; }

  /// Adds c * m; c may be zero.
  void add_term(const Monomial& m, const Natural& c);

 private:
  std::map<Monomial, Natural> terms_;
};

ResourcePoly add(const ResourcePoly& p, const ResourcePoly& q);
ResourcePoly mul(const ResourcePoly& p, const ResourcePoly& q);
ResourcePoly operator+(const ResourcePoly& p, const ResourcePoly& q);
ResourcePoly operator*(const ResourcePoly& p, const ResourcePoly& q);

/// Sum over z = 0 .. bound-1 of body. Throws if z occurs in bound.
ResourcePoly bounded_sum(const VarId& z, const ResourcePoly& bound, const ResourcePoly& body);

/// p with q substituted for x.
ResourcePoly compose(const ResourcePoly& p, const VarId& x, const ResourcePoly& q);

/// Simultaneous substitution of several variables.
ResourcePoly compose_all(const ResourcePoly& p, const std::map<VarId, ResourcePoly>& subst);

ResourcePoly rename(const ResourcePoly& p, const VarId& from, const VarId& to);

Natural binomial(const Natural& n, unsigned k);

/// Exact value; throws if a variable of p is missing from sigma.
Natural eval(const ResourcePoly& p, const Assignment& sigma);

/// p ⊑ q: q - p has a non-negative binomial-basis expansion.
bool poly_leq(const ResourcePoly& p, const ResourcePoly& q);
/// p ⊏ q: p ⊑ q and p != q.
bool poly_lt(const ResourcePoly& p, const ResourcePoly& q);

/// Sets every variable of p to zero.
Natural eval_at_zero(const ResourcePoly& p);

using PolyFunction = std::function<Natural(const Assignment&)>;

/// Reconstructs the binomial-basis expansion of f from mixed forward
/// differences at the origin. Throws if a coefficient is negative.
ResourcePoly fd_oracle(const PolyFunction& f, const std::vector<VarId>& vars,
                       const std::map<VarId, unsigned>& degree_bounds);

/// A name based on hint not contained in avoid.
VarId fresh_name(const std::string& hint, const VarSet& avoid);

}  // namespace bllp

#endif  // BLLP_RESPOLY_HPP
