// Lambda-mu terms (de Groote's variant) and the weak, head and machine
// reduction strategies.

#ifndef BLLP_LAMMU_HPP
#define BLLP_LAMMU_HPP

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bllp/respoly.hpp"

namespace bllp {

using LamVarId = std::string;
using MuVarId = std::string;
using NameSet = std::set<std::string>;

enum class TermKind { Var, Lam, Mu, Name, App };

/// Immutable term. Lambda variables and mu names live in separate
/// namespaces; a Name node [a]t carries a mu name.
class Term {
 public:
  static Term var(const LamVarId& x);
  static Term lam(const LamVarId& x, const Term& body);
  static Term mu(const MuVarId& a, const Term& body);
  static Term name(const MuVarId& a, const Term& body);
  static Term app(const Term& f, const Term& a);
  /// f a1 ... an
  static Term apps(const Term& f, const std::vector<Term>& args);

  TermKind kind() const;
  /// Variable name, lambda binder, mu binder or the name of [a]t.
  const std::string& id() const;
  const Term& body() const;
  const Term& fun() const;
  const Term& arg() const;
  /// Child i: 0 is body or function, 1 is argument.
  const Term& child(int i) const;

  NameSet free_vars() const;
  NameSet free_names() const;
  /// All variable and name identifiers occurring anywhere.
  NameSet all_ids() const;
  std::size_t size() const;

  std::string str() const;
  /// Structural identity, names included.
  bool same(const Term& other) const;

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

bool alpha_equal(const Term& a, const Term& b);

/// A fresh identifier derived from hint by appending primes.
std::string fresh_id(const std::string& hint, const NameSet& avoid);

/// t[u/x], capture-avoiding.
Term subst(const Term& t, const LamVarId& x, const Term& u);
/// t[[a](v)u / [a]v], applied bottom-up to every [a]v of t.
Term mu_subst(const Term& t, const MuVarId& a, const Term& u);
/// Renames free occurrences of the name a to b.
Term rename_name(const Term& t, const MuVarId& a, const MuVarId& b);
/// Renames free occurrences of the variable x to y.
Term rename_var(const Term& t, const LamVarId& x, const LamVarId& y);

enum class Redex { Beta, Mu, Theta };
std::string to_string(Redex r);

/// Child indices from the root to a subterm.
using Path = std::vector<int>;
std::string path_str(const Path& p);
const Term& subterm(const Term& t, const Path& p);

/// The redex at the root of t, if any.
std::optional<Redex> root_redex(const Term& t);
/// Contracts the root redex of t; throws if there is none.
Term contract(const Term& t);

struct StepInfo {
  Term result;
  Redex redex;
  Path path;
};

enum class Strategy { Weak, Head, Machine };
std::string to_string(Strategy s);
Strategy parse_strategy(const std::string& s);

std::optional<StepInfo> find_step(const Term& t, Strategy s);

std::optional<Term> step_head(const Term& t);
std::optional<Term> step_weak(const Term& t);
std::optional<Term> step_machine(const Term& t);

struct ReduceResult {
  Term term;
  std::size_t steps = 0;
  bool exhausted = false;
  std::vector<StepInfo> trace;
};

ReduceResult reduce(const Term& t, Strategy s, std::size_t fuel, bool keep_trace = false);

}  // namespace bllp

#endif  // BLLP_LAMMU_HPP
