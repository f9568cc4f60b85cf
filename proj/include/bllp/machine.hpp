// The K abstract machine for lambda-mu terms, with readback of
// configurations into terms.

#ifndef BLLP_MACHINE_HPP
#define BLLP_MACHINE_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bllp/lammu.hpp"

namespace bllp {

struct Closure;
struct MuBinding;

/// Persistent environment: lambda variables to closures, mu names to stacks.
class Env {
 public:
  Env() = default;
  Env bind_var(const LamVarId& x, const Closure& c) const;
  Env bind_name(const MuVarId& a, const MuBinding& b) const;
  std::optional<Closure> lookup_var(const LamVarId& x) const;
  std::optional<MuBinding> lookup_name(const MuVarId& a) const;
  bool empty() const { return !node_; }
  std::string str() const;

 private:
  struct Node;
  explicit Env(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Persistent stack of closures; the front is the top.
class Stack {
 public:
  Stack() = default;
  Stack push(const Closure& c) const;
  const Closure& top() const;
  Stack pop() const;
  bool empty() const { return !node_; }
  std::size_t size() const;
  std::vector<Closure> items() const;
  std::string str() const;

 private:
  struct Node;
  explicit Stack(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Closure {
  Term term;
  Env env;
  std::string str() const;
};

/// A captured stack together with the name it is read back under.
struct MuBinding {
  MuVarId name;
  Stack stack;
};

/// Mu/name frames passed on the way to the current closure, outermost
/// first; readback wraps the result in them.
struct Frame {
  bool is_mu;
  MuVarId name;
};

struct Config {
  Closure focus;
  Stack stack;
  std::vector<Frame> trail;
  std::size_t counter = 0;
  std::shared_ptr<const NameSet> reserved;

  std::string str() const;
};

enum class Transition { Var, Lam, App, Mu, Name };
std::string to_string(Transition t);

enum class MachineStatus { Running, Final, Stuck };
std::string to_string(MachineStatus s);

Config load(const Term& t);
MachineStatus status(const Config& c);

struct MachineStep {
  Config next;
  Transition rule;
};

std::optional<MachineStep> step(const Config& c);

struct RunResult {
  Config config;
  std::size_t steps = 0;
  bool exhausted = false;
  MachineStatus status = MachineStatus::Running;
  std::vector<Transition> rules;
  /// Configurations before each transition, then the last one.
  std::vector<std::string> dumps;
};

RunResult run(const Config& c, std::size_t fuel, bool keep_trace = false);

Term readback(const Config& c);
Term readback(const Closure& c);

}  // namespace bllp

#endif  // BLLP_MACHINE_HPP
