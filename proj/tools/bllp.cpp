// Command-line front end over the C interface.
//
// Exit codes: 0 pass, 1 check failure, 2 bound violation, 3 parse error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bllp.h"

namespace {

enum Exit { kPass = 0, kCheck = 1, kBound = 2, kParse = 3 };

struct CliError {
  int code;
  std::string message;
};

int exit_for(bllp_status s) {
  switch (s) {
    case BLLP_OK: return kPass;
    case BLLP_ERR_PARSE: return kParse;
    case BLLP_ERR_BOUND: return kBound;
    case BLLP_ERR_NOT_FOUND:
    case BLLP_ERR_ARGUMENT: return kParse;
    default: return kCheck;
  }
}

void ok(bllp_status s) {
  if (s != BLLP_OK) throw CliError{exit_for(s), std::string(bllp_status_name(s)) + ": " + bllp_last_error()};
}

// Owns a string returned by the library.
struct Text {
  char* p = nullptr;
  ~Text() { bllp_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

using TermPtr = std::unique_ptr<bllp_term, decltype(&bllp_term_free)>;
using DerivPtr = std::unique_ptr<bllp_derivation, decltype(&bllp_derivation_free)>;
using ProofPtr = std::unique_ptr<bllp_proof, decltype(&bllp_proof_free)>;

TermPtr own(bllp_term* t) { return {t, &bllp_term_free}; }
DerivPtr own(bllp_derivation* d) { return {d, &bllp_derivation_free}; }
ProofPtr own(bllp_proof* p) { return {p, &bllp_proof_free}; }

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path);
  if (!in) throw CliError{kParse, "cannot read " + path};
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream f(out);
  if (!f) throw CliError{kCheck, "cannot write " + out};
  f << text << "\n";
}

// Where a command reads its input from.
struct Source {
  std::string file;
  std::string entry;
  bool all = false;

  void attach(CLI::App* cmd, const char* what) {
    cmd->add_option("file", file, std::string(what) + " file (- for stdin)");
    cmd->add_option("--entry,-e", entry, "corpus entry name");
    cmd->add_flag("--all", all, "every corpus entry with a derivation");
  }

  std::vector<std::string> entries() const {
    if (!entry.empty()) return {entry};
    std::vector<std::string> out;
    if (all || file.empty())
      for (std::size_t i = 0; i < bllp_corpus_size(); ++i)
        if (bllp_corpus_has_derivation(bllp_corpus_name(i))) out.push_back(bllp_corpus_name(i));
    return out;
  }
};

std::vector<std::pair<std::string, DerivPtr>> derivations(const Source& src) {
  std::vector<std::pair<std::string, DerivPtr>> out;
  if (!src.file.empty() && src.entry.empty() && !src.all) {
    bllp_derivation* d = nullptr;
    ok(bllp_derivation_parse(slurp(src.file).c_str(), &d));
    out.emplace_back(src.file, own(d));
    return out;
  }
  for (const auto& name : src.entries()) {
    bllp_derivation* d = nullptr;
    ok(bllp_derivation_from_corpus(name.c_str(), &d));
    out.emplace_back(name, own(d));
  }
  return out;
}

TermPtr term_input(const std::string& text, const std::string& entry) {
  bllp_term* t = nullptr;
  if (!entry.empty()) ok(bllp_term_from_corpus(entry.c_str(), &t));
  else if (!text.empty()) ok(bllp_term_parse(text.c_str(), &t));
  else throw CliError{kParse, "give a term or --entry"};
  return own(t);
}

std::string print(const bllp_term* t) {
  Text s;
  ok(bllp_term_print(t, &s.p));
  return s.str();
}

ProofPtr to_proof(const bllp_derivation* d) {
  bllp_proof* p = nullptr;
  ok(bllp_derivation_to_proof(d, &p));
  return own(p);
}

int cmd_check(const Source& src, bool mult) {
  int code = kPass;
  for (auto& [name, d] : derivations(src)) {
    Text report;
    bllp_status s = bllp_derivation_check(d.get(), mult ? 1 : 0, &report.p);
    if (s == BLLP_OK) {
      ProofPtr p = to_proof(d.get());
      Text pr;
      s = bllp_proof_check(p.get(), &pr.p);
      if (s != BLLP_OK) std::cout << name << ": proof FAIL " << pr.str() << "\n";
      else std::cout << name << ": ok (proof of " << bllp_proof_size(p.get()) << " rules)\n";
    } else {
      std::cout << name << ": FAIL " << report.str() << "\n";
    }
    if (s != BLLP_OK) code = std::max(code, exit_for(s));
  }
  return code;
}

int cmd_weight(const Source& src, const std::string& proof_file) {
  if (!proof_file.empty()) {
    bllp_proof* raw = nullptr;
    ok(bllp_proof_parse(slurp(proof_file).c_str(), &raw));
    ProofPtr p = own(raw);
    Text w;
    ok(bllp_proof_weight(p.get(), &w.p));
    std::cout << w.str() << "\n";
    return kPass;
  }
  for (auto& [name, d] : derivations(src)) {
    ProofPtr p = to_proof(d.get());
    Text w;
    ok(bllp_proof_weight(p.get(), &w.p));
    std::cout << name << ": " << w.str() << "\n";
  }
  return kPass;
}

int cmd_reduce(const std::string& text, const std::string& entry, const std::string& strategy, std::size_t fuel,
               bool trace) {
  TermPtr t = term_input(text, entry);
  bllp_term* r = nullptr;
  std::size_t steps = 0;
  int normal = 0;
  Text tr;
  ok(bllp_reduce(t.get(), strategy.c_str(), fuel, &r, &steps, &normal, trace ? &tr.p : nullptr));
  TermPtr res = own(r);
  if (trace) std::cout << tr.str();
  std::cout << print(res.get()) << "\nsteps: " << steps << (normal ? "" : " (fuel exhausted)") << "\n";
  return kPass;
}

int cmd_machine(const std::string& text, const std::string& entry, std::size_t fuel, bool trace) {
  TermPtr t = term_input(text, entry);
  bllp_term* r = nullptr;
  std::size_t steps = 0;
  Text status, tr;
  ok(bllp_machine_run(t.get(), fuel, &r, &steps, &status.p, trace ? &tr.p : nullptr));
  TermPtr res = own(r);
  if (trace) std::cout << tr.str();
  std::cout << print(res.get()) << "\nsteps: " << steps << " status: " << status.str() << "\n";
  return kPass;
}

int cmd_to_proof(const Source& src, const std::string& out) {
  auto ds = derivations(src);
  if (ds.size() != 1) throw CliError{kParse, "to-proof takes one derivation"};
  ProofPtr p = to_proof(ds[0].second.get());
  Text s;
  ok(bllp_proof_print(p.get(), &s.p));
  emit(s.str(), out);
  return kPass;
}

int cmd_cut(const Source& src, const std::string& proof_file, long fuel, bool trace, const std::string& out) {
  ProofPtr p = own(static_cast<bllp_proof*>(nullptr));
  if (!proof_file.empty()) {
    bllp_proof* raw = nullptr;
    ok(bllp_proof_parse(slurp(proof_file).c_str(), &raw));
    p = own(raw);
  } else {
    auto ds = derivations(src);
    if (ds.size() != 1) throw CliError{kParse, "cut-eliminate takes one proof"};
    p = to_proof(ds[0].second.get());
  }
  Text w;
  ok(bllp_proof_weight(p.get(), &w.p));
  std::size_t f = fuel >= 0 ? static_cast<std::size_t>(fuel) : 100000;
  bllp_proof* r = nullptr;
  std::size_t steps = 0;
  Text tr;
  bllp_status s = bllp_cut_eliminate(p.get(), f, &r, &steps, trace ? &tr.p : nullptr);
  ProofPtr res = own(r);
  if (trace) std::cout << tr.str();
  std::cout << "weight: " << w.str() << "\nsteps: " << steps << (s == BLLP_ERR_FUEL ? " (fuel exhausted)" : "")
            << "\n";
  if (!out.empty()) {
    Text t;
    ok(bllp_proof_print(res.get(), &t.p));
    emit(t.str(), out);
  }
  if (s == BLLP_ERR_FUEL) return kBound;
  ok(s);
  return kPass;
}

int cmd_polystep(const Source& src) {
  int code = kPass;
  for (auto& [name, d] : derivations(src)) {
    Text report;
    bllp_status s = bllp_verify_polystep(d.get(), nullptr, nullptr, &report.p);
    std::cout << name << ": " << (report.p ? report.str() : bllp_last_error()) << "\n";
    code = std::max(code, exit_for(s));
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Checker and reducer for bounded linear logic with control"};
  app.require_subcommand(1);

  Source check_src, weight_src, proof_src, cut_src, poly_src;
  bool mult = false;
  std::string term, entry, strategy = "head", out, proof_file, p, q;
  std::size_t fuel = 10000;
  long cut_fuel = -1;
  bool trace = false;

  auto* check = app.add_subcommand("check", "check derivations and their sequent proofs");
  check_src.attach(check, "derivation");
  check->add_flag("--mult", mult, "check against the multiplicative system");

  auto* weight = app.add_subcommand("weight", "weight of the proof of a derivation");
  weight_src.attach(weight, "derivation");
  weight->add_option("--proof", proof_file, "weigh a proof file instead");

  auto* red = app.add_subcommand("reduce", "reduce a term");
  red->add_option("term", term, "term text");
  red->add_option("--entry,-e", entry, "corpus entry name");
  red->add_option("--strategy,-s", strategy, "weak, head or machine")->check(CLI::IsMember({"weak", "head", "machine"}));
  red->add_option("--fuel", fuel, "maximum number of steps");
  red->add_flag("--trace", trace, "print every step");

  auto* mach = app.add_subcommand("machine-run", "run the K-machine");
  mach->add_option("term", term, "term text");
  mach->add_option("--entry,-e", entry, "corpus entry name");
  mach->add_option("--fuel", fuel, "maximum number of transitions");
  mach->add_flag("--trace", trace, "print every configuration");

  auto* tp = app.add_subcommand("to-proof", "map a derivation to a sequent proof");
  proof_src.attach(tp, "derivation");
  tp->add_option("--output,-o", out, "output file");

  auto* cut = app.add_subcommand("cut-eliminate", "normalize a proof under special-cut reduction");
  cut_src.attach(cut, "derivation");
  cut->add_option("--proof", proof_file, "proof file instead of a derivation");
  cut->add_option("--fuel", cut_fuel, "maximum number of steps");
  cut->add_flag("--trace", trace, "print one line per step with its weight");
  cut->add_option("--output,-o", out, "write the normal proof here");

  auto* ps = app.add_subcommand("verify-polystep", "check head steps against the weight");
  poly_src.attach(ps, "derivation");

  auto* canon = app.add_subcommand("poly-canon", "print a polynomial in canonical form");
  canon->add_option("poly", p, "polynomial")->required();

  auto* leq = app.add_subcommand("poly-leq", "decide p below q; exit 1 when it fails");
  leq->add_option("p", p, "polynomial")->required();
  leq->add_option("q", q, "polynomial")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kParse;
  }

  try {
    if (*check) return cmd_check(check_src, mult);
    if (*weight) return cmd_weight(weight_src, proof_file);
    if (*red) return cmd_reduce(term, entry, strategy, fuel, trace);
    if (*mach) return cmd_machine(term, entry, fuel, trace);
    if (*tp) return cmd_to_proof(proof_src, out);
    if (*cut) return cmd_cut(cut_src, proof_file, cut_fuel, trace, out);
    if (*ps) return cmd_polystep(poly_src);
    if (*canon) {
      Text s;
      ok(bllp_poly_canon(p.c_str(), &s.p));
      std::cout << s.str() << "\n";
      return kPass;
    }
    if (*leq) {
      int r = 0;
      ok(bllp_poly_leq(p.c_str(), q.c_str(), &r));
      std::cout << (r ? "true" : "false") << "\n";
      return r ? kPass : kCheck;
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  }
  return kPass;
}
