#include "bllp.h"

#include <cstdlib>
#include <cstring>
#include <sstream>

#include "bllp/frontend.hpp"
#include "bllp/machine.hpp"
#include "bllp/serial.hpp"
#include "bllp/syntax.hpp"

struct bllp_term {
  bllp::Term value;
};
struct bllp_derivation {
  bllp::Derivation value;
};
struct bllp_proof {
  bllp::Proof value;
};

namespace {

thread_local std::string last_error;

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void put(char** out, const std::string& s) {
  if (out) *out = dup(s);
}

template <class F>
bllp_status guard(F&& f) {
  last_error.clear();
  try {
    return f();
  } catch (const bllp::ParseError& e) {
    last_error = e.what();
    return BLLP_ERR_PARSE;
  } catch (const bllp::Error& e) {
    last_error = e.what();
    return BLLP_ERR_ARGUMENT;
  } catch (const std::exception& e) {
    last_error = e.what();
    return BLLP_ERR_INTERNAL;
  }
}

bllp_status fail(bllp_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

#define BLLP_REQUIRE(cond) \
  if (!(cond)) return fail(BLLP_ERR_ARGUMENT, "null argument: " #cond)

const bllp::CorpusEntry* find_entry(const char* name) {
  for (const auto& e : bllp::corpus())
    if (e.name == name) return &e;
  return nullptr;
}

}  // namespace

extern "C" {

const char* bllp_last_error(void) { return last_error.c_str(); }

const char* bllp_status_name(bllp_status s) {
  switch (s) {
    case BLLP_OK: return "ok";
    case BLLP_ERR_PARSE: return "parse error";
    case BLLP_ERR_CHECK: return "check failure";
    case BLLP_ERR_BOUND: return "bound violation";
    case BLLP_ERR_NOT_FOUND: return "not found";
    case BLLP_ERR_ARGUMENT: return "invalid argument";
    case BLLP_ERR_FUEL: return "fuel exhausted";
    case BLLP_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

void bllp_string_free(char* s) { std::free(s); }

bllp_status bllp_poly_canon(const char* text, char** out) {
  BLLP_REQUIRE(text && out);
  return guard([&] {
    put(out, bllp::parse_poly(text).str());
    return BLLP_OK;
  });
}

bllp_status bllp_poly_leq(const char* p, const char* q, int* out) {
  BLLP_REQUIRE(p && q && out);
  return guard([&] {
    *out = bllp::poly_leq(bllp::parse_poly(p), bllp::parse_poly(q)) ? 1 : 0;
    return BLLP_OK;
  });
}

size_t bllp_corpus_size(void) { return bllp::corpus().size(); }

const char* bllp_corpus_name(size_t i) {
  const auto& c = bllp::corpus();
  return i < c.size() ? c[i].name.c_str() : nullptr;
}

int bllp_corpus_has_derivation(const char* name) {
  const auto* e = name ? find_entry(name) : nullptr;
  return e && e->derivation ? 1 : 0;
}

bllp_status bllp_term_parse(const char* text, bllp_term** out) {
  BLLP_REQUIRE(text && out);
  return guard([&] {
    *out = new bllp_term{bllp::parse_term(text)};
    return BLLP_OK;
  });
}

bllp_status bllp_term_from_corpus(const char* name, bllp_term** out) {
  BLLP_REQUIRE(name && out);
  const auto* e = find_entry(name);
  if (!e) return fail(BLLP_ERR_NOT_FOUND, std::string("no corpus entry ") + name);
  *out = new bllp_term{e->term};
  return BLLP_OK;
}

bllp_status bllp_term_print(const bllp_term* t, char** out) {
  BLLP_REQUIRE(t && out);
  return guard([&] {
    put(out, t->value.str());
    return BLLP_OK;
  });
}

void bllp_term_free(bllp_term* t) { delete t; }

bllp_status bllp_reduce(const bllp_term* t, const char* strategy, size_t fuel, bllp_term** result, size_t* steps,
                        int* normal, char** trace) {
  BLLP_REQUIRE(t && strategy && result);
  return guard([&] {
    bllp::Strategy s = bllp::parse_strategy(strategy);
    bllp::ReduceResult r = bllp::reduce(t->value, s, fuel, trace != nullptr);
    *result = new bllp_term{r.term};
    if (steps) *steps = r.steps;
    if (normal) *normal = r.exhausted ? 0 : 1;
    if (trace) {
      std::ostringstream os;
      for (const auto& st : r.trace)
        os << bllp::to_string(st.redex) << " at " << bllp::path_str(st.path) << ": " << st.result.str() << "\n";
      put(trace, os.str());
    }
    return BLLP_OK;
  });
}

bllp_status bllp_machine_run(const bllp_term* t, size_t fuel, bllp_term** result, size_t* steps, char** status,
                             char** trace) {
  BLLP_REQUIRE(t && result);
  return guard([&] {
    bllp::RunResult r = bllp::run(bllp::load(t->value), fuel, trace != nullptr);
    *result = new bllp_term{bllp::readback(r.config)};
    if (steps) *steps = r.steps;
    put(status, bllp::to_string(r.status));
    if (trace) {
      std::ostringstream os;
      for (std::size_t i = 0; i < r.rules.size(); ++i)
        os << r.dumps[i] << "\n  --" << bllp::to_string(r.rules[i]) << "-->\n";
      if (!r.dumps.empty()) os << r.dumps.back() << "\n";
      put(trace, os.str());
    }
    return BLLP_OK;
  });
}

bllp_status bllp_derivation_parse(const char* text, bllp_derivation** out) {
  BLLP_REQUIRE(text && out);
  return guard([&] {
    *out = new bllp_derivation{bllp::parse_derivation(text)};
    return BLLP_OK;
  });
}

bllp_status bllp_derivation_from_corpus(const char* name, bllp_derivation** out) {
  BLLP_REQUIRE(name && out);
  const auto* e = find_entry(name);
  if (!e) return fail(BLLP_ERR_NOT_FOUND, std::string("no corpus entry ") + name);
  if (!e->derivation) return fail(BLLP_ERR_NOT_FOUND, std::string("corpus entry ") + name + " has no derivation");
  *out = new bllp_derivation{*e->derivation};
  return BLLP_OK;
}

bllp_status bllp_derivation_print(const bllp_derivation* d, char** out) {
  BLLP_REQUIRE(d && out);
  return guard([&] {
    put(out, bllp::derivation_to_text(d->value));
    return BLLP_OK;
  });
}

void bllp_derivation_free(bllp_derivation* d) { delete d; }

bllp_status bllp_derivation_check(const bllp_derivation* d, int multiplicative, char** report) {
  BLLP_REQUIRE(d);
  return guard([&] {
    bllp::CheckReport r = multiplicative ? bllp::check_mult(d->value) : bllp::check_additive(d->value);
    put(report, r.str());
    if (!r.ok) return fail(BLLP_ERR_CHECK, r.str());
    return BLLP_OK;
  });
}

bllp_status bllp_derivation_to_mult(const bllp_derivation* d, bllp_derivation** out) {
  BLLP_REQUIRE(d && out);
  return guard([&] {
    *out = new bllp_derivation{bllp::add_to_mult(d->value)};
    return BLLP_OK;
  });
}

bllp_status bllp_derivation_subject(const bllp_derivation* d, bllp_term** out) {
  BLLP_REQUIRE(d && out);
  *out = new bllp_term{d->value.conclusion.subject};
  return BLLP_OK;
}

bllp_status bllp_derivation_to_proof(const bllp_derivation* d, bllp_proof** out) {
  BLLP_REQUIRE(d && out);
  return guard([&] {
    const bllp::Derivation& v = d->value;
    bool mult = bllp::check_mult(v).ok;
    if (!mult) {
      bllp::CheckReport r = bllp::check_additive(v);
      if (!r.ok) return fail(BLLP_ERR_CHECK, r.str());
    }
    *out = new bllp_proof{bllp::map_derivation(mult ? v : bllp::add_to_mult(v))};
    return BLLP_OK;
  });
}

bllp_status bllp_proof_parse(const char* text, bllp_proof** out) {
  BLLP_REQUIRE(text && out);
  return guard([&] {
    *out = new bllp_proof{bllp::parse_proof(text)};
    return BLLP_OK;
  });
}

bllp_status bllp_proof_print(const bllp_proof* p, char** out) {
  BLLP_REQUIRE(p && out);
  return guard([&] {
    put(out, bllp::proof_to_text(p->value));
    return BLLP_OK;
  });
}

void bllp_proof_free(bllp_proof* p) { delete p; }

bllp_status bllp_proof_check(const bllp_proof* p, char** report) {
  BLLP_REQUIRE(p);
  return guard([&] {
    bllp::ProofReport r = bllp::check_proof(p->value);
    put(report, r.str());
    if (!r.ok) return fail(BLLP_ERR_CHECK, r.str());
    return BLLP_OK;
  });
}

bllp_status bllp_proof_weight(const bllp_proof* p, char** weight) {
  BLLP_REQUIRE(p && weight);
  return guard([&] {
    bllp::ProofReport r = bllp::check_proof(p->value);
    if (!r.ok) return fail(BLLP_ERR_CHECK, r.str());
    put(weight, bllp::weight(p->value).str());
    return BLLP_OK;
  });
}

size_t bllp_proof_size(const bllp_proof* p) { return p ? p->value.size() : 0; }

bllp_status bllp_cut_eliminate(const bllp_proof* p, size_t fuel, bllp_proof** result, size_t* steps, char** trace) {
  BLLP_REQUIRE(p && result);
  return guard([&] {
    bllp::ProofReport rep = bllp::check_proof(p->value);
    if (!rep.ok) return fail(BLLP_ERR_CHECK, rep.str());
    bllp::NormalizeResult r = bllp::normalize(p->value, fuel, trace != nullptr);
    *result = new bllp_proof{r.proof};
    if (steps) *steps = r.steps;
    if (trace) {
      std::ostringstream os;
      for (std::size_t i = 0; i < r.trace.size(); ++i) {
        const auto& s = r.trace[i];
        os << i + 1 << " " << bllp::to_string(s.kind) << " commutations=" << s.commutations
           << " weight=" << bllp::weight(s.result).str() << "\n";
      }
      put(trace, os.str());
    }
    if (r.fuel_exhausted) return fail(BLLP_ERR_FUEL, "cut elimination ran out of fuel");
    return BLLP_OK;
  });
}

bllp_status bllp_verify_polystep(const bllp_derivation* d, size_t* steps, char** weight, char** report) {
  BLLP_REQUIRE(d);
  return guard([&] {
    bllp::PolystepReport r = bllp::verify_polystep(d->value.conclusion.subject, d->value);
    if (steps) *steps = r.steps;
    put(weight, r.weight.str());
    put(report, r.str());
    if (!r.checked) return fail(BLLP_ERR_CHECK, r.message);
    if (!r.ok) return fail(BLLP_ERR_BOUND, r.str());
    return BLLP_OK;
  });
}

}  // extern "C"
