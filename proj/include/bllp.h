/* C interface to the bllp library.
 *
 * Objects are opaque handles released with the matching *_free function.
 * Strings returned through char** are heap-allocated and released with
 * bllp_string_free. Every call returns a bllp_status; on failure the
 * message is available from bllp_last_error (per thread, valid until the
 * next call on that thread).
 */

#ifndef BLLP_H
#define BLLP_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  BLLP_OK = 0,
  BLLP_ERR_PARSE = 1,
  BLLP_ERR_CHECK = 2,
  BLLP_ERR_BOUND = 3,
  BLLP_ERR_NOT_FOUND = 4,
  BLLP_ERR_ARGUMENT = 5,
  BLLP_ERR_FUEL = 6,
  BLLP_ERR_INTERNAL = 7
} bllp_status;

typedef struct bllp_term bllp_term;
typedef struct bllp_derivation bllp_derivation;
typedef struct bllp_proof bllp_proof;

const char* bllp_last_error(void);
const char* bllp_status_name(bllp_status s);
void bllp_string_free(char* s);

/* Polynomials, exchanged as text. */
bllp_status bllp_poly_canon(const char* text, char** out);
/* *out is 1 when p ⊑ q. */
bllp_status bllp_poly_leq(const char* p, const char* q, int* out);

/* Corpus entries, sorted by name. */
size_t bllp_corpus_size(void);
const char* bllp_corpus_name(size_t i);
int bllp_corpus_has_derivation(const char* name);

/* Terms. */
bllp_status bllp_term_parse(const char* text, bllp_term** out);
bllp_status bllp_term_from_corpus(const char* name, bllp_term** out);
bllp_status bllp_term_print(const bllp_term* t, char** out);
void bllp_term_free(bllp_term* t);

/* strategy is "weak", "head" or "machine". With trace set, *trace receives
 * one line per step ("<redex> at <path>: <term>"); trace may be NULL.
 * *normal is 1 when the result has no further step. */
bllp_status bllp_reduce(const bllp_term* t, const char* strategy, size_t fuel, bllp_term** result, size_t* steps,
                        int* normal, char** trace);

/* Runs the K-machine from load(t). *status is "final", "stuck" or
 * "running" (fuel exhausted); *result is the readback. */
bllp_status bllp_machine_run(const bllp_term* t, size_t fuel, bllp_term** result, size_t* steps, char** status,
                             char** trace);

/* Derivations. */
bllp_status bllp_derivation_parse(const char* text, bllp_derivation** out);
bllp_status bllp_derivation_from_corpus(const char* name, bllp_derivation** out);
bllp_status bllp_derivation_print(const bllp_derivation* d, char** out);
void bllp_derivation_free(bllp_derivation* d);
/* Returns BLLP_ERR_CHECK with the report in *report when the check fails.
 * report may be NULL. */
bllp_status bllp_derivation_check(const bllp_derivation* d, int multiplicative, char** report);
bllp_status bllp_derivation_to_mult(const bllp_derivation* d, bllp_derivation** out);
bllp_status bllp_derivation_subject(const bllp_derivation* d, bllp_term** out);
/* Maps the multiplicative form of d to a sequent proof. */
bllp_status bllp_derivation_to_proof(const bllp_derivation* d, bllp_proof** out);

/* Proofs. */
bllp_status bllp_proof_parse(const char* text, bllp_proof** out);
bllp_status bllp_proof_print(const bllp_proof* p, char** out);
void bllp_proof_free(bllp_proof* p);
bllp_status bllp_proof_check(const bllp_proof* p, char** report);
bllp_status bllp_proof_weight(const bllp_proof* p, char** weight);
size_t bllp_proof_size(const bllp_proof* p);
/* Normalizes under the special-cut relation. Returns BLLP_ERR_FUEL when
 * fuel runs out (the partial result is still stored). With trace set, one
 * line per step with its kind and recomputed weight. */
bllp_status bllp_cut_eliminate(const bllp_proof* p, size_t fuel, bllp_proof** result, size_t* steps, char** trace);

/* Polystep check of d against its subject. Returns BLLP_ERR_BOUND on a
 * violation and BLLP_ERR_CHECK when d does not check. */
bllp_status bllp_verify_polystep(const bllp_derivation* d, size_t* steps, char** weight, char** report);

#ifdef __cplusplus
}
#endif

#endif /* BLLP_H */
