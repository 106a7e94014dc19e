#ifndef TCSS_H
#define TCSS_H

/*
 * C interface to the threshold-changeable secret sharing library.
 *
 * Every object crossing the boundary is either an opaque handle or a
 * canonical JSON document (integers as decimal strings). Strings returned
 * through `char **out` parameters are owned by the caller and released with
 * tcss_free_string. On failure a function returns a non-zero status and
 * tcss_last_error() describes the problem for the calling thread.
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(TCSS_BUILDING_LIBRARY)
#define TCSS_API __attribute__((visibility("default")))
#else
#define TCSS_API
#endif

typedef enum tcss_status {
  TCSS_OK = 0,
  TCSS_E_INVALID_ARGUMENT,
  TCSS_E_INFEASIBLE,
  TCSS_E_ZERO_INVERSE,
  TCSS_E_DUPLICATE_IDENTITY,
  TCSS_E_ZERO_IDENTITY,
  TCSS_E_BAD_DIMENSIONS,
  TCSS_E_NOT_VANDERMONDE,
  TCSS_E_TOO_FEW,
  TCSS_E_SINGULAR,
  TCSS_E_ZERO_COEFFICIENT,
  TCSS_E_SECRET_OUT_OF_RANGE,
  TCSS_E_NOT_A_PARTICIPANT,
  TCSS_E_BAD_SET_SIZE,
  TCSS_E_SESSION_MISMATCH,
  TCSS_E_MISSING_COMPONENT,
  TCSS_E_DUPLICATE_INDEX,
  TCSS_E_CONFIG,
  TCSS_E_NO_SUCH_AGENT,
  TCSS_E_TOO_LARGE,
  TCSS_E_TOO_SPARSE,
  TCSS_E_PARSE,
  TCSS_E_INTERNAL = 100
} tcss_status;

typedef struct tcss_rng tcss_rng;
typedef struct tcss_params tcss_params;
typedef struct tcss_dealing tcss_dealing;

TCSS_API const char *tcss_last_error(void);
TCSS_API const char *tcss_status_name(tcss_status status);
TCSS_API void tcss_free_string(char *text);

/* Deterministic ChaCha20 stream when `seed` is non-NULL, OS CSPRNG otherwise. */
TCSS_API tcss_status tcss_rng_new(const char *seed, tcss_rng **out);
TCSS_API void tcss_rng_free(tcss_rng *rng);

/* Random q of `q_bits` bits and the smallest prime p > n q^2 below q^3. */
TCSS_API tcss_status tcss_params_generate(unsigned n, unsigned t, unsigned q_bits, tcss_rng *rng, tcss_params **out);
/*
 * Operator-chosen primes. `p` may be NULL to take the smallest prime above
 * n q^2. `identities_json` is NULL for U_i = i + 1, or a JSON array of n + 1
 * decimal strings U_0..U_n.
 */
TCSS_API tcss_status tcss_params_from_primes(unsigned n, unsigned t, const char *p, const char *q,
                                             const char *identities_json, tcss_params **out);
TCSS_API tcss_status tcss_params_parse(const char *json, tcss_params **out);
TCSS_API tcss_status tcss_params_serialize(const tcss_params *params, char **out_json);
/* {"p","q","n","t","digest","share_size_regime"} */
TCSS_API tcss_status tcss_params_summary(const tcss_params *params, char **out_json);
TCSS_API void tcss_params_free(tcss_params *params);

/* Token/share generation. `secret` NULL draws s uniformly from F_q. */
TCSS_API tcss_status tcss_deal(const tcss_params *params, const char *secret, tcss_rng *rng, tcss_dealing **out);
TCSS_API size_t tcss_dealing_share_count(const tcss_dealing *dealing);
/* Share for shareholder `index` in 1..n. */
TCSS_API tcss_status tcss_dealing_share(const tcss_dealing *dealing, unsigned index, char **out_json);
TCSS_API tcss_status tcss_dealing_commitment(const tcss_dealing *dealing, char **out_json);
TCSS_API void tcss_dealing_free(tcss_dealing *dealing);

/* Session binding for participant set I_m; `rng` NULL means an empty nonce. */
TCSS_API tcss_status tcss_session_open(const tcss_params *params, const unsigned *participants, size_t count,
                                       tcss_rng *rng, char **out_json);
TCSS_API tcss_status tcss_component_make(const tcss_params *params, const char *share_json, const char *session_json,
                                         tcss_rng *rng, char **out_json);
/* Secret from one complete set of components. */
TCSS_API tcss_status tcss_reconstruct(const tcss_params *params, const char *const *component_jsons, size_t count,
                                      char **out_secret);
/* Honest all-in-one run: opens a session over the given shares, builds every component and reconstructs. */
TCSS_API tcss_status tcss_reconstruct_from_shares(const tcss_params *params, const char *const *share_jsons,
                                                  size_t count, tcss_rng *rng, char **out_secret);
/* `*accepted` is set to 1 or 0 when the call succeeds. */
TCSS_API tcss_status tcss_authenticate(const tcss_params *params, const char *const *component_jsons, size_t count,
                                       const char *commitment_json, char **out_verdict_json, int *accepted);

/*
 * Simulated session with adversarial agents. The request object holds
 * "mode", "topology", "participants", optional "secret", optional "parallel"
 * and an "adversaries" list of {"index","behavior",...}. Produces the
 * line-delimited transcript and a summary object.
 */
TCSS_API tcss_status tcss_attack_run(const tcss_params *params, const char *request_json, tcss_rng *rng,
                                     char **out_transcript_jsonl, char **out_summary_json);

/*
 * Exact leakage analysis at enumerable sizes. The request selects a
 * "claim" (lemma2, corollary1, theorem2, theorem3, theorem4) and its
 * parameters. `rng` is only used for the statistical fallback.
 */
TCSS_API tcss_status tcss_analyze(const char *request_json, tcss_rng *rng, char **out_report_json);

#ifdef __cplusplus
}
#endif

#endif
