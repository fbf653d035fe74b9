/*
 * qecnm - effective logical channels of noisy quantum-error-correction
 * gadgets on stabilizer codes, and the non-Markovianity of the resulting
 * logical dynamics.
 *
 * C interface: opaque handles, integer status codes, caller-owned output
 * buffers. Strings returned through `char **` are allocated by the library
 * and must be released with qecnm_string_free(). All functions are
 * thread-compatible; the error message store is thread-local.
 */
#ifndef QECNM_H
#define QECNM_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qecnm_status {
  QECNM_OK = 0,
  QECNM_ERR_INVALID_ARGUMENT = 1,
  QECNM_ERR_DIMENSION = 2,
  QECNM_ERR_CAPACITY = 3,
  QECNM_ERR_PARSE = 4,
  QECNM_ERR_VALIDATION = 5,
  QECNM_ERR_DOMAIN = 6,
  QECNM_ERR_UNSUPPORTED = 7,
  QECNM_ERR_SEARCH_EXHAUSTED = 8,
  QECNM_ERR_IO = 9,
  QECNM_ERR_INTERNAL = 10
} qecnm_status;

typedef struct qecnm_code qecnm_code;
typedef struct qecnm_channel qecnm_channel;

/* Message for the most recent failure on this thread; never NULL. */
const char *qecnm_last_error(void);

void qecnm_string_free(char *s);

/* ---- codes ---- */

qecnm_status qecnm_code_rep3(qecnm_code **out);
qecnm_status qecnm_code_five_qubit(qecnm_code **out);
/* Parses the code-definition text format (see README). */
qecnm_status qecnm_code_parse(const char *text, qecnm_code **out);
qecnm_status qecnm_code_load(const char *path, qecnm_code **out);
void qecnm_code_free(qecnm_code *code);

size_t qecnm_code_n(const qecnm_code *code);
size_t qecnm_code_k(const qecnm_code *code);
/* Declared distance, or -1 when the definition did not declare one. */
int qecnm_code_distance(const qecnm_code *code);
size_t qecnm_code_num_syndromes(const qecnm_code *code);

/* Writes the syndrome bit string of a Pauli given in string form. */
qecnm_status qecnm_code_syndrome_of(const qecnm_code *code, const char *pauli,
                                    char *buf, size_t buflen);
/* Writes the correction Pauli for a syndrome bit string. */
qecnm_status qecnm_code_correction(const qecnm_code *code,
                                   const char *syndrome, char *buf,
                                   size_t buflen);
/* 16-hex-digit hash of the canonical code definition. buflen >= 17. */
qecnm_status qecnm_code_fingerprint(const qecnm_code *code, char *buf,
                                    size_t buflen);
/* Canonical code-definition text. */
qecnm_status qecnm_code_canonical_text(const qecnm_code *code, char **out);

/* ---- channels ---- */

qecnm_status qecnm_recovery(const qecnm_code *code, qecnm_channel **out);
/* Noisy recovery with independent ancilla bitflip probability p. */
qecnm_status qecnm_noisy_recovery(const qecnm_code *code, double p,
                                  qecnm_channel **out);
/* Recovery conditioned on an ancilla error pattern (bit string of length
 * n-k), trace preserving on its own. */
qecnm_status qecnm_conditional_recovery(const qecnm_code *code,
                                        const char *pattern,
                                        qecnm_channel **out);
qecnm_status qecnm_encoding(const qecnm_code *code, qecnm_channel **out);
qecnm_status qecnm_decoding(const qecnm_code *code, qecnm_channel **out);
/* after(before(rho)). */
qecnm_status qecnm_compose(const qecnm_channel *after,
                           const qecnm_channel *before, qecnm_channel **out);
/* Effective logical process D . lambda . E. */
qecnm_status qecnm_retraction(const qecnm_code *code,
                              const qecnm_channel *lambda,
                              qecnm_channel **out);
void qecnm_channel_free(qecnm_channel *chan);

size_t qecnm_channel_in_dim(const qecnm_channel *chan);
size_t qecnm_channel_out_dim(const qecnm_channel *chan);
/* Copies the column-stacked superoperator, row major; len must equal
 * (out_dim^2 * in_dim^2). */
qecnm_status qecnm_channel_entries(const qecnm_channel *chan, double *re,
                                   double *im, size_t len);
qecnm_status qecnm_channel_to_json(const qecnm_channel *chan, char **out);
/* Trace-preservation defect and smallest Choi eigenvalue. */
qecnm_status qecnm_channel_verify_cptp(const qecnm_channel *chan,
                                       double *tp_defect,
                                       double *choi_min_eig);
qecnm_status qecnm_channel_distance(const qecnm_channel *a,
                                    const qecnm_channel *b, double *out);

/* Encoding unitary U_E on (syndrome register x logical register), row
 * major; len must equal 4^n. */
qecnm_status qecnm_encoding_unitary_entries(const qecnm_code *code, double *re,
                                            double *im, size_t len);
/* CSV table of the encoding unitary's action on basis states. */
qecnm_status qecnm_encoding_unitary_csv(const qecnm_code *code, char **out);
/* Dense-operator JSON export of U_E. */
qecnm_status qecnm_encoding_unitary_json(const qecnm_code *code, char **out);

/* ---- experiments ---- */

/* Polarization decay under m rounds of noisy syndrome extraction.
 * q has rounds+1 entries; eps rounds entries (NaN where undefined);
 * deps rounds-1 entries. Any of the three pointers may be NULL. */
qecnm_status qecnm_decay(const qecnm_code *code, double p, int rounds,
                         double *q, double *eps, double *deps);
/* Decay CSV (columns m,q_m,eps_m,abs_delta_eps). */
qecnm_status qecnm_decay_csv(const qecnm_code *code, double p, int rounds,
                             char **out);
/* Decay SVG chart (three panels; log-scale y when log_y != 0). */
qecnm_status qecnm_decay_svg(const qecnm_code *code, double p, int rounds,
                             int log_y, char **out);

/* Independent ancilla-level circuit oracle for the repetition code;
 * writes q_0..q_rounds (rounds+1 values, rounds <= 20). */
qecnm_status qecnm_circuit_oracle(double p, int rounds, double *q);

/* Two-round composability violation for the noisy recovery at p.
 * Outputs may be NULL. pauli_probs needs 4^k entries (I,X,Y,Z order). */
qecnm_status qecnm_verify_theorem1(const qecnm_code *code, double p,
                                   int *violated, double *distance,
                                   double *pauli_probs, size_t probs_len);
qecnm_status qecnm_verify_theorem1_json(const qecnm_code *code, double p,
                                        char **out);

/* Random-CPTP composability suite: `trials` seeded pairs of maps, checked
 * once with a perfect recovery appended to each map and once raw.
 * Both distance arrays need `trials` entries; either may be NULL. */
qecnm_status qecnm_composability_suite(const qecnm_code *code, int trials,
                                       unsigned long long seed,
                                       double *with_recovery_dist,
                                       double *raw_dist);
qecnm_status qecnm_composability_suite_json(const qecnm_code *code, int trials,
                                            unsigned long long seed,
                                            char **out);

/* Leading-order comparison of 1-q_2 against the combinatorial estimate. */
qecnm_status qecnm_leading_order_csv(const qecnm_code *code, const double *ps,
                                     size_t num_ps, char **out);
qecnm_status qecnm_leading_order_json(const qecnm_code *code, const double *ps,
                                      size_t num_ps, char **out);

/* ---- stochastic picture ---- */

/* 1 if the noisy recovery at p maps basis states to basis-diagonal states. */
qecnm_status qecnm_classical(const qecnm_code *code, double p, int *out);
/* Transition matrix over computational basis states in syndrome-grouped
 * order. labels receives a comma-separated state list; matrix is row major
 * with len = 4^n entries. Either output may be NULL. */
qecnm_status qecnm_transition_matrix(const qecnm_code *code, double p,
                                     char **labels, double *matrix,
                                     size_t len);
qecnm_status qecnm_transition_matrix_json(const qecnm_code *code, double p,
                                          char **out);
/* Eigenvalue table (CSV: index,re,im,modulus) plus spectral scalars. */
qecnm_status qecnm_spectral_csv(const qecnm_code *code, double p, char **out,
                                double *second_largest_modulus,
                                double *asymptotic_rate);
qecnm_status qecnm_cube_graph_dot(const qecnm_code *code, double p,
                                  char **out);
qecnm_status qecnm_cube_graph_json(const qecnm_code *code, double p,
                                   char **out);

#ifdef __cplusplus
}
#endif

#endif /* QECNM_H */
