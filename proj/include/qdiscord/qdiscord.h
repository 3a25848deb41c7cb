/* C interface to the qdiscord library.
 *
 * Matrices cross the boundary as 32 doubles: 4x4 row-major, each entry as
 * (re, im). Every function returns a qd_status; on failure a description is
 * available from qd_last_error() on the calling thread until the next call.
 * Handles are opaque and owned by the caller; release them with the matching
 * *_destroy function.
 */
#ifndef QDISCORD_H
#define QDISCORD_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(QDISCORD_BUILDING_LIBRARY)
#    define QD_API __declspec(dllexport)
#  else
#    define QD_API __declspec(dllimport)
#  endif
#else
#  define QD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qd_status {
  QD_OK = 0,
  QD_ERR_NOT_HERMITIAN = 1,
  QD_ERR_TRACE_NOT_ONE = 2,
  QD_ERR_NOT_PSD = 3,
  QD_ERR_NOT_UNITARY = 4,
  QD_ERR_NOT_CS = 5,
  QD_ERR_NOT_X = 6,
  QD_ERR_INVALID_X_STATE = 7,
  QD_ERR_TOO_LARGE = 8,
  QD_ERR_NO_SIGN_CHANGE = 9,
  QD_ERR_INVALID_ARGUMENT = 10,
  QD_ERR_BUFFER_TOO_SMALL = 11,
  QD_ERR_NOT_X_OR_CS = 12,
  QD_ERR_INTERNAL = 99
} qd_status;

typedef enum qd_unit { QD_NATS = 0, QD_BITS = 1 } qd_unit;

typedef enum qd_branch { QD_BRANCH_Q0 = 0, QD_BRANCH_QTHETA = 1, QD_BRANCH_QPI2 = 2 } qd_branch;

typedef struct qd_state qd_state;
typedef struct qd_sweep qd_sweep;
typedef struct qd_report qd_report;

typedef struct qd_discord_result {
  double q_value;
  qd_branch branch;
  double theta_opt;
  qd_unit unit;
  double q0;
  double q_pi2;
  int has_q_theta;
  double q_theta;
} qd_discord_result;

typedef struct qd_oracle_options {
  int n_theta;
  int n_phi;
  int refine;
  int threads;
} qd_oracle_options;

typedef struct qd_oracle_result {
  double q_value;
  double conditional_entropy;
  double theta;
  double phi;
  qd_unit unit;
} qd_oracle_result;

typedef struct qd_sweep_record {
  double alpha_t;
  double q0;
  double q_pi2;
  int has_q_theta;
  double q_theta;
  double q;
  double theta_opt;
} qd_sweep_record;

typedef struct qd_harmonic {
  int index;
  double amplitude;
  double cos_coeff;
  double sin_coeff;
} qd_harmonic;

typedef struct qd_selftest_options {
  uint64_t seed;
  int threads;
  int oracle_enabled;
  /* Scale applied to the p correlator prefactor; 1.0 leaves it untouched. */
  double p_prefactor_scale;
} qd_selftest_options;

QD_API const char *qd_version(void);
/* Hash of the derived CS -> X coefficient table. */
QD_API const char *qd_coefficient_table_hash(void);
QD_API const char *qd_last_error(void);
QD_API const char *qd_status_name(qd_status status);

/* States */
QD_API qd_status qd_state_create(const double *entries, double tol, qd_state **out);
QD_API void qd_state_destroy(qd_state *state);
QD_API qd_status qd_state_matrix(const qd_state *state, double *entries);
QD_API qd_status qd_state_entropy(const qd_state *state, qd_unit unit, double *out);
QD_API qd_status qd_state_mutual_information(const qd_state *state, qd_unit unit, double *out);
QD_API qd_status qd_state_is_cs(const qd_state *state, double tol, int *out);
QD_API qd_status qd_state_is_x(const qd_state *state, double tol, int *out);

/* CS <-> X similarity on arbitrary complex 4x4 matrices. inverse = 0 maps
 * CS -> X, otherwise X -> CS. */
QD_API qd_status qd_matrix_cs_to_x(const double *in, int inverse, double tol, double *out);

/* Discord. The piecewise path accepts X states directly and CS states via
 * the double Hadamard transform; other states give QD_ERR_NOT_X_OR_CS. */
QD_API qd_status qd_discord_piecewise(const qd_state *state, qd_unit unit, double tol, qd_discord_result *out);
QD_API void qd_oracle_default_options(qd_oracle_options *opts);
QD_API qd_status qd_discord_oracle(const qd_state *state, qd_unit unit, const qd_oracle_options *opts,
                                   qd_oracle_result *out);

/* Nanopore dynamics */
QD_API qd_status qd_nanopore_discord(int n, double beta, double alpha_t, qd_unit unit, qd_discord_result *out);
QD_API qd_status qd_nanopore_sweep(int n, double beta, double t_start, double t_end, int steps, qd_unit unit,
                                   int threads, qd_sweep **out);
QD_API size_t qd_sweep_size(const qd_sweep *sweep);
QD_API qd_status qd_sweep_record_at(const qd_sweep *sweep, size_t index, qd_sweep_record *out);
QD_API void qd_sweep_destroy(qd_sweep *sweep);
/* Writes up to capacity roots into roots; *count receives the total. */
QD_API qd_status qd_nanopore_crossings(int n, double beta, double lo, double hi, double *roots, size_t capacity,
                                       size_t *count);
QD_API qd_status qd_nanopore_limit(double beta, double *out);
/* harmonics + 1 entries are written (index 0 is the mean). */
QD_API qd_status qd_nanopore_spectrum(int n, double beta, int samples, int harmonics, int threads,
                                      qd_harmonic *out);

/* Self-test */
QD_API void qd_selftest_default_options(qd_selftest_options *opts);
QD_API qd_status qd_selftest_run(const qd_selftest_options *opts, qd_report **out);
QD_API size_t qd_report_size(const qd_report *report);
QD_API int qd_report_passed(const qd_report *report);
/* status: 0 pass, 1 fail, 2 skipped. Strings stay valid until destroy. */
QD_API qd_status qd_report_check(const qd_report *report, size_t index, int *id, const char **name, int *status,
                                 const char **detail, double *seconds, double *time_limit);
QD_API void qd_report_destroy(qd_report *report);

#ifdef __cplusplus
}
#endif

#endif /* QDISCORD_H */
