#include "qdiscord/qdiscord.h"

#include "qdiscord/cs_x.hpp"
#include "qdiscord/nanopore.hpp"
#include "qdiscord/oracle.hpp"
#include "qdiscord/selftest.hpp"

#include <new>
#include <string>

using namespace qdiscord;

struct qd_state {
  DensityMatrix4 rho;
};

struct qd_sweep {
  std::vector<nanopore::SweepRecord> records;
};

struct qd_report {
  selftest::Report report;
};

namespace {

thread_local std::string g_last_error;

qd_status to_status(ErrorCode code) {
  switch (code) {
  case ErrorCode::not_hermitian: return QD_ERR_NOT_HERMITIAN;
  case ErrorCode::trace_not_one: return QD_ERR_TRACE_NOT_ONE;
  case ErrorCode::not_psd: return QD_ERR_NOT_PSD;
  case ErrorCode::not_unitary: return QD_ERR_NOT_UNITARY;
  case ErrorCode::not_cs: return QD_ERR_NOT_CS;
  case ErrorCode::not_x: return QD_ERR_NOT_X;
  case ErrorCode::invalid_x_state: return QD_ERR_INVALID_X_STATE;
  case ErrorCode::too_large: return QD_ERR_TOO_LARGE;
  case ErrorCode::no_sign_change: return QD_ERR_NO_SIGN_CHANGE;
  case ErrorCode::invalid_argument: return QD_ERR_INVALID_ARGUMENT;
  }
  return QD_ERR_INTERNAL;
}

qd_status fail(qd_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

template <class F>
qd_status guarded(F &&body) {
  g_last_error.clear();
  try {
    return body();
  } catch (const Error &e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc &) {
    return fail(QD_ERR_INTERNAL, "out of memory");
  } catch (const std::exception &e) {
    return fail(QD_ERR_INTERNAL, e.what());
  }
}

Matrix4c read_matrix(const double *entries) {
  Matrix4c m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = Complex(entries[8 * i + 2 * j], entries[8 * i + 2 * j + 1]);
  return m;
}

void write_matrix(const Matrix4c &m, double *out) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      out[8 * i + 2 * j] = m(i, j).real();
      out[8 * i + 2 * j + 1] = m(i, j).imag();
    }
}

EntropyUnit to_unit(qd_unit u) { return u == QD_BITS ? EntropyUnit::bits : EntropyUnit::nats; }

qd_branch to_branch(Branch b) {
  switch (b) {
  case Branch::q0: return QD_BRANCH_Q0;
  case Branch::q_theta: return QD_BRANCH_QTHETA;
  case Branch::q_pi2: return QD_BRANCH_QPI2;
  }
  return QD_BRANCH_Q0;
}

void fill(const DiscordResult &r, qd_unit unit, qd_discord_result *out) {
  out->q_value = r.q_value;
  out->branch = to_branch(r.branch);
  out->theta_opt = r.theta_opt;
  out->unit = unit;
  out->q0 = r.q0;
  out->q_pi2 = r.q_pi2;
  out->has_q_theta = r.q_theta.has_value() ? 1 : 0;
  out->q_theta = r.q_theta.value_or(0.0);
}

#define QD_REQUIRE(ptr)                                                                   \
  do {                                                                                    \
    if (!(ptr)) return fail(QD_ERR_INVALID_ARGUMENT, "null argument: " #ptr);             \
  } while (0)

}  // namespace

extern "C" {

const char *qd_version(void) { return QDISCORD_VERSION; }

const char *qd_coefficient_table_hash(void) {
  static const std::string hash = cs_to_x_table_hash();
  return hash.c_str();
}

const char *qd_last_error(void) { return g_last_error.c_str(); }

const char *qd_status_name(qd_status status) {
  switch (status) {
  case QD_OK: return "OK";
  case QD_ERR_NOT_HERMITIAN: return "NotHermitian";
  case QD_ERR_TRACE_NOT_ONE: return "TraceNotOne";
  case QD_ERR_NOT_PSD: return "NotPSD";
  case QD_ERR_NOT_UNITARY: return "NotUnitary";
  case QD_ERR_NOT_CS: return "NotCS";
  case QD_ERR_NOT_X: return "NotX";
  case QD_ERR_INVALID_X_STATE: return "InvalidXState";
  case QD_ERR_TOO_LARGE: return "TooLarge";
  case QD_ERR_NO_SIGN_CHANGE: return "NoSignChange";
  case QD_ERR_INVALID_ARGUMENT: return "InvalidArgument";
  case QD_ERR_BUFFER_TOO_SMALL: return "BufferTooSmall";
  case QD_ERR_NOT_X_OR_CS: return "NotXOrCS";
  case QD_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

qd_status qd_state_create(const double *entries, double tol, qd_state **out) {
  QD_REQUIRE(entries);
  QD_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    *out = new qd_state{DensityMatrix4::validate(read_matrix(entries), tol)};
    return QD_OK;
  });
}

void qd_state_destroy(qd_state *state) { delete state; }

qd_status qd_state_matrix(const qd_state *state, double *entries) {
  QD_REQUIRE(state);
  QD_REQUIRE(entries);
  write_matrix(state->rho.matrix(), entries);
  return QD_OK;
}

qd_status qd_state_entropy(const qd_state *state, qd_unit unit, double *out) {
  QD_REQUIRE(state);
  QD_REQUIRE(out);
  return guarded([&] {
    *out = von_neumann_entropy(state->rho, to_unit(unit));
    return QD_OK;
  });
}

qd_status qd_state_mutual_information(const qd_state *state, qd_unit unit, double *out) {
  QD_REQUIRE(state);
  QD_REQUIRE(out);
  return guarded([&] {
    *out = mutual_information(state->rho, to_unit(unit));
    return QD_OK;
  });
}

qd_status qd_state_is_cs(const qd_state *state, double tol, int *out) {
  QD_REQUIRE(state);
  QD_REQUIRE(out);
  *out = is_cs(state->rho.matrix(), tol) ? 1 : 0;
  return QD_OK;
}

qd_status qd_state_is_x(const qd_state *state, double tol, int *out) {
  QD_REQUIRE(state);
  QD_REQUIRE(out);
  *out = is_x(state->rho.matrix(), tol) ? 1 : 0;
  return QD_OK;
}

qd_status qd_matrix_cs_to_x(const double *in, int inverse, double tol, double *out) {
  QD_REQUIRE(in);
  QD_REQUIRE(out);
  return guarded([&] {
    const Matrix4c m = read_matrix(in);
    write_matrix(inverse ? x_to_cs(m, tol) : cs_to_x(m, tol), out);
    return QD_OK;
  });
}

qd_status qd_discord_piecewise(const qd_state *state, qd_unit unit, double tol, qd_discord_result *out) {
  QD_REQUIRE(state);
  QD_REQUIRE(out);
  return guarded([&] {
    const DensityMatrix4 *x = &state->rho;
    std::optional<DensityMatrix4> transformed;
    if (!is_x(state->rho.matrix(), tol)) {
      if (!is_cs(state->rho.matrix(), tol))
        return fail(QD_ERR_NOT_X_OR_CS, "piecewise discord needs an X or centrosymmetric state; use the oracle");
      transformed = cs_to_x(state->rho, tol);
      x = &*transformed;
    }
    fill(discord(canonicalize(x_state_from(*x, std::max(tol, 1e-12)), std::max(tol, 1e-12)), to_unit(unit)), unit,
         out);
    return QD_OK;
  });
}

void qd_oracle_default_options(qd_oracle_options *opts) {
  if (!opts) return;
  const oracle::GridOptions d;
  opts->n_theta = d.n_theta;
  opts->n_phi = d.n_phi;
  opts->refine = d.refine ? 1 : 0;
  opts->threads = d.threads;
}

qd_status qd_discord_oracle(const qd_state *state, qd_unit unit, const qd_oracle_options *opts,
                            qd_oracle_result *out) {
  QD_REQUIRE(state);
  QD_REQUIRE(out);
  return guarded([&] {
    oracle::GridOptions g;
    if (opts) g = {opts->n_theta, opts->n_phi, opts->refine != 0, opts->threads};
    const auto r = oracle::discord(state->rho, to_unit(unit), g);
    out->q_value = r.q_value;
    out->conditional_entropy = r.conditional_entropy;
    out->theta = r.best.theta;
    out->phi = r.best.phi;
    out->unit = unit;
    return QD_OK;
  });
}

qd_status qd_nanopore_discord(int n, double beta, double alpha_t, qd_unit unit, qd_discord_result *out) {
  QD_REQUIRE(out);
  return guarded([&] {
    fill(nanopore::discord_at({n, beta, alpha_t}, to_unit(unit)), unit, out);
    return QD_OK;
  });
}

qd_status qd_nanopore_sweep(int n, double beta, double t_start, double t_end, int steps, qd_unit unit, int threads,
                            qd_sweep **out) {
  QD_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    nanopore::SweepRange range;
    range.n = n;
    range.beta = beta;
    range.t_start = t_start;
    range.t_end = t_end;
    range.steps = steps;
    range.unit = to_unit(unit);
    *out = new qd_sweep{nanopore::sweep(range, threads)};
    return QD_OK;
  });
}

size_t qd_sweep_size(const qd_sweep *sweep) { return sweep ? sweep->records.size() : 0; }

qd_status qd_sweep_record_at(const qd_sweep *sweep, size_t index, qd_sweep_record *out) {
  QD_REQUIRE(sweep);
  QD_REQUIRE(out);
  if (index >= sweep->records.size()) return fail(QD_ERR_INVALID_ARGUMENT, "sweep index out of range");
  const auto &r = sweep->records[index];
  *out = {r.alpha_t, r.q0, r.q_pi2, r.q_theta.has_value() ? 1 : 0, r.q_theta.value_or(0.0), r.q, r.theta_opt};
  return QD_OK;
}

void qd_sweep_destroy(qd_sweep *sweep) { delete sweep; }

qd_status qd_nanopore_crossings(int n, double beta, double lo, double hi, double *roots, size_t capacity,
                                size_t *count) {
  QD_REQUIRE(count);
  return guarded([&] {
    nanopore::validate({n, beta, 0.0});
    const auto r = nanopore::find_branch_crossings(n, beta, lo, hi);
    *count = r.size();
    if (r.size() > capacity || (!roots && !r.empty()))
      return fail(QD_ERR_BUFFER_TOO_SMALL, "root buffer too small");
    std::copy(r.begin(), r.end(), roots);
    return QD_OK;
  });
}

qd_status qd_nanopore_limit(double beta, double *out) {
  QD_REQUIRE(out);
  return guarded([&] {
    *out = nanopore::thermodynamic_limit_discord(beta);
    return QD_OK;
  });
}

qd_status qd_nanopore_spectrum(int n, double beta, int samples, int harmonics, int threads, qd_harmonic *out) {
  QD_REQUIRE(out);
  return guarded([&] {
    const auto spec = nanopore::flicker_spectrum(n, beta, samples, harmonics, threads);
    for (std::size_t k = 0; k < spec.size(); ++k)
      out[k] = {spec[k].index, spec[k].amplitude, spec[k].cos_coeff, spec[k].sin_coeff};
    return QD_OK;
  });
}

void qd_selftest_default_options(qd_selftest_options *opts) {
  if (!opts) return;
  const selftest::Options d;
  opts->seed = d.seed;
  opts->threads = d.threads;
  opts->oracle_enabled = d.oracle_enabled ? 1 : 0;
  opts->p_prefactor_scale = 1.0;
}

qd_status qd_selftest_run(const qd_selftest_options *opts, qd_report **out) {
  QD_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    selftest::Options o;
    if (opts) {
      o.seed = opts->seed;
      o.threads = opts->threads;
      o.oracle_enabled = opts->oracle_enabled != 0;
      o.prefactors.p *= opts->p_prefactor_scale;
    }
    *out = new qd_report{selftest::run(o)};
    return QD_OK;
  });
}

size_t qd_report_size(const qd_report *report) { return report ? report->report.checks.size() : 0; }

int qd_report_passed(const qd_report *report) { return report && report->report.ok() ? 1 : 0; }

qd_status qd_report_check(const qd_report *report, size_t index, int *id, const char **name, int *status,
                          const char **detail, double *seconds, double *time_limit) {
  QD_REQUIRE(report);
  if (index >= report->report.checks.size()) return fail(QD_ERR_INVALID_ARGUMENT, "check index out of range");
  const auto &c = report->report.checks[index];
  if (id) *id = c.id;
  if (name) *name = c.name.c_str();
  if (status) *status = static_cast<int>(c.status);
  if (detail) *detail = c.detail.c_str();
  if (seconds) *seconds = c.seconds;
  if (time_limit) *time_limit = c.time_limit;
  return QD_OK;
}

void qd_report_destroy(qd_report *report) { delete report; }

}  // extern "C"
