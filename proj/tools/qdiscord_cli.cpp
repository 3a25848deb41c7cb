// qdiscord command-line front end. Talks to the library only through the
// C API in qdiscord/qdiscord.h.

#include "qdiscord/qdiscord.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

struct Config {
  std::string units = "bits";
  double tol = 1e-10;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct StateDeleter {
  void operator()(qd_state *s) const { qd_state_destroy(s); }
};
using StatePtr = std::unique_ptr<qd_state, StateDeleter>;

class DomainError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

[[noreturn]] void raise(qd_status s) {
  throw DomainError(std::string(qd_status_name(s)) + ": " + qd_last_error());
}

void check(qd_status s) {
  if (s != QD_OK) raise(s);
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

qd_unit unit_of(const Config &c) { return c.units == "nats" ? QD_NATS : QD_BITS; }

std::vector<double> read_matrix_json(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception &e) {
    throw DomainError("malformed JSON in " + path + ": " + e.what());
  }
  const auto &m = doc.contains("matrix") ? doc.at("matrix") : json();
  if (!m.is_array() || m.size() != 4) throw DomainError("\"matrix\" must be a 4x4 array of [re, im] pairs");
  std::vector<double> entries(32);
  for (int i = 0; i < 4; ++i) {
    if (!m[i].is_array() || m[i].size() != 4) throw DomainError("\"matrix\" must be a 4x4 array of [re, im] pairs");
    for (int j = 0; j < 4; ++j) {
      const auto &z = m[i][j];
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
        throw DomainError("matrix entries must be [re, im] number pairs");
      entries[8 * i + 2 * j] = z[0].get<double>();
      entries[8 * i + 2 * j + 1] = z[1].get<double>();
    }
  }
  return entries;
}

StatePtr load_state(const std::string &path, const Config &cfg) {
  const auto entries = read_matrix_json(path);
  qd_state *raw = nullptr;
  check(qd_state_create(entries.data(), cfg.tol, &raw));
  return StatePtr(raw);
}

json matrix_json(const double *entries) {
  json m = json::array();
  for (int i = 0; i < 4; ++i) {
    json row = json::array();
    for (int j = 0; j < 4; ++j) row.push_back({entries[8 * i + 2 * j], entries[8 * i + 2 * j + 1]});
    m.push_back(row);
  }
  return {{"matrix", m}};
}

const char *branch_name(qd_branch b) {
  switch (b) {
  case QD_BRANCH_Q0: return "Q0";
  case QD_BRANCH_QTHETA: return "Qtheta";
  case QD_BRANCH_QPI2: return "Qpi2";
  }
  return "?";
}

int cmd_discord(const Config &cfg, const std::string &input, const std::string &method) {
  const auto state = load_state(input, cfg);
  json out;
  if (method == "oracle") {
    qd_oracle_options opts;
    qd_oracle_default_options(&opts);
    opts.threads = cfg.threads;
    qd_oracle_result r;
    check(qd_discord_oracle(state.get(), unit_of(cfg), &opts, &r));
    out = {{"q_value", r.q_value},     {"method", "oracle"}, {"theta_opt", r.theta}, {"phi_opt", r.phi},
           {"conditional_entropy", r.conditional_entropy}, {"unit", cfg.units}};
  } else {
    qd_discord_result r;
    check(qd_discord_piecewise(state.get(), unit_of(cfg), cfg.tol, &r));
    out = {{"q_value", r.q_value}, {"branch", branch_name(r.branch)}, {"theta_opt", r.theta_opt},
           {"unit", cfg.units},    {"q0", r.q0},                      {"q_pi2", r.q_pi2},
           {"q_theta", r.has_q_theta ? json(r.q_theta) : json(nullptr)}, {"method", "piecewise"}};
  }
  std::cout << out.dump() << '\n';
  return kExitOk;
}

int cmd_cs2x(const Config &cfg, const std::string &input, bool inverse) {
  const auto state = load_state(input, cfg);
  std::vector<double> in(32), out(32);
  check(qd_state_matrix(state.get(), in.data()));
  check(qd_matrix_cs_to_x(in.data(), inverse ? 1 : 0, cfg.tol, out.data()));
  std::cout << matrix_json(out.data()).dump() << '\n';
  return kExitOk;
}

int cmd_nanopore(const Config &cfg, int n, double beta, double t0, double t1, int steps, const std::string &path) {
  qd_sweep *raw = nullptr;
  check(qd_nanopore_sweep(n, beta, t0, t1, steps, unit_of(cfg), cfg.threads, &raw));
  std::unique_ptr<qd_sweep, void (*)(qd_sweep *)> sweep(raw, qd_sweep_destroy);

  std::ofstream file;
  std::ostream *os = &std::cout;
  if (!path.empty() && path != "-") {
    file.open(path);
    if (!file) throw DomainError("cannot write " + path);
    os = &file;
  }
  const std::string u = cfg.units;
  *os << "alpha_t,q0_" << u << ",q_pi2_" << u << ",q_theta_" << u << ",q_" << u << ",theta_opt\n";
  for (size_t k = 0; k < qd_sweep_size(sweep.get()); ++k) {
    qd_sweep_record r;
    check(qd_sweep_record_at(sweep.get(), k, &r));
    // Without an interior minimum the theta branch is reported as the
    // endpoint minimum it degenerates to.
    const double q_theta = r.has_q_theta ? r.q_theta : std::min(r.q0, r.q_pi2);
    *os << num(r.alpha_t) << ',' << num(r.q0) << ',' << num(r.q_pi2) << ',' << num(q_theta) << ',' << num(r.q) << ','
        << num(r.theta_opt) << '\n';
  }
  return kExitOk;
}

int cmd_crossings(int n, double beta, double t_min, double t_max) {
  size_t count = 0;
  qd_status s = qd_nanopore_crossings(n, beta, t_min, t_max, nullptr, 0, &count);
  std::vector<double> roots(count);
  if (s == QD_ERR_BUFFER_TOO_SMALL) s = qd_nanopore_crossings(n, beta, t_min, t_max, roots.data(), count, &count);
  check(s);
  std::cout << json(roots).dump() << '\n';
  if (roots.empty()) {
    std::cerr << "qdiscord: no sign change of Q0 - Qpi2 on the bracket\n";
    return kExitDomain;
  }
  return kExitOk;
}

int cmd_limit(double beta) {
  double q = 0.0;
  check(qd_nanopore_limit(beta, &q));
  std::cout << num(q) << '\n';
  return kExitOk;
}

int cmd_spectrum(const Config &cfg, int n, double beta, int samples, int harmonics) {
  std::vector<qd_harmonic> out(static_cast<size_t>(std::max(harmonics, 0)) + 1);
  check(qd_nanopore_spectrum(n, beta, samples, harmonics, cfg.threads, out.data()));
  std::cout << "harmonic,amplitude\n";
  for (const auto &h : out) std::cout << h.index << ',' << num(h.amplitude) << '\n';
  return kExitOk;
}

int cmd_selftest(const Config &cfg, bool no_oracle, double perturb_p) {
  qd_selftest_options opts;
  qd_selftest_default_options(&opts);
  if (cfg.seed != 0) opts.seed = cfg.seed;
  opts.threads = cfg.threads;
  opts.oracle_enabled = no_oracle ? 0 : 1;
  opts.p_prefactor_scale = perturb_p;
  qd_report *raw = nullptr;
  check(qd_selftest_run(&opts, &raw));
  std::unique_ptr<qd_report, void (*)(qd_report *)> report(raw, qd_report_destroy);
  static const char *labels[] = {"PASS", "FAIL", "SKIP"};
  for (size_t k = 0; k < qd_report_size(report.get()); ++k) {
    int id = 0, status = 1;
    const char *name = nullptr, *detail = nullptr;
    double seconds = 0.0, limit = 0.0;
    check(qd_report_check(report.get(), k, &id, &name, &status, &detail, &seconds, &limit));
    std::printf("[%s] %2d %-26s %7.3fs / %5.0fs  %s\n", labels[status], id, name, seconds, limit, detail);
  }
  const bool ok = qd_report_passed(report.get()) != 0;
  std::printf("%s\n", ok ? "selftest: all checks passed" : "selftest: FAILED");
  return ok ? kExitOk : kExitDomain;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Quantum discord of two-qubit X and centrosymmetric states; nanopore NMR dynamics"};
  app.require_subcommand(0, 1);
  app.fallthrough();

  Config cfg;
  app.add_option("--units", cfg.units, "Entropy unit")->check(CLI::IsMember({"bits", "nats"}));
  app.add_option("--tol", cfg.tol, "Density-matrix validation tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "Seed for randomized checks (0 keeps the default)");
  app.add_option("--threads", cfg.threads, "Worker threads for sweeps and the oracle")->check(CLI::Range(1, 256));
  bool show_version = false;
  app.add_flag("--version", show_version, "Print version and coefficient-table hash");

  std::string input, method = "piecewise";
  auto *discord = app.add_subcommand("discord", "Discord of a state read from JSON");
  discord->add_option("--input", input, "State file {\"matrix\": [[[re,im] x4] x4]}")->required();
  discord->add_option("--method", method, "piecewise or oracle")->check(CLI::IsMember({"piecewise", "oracle"}));

  bool inverse = false;
  auto *cs2x = app.add_subcommand("cs2x", "Double Hadamard transform CS -> X (or back)");
  cs2x->add_option("--input", input, "State file")->required();
  cs2x->add_flag("--inverse", inverse, "Map X -> CS");

  int n = 10, steps = 1000, samples = 1024, harmonics = 16;
  double beta = 1.0, t_start = 0.0, t_end = 3.141592653589793, t_min = 0.0, t_max = 3.141592653589793;
  std::string out_path;
  auto *nano = app.add_subcommand("nanopore", "Discord sweep over alpha*t, written as CSV");
  nano->add_option("--N", n, "Number of particles")->check(CLI::Range(2, 1 << 30));
  nano->add_option("--beta", beta, "Inverse dimensionless temperature");
  nano->add_option("--t-start", t_start, "First alpha*t");
  nano->add_option("--t-end", t_end, "Last alpha*t");
  nano->add_option("--steps", steps, "Number of samples")->check(CLI::Range(2, 100000000));
  nano->add_option("--out", out_path, "CSV path (default standard output)");

  auto *cross = app.add_subcommand("nanopore-crossings", "Roots of Q0 - Qpi2 in alpha*t");
  cross->add_option("--N", n, "Number of particles")->check(CLI::Range(2, 1 << 30));
  cross->add_option("--beta", beta, "Inverse dimensionless temperature");
  cross->add_option("--t-min", t_min, "Lower end of the bracket");
  cross->add_option("--t-max", t_max, "Upper end of the bracket");

  auto *limit = app.add_subcommand("nanopore-limit", "Thermodynamic-limit discord plateau (bits)");
  limit->add_option("--beta", beta, "Inverse dimensionless temperature");

  auto *spectrum = app.add_subcommand("nanopore-spectrum", "Flickering spectrum of Q(alpha*t)");
  spectrum->add_option("--N", n, "Number of particles")->check(CLI::Range(2, 1 << 30));
  spectrum->add_option("--beta", beta, "Inverse dimensionless temperature");
  spectrum->add_option("--samples", samples, "Samples per period (power of two)");
  spectrum->add_option("--harmonics", harmonics, "Highest harmonic reported");

  bool no_oracle = false;
  double perturb_p = 1.0;
  auto *selftest = app.add_subcommand("selftest", "Run the verification suite");
  selftest->add_flag("--no-oracle", no_oracle, "Skip the oracle-backed checks");
  selftest->add_option("--perturb-p", perturb_p, "Scale the p correlator prefactor (fault injection)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitUsage;
  }

  if (show_version) {
    std::cout << "qdiscord " << qd_version() << " cs2x-table " << qd_coefficient_table_hash() << '\n';
    return kExitOk;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return kExitUsage;
  }
  const auto *sub = app.get_subcommands().front();
  std::cerr << "qdiscord: command=" << sub->get_name() << " units=" << cfg.units << " tol=" << cfg.tol
            << " seed=" << cfg.seed << " threads=" << cfg.threads;
  if (sub == discord || sub == cs2x) std::cerr << " input=" << input;
  if (sub == discord) std::cerr << " method=" << method;
  if (sub == nano || sub == cross || sub == spectrum) std::cerr << " N=" << n;
  if (sub != discord && sub != cs2x && sub != selftest) std::cerr << " beta=" << beta;
  if (sub == nano) std::cerr << " t-start=" << t_start << " t-end=" << t_end << " steps=" << steps;
  if (sub == cross) std::cerr << " t-min=" << t_min << " t-max=" << t_max;
  if (sub == spectrum) std::cerr << " samples=" << samples << " harmonics=" << harmonics;
  std::cerr << '\n';

  try {
    if (sub == discord) return cmd_discord(cfg, input, method);
    if (sub == cs2x) return cmd_cs2x(cfg, input, inverse);
    if (sub == nano) return cmd_nanopore(cfg, n, beta, t_start, t_end, steps, out_path);
    if (sub == cross) return cmd_crossings(n, beta, t_min, t_max);
    if (sub == limit) return cmd_limit(beta);
    if (sub == spectrum) return cmd_spectrum(cfg, n, beta, samples, harmonics);
    if (sub == selftest) return cmd_selftest(cfg, no_oracle, perturb_p);
  } catch (const DomainError &e) {
    std::cerr << "qdiscord: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}
