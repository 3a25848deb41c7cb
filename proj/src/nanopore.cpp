#include "qdiscord/nanopore.hpp"

#include "qdiscord/detail/minimize.hpp"

#include <algorithm>
#include <bit>
#include <thread>

namespace qdiscord::nanopore {

namespace {

// x^k as sign * exp(k ln|x|); keeps cos^{N-1} clean for N in the thousands.
double signed_power(double x, int k) {
  if (k == 0) return 1.0;
  if (x == 0.0) return 0.0;
  const double mag = std::exp(k * std::log(std::abs(x)));
  return (x < 0.0 && (k % 2 != 0)) ? -mag : mag;
}

double xlog2x(double x) { return xlogx(x) / kLn2; }

// Evaluates fn(k) for k in [0, count) into a vector, optionally on several
// threads; slot k always holds fn(k).
template <class T, class F>
std::vector<T> parallel_map(int count, int threads, F &&fn) {
  std::vector<T> out(static_cast<std::size_t>(std::max(count, 0)));
  threads = std::clamp(threads, 1, std::max(count, 1));
  if (threads == 1) {
    for (int k = 0; k < count; ++k) out[static_cast<std::size_t>(k)] = fn(k);
    return out;
  }
  std::vector<std::jthread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (int k = t; k < count; k += threads) out[static_cast<std::size_t>(k)] = fn(k);
    });
  return out;
}

std::vector<double> interior_grid(double lo, double hi, int points) {
  std::vector<double> t(static_cast<std::size_t>(points));
  const double h = (hi - lo) / (points + 1);
  for (int k = 0; k < points; ++k) t[static_cast<std::size_t>(k)] = lo + (k + 1) * h;
  return t;
}

// Bisection roots of fn at every strict sign change between consecutive
// samples.
template <class F>
std::vector<double> sign_change_roots(F &&fn, const std::vector<double> &t, const std::vector<double> &v,
                                      double tol) {
  std::vector<double> roots;
  for (std::size_t k = 0; k + 1 < t.size(); ++k) {
    if (v[k] == 0.0) {
      roots.push_back(t[k]);
      continue;
    }
    if ((v[k] < 0.0) != (v[k + 1] < 0.0) && v[k + 1] != 0.0) roots.push_back(detail::bisect_root(fn, t[k], t[k + 1], tol));
  }
  return roots;
}

}  // namespace

void validate(const NanoporeParams &p) {
  if (p.n < 2) throw Error(ErrorCode::invalid_argument, "nanopore needs at least two particles", p.n);
  if (!std::isfinite(p.beta) || p.beta < 0.0)
    throw Error(ErrorCode::invalid_argument, "beta must be finite and nonnegative", p.beta);
  if (!std::isfinite(p.alpha_t)) throw Error(ErrorCode::invalid_argument, "alpha_t must be finite", p.alpha_t);
}

NanoporeCorrelators correlators(const NanoporeParams &params) {
  validate(params);
  const auto &k = params.prefactors;
  const double th = std::tanh(0.5 * params.beta);
  const double c1 = std::cos(params.alpha_t);
  const double c2 = signed_power(std::cos(2.0 * params.alpha_t), params.n - 2);
  NanoporeCorrelators c;
  c.p = k.p * th * signed_power(c1, params.n - 1);
  c.q = k.q * th * th * (1.0 + c2);
  c.r = k.r * th * th * (1.0 - c2);
  c.u = k.u * th * signed_power(c1, params.n - 2) * std::sin(params.alpha_t);
  c.phi = -0.5 * std::atan2(2.0 * c.u, c.r);
  return c;
}

BlochCoefficients bloch_form(const NanoporeCorrelators &c) {
  BlochCoefficients b;
  b.local_a = {2.0 * c.p, 0.0, 0.0};
  b.local_b = {2.0 * c.p, 0.0, 0.0};
  b.correlations(0, 0) = 4.0 * c.q;
  b.correlations(1, 1) = 4.0 * c.r;
  b.correlations(1, 2) = 4.0 * c.u;
  b.correlations(2, 1) = 4.0 * c.u;
  return b;
}

NanoporeCorrelators correlators_from(const BlochCoefficients &b) {
  NanoporeCorrelators c;
  c.p = 0.25 * (b.local_a(0) + b.local_b(0));
  c.q = 0.25 * b.correlations(0, 0);
  c.r = 0.25 * b.correlations(1, 1);
  c.u = 0.125 * (b.correlations(1, 2) + b.correlations(2, 1));
  c.phi = -0.5 * std::atan2(2.0 * c.u, c.r);
  return c;
}

DensityMatrix4 pair_state(const NanoporeParams &params) {
  return DensityMatrix4::validate(bloch_matrix(bloch_form(correlators(params))), 1e-10);
}

CanonicalXState canonical_x_state(const NanoporeParams &params) {
  const auto c = correlators(params);
  CanonicalXState s;
  s.a = 0.25 + c.p + c.q;
  s.b = 0.25 - c.q;
  s.c = 0.25 - c.q;
  s.d = 0.25 - c.p + c.q;
  s.u = std::abs(2.0 * c.u * std::sin(2.0 * c.phi) - c.r * std::cos(2.0 * c.phi));
  s.v = c.r;
  return s;
}

double pair_entropy_bits(const NanoporeCorrelators &c) {
  const double rad = std::sqrt(c.p * c.p + c.r * c.r + 4.0 * c.u * c.u);
  return -xlog2x(0.25 + c.q + rad) - xlog2x(0.25 + c.q - rad) - xlog2x(0.25 - c.q + c.r) - xlog2x(0.25 - c.q - c.r);
}

double q0_bits(const NanoporeParams &params) {
  const auto c = correlators(params);
  return -pair_entropy_bits(c) - xlog2x(0.25 + c.p + c.q) - 2.0 * xlog2x(0.25 - c.q) - xlog2x(0.25 - c.p + c.q);
}

double q_pi2_bits(const NanoporeParams &params) {
  const auto c = correlators(params);
  const double outer = std::abs(2.0 * c.u * std::sin(2.0 * c.phi) - c.r * std::cos(2.0 * c.phi));
  const double rad = std::sqrt(c.p * c.p + (c.r + outer) * (c.r + outer));
  const double d1 = 0.5 * (1.0 + 2.0 * rad), d2 = 0.5 * (1.0 - 2.0 * rad);
  return -pair_entropy_bits(c) - xlog2x(0.5 + c.p) - xlog2x(0.5 - c.p) - xlog2x(d1) - xlog2x(d2);
}

DiscordResult discord_at(const NanoporeParams &params, EntropyUnit unit, const DiscordOptions &opts) {
  return discord(canonical_x_state(params), unit, opts);
}

std::vector<SweepRecord> sweep(const SweepRange &range, int threads) {
  if (range.steps < 2) throw Error(ErrorCode::invalid_argument, "sweep needs at least two steps", range.steps);
  const double h = (range.t_end - range.t_start) / (range.steps - 1);
  return parallel_map<SweepRecord>(range.steps, threads, [&](int k) {
    const double t = k == range.steps - 1 ? range.t_end : range.t_start + k * h;
    const auto r = discord_at({range.n, range.beta, t, range.prefactors}, range.unit);
    return SweepRecord{t, r.q0, r.q_pi2, r.q_theta, r.q_value, r.theta_opt};
  });
}

std::vector<double> find_branch_crossings(int n, double beta, double lo, double hi, const ScanOptions &opts,
                                          const CorrelatorPrefactors &pre) {
  if (!(hi > lo)) throw Error(ErrorCode::invalid_argument, "empty bracket");
  auto gap = [&](double t) {
    const NanoporeParams p{n, beta, t, pre};
    return q0_bits(p) - q_pi2_bits(p);
  };
  const auto t = interior_grid(lo, hi, opts.grid_points);
  std::vector<double> v(t.size());
  std::transform(t.begin(), t.end(), v.begin(), gap);
  return sign_change_roots(gap, t, v, opts.tol);
}

std::vector<Window> find_bifurcation_windows(const XFamily &family, double lo, double hi, const ScanOptions &opts) {
  if (!(hi > lo)) throw Error(ErrorCode::invalid_argument, "empty bracket");
  const auto t = interior_grid(lo, hi, opts.grid_points);
  const std::size_t m = t.size();

  auto curv0 = [&](double x) { return second_derivative_at_0(family(x)).value; };
  auto curv1 = [&](double x) { return second_derivative_at_pi2(family(x)).value; };
  auto gap = [&](double x) {
    const auto s = family(x);
    return q0(s) - q_pi2(s);
  };
  // Curvature at whichever endpoint currently holds the smaller branch.
  auto indicator = [&](double x) {
    const auto s = family(x);
    return q0(s) <= q_pi2(s) ? second_derivative_at_0(s).value : second_derivative_at_pi2(s).value;
  };

  std::vector<double> c0(m), c1(m), g(m), ind(m);
  for (std::size_t k = 0; k < m; ++k) {
    const auto s = family(t[k]);
    c0[k] = second_derivative_at_0(s).value;
    c1[k] = second_derivative_at_pi2(s).value;
    g[k] = q0(s) - q_pi2(s);
    ind[k] = g[k] <= 0.0 ? c0[k] : c1[k];
  }

  std::vector<Window> windows;
  for (std::size_t k = 0; k < m; ++k) {
    if (ind[k] >= 0.0) continue;
    std::size_t e = k;
    while (e + 1 < m && ind[e + 1] < 0.0) ++e;
    const double left = k == 0 ? lo : detail::bisect_root(indicator, t[k - 1], t[k], opts.tol);
    const double right = e + 1 == m ? hi : detail::bisect_root(indicator, t[e], t[e + 1], opts.tol);
    windows.push_back({left, right, false});
    k = e;
  }

  const auto roots0 = sign_change_roots(curv0, t, c0, opts.tol);
  const auto roots1 = sign_change_roots(curv1, t, c1, opts.tol);
  const double reach = 4.0 * (hi - lo) / (opts.grid_points + 1);
  auto nearest = [&](const std::vector<double> &roots, double x) -> std::optional<double> {
    std::optional<double> best;
    for (double r : roots)
      if (std::abs(r - x) <= reach && (!best || std::abs(r - x) < std::abs(*best - x))) best = r;
    return best;
  };
  for (double crossing : sign_change_roots(gap, t, g, opts.tol)) {
    const auto r0 = nearest(roots0, crossing);
    const auto r1 = nearest(roots1, crossing);
    if (!r0 || !r1) continue;
    windows.push_back({std::min({*r0, *r1, crossing}), std::max({*r0, *r1, crossing}), false});
  }

  std::sort(windows.begin(), windows.end(), [](const Window &a, const Window &b) { return a.lo < b.lo; });
  std::vector<Window> merged;
  for (const auto &w : windows) {
    if (!merged.empty() && w.lo <= merged.back().hi)
      merged.back().hi = std::max(merged.back().hi, w.hi);
    else
      merged.push_back(w);
  }
  for (auto &w : merged) w.degenerate = w.hi - w.lo < 1e-6;
  return merged;
}

std::vector<Window> find_bifurcation_windows(int n, double beta, double lo, double hi, const ScanOptions &opts) {
  return find_bifurcation_windows([n, beta](double t) { return canonical_x_state({n, beta, t}); }, lo, hi, opts);
}

double thermodynamic_limit_discord(double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw Error(ErrorCode::invalid_argument, "beta must be finite and nonnegative", beta);
  const double th = std::tanh(0.5 * beta);
  const double q = 0.125 * th * th;
  return 0.25 * (xlog2x(1.0 + 8.0 * q) + xlog2x(1.0 - 8.0 * q)) - 0.5 * xlog2x(1.0 + 4.0 * q) -
         0.5 * xlog2x(1.0 - 4.0 * q);
}

std::vector<Harmonic> flicker_spectrum(int n, double beta, int samples, int harmonics, int threads) {
  if (harmonics < 0 || samples < 4 * std::max(harmonics, 1) || !std::has_single_bit(static_cast<unsigned>(samples)))
    throw Error(ErrorCode::invalid_argument, "samples must be a power of two and at least 4 * harmonics", samples);
  const auto values = parallel_map<double>(samples, threads, [&](int k) {
    return discord_at({n, beta, kPi * k / samples}).q_value;
  });
  std::vector<Harmonic> out;
  out.reserve(static_cast<std::size_t>(harmonics) + 1);
  for (int h = 0; h <= harmonics; ++h) {
    double re = 0.0, im = 0.0;
    for (int k = 0; k < samples; ++k) {
      // Reduce h*k modulo samples before scaling to keep the angle exact.
      const double angle = 2.0 * kPi * static_cast<double>((static_cast<long long>(h) * k) % samples) / samples;
      re += values[static_cast<std::size_t>(k)] * std::cos(angle);
      im -= values[static_cast<std::size_t>(k)] * std::sin(angle);
    }
    Harmonic hm;
    hm.index = h;
    if (h == 0) {
      hm.cos_coeff = re / samples;
      hm.amplitude = hm.cos_coeff;
    } else {
      hm.cos_coeff = 2.0 * re / samples;
      hm.sin_coeff = -2.0 * im / samples;
      hm.amplitude = std::hypot(hm.cos_coeff, hm.sin_coeff);
    }
    out.push_back(hm);
  }
  return out;
}

}  // namespace qdiscord::nanopore
