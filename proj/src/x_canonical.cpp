#include "qdiscord/x_canonical.hpp"

#include "qdiscord/cs_x.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace qdiscord {

namespace {

void check_bounds(double a, double b, double c, double d, double outer2, double inner2, double tol) {
  std::vector<Violation> v;
  const double trace_err = std::abs(a + b + c + d - 1.0);
  if (trace_err > tol) v.push_back({ErrorCode::trace_not_one, trace_err});
  const double neg = -std::min({a, b, c, d});
  if (neg > tol) v.push_back({ErrorCode::not_psd, neg});
  if (outer2 - a * d > tol) v.push_back({ErrorCode::not_psd, outer2 - a * d});
  if (inner2 - b * c > tol) v.push_back({ErrorCode::not_psd, inner2 - b * c});
  if (v.empty()) return;
  std::ostringstream os;
  os << "invalid X state:";
  for (const auto &x : v) os << ' ' << to_string(x.code) << '(' << x.magnitude << ')';
  v.insert(v.begin(), {ErrorCode::invalid_x_state, v.front().magnitude});
  throw Error(std::move(v), os.str());
}

Matrix2c z_rotation(double angle) {
  Matrix2c r = Matrix2c::Zero();
  r(0, 0) = std::polar(1.0, -angle / 2.0);
  r(1, 1) = std::polar(1.0, angle / 2.0);
  return r;
}

}  // namespace

void validate(const XState &x, double tol) {
  check_bounds(x.a, x.b, x.c, x.d, x.u1 * x.u1 + x.u2 * x.u2, x.v1 * x.v1 + x.v2 * x.v2, tol);
}

void validate(const CanonicalXState &x, double tol) {
  if (x.u < 0.0 || x.v < 0.0)
    throw Error(ErrorCode::invalid_x_state, "canonical coherences must be nonnegative", std::min(x.u, x.v));
  check_bounds(x.a, x.b, x.c, x.d, x.u * x.u, x.v * x.v, tol);
}

CanonicalXState canonicalize(const XState &x, double tol) {
  validate(x, tol);
  CanonicalXState out;
  out.a = x.a;
  out.b = x.b;
  out.c = x.c;
  out.d = x.d;
  out.u = std::hypot(x.u1, x.u2);
  out.v = std::hypot(x.v1, x.v2);

  const bool outer_real = x.u2 == 0.0 && x.u1 >= 0.0;
  const bool inner_real = x.v2 == 0.0 && x.v1 >= 0.0;
  if (outer_real && inner_real) return out;

  const double outer_phase = out.u > 0.0 ? std::atan2(x.u2, x.u1) : 0.0;
  const double inner_phase = out.v > 0.0 ? std::atan2(x.v2, x.v1) : 0.0;
  const double alpha = 0.5 * (outer_phase + inner_phase);
  const double gamma = 0.5 * (outer_phase - inner_phase);
  out.applied.push_back({z_rotation(alpha), z_rotation(gamma)});
  return out;
}

XState x_state_from(const DensityMatrix4 &rho, double tol) {
  const Matrix4c &m = rho.matrix();
  if (const double dev = x_deviation(m); dev > tol)
    throw Error(ErrorCode::not_x, "state does not have X structure", dev);
  XState x;
  x.a = m(0, 0).real();
  x.b = m(1, 1).real();
  x.c = m(2, 2).real();
  x.d = m(3, 3).real();
  x.u1 = m(0, 3).real();
  x.u2 = m(0, 3).imag();
  x.v1 = m(1, 2).real();
  x.v2 = m(1, 2).imag();
  return x;
}

Matrix4c x_matrix(const XState &x) {
  Matrix4c m = Matrix4c::Zero();
  m(0, 0) = x.a;
  m(1, 1) = x.b;
  m(2, 2) = x.c;
  m(3, 3) = x.d;
  m(0, 3) = Complex(x.u1, x.u2);
  m(3, 0) = Complex(x.u1, -x.u2);
  m(1, 2) = Complex(x.v1, x.v2);
  m(2, 1) = Complex(x.v1, -x.v2);
  return m;
}

Matrix4c x_matrix(const CanonicalXState &x) {
  return x_matrix(XState{x.a, x.b, x.c, x.d, x.u, 0.0, x.v, 0.0});
}

DensityMatrix4 embed(const XState &x, double tol) {
  validate(x, tol);
  return DensityMatrix4::validate(x_matrix(x), tol);
}

DensityMatrix4 embed(const CanonicalXState &x, double tol) {
  validate(x, tol);
  return DensityMatrix4::validate(x_matrix(x), tol);
}

XState sample_random_xstate(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::array<double, 3> cuts{unit(rng), unit(rng), unit(rng)};
  std::sort(cuts.begin(), cuts.end());
  XState x;
  x.a = cuts[0];
  x.b = cuts[1] - cuts[0];
  x.c = cuts[2] - cuts[1];
  x.d = 1.0 - cuts[2];
  auto disk = [&](double radius, double &re, double &im) {
    const double rho = radius * std::sqrt(unit(rng));
    const double phase = 2.0 * kPi * unit(rng);
    re = rho * std::cos(phase);
    im = rho * std::sin(phase);
  };
  disk(std::sqrt(x.a * x.d), x.u1, x.u2);
  disk(std::sqrt(x.b * x.c), x.v1, x.v2);
  return x;
}

}  // namespace qdiscord
