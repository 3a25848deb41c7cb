#include "qdiscord/density.hpp"

#include <Eigen/Eigenvalues>

#include <sstream>

namespace qdiscord {

namespace {

template <class M>
std::vector<Violation> check_state(const M &m, double tol, double *min_eig) {
  std::vector<Violation> out;
  const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol) out.push_back({ErrorCode::not_hermitian, herm});
  const double trace_err = std::abs(m.trace() - Complex(1.0, 0.0));
  if (trace_err > tol) out.push_back({ErrorCode::trace_not_one, trace_err});
  // Eigenvalues of the Hermitian part; a non-Hermitian input has already
  // been reported above.
  const M h = (m + m.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<M> es(h, Eigen::EigenvaluesOnly);
  *min_eig = es.eigenvalues().minCoeff();
  if (*min_eig < -tol) out.push_back({ErrorCode::not_psd, -*min_eig});
  return out;
}

std::string describe(const std::vector<Violation> &v) {
  std::ostringstream os;
  os.precision(3);
  os << "invalid density matrix:";
  for (const auto &x : v) os << ' ' << to_string(x.code) << "(" << std::scientific << x.magnitude << ")";
  return os.str();
}

template <int N>
Eigen::Matrix<double, N, 1> clamped_eigenvalues(const Eigen::Matrix<Complex, N, N> &m) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Complex, N, N>> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseMax(0.0);
}

}  // namespace

Matrix2c pauli(int index) {
  using namespace std::complex_literals;
  Matrix2c m;
  switch (index) {
  case 0: m << 1.0, 0.0, 0.0, 1.0; break;
  case 1: m << 0.0, 1.0, 1.0, 0.0; break;
  case 2: m << 0.0, -1i, 1i, 0.0; break;
  case 3: m << 1.0, 0.0, 0.0, -1.0; break;
  default: throw Error(ErrorCode::invalid_argument, "pauli index out of range");
  }
  return m;
}

DensityMatrix2 DensityMatrix2::validate(const Matrix2c &entries, double tol) {
  double min_eig = 0.0;
  auto v = check_state(entries, tol, &min_eig);
  if (!v.empty()) {
    const std::string msg = describe(v);
    throw Error(std::move(v), msg);
  }
  return DensityMatrix2(entries);
}

Eigen::Vector2d DensityMatrix2::eigenvalues() const { return clamped_eigenvalues<2>(m_); }

Vector3d DensityMatrix2::bloch_vector() const {
  Vector3d r;
  for (int k = 1; k <= 3; ++k) r(k - 1) = (m_ * pauli(k)).trace().real();
  return r;
}

DensityMatrix4 DensityMatrix4::validate(const Matrix4c &entries, double tol) {
  double min_eig = 0.0;
  auto v = check_state(entries, tol, &min_eig);
  if (!v.empty()) {
    const std::string msg = describe(v);
    throw Error(std::move(v), msg);
  }
  return DensityMatrix4(entries);
}

DensityMatrix4 DensityMatrix4::maximally_mixed() { return DensityMatrix4(Matrix4c::Identity() * 0.25); }

Eigen::Vector4d DensityMatrix4::eigenvalues() const { return clamped_eigenvalues<4>(m_); }

double shannon_nats(std::span<const double> weights) noexcept {
  double s = 0.0;
  for (double w : weights) s -= xlogx(w);
  return s;
}

double von_neumann_entropy(const DensityMatrix4 &rho, EntropyUnit unit) {
  const Eigen::Vector4d ev = rho.eigenvalues();
  return from_nats(shannon_nats({ev.data(), 4}), unit);
}

double von_neumann_entropy(const DensityMatrix2 &rho, EntropyUnit unit) {
  const Eigen::Vector2d ev = rho.eigenvalues();
  return from_nats(shannon_nats({ev.data(), 2}), unit);
}

DensityMatrix2 partial_trace(const DensityMatrix4 &rho, Subsystem keep) {
  const Matrix4c &m = rho.matrix();
  Matrix2c r = Matrix2c::Zero();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        r(i, j) += keep == Subsystem::A ? m(2 * i + k, 2 * j + k) : m(2 * k + i, 2 * k + j);
  // Partial trace of a valid state is valid; the loose tolerance only
  // absorbs rounding.
  return DensityMatrix2::validate(r, 1e-9);
}

double mutual_information(const DensityMatrix4 &rho, EntropyUnit unit) {
  const double mi = von_neumann_entropy(partial_trace(rho, Subsystem::A)) +
                    von_neumann_entropy(partial_trace(rho, Subsystem::B)) - von_neumann_entropy(rho);
  return from_nats(std::max(mi, 0.0), unit);
}

void require_unitary(const Matrix2c &u, double tol) {
  const double err = (u * u.adjoint() - Matrix2c::Identity()).cwiseAbs().maxCoeff();
  if (err > tol) throw Error(ErrorCode::not_unitary, "local operator is not unitary", err);
}

Matrix4c kron(const Matrix2c &a, const Matrix2c &b) {
  Matrix4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

DensityMatrix4 conjugate_local(const DensityMatrix4 &rho, const Matrix2c &ua, const Matrix2c &ub) {
  require_unitary(ua);
  require_unitary(ub);
  const Matrix4c u = kron(ua, ub);
  Matrix4c out = u * rho.matrix() * u.adjoint();
  out = (out + out.adjoint()).eval() * 0.5;
  return DensityMatrix4::validate(out, 1e-9);
}

BlochCoefficients bloch_decompose(const Matrix4c &rho) {
  BlochCoefficients c;
  auto coeff = [&](int i, int j) { return (rho * kron(pauli(i), pauli(j))).trace().real(); };
  c.scalar = coeff(0, 0);
  for (int i = 1; i <= 3; ++i) {
    c.local_a(i - 1) = coeff(i, 0);
    c.local_b(i - 1) = coeff(0, i);
    for (int j = 1; j <= 3; ++j) c.correlations(i - 1, j - 1) = coeff(i, j);
  }
  return c;
}

Matrix4c bloch_matrix(const BlochCoefficients &c) {
  Matrix4c m = c.scalar * Matrix4c::Identity();
  for (int i = 1; i <= 3; ++i) {
    m += c.local_a(i - 1) * kron(pauli(i), pauli(0));
    m += c.local_b(i - 1) * kron(pauli(0), pauli(i));
    for (int j = 1; j <= 3; ++j) m += c.correlations(i - 1, j - 1) * kron(pauli(i), pauli(j));
  }
  return m * 0.25;
}

DensityMatrix4 bloch_compose(const BlochCoefficients &coeffs, double tol) {
  return DensityMatrix4::validate(bloch_matrix(coeffs), tol);
}

}  // namespace qdiscord
