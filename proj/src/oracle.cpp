#include "qdiscord/oracle.hpp"

#include "qdiscord/detail/minimize.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <thread>

namespace qdiscord::oracle {

namespace {

using MatrixXc = Eigen::MatrixXcd;

// Entropy (nats) of an unnormalized Hermitian 2x2 block with trace `weight`.
double weighted_block_entropy(const Matrix2c &m, double weight) {
  const double a = m(0, 0).real(), d = m(1, 1).real();
  const double disc = std::sqrt((a - d) * (a - d) + 4.0 * std::norm(m(0, 1)));
  const std::array<double, 2> ev{0.5 * (a + d + disc) / weight, 0.5 * (a + d - disc) / weight};
  return weight * shannon_nats(ev);
}

// Tr_B[(1 (x) sigma_k) rho] for k = 0..3. The conditioned marginal for
// projector (1 + s n.sigma)/2 is (M0 + s sum_k n_k M_k) / 2.
struct ConditionalMarginals {
  std::array<Matrix2c, 4> m;

  explicit ConditionalMarginals(const DensityMatrix4 &rho) {
    for (int k = 0; k < 4; ++k) {
      const Matrix4c weighted = kron(Matrix2c::Identity(), pauli(k)) * rho.matrix();
      Matrix2c r = Matrix2c::Zero();
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          for (int b = 0; b < 2; ++b) r(i, j) += weighted(2 * i + b, 2 * j + b);
      m[k] = r;
    }
  }

  double conditional_entropy(double theta, double phi) const {
    const double nx = std::sin(theta) * std::cos(phi), ny = std::sin(theta) * std::sin(phi), nz = std::cos(theta);
    const Matrix2c dir = nx * m[1] + ny * m[2] + nz * m[3];
    double s = 0.0;
    for (int sign : {1, -1}) {
      const Matrix2c block = 0.5 * (m[0] + static_cast<double>(sign) * dir);
      const double p = block.trace().real();
      if (p > 1e-14) s += weighted_block_entropy(block, p);
    }
    return s;
  }
};

struct GridPoint {
  double value;
  int i, j;
};

MatrixXc kron_dyn(const MatrixXc &a, const MatrixXc &b) {
  MatrixXc out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

void check_chain(const ChainParams &p, int first, int second) {
  if (p.n < 2) throw Error(ErrorCode::invalid_argument, "chain needs at least two spins", p.n);
  if (p.n > kMaxChainSize) throw Error(ErrorCode::too_large, "chain too large for dense simulation", p.n);
  if (first < 0 || second < 0 || first >= p.n || second >= p.n || first == second)
    throw Error(ErrorCode::invalid_argument, "invalid spin pair");
}

MatrixXc initial_chain_state(const ChainParams &p) {
  // e^{beta sigma_x / 2} / (2 cosh(beta/2)) = (1 + tanh(beta/2) sigma_x) / 2
  const double t = std::tanh(0.5 * p.beta);
  Eigen::Matrix2cd one;
  one << 0.5, 0.5 * t, 0.5 * t, 0.5;
  MatrixXc rho = one;
  for (int k = 1; k < p.n; ++k) rho = kron_dyn(rho, one);
  return rho;
}

// Bit of spin k in basis index `idx`; spin 0 is the leftmost factor.
int spin_bit(Eigen::Index idx, int k, int n) { return static_cast<int>((idx >> (n - 1 - k)) & 1); }

DensityMatrix4 reduce_pair(const MatrixXc &rho, int n, int first, int second) {
  const Eigen::Index dim = rho.rows();
  Matrix4c out = Matrix4c::Zero();
  const Eigen::Index pair_mask = (Eigen::Index{1} << (n - 1 - first)) | (Eigen::Index{1} << (n - 1 - second));
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) {
      if ((r & ~pair_mask) != (c & ~pair_mask)) continue;
      const int pr = 2 * spin_bit(r, first, n) + spin_bit(r, second, n);
      const int pc = 2 * spin_bit(c, first, n) + spin_bit(c, second, n);
      out(pr, pc) += rho(r, c);
    }
  return DensityMatrix4::validate(out, 1e-10);
}

}  // namespace

Vector3d MeasurementDirection::unit_vector() const {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

Matrix2c MeasurementDirection::projector(int sign) const {
  const Vector3d n = unit_vector();
  Matrix2c p = pauli(0);
  for (int k = 0; k < 3; ++k) p += static_cast<double>(sign) * n(k) * pauli(k + 1);
  return 0.5 * p;
}

double conditional_entropy_at(const DensityMatrix4 &rho, const MeasurementDirection &dir, EntropyUnit unit) {
  double s = 0.0;
  const Matrix2c id = Matrix2c::Identity();
  for (int sign : {1, -1}) {
    const Matrix4c proj = kron(id, dir.projector(sign));
    const Matrix4c post = proj * rho.matrix() * proj;
    const double p = post.trace().real();
    if (p <= 1e-14) continue;
    Matrix2c marginal = Matrix2c::Zero();
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int b = 0; b < 2; ++b) marginal(i, j) += post(2 * i + b, 2 * j + b);
    s += weighted_block_entropy(marginal, p);
  }
  return from_nats(s, unit);
}

OracleResult discord(const DensityMatrix4 &rho, EntropyUnit unit, const GridOptions &opts) {
  const int nt = std::max(opts.n_theta, 2), np = std::max(opts.n_phi, 1);
  const double dt = kPi / (nt - 1), dp = 2.0 * kPi / np;
  const ConditionalMarginals cm(rho);

  std::vector<double> values(static_cast<std::size_t>(nt) * np);
  auto fill_rows = [&](int row_begin, int row_end) {
    for (int i = row_begin; i < row_end; ++i)
      for (int j = 0; j < np; ++j) values[static_cast<std::size_t>(i) * np + j] = cm.conditional_entropy(i * dt, j * dp);
  };
  const int threads = std::clamp(opts.threads, 1, nt);
  if (threads == 1) {
    fill_rows(0, nt);
  } else {
    std::vector<std::jthread> pool;
    const int chunk = (nt + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) pool.emplace_back(fill_rows, t * chunk, std::min(nt, (t + 1) * chunk));
  }

  std::vector<GridPoint> points;
  points.reserve(values.size());
  for (int i = 0; i < nt; ++i)
    for (int j = 0; j < np; ++j) points.push_back({values[static_cast<std::size_t>(i) * np + j], i, j});
  const std::size_t starts = opts.refine ? std::min<std::size_t>(4, points.size()) : 1;
  std::partial_sort(points.begin(), points.begin() + static_cast<std::ptrdiff_t>(starts), points.end(),
                    [](const GridPoint &x, const GridPoint &y) {
                      return x.value < y.value || (x.value == y.value && (x.i < y.i || (x.i == y.i && x.j < y.j)));
                    });

  OracleResult out;
  out.unit = unit;
  out.refined = opts.refine;
  double best = points.front().value;
  out.best = {points.front().i * dt, points.front().j * dp};

  if (opts.refine) {
    for (std::size_t s = 0; s < starts; ++s) {
      double theta = points[s].i * dt, phi = points[s].j * dp, value = points[s].value;
      double span_t = dt, span_p = dp;
      for (int sweep = 0; sweep < 80; ++sweep) {
        const double before = value;
        auto along_theta = [&](double t) { return cm.conditional_entropy(t, phi); };
        auto mt = detail::golden_section(along_theta, theta - span_t, theta + span_t, 1e-12);
        if (mt.fx < value) {
          theta = mt.x;
          value = mt.fx;
        }
        auto along_phi = [&](double p) { return cm.conditional_entropy(theta, p); };
        auto mp = detail::golden_section(along_phi, phi - span_p, phi + span_p, 1e-12);
        if (mp.fx < value) {
          phi = mp.x;
          value = mp.fx;
        }
        if (before - value < 1e-15 && sweep > 2) break;
        span_t = std::max(0.7 * span_t, 1e-6);
        span_p = std::max(0.7 * span_p, 1e-6);
      }
      if (value < best) {
        best = value;
        out.best = {theta, phi};
      }
    }
  }

  out.conditional_entropy = from_nats(best, unit);
  const double q = von_neumann_entropy(partial_trace(rho, Subsystem::B)) - von_neumann_entropy(rho) + best;
  out.q_value = from_nats(std::max(q, 0.0), unit);
  return out;
}

DensityMatrix4 simulate_chain(const ChainParams &p, int first, int second) {
  check_chain(p, first, second);
  MatrixXc rho = initial_chain_state(p);
  const Eigen::Index dim = rho.rows();
  // I_z eigenvalue of basis index: (number of 0 bits - number of 1 bits)/2.
  std::vector<double> phase(static_cast<std::size_t>(dim));
  for (Eigen::Index k = 0; k < dim; ++k) {
    const int ones = std::popcount(static_cast<unsigned long long>(k));
    const double m = 0.5 * (p.n - 2 * ones);
    phase[static_cast<std::size_t>(k)] = p.alpha_t * m * m;
  }
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c)
      rho(r, c) *= std::polar(1.0, -(phase[static_cast<std::size_t>(r)] - phase[static_cast<std::size_t>(c)]));
  return reduce_pair(rho, p.n, first, second);
}

DensityMatrix4 simulate_chain_full_hamiltonian(const ChainParams &p, int first, int second) {
  check_chain(p, first, second);
  const MatrixXc rho0 = initial_chain_state(p);
  const Eigen::Index dim = rho0.rows();
  std::array<MatrixXc, 3> total;
  for (int axis = 0; axis < 3; ++axis) {
    total[axis] = MatrixXc::Zero(dim, dim);
    for (int k = 0; k < p.n; ++k) {
      MatrixXc term = MatrixXc::Identity(1, 1);
      for (int s = 0; s < p.n; ++s) term = kron_dyn(term, s == k ? MatrixXc(0.5 * pauli(axis + 1)) : MatrixXc(pauli(0)));
      total[axis] += term;
    }
  }
  const MatrixXc spin2 = total[0] * total[0] + total[1] * total[1] + total[2] * total[2];
  const MatrixXc h = total[2] * total[2] - spin2 / 3.0;
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(h);
  Eigen::VectorXcd phases(dim);
  for (Eigen::Index k = 0; k < dim; ++k) phases(k) = std::polar(1.0, -p.alpha_t * es.eigenvalues()(k));
  const MatrixXc u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  const MatrixXc rho = u * rho0 * u.adjoint();
  return reduce_pair(rho, p.n, first, second);
}

}  // namespace qdiscord::oracle
