#pragma once

#include "qdiscord/cs_x.hpp"
#include "qdiscord/density.hpp"

#include <Eigen/QR>

#include <random>

namespace qdtest {

using namespace qdiscord;

inline Complex random_complex(std::mt19937_64 &rng) {
  std::normal_distribution<double> g;
  return {g(rng), g(rng)};
}

template <int N> Eigen::Matrix<Complex, N, N> random_ginibre(std::mt19937_64 &rng) {
  Eigen::Matrix<Complex, N, N> g;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) g(i, j) = random_complex(rng);
  return g;
}

/// Full-rank random density matrix, G G^dagger normalized.
inline DensityMatrix4 random_density(std::mt19937_64 &rng) {
  const Matrix4c g = random_ginibre<4>(rng);
  Matrix4c rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = (0.5 * (rho + rho.adjoint())).eval();
  return DensityMatrix4::validate(rho);
}

/// Haar-ish unitary from the QR factor of a Ginibre matrix.
inline Matrix2c random_unitary(std::mt19937_64 &rng) {
  const Matrix2c g = random_ginibre<2>(rng);
  Eigen::HouseholderQR<Matrix2c> qr(g);
  Matrix2c q = qr.householderQ();
  const Matrix2c r = qr.matrixQR();
  for (int k = 0; k < 2; ++k) q.col(k) *= std::polar(1.0, std::arg(r(k, k)));
  return q;
}

inline CSMatrix random_cs(std::mt19937_64 &rng) {
  CSMatrix a;
  for (auto &z : a.a) z = random_complex(rng);
  return a;
}

/// J rho J with J the exchange matrix; the average with rho is CS.
inline DensityMatrix4 random_cs_density(std::mt19937_64 &rng) {
  const Matrix4c rho = random_density(rng).matrix();
  Matrix4c j = Matrix4c::Zero();
  for (int k = 0; k < 4; ++k) j(k, 3 - k) = 1.0;
  return DensityMatrix4::validate(0.5 * (rho + j * rho * j));
}

template <typename M> double max_abs(const M &m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace qdtest
