#pragma once

// Independent ground truth.
//  * Discord of an arbitrary two-qubit state by explicit projective
//    measurements of qubit B over the whole Bloch sphere.
//  * Exact evolution of a small nanopore chain, reduced to a spin pair.

#include "qdiscord/density.hpp"

namespace qdiscord::oracle {

/// Unit vector n = (sin t cos p, sin t sin p, cos t); projectors (1 +- n.sigma)/2.
struct MeasurementDirection {
  double theta = 0.0;
  double phi = 0.0;
  [[nodiscard]] Vector3d unit_vector() const;
  [[nodiscard]] Matrix2c projector(int sign) const;
};

/// sum_i p_i S(rho_A^i); outcomes with p_i <= 1e-14 contribute nothing.
[[nodiscard]] double conditional_entropy_at(const DensityMatrix4 &rho, const MeasurementDirection &dir,
                                            EntropyUnit unit = EntropyUnit::nats);

struct GridOptions {
  int n_theta = 181;  ///< polar samples on [0, pi], poles included
  int n_phi = 181;    ///< azimuth samples on [0, 2 pi)
  bool refine = true;
  int threads = 1;
};

struct OracleResult {
  double q_value = 0.0;
  double conditional_entropy = 0.0;
  MeasurementDirection best;
  EntropyUnit unit = EntropyUnit::nats;
  bool refined = false;
};

/// S(rho_B) - S(rho_AB) + min over directions of the conditional entropy,
/// clamped at zero. Without refinement the result is a grid upper bound;
/// refinement runs coordinate descent from the best grid points.
[[nodiscard]] OracleResult discord(const DensityMatrix4 &rho, EntropyUnit unit = EntropyUnit::nats,
                                   const GridOptions &opts = {});

inline constexpr int kMaxChainSize = 12;

struct ChainParams {
  int n = 2;            ///< number of spins
  double beta = 1.0;    ///< inverse dimensionless temperature
  double alpha_t = 0.0; ///< dimensionless time
};

/// Dense evolution of the whole chain: rho_N(0) is the product of e^{beta
/// sigma_x / 2}/(2 cosh(beta/2)), the propagator is the diagonal
/// e^{-i alpha_t I_z^2}. Returns the reduced state of spins `first` and
/// `second` (0-based). Throws TooLarge for n > kMaxChainSize.
[[nodiscard]] DensityMatrix4 simulate_chain(const ChainParams &p, int first = 0, int second = 1);

/// Same, but propagates with the complete dipolar Hamiltonian
/// alpha_t (I_z^2 - I^2 / 3) through a dense eigendecomposition.
[[nodiscard]] DensityMatrix4 simulate_chain_full_hamiltonian(const ChainParams &p, int first = 0, int second = 1);

}  // namespace qdiscord::oracle
