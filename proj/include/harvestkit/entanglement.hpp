#pragma once

#include "harvestkit/response.hpp"

#include <Eigen/Dense>

#include <optional>

namespace harvestkit {

/// Two-detector density matrix in the basis {|00>, |10>, |01>, |11>}, where
/// the first label is detector A.
using ReducedState = Eigen::Matrix4cd;

/// Largest L_aa + L_bb (after scaling) accepted as perturbative.
inline constexpr double kPerturbativeLimit = 0.1;

/// Materialize rho for elements `e` (coefficients of lambda^2 T^2) at
/// coupling scale x = lambda^2 T^2. Throws PerturbativityError when
/// x (L_aa + L_bb) >= kPerturbativeLimit.
ReducedState assemble_state(const MatrixElements& e, double scale);

/// Transpose on detector B.
ReducedState partial_transpose(const ReducedState& rho);

/// max(|M| - L, 0), in the units of `e`. Throws IdenticalDetectorError
/// unless L_aa == L_bb to 1e-9 relative.
double negativity_formula(const MatrixElements& e);

/// max(0, -lambda_min(rho^{T_B})). X-states are handled by their two 2x2
/// blocks in closed form; anything else goes through a dense eigensolve.
double negativity_partial_transpose(const ReducedState& rho);

struct Concurrence {
  double value = 0.0;
  /// log10 of C / (lambda^2 T^2); empty when C == 0.
  std::optional<double> log10;
};

/// C = 2N for negativity `N` at coupling scale x.
Concurrence concurrence_and_log(double negativity, double scale);

enum class Quadrature { q_plus, q_minus, p_plus, p_minus };

/// Variance of the joint quadrature (x_A +- x_B)/sqrt(2) with local phase
/// phi, vacuum value 1/2. `e` must already be scaled.
double joint_quadrature_variance(const MatrixElements& e, Quadrature which, double phi);

/// min over phi of V(q+) + V(p-) = 1 + 2L - 2|M|. `e` must already be scaled.
double inseparability_min(const MatrixElements& e);

/// Local phase minimizing V(q+) + V(p-).
double inseparability_phase(const MatrixElements& e);

} // namespace harvestkit
