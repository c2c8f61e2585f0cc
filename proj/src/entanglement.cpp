#include "harvestkit/entanglement.hpp"

#include "harvestkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace harvestkit {

namespace {

void require_identical(const MatrixElements& e) {
  if (std::abs(e.L_aa - e.L_bb) > 1e-9 * std::abs(e.L_aa))
    throw IdenticalDetectorError("operation requires identical detectors (L_aa == L_bb)");
}

bool is_x_state(const ReducedState& r) {
  return r(0, 1) == 0.0 && r(0, 2) == 0.0 && r(1, 3) == 0.0 && r(2, 3) == 0.0 &&
         r(1, 0) == 0.0 && r(2, 0) == 0.0 && r(3, 1) == 0.0 && r(3, 2) == 0.0;
}

// Smallest eigenvalue of the Hermitian block [[p, c], [conj(c), q]].
double block_min(double p, double q, complex c) {
  const double mean = 0.5 * (p + q);
  const double half_gap = 0.5 * (p - q);
  return mean - std::hypot(half_gap, std::abs(c));
}

} // namespace

ReducedState assemble_state(const MatrixElements& e, double scale) {
  const double laa = scale * e.L_aa;
  const double lbb = scale * e.L_bb;
  if (laa + lbb >= kPerturbativeLimit)
    throw PerturbativityError("L_aa + L_bb >= 0.1: coupling too strong for second order");
  ReducedState rho = ReducedState::Zero();
  rho(0, 0) = 1.0 - laa - lbb;
  rho(1, 1) = laa;
  rho(2, 2) = lbb;
  rho(1, 2) = scale * e.L_ab;
  rho(2, 1) = std::conj(rho(1, 2));
  rho(0, 3) = scale * e.M;
  rho(3, 0) = std::conj(rho(0, 3));
  return rho;
}

ReducedState partial_transpose(const ReducedState& rho) {
  // index = a + 2 b for detector labels a (A) and b (B).
  ReducedState out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const int a = i & 1, b = i >> 1;
      const int ap = j & 1, bp = j >> 1;
      out(i, j) = rho(a + 2 * bp, ap + 2 * b);
    }
  return out;
}

double negativity_formula(const MatrixElements& e) {
  require_identical(e);
  return std::max(std::abs(e.M) - e.L_aa, 0.0);
}

double negativity_partial_transpose(const ReducedState& rho) {
  const ReducedState pt = partial_transpose(rho);
  double lmin;
  if (is_x_state(pt)) {
    lmin = std::min(block_min(pt(0, 0).real(), pt(3, 3).real(), pt(0, 3)),
                    block_min(pt(1, 1).real(), pt(2, 2).real(), pt(1, 2)));
  } else {
    Eigen::SelfAdjointEigenSolver<ReducedState> es(pt, Eigen::EigenvaluesOnly);
    lmin = es.eigenvalues().minCoeff();
  }
  return std::max(0.0, -lmin);
}

Concurrence concurrence_and_log(double negativity, double scale) {
  Concurrence c;
  c.value = 2.0 * negativity;
  if (c.value > 0.0 && scale > 0.0) c.log10 = std::log10(c.value / scale);
  return c;
}

double joint_quadrature_variance(const MatrixElements& e, Quadrature which, double phi) {
  require_identical(e);
  const double squeeze = (std::polar(1.0, 2.0 * phi) * e.M).real();
  const double hop = e.L_ab.real();
  const double base = 0.5 + e.L_aa;
  switch (which) {
  case Quadrature::q_plus: return base + squeeze + hop;
  case Quadrature::q_minus: return base - squeeze - hop;
  case Quadrature::p_plus: return base - squeeze + hop;
  case Quadrature::p_minus: return base + squeeze - hop;
  }
  return base;
}

double inseparability_phase(const MatrixElements& e) {
  // e^{2 i phi} M = -|M|
  return 0.5 * (std::numbers::pi - std::arg(e.M));
}

double inseparability_min(const MatrixElements& e) {
  require_identical(e);
  return 1.0 + 2.0 * e.L_aa - 2.0 * std::abs(e.M);
}

} // namespace harvestkit
