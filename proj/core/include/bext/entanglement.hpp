#pragma once

// Schmidt analysis of hybrid states Phi: [0, L] -> C^n across the cut
// (particle | levels), and the factorized-eigenbasis test for separable
// dynamics.

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "bext/spectrum.hpp"

namespace bext {

inline constexpr double kSeparabilityThreshold = 1e-6;

/// rho[a][b] = int Phi_a conj(Phi_b) dx (trapezoid rule), scaled to unit
/// trace. Throws std::domain_error on a zero-norm state.
CMatrix reduced_density(const HybridState& state);

struct EntanglementReport {
  CMatrix reduced_density;
  std::vector<double> schmidt_coefficients;  ///< descending, sum 1
  double entropy = 0.0;                      ///< natural log
  bool separable = true;
};

/// -sum p ln p with 0 ln 0 = 0.
double von_neumann_entropy(const std::vector<double>& p);

/// Report for a given (Hermitian, PSD up to roundoff) density matrix;
/// eigenvalues are clipped at zero and renormalized.
EntanglementReport entanglement_from_density(const CMatrix& rho, double threshold = kSeparabilityThreshold);

EntanglementReport entanglement_entropy(const HybridState& state, double threshold = kSeparabilityThreshold);

/// Rotates every degenerate eigenvalue block onto the joint eigenbasis of
/// the per-level Gram matrices G_a[j][k] = <P_a Phi_j, P_a Phi_k>. When the
/// block admits a basis of level-factorized functions this finds it, so the
/// verdict below does not depend on how a solver happened to mix a
/// degenerate eigenspace.
SpectralResult canonicalize_degenerate_blocks(const SpectralResult& result);

struct Separable {};

struct NonSeparable {
  enum class Kind { Entangled, ProfileMismatch };
  Kind kind = Kind::Entangled;
  std::size_t eigenfunction = 0;  ///< index into the canonicalized eigenfunctions
  std::size_t partner = 0;        ///< best-overlap partner (ProfileMismatch), else == eigenfunction
  double value = 0.0;             ///< entropy (Entangled) or projection norm (ProfileMismatch)
  std::string detail;
};

using DynamicsVerdict = std::variant<Separable, NonSeparable>;

/// Separable iff (i) every eigenfunction has entropy < tol and (ii) grouping
/// product eigenfunctions psi (x) rho by their level factor rho, the smaller
/// profile set of any two groups lies in the span of the larger (projection
/// norm > 1 - tol). Throws std::invalid_argument if (i) holds but some level
/// carries fewer than 2 eigenfunctions.
DynamicsVerdict dynamics_separability_verdict(const SpectralResult& result, double tol = kSeparabilityThreshold);

}  // namespace bext
