#pragma once

#include <optional>

#include "aggremin/params.hpp"

namespace aggremin::potentials {

/// Surface area 2π^{d/2}/Γ(d/2) of the unit sphere in R^d (2 for d = 1).
double sphere_area(int d);

/// Radial profile of the unit-sphere potential, ρ = |x|².
///   ρ < 1:  F(-γ/2, (2-γ-d)/2; d/2; ρ)
///   ρ > 1:  ρ^{γ/2} F(-γ/2, (2-γ-d)/2; d/2; 1/ρ)
/// and the closed-form boundary value at ρ = 1. Needs d >= 2, d+γ > 2.
double psi_gamma(int d, double gamma, double rho);

struct PsiAtOne {
  double value = 0.0;
  double first_deriv = 0.0;
  std::optional<double> second_deriv;  // present when d+γ > 3
};

/// ψ_γ(1), ψ'_γ(1) and (if d+γ > 3) ψ''_γ(1) in closed form.
PsiAtOne psi_values_at_one(int d, double gamma);

/// ∫_{S^{d-1}} |x-ω|^γ dω, |x| = x_norm.
double sphere_potential(int d, double gamma, double x_norm);

/// Same integral from the single-branch form
/// |S^{d-1}| (r+1)^γ F(-γ/2, (d-1)/2; d-1; 4r/(r+1)²), r ≠ 1.
double sphere_potential_alt(int d, double gamma, double x_norm);

/// ∫_{|y|<1} |x-y|^γ (1-|y|²)^{(2-γ-d)/2} dy for -d < γ < -d+4.
/// At |x| = 1 the (continuous) inner affine branch is used.
double ball_potential(int d, double gamma, double x_norm);

/// ∫_{|y|<1} ln|x-y| (1-|y|²)^{(2-d)/2} dy for d <= 3.
double ball_log_potential(int d, double x_norm);

struct QuadraticMoment {
  double c_beta = 0.0;               // ∫_{|y|<1} (1-|y|²)^{(2-β-d)/2} dy
  double second_moment_coeff = 0.0;  // d/(4-β)
};

/// Normalization and second moment of the ball weight, -d < β < -d+4.
QuadraticMoment quadratic_ball_moment(int d, double beta);

/// Average of ln|x-ω| over the unit sphere, ρ = |x|²; the γ -> 0 limit of
/// (ψ_γ(ρ) - 1)/γ.
double tilde_psi0(int d, double rho);

/// Derivative of tilde_psi0 in ρ. For d = 2 the derivative jumps at ρ = 1
/// and DomainError is thrown there.
double tilde_psi0_prime(int d, double rho);

/// One-sided second derivative of tilde_psi0 at ρ = 1 from inside; needs d >= 4.
double tilde_psi0_second_at_one(int d);

/// φ(x) = ∫ W(x-y) dμ(y) for the candidate μ, as a function of |x|.
/// Throws RegimeError if the candidate kind does not fit the exponents.
double total_potential(const KernelParams& params, const CandidateMinimizer& candidate, double x_norm);

}  // namespace aggremin::potentials
