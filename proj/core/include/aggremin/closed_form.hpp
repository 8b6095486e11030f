#pragma once

#include "aggremin/params.hpp"

namespace aggremin::closed_form {

/// Critical exponent (-10 + 3α + 7d - αd - d²)/(d + α - 3); β_*(2) = 4-d.
double beta_star(int d, double alpha);

/// Sphere radius ½ (Γ((d+β-1)/2) Γ((2d+α-2)/2) / (Γ((d+α-1)/2) Γ((2d+β-2)/2)))^{1/(α-β)}.
/// β = 0 gives the logarithmic radius. Needs d >= 2 and d+β > 1.
double sphere_radius(int d, double alpha, double beta);

/// Ball radius (Γ((4-β)/2) Γ((β+d)/2) / Γ(1+d/2))^{1/(2-β)} for α = 2.
double ball_radius(int d, double beta);

/// Energy of the uniform sphere of radius sphere_radius, by the sphere formula.
double sphere_energy(int d, double alpha, double beta, bool beta_is_log);

/// Energy of the ball profile for α = 2, by the ball formula.
double ball_energy(int d, double beta, bool beta_is_log);

/// Which theorem (if any) describes the minimizer. Ties at β = β_*(α) and
/// β = 2 go to the sphere; (α, β) = (4, 2) is reported as Boundary.
/// Throws DomainError for invalid parameters.
RegimeTag classify(const KernelParams& params);

/// Minimizer radius in the classified regime; RegimeError when out of scope.
double radius(const KernelParams& params);

/// Minimal energy in the classified regime; RegimeError when out of scope.
double energy(const KernelParams& params);

/// Density of the ball minimizer at distance r from its center.
double ball_density(const KernelParams& params, double r);

/// Euler-Lagrange constant, 2 * energy(params).
double eta(const KernelParams& params);

/// Euler-Lagrange constant recomputed as the total potential of the
/// candidate on its support (at |x| = R for the sphere, x = 0 for the ball).
double eta_from_potential(const KernelParams& params);

/// The minimizer of the classified regime.
CandidateMinimizer candidate(const KernelParams& params);

/// Uniform sphere of radius sphere_radius regardless of the regime; used to
/// probe parameters where the sphere is not a minimizer.
CandidateMinimizer sphere_candidate(const KernelParams& params);

}  // namespace aggremin::closed_form
