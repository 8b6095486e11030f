#pragma once

#include <optional>
#include <vector>

#include "aggremin/params.hpp"

namespace aggremin::verify {

// ---- quadrature oracles (no hypergeometric code involved) ----

/// ∫_{S^{d-1}} |x-ω|^γ dω by tanh-sinh quadrature over the polar angle.
double sphere_potential_quad(int d, double gamma, double x_norm);

/// ∫_{|y|<1} |x-y|^γ (1-|y|²)^{(2-γ-d)/2} dy by nested tanh-sinh quadrature
/// in polar coordinates centered at x.
double ball_potential_quad(int d, double gamma, double x_norm);

/// Average of ln|x-ω| over the unit sphere.
double sphere_log_average_quad(int d, double x_norm);

/// ∫_{|y|<1} ln|x-y| (1-|y|²)^{(2-d)/2} dy.
double ball_log_potential_quad(int d, double x_norm);

// ---- Euler-Lagrange check ----

struct ELOptions {
  /// Absolute tolerances; default 1e-9 * max(1, |η|).
  std::optional<double> tol_support;
  std::optional<double> tol_exterior;
  /// Use the uniform sphere of sphere_radius even outside its regime.
  bool force_sphere = false;
};

struct ELReport {
  CandidateMinimizer candidate;
  double eta = 0.0;
  double support_max_abs_dev = 0.0;
  double exterior_min_margin = 0.0;
  double exterior_argmin_rho = 0.0;
  std::vector<double> grid;  // ρ = |x/R|²
  double tol_support = 0.0;
  double tol_exterior = 0.0;
  bool passed = false;

  bool operator==(const ELReport&) const = default;
};

/// Grid on [0, rho_max] with 60% of the nodes log-spaced in [0.5, 2];
/// always contains 0 and 1.
std::vector<double> el_grid(double rho_max, int n_grid);

/// Checks φ = η on the support (ρ = 1 for the sphere, ρ <= 1 for the ball)
/// and φ >= η elsewhere on el_grid(rho_max, n_grid).
ELReport verify_euler_lagrange(const KernelParams& params, double rho_max = 25.0, int n_grid = 2000,
                               const ELOptions& options = {});

// ---- convexity of Ψ ----

/// Ψ(ρ) = β⁻¹ (ψ'_β(1)/ψ'_α(1)) ψ_α(ρ) - β⁻¹ ψ_β(ρ); for the logarithmic β,
/// (ψ̃₀'(1)/ψ'_α(1)) ψ_α(ρ) - ψ̃₀(ρ). Ψ'(1) = 0 by construction.
double psi_capital(const KernelParams& params, double rho);

/// Closed-form Ψ''(1). Needs d+β > 3 (d >= 4 for the logarithmic β).
double psi_capital_dd_at_one(const KernelParams& params);

/// Same formula without KernelParams validation, so that it can be probed
/// at exponents such as β >= α.
double psi_capital_dd_at_one_formula(int d, double alpha, double beta);

struct ConvexityReport {
  std::vector<double> grid;
  double min_second_difference = 0.0;
  double argmin_rho = 0.0;
  std::optional<double> psi_dd_at_one;
  double tol = 0.0;
  bool passed = false;

  bool operator==(const ConvexityReport&) const = default;
};

/// Centered second differences Ψ(ρ-h) - 2Ψ(ρ) + Ψ(ρ+h) on the uniform grid
/// ρ_i = i h, h = rho_max / n_grid (so ρ = 1 is a node when 1/h is an integer).
ConvexityReport convexity_report(const KernelParams& params, double rho_max = 10.0, int n_grid = 400,
                                 double tol = 1e-7);

// ---- single-zero property ----

struct SignPattern {
  std::vector<int> signs;  // -1, 0, +1 at z_i = i / n_grid
  int sign_changes = 0;
  bool negative_to_positive = false;  // true when the pattern goes from - to + (or to 0 at the end)
};

/// Signs of g(z) = F(a1, b1; c; z) - q F(a2, b2; c; z) on [0, 1].
/// Needs q > 0, 0 < a2 < a1, 0 < b2 < b1, c > a1 + b1.
SignPattern single_zero_scan(double a1, double b1, double a2, double b2, double c, double q, int n_grid);

}  // namespace aggremin::verify
