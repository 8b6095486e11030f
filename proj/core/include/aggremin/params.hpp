#pragma once

#include <string>

namespace aggremin {

/// Dimension and exponents of the kernel W(r) = r^α/α - r^β/β.
/// An exponent equal to 0 stands for the logarithm and must carry its flag.
struct KernelParams {
  int d = 2;
  double alpha = 2.0;
  double beta = 1.0;
  bool alpha_is_log = false;
  bool beta_is_log = false;

  /// Checks d >= 1, -d < β < α and the flag/zero correspondence.
  /// Throws DomainError, or IllConditioned for |β| < 1e-6 without the log flag.
  void validate() const;

  static KernelParams power(int d, double alpha, double beta);
  static KernelParams log_beta(int d, double alpha);

  bool operator==(const KernelParams&) const = default;
};

/// r^γ/γ, or ln r when `is_log`.
double kernel_term(double gamma, bool is_log, double r);

enum class CandidateKind { UniformSphere, BallProfile };

/// Uniform probability measure on the sphere of radius R, or the density
/// normalization * (R² - |x|²)^((2-β-d)/2) on the ball of radius R.
/// Both are centered at the origin.
struct CandidateMinimizer {
  CandidateKind kind = CandidateKind::UniformSphere;
  double radius = 1.0;
  double normalization = 0.0;  // BallProfile only

  bool operator==(const CandidateMinimizer&) const = default;
};

enum class Regime { SphereTheorem1, BallTheorem2, Boundary, OutOfScope };

struct RegimeTag {
  Regime tag = Regime::OutOfScope;
  std::string detail;
  /// α = 2, β = 4-d: the sphere and ball formulas describe the same minimizer.
  bool shared_boundary = false;
};

const char* to_string(Regime r);
const char* to_string(CandidateKind k);

}  // namespace aggremin
