#include "aggremin/params.hpp"

#include <cmath>

#include "aggremin/errors.hpp"

namespace aggremin {

namespace {

constexpr double kSmallExponent = 1e-6;

void check_exponent(double value, bool is_log, const char* name) {
  if (is_log && value != 0.0) {
    throw DomainError(std::string(name) + " carries the log flag but is nonzero");
  }
  if (!is_log && std::abs(value) < kSmallExponent) {
    throw IllConditioned(std::string(name) + " = " + std::to_string(value) +
                         " is too close to 0; use the logarithmic kernel instead");
  }
}

}  // namespace

void KernelParams::validate() const {
  if (d < 1) throw DomainError("dimension must be at least 1");
  if (!std::isfinite(alpha) || !std::isfinite(beta)) throw DomainError("exponents must be finite");
  check_exponent(alpha, alpha_is_log, "alpha");
  check_exponent(beta, beta_is_log, "beta");
  if (!(beta > -d)) throw DomainError("beta must exceed -d");
  if (!(beta < alpha)) throw DomainError("beta must be smaller than alpha");
}

KernelParams KernelParams::power(int d, double alpha, double beta) {
  KernelParams p{d, alpha, beta, false, false};
  p.validate();
  return p;
}

KernelParams KernelParams::log_beta(int d, double alpha) {
  KernelParams p{d, alpha, 0.0, false, true};
  p.validate();
  return p;
}

double kernel_term(double gamma, bool is_log, double r) {
  if (is_log) return std::log(r);
  return std::pow(r, gamma) / gamma;
}

const char* to_string(Regime r) {
  switch (r) {
    case Regime::SphereTheorem1:
      return "SphereTheorem1";
    case Regime::BallTheorem2:
      return "BallTheorem2";
    case Regime::Boundary:
      return "Boundary";
    case Regime::OutOfScope:
      return "OutOfScope";
  }
  return "?";
}

const char* to_string(CandidateKind k) {
  return k == CandidateKind::UniformSphere ? "UniformSphere" : "BallProfile";
}

}  // namespace aggremin
