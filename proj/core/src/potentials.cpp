#include "aggremin/potentials.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "aggremin/errors.hpp"
#include "aggremin/special_functions.hpp"

namespace aggremin::potentials {

namespace sp = aggremin::special;

namespace {

using A1 = std::array<double, 1>;
using A2 = std::array<double, 2>;

// Below this argument the log-potential helpers sum their power series directly.
constexpr double kSeriesLimit = 0.5;

void require_sphere_dim(int d, const char* fn) {
  if (d < 2) throw DomainError(std::string(fn) + ": needs d >= 2");
}

void require_rho(double rho, const char* fn) {
  if (!(rho >= 0.0) || !std::isfinite(rho)) {
    throw DomainError(std::string(fn) + ": radial argument must be finite and >= 0");
  }
}

double psi_at_one_value(int d, double gamma) {
  return sp::gamma_ratio(A2{d / 2.0, d + gamma - 1.0}, A2{(d + gamma) / 2.0, (2.0 * d + gamma - 2.0) / 2.0});
}

// ψ_γ without the d+γ > 2 restriction; off the sphere any γ is fine.
double psi_profile(int d, double gamma, double rho) {
  if (gamma == 0.0) return 1.0;
  const double a = -gamma / 2.0;
  const double b = (2.0 - gamma - d) / 2.0;
  const double c = d / 2.0;
  if (rho < 1.0) return sp::hyp2f1(a, b, c, rho);
  if (rho > 1.0) return std::pow(rho, gamma / 2.0) * sp::hyp2f1(a, b, c, 1.0 / rho);
  if (!(d + gamma > 1.0)) throw DomainError("psi_gamma: unbounded on the sphere for d+gamma <= 1");
  return psi_at_one_value(d, gamma);
}

// k z 3F2(1, 1, (4-d)/2; 2, d/2+1; z) = k ∫_0^z F(1, (4-d)/2; d/2+1; t) dt.
double log_profile(int d, double z) {
  if (d == 2) return 0.0;
  const double k = (d - 2.0) / (2.0 * d);
  const double a = (4.0 - d) / 2.0;
  const double c = d / 2.0 + 1.0;
  if (z <= kSeriesLimit) return k * z * sp::hyp3f2({1.0, 1.0, a}, {2.0, c}, z);
  const double at_one = 0.5 * (sp::digamma(d - 1.0) - sp::digamma(d / 2.0));
  return at_one - k * sp::hyp2f1_integral(1.0, a, c, z);
}

// Σ_{n>=1} (b)_n / ((2)_n n) z^n with b = (2-d)/2.
double ball_log_tail(int d, double z) {
  const double b = (2.0 - d) / 2.0;
  if (b == 0.0 || z == 0.0) return 0.0;
  if (z <= kSeriesLimit) {
    double sum = 0.0;
    double coef = 1.0;  // (b)_n / (2)_n
    double zn = 1.0;
    for (int n = 1; n < 2000; ++n) {
      coef *= (b + n - 1.0) / (n + 1.0);
      zn *= z;
      double term = coef * zn / n;
      sum += term;
      if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
    }
    return sum;
  }
  const double at_one = sp::digamma(2.0) - sp::digamma((d + 2.0) / 2.0);
  return at_one - 0.5 * b * sp::hyp2f1_integral(1.0, b + 1.0, 3.0, z);
}

}  // namespace

double sphere_area(int d) {
  if (d < 1) throw DomainError("sphere_area: needs d >= 1");
  return 2.0 * std::pow(std::numbers::pi, d / 2.0) / sp::gamma_fn(d / 2.0);
}

double psi_gamma(int d, double gamma, double rho) {
  require_sphere_dim(d, "psi_gamma");
  require_rho(rho, "psi_gamma");
  if (!(d + gamma > 2.0)) throw DomainError("psi_gamma: needs d+gamma > 2");
  return psi_profile(d, gamma, rho);
}

PsiAtOne psi_values_at_one(int d, double gamma) {
  require_sphere_dim(d, "psi_values_at_one");
  if (!(d + gamma > 2.0)) throw DomainError("psi_values_at_one: needs d+gamma > 2");
  PsiAtOne out;
  out.value = psi_at_one_value(d, gamma);
  const double common = (2.0 * d + gamma - 2.0) / 2.0;
  out.first_deriv =
      gamma / 2.0 * sp::gamma_ratio(A2{d / 2.0, d + gamma - 2.0}, A2{(d + gamma - 2.0) / 2.0, common});
  if (d + gamma > 3.0) {
    out.second_deriv = gamma / 2.0 * (gamma / 2.0 - 1.0) *
                       sp::gamma_ratio(A2{d / 2.0, d + gamma - 3.0}, A2{(d + gamma - 4.0) / 2.0, common});
  }
  return out;
}

double sphere_potential(int d, double gamma, double x_norm) {
  require_sphere_dim(d, "sphere_potential");
  require_rho(x_norm, "sphere_potential");
  if (x_norm == 1.0 && !(gamma > 1.0 - d)) {
    throw DomainError("sphere_potential: diverges on the sphere for gamma <= 1-d");
  }
  return sphere_area(d) * psi_profile(d, gamma, x_norm * x_norm);
}

double sphere_potential_alt(int d, double gamma, double x_norm) {
  require_sphere_dim(d, "sphere_potential_alt");
  require_rho(x_norm, "sphere_potential_alt");
  if (x_norm == 1.0) throw DomainError("sphere_potential_alt: argument 1 is excluded");
  const double s = x_norm + 1.0;
  const double z = 4.0 * x_norm / (s * s);
  return sphere_area(d) * std::pow(s, gamma) * sp::hyp2f1(-gamma / 2.0, (d - 1.0) / 2.0, d - 1.0, z);
}

double ball_potential(int d, double gamma, double x_norm) {
  if (d < 1) throw DomainError("ball_potential: needs d >= 1");
  require_rho(x_norm, "ball_potential");
  if (!(gamma > -d && gamma < 4.0 - d)) throw DomainError("ball_potential: needs -d < gamma < 4-d");
  const double pi_d2 = std::pow(std::numbers::pi, d / 2.0);
  if (x_norm <= 1.0) {
    double at_zero = pi_d2 * sp::gamma_ratio(A2{(4.0 - gamma - d) / 2.0, (gamma + d) / 2.0}, A1{d / 2.0});
    return at_zero * (1.0 + gamma / d * x_norm * x_norm);
  }
  double pref = pi_d2 * sp::gamma_ratio(A1{(4.0 - gamma - d) / 2.0}, A1{2.0 - gamma / 2.0});
  return pref * std::pow(x_norm, gamma) *
         sp::hyp2f1(-gamma / 2.0, (2.0 - gamma - d) / 2.0, 2.0 - gamma / 2.0, 1.0 / (x_norm * x_norm));
}

double ball_log_potential(int d, double x_norm) {
  if (d < 1 || d > 3) throw DomainError("ball_log_potential: needs 1 <= d <= 3");
  require_rho(x_norm, "ball_log_potential");
  const double c0 = quadratic_ball_moment(d, 0.0).c_beta;
  if (x_norm <= 1.0) {
    return c0 * (0.5 * (sp::digamma(d / 2.0) - sp::digamma(2.0)) + x_norm * x_norm / d);
  }
  return c0 * (std::log(x_norm) - 0.5 * ball_log_tail(d, 1.0 / (x_norm * x_norm)));
}

QuadraticMoment quadratic_ball_moment(int d, double beta) {
  if (d < 1) throw DomainError("quadratic_ball_moment: needs d >= 1");
  if (!(beta > -d && beta < 4.0 - d)) throw DomainError("quadratic_ball_moment: needs -d < beta < 4-d");
  QuadraticMoment m;
  m.c_beta = std::pow(std::numbers::pi, d / 2.0) * sp::gamma_ratio(A1{(4.0 - beta - d) / 2.0}, A1{(4.0 - beta) / 2.0});
  m.second_moment_coeff = d / (4.0 - beta);
  return m;
}

double tilde_psi0(int d, double rho) {
  require_sphere_dim(d, "tilde_psi0");
  require_rho(rho, "tilde_psi0");
  if (rho <= 1.0) return log_profile(d, rho);
  return 0.5 * std::log(rho) + log_profile(d, 1.0 / rho);
}

double tilde_psi0_prime(int d, double rho) {
  require_sphere_dim(d, "tilde_psi0_prime");
  require_rho(rho, "tilde_psi0_prime");
  const double k = (d - 2.0) / (2.0 * d);
  if (rho < 1.0) return d == 2 ? 0.0 : k * sp::hyp2f1(1.0, (4.0 - d) / 2.0, d / 2.0 + 1.0, rho);
  if (rho > 1.0) return 0.5 / rho * sp::hyp2f1(1.0, (2.0 - d) / 2.0, d / 2.0, 1.0 / rho);
  if (d == 2) throw DomainError("tilde_psi0_prime: d = 2 has a kink at rho = 1");
  return k * sp::hyp2f1_at_one(1.0, (4.0 - d) / 2.0, d / 2.0 + 1.0);
}

double tilde_psi0_second_at_one(int d) {
  if (d < 4) throw DomainError("tilde_psi0_second_at_one: needs d >= 4");
  const double k = (d - 2.0) / (2.0 * d);
  return k * sp::hyp2f1_deriv({1.0, (4.0 - d) / 2.0, d / 2.0 + 1.0, 1.0}, 1);
}

double total_potential(const KernelParams& params, const CandidateMinimizer& candidate, double x_norm) {
  params.validate();
  require_rho(x_norm, "total_potential");
  if (!(candidate.radius > 0.0)) throw DomainError("total_potential: candidate radius must be positive");
  if (params.alpha_is_log) throw RegimeError("total_potential: no candidate for a logarithmic alpha");
  const int d = params.d;
  const double R = candidate.radius;

  if (candidate.kind == CandidateKind::UniformSphere) {
    if (d < 2) throw RegimeError("total_potential: sphere candidate needs d >= 2");
    if (!params.beta_is_log && !(d + params.beta > 2.0)) {
      throw RegimeError("total_potential: sphere candidate needs d+beta > 2");
    }
    const double rho = (x_norm / R) * (x_norm / R);
    double attract = std::pow(R, params.alpha) / params.alpha * psi_gamma(d, params.alpha, rho);
    double repel = params.beta_is_log ? std::log(R) + tilde_psi0(d, rho)
                                      : std::pow(R, params.beta) / params.beta * psi_gamma(d, params.beta, rho);
    return attract - repel;
  }

  if (params.alpha != 2.0) throw RegimeError("total_potential: ball candidate needs alpha = 2");
  if (!(params.beta < 4.0 - d)) throw RegimeError("total_potential: ball candidate needs beta < 4-d");
  const double r = x_norm / R;
  const QuadraticMoment m = quadratic_ball_moment(d, params.beta);
  const double quadratic = 0.5 * (x_norm * x_norm + R * R * m.second_moment_coeff);
  if (params.beta_is_log) return quadratic - (std::log(R) + ball_log_potential(d, r) / m.c_beta);
  return quadratic - std::pow(R, params.beta) / (params.beta * m.c_beta) * ball_potential(d, params.beta, r);
}

}  // namespace aggremin::potentials
