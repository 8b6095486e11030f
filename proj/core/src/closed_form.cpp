#include "aggremin/closed_form.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "aggremin/errors.hpp"
#include "aggremin/potentials.hpp"
#include "aggremin/special_functions.hpp"

namespace aggremin::closed_form {

namespace sp = aggremin::special;

namespace {

using A1 = std::array<double, 1>;
using A2 = std::array<double, 2>;

constexpr double kTie = 1e-12;

bool tied(double x, double y) { return std::abs(x - y) <= kTie * std::max(1.0, std::abs(y)); }

bool is_ball(const KernelParams& p) {
  return !p.alpha_is_log && p.alpha == 2.0 && p.beta < std::min(2.0, 4.0 - p.d);
}

}  // namespace

double beta_star(int d, double alpha) {
  const double den = d + alpha - 3.0;
  if (den == 0.0) throw DomainError("beta_star: d + alpha = 3");
  return (-10.0 + 3.0 * alpha + 7.0 * d - alpha * d - static_cast<double>(d) * d) / den;
}

double sphere_radius(int d, double alpha, double beta) {
  if (d < 2) throw DomainError("sphere_radius: needs d >= 2");
  if (!(d + beta > 1.0)) throw DomainError("sphere_radius: needs d+beta > 1");
  if (!(alpha > beta)) throw DomainError("sphere_radius: needs alpha > beta");
  double ratio = sp::gamma_ratio(A2{(d + beta - 1.0) / 2.0, (2.0 * d + alpha - 2.0) / 2.0},
                                 A2{(d + alpha - 1.0) / 2.0, (2.0 * d + beta - 2.0) / 2.0});
  return 0.5 * std::pow(ratio, 1.0 / (alpha - beta));
}

double ball_radius(int d, double beta) {
  if (d < 1) throw DomainError("ball_radius: needs d >= 1");
  if (!(beta > -d && beta < 2.0)) throw DomainError("ball_radius: needs -d < beta < 2");
  double ratio = sp::gamma_ratio(A2{(4.0 - beta) / 2.0, (beta + d) / 2.0}, A1{1.0 + d / 2.0});
  return std::pow(ratio, 1.0 / (2.0 - beta));
}

double sphere_energy(int d, double alpha, double beta, bool beta_is_log) {
  if (beta_is_log) {
    if (d < 2) throw DomainError("sphere_energy: needs d >= 2");
    double ratio = sp::gamma_ratio(A2{(d - 1.0) / 2.0, (2.0 * d + alpha - 2.0) / 2.0},
                                   A2{d - 1.0, (d + alpha - 1.0) / 2.0});
    return (1.0 - std::log(ratio)) / (2.0 * alpha) +
           0.25 * (sp::digamma(d - 1.0) - sp::digamma((d - 1.0) / 2.0));
  }
  const double R = sphere_radius(d, alpha, beta);
  double pref = std::pow(2.0, d + alpha - 3.0) / std::sqrt(std::numbers::pi) *
                sp::gamma_ratio(A2{d / 2.0, (d + alpha - 1.0) / 2.0}, A1{(2.0 * d + alpha - 2.0) / 2.0});
  return -pref * (1.0 / beta - 1.0 / alpha) * std::pow(R, alpha);
}

double ball_energy(int d, double beta, bool beta_is_log) {
  if (beta_is_log) {
    if (d < 1) throw DomainError("ball_energy: needs d >= 1");
    return 0.25 * (0.5 + std::log(d / 2.0) + sp::digamma(2.0) - sp::digamma(d / 2.0));
  }
  const double R = ball_radius(d, beta);
  return -d * (2.0 - beta) / (2.0 * beta * (4.0 - beta)) * R * R;
}

RegimeTag classify(const KernelParams& params) {
  params.validate();
  const int d = params.d;
  const double alpha = params.alpha;
  const double beta = params.beta;

  if (params.alpha_is_log || alpha < 2.0 || alpha > 4.0) {
    return {Regime::OutOfScope, "alpha out of supported range"};
  }
  if (d >= 2) {
    const double bs = beta_star(d, alpha);
    if ((beta >= bs || tied(beta, bs)) && (beta <= 2.0 || tied(beta, 2.0))) {
      if (tied(alpha, 4.0) && tied(beta, 2.0)) {
        return {Regime::Boundary, "alpha=4, beta=2: the uniform sphere is one of a family of minimizers"};
      }
      if (alpha == 2.0 && tied(beta, bs)) {
        return {Regime::SphereTheorem1, "shared boundary beta=4-d of the sphere and ball regimes", true};
      }
      return {Regime::SphereTheorem1, "uniform sphere minimizer"};
    }
  }
  if (is_ball(params)) return {Regime::BallTheorem2, "ball profile minimizer"};
  if (d < 2) return {Regime::OutOfScope, "sphere regime needs d >= 2"};
  if (beta > 2.0) return {Regime::OutOfScope, "beta above 2"};
  return {Regime::OutOfScope, "beta below beta_star(alpha)"};
}

double radius(const KernelParams& params) { return candidate(params).radius; }

double energy(const KernelParams& params) {
  RegimeTag tag = classify(params);
  switch (tag.tag) {
    case Regime::SphereTheorem1:
    case Regime::Boundary:
      return sphere_energy(params.d, params.alpha, params.beta, params.beta_is_log);
    case Regime::BallTheorem2:
      return ball_energy(params.d, params.beta, params.beta_is_log);
    case Regime::OutOfScope:
      break;
  }
  throw RegimeError(tag.detail);
}

double ball_density(const KernelParams& params, double r) {
  CandidateMinimizer c = candidate(params);
  if (c.kind != CandidateKind::BallProfile) throw RegimeError("ball_density: parameters are not in the ball regime");
  if (!(r >= 0.0)) throw DomainError("ball_density: r must be >= 0");
  if (r >= c.radius) return 0.0;
  const double e = (2.0 - params.beta - params.d) / 2.0;
  return c.normalization * std::pow(c.radius * c.radius - r * r, e);
}

double eta(const KernelParams& params) { return 2.0 * energy(params); }

double eta_from_potential(const KernelParams& params) {
  CandidateMinimizer c = candidate(params);
  double x = c.kind == CandidateKind::UniformSphere ? c.radius : 0.0;
  return potentials::total_potential(params, c, x);
}

CandidateMinimizer candidate(const KernelParams& params) {
  RegimeTag tag = classify(params);
  switch (tag.tag) {
    case Regime::SphereTheorem1:
    case Regime::Boundary:
      return sphere_candidate(params);
    case Regime::BallTheorem2: {
      const double R = ball_radius(params.d, params.beta);
      const double c_beta = potentials::quadratic_ball_moment(params.d, params.beta).c_beta;
      return {CandidateKind::BallProfile, R, std::pow(R, params.beta - 2.0) / c_beta};
    }
    case Regime::OutOfScope:
      break;
  }
  throw RegimeError(tag.detail);
}

CandidateMinimizer sphere_candidate(const KernelParams& params) {
  params.validate();
  if (params.alpha_is_log) throw RegimeError("sphere_candidate: alpha must not be logarithmic");
  return {CandidateKind::UniformSphere, sphere_radius(params.d, params.alpha, params.beta), 0.0};
}

}  // namespace aggremin::closed_form
