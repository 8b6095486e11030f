#include "aggremin/verify.hpp"

#include <algorithm>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "aggremin/closed_form.hpp"
#include "aggremin/errors.hpp"
#include "aggremin/potentials.hpp"
#include "aggremin/special_functions.hpp"

namespace aggremin::verify {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInnerTol = 1e-12;
constexpr double kOuterTol = 1e-11;
// Reported error estimates above this fraction of the L1 norm are failures,
// unless they are below kAbsFloor (integrands that nearly vanish, such as a
// log kernel at distance about 1).
constexpr double kAcceptTol = 1e-6;
constexpr double kAbsFloor = 1e-15;

double unit_sphere_area(int d) { return 2.0 * std::pow(kPi, d / 2.0) / std::tgamma(d / 2.0); }

boost::math::quadrature::tanh_sinh<double>& integrator() {
  thread_local boost::math::quadrature::tanh_sinh<double> q;
  return q;
}

struct Piece {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;

  Piece& operator+=(const Piece& o) {
    value += o.value;
    error += o.error;
    l1 += o.l1;
    return *this;
  }
};

// ∫_a^b g(t, t-a, b-t) dt, integrated in the unit variable u = (t-a)/(b-a)
// so that tiny intervals behave like any other. The endpoint distances come
// from the quadrature's complement argument and stay accurate near the ends.
template <class G>
Piece integrate_piece(G g, double a, double b, double tol) {
  Piece p;
  if (!(b > a)) return p;
  const double len = b - a;
  // uc is -u near u = 0 and 1-u near u = 1. Nodes closer than 1e-100 to an
  // end are dropped; for the integrable endpoint singularities met here that
  // piece is far below any tolerance.
  auto f = [&](double u, double uc) -> double {
    if (std::abs(uc) < 1e-100) return 0.0;
    if (uc <= 0.0) return g(a + len * u, -len * uc, len * (1.0 + uc));
    return g(b - len * uc, len * (1.0 - uc), len * uc);
  };
  p.value = integrator().integrate(f, 0.0, 1.0, tol, &p.error, &p.l1);
  p.value *= len;
  p.error *= len;
  p.l1 *= len;
  return p;
}

double checked(const Piece& p) {
  if (!std::isfinite(p.value) || (p.error > kAcceptTol * p.l1 && p.error > kAbsFloor)) {
    throw QuadratureFailure("tanh-sinh quadrature did not reach its tolerance");
  }
  return p.value;
}

// ∫_0^π g(θ) dθ for an integrand that peaks at θ = 0 with width about w:
// geometrically growing pieces [0, w], [w, 64w], ... keep every piece smooth
// on its own scale.
template <class G>
double peaked_angle_integral(G g, double w, double tol) {
  double lo = 0.0;
  // Floor keeps every node (>= 1e-100 of a piece) a normal double.
  double hi = std::min(std::max(w, 1e-200), kPi);
  Piece sum;
  while (true) {
    sum += integrate_piece(g, lo, hi, tol);
    if (hi >= kPi) return checked(sum);
    lo = hi;
    hi = std::min(64.0 * hi, kPi);
  }
}

// Distance from x (|x| = r) to the unit vector at polar angle θ.
double sphere_dist(double r, double theta) {
  return std::hypot(1.0 - r, 2.0 * std::sqrt(r) * std::sin(theta / 2.0));
}

// |·|^γ, or ln|·| when is_log.
struct Kernel {
  double gamma = 0.0;
  bool is_log = false;

  double operator()(double dist) const { return is_log ? std::log(dist) : std::pow(dist, gamma); }

  // k(dist) * s^p in log space: near a singular point both factors leave the
  // double range while their product does not.
  double weighted(double dist, double s, double p) const {
    if (!(dist > 0.0) || !(s > 0.0)) return 0.0;
    if (is_log) return std::log(dist) * std::pow(s, p);
    return std::exp(gamma * std::log(dist) + p * std::log(s));
  }
};

// ∫_0^π k(|x - ω|) sin^{d-2}θ dθ over the unit sphere, peaked at θ = 0 when |x| is near 1.
double polar_integral(int d, double x_norm, Kernel k, double tol) {
  auto g = [&](double theta, double, double) {
    return k.weighted(sphere_dist(x_norm, theta), std::sin(theta), d - 2.0);
  };
  return peaked_angle_integral(g, std::abs(1.0 - x_norm), tol);
}

// ∫_0^1 r^{d-1} (1-r²)^e A(r) dr with A(r) = ∫_{S^{d-1}} k(|x - rω|) dω,
// split at r = |x| where A is singular for strongly singular kernels.
double ball_quad_impl(int d, double x_norm, double e, Kernel k) {
  // dist = |x_norm - r|, supplied separately so it is accurate near r = x_norm.
  auto shell = [&](double r, double dist) {
    if (d == 1) return k(dist) + k(x_norm + r);
    const double chord = 2.0 * std::sqrt(x_norm * r);
    auto g = [&](double theta, double, double) {
      return k.weighted(std::hypot(dist, chord * std::sin(theta / 2.0)), std::sin(theta), d - 2.0);
    };
    double scale = x_norm * r > 0.0 ? dist / std::sqrt(x_norm * r) : 1.0;
    return unit_sphere_area(d - 1) * peaked_angle_integral(g, scale, kInnerTol);
  };
  auto weight = [&](double r, double one_minus_r) {
    return std::pow(r, d - 1) * std::pow(one_minus_r * (1.0 + r), e);
  };
  if (x_norm > 0.0 && x_norm < 1.0) {
    auto inner = [&](double r, double, double to_x) { return weight(r, 1.0 - r) * shell(r, to_x); };
    auto outer = [&](double r, double from_x, double to_one) { return weight(r, to_one) * shell(r, from_x); };
    Piece sum = integrate_piece(inner, 0.0, x_norm, kOuterTol);
    sum += integrate_piece(outer, x_norm, 1.0, kOuterTol);
    return checked(sum);
  }
  auto all = [&](double r, double, double to_one) {
    double dist = x_norm >= 1.0 ? (x_norm - 1.0) + to_one : x_norm - r;
    return weight(r, to_one) * shell(r, std::abs(dist));
  };
  return checked(integrate_piece(all, 0.0, 1.0, kOuterTol));
}

}  // namespace

double sphere_potential_quad(int d, double gamma, double x_norm) {
  if (d < 2) throw DomainError("sphere_potential_quad: needs d >= 2");
  if (!(x_norm >= 0.0)) throw DomainError("sphere_potential_quad: x_norm must be >= 0");
  if (x_norm == 1.0 && !(gamma > 1.0 - d)) throw DomainError("sphere_potential_quad: diverges on the sphere");
  return unit_sphere_area(d - 1) * polar_integral(d, x_norm, Kernel{gamma, false}, kOuterTol);
}

double ball_potential_quad(int d, double gamma, double x_norm) {
  if (d < 1) throw DomainError("ball_potential_quad: needs d >= 1");
  if (!(x_norm >= 0.0)) throw DomainError("ball_potential_quad: x_norm must be >= 0");
  if (!(gamma > -d && gamma < 4.0 - d)) throw DomainError("ball_potential_quad: needs -d < gamma < 4-d");
  const double e = (2.0 - gamma - d) / 2.0;
  return ball_quad_impl(d, x_norm, e, Kernel{gamma, false});
}

double sphere_log_average_quad(int d, double x_norm) {
  if (d < 2) throw DomainError("sphere_log_average_quad: needs d >= 2");
  if (!(x_norm >= 0.0)) throw DomainError("sphere_log_average_quad: x_norm must be >= 0");
  return unit_sphere_area(d - 1) * polar_integral(d, x_norm, Kernel{0.0, true}, kOuterTol) / unit_sphere_area(d);
}

double ball_log_potential_quad(int d, double x_norm) {
  if (d < 1) throw DomainError("ball_log_potential_quad: needs d >= 1");
  if (!(x_norm >= 0.0)) throw DomainError("ball_log_potential_quad: x_norm must be >= 0");
  const double e = (2.0 - d) / 2.0;
  return ball_quad_impl(d, x_norm, e, Kernel{0.0, true});
}

std::vector<double> el_grid(double rho_max, int n_grid) {
  if (!(rho_max > 1.0)) throw DomainError("el_grid: rho_max must exceed 1");
  if (n_grid < 10) throw DomainError("el_grid: too few nodes");
  const int n_mid = static_cast<int>(std::lround(0.6 * n_grid));
  const int n_lo = (n_grid - n_mid) / 2;
  const int n_hi = n_grid - n_mid - n_lo;
  const double mid_hi = std::min(2.0, rho_max);
  std::vector<double> g;
  g.reserve(n_grid + 2);
  g.push_back(0.0);
  g.push_back(1.0);
  for (int i = 0; i < n_mid; ++i) g.push_back(0.5 * std::pow(mid_hi / 0.5, i / (n_mid - 1.0)));
  const double lo0 = 1e-6;
  for (int i = 0; i + 1 < n_lo; ++i) g.push_back(lo0 * std::pow(0.5 / lo0, i / (n_lo - 1.0)));
  if (rho_max > 2.0) {
    for (int i = 1; i <= n_hi; ++i) g.push_back(2.0 * std::pow(rho_max / 2.0, i / static_cast<double>(n_hi)));
  }
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

ELReport verify_euler_lagrange(const KernelParams& params, double rho_max, int n_grid, const ELOptions& options) {
  params.validate();
  if (!(rho_max > 1.0)) throw DomainError("verify_euler_lagrange: rho_max must exceed 1");
  if (n_grid < 100) throw DomainError("verify_euler_lagrange: n_grid must be at least 100");

  ELReport rep;
  const RegimeTag tag = closed_form::classify(params);
  const bool in_regime = tag.tag != Regime::OutOfScope;
  if (options.force_sphere) {
    rep.candidate = closed_form::sphere_candidate(params);
  } else {
    rep.candidate = closed_form::candidate(params);
  }
  const bool sphere = rep.candidate.kind == CandidateKind::UniformSphere;
  const bool own_minimizer = in_regime && closed_form::candidate(params).kind == rep.candidate.kind;
  const double R = rep.candidate.radius;
  rep.eta = own_minimizer ? closed_form::eta(params) : potentials::total_potential(params, rep.candidate, R);

  const double scale = 1e-9 * std::max(1.0, std::abs(rep.eta));
  rep.tol_support = options.tol_support.value_or(scale);
  rep.tol_exterior = options.tol_exterior.value_or(scale);

  rep.grid = el_grid(rho_max, n_grid);
  rep.support_max_abs_dev = 0.0;
  rep.exterior_min_margin = std::numeric_limits<double>::infinity();
  for (double rho : rep.grid) {
    const double phi = potentials::total_potential(params, rep.candidate, R * std::sqrt(rho));
    const bool on_support = sphere ? rho == 1.0 : rho <= 1.0;
    if (on_support) {
      rep.support_max_abs_dev = std::max(rep.support_max_abs_dev, std::abs(phi - rep.eta));
    } else if (phi - rep.eta < rep.exterior_min_margin) {
      rep.exterior_min_margin = phi - rep.eta;
      rep.exterior_argmin_rho = rho;
    }
  }
  rep.passed = rep.support_max_abs_dev <= rep.tol_support && rep.exterior_min_margin >= -rep.tol_exterior;
  return rep;
}

namespace {

void require_psi_params(const KernelParams& p) {
  p.validate();
  if (p.alpha_is_log) throw RegimeError("psi_capital: alpha must not be logarithmic");
  if (p.d < 2) throw RegimeError("psi_capital: needs d >= 2");
}

}  // namespace

double psi_capital(const KernelParams& params, double rho) {
  require_psi_params(params);
  const int d = params.d;
  const double dpa = potentials::psi_values_at_one(d, params.alpha).first_deriv;
  const double pa = potentials::psi_gamma(d, params.alpha, rho);
  if (params.beta_is_log) {
    return potentials::tilde_psi0_prime(d, 1.0) / dpa * pa - potentials::tilde_psi0(d, rho);
  }
  const double dpb = potentials::psi_values_at_one(d, params.beta).first_deriv;
  return (dpb / dpa * pa - potentials::psi_gamma(d, params.beta, rho)) / params.beta;
}

double psi_capital_dd_at_one_formula(int d, double alpha, double beta) {
  const auto a = potentials::psi_values_at_one(d, alpha);
  const auto b = potentials::psi_values_at_one(d, beta);
  if (!a.second_deriv || !b.second_deriv) {
    throw DomainError("psi_capital_dd_at_one: needs d+beta > 3");
  }
  return (b.first_deriv / a.first_deriv * *a.second_deriv - *b.second_deriv) / beta;
}

double psi_capital_dd_at_one(const KernelParams& params) {
  require_psi_params(params);
  const int d = params.d;
  if (params.beta_is_log) {
    const auto a = potentials::psi_values_at_one(d, params.alpha);
    if (!a.second_deriv) throw DomainError("psi_capital_dd_at_one: needs d+alpha > 3");
    return potentials::tilde_psi0_prime(d, 1.0) / a.first_deriv * *a.second_deriv -
           potentials::tilde_psi0_second_at_one(d);
  }
  return psi_capital_dd_at_one_formula(d, params.alpha, params.beta);
}

ConvexityReport convexity_report(const KernelParams& params, double rho_max, int n_grid, double tol) {
  require_psi_params(params);
  if (!(rho_max > 0.0)) throw DomainError("convexity_report: rho_max must be positive");
  if (n_grid < 3) throw DomainError("convexity_report: n_grid must be at least 3");
  ConvexityReport rep;
  rep.tol = tol;
  rep.grid.resize(n_grid + 1);
  std::vector<double> psi(n_grid + 1);
  for (int i = 0; i <= n_grid; ++i) {
    rep.grid[i] = rho_max * i / n_grid;
    psi[i] = psi_capital(params, rep.grid[i]);
  }
  rep.min_second_difference = std::numeric_limits<double>::infinity();
  for (int i = 1; i < n_grid; ++i) {
    double dd = psi[i - 1] - 2.0 * psi[i] + psi[i + 1];
    if (dd < rep.min_second_difference) {
      rep.min_second_difference = dd;
      rep.argmin_rho = rep.grid[i];
    }
  }
  try {
    rep.psi_dd_at_one = psi_capital_dd_at_one(params);
  } catch (const DomainError&) {
    rep.psi_dd_at_one.reset();
  }
  rep.passed = rep.min_second_difference >= -tol;
  return rep;
}

SignPattern single_zero_scan(double a1, double b1, double a2, double b2, double c, double q, int n_grid) {
  if (!(q > 0.0)) throw DomainError("single_zero_scan: needs q > 0");
  if (!(a2 > 0.0 && a2 < a1)) throw DomainError("single_zero_scan: needs 0 < a2 < a1");
  if (!(b2 > 0.0 && b2 < b1)) throw DomainError("single_zero_scan: needs 0 < b2 < b1");
  if (!(c > a1 + b1)) throw DomainError("single_zero_scan: needs c > a1 + b1");
  if (n_grid < 1) throw DomainError("single_zero_scan: n_grid must be positive");
  SignPattern out;
  out.signs.reserve(n_grid + 1);
  for (int i = 0; i <= n_grid; ++i) {
    double f1 = 0.0;
    double f2 = 0.0;
    if (i == n_grid) {
      f1 = special::hyp2f1_at_one(a1, b1, c);
      f2 = special::hyp2f1_at_one(a2, b2, c);
    } else {
      double z = static_cast<double>(i) / n_grid;
      f1 = special::hyp2f1(a1, b1, c, z);
      f2 = special::hyp2f1(a2, b2, c, z);
    }
    double g = f1 - q * f2;
    int s = 0;
    if (std::abs(g) > 1e-12 * (std::abs(f1) + q * std::abs(f2))) s = g > 0.0 ? 1 : -1;
    out.signs.push_back(s);
  }
  int first = 0;
  int last = 0;
  int prev = 0;
  for (int s : out.signs) {
    if (s == 0) continue;
    if (first == 0) first = s;
    if (prev != 0 && s != prev) ++out.sign_changes;
    prev = s;
    last = s;
  }
  const bool ends_at_zero = out.signs.back() == 0;
  out.negative_to_positive = first == -1 && (last == 1 || ends_at_zero);
  return out;
}

}  // namespace aggremin::verify
