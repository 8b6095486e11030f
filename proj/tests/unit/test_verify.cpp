#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "aggremin/closed_form.hpp"
#include "aggremin/errors.hpp"
#include "aggremin/potentials.hpp"
#include "aggremin/special_functions.hpp"
#include "aggremin/verify.hpp"
#include "oracle_values.hpp"
#include "test_util.hpp"

using namespace aggremin;
using namespace aggremin::verify;
using testutil::rel_err;

constexpr double kPi = std::numbers::pi;

TEST(SpherePotentialQuad, Examples) {
  for (int d : {2, 3, 5})
    for (double g : {-0.5, 1.0, 3.0}) EXPECT_LT(rel_err(sphere_potential_quad(d, g, 0.0), potentials::sphere_area(d)), 1e-12);
  EXPECT_LT(rel_err(sphere_potential_quad(3, -1.0, 2.0), 2 * kPi), 1e-12);
  EXPECT_THROW(sphere_potential_quad(3, -2.0, 1.0), DomainError);
  EXPECT_THROW(sphere_potential_quad(1, 1.0, 0.5), DomainError);
}

TEST(SpherePotentialQuad, MatchesOracle) {
  for (const auto& c : oracle::kSpherePotential) {
    EXPECT_LT(rel_err(sphere_potential_quad(c.d, c.gamma, c.x), c.value), 1e-10) << c.d << " " << c.gamma << " " << c.x;
  }
}

TEST(BallPotentialQuad, Examples) {
  for (int d : {1, 2, 3}) {
    double g = 0.5 - d;
    double a = std::pow(kPi, d / 2.0) * std::tgamma((4 - g - d) / 2) * std::tgamma((g + d) / 2) / std::tgamma(d / 2.0);
    EXPECT_LT(rel_err(ball_potential_quad(d, g, 0.0), a), 1e-8) << d;
  }
  for (double x : {0.0, 0.4, 3.0}) EXPECT_LT(rel_err(ball_potential_quad(2, 0.0, x), kPi), 1e-12) << x;
  EXPECT_LT(rel_err(ball_potential_quad(3, -0.5, 2.0), potentials::ball_potential(3, -0.5, 2.0)), 1e-8);
  EXPECT_THROW(ball_potential_quad(3, 1.0, 0.5), DomainError);
}

TEST(BallPotentialQuad, MatchesOracle) {
  for (const auto& c : oracle::kBallPotential) {
    EXPECT_LT(rel_err(ball_potential_quad(c.d, c.gamma, c.x), c.value), 1e-10) << c.d << " " << c.gamma << " " << c.x;
  }
}

TEST(LogAverageQuad, MatchesOracle) {
  for (const auto& c : oracle::kSphereLogAverage) {
    EXPECT_NEAR(sphere_log_average_quad(c.d, c.x), c.value, 1e-11) << c.d << " " << c.x;
  }
}

TEST(OracleDuality, DeclaredGrid) {
  for (int d : {2, 3, 4})
    for (double g : {-1.5, -1.0, -0.5, 0.5, 1.0, 2.0, 3.7})
      for (double x : {0.2, 0.6, 0.9, 1.5, 3.0}) {
        if (d + g > 2.0) {
          EXPECT_LT(rel_err(potentials::sphere_potential(d, g, x), sphere_potential_quad(d, g, x)), 1e-8)
              << d << " " << g << " " << x;
        }
        if (g > -d && g < 4.0 - d) {
          EXPECT_LT(rel_err(potentials::ball_potential(d, g, x), ball_potential_quad(d, g, x)), 1e-8)
              << d << " " << g << " " << x;
        }
      }
}

TEST(ElGrid, Shape) {
  auto g = el_grid(25.0, 2000);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_EQ(g.back(), 25.0);
  EXPECT_TRUE(std::is_sorted(g.begin(), g.end()));
  EXPECT_NE(std::find(g.begin(), g.end(), 1.0), g.end());
  long near_one = std::count_if(g.begin(), g.end(), [](double r) { return r >= 0.5 && r <= 2.0; });
  EXPECT_GE(near_one, 1150);
  EXPECT_THROW(el_grid(0.9, 100), DomainError);
}

TEST(EulerLagrange, Examples) {
  auto sphere = verify_euler_lagrange(KernelParams::power(3, 2.0, 1.5));
  EXPECT_TRUE(sphere.passed);
  EXPECT_GE(sphere.exterior_min_margin, -1e-9 * std::abs(sphere.eta));
  EXPECT_EQ(sphere.candidate.kind, CandidateKind::UniformSphere);

  auto ball = verify_euler_lagrange(KernelParams::power(2, 2.0, -1.0));
  EXPECT_TRUE(ball.passed);
  EXPECT_LE(ball.support_max_abs_dev, 1e-9 * std::abs(ball.eta));
  EXPECT_EQ(ball.candidate.kind, CandidateKind::BallProfile);

  auto forced = verify_euler_lagrange(KernelParams::power(3, 2.0, 0.7), 25.0, 2000, {.force_sphere = true});
  EXPECT_FALSE(forced.passed);
  EXPECT_LT(forced.exterior_min_margin, 0.0);
  // The dip straddles ρ = 1 on both sides.
  auto p07 = KernelParams::power(3, 2.0, 0.7);
  const double R = forced.candidate.radius;
  for (double rho : {0.98, 1.02})
    EXPECT_LT(potentials::total_potential(p07, forced.candidate, R * std::sqrt(rho)), forced.eta) << rho;

  EXPECT_THROW(verify_euler_lagrange(KernelParams::power(3, 5.0, 1.0)), RegimeError);
  EXPECT_THROW(verify_euler_lagrange(KernelParams::power(3, 2.0, 1.5), 0.5), DomainError);
  EXPECT_THROW(verify_euler_lagrange(KernelParams::power(3, 2.0, 1.5), 25.0, 50), DomainError);
}

TEST(EulerLagrange, LogCasesPass) {
  for (auto p : {KernelParams::log_beta(2, 2.0), KernelParams::log_beta(3, 2.0), KernelParams::log_beta(4, 3.0),
                 KernelParams::log_beta(4, 2.0)}) {
    auto rep = verify_euler_lagrange(p);
    EXPECT_TRUE(rep.passed) << p.d << " " << p.alpha << " " << rep.support_max_abs_dev << " " << rep.exterior_min_margin;
  }
}

TEST(EulerLagrange, PassedMatchesTolerances) {
  for (auto p : {KernelParams::power(3, 3.0, 1.2), KernelParams::power(3, 2.0, 0.5), KernelParams::power(2, 4.0, 1.0)}) {
    auto rep = verify_euler_lagrange(p, 25.0, 500, {.force_sphere = true});
    EXPECT_EQ(rep.passed, rep.support_max_abs_dev <= rep.tol_support && rep.exterior_min_margin >= -rep.tol_exterior);
  }
}

TEST(PsiCapital, VanishingSlopeAtOne) {
  for (auto p : {KernelParams::power(3, 2.0, 1.5), KernelParams::power(2, 3.0, 1.75), KernelParams::power(5, 4.0, -0.5),
                 KernelParams::log_beta(4, 3.0)}) {
    const double h = 1e-5;
    double slope = (psi_capital(p, 1.0 + h) - psi_capital(p, 1.0 - h)) / (2 * h);
    EXPECT_LE(std::abs(slope), 1e-9) << p.d << " " << p.alpha << " " << p.beta;
  }
}

TEST(PsiCapital, MinimumAtOne) {
  for (auto p : {KernelParams::power(3, 2.0, 1.5), KernelParams::power(3, 3.0, 1.2), KernelParams::log_beta(4, 2.0)}) {
    const double at_one = psi_capital(p, 1.0);
    for (double rho = 0.0; rho <= 10.0; rho += 0.05)
      EXPECT_GE(psi_capital(p, rho) - at_one, -1e-12) << p.d << " " << p.alpha << " " << rho;
  }
}

TEST(PsiCapital, LogLimitUpToConstant) {
  // β⁻¹ψ_β = β⁻¹ + ψ̃₀ + O(β), so Ψ_β differs from the log version by -1/β in the limit.
  auto logp = KernelParams::log_beta(4, 2.0);
  auto nearp = KernelParams::power(4, 2.0, 1e-5);
  double shift = psi_capital(nearp, 1.0) - psi_capital(logp, 1.0);
  EXPECT_LT(rel_err(shift, -1e5), 1e-6);
  EXPECT_LE(std::abs((psi_capital(nearp, 4.0) - shift) - psi_capital(logp, 4.0)), 1e-3);
  EXPECT_THROW(KernelParams::power(4, 2.0, 1e-7), IllConditioned);
}

TEST(PsiCapitalDD, MatchesOracle) {
  for (const auto& c : oracle::kPsiDDAtOne) {
    auto p = KernelParams::power(c.d, c.alpha, c.beta);
    EXPECT_NEAR(psi_capital_dd_at_one(p), c.value, 1e-9 * std::max(1.0, std::abs(c.value))) << c.d << " " << c.alpha;
  }
}

TEST(PsiCapitalDD, Examples) {
  const double bs = closed_form::beta_star(3, 3.0);
  EXPECT_LE(std::abs(psi_capital_dd_at_one_formula(3, 3.0, bs)), 1e-10);
  for (int d : {3, 5})
    for (double alpha : {2.0, 3.0, 4.0}) {
      const double b = closed_form::beta_star(d, alpha);
      EXPECT_GT(psi_capital_dd_at_one_formula(d, alpha, b + 0.05), 0.0) << d << " " << alpha;
      EXPECT_LT(psi_capital_dd_at_one_formula(d, alpha, b - 0.05), 0.0) << d << " " << alpha;
    }
  EXPECT_THROW(psi_capital_dd_at_one_formula(2, 3.0, 0.5), DomainError);
}

TEST(PsiCapitalDD, MatchesSecondDifference) {
  // Second-order one-sided stencil from inside; the non-smooth part of Ψ'' is O((1-ρ)^{d+β-3}), so the cases keep d+β ≥ 4.5.
  for (auto p : {KernelParams::power(5, 2.0, -0.5), KernelParams::power(4, 2.5, 0.5), KernelParams::power(5, 4.0, 0.5),
                 KernelParams::power(6, 3.0, -1.0)}) {
    const double h = 1e-4;
    double dd = (2 * psi_capital(p, 1.0) - 5 * psi_capital(p, 1.0 - h) + 4 * psi_capital(p, 1.0 - 2 * h) -
                 psi_capital(p, 1.0 - 3 * h)) /
                (h * h);
    EXPECT_NEAR(psi_capital_dd_at_one(p), dd, 1e-5) << p.d << " " << p.alpha << " " << p.beta;
  }
}

TEST(Convexity, Examples) {
  auto good = convexity_report(KernelParams::power(3, 2.0, 1.5), 10.0, 400);
  EXPECT_TRUE(good.passed);
  EXPECT_GE(good.min_second_difference, -1e-7);
  ASSERT_TRUE(good.psi_dd_at_one);
  EXPECT_GT(*good.psi_dd_at_one, 0.0);

  auto edge = convexity_report(KernelParams::power(2, 4.0, 4.0 / 3.0), 10.0, 400);
  EXPECT_TRUE(edge.passed);

  auto bad = convexity_report(KernelParams::power(3, 2.0, 0.5), 10.0, 400);
  EXPECT_FALSE(bad.passed);
  EXPECT_LT(bad.min_second_difference, 0.0);
  EXPECT_NEAR(bad.argmin_rho, 1.0, 0.3);

  EXPECT_THROW(convexity_report(KernelParams::power(3, 2.0, 1.5), -1.0, 400), DomainError);
}

TEST(SingleZero, Examples) {
  auto tiny = single_zero_scan(2.0, 1.5, 1.0, 0.5, 4.0, 1e-9, 200);
  EXPECT_EQ(tiny.sign_changes, 0);
  for (int s : tiny.signs) EXPECT_EQ(s, 1);

  const double q = special::hyp2f1_at_one(2.0, 1.5, 4.0) / special::hyp2f1_at_one(1.0, 0.5, 4.0);
  auto edge = single_zero_scan(2.0, 1.5, 1.0, 0.5, 4.0, q, 200);
  EXPECT_EQ(edge.signs.back(), 0);
  EXPECT_EQ(edge.signs.front(), -1);
  EXPECT_TRUE(edge.negative_to_positive);
  EXPECT_LE(edge.sign_changes, 1);

  EXPECT_THROW(single_zero_scan(2.0, 1.5, 1.0, 0.5, 3.0, 1.0, 10), DomainError);
  EXPECT_THROW(single_zero_scan(1.0, 1.5, 2.0, 0.5, 4.0, 1.0, 10), DomainError);
}

TEST(SingleZeroProperty, AtMostOneChange) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.05, 3.0), slack(0.05, 3.0), lq(-3.0, 3.0);
  for (int k = 0; k < 300; ++k) {
    double a1 = u(rng), b1 = u(rng);
    double a2 = a1 * std::uniform_real_distribution<double>(0.05, 0.95)(rng);
    double b2 = b1 * std::uniform_real_distribution<double>(0.05, 0.95)(rng);
    double c = a1 + b1 + slack(rng);
    double q = std::pow(10.0, lq(rng));
    auto s = single_zero_scan(a1, b1, a2, b2, c, q, 100);
    EXPECT_LE(s.sign_changes, 1);
    if (s.sign_changes == 1) EXPECT_TRUE(s.negative_to_positive);
  }
}
