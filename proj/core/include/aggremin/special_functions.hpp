#pragma once

#include <array>
#include <cstdint>

namespace aggremin::special {

/// Gamma function. Throws PoleError at 0, -1, -2, ...
double gamma_fn(double x);

/// Reciprocal gamma 1/Γ(x); exactly zero at the poles of Γ.
double rgamma(double x);

/// Digamma Γ'(x)/Γ(x). Throws PoleError at 0, -1, -2, ...
double digamma(double x);

/// Rising factorial x(x+1)...(x+n-1), with (x)_0 = 1.
double pochhammer(double x, unsigned n);

/// True when x is within `tol` of one of 0, -1, -2, ...
bool is_nonpositive_integer(double x, double tol = 1e-12);

/// Γ(n0)Γ(n1).../(Γ(d0)Γ(d1)...) evaluated without intermediate overflow.
/// Denominator poles make the ratio zero; numerator poles throw PoleError.
template <std::size_t N, std::size_t M>
double gamma_ratio(const std::array<double, N>& num, const std::array<double, M>& den);

/// Argument pack of the Gauss hypergeometric function F(a, b; c; z).
struct Hyp2F1Input {
  double a = 0.0;
  double b = 0.0;
  double c = 1.0;
  double z = 0.0;
};

/// Gauss hypergeometric series F(a, b; c; z) for real z in [0, 1).
///
/// z <= 0.75 is summed directly. Above that the value is obtained from the
/// z -> 1-z connection formula; when c-a-b is within 1e-8 of an integer the
/// logarithmic (degenerate) form of that formula is used instead, which caps
/// accuracy at about 1e-8 inside that band. Terminating series (a or b a
/// non-positive integer) are summed exactly.
///
/// Throws DomainError for z outside [0, 1) or c a non-positive integer, and
/// NonConvergence if a series exceeds 2e6 terms.
double hyp2f1(const Hyp2F1Input& in);
double hyp2f1(double a, double b, double c, double z);

/// Gauss' value F(a, b; c; 1) = Γ(c)Γ(c-a-b) / (Γ(c-a)Γ(c-b)); needs c-a-b > 0.
double hyp2f1_at_one(double a, double b, double c);

/// d/dz or d²/dz² of F(a, b; c; z) on [0, 1] via the parameter shift
/// F' = (ab/c) F(a+1, b+1; c+1; z). At z = 1 the boundary derivative needs
/// c-a-b > order.
double hyp2f1_deriv(const Hyp2F1Input& in, int order);

/// ∫_z^1 F(a, b; c; t) dt for z in [0, 1]; needs c-a-b > -1.
double hyp2f1_integral(double a, double b, double c, double z);

/// Generalized hypergeometric series 3F2(a0, a1, a2; b0, b1; z) on [0, 1].
/// At z = 1 it requires b0+b1-a0-a1-a2 > 0; the tail is then extrapolated
/// with a Levin u-transform.
double hyp3f2(const std::array<double, 3>& a, const std::array<double, 2>& b, double z);

/// Euler-Mascheroni constant.
inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

}  // namespace aggremin::special

#include "aggremin/detail/gamma_ratio.ipp"
