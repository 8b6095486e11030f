#include "aggremin/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "aggremin/errors.hpp"

namespace aggremin::special {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr std::size_t kTermCap = 2'000'000;
constexpr double kDirectLimit = 0.75;
constexpr double kIntegralSplit = 0.5;
constexpr double kIntegerBand = 1e-8;
constexpr double kTerminatingTol = 1e-12;
constexpr double kPi = std::numbers::pi;

std::string num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

// sin(pi x) and cos(pi x) after exact reduction of the integer part.
double sin_pi(double x) {
  double r = x - 2.0 * std::floor(x / 2.0);  // [0, 2)
  if (r == 0.0 || r == 1.0) return 0.0;
  return std::sin(kPi * r);
}

double cot_pi(double x) {
  double r = x - std::floor(x);  // (0, 1) away from poles
  return std::cos(kPi * r) / std::sin(kPi * r);
}

// Γ(x) as m * 2^e.
void scaled_gamma(double x, double& m, long& e) {
  int k = 0;
  if (x > -150.0 && x < 170.0) {
    m = std::frexp(std::tgamma(x), &k);
    e = k;
    return;
  }
  if (x > 0.0) {
    double lg = std::lgamma(x);
    double q = std::floor(lg / std::numbers::ln2);
    m = std::frexp(std::exp(lg - q * std::numbers::ln2), &k);
    e = static_cast<long>(q) + k;
    return;
  }
  // Reflection: Γ(x) = π / (sin(πx) Γ(1-x)).
  double m1 = 0.0;
  long e1 = 0;
  scaled_gamma(1.0 - x, m1, e1);
  m = std::frexp(kPi / (sin_pi(x) * m1), &k);
  e = k - e1;
}

bool terminating(double x, long& degree) {
  if (!is_nonpositive_integer(x, kTerminatingTol)) return false;
  degree = -std::lround(x);
  return true;
}

// Keeps the "3 consecutive negligible terms" bookkeeping in one place.
class TailCheck {
 public:
  bool done(double term, double sum) {
    if (term == 0.0) return true;
    if (std::abs(term) <= kEps * std::abs(sum)) {
      return ++small_ >= 3;
    }
    small_ = 0;
    return false;
  }

 private:
  int small_ = 0;
};

[[noreturn]] void fail_series(const char* what, double a, double b, double c, double z) {
  throw NonConvergence(std::string(what) + ": series did not converge within 2e6 terms (a=" + num(a) +
                       ", b=" + num(b) + ", c=" + num(c) + ", z=" + num(z) + ")");
}

double gauss_series(double a, double b, double c, double z) {
  double sum = 1.0;
  double term = 1.0;
  TailCheck check;
  for (std::size_t n = 0; n < kTermCap; ++n) {
    double dn = static_cast<double>(n);
    term *= (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0)) * z;
    sum += term;
    if (check.done(term, sum)) return sum;
  }
  fail_series("hyp2f1", a, b, c, z);
}

double gauss_polynomial(double a, double b, double c, double z, long degree) {
  double sum = 1.0;
  double term = 1.0;
  for (long n = 0; n < degree; ++n) {
    double dn = static_cast<double>(n);
    term *= (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0)) * z;
    sum += term;
  }
  return sum;
}

// Snaps near-integer terminating parameters and returns the polynomial degree,
// or -1 when neither a nor b terminates.
long terminating_degree(double& a, double& b) {
  long da = 0;
  long db = 0;
  bool ta = terminating(a, da);
  bool tb = terminating(b, db);
  if (ta) a = -static_cast<double>(da);
  if (tb) b = -static_cast<double>(db);
  if (ta && tb) return std::min(da, db);
  if (ta) return da;
  if (tb) return db;
  return -1;
}

double factorial(int m) {
  double f = 1.0;
  for (int k = 2; k <= m; ++k) f *= k;
  return f;
}

// F(a, b; a+b+m; 1-w) for integer m >= 0 (logarithmic connection formula).
double gauss_degenerate(double a, double b, int m, double w) {
  const double c = a + b + m;
  double result = 0.0;
  if (m > 0) {
    double pref = gamma_ratio(std::array<double, 2>{static_cast<double>(m), c},
                              std::array<double, 2>{a + m, b + m});
    double sum = 0.0;
    double t = 1.0;
    for (int n = 0; n < m; ++n) {
      sum += t;
      if (n + 1 < m) t *= (a + n) * (b + n) / ((n + 1.0) * (1.0 - m + n)) * w;
    }
    result += pref * sum;
  }
  double pref = gamma_ratio(std::array<double, 1>{c}, std::array<double, 2>{a, b});
  if (pref == 0.0) return result;

  const double lw = std::log(w);
  double e = 1.0 / factorial(m);
  double psi_n1 = -euler_gamma;
  double psi_nm1 = digamma(m + 1.0);
  double psi_a = digamma(a + m);
  double psi_b = digamma(b + m);
  double sum = 0.0;
  TailCheck check;
  for (std::size_t n = 0; n < kTermCap; ++n) {
    double dn = static_cast<double>(n);
    double contrib = e * (lw - psi_n1 - psi_nm1 + psi_a + psi_b);
    sum += contrib;
    if (check.done(contrib, sum)) {
      double sign = (m % 2 == 0) ? 1.0 : -1.0;
      return result - sign * std::pow(w, m) * pref * sum;
    }
    e *= (a + m + dn) * (b + m + dn) / ((dn + 1.0) * (dn + m + 1.0)) * w;
    psi_n1 += 1.0 / (dn + 1.0);
    psi_nm1 += 1.0 / (dn + m + 1.0);
    psi_a += 1.0 / (a + m + dn);
    psi_b += 1.0 / (b + m + dn);
  }
  fail_series("hyp2f1", a, b, c, 1.0 - w);
}

double gauss_connection(double a, double b, double c, double w, double s) {
  double A = gamma_ratio(std::array<double, 2>{c, s}, std::array<double, 2>{c - a, c - b});
  double B = gamma_ratio(std::array<double, 2>{c, -s}, std::array<double, 2>{a, b});
  double out = 0.0;
  if (A != 0.0) out += A * gauss_series(a, b, 1.0 - s, w);
  if (B != 0.0) out += B * std::pow(w, s) * gauss_series(c - a, c - b, 1.0 + s, w);
  return out;
}

double gauss_near_one(double a, double b, double c, double z) {
  const double w = 1.0 - z;
  const double s = c - a - b;
  const double m = std::nearbyint(s);
  if (std::abs(s - m) > kIntegerBand) return gauss_connection(a, b, c, w, s);
  if (m >= 0.0) return gauss_degenerate(a, b, static_cast<int>(m), w);

  // Euler transform F = (1-z)^s F(c-a, c-b; c; z) moves s to -s.
  double a2 = c - a;
  double b2 = c - b;
  long deg = terminating_degree(a2, b2);
  double inner = deg >= 0 ? gauss_polynomial(a2, b2, c, z, deg)
                          : gauss_degenerate(a2, b2, static_cast<int>(-m), w);
  return std::pow(w, s) * inner;
}

void check_c(double c, const char* fn) {
  if (is_nonpositive_integer(c, 0.0)) {
    throw DomainError(std::string(fn) + ": c must not be a non-positive integer (c=" + num(c) + ")");
  }
}

// ∫_0^W F(a, b; c; 1-w) dw, term by term from the connection formula.
double tail_integral(double a, double b, double c, double W) {
  if (W == 0.0) return 0.0;
  const double s = c - a - b;
  const double mr = std::nearbyint(s);
  const double lW = std::log(W);

  if (std::abs(s - mr) <= kIntegerBand) {
    if (mr < 0.0) {
      throw DomainError("hyp2f1_integral: c-a-b too close to -1 (" + num(s) + ")");
    }
    const int m = static_cast<int>(mr);
    const double cc = a + b + m;
    double result = 0.0;
    if (m > 0) {
      double pref = gamma_ratio(std::array<double, 2>{static_cast<double>(m), cc},
                                std::array<double, 2>{a + m, b + m});
      double sum = 0.0;
      double t = 1.0;
      double Wp = W;
      for (int n = 0; n < m; ++n) {
        sum += t * Wp / (n + 1.0);
        Wp *= W;
        if (n + 1 < m) t *= (a + n) * (b + n) / ((n + 1.0) * (1.0 - m + n));
      }
      result += pref * sum;
    }
    double pref = gamma_ratio(std::array<double, 1>{cc}, std::array<double, 2>{a, b});
    if (pref == 0.0) return result;
    double e = 1.0 / factorial(m);
    double Wk = std::pow(W, m + 1);
    double psi_n1 = -euler_gamma;
    double psi_nm1 = digamma(m + 1.0);
    double psi_a = digamma(a + m);
    double psi_b = digamma(b + m);
    double sum = 0.0;
    TailCheck check;
    for (std::size_t n = 0; n < kTermCap; ++n) {
      double dn = static_cast<double>(n);
      double k = dn + m + 1.0;
      double h = psi_n1 + psi_nm1 - psi_a - psi_b;
      double contrib = e * Wk * ((lW - h) / k - 1.0 / (k * k));
      sum += contrib;
      if (check.done(contrib, sum)) {
        double sign = (m % 2 == 0) ? 1.0 : -1.0;
        return result - sign * pref * sum;
      }
      e *= (a + m + dn) * (b + m + dn) / ((dn + 1.0) * (dn + m + 1.0));
      Wk *= W;
      psi_n1 += 1.0 / (dn + 1.0);
      psi_nm1 += 1.0 / (dn + m + 1.0);
      psi_a += 1.0 / (a + m + dn);
      psi_b += 1.0 / (b + m + dn);
    }
    fail_series("hyp2f1_integral", a, b, c, 1.0 - W);
  }

  double A = gamma_ratio(std::array<double, 2>{c, s}, std::array<double, 2>{c - a, c - b});
  double B = gamma_ratio(std::array<double, 2>{c, -s}, std::array<double, 2>{a, b});
  double out = 0.0;
  if (A != 0.0) {
    double p = 1.0;
    double Wp = W;
    double sum = 0.0;
    TailCheck check;
    std::size_t n = 0;
    for (; n < kTermCap; ++n) {
      double dn = static_cast<double>(n);
      double contrib = p * Wp / (dn + 1.0);
      sum += contrib;
      if (check.done(contrib, sum)) break;
      p *= (a + dn) * (b + dn) / ((1.0 - s + dn) * (dn + 1.0));
      Wp *= W;
    }
    if (n == kTermCap) fail_series("hyp2f1_integral", a, b, c, 1.0 - W);
    out += A * sum;
  }
  if (B != 0.0) {
    double q = 1.0;
    double Wp = 1.0;
    double sum = 0.0;
    TailCheck check;
    std::size_t n = 0;
    for (; n < kTermCap; ++n) {
      double dn = static_cast<double>(n);
      double contrib = q * Wp / (s + dn + 1.0);
      sum += contrib;
      if (check.done(contrib, sum)) break;
      q *= (c - a + dn) * (c - b + dn) / ((1.0 + s + dn) * (dn + 1.0));
      Wp *= W;
    }
    if (n == kTermCap) fail_series("hyp2f1_integral", a, b, c, 1.0 - W);
    out += B * std::exp((s + 1.0) * lW) * sum;
  }
  return out;
}

// ∫_{z0}^{z1} F dt from the power series, z1 <= 1/2.
double direct_integral(double a, double b, double c, double z0, double z1) {
  double coef = 1.0;
  double p0 = z0;
  double p1 = z1;
  double sum = 0.0;
  TailCheck check;
  for (std::size_t n = 0; n < kTermCap; ++n) {
    double dn = static_cast<double>(n);
    double contrib = coef * (p1 - p0) / (dn + 1.0);
    sum += contrib;
    if (check.done(contrib, sum)) return sum;
    coef *= (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0));
    p0 *= z0;
    p1 *= z1;
  }
  fail_series("hyp2f1_integral", a, b, c, z0);
}

// Levin u-transform of the partial sums S_0..S_{k}; `terms[n]` is the n-th term.
double levin_u(const std::vector<double>& terms, const std::vector<double>& partial, int k) {
  double num_sum = 0.0;
  double den_sum = 0.0;
  double binom = 1.0;
  for (int j = 0; j <= k; ++j) {
    double ratio = std::pow((j + 1.0) / (k + 1.0), k - 1);
    double weight = ((j % 2 == 0) ? 1.0 : -1.0) * binom * ratio / ((j + 1.0) * terms[j]);
    num_sum += weight * partial[j];
    den_sum += weight;
    binom *= static_cast<double>(k - j) / (j + 1.0);
  }
  return num_sum / den_sum;
}

}  // namespace

namespace detail {

void ScaledProduct::multiply_by_gamma(double x) {
  if (is_nonpositive_integer(x, 0.0)) throw PoleError("gamma_ratio: pole at " + num(x));
  double m = 0.0;
  long e = 0;
  scaled_gamma(x, m, e);
  int k = 0;
  mantissa_ = std::frexp(mantissa_ * m, &k);
  exponent_ += e + k;
}

void ScaledProduct::divide_by_gamma(double x) {
  double m = 0.0;
  long e = 0;
  scaled_gamma(x, m, e);
  int k = 0;
  mantissa_ = std::frexp(mantissa_ / m, &k);
  exponent_ += k - e;
}

double ScaledProduct::value() const {
  if (mantissa_ == 0.0) return 0.0;
  if (exponent_ > std::numeric_limits<int>::max()) return std::copysign(HUGE_VAL, mantissa_);
  if (exponent_ < std::numeric_limits<int>::min()) return std::copysign(0.0, mantissa_);
  return std::ldexp(mantissa_, static_cast<int>(exponent_));
}

}  // namespace detail

bool is_nonpositive_integer(double x, double tol) {
  if (x > tol) return false;
  return std::abs(x - std::nearbyint(x)) <= tol;
}

double gamma_fn(double x) {
  if (is_nonpositive_integer(x, 0.0)) throw PoleError("gamma: pole at " + num(x));
  return std::tgamma(x);
}

double rgamma(double x) {
  if (is_nonpositive_integer(x, 0.0)) return 0.0;
  if (x > 0.0 && x >= 171.0) return 0.0;
  if (x < -150.0) {
    // 1/Γ(x) = sin(πx) Γ(1-x) / π
    return sin_pi(x) * std::tgamma(1.0 - x) / kPi;
  }
  return 1.0 / std::tgamma(x);
}

double digamma(double x) {
  if (is_nonpositive_integer(x, 0.0)) throw PoleError("digamma: pole at " + num(x));
  if (x < 0.5) return digamma(1.0 - x) - kPi * cot_pi(x);
  double result = 0.0;
  while (x < 10.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  double inv2 = 1.0 / (x * x);
  double series =
      inv2 * (1.0 / 12 -
              inv2 * (1.0 / 120 -
                      inv2 * (1.0 / 252 -
                              inv2 * (1.0 / 240 - inv2 * (1.0 / 132 - inv2 * (691.0 / 32760 - inv2 / 12))))));
  return result + std::log(x) - 0.5 / x - series;
}

double pochhammer(double x, unsigned n) {
  double p = 1.0;
  for (unsigned k = 0; k < n; ++k) p *= x + k;
  return p;
}

double hyp2f1(const Hyp2F1Input& in) { return hyp2f1(in.a, in.b, in.c, in.z); }

double hyp2f1(double a, double b, double c, double z) {
  check_c(c, "hyp2f1");
  if (!(z >= 0.0 && z < 1.0)) {
    throw DomainError("hyp2f1: z must lie in [0, 1) (z=" + num(z) + ")");
  }
  if (z == 0.0) return 1.0;
  long deg = terminating_degree(a, b);
  if (deg >= 0) return gauss_polynomial(a, b, c, z, deg);
  if (z <= kDirectLimit) return gauss_series(a, b, c, z);
  return gauss_near_one(a, b, c, z);
}

double hyp2f1_at_one(double a, double b, double c) {
  check_c(c, "hyp2f1_at_one");
  double s = c - a - b;
  long deg = terminating_degree(a, b);
  if (deg >= 0) return gauss_polynomial(a, b, c, 1.0, deg);
  if (!(s > 0.0)) {
    throw DomainError("hyp2f1_at_one: series diverges at z=1 since c-a-b=" + num(s) + " <= 0");
  }
  return gamma_ratio(std::array<double, 2>{c, s}, std::array<double, 2>{c - a, c - b});
}

double hyp2f1_deriv(const Hyp2F1Input& in, int order) {
  if (order != 1 && order != 2) throw DomainError("hyp2f1_deriv: order must be 1 or 2");
  check_c(in.c, "hyp2f1_deriv");
  double coef = in.a * in.b / in.c;
  if (order == 2) coef *= (in.a + 1.0) * (in.b + 1.0) / (in.c + 1.0);
  if (coef == 0.0) return 0.0;
  double a = in.a + order;
  double b = in.b + order;
  double c = in.c + order;
  if (in.z == 1.0) return coef * hyp2f1_at_one(a, b, c);
  return coef * hyp2f1(a, b, c, in.z);
}

double hyp2f1_integral(double a, double b, double c, double z) {
  check_c(c, "hyp2f1_integral");
  if (!(z >= 0.0 && z <= 1.0)) {
    throw DomainError("hyp2f1_integral: z must lie in [0, 1] (z=" + num(z) + ")");
  }
  if (z == 1.0) return 0.0;
  long deg = terminating_degree(a, b);
  if (deg >= 0) {
    double sum = 0.0;
    double coef = 1.0;
    double zp = z;
    for (long n = 0; n <= deg; ++n) {
      double dn = static_cast<double>(n);
      sum += coef * (1.0 - zp) / (dn + 1.0);
      coef *= (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0));
      zp *= z;
    }
    return sum;
  }
  if (!(c - a - b > -1.0)) {
    throw DomainError("hyp2f1_integral: needs c-a-b > -1 (c-a-b=" + num(c - a - b) + ")");
  }
  if (z >= kIntegralSplit) return tail_integral(a, b, c, 1.0 - z);
  return direct_integral(a, b, c, z, kIntegralSplit) + tail_integral(a, b, c, 1.0 - kIntegralSplit);
}

double hyp3f2(const std::array<double, 3>& a, const std::array<double, 2>& b, double z) {
  check_c(b[0], "hyp3f2");
  check_c(b[1], "hyp3f2");
  if (!(z >= 0.0 && z <= 1.0)) {
    throw DomainError("hyp3f2: z must lie in [0, 1] (z=" + num(z) + ")");
  }
  if (z == 0.0) return 1.0;

  auto ratio = [&](double n) {
    return (a[0] + n) * (a[1] + n) * (a[2] + n) / ((b[0] + n) * (b[1] + n) * (n + 1.0));
  };

  long deg = -1;
  for (double x : a) {
    long dx = 0;
    if (terminating(x, dx) && (deg < 0 || dx < deg)) deg = dx;
  }
  if (deg >= 0) {
    std::array<double, 3> as = a;
    for (double& x : as) {
      if (is_nonpositive_integer(x, kTerminatingTol)) x = std::nearbyint(x);
    }
    double sum = 1.0;
    double term = 1.0;
    for (long n = 0; n < deg; ++n) {
      double dn = static_cast<double>(n);
      term *= (as[0] + dn) * (as[1] + dn) * (as[2] + dn) / ((b[0] + dn) * (b[1] + dn) * (dn + 1.0)) * z;
      sum += term;
    }
    return sum;
  }

  if (z < 1.0) {
    double sum = 1.0;
    double term = 1.0;
    TailCheck check;
    for (std::size_t n = 0; n < kTermCap; ++n) {
      term *= ratio(static_cast<double>(n)) * z;
      sum += term;
      if (check.done(term, sum)) return sum;
    }
    throw NonConvergence("hyp3f2: series did not converge within 2e6 terms (z=" + num(z) + ")");
  }

  double s = b[0] + b[1] - a[0] - a[1] - a[2];
  if (!(s > 0.0)) {
    throw DomainError("hyp3f2: series diverges at z=1 since b0+b1-a0-a1-a2=" + num(s) + " <= 0");
  }
  constexpr int kMaxOrder = 40;
  std::vector<double> terms(kMaxOrder + 1);
  std::vector<double> partial(kMaxOrder + 1);
  double term = 1.0;
  double sum = 0.0;
  for (int n = 0; n <= kMaxOrder; ++n) {
    sum += term;
    terms[n] = term;
    partial[n] = sum;
    term *= ratio(n);
  }
  // Pick the order whose neighbours on both sides agree best; a single close pair can be accidental.
  std::vector<double> est(kMaxOrder);
  for (int k = 1; k <= kMaxOrder; ++k) est[k - 1] = levin_u(terms, partial, k);
  double best = est[0];
  double best_diff = HUGE_VAL;
  for (int i = 1; i + 1 < kMaxOrder; ++i) {
    double diff = std::max(std::abs(est[i] - est[i - 1]), std::abs(est[i + 1] - est[i]));
    if (std::isfinite(est[i]) && diff < best_diff) {
      best_diff = diff;
      best = est[i];
    }
  }
  if (!std::isfinite(best)) throw NonConvergence("hyp3f2: extrapolation at z=1 failed");
  return best;
}

}  // namespace aggremin::special
