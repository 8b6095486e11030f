#include "aggremin/flow.hpp"

#include <tbb/blocked_range.h>
#include <tbb/parallel_for.h>
#include <tbb/parallel_reduce.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>

#include "aggremin/closed_form.hpp"
#include "aggremin/errors.hpp"

namespace aggremin::flow {

namespace {

constexpr double kMinStep = 1e-16;
constexpr double kRoundoffBand = 1e-11;

double dist2(const double* a, const double* b, int d) {
  double s = 0.0;
  for (int k = 0; k < d; ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return s;
}

double dist(const double* a, const double* b, int d) { return std::sqrt(dist2(a, b, d)); }

// s^(e/2), with multiplications when e is a small integer.
double half_power(double s, double e) {
  if (e != std::round(e) || std::abs(e) > 8.0) return std::pow(s, 0.5 * e);
  const int m = static_cast<int>(std::abs(e));
  double out = (m % 2 != 0) ? std::sqrt(s) : 1.0;
  for (int k = 0; k < m / 2; ++k) out *= s;
  return e < 0.0 ? 1.0 / out : out;
}

// W and ∇W as functions of the squared distance s > 0.
struct PairKernel {
  double a, b;
  bool a_log, b_log;

  explicit PairKernel(const KernelParams& p)
      : a(p.alpha_is_log ? 0.0 : p.alpha), b(p.beta_is_log ? 0.0 : p.beta), a_log(p.alpha_is_log), b_log(p.beta_is_log) {}

  static double term(double g, bool is_log, double s) { return is_log ? 0.5 * std::log(s) : half_power(s, g) / g; }
  double energy(double s) const { return term(a, a_log, s) - term(b, b_log, s); }
  // ∇W(z) = (|z|^{α-2} - |z|^{β-2}) z; a log term has exponent 0.
  double grad_factor(double s) const { return half_power(s, a - 2.0) - half_power(s, b - 2.0); }
};

bool singular_at_zero(const KernelParams& p) { return p.beta_is_log || p.beta <= 0.0; }

// W at a pair distance; nullopt for a coincident pair.
std::optional<double> pair_energy(const KernelParams& p, double r) {
  if (r == 0.0) {
    if (singular_at_zero(p)) return std::nullopt;
    return 0.0;
  }
  return PairKernel(p).energy(r * r);
}

// Energy of `x`; nullopt when two particles coincide.
std::optional<double> energy_of(const KernelParams& p, const std::vector<double>& x, int n, Accumulation mode) {
  const int d = p.d;
  const PairKernel w(p);
  auto row = [&](int i, bool& ok) {
    double sum = 0.0;
    for (int j = i + 1; j < n; ++j) {
      double s = dist2(&x[std::size_t(i) * d], &x[std::size_t(j) * d], d);
      if (s == 0.0) {
        ok = false;
        return 0.0;
      }
      sum += w.energy(s);
    }
    return sum;
  };
  const double scale = 1.0 / (double(n) * n);
  if (mode == Accumulation::Deterministic) {
    std::vector<double> rows(n);
    std::vector<char> ok(n, 1);
    tbb::parallel_for(0, n, [&](int i) {
      bool good = true;
      rows[i] = row(i, good);
      ok[i] = good;
    });
    if (std::find(ok.begin(), ok.end(), 0) != ok.end()) return std::nullopt;
    return scale * std::accumulate(rows.begin(), rows.end(), 0.0);
  }
  struct Acc {
    double sum = 0.0;
    bool ok = true;
  };
  Acc total = tbb::parallel_reduce(
      tbb::blocked_range<int>(0, n), Acc{},
      [&](const tbb::blocked_range<int>& r, Acc acc) {
        for (int i = r.begin(); i < r.end() && acc.ok; ++i) {
          bool good = true;
          acc.sum += row(i, good);
          acc.ok = good;
        }
        return acc;
      },
      [](Acc a, const Acc& b) {
        a.sum += b.sum;
        a.ok = a.ok && b.ok;
        return a;
      });
  if (!total.ok) return std::nullopt;
  return scale * total.sum;
}

// E(y) - E(x) summed pairwise from the displacement, so that a change far below the
// rounding level of E itself keeps its sign. Requires all pairs of x and y to be distinct.
double energy_change(const KernelParams& p, const std::vector<double>& x, const std::vector<double>& y, int n) {
  const int d = p.d;
  const PairKernel w(p);
  auto rel_change = [](double g, bool is_log, double t) {
    // (s'/s)^{g/2} - 1 scaled back by 1/g, or ½ ln(s'/s) for a log term, with t = (s'-s)/s.
    return is_log ? 0.5 * std::log1p(t) : std::expm1(0.5 * g * std::log1p(t)) / g;
  };
  std::vector<double> rows(n);
  tbb::parallel_for(0, n, [&](int i) {
    const double* xi = &x[std::size_t(i) * d];
    const double* yi = &y[std::size_t(i) * d];
    double sum = 0.0;
    for (int j = i + 1; j < n; ++j) {
      const double* xj = &x[std::size_t(j) * d];
      const double* yj = &y[std::size_t(j) * d];
      double s = 0.0;
      double ds = 0.0;
      for (int k = 0; k < d; ++k) {
        const double a = xi[k] - xj[k];
        const double b = yi[k] - yj[k];
        const double move = (yi[k] - xi[k]) - (yj[k] - xj[k]);
        s += a * a;
        ds += move * (a + b);
      }
      const double t = ds / s;
      const double ta = w.a_log ? 0.0 : half_power(s, w.a);
      const double tb = w.b_log ? 0.0 : half_power(s, w.b);
      sum += (w.a_log ? 1.0 : ta) * rel_change(w.a, w.a_log, t) - (w.b_log ? 1.0 : tb) * rel_change(w.b, w.b_log, t);
    }
    rows[i] = sum;
  });
  return std::accumulate(rows.begin(), rows.end(), 0.0) / (double(n) * n);
}

}  // namespace

double kernel_w(const KernelParams& params, double r) {
  params.validate();
  if (!(r >= 0.0)) throw DomainError("kernel_w: r must be >= 0");
  auto w = pair_energy(params, r);
  if (!w) throw DomainError("kernel_w: W is infinite at r = 0 for beta <= 0");
  return *w;
}

std::vector<double> force(const KernelParams& params, const std::vector<double>& z) {
  params.validate();
  if (z.size() != std::size_t(params.d)) throw DomainError("force: offset has the wrong dimension");
  double s = std::inner_product(z.begin(), z.end(), z.begin(), 0.0);
  if (s == 0.0) throw DomainError("force: zero offset");
  const double f = PairKernel(params).grad_factor(s);
  std::vector<double> out(z.size());
  for (std::size_t k = 0; k < z.size(); ++k) out[k] = -f * z[k];
  return out;
}

double discrete_energy(const ParticleSystem& sys) {
  auto e = energy_of(sys.params, sys.positions, sys.n, sys.mode);
  if (!e) {
    if (singular_at_zero(sys.params)) throw DomainError("discrete_energy: coincident particles");
    // Coincident pairs contribute W(0) = 0 when β > 0.
    double s = 0.0;
    const int d = sys.params.d;
    for (int i = 0; i < sys.n; ++i)
      for (int j = i + 1; j < sys.n; ++j) s += *pair_energy(sys.params, dist(sys.particle(i), sys.particle(j), d));
    return s / (double(sys.n) * sys.n);
  }
  return *e;
}

std::vector<double> velocities(const ParticleSystem& sys) {
  const int n = sys.n;
  const int d = sys.params.d;
  const KernelParams& p = sys.params;
  const double inv_n = 1.0 / n;
  std::vector<double> v(std::size_t(n) * d, 0.0);
  const PairKernel w(p);
  auto pair_factor = [&](const double* xi, const double* xj) {
    double s = dist2(xi, xj, d);
    if (s == 0.0) throw DomainError("velocities: coincident particles");
    return w.grad_factor(s);
  };

  if (sys.mode == Accumulation::Deterministic) {
    tbb::parallel_for(0, n, [&](int i) {
      const double* xi = sys.particle(i);
      double* vi = &v[std::size_t(i) * d];
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        const double* xj = sys.particle(j);
        const double f = pair_factor(xi, xj);
        for (int k = 0; k < d; ++k) vi[k] -= f * (xi[k] - xj[k]);
      }
      for (int k = 0; k < d; ++k) vi[k] *= inv_n;
    });
    return v;
  }
  for (int i = 0; i < n; ++i) {
    const double* xi = sys.particle(i);
    for (int j = i + 1; j < n; ++j) {
      const double* xj = sys.particle(j);
      const double f = pair_factor(xi, xj) * inv_n;
      for (int k = 0; k < d; ++k) {
        double c = f * (xi[k] - xj[k]);
        v[std::size_t(i) * d + k] -= c;
        v[std::size_t(j) * d + k] += c;
      }
    }
  }
  return v;
}

ParticleSystem make_system(const KernelParams& params, std::vector<double> positions, std::uint64_t seed) {
  params.validate();
  if (positions.size() % params.d != 0) throw DomainError("make_system: positions are not n × d");
  ParticleSystem sys;
  sys.params = params;
  sys.n = static_cast<int>(positions.size() / params.d);
  if (sys.n < 2) throw DomainError("make_system: needs at least 2 particles");
  if (!std::all_of(positions.begin(), positions.end(), [](double x) { return std::isfinite(x); })) {
    throw DomainError("make_system: positions must be finite");
  }
  sys.positions = std::move(positions);
  sys.rng_seed = seed;
  sys.energy_trace.push_back({0, discrete_energy(sys), 0.0});
  return sys;
}

std::vector<double> uniform_ball(int n, int d, double radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unif;
  std::vector<double> x(std::size_t(n) * d);
  for (int i = 0; i < n; ++i) {
    double* xi = &x[std::size_t(i) * d];
    double norm = 0.0;
    do {
      norm = 0.0;
      for (int k = 0; k < d; ++k) {
        xi[k] = normal(rng);
        norm += xi[k] * xi[k];
      }
    } while (norm == 0.0);
    const double r = radius * std::pow(unif(rng), 1.0 / d) / std::sqrt(norm);
    for (int k = 0; k < d; ++k) xi[k] *= r;
  }
  return x;
}

namespace {

// Backtracking step along precomputed velocities `v`.
void step_along(ParticleSystem& sys, const std::vector<double>& v, double max_step) {
  const double e0 = sys.energy_trace.empty() ? discrete_energy(sys) : sys.energy_trace.back().energy;
  std::vector<double> trial(sys.positions.size());
  double h = sys.step_size;
  while (true) {
    if (h < kMinStep) throw StallError("step: step size fell below 1e-16");
    for (std::size_t k = 0; k < trial.size(); ++k) trial[k] = sys.positions[k] + h * v[k];
    auto e1 = energy_of(sys.params, trial, sys.n, sys.mode);
    std::optional<double> accepted;
    if (e1 && std::isfinite(*e1)) {
      if (*e1 <= e0) {
        accepted = *e1;
      } else if (*e1 - e0 <= kRoundoffBand * (1.0 + std::abs(e0))) {
        // Near a minimum the two sums differ only by rounding; decide on the pairwise change.
        const double delta = energy_change(sys.params, sys.positions, trial, sys.n);
        if (delta <= 0.0) accepted = e0 + delta;
      }
    }
    if (accepted) {
      sys.positions.swap(trial);
      ++sys.iteration;
      sys.energy_trace.push_back({sys.iteration, *accepted, h});
      sys.step_size = std::min(2.0 * h, max_step);
      return;
    }
    h *= 0.5;
  }
}

}  // namespace

void step(ParticleSystem& sys, double max_step) { step_along(sys, velocities(sys), max_step); }

RunResult run_to_convergence(const KernelParams& params, int n, std::uint64_t seed, const RunOptions& options) {
  params.validate();
  if (n < 16) throw DomainError("run_to_convergence: needs at least 16 particles");
  if (!(options.tol > 0.0) || options.max_iter < 0 || !(options.initial_step > 0.0)) {
    throw DomainError("run_to_convergence: invalid options");
  }
  double radius = 1.0;
  if (closed_form::classify(params).tag != Regime::OutOfScope) radius = closed_form::radius(params);

  RunResult out;
  ParticleSystem sys = make_system(params, uniform_ball(n, params.d, 2.0 * radius, seed), seed);
  sys.mode = options.mode;
  sys.step_size = options.initial_step;
  auto max_speed = [&](const std::vector<double>& v) {
    double m = 0.0;
    for (int i = 0; i < n; ++i) {
      const double* vi = &v[std::size_t(i) * params.d];
      m = std::max(m, std::sqrt(std::inner_product(vi, vi + params.d, vi, 0.0)));
    }
    return m;
  };
  while (true) {
    const std::vector<double> v = velocities(sys);
    out.max_force = max_speed(v);
    if (out.max_force <= options.tol) {
      out.converged = true;
      break;
    }
    if (sys.iteration >= options.max_iter) break;
    step_along(sys, v, options.initial_step);
  }
  out.stats = radial_stats(sys);
  out.system = std::move(sys);
  return out;
}

RadialStats radial_stats(const ParticleSystem& sys) {
  const int d = sys.params.d;
  RadialStats s;
  s.center.assign(d, 0.0);
  for (int i = 0; i < sys.n; ++i)
    for (int k = 0; k < d; ++k) s.center[k] += sys.particle(i)[k];
  for (double& c : s.center) c /= sys.n;
  std::vector<double> r(sys.n);
  for (int i = 0; i < sys.n; ++i) r[i] = dist(sys.particle(i), s.center.data(), d);
  s.mean_radius = std::accumulate(r.begin(), r.end(), 0.0) / sys.n;
  double var = 0.0;
  for (double ri : r) var += (ri - s.mean_radius) * (ri - s.mean_radius);
  s.std_radius = std::sqrt(var / sys.n);
  s.max_radius = *std::max_element(r.begin(), r.end());
  return s;
}

namespace {

void put(std::ostream& out, double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  out << buf;
}

}  // namespace

void write_positions_csv(std::ostream& out, const ParticleSystem& sys) {
  const int d = sys.params.d;
  for (int k = 0; k < d; ++k) out << (k ? ",x" : "x") << k;
  out << '\n';
  for (int i = 0; i < sys.n; ++i) {
    for (int k = 0; k < d; ++k) {
      if (k) out << ',';
      put(out, sys.particle(i)[k]);
    }
    out << '\n';
  }
}

void write_trace_csv(std::ostream& out, const ParticleSystem& sys) {
  out << "iteration,energy,step_size\n";
  for (const TraceEntry& t : sys.energy_trace) {
    out << t.iteration << ',';
    put(out, t.energy);
    out << ',';
    put(out, t.step_size);
    out << '\n';
  }
}

}  // namespace aggremin::flow
