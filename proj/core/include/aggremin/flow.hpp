#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "aggremin/params.hpp"

namespace aggremin::flow {

/// Deterministic: each particle's force is summed over j in index order, so
/// results are bit-identical for any thread count. Fast: each pair is visited
/// once and the energy is reduced in parallel; the last bits depend on the schedule.
enum class Accumulation { Deterministic, Fast };

struct TraceEntry {
  long iteration = 0;
  double energy = 0.0;
  double step_size = 0.0;
};

struct ParticleSystem {
  int n = 0;
  KernelParams params;
  std::vector<double> positions;  // n × d, row-major
  std::uint64_t rng_seed = 0;
  double step_size = 0.1;
  long iteration = 0;
  std::vector<TraceEntry> energy_trace;
  Accumulation mode = Accumulation::Deterministic;

  const double* particle(int i) const { return positions.data() + static_cast<std::size_t>(i) * params.d; }
};

struct RadialStats {
  double mean_radius = 0.0;
  double std_radius = 0.0;
  double max_radius = 0.0;
  std::vector<double> center;

  bool operator==(const RadialStats&) const = default;
};

struct RunOptions {
  double tol = 1e-8;
  long max_iter = 20000;
  double initial_step = 0.1;
  Accumulation mode = Accumulation::Deterministic;
};

struct RunResult {
  ParticleSystem system;
  RadialStats stats;
  bool converged = false;
  double max_force = 0.0;
};

/// W(r). r = 0 is allowed only when W is continuous there (β > 0).
double kernel_w(const KernelParams& params, double r);

/// -∇W(z) for an offset vector z != 0 of length params.d.
std::vector<double> force(const KernelParams& params, const std::vector<double>& z);

/// (1/(2N²)) Σ_{i≠j} W(|x_i - x_j|). Throws DomainError on a coincident pair
/// when β <= 0.
double discrete_energy(const ParticleSystem& sys);

/// Per-particle velocity -(1/N) Σ_{j≠i} ∇W(x_i - x_j), n × d.
std::vector<double> velocities(const ParticleSystem& sys);

/// System with `positions` (n × d) and validated parameters; n >= 2.
ParticleSystem make_system(const KernelParams& params, std::vector<double> positions, std::uint64_t seed = 0);

/// n points uniform in the ball of the given radius about the origin.
std::vector<double> uniform_ball(int n, int d, double radius, std::uint64_t seed);

/// One explicit Euler step with backtracking: the step size is halved until
/// the energy does not increase and no two particles coincide. An accepted
/// step doubles the step size for the next call, up to `max_step`. Throws
/// StallError below a step size of 1e-16.
void step(ParticleSystem& sys, double max_step = 0.1);

/// Runs from uniform_ball(n, d, 2R, seed) (R from the closed form when the
/// parameters are classifiable, 1 otherwise) until the largest velocity is
/// <= tol or max_iter steps. A run that hits max_iter is returned with
/// converged = false. Needs n >= 16.
RunResult run_to_convergence(const KernelParams& params, int n, std::uint64_t seed, const RunOptions& options = {});

/// Radii about the centroid.
RadialStats radial_stats(const ParticleSystem& sys);

/// Header "x0,...,x{d-1}", one row per particle.
void write_positions_csv(std::ostream& out, const ParticleSystem& sys);

/// Header "iteration,energy,step_size".
void write_trace_csv(std::ostream& out, const ParticleSystem& sys);

}  // namespace aggremin::flow
