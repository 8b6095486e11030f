#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "aggremin/closed_form.hpp"
#include "aggremin/errors.hpp"
#include "aggremin/flow.hpp"
#include "aggremin/verify.hpp"
#include "reports.hpp"

namespace aggremin::cli {

namespace {

using nlohmann::json;

struct RunConfig {
  std::string command;
  int d = 0;
  double alpha = 0.0;
  double beta = 0.0;
  bool log_alpha = false;
  bool log_beta = false;
  std::optional<double> rho_max;
  std::optional<int> n_grid;
  int n = 256;
  std::uint64_t seed = 1;
  double tol = 1e-8;
  long max_iter = 20000;
  std::string out;
  std::string format = "json";
  bool force_sphere = false;
  bool allow_partial = false;
  bool deterministic = false;
  double alpha_min = 2.0;
  double alpha_max = 4.0;
  std::optional<double> beta_min;  // exclusive; defaults to -d
  double beta_max = 2.0;
  int alpha_steps = 20;
  int beta_steps = 20;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

KernelParams params_of(const RunConfig& c) {
  KernelParams p{c.d, c.log_alpha ? 0.0 : c.alpha, c.log_beta ? 0.0 : c.beta, c.log_alpha, c.log_beta};
  p.validate();
  return p;
}

std::string regime_label(const RegimeTag& tag) {
  if (tag.shared_boundary) return "Boundary/Sphere";
  return to_string(tag.tag);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Writes to --out when given, otherwise to `out`.
void emit(const RunConfig& c, std::ostream& out, const std::string& text) {
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw UsageError("cannot write " + c.out);
  f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

ClosedFormReport closed_form_report(const KernelParams& p) {
  const RegimeTag tag = closed_form::classify(p);
  if (tag.tag == Regime::OutOfScope) throw RegimeError(tag.detail);
  ClosedFormReport r;
  r.params = p;
  r.regime = regime_label(tag);
  r.regime_detail = tag.detail;
  if (p.d + (p.alpha_is_log ? 0.0 : p.alpha) != 3.0) r.beta_star = closed_form::beta_star(p.d, p.alpha);
  const CandidateMinimizer c = closed_form::candidate(p);
  r.R = c.radius;
  r.E = closed_form::energy(p);
  r.eta = closed_form::eta(p);
  if (c.kind == CandidateKind::UniformSphere) {
    r.density_description = "uniform probability measure on the sphere |x| = " + fmt(c.radius);
  } else {
    const double e = (2.0 - p.beta - p.d) / 2.0;
    r.density_description = fmt(c.normalization) + " * (" + fmt(c.radius * c.radius) + " - |x|^2)^" + fmt(e) +
                            " for |x| < " + fmt(c.radius);
  }
  return r;
}

int cmd_closed_form(const RunConfig& c, std::ostream& out) {
  const ClosedFormReport r = closed_form_report(params_of(c));
  if (c.format == "csv") {
    std::string text = "regime,beta_star,R,E,eta\n" + r.regime + "," + (r.beta_star ? fmt(*r.beta_star) : "") + "," +
                       fmt(r.R) + "," + fmt(r.E) + "," + fmt(r.eta) + "\n";
    emit(c, out, text);
  } else {
    emit(c, out, dump(json(r)));
  }
  return kOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  const KernelParams p = params_of(c);
  VerifyReport r;
  r.params = p;
  r.force_sphere = c.force_sphere;
  verify::ELOptions opt;
  opt.force_sphere = c.force_sphere;
  r.el = verify::verify_euler_lagrange(p, c.rho_max.value_or(25.0), c.n_grid.value_or(2000), opt);
  if (r.el.candidate.kind == CandidateKind::UniformSphere) r.convexity = verify::convexity_report(p);
  r.passed = r.el.passed && (!r.convexity || r.convexity->passed);
  emit(c, out, dump(json(r)));
  return r.passed ? kOk : kVerification;
}

int cmd_convexity(const RunConfig& c, std::ostream& out) {
  const KernelParams p = params_of(c);
  const verify::ConvexityReport r = verify::convexity_report(p, c.rho_max.value_or(10.0), c.n_grid.value_or(400));
  json j = r;
  j["schema"] = kSchema;
  j["command"] = "convexity";
  j["params"] = p;
  emit(c, out, dump(j));
  return r.passed ? kOk : kVerification;
}

int cmd_simulate(const RunConfig& c, std::ostream& out) {
  const KernelParams p = params_of(c);
  flow::RunOptions opt;
  opt.tol = c.tol;
  opt.max_iter = c.max_iter;
  opt.mode = c.deterministic ? flow::Accumulation::Deterministic : flow::Accumulation::Fast;
  const flow::RunResult run = flow::run_to_convergence(p, c.n, c.seed, opt);

  SimulationReport r;
  r.params = p;
  r.n = c.n;
  r.seed = c.seed;
  r.deterministic = c.deterministic;
  r.iterations = run.system.iteration;
  r.converged = run.converged;
  r.max_force = run.max_force;
  r.final_energy = run.system.energy_trace.back().energy;
  r.stats = run.stats;
  const RegimeTag tag = closed_form::classify(p);
  if (tag.tag != Regime::OutOfScope) {
    const CandidateMinimizer cand = closed_form::candidate(p);
    r.regime = regime_label(tag);
    r.R = cand.radius;
    r.E = closed_form::energy(p);
    const double measured = cand.kind == CandidateKind::UniformSphere ? run.stats.mean_radius : run.stats.max_radius;
    r.radius_rel_err = std::abs(measured / cand.radius - 1.0);
    r.energy_rel_err = std::abs(r.final_energy / *r.E - 1.0);
  }

  const std::filesystem::path dir = c.out.empty() ? std::filesystem::path("simulate_out") : std::filesystem::path(c.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw UsageError("cannot create " + dir.string());
  auto open = [&](const char* name) {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw UsageError("cannot write " + (dir / name).string());
    return f;
  };
  {
    auto f = open("positions.csv");
    flow::write_positions_csv(f, run.system);
  }
  {
    auto f = open("trace.csv");
    flow::write_trace_csv(f, run.system);
  }
  const std::string text = dump(json(r));
  {
    auto f = open("stats.json");
    f << text;
  }
  out << text;
  if (!run.converged && !c.allow_partial) throw NonConvergence("simulate: max_iter reached before the force tolerance");
  return kOk;
}

int cmd_phase_scan(const RunConfig& c, std::ostream& out) {
  const double beta_min = c.beta_min.value_or(-static_cast<double>(c.d));
  if (c.d < 1) throw UsageError("phase-scan: --d must be >= 1");
  if (!(c.alpha_min <= c.alpha_max) || !(beta_min < c.beta_max)) throw UsageError("phase-scan: inverted range");
  if (c.alpha_min < 2.0 || c.alpha_max > 4.0) throw UsageError("phase-scan: alpha range must lie in [2, 4]");
  if (beta_min < -c.d || c.beta_max > 2.0) throw UsageError("phase-scan: beta range must lie in (-d, 2]");
  if (c.alpha_steps < 1 || c.beta_steps < 1) throw UsageError("phase-scan: steps must be positive");

  std::string text = "alpha,beta,regime,beta_star,R,E\n";
  for (int i = 0; i < c.alpha_steps; ++i) {
    const double alpha =
        c.alpha_steps == 1 ? c.alpha_min : c.alpha_min + (c.alpha_max - c.alpha_min) * i / (c.alpha_steps - 1.0);
    for (int j = 1; j <= c.beta_steps; ++j) {
      // β_min itself is excluded.
      double beta = beta_min + (c.beta_max - beta_min) * j / c.beta_steps;
      if (std::abs(beta) < 1e-12) beta = 0.0;
      if (beta >= alpha) continue;
      KernelParams p{c.d, alpha, beta, false, beta == 0.0};
      const RegimeTag tag = closed_form::classify(p);
      std::string row = fmt(alpha) + "," + fmt(beta) + "," + regime_label(tag) + ",";
      if (c.d + alpha != 3.0) row += fmt(closed_form::beta_star(c.d, alpha));
      row += ",";
      if (tag.tag != Regime::OutOfScope) row += fmt(closed_form::radius(p)) + "," + fmt(closed_form::energy(p));
      else row += ",";
      text += row + "\n";
    }
  }
  emit(c, out, text);
  return kOk;
}

void add_kernel_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--d", c.d, "dimension")->required();
  auto* alpha = sub->add_option("--alpha", c.alpha, "attractive exponent");
  auto* beta = sub->add_option("--beta", c.beta, "repulsive exponent");
  auto* log_alpha = sub->add_flag("--log-alpha", c.log_alpha, "use ln r for the attractive term");
  auto* log_beta = sub->add_flag("--log-beta", c.log_beta, "use ln r for the repulsive term");
  log_alpha->excludes(alpha);
  log_beta->excludes(beta);
}

json error_json(const std::string& command, const char* kind, const std::string& reason) {
  return json{{"schema", kSchema}, {"command", command}, {"error", kind}, {"reason", reason}};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Closed-form minimizers of attractive-repulsive power-law energies"};
  app.require_subcommand(1);

  auto* closed = app.add_subcommand("closed-form", "regime, radius and energy of the minimizer");
  add_kernel_options(closed, c);
  closed->add_option("--out", c.out, "output file");
  closed->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* ver = app.add_subcommand("verify-el", "Euler-Lagrange and convexity checks");
  add_kernel_options(ver, c);
  ver->add_option("--rho-max", c.rho_max, "largest squared scaled radius")->check(CLI::PositiveNumber);
  ver->add_option("--grid", c.n_grid, "number of grid nodes")->check(CLI::Range(100, 10000000));
  ver->add_flag("--force-sphere", c.force_sphere, "test the uniform sphere outside its regime");
  ver->add_option("--out", c.out, "output file");

  auto* conv = app.add_subcommand("convexity", "second differences of the comparison function");
  add_kernel_options(conv, c);
  conv->add_option("--rho-max", c.rho_max, "grid end")->check(CLI::PositiveNumber);
  conv->add_option("--grid", c.n_grid, "number of grid intervals")->check(CLI::Range(3, 10000000));
  conv->add_option("--out", c.out, "output file");

  auto* sim = app.add_subcommand("simulate", "particle gradient flow");
  add_kernel_options(sim, c);
  sim->add_option("--n", c.n, "number of particles")->check(CLI::Range(16, 1000000));
  sim->add_option("--seed", c.seed, "random seed");
  sim->add_option("--tol", c.tol, "largest particle velocity at convergence")->check(CLI::PositiveNumber);
  sim->add_option("--max-iter", c.max_iter, "step limit")->check(CLI::NonNegativeNumber);
  sim->add_option("--out", c.out, "output directory");
  sim->add_flag("--allow-partial", c.allow_partial, "exit 0 when max_iter is reached");
  sim->add_flag("--deterministic", c.deterministic, "bit-reproducible accumulation order");

  auto* scan = app.add_subcommand("phase-scan", "regime table over a grid of exponents");
  scan->add_option("--d", c.d, "dimension")->required();
  scan->add_option("--alpha-min", c.alpha_min);
  scan->add_option("--alpha-max", c.alpha_max);
  scan->add_option("--beta-min", c.beta_min, "excluded lower end, default -d");
  scan->add_option("--beta-max", c.beta_max);
  scan->add_option("--alpha-steps", c.alpha_steps);
  scan->add_option("--beta-steps", c.beta_steps);
  scan->add_option("--out", c.out, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << e.what() << "\n";
    return kUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  c.command = sub->get_name();
  const bool needs_kernel = sub != scan;
  if (needs_kernel) {
    if (sub->count("--alpha") == 0 && !c.log_alpha) {
      err << "--alpha or --log-alpha is required\n";
      return kUsage;
    }
    if (sub->count("--beta") == 0 && !c.log_beta) {
      err << "--beta or --log-beta is required\n";
      return kUsage;
    }
  }

  try {
    if (sub == closed) return cmd_closed_form(c, out);
    if (sub == ver) return cmd_verify(c, out);
    if (sub == conv) return cmd_convexity(c, out);
    if (sub == sim) return cmd_simulate(c, out);
    return cmd_phase_scan(c, out);
  } catch (const UsageError& e) {
    err << e.what() << "\n";
    return kUsage;
  } catch (const RegimeError& e) {
    out << dump(error_json(c.command, "RegimeError", e.what()));
    return kDomain;
  } catch (const DomainError& e) {
    out << dump(error_json(c.command, "DomainError", e.what()));
    return kDomain;
  } catch (const IllConditioned& e) {
    out << dump(error_json(c.command, "IllConditioned", e.what()));
    return kDomain;
  } catch (const PoleError& e) {
    out << dump(error_json(c.command, "PoleError", e.what()));
    return kDomain;
  } catch (const NonConvergence& e) {
    err << e.what() << "\n";
    return kVerification;
  } catch (const StallError& e) {
    err << e.what() << "\n";
    return kVerification;
  } catch (const QuadratureFailure& e) {
    err << e.what() << "\n";
    return kVerification;
  }
}

}  // namespace aggremin::cli
