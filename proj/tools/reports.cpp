#include "reports.hpp"

#include <cmath>
#include <limits>

using nlohmann::json;

namespace {

// JSON has no inf/nan; those are written as strings.
json num(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

double get_num(const json& j) {
  if (j.is_number()) return j.get<double>();
  const std::string s = j.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  return std::numeric_limits<double>::quiet_NaN();
}

json opt_num(const std::optional<double>& x) { return x ? num(*x) : json(nullptr); }

std::optional<double> get_opt_num(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return get_num(j.at(key));
}

}  // namespace

namespace aggremin {

void to_json(json& j, const KernelParams& p) {
  j = json{{"d", p.d}, {"alpha", p.alpha}, {"beta", p.beta}, {"log_alpha", p.alpha_is_log}, {"log_beta", p.beta_is_log}};
}

void from_json(const json& j, KernelParams& p) {
  p.d = j.at("d").get<int>();
  p.alpha = j.at("alpha").get<double>();
  p.beta = j.at("beta").get<double>();
  p.alpha_is_log = j.at("log_alpha").get<bool>();
  p.beta_is_log = j.at("log_beta").get<bool>();
}

void to_json(json& j, const CandidateMinimizer& c) {
  j = json{{"kind", to_string(c.kind)}, {"radius", c.radius}, {"normalization", c.normalization}};
}

void from_json(const json& j, CandidateMinimizer& c) {
  c.kind = j.at("kind").get<std::string>() == "UniformSphere" ? CandidateKind::UniformSphere
                                                              : CandidateKind::BallProfile;
  c.radius = j.at("radius").get<double>();
  c.normalization = j.at("normalization").get<double>();
}

}  // namespace aggremin

namespace aggremin::verify {

void to_json(json& j, const ELReport& r) {
  j = json{{"candidate", r.candidate},
           {"eta", num(r.eta)},
           {"support_max_abs_dev", num(r.support_max_abs_dev)},
           {"exterior_min_margin", num(r.exterior_min_margin)},
           {"exterior_argmin_rho", num(r.exterior_argmin_rho)},
           {"tol_support", r.tol_support},
           {"tol_exterior", r.tol_exterior},
           {"passed", r.passed},
           {"grid", r.grid}};
}

void from_json(const json& j, ELReport& r) {
  r.candidate = j.at("candidate").get<CandidateMinimizer>();
  r.eta = get_num(j.at("eta"));
  r.support_max_abs_dev = get_num(j.at("support_max_abs_dev"));
  r.exterior_min_margin = get_num(j.at("exterior_min_margin"));
  r.exterior_argmin_rho = get_num(j.at("exterior_argmin_rho"));
  r.tol_support = j.at("tol_support").get<double>();
  r.tol_exterior = j.at("tol_exterior").get<double>();
  r.passed = j.at("passed").get<bool>();
  r.grid = j.at("grid").get<std::vector<double>>();
}

void to_json(json& j, const ConvexityReport& r) {
  j = json{{"min_second_difference", num(r.min_second_difference)},
           {"argmin_rho", num(r.argmin_rho)},
           {"psi_dd_at_one", opt_num(r.psi_dd_at_one)},
           {"tol", r.tol},
           {"passed", r.passed},
           {"grid", r.grid}};
}

void from_json(const json& j, ConvexityReport& r) {
  r.min_second_difference = get_num(j.at("min_second_difference"));
  r.argmin_rho = get_num(j.at("argmin_rho"));
  r.psi_dd_at_one = get_opt_num(j, "psi_dd_at_one");
  r.tol = j.at("tol").get<double>();
  r.passed = j.at("passed").get<bool>();
  r.grid = j.at("grid").get<std::vector<double>>();
}

}  // namespace aggremin::verify

namespace aggremin::flow {

void to_json(json& j, const RadialStats& s) {
  j = json{{"mean_radius", s.mean_radius}, {"std_radius", s.std_radius}, {"max_radius", s.max_radius},
           {"center", s.center}};
}

void from_json(const json& j, RadialStats& s) {
  s.mean_radius = j.at("mean_radius").get<double>();
  s.std_radius = j.at("std_radius").get<double>();
  s.max_radius = j.at("max_radius").get<double>();
  s.center = j.at("center").get<std::vector<double>>();
}

}  // namespace aggremin::flow

namespace aggremin::cli {

void to_json(json& j, const ClosedFormReport& r) {
  j = json{{"schema", kSchema},
           {"command", "closed-form"},
           {"params", r.params},
           {"regime", r.regime},
           {"regime_detail", r.regime_detail},
           {"beta_star", opt_num(r.beta_star)},
           {"R", num(r.R)},
           {"E", num(r.E)},
           {"eta", num(r.eta)},
           {"density_description", r.density_description}};
}

void from_json(const json& j, ClosedFormReport& r) {
  r.params = j.at("params").get<KernelParams>();
  r.regime = j.at("regime").get<std::string>();
  r.regime_detail = j.at("regime_detail").get<std::string>();
  r.beta_star = get_opt_num(j, "beta_star");
  r.R = get_num(j.at("R"));
  r.E = get_num(j.at("E"));
  r.eta = get_num(j.at("eta"));
  r.density_description = j.at("density_description").get<std::string>();
}

void to_json(json& j, const VerifyReport& r) {
  j = json{{"schema", kSchema},
           {"command", "verify-el"},
           {"params", r.params},
           {"force_sphere", r.force_sphere},
           {"euler_lagrange", r.el},
           {"convexity", r.convexity ? json(*r.convexity) : json(nullptr)},
           {"passed", r.passed}};
}

void from_json(const json& j, VerifyReport& r) {
  r.params = j.at("params").get<KernelParams>();
  r.force_sphere = j.at("force_sphere").get<bool>();
  r.el = j.at("euler_lagrange").get<verify::ELReport>();
  if (j.at("convexity").is_null()) {
    r.convexity.reset();
  } else {
    r.convexity = j.at("convexity").get<verify::ConvexityReport>();
  }
  r.passed = j.at("passed").get<bool>();
}

void to_json(json& j, const SimulationReport& r) {
  j = json{{"schema", kSchema},
           {"command", "simulate"},
           {"params", r.params},
           {"n", r.n},
           {"seed", r.seed},
           {"deterministic", r.deterministic},
           {"iterations", r.iterations},
           {"converged", r.converged},
           {"max_force", num(r.max_force)},
           {"final_energy", num(r.final_energy)},
           {"stats", r.stats},
           {"regime", r.regime ? json(*r.regime) : json(nullptr)},
           {"R", opt_num(r.R)},
           {"E", opt_num(r.E)},
           {"radius_rel_err", opt_num(r.radius_rel_err)},
           {"energy_rel_err", opt_num(r.energy_rel_err)}};
}

void from_json(const json& j, SimulationReport& r) {
  r.params = j.at("params").get<KernelParams>();
  r.n = j.at("n").get<int>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.deterministic = j.at("deterministic").get<bool>();
  r.iterations = j.at("iterations").get<long>();
  r.converged = j.at("converged").get<bool>();
  r.max_force = get_num(j.at("max_force"));
  r.final_energy = get_num(j.at("final_energy"));
  r.stats = j.at("stats").get<flow::RadialStats>();
  if (j.at("regime").is_null()) {
    r.regime.reset();
  } else {
    r.regime = j.at("regime").get<std::string>();
  }
  r.R = get_opt_num(j, "R");
  r.E = get_opt_num(j, "E");
  r.radius_rel_err = get_opt_num(j, "radius_rel_err");
  r.energy_rel_err = get_opt_num(j, "energy_rel_err");
}

}  // namespace aggremin::cli
