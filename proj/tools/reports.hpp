#pragma once

#include <optional>
#include <string>

#include "aggremin/flow.hpp"
#include "aggremin/params.hpp"
#include "aggremin/verify.hpp"
#include "json.hpp"

namespace aggremin::cli {

inline constexpr const char* kSchema = "aggremin/1";

struct ClosedFormReport {
  KernelParams params;
  std::string regime;
  std::string regime_detail;
  std::optional<double> beta_star;
  double R = 0.0;
  double E = 0.0;
  double eta = 0.0;
  std::string density_description;

  bool operator==(const ClosedFormReport&) const = default;
};

struct VerifyReport {
  KernelParams params;
  bool force_sphere = false;
  verify::ELReport el;
  std::optional<verify::ConvexityReport> convexity;
  bool passed = false;

  bool operator==(const VerifyReport&) const = default;
};

struct SimulationReport {
  KernelParams params;
  int n = 0;
  std::uint64_t seed = 0;
  bool deterministic = true;
  long iterations = 0;
  bool converged = false;
  double max_force = 0.0;
  double final_energy = 0.0;
  flow::RadialStats stats;
  std::optional<std::string> regime;
  std::optional<double> R;
  std::optional<double> E;
  // |mean radius / R - 1| for a sphere minimizer, |max radius / R - 1| for a ball.
  std::optional<double> radius_rel_err;
  std::optional<double> energy_rel_err;

  bool operator==(const SimulationReport&) const = default;
};

}  // namespace aggremin::cli

namespace aggremin {
void to_json(nlohmann::json& j, const KernelParams& p);
void from_json(const nlohmann::json& j, KernelParams& p);
void to_json(nlohmann::json& j, const CandidateMinimizer& c);
void from_json(const nlohmann::json& j, CandidateMinimizer& c);
}  // namespace aggremin

namespace aggremin::verify {
void to_json(nlohmann::json& j, const ELReport& r);
void from_json(const nlohmann::json& j, ELReport& r);
void to_json(nlohmann::json& j, const ConvexityReport& r);
void from_json(const nlohmann::json& j, ConvexityReport& r);
}  // namespace aggremin::verify

namespace aggremin::flow {
void to_json(nlohmann::json& j, const RadialStats& s);
void from_json(const nlohmann::json& j, RadialStats& s);
}  // namespace aggremin::flow

namespace aggremin::cli {
void to_json(nlohmann::json& j, const ClosedFormReport& r);
void from_json(const nlohmann::json& j, ClosedFormReport& r);
void to_json(nlohmann::json& j, const VerifyReport& r);
void from_json(const nlohmann::json& j, VerifyReport& r);
void to_json(nlohmann::json& j, const SimulationReport& r);
void from_json(const nlohmann::json& j, SimulationReport& r);
}  // namespace aggremin::cli
