// SPDX-License-Identifier: Apache-2.0
/// \file
/// Batch verification driver: deterministic point sampling over a family's
/// chart box, the per-point identity suite, and report documents.

#pragma once

#include "qch/catalog.hpp"
#include "qch/qch.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qch {

inline constexpr const char* kEngineVersion = "0.1.0";

struct CampaignConfig {
    FamilySpec family;
    int points = 50;
    std::uint64_t seed = 1;
    double tol_scale = 1.0;                     ///< multiplies every default tolerance
    std::map<std::string, double> tol_override; ///< absolute per-identity overrides
    std::vector<std::string> identities;        ///< empty = every applicable identity
    std::string out_path;
};

struct PointRecord {
    Point point;
    double a = 0.0, b = 0.0, c = 0.0;
    double lambda = 0.0, mu = 0.0, delta = 0.0, kappa = 0.0;
    std::map<std::string, double> residuals;
    std::string error; ///< non-empty when evaluation failed at this point
};

struct IdentityResult {
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = true;
};

struct ReportDocument {
    std::string family;
    int points = 0;
    std::uint64_t seed = 0;
    std::string config_echo; ///< serialized configuration the run was made with
    std::string engine_version = kEngineVersion;
    std::vector<PointRecord> records;
    std::map<std::string, IdentityResult> aggregate;
    bool all_pass = false;
};

/// Default tolerance for an identity within a family.
double default_tolerance(const std::string& family, const std::string& identity);

/// Deterministic sample of interior points: uniform over the box shrunk by a
/// 10% margin, rejection-filtered by the domain predicate.
std::vector<Point> sample_points(const FamilyInstance& inst, int count, std::uint64_t seed);

/// Run the identity suite over sampled points.
ReportDocument run_verify(const CampaignConfig& config);

/// Same, over an already-built (possibly hand-modified) instance.
ReportDocument run_verify_instance(const FamilyInstance& inst, const CampaignConfig& config);

/// CSV table of (point, t^2, phi) rows with the fitted profile coefficients.
std::string sample_phi_csv(const CampaignConfig& config, int directions);

/// CSV table of per-point coefficients.
std::string fit_abc_csv(const CampaignConfig& config);

nlohmann::json report_to_json(const ReportDocument& doc);
ReportDocument report_from_json(const nlohmann::json& j);

nlohmann::json config_to_json(const CampaignConfig& config);
CampaignConfig config_from_json(const nlohmann::json& j);

/// Family spec (de)serialization used by the CLI's --family/--params flags.
FamilySpec family_from_json(const std::string& name, const nlohmann::json& params);
std::string family_name(const FamilySpec& spec);
nlohmann::json family_params_json(const FamilySpec& spec);

} // namespace qch
