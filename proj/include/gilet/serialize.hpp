#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gilet/fixed_points.hpp"
#include "gilet/scan.hpp"

namespace gilet {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// {schema, map, mu, beta, sigma_grid, diagnostics[], events[],
///  assumption_report, seed, timestamp}
Json scan_to_json(const ScanResult& result, const std::string& timestamp);
/// Inverse of scan_to_json for the serialized fields.
ScanResult scan_from_json(const Json& j);

/// Field-by-field equality over everything scan_to_json writes.
bool same_serialized_content(const ScanResult& a, const ScanResult& b);

Json fixed_points_to_json(const MapModel& model, const FixedPointSet& set);
/// CSV: x,y[,z],residual,classification,family,lambda1_re,lambda1_im,...
void write_fixed_points_csv(std::ostream& os, const FixedPointSet& set);

/// CSV: n,x,y[,z]
void write_orbit_csv(std::ostream& os, const std::vector<StateVec>& sample);

Json bbox_to_json(const BoundingBox& box);

/// UTC, ISO 8601.
std::string utc_timestamp();

/// σ with 6 decimals, as used in per-σ file names.
std::string sigma_tag(double sigma);

}  // namespace gilet
