#pragma once

// JSON forms of the value types:
//   DiscreteMeasure   {"atoms": [[point, weight], ...]}
//   ScenarioFamily    [measure, ...]
//   MaximalDist       {"mu_lo": ..., "mu_hi": ...}
//   MleResult         {"mu_lo_hat": ..., "mu_hi_hat": ..., "delta": ..., "n": ...}
//   VarianceEnvelope  {"sigma_lo_sq": ..., "sigma_hi_sq": ..., "per_window": [[j, v], ...]}
// Parsing goes through the validating constructors, so a malformed
// document surfaces as ArgumentError (invariants) or DataError (shape).

#include <filesystem>

#include <nlohmann/json.hpp>

#include "sublinear/envelope.hpp"
#include "sublinear/maximal.hpp"
#include "sublinear/mle.hpp"
#include "sublinear/scenario.hpp"

namespace sublinear {

nlohmann::json to_json(const DiscreteMeasure& m);
nlohmann::json to_json(const ScenarioFamily& fam);
nlohmann::json to_json(const MaximalDist& d);
nlohmann::json to_json(const MleResult& r);
nlohmann::json to_json(const VarianceEnvelope& e);

DiscreteMeasure measure_from_json(const nlohmann::json& j);
ScenarioFamily family_from_json(const nlohmann::json& j);
MaximalDist maximal_from_json(const nlohmann::json& j);

/// Reads a family document; a single measure object is accepted as a
/// one-member family.
ScenarioFamily load_family(const std::filesystem::path& path);

}  // namespace sublinear
