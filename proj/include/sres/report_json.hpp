#pragma once

#include <json.hpp>

#include "sres/coefficients.hpp"
#include "sres/spectral_region.hpp"
#include "sres/verification.hpp"
#include "sres/weak_form.hpp"

namespace sres {

using Json = nlohmann::ordered_json;

Json to_json(const CoefficientBounds& b);
Json to_json(const RegionParams& p);
Json to_json(const BoundReport& r);
Json to_json(const CaseResult& r);
Json to_json(const VerificationReport& r);
Json to_json(const ProbeReport& r);
Json to_json(const ConvergenceResult& r);

/// Inverse of to_json(RegionParams); throws ConfigError on missing fields.
RegionParams region_params_from_json(const Json& j);

}  // namespace sres
