#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "polyterm/calib.hpp"
#include "polyterm/model.hpp"

namespace polyterm {

/// Flat canonical form: {n, R0..R2, b0..b3, c0..c2}.
nlohmann::json to_json(const CanonicalParams& p);
CanonicalParams canonical_from_json(const nlohmann::json& j);

/// General form: {n, lo, hi, R: [...], b: [...], a: [...]}.
nlohmann::json to_json(const GeneralParams& g);
GeneralParams general_from_json(const nlohmann::json& j);

/// Example-model form: {alpha, beta, gamma, n}.
nlohmann::json to_json(const ExampleModelParams& p);
ExampleModelParams example_from_json(const nlohmann::json& j);

/// Any of the three accepted parameter forms, resolved to general-interval
/// polynomials. The canonical/example originals are kept when present.
struct LoadedParams {
    GeneralParams general;
    std::optional<CanonicalParams> canonical;
    std::optional<ExampleModelParams> example;
};

LoadedParams params_from_json(const nlohmann::json& j);
LoadedParams load_params_file(const std::string& path);

}  // namespace polyterm
