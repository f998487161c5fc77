#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "imag/states.hpp"

namespace imag {

using StateVariant = std::variant<PureState, DensityMatrix>;

/// File schema: {"dim": n, "kind": "pure"|"density", "data": [[re, im], ...]},
/// densities row-major. Throws ParseError on malformed input or normalization
/// drift beyond 1e-8.
StateVariant state_from_json(const nlohmann::json& j);
nlohmann::json state_to_json(const PureState& psi);
nlohmann::json state_to_json(const DensityMatrix& rho);

StateVariant load_state_file(const std::string& path);
void save_state_file(const std::string& path, const nlohmann::json& j);

nlohmann::json ensemble_to_json(const Ensemble& e);
Ensemble ensemble_from_json(const nlohmann::json& j);

/// The source density matrix regardless of kind.
DensityMatrix as_density(const StateVariant& s);

}  // namespace imag
