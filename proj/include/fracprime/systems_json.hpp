#pragma once

#include <json.hpp>

#include "fracprime/systems.hpp"

namespace fracprime::systems {

/// Fourier: {"dim": d, "terms": [[[k1, k2], re, im], ...]} (one frequency
/// entry per dimension). Cyclic: {"modulus": m, "values": [[re, im], ...]}.
nlohmann::ordered_json to_json(const Observable& f);
Observable observable_from_json(const nlohmann::json& j);

}  // namespace fracprime::systems
