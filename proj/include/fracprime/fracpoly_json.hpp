#pragma once

#include <filesystem>

#include <json.hpp>

#include "fracprime/fracpoly.hpp"

namespace fracprime::fracpoly {

// Family description file:
//   { "k": int,
//     "functions": [ { "terms": [ { "exponent": "p/q",
//                                   "coeff": [ { "c": "p/q", "powers": [int, ...] } ] } ] } ] }

nlohmann::json to_json(const RealExpPoly& f);
nlohmann::json to_json(const Family& family);
nlohmann::json to_json(const TypeVector& type);
nlohmann::json to_json(const PetTrace& trace);

/// Throws std::invalid_argument with a path-like location on schema errors.
RealExpPoly poly_from_json(const nlohmann::json& j, std::size_t num_params);
Family family_from_json(const nlohmann::json& j);

Family load_family(const std::filesystem::path& path);

}  // namespace fracprime::fracpoly
