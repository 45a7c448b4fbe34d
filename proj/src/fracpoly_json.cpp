#include "fracprime/fracpoly_json.hpp"

#include <fstream>

namespace fracprime::fracpoly {

using nlohmann::json;

namespace {

Rational rational_field(const json& j, const char* where) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw std::invalid_argument(std::string(where) + ": expected \"p/q\" string or integer");
}

}  // namespace

json to_json(const RealExpPoly& f) {
  json terms = json::array();
  for (const auto& [e, p] : f.terms()) {
    json coeff = json::array();
    for (const auto& [powers, c] : p.monomials()) {
      coeff.push_back({{"c", to_string(c)}, {"powers", powers}});
    }
    terms.push_back({{"exponent", to_string(e)}, {"coeff", std::move(coeff)}});
  }
  return {{"terms", std::move(terms)}, {"text", f.to_string()}};
}

json to_json(const Family& family) {
  json functions = json::array();
  for (const auto& f : family) functions.push_back(to_json(f));
  return {{"k", family.num_params()}, {"functions", std::move(functions)}};
}

json to_json(const TypeVector& type) { return type.as_vector(); }

json to_json(const PetTrace& trace) {
  json steps = json::array();
  for (const auto& step : trace.steps) {
    steps.push_back({{"family_before", to_json(step.before)},
                     {"anchor", step.anchor},
                     {"family_after", to_json(step.after)},
                     {"type_before", to_json(step.type_before)},
                     {"type_after", to_json(step.type_after)}});
  }
  return {{"schema_version", 1},
          {"initial_family", to_json(trace.initial)},
          {"initial_type", to_json(type_vector(trace.initial))},
          {"steps", std::move(steps)},
          {"final_family", to_json(trace.final_family())},
          {"final_type", to_json(type_vector(trace.final_family()))}};
}

RealExpPoly poly_from_json(const json& j, std::size_t num_params) {
  if (!j.is_object() || !j.contains("terms") || !j.at("terms").is_array()) {
    throw std::invalid_argument("function: missing \"terms\" array");
  }
  RealExpPoly f(num_params);
  for (const auto& term : j.at("terms")) {
    if (!term.contains("exponent") || !term.contains("coeff")) {
      throw std::invalid_argument("term: needs \"exponent\" and \"coeff\"");
    }
    ParamPolynomial coeff(num_params);
    for (const auto& mono : term.at("coeff")) {
      Powers powers(num_params, 0);
      if (mono.contains("powers")) {
        auto raw = mono.at("powers").get<std::vector<long long>>();
        if (raw.size() != num_params) {
          throw std::invalid_argument("coeff: \"powers\" must have length k = " +
                                      std::to_string(num_params));
        }
        for (std::size_t i = 0; i < raw.size(); ++i) {
          if (raw[i] < 0) throw std::invalid_argument("coeff: negative parameter power");
          powers[i] = static_cast<std::uint32_t>(raw[i]);
        }
      } else if (num_params != 0) {
        throw std::invalid_argument("coeff: missing \"powers\"");
      }
      coeff.add_monomial(powers, rational_field(mono.at("c"), "coeff.c"));
    }
    f.add_term(rational_field(term.at("exponent"), "term.exponent"), coeff);
  }
  return f;
}

Family family_from_json(const json& j) {
  if (!j.is_object() || !j.contains("functions")) {
    throw std::invalid_argument("family: missing \"functions\"");
  }
  const long long k = j.value("k", 0LL);
  if (k < 0) throw std::invalid_argument("family: \"k\" must be non-negative");
  std::vector<RealExpPoly> members;
  std::size_t index = 0;
  for (const auto& f : j.at("functions")) {
    try {
      members.push_back(poly_from_json(f, static_cast<std::size_t>(k)));
    } catch (const std::exception& e) {
      throw std::invalid_argument("functions[" + std::to_string(index) + "]: " + e.what());
    } catch (...) {
      throw;
    }
    ++index;
  }
  return Family(std::move(members));
}

Family load_family(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open family file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::invalid_argument("family file " + path.string() + ": " + e.what());
  }
  return family_from_json(j);
}

}  // namespace fracprime::fracpoly
