#include "fracprime/systems_json.hpp"

#include <stdexcept>

namespace fracprime::systems {

nlohmann::ordered_json to_json(const Observable& f) {
  nlohmann::ordered_json j;
  if (const auto* c = std::get_if<CyclicFunction>(&f)) {
    j["modulus"] = c->modulus();
    auto& values = j["values"] = nlohmann::ordered_json::array();
    for (auto v : c->values()) values.push_back({v.real(), v.imag()});
    return j;
  }
  const auto& p = std::get<FourierPoly>(f);
  j["dim"] = p.dim();
  auto& terms = j["terms"] = nlohmann::ordered_json::array();
  for (const auto& [k, a] : p.terms()) {
    nlohmann::ordered_json freq = nlohmann::ordered_json::array({k[0]});
    if (p.dim() == 2) freq.push_back(k[1]);
    terms.push_back({freq, a.real(), a.imag()});
  }
  return j;
}

Observable observable_from_json(const nlohmann::json& j) {
  if (j.contains("values")) {
    std::vector<Complex> values;
    for (const auto& v : j.at("values")) {
      if (v.is_number()) {
        values.emplace_back(v.get<double>(), 0.0);
      } else {
        values.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
      }
    }
    if (j.contains("modulus") && j.at("modulus").get<std::uint64_t>() != values.size()) {
      throw std::invalid_argument("cyclic observable: modulus does not match values");
    }
    return CyclicFunction(std::move(values));
  }
  const int dim = j.at("dim").get<int>();
  FourierPoly p(dim);
  for (const auto& t : j.at("terms")) {
    const auto& freq = t.at(0);
    if (freq.size() != static_cast<std::size_t>(dim)) {
      throw std::invalid_argument("Fourier term frequency length does not match dim");
    }
    Frequency k{freq.at(0).get<std::int64_t>(), dim == 2 ? freq.at(1).get<std::int64_t>() : 0};
    p.add(k, {t.at(1).get<double>(), t.size() > 2 ? t.at(2).get<double>() : 0.0});
  }
  return p;
}

}  // namespace fracprime::systems
