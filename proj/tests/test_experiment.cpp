#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fracprime/experiment.hpp"

using namespace fracprime;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("series push enforces increasing N") {
  ExperimentResult r;
  r.name = "demo";
  r.push(10, 0.5);
  r.push(100, 0.25);
  CHECK(r.size() == 2);
  CHECK_THROWS(r.push(100, 0.1));
  CHECK_THROWS(r.push(5, 0.1));
}

TEST_CASE("csv round trip is exact") {
  ExperimentResult r;
  r.name = "demo";
  r.push(1000, 0.1 + 0.2);
  r.push(10000, 1.0 / 3.0);
  r.push(100000, 5e-300);
  const auto csv = to_csv(r);
  CHECK(csv.rfind("N,value\n", 0) == 0);
  const auto back = from_csv(csv);
  CHECK(back.N == r.N);
  CHECK(back.values == r.values);
  CHECK(to_csv(back) == csv);

  ExperimentResult c;
  c.name = "cplx";
  c.complex_values = true;
  c.push(5, std::complex<double>(0.5, -0.25));
  const auto ccsv = to_csv(c);
  CHECK(ccsv == "N,value_re,value_im\n5,0.5,-0.25\n");
  CHECK(from_csv(ccsv).values == c.values);
  CHECK(from_csv(ccsv).complex_values);
  CHECK_THROWS(from_csv("bogus\n1,2\n"));
}

TEST_CASE("json and svg") {
  ExperimentResult r;
  r.name = "demo";
  r.metadata["family"] = "t^(3/2)";
  r.push(1000, 0.5);
  r.push(10000, 0.05);
  const auto j = to_json(r);
  CHECK(j["schema_version"] == kSchemaVersion);
  CHECK(j["name"] == "demo");
  CHECK(j["series"].size() == 2);
  CHECK(j["metadata"]["family"] == "t^(3/2)");
  const auto svg = to_svg(r);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("artifacts are written and byte-identical on rewrite") {
  const auto dir = std::filesystem::temp_directory_path() / "fracprime_test_experiment";
  std::filesystem::remove_all(dir);
  ExperimentResult r;
  r.name = "demo";
  r.push(1, 2.0);
  write_artifacts(r, dir, true);
  CHECK(std::filesystem::exists(dir / "demo.csv"));
  CHECK(std::filesystem::exists(dir / "demo.json"));
  CHECK(std::filesystem::exists(dir / "demo.svg"));
  const auto first = slurp(dir / "demo.csv");
  write_artifacts(r, dir, false);
  CHECK(slurp(dir / "demo.csv") == first);
  std::filesystem::remove_all(dir);
}
