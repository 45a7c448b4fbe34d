#include "fracprime/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fracprime {

void ExperimentResult::push(std::uint64_t n, std::complex<double> value) {
  if (!N.empty() && n <= N.back()) throw std::invalid_argument("series N must be strictly increasing");
  N.push_back(n);
  values.push_back(value);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_csv(const ExperimentResult& result) {
  std::string out = result.complex_values ? "N,value_re,value_im\n" : "N,value\n";
  for (std::size_t i = 0; i < result.size(); ++i) {
    out += std::to_string(result.N[i]);
    out += ',';
    out += format_double(result.values[i].real());
    if (result.complex_values) {
      out += ',';
      out += format_double(result.values[i].imag());
    }
    out += '\n';
  }
  return out;
}

ExperimentResult from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty CSV");
  ExperimentResult r;
  if (line == "N,value_re,value_im") {
    r.complex_values = true;
  } else if (line != "N,value") {
    throw std::invalid_argument("unexpected CSV header: " + line);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string n, re, im;
    std::getline(row, n, ',');
    std::getline(row, re, ',');
    if (r.complex_values) std::getline(row, im, ',');
    r.push(std::stoull(n), {std::stod(re), r.complex_values ? std::stod(im) : 0.0});
  }
  return r;
}

nlohmann::ordered_json to_json(const ExperimentResult& result) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["name"] = result.name;
  j["metadata"] = result.metadata;
  auto& series = j["series"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < result.size(); ++i) {
    nlohmann::ordered_json row;
    row["N"] = result.N[i];
    if (result.complex_values) {
      row["value_re"] = result.values[i].real();
      row["value_im"] = result.values[i].imag();
    } else {
      row["value"] = result.values[i].real();
    }
    series.push_back(row);
  }
  j["wall_seconds"] = result.wall_seconds;
  return j;
}

std::string to_svg(const ExperimentResult& result) {
  constexpr double W = 640, H = 400, L = 70, R = 20, T = 30, B = 50;
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < result.size(); ++i) {
    xs.push_back(std::log10(static_cast<double>(std::max<std::uint64_t>(result.N[i], 1))));
    ys.push_back(std::abs(result.values[i]));
  }
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (!xs.empty()) {
    x0 = *std::min_element(xs.begin(), xs.end());
    x1 = *std::max_element(xs.begin(), xs.end());
    y1 = *std::max_element(ys.begin(), ys.end());
  }
  if (x1 <= x0) x1 = x0 + 1;
  if (y1 <= y0) y1 = y0 + 1;
  auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
    << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"14\">"
    << result.name << "</text>\n"
    << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
    << "\" stroke=\"black\"/>\n"
    << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B
    << "\" stroke=\"black\"/>\n"
    << "<text x=\"" << W / 2 << "\" y=\"" << H - 12
    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">log10 N</text>\n"
    << "<text x=\"" << L - 8 << "\" y=\"" << py(y1) + 4
    << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
    << format_double(y1).substr(0, 8) << "</text>\n"
    << "<text x=\"" << L - 8 << "\" y=\"" << py(y0) + 4
    << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">0</text>\n";
  if (!xs.empty()) {
    s << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) s << px(xs[i]) << ',' << py(ys[i]) << ' ';
    s << "\"/>\n";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      s << "<circle cx=\"" << px(xs[i]) << "\" cy=\"" << py(ys[i])
        << "\" r=\"3\" fill=\"#1f77b4\"/>\n";
    }
  }
  s << "</svg>\n";
  return s.str();
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

void write_artifacts(const ExperimentResult& result, const std::filesystem::path& dir, bool svg) {
  std::filesystem::create_directories(dir);
  write_file(dir / (result.name + ".csv"), to_csv(result));
  write_file(dir / (result.name + ".json"), to_json(result).dump(2) + "\n");
  if (svg) write_file(dir / (result.name + ".svg"), to_svg(result));
}

}  // namespace fracprime
