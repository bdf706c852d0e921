#include "decaylab/spectral/io.hpp"

#include <fstream>

#include "decaylab/errors.hpp"

namespace decaylab::spectral {

nlohmann::json grid_to_json(const Grid& g) {
  return {{"d", g.dim()}, {"N", g.n()}, {"L", g.l()}};
}

Grid grid_from_json(const nlohmann::json& j) {
  try {
    auto n = j.at("N").get<std::vector<int>>();
    auto l = j.contains("L") ? j.at("L").get<std::vector<double>>()
                             : std::vector<double>(n.size(), 2.0 * std::numbers::pi);
    if (j.contains("d") && j.at("d").get<int>() != static_cast<int>(n.size()))
      throw ConfigError("grid.d disagrees with the length of grid.N");
    return Grid(std::move(n), std::move(l));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed grid record: ") + e.what());
  }
}

nlohmann::json field_to_json(const SpectralField& f) {
  std::vector<double> flat;
  flat.reserve(2 * f.coeffs().size());
  for (const cplx& z : f.coeffs()) {
    flat.push_back(z.real());
    flat.push_back(z.imag());
  }
  return {{"format", "decaylab.field"},
          {"version", 1},
          {"grid", grid_to_json(f.grid())},
          {"components", f.components()},
          {"coeffs", std::move(flat)}};
}

SpectralField field_from_json(const nlohmann::json& j) {
  try {
    if (j.value("format", "") != "decaylab.field") throw ConfigError("not a field record");
    if (j.value("version", 0) != 1) throw ConfigError("unsupported field record version");
    Grid g = grid_from_json(j.at("grid"));
    const int m = j.at("components").get<int>();
    const auto flat = j.at("coeffs").get<std::vector<double>>();
    if (flat.size() != 2 * g.size() * static_cast<std::size_t>(m))
      throw DimensionError("field record has " + std::to_string(flat.size()) + " numbers, expected " +
                           std::to_string(2 * g.size() * m));
    std::vector<cplx> c(flat.size() / 2);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = {flat[2 * i], flat[2 * i + 1]};
    return SpectralField(std::move(g), m, std::move(c));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed field record: ") + e.what());
  }
}

void write_field(const std::filesystem::path& path, const SpectralField& f) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot write " + path.string());
  os << field_to_json(f).dump() << '\n';
  if (!os) throw IoError("write failed for " + path.string());
}

SpectralField read_field(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot read " + path.string());
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("cannot parse " + path.string() + ": " + e.what());
  }
  return field_from_json(j);
}

}  // namespace decaylab::spectral
