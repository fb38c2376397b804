#include "radval/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace radval::io {

using nlohmann::json;

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string radial_to_csv(const RadialFunction& f) {
  std::string out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i > 0) out += ',';
    out += format_double(f[i]);
  }
  out += '\n';
  return out;
}

RadialFunction radial_from_csv(std::string_view text, const GridPtr& grid) {
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> values;
    std::istringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("radial CSV: cannot parse '" + cell + "'");
      }
      if (cell.find_first_not_of(" \t\r", used) != std::string::npos) {
        throw std::invalid_argument("radial CSV: trailing characters in '" + cell + "'");
      }
      values.push_back(v);
    }
    return RadialFunction(grid, std::move(values));
  }
  throw std::invalid_argument("radial CSV: no data row");
}

json to_json(const SimpleStarSet& g) {
  json cells = json::array();
  for (const auto& c : g.cells()) cells.push_back(c.indices());
  return json{{"cells", std::move(cells)}, {"levels", g.levels()}};
}

SimpleStarSet simple_from_json(const json& j, const GridPtr& grid) {
  std::vector<GridSubset> cells;
  for (const auto& c : j.at("cells")) {
    const auto idx = c.get<std::vector<std::size_t>>();
    cells.push_back(GridSubset::of(grid, idx));
  }
  return SimpleStarSet(grid, std::move(cells), j.at("levels").get<std::vector<double>>());
}

json to_json(const Kernel& k) {
  const auto n = k.direction_count();
  json rows = json::array();
  for (std::size_t j = 0; j < k.level_count(); ++j) {
    rows.push_back(std::vector<double>(k.values().begin() + static_cast<std::ptrdiff_t>(j * n),
                                       k.values().begin() + static_cast<std::ptrdiff_t>((j + 1) * n)));
  }
  return json{{"levels", k.levels()}, {"values", std::move(rows)}, {"offset", k.offset()}, {"invariant", k.invariant()}};
}

Kernel kernel_from_json(const json& j, const GridPtr& grid) {
  auto levels = j.at("levels").get<std::vector<double>>();
  const auto rows = j.at("values");
  if (rows.size() != levels.size()) throw std::invalid_argument("kernel JSON: one row of values per level required");
  std::vector<double> values;
  values.reserve(levels.size() * grid->size());
  for (const auto& row : rows) {
    auto r = row.get<std::vector<double>>();
    if (r.size() == 1 && grid->size() > 1) r.assign(grid->size(), r.front());
    if (r.size() != grid->size()) throw std::invalid_argument("kernel JSON: row length differs from grid size");
    values.insert(values.end(), r.begin(), r.end());
  }
  return Kernel(grid, std::move(levels), std::move(values), j.value("offset", 0.0), j.value("invariant", false));
}

json to_json(const GridMeasure& m) {
  json lambda = std::isnan(m.lambda()) ? json(nullptr) : json(m.lambda());
  return json{{"lambda", std::move(lambda)}, {"density", m.density()}};
}

GridMeasure measure_from_json(const json& j, const GridPtr& grid) {
  const auto& l = j.at("lambda");
  const double lambda = l.is_null() ? std::nan("") : l.get<double>();
  return GridMeasure(grid, j.at("density").get<std::vector<double>>(), lambda);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace radval::io
