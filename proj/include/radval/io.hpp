#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "json.hpp"
#include "radval/kernel.hpp"
#include "radval/measures.hpp"
#include "radval/star_core.hpp"

namespace radval::io {

/// Shortest-roundtrip-safe representation: printf %.17g.
std::string format_double(double x);

/// One CSV row of N reals.
std::string radial_to_csv(const RadialFunction& f);
/// Reads the first non-empty row of a CSV document.
RadialFunction radial_from_csv(std::string_view text, const GridPtr& grid);

/// {"cells": [[indices]], "levels": [reals]}
nlohmann::json to_json(const SimpleStarSet& g);
SimpleStarSet simple_from_json(const nlohmann::json& j, const GridPtr& grid);

/// {"levels": [...], "values": [[...] per level], "offset": c0, "invariant": bool}
nlohmann::json to_json(const Kernel& k);
Kernel kernel_from_json(const nlohmann::json& j, const GridPtr& grid);

/// {"lambda": lambda, "density": [...]} (lambda is null when unset)
nlohmann::json to_json(const GridMeasure& m);
GridMeasure measure_from_json(const nlohmann::json& j, const GridPtr& grid);

std::string read_file(const std::filesystem::path& path);
/// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace radval::io
