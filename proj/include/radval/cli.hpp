#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "radval/sphere_grid.hpp"
#include "radval/valuation.hpp"

namespace radval::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitCheckFailed = 2;

struct ExperimentConfig {
  int dimension = 2;
  std::size_t points = 32;
  /// Valuation description object, validated by parse_config.
  nlohmann::json valuation = {{"family", "poly"}, {"coefficients", {0.0, 1.0}}};
  std::vector<double> levels;
  std::optional<std::uint64_t> seed;
  int trials = 100;
  double tolerance = 1e-10;
  /// Upper bound for random radial values; defaults to the last level.
  double value_max = 0.0;
  nlohmann::json scenarios = nlohmann::json::array();
  /// Directory that relative paths in the config resolve against.
  std::filesystem::path base_dir = ".";
};

/// Validates and normalizes a config document. Throws std::invalid_argument
/// with a message naming the offending key.
ExperimentConfig parse_config(const nlohmann::json& j, const std::filesystem::path& base_dir);

ValuationPtr make_valuation(const ExperimentConfig& config, const GridPtr& grid);

/// Runs one command line (args excludes the program name). Exit status:
/// 0 success, 1 usage or config error, 2 a check failed. Diagnostics for
/// nonzero exits are written to `err` as one JSON object per line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace radval::cli
