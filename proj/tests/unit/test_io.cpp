#include <filesystem>
#include <stdexcept>

#include "doctest.h"
#include "radval/builtins.hpp"
#include "radval/io.hpp"
#include "radval/random.hpp"

using namespace radval;
namespace fs = std::filesystem;

TEST_CASE("doubles print with 17 significant digits") {
  CHECK(io::format_double(0.1) == "0.10000000000000001");
  CHECK(io::format_double(2.0) == "2");
  CHECK(std::stod(io::format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("radial CSV round trip") {
  const auto grid = build_grid(3, 7);
  Rng rng(1);
  const auto f = random_radial(grid, rng, 2.0);
  CHECK(io::radial_from_csv(io::radial_to_csv(f), grid) == f);
  CHECK(io::radial_from_csv("\n  \n1,2,3,4,5,6,7\n", grid) == RadialFunction(grid, {1, 2, 3, 4, 5, 6, 7}));
  CHECK_THROWS_AS(io::radial_from_csv("1,2,x", grid), std::invalid_argument);
  CHECK_THROWS_AS(io::radial_from_csv("1,2,3", grid), std::invalid_argument);
  CHECK_THROWS_AS(io::radial_from_csv("", grid), std::invalid_argument);
}

TEST_CASE("simple star set JSON round trip") {
  const auto grid = build_grid(2, 9);
  Rng rng(2);
  const std::vector<double> levels{0.0, 0.5, 1.0};
  const auto g = random_simple(grid, rng, levels);
  const auto back = io::simple_from_json(io::to_json(g), grid);
  CHECK(to_radial(back) == to_radial(g));
  CHECK(back.cell_count() == g.cell_count());
}

TEST_CASE("kernel JSON round trip") {
  const auto grid = build_grid(2, 4);
  const auto k = sample_kernel(grid, poly_theta({0.1, 1.0 / 3.0}), level_range(0.0, 1.0, 0.25), {1.0, 0.3, 1});
  const auto back = io::kernel_from_json(io::to_json(k), grid);
  CHECK(back.values() == k.values());
  CHECK(back.levels() == k.levels());
  CHECK(back.offset() == k.offset());
  CHECK(back.invariant() == k.invariant());
  // Rows of length one describe rotation-invariant kernels.
  const nlohmann::json compact = {{"levels", {0.0, 1.0}}, {"values", {{0.0}, {2.0}}}, {"offset", 0.0}, {"invariant", true}};
  const auto inv = io::kernel_from_json(compact, grid);
  CHECK(inv.at(1.0, 3) == 2.0);
}

TEST_CASE("measure JSON round trip") {
  const auto grid = build_grid(2, 3);
  const GridMeasure m(grid, {0.1, -0.2, 0.3}, 1.5);
  const auto back = io::measure_from_json(io::to_json(m), grid);
  CHECK(back.density() == m.density());
  CHECK(back.lambda() == 1.5);
}

TEST_CASE("atomic writes replace the target") {
  const auto dir = fs::temp_directory_path() / "radval_io_test";
  fs::create_directories(dir);
  const auto path = dir / "out.txt";
  io::write_file_atomic(path, "first");
  io::write_file_atomic(path, "second");
  CHECK(io::read_file(path) == "second");
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++entries;
  CHECK(entries == 1);
  fs::remove_all(dir);
  CHECK_THROWS(io::read_file(path));
}
