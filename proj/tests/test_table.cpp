#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>

#include "nhqsim/table.hpp"

using namespace nhqsim;

namespace {

std::filesystem::path scratch_dir() {
  const auto dir =
      std::filesystem::temp_directory_path() / "nhqsim_table_tests";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("row width is enforced") {
  Table t;
  t.columns = {"a", "b"};
  t.add_row({1.0, 2.0});
  CHECK_THROWS_AS(t.add_row({1.0}), std::invalid_argument);
}

TEST_CASE("csv renders blanks for nan and keeps 17 digits") {
  Table t;
  t.columns = {"x", "y"};
  t.add_row({1.0 / 3.0, std::numeric_limits<double>::quiet_NaN()});
  const std::string csv = to_csv(t);
  CHECK(csv == "x,y\n0.33333333333333331,\n");
  const double parsed = std::strtod(csv.c_str() + 4, nullptr);
  CHECK(parsed == 1.0 / 3.0);  // exact round trip
  CHECK_THROWS_AS(to_csv(t, 0), std::invalid_argument);
  CHECK_THROWS_AS(to_csv(t, 18), std::invalid_argument);
}

TEST_CASE("atomic write leaves no temp file and reruns are identical") {
  const auto path = scratch_dir() / "out.csv";
  Table t;
  t.columns = {"v"};
  t.add_row({0.1234567890123456789});
  write_csv(t, path);
  const std::string first = slurp(path);
  write_csv(t, path);
  CHECK(slurp(path) == first);
  CHECK_FALSE(std::filesystem::exists(path.string() + ".tmp"));
  std::filesystem::remove(path);
}

TEST_CASE("nested directories are created") {
  const auto path = scratch_dir() / "deep" / "nested" / "f.csv";
  std::filesystem::remove_all(scratch_dir() / "deep");
  Table t;
  t.columns = {"v"};
  write_csv(t, path);
  CHECK(std::filesystem::exists(path));
  std::filesystem::remove_all(scratch_dir() / "deep");
}
