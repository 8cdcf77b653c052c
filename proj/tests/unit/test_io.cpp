#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "sl3lab/error.hpp"
#include "sl3lab/io.hpp"

using namespace sl3lab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("sl3lab_test_io_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("layout round trip") {
  const auto dir = scratch("layout");
  for (const auto& layout : {build_layout(LayoutPreset::Tight, 3), build_layout({8, 14})}) {
    io::write_layout(dir / "layout.json", layout);
    CHECK(io::read_layout(dir / "layout.json") == layout);
  }
  CHECK_THROWS_AS(io::read_layout(dir / "missing.json"), Error);
  CHECK_THROWS_AS(io::layout_from_json(io::json{{"dims", {5}}}), Error);
}

TEST_CASE("decomposition round trip is exact") {
  std::mt19937_64 rng(101);
  const auto dir = scratch("decomp");
  const auto layout = build_layout({8, 14});
  for (int t = 0; t < 5; ++t) {
    const auto T = t % 2 ? fixtures::random_decomposition(layout, 1 + t, rng)
                         : fixtures::random_candidate_diagonal(layout, 1 + t, rng);
    const auto manifest = io::write_decomposition(dir / std::to_string(t), T);
    const auto back = io::read_decomposition(manifest);
    REQUIRE(back.rank() == T.rank());
    CHECK(back.layout() == layout);
    CHECK(back.is_candidate_diagonal() == T.is_candidate_diagonal());
    for (std::size_t i = 0; i < T.rank(); ++i)
      for (std::size_t k = 0; k < 2; ++k) {
        CHECK(back.left(i).block(k) == T.left(i).block(k));
        CHECK(back.right(i).block(k) == T.right(i).block(k));
      }
  }
}

TEST_CASE("plane and family CSV") {
  const ProjectivePlane plane(2);
  std::ostringstream out;
  io::write_plane_csv(out, plane);
  const std::string s = out.str();
  CHECK(s.rfind("index,c0,c1,c2\n0,0,0,1\n", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == 8);

  std::ostringstream fam;
  io::write_family_csv(fam, standard_family(2));
  const std::string f = fam.str();
  CHECK(f.rfind("operator,row,col,sign\n", 0) == 0);
  CHECK(std::count(f.begin(), f.end(), '\n') == 1 + 7 * 7);
}

TEST_CASE("matrix CSV rejects garbage") {
  const auto dir = scratch("csv");
  {
    std::ofstream(dir / "bad.csv") << "1,2\n3,x\n";
    std::ofstream(dir / "ragged.csv") << "1,2\n3\n";
  }
  CHECK_THROWS_AS(io::read_matrix_csv(dir / "bad.csv"), Error);
  CHECK_THROWS_AS(io::read_matrix_csv(dir / "ragged.csv"), Error);
  CHECK(io::format_double(0.1) == "0.10000000000000001");
}
