#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "seriate/io.hpp"
#include "support/oracles.hpp"

using namespace seriate;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "seriate_io_tests";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("dense csv round trip") {
  Rng rng(223);
  const Matrix m = seriate::testing::random_symmetric_nonnegative(7, rng);
  const fs::path path = scratch_dir() / "m.csv";
  write_csv_matrix(path.string(), m);
  const Matrix back = read_csv_matrix(path.string());
  CHECK((m - back).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("csv parse errors carry the line") {
  const fs::path path = scratch_dir() / "bad.csv";
  {
    std::ofstream out(path);
    out << "1,2\n3,oops\n";
  }
  CHECK_THROWS_WITH_AS(read_csv_matrix(path.string()),
                       doctest::Contains(":2:"), std::runtime_error);
  const fs::path ragged = scratch_dir() / "ragged.csv";
  {
    std::ofstream out(ragged);
    out << "1,2\n3\n";
  }
  CHECK_THROWS(read_csv_matrix(ragged.string()));
}

TEST_CASE("matrix market symmetric round trip") {
  Rng rng(227);
  Matrix m = Matrix::Zero(6, 6);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j <= i; ++j) {
      if (rng.uniform() < 0.5) m(i, j) = m(j, i) = rng.uniform(0.1, 2.0);
    }
  }
  const fs::path path = scratch_dir() / "m.mtx";
  write_matrix_market_symmetric(path.string(), m);
  const Matrix back = read_matrix_market(path.string());
  CHECK((m - back).cwiseAbs().maxCoeff() == 0.0);
  // Extension dispatch.
  CHECK((read_matrix(path.string()) - m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("matrix market rejects malformed headers") {
  const fs::path path = scratch_dir() / "noheader.mtx";
  {
    std::ofstream out(path);
    out << "not a banner\n1 1 0\n";
  }
  CHECK_THROWS(read_matrix_market(path.string()));
}

TEST_CASE("permutation file round trip is 1-based") {
  const Permutation p = Permutation::from_one_based({3, 1, 4, 2});
  const fs::path path = scratch_dir() / "perm.txt";
  write_permutation(path.string(), p);
  CHECK(read_permutation(path.string()) == p);
  std::ifstream in(path);
  std::string first;
  std::getline(in, first);
  CHECK(first == "3");
}

TEST_CASE("missing files raise io errors") {
  CHECK_THROWS(read_csv_matrix("/nonexistent/seriate.csv"));
  CHECK_THROWS(read_permutation("/nonexistent/seriate.txt"));
}
