// End-to-end checks that drive the installed binary through a shell.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "seriate/datasets.hpp"
#include "seriate/io.hpp"
#include "seriate/metrics.hpp"

#include <json.hpp>

namespace fs = std::filesystem;
using namespace seriate;

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
  if (!ok) {
    ++failures;
    std::cerr << "FAILED: " << what << '\n';
  }
}

int run(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: seriate_cli_tests <path-to-seriate-binary>\n";
    return 2;
  }
  const std::string binary = argv[1];
  const fs::path dir = fs::temp_directory_path() / "seriate_cli_tests";
  fs::remove_all(dir);
  fs::create_directories(dir);

  // Fixture: noiseless strict pre-R instance with a known truth.
  const LabeledSimilarity data = synthetic_pre_r(18, 6, 0.0, 2025);
  const fs::path matrix = dir / "a.csv";
  write_csv_matrix(matrix.string(), data.a.matrix());
  const fs::path truth_file = dir / "truth.txt";
  write_permutation(truth_file.string(), data.truth);

  // Spectral ordering recovers the planted order.
  const fs::path out = dir / "order.txt";
  expect(run(binary + " order " + matrix.string() + " --method spectral --out " + out.string()) ==
             0,
         "spectral order exits 0");
  const Permutation spectral = read_permutation(out.string());
  expect(kendall_tau(spectral, data.truth, true) == 1.0, "spectral CLI recovers the fixture");
  {
    std::ifstream rin(out.string() + ".report.json");
    expect(rin.good(), "spectral report exists");
    nlohmann::json report;
    rin >> report;
    expect(report["method"] == "spectral", "report records the method");
    expect(report.contains("objective"), "report records the objective");
  }

  // Constraint-pinned relaxation returns the exact truth.
  const OrderSample sample = sample_order_constraints(data.truth, 1.0, 0.0, 3);
  const fs::path cons = dir / "full.cons";
  save_constraints(cons.string(), sample.specs);
  const fs::path qp_out = dir / "qp_order.txt";
  expect(run(binary + " order " + matrix.string() + " --method qp_semi --constraints " +
             cons.string() + " --out " + qp_out.string() + " --seed 5") == 0,
         "qp_semi exits 0");
  const Permutation pinned = read_permutation(qp_out.string());
  expect(kendall_tau(pinned, data.truth, true) == 1.0, "full constraints pin the truth");

  // Bad input path exits with code 2.
  expect(run(binary + " order /does/not/exist.csv --out " + (dir / "x.txt").string() +
             " 2>/dev/null") == 2,
         "missing matrix file exits 2");

  // Disconnected input is a domain error: exit 1.
  const fs::path disc = dir / "disc.csv";
  {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 1) = m(1, 0) = 1.0;
    m(2, 3) = m(3, 2) = 1.0;
    write_csv_matrix(disc.string(), m);
  }
  expect(run(binary + " order " + disc.string() + " --out " + (dir / "y.txt").string() +
             " 2>/dev/null") == 1,
         "disconnected matrix exits 1");

  // Tiny markov experiment writes auditable outputs.
  const fs::path exp_dir = dir / "exp";
  expect(run(binary + " experiment markov --seeds 2 --n 10 --p-frac 0.2 --p-frac 1.0 --out " +
             exp_dir.string() + " --jobs 2") == 0,
         "markov experiment exits 0");
  expect(fs::exists(exp_dir / "runs.csv"), "runs.csv written");
  expect(fs::exists(exp_dir / "aggregates.csv"), "aggregates.csv written");
  expect(fs::exists(exp_dir / "meta.json"), "meta.json written");

  // Unknown experiment name is rejected.
  expect(run(binary + " experiment bogus --out " + (dir / "z").string() + " 2>/dev/null") != 0,
         "unknown experiment rejected");

  if (failures == 0) {
    std::cout << "cli tests passed\n";
    return 0;
  }
  std::cerr << failures << " cli test(s) failed\n";
  return 1;
}
