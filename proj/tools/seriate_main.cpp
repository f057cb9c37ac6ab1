// Command-line front end: seriate matrices from files and reproduce the
// library's benchmark experiments.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "seriate/datasets.hpp"
#include "seriate/errors.hpp"
#include "seriate/experiments.hpp"
#include "seriate/io.hpp"
#include "seriate/metrics.hpp"
#include "seriate/rounding.hpp"
#include "seriate/spectral.hpp"

namespace fs = std::filesystem;
using namespace seriate;

namespace {

struct OrderArgs {
  std::string matrix_path;
  std::string method = "spectral";
  std::string constraints_path;
  std::string out_path = "order.txt";
  std::string report_path;
  std::uint64_t seed = 0;
  double mu_frac = 0.9;
  int p_cols = 0;
  int samples = 100;  // rounding draws for the relaxation methods
  double y_noise = 0.5;
  int max_iters = 2000;
  double tolerance = 1e-6;
};

int run_order(const OrderArgs& args) {
  const auto started = std::chrono::steady_clock::now();
  const SimilarityMatrix a(read_matrix(args.matrix_path));
  const int n = a.size();

  nlohmann::json report;
  report["command"] = "order";
  report["matrix"] = args.matrix_path;
  report["n"] = n;
  report["method"] = args.method;
  report["seed"] = args.seed;

  Permutation order;
  if (args.method == "spectral") {
    const SpectralOrder so = spectral_order(a);
    order = so.order;
    report["fiedler_value"] = so.fiedler.value;
    report["multiplicity_warning"] = so.fiedler.multiplicity_warning;
  } else if (args.method == "qp" || args.method == "qp_semi") {
    std::vector<ConstraintSpec> specs;
    if (args.method == "qp_semi") {
      if (args.constraints_path.empty()) {
        throw std::invalid_argument("qp_semi needs --constraints");
      }
      specs = load_constraints(args.constraints_path);
    }
    const ConstraintSet constraints = build_constraints(n, specs);
    const int p = args.p_cols > 0 ? args.p_cols : 2 * n;
    const EnsembleWeights y = build_y(n, p, args.y_noise, Rng::derive(args.seed, 1));
    SolverConfig solver;
    solver.seed = args.seed;
    solver.mu_fraction = args.mu_frac;
    solver.max_iters = args.max_iters;
    solver.tolerance = args.tolerance;
    const SolverReport solved = apg_solve(laplacian(a), y, constraints, solver);
    const SampledPermutations rounded =
        sample_permutations(solved.solution, a, args.samples, Rng::derive(args.seed, 2));
    order = rounded.best;
    report["solver"] = {{"iterations", solved.iterations},
                        {"final_gap", solved.final_gap},
                        {"mu", solved.mu},
                        {"mu_bound", solved.mu_upper_bound},
                        {"converged", solved.converged},
                        {"p_cols", p},
                        {"constraints", constraints.columns() - 1}};
    report["rounding_samples"] = args.samples;
  } else {
    throw std::invalid_argument("unknown method: " + args.method);
  }

  const EvalReport ev = evaluate(a, order);
  report["objective"] = ev.objective;
  report["r_violations"] = ev.r_violations;
  report["wall_time_s"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  write_permutation(args.out_path, order);
  report["order_file"] = args.out_path;
  const std::string report_path =
      args.report_path.empty() ? args.out_path + ".report.json" : args.report_path;
  std::ofstream rout(report_path);
  if (!rout) throw std::runtime_error("cannot write report: " + report_path);
  rout << report.dump(2) << '\n';
  std::cout << "order written to " << args.out_path << " (objective " << ev.objective << ", "
            << ev.r_violations << " R violations)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"seriate: linear ordering from pairwise similarity data"};
  app.require_subcommand(1);

  OrderArgs oa;
  CLI::App* order = app.add_subcommand("order", "Seriate a similarity matrix file");
  order->add_option("matrix", oa.matrix_path, "CSV or MatrixMarket similarity matrix")->required();
  order->add_option("--method", oa.method, "spectral | qp | qp_semi");
  order->add_option("--constraints", oa.constraints_path, "constraint file for qp_semi");
  order->add_option("--out", oa.out_path, "output ordering file (one 1-based index per line)");
  order->add_option("--report", oa.report_path, "JSON report path (default <out>.report.json)");
  order->add_option("--seed", oa.seed, "random seed");
  order->add_option("--mu-frac", oa.mu_frac, "fraction of the convexity bound");
  order->add_option("--p-cols", oa.p_cols, "ensemble width (default 2n)");
  order->add_option("--samples", oa.samples, "rounding draws");
  order->add_option("--y-noise", oa.y_noise, "ensemble perturbation scale");
  order->add_option("--max-iters", oa.max_iters, "solver iteration cap");
  order->add_option("--tolerance", oa.tolerance, "solver stopping tolerance");

  ExperimentConfig ec;
  std::string experiment_name;
  CLI::App* exp = app.add_subcommand("experiment", "Run a benchmark experiment");
  exp->add_option("name", experiment_name, "markov | archeo | dna | ygen")->required();
  exp->add_option("--out", ec.out_dir, "output directory")->required();
  exp->add_option("--seeds", ec.seeds, "number of runs");
  exp->add_option("--seed", ec.master_seed, "master seed");
  exp->add_option("--jobs", ec.jobs, "max concurrent runs");
  exp->add_option("--n", ec.n, "problem size");
  exp->add_option("--samples", ec.samples, "covariance samples (0 = exact model)");
  exp->add_option("--p-frac", ec.fractions, "constraint fractions to sweep");
  exp->add_option("--error-rate", ec.error_rate, "constraint flip probability");
  exp->add_option("--mu-frac", ec.solver.mu_fraction, "fraction of the convexity bound");
  exp->add_option("--p-cols", ec.p_cols, "ensemble width (default 2n)");
  exp->add_option("--rounding", ec.rounding_samples, "rounding draws");
  exp->add_option("--data", ec.data_path, "archeology CSV path");
  exp->add_option("--genome", ec.genome_path, "FASTA-like genome file (dna)");
  exp->add_option("--genome-length", ec.genome_length, "genome length in bp");
  exp->add_option("--read-length", ec.read_length, "read length in bp");
  exp->add_option("--coverage", ec.coverage, "read coverage");
  exp->add_option("--kmer", ec.kmer, "k-mer length");
  exp->add_option("--mate-gap", ec.mate_gap, "mate pair gap in bp");
  exp->add_option("--repeat-length", ec.repeat_length, "planted repeat length in bp");
  exp->add_option("--p-over-n", ec.p_over_n, "ensemble width sweep (ygen)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*order) return run_order(oa);
    const ExperimentResult result = run_experiment(experiment_name, ec);
    for (const std::string& note : result.notes) std::cout << "note: " << note << '\n';
    std::cout << result.name << ": " << result.rows.size() << " runs, "
              << result.aggregates.size() << " aggregate groups -> " << ec.out_dir << '\n';
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
