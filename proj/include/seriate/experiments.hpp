#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "seriate/datasets.hpp"
#include "seriate/relax.hpp"

namespace seriate {

// One evaluated ordering run. `fraction` is the sampled constraint fraction
// (negative when not applicable); `extra` carries an experiment-specific
// knob such as p/n in the ensemble sweep.
struct RunRow {
  std::string experiment;
  std::string method;
  double fraction = -1.0;
  std::uint64_t seed = 0;
  double tau = 0.0;
  double tau_oriented = 0.0;
  double rho = 0.0;
  double rho_oriented = 0.0;
  double objective = 0.0;
  long r_violations = 0;
  double wall_time_s = 0.0;
  double extra = 0.0;
};

struct Aggregate {
  std::string experiment;
  std::string method;
  double fraction = -1.0;
  double extra = 0.0;
  int runs = 0;
  double tau_median = 0.0;
  double tau_stdev = 0.0;
  double rho_median = 0.0;
  double rho_stdev = 0.0;
  double objective_median = 0.0;
  double objective_mean = 0.0;
  double r_violations_median = 0.0;
};

struct ExperimentConfig {
  int seeds = 100;
  std::uint64_t master_seed = 42;
  int jobs = 1;
  std::string out_dir;  // empty = keep results in memory only

  // Markov chain study.
  int n = 30;
  int samples = 0;  // 0 = exact model covariance
  std::vector<double> fractions = {0.002, 0.046, 0.543};
  double error_rate = 0.0;

  // Relaxation settings shared by the QP methods. The solver budgets are
  // tuned for rounding-grade accuracy; tighter settings change the recovered
  // orderings by less than the rounding granularity but cost ~40x the time.
  int p_cols = 0;  // 0 = 2n
  double y_noise = 0.5;
  int rounding_samples = 100;
  SolverConfig solver = [] {
    SolverConfig s;
    s.max_iters = 300;
    s.tolerance = 1e-6;
    s.projection_tol = 2e-6;
    s.projection_max_iters = 3000;
    return s;
  }();

  // Archeology study; empty path falls back to $SERIATE_DATA_DIR/munsingen.csv
  // and, when that is absent too, to synthetic consecutive-ones data.
  std::string data_path;

  // Shotgun study. When genome_path is set the sequence is loaded from that
  // FASTA-like file instead of being sampled (the planted arm still copies a
  // repeat into it).
  std::string genome_path;
  int genome_length = 10000;
  int read_length = 100;
  double coverage = 20.0;
  int kmer = 16;
  int mate_gap = 1000;
  int repeat_length = 400;

  // Ensemble-width sweep.
  std::vector<double> p_over_n = {0.2, 1.0, 2.0, 5.0};
};

struct ExperimentResult {
  std::string name;
  std::vector<RunRow> rows;
  std::vector<Aggregate> aggregates;
  std::vector<std::string> notes;  // e.g. dataset fallback notices
};

ExperimentResult run_markov_experiment(const ExperimentConfig& cfg);
ExperimentResult run_archeo_experiment(const ExperimentConfig& cfg);
ExperimentResult run_dna_experiment(const ExperimentConfig& cfg);
ExperimentResult run_ygen_experiment(const ExperimentConfig& cfg);
ExperimentResult run_experiment(const std::string& name, const ExperimentConfig& cfg);

std::vector<Aggregate> aggregate_rows(const std::vector<RunRow>& rows);

// Writes runs.csv, aggregates.csv and meta.json under cfg.out_dir.
void write_experiment_outputs(const ExperimentConfig& cfg, const ExperimentResult& result);

// Reloads the per-run rows, recomputes the aggregates and checks them against
// aggregates.csv. Throws on any mismatch.
void self_audit(const std::string& out_dir);

// Resolves the archeology data file: explicit path, then SERIATE_DATA_DIR.
// Returns an empty string when nothing is found.
std::string find_archeo_data(const std::string& explicit_path);

}  // namespace seriate
