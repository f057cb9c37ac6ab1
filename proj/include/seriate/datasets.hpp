#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "seriate/constraints.hpp"
#include "seriate/core.hpp"
#include "seriate/relax.hpp"
#include "seriate/spectral.hpp"

namespace seriate {

// ---------------------------------------------------------------------------
// Gaussian Markov chain X_{i+1} = b_i X_i + eps_i, eps_i ~ N(0, sigma_i^2).
// The absolute correlation between chain variables decays monotonically with
// their separation, so the (unshuffled) similarity matrix is strictly R.
// ---------------------------------------------------------------------------

struct MarkovChainSpec {
  int n = 30;
  Vector coefficients;  // b_i, length n-1; empty = drawn uniformly from seed
  Vector noise_sd;      // sigma_i > 0, length n-1; empty = drawn from seed
  int samples = 0;      // 0 = exact model covariance, else sample covariance
  std::uint64_t seed = 0;
};

struct LabeledSimilarity {
  SimilarityMatrix a;
  Permutation truth;  // ordering that restores the generative order
};

LabeledSimilarity markov_similarity(const MarkovChainSpec& spec, std::uint64_t permute_seed);

// ---------------------------------------------------------------------------
// Erdos-Renyi sampling of pairwise order constraints from a known ordering.
// ---------------------------------------------------------------------------

struct OrderSample {
  std::vector<ConstraintSpec> specs;
  double connectivity_threshold = 0.0;  // log(n)/n
  bool above_threshold = false;
};

// Includes each unordered pair independently with probability
// pair_probability, oriented by the truth and flipped with probability
// error_rate. The truth is read in the orientation that places element 0
// before element n-1, so error-free samples never contradict the solvers'
// symmetry-breaking constraint.
OrderSample sample_order_constraints(const Permutation& truth, double pair_probability,
                                     double error_rate, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Shotgun-read toy pipeline.
// ---------------------------------------------------------------------------

struct Read {
  std::string sequence;
  int true_position = 0;  // start offset in the source genome (bp)
};

struct MatePair {
  int read_i = 0;
  int read_j = 0;
  int gap_bp = 0;  // distance between the two start positions
};

struct ReadSimConfig {
  int read_length_bp = 100;
  double coverage = 20.0;
  int mate_gap_bp = 1000;     // 0 disables mate pairing
  double mate_fraction = 0.5; // fraction of reads that get a downstream mate
  int k = 16;
};

struct ReadSet {
  std::vector<Read> reads;
  std::vector<MatePair> mate_pairs;
  int k = 0;
  int num_kmers = 0;
  // Sparse rows of the binary read x k-mer incidence matrix: sorted distinct
  // k-mer ids per read.
  std::vector<std::vector<int>> kmer_ids;
  ReadSimConfig config;

  int size() const { return static_cast<int>(reads.size()); }
  Matrix dense_incidence() const;
  // Ordering of reads by true genome position.
  Permutation truth() const;
};

std::string random_genome(int length_bp, std::uint64_t seed);
// Re-draws until no k-mer occurs twice, so the read incidence matrix is
// exactly pre-P.
std::string repeat_free_genome(int length_bp, int k, std::uint64_t seed);
// Copies a random segment of the given length over another location.
std::string plant_repeat(std::string genome, int repeat_length_bp, std::uint64_t seed);
std::string load_genome(const std::string& path);
void save_genome(const std::string& path, const std::string& genome);

// Stratified-uniform read starts (distinct, genome-covering), optional mate
// pairing at the configured gap, and the k-mer incidence structure.
ReadSet simulate_reads(const std::string& genome, const ReadSimConfig& config,
                       std::uint64_t seed);

// Shared-k-mer counts between reads; for a binary incidence matrix C the
// min-sum product C o C' coincides with C C'.
SimilarityMatrix read_similarity(const ReadSet& reads);

struct AssembleConfig {
  double suspect_degree_factor = 1.45;    // neighborhood size vs median
  int min_component = 8;                  // smaller clean pieces join the pool
  double audit_violation_density = 0.05;  // "good contig" threshold
  int min_mate_links = 2;                 // links needed per contig-pair constraint
  int rounding_samples = 100;
  SolverConfig solver;
  FiedlerOptions fiedler;
};

struct Contig {
  std::vector<int> reads;  // in internal order
  bool good = true;
  double violation_density = 0.0;
};

struct AssembleReport {
  Permutation order;              // final read ordering
  Permutation spectral_baseline;  // plain spectral read ordering
  std::vector<Contig> contigs;    // clean components in final order
  int components = 0;
  bool used_qp = false;
  int constraint_count = 0;
  // Repeat-suspect or fragmentary reads, re-inserted by mate interpolation.
  std::vector<int> pooled_reads;
};

// Repeat-aware contig pipeline: reads whose similarity neighborhood is
// anomalously large (repeat copies collapse distant loci onto them) are set
// aside; the remaining overlap graph splits into clean components, each
// ordered spectrally and oriented by its internal mate pairs; the contig
// graph is ordered by mate links and refined with the constrained relaxation;
// pooled reads are finally interpolated back next to their mates. Without
// mate pairs the pipeline reduces to the spectral contig order.
AssembleReport assemble(const ReadSet& reads, const AssembleConfig& config);

// ---------------------------------------------------------------------------
// Binary matrix ingestion (grave x artifact style data).
// ---------------------------------------------------------------------------

struct BinaryMatrix {
  Matrix m;                    // entries are exactly 0 or 1
  std::vector<int> zero_rows;  // all-zero rows disconnect the similarity graph
};

BinaryMatrix load_binary_matrix(const std::string& path);

// ---------------------------------------------------------------------------
// Synthetic fixtures.
// ---------------------------------------------------------------------------

// Random conic combination of CUT blocks, shuffled. With strict_profile the
// decomposition always contains the anchored families CUT(1, b) and
// CUT(a, n), which makes every off-diagonal Robinson comparison strict; the
// exhaustive ordering optimum is then exactly {truth, reversal}.
LabeledSimilarity synthetic_pre_r(int n, int num_cuts, double noise_scale, std::uint64_t seed,
                                  bool strict_profile = true);

struct LabeledBinary {
  Matrix c;  // rows shuffled
  Permutation truth;
};

// Random consecutive-ones matrix (one random column interval per column)
// with shuffled rows and bit-flip noise: a random set of positions numbering
// noise_fraction * nnz is flipped, so the noise volume is calibrated to the
// support of the signal.
LabeledBinary synthetic_c1p(int rows, int cols, double noise_fraction, std::uint64_t seed);

}  // namespace seriate
