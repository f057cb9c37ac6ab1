#include "seriate/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "seriate/errors.hpp"
#include "seriate/io.hpp"
#include "seriate/metrics.hpp"
#include "seriate/rng.hpp"
#include "seriate/rounding.hpp"

namespace seriate {

namespace {

LabeledSimilarity shuffle_similarity(const Matrix& ordered, std::uint64_t permute_seed) {
  const int n = static_cast<int>(ordered.rows());
  Rng rng(permute_seed);
  const Permutation sigma = Permutation::random(n, rng);
  return LabeledSimilarity{SimilarityMatrix(apply_ordering(sigma, ordered)), sigma.inverse()};
}

}  // namespace

LabeledSimilarity markov_similarity(const MarkovChainSpec& spec, std::uint64_t permute_seed) {
  const int n = spec.n;
  if (n < 2) throw std::invalid_argument("markov_similarity: need n >= 2");
  if (spec.samples != 0 && spec.samples < 2) {
    throw std::invalid_argument("markov_similarity: need at least 2 samples");
  }
  Rng rng(spec.seed);
  Vector b = spec.coefficients;
  Vector sd = spec.noise_sd;
  if (b.size() == 0) {
    b.resize(n - 1);
    for (int i = 0; i < n - 1; ++i) b(i) = rng.uniform(0.52, 0.95);
  }
  if (sd.size() == 0) {
    sd.resize(n - 1);
    for (int i = 0; i < n - 1; ++i) sd(i) = rng.uniform(0.6, 1.4);
  }
  if (b.size() != n - 1 || sd.size() != n - 1) {
    throw std::invalid_argument("markov_similarity: coefficient vectors need length n-1");
  }
  if (sd.minCoeff() <= 0.0) {
    throw std::invalid_argument("markov_similarity: noise standard deviations must be positive");
  }

  Matrix corr(n, n);
  if (spec.samples == 0) {
    // Model covariance: var recursion plus the product of chain coefficients.
    Vector var(n);
    var(0) = 1.0;
    for (int i = 0; i + 1 < n; ++i) var(i + 1) = b(i) * b(i) * var(i) + sd(i) * sd(i);
    for (int i = 0; i < n; ++i) {
      corr(i, i) = 1.0;
      double coeff = 1.0;
      for (int j = i + 1; j < n; ++j) {
        coeff *= b(j - 1);
        const double c = coeff * var(i) / std::sqrt(var(i) * var(j));
        corr(i, j) = corr(j, i) = c;
      }
    }
  } else {
    const int m = spec.samples;
    Matrix x(m, n);
    for (int s = 0; s < m; ++s) {
      x(s, 0) = rng.normal();
      for (int i = 0; i + 1 < n; ++i) x(s, i + 1) = b(i) * x(s, i) + sd(i) * rng.normal();
    }
    const Matrix centered = x.rowwise() - x.colwise().mean();
    const Matrix cov = centered.transpose() * centered / static_cast<double>(m - 1);
    const Vector isd = cov.diagonal().cwiseSqrt().cwiseInverse();
    corr = isd.asDiagonal() * cov * isd.asDiagonal();
  }
  return shuffle_similarity(corr.cwiseAbs(), permute_seed);
}

OrderSample sample_order_constraints(const Permutation& truth, double pair_probability,
                                     double error_rate, std::uint64_t seed) {
  if (pair_probability < 0.0 || pair_probability > 1.0 || error_rate < 0.0 || error_rate > 1.0) {
    throw std::invalid_argument("sample_order_constraints: probabilities must lie in [0, 1]");
  }
  const int n = truth.size();
  std::vector<int> ranks = truth.ranks();
  if (ranks[0] > ranks[n - 1]) ranks = truth.reversed().ranks();

  Rng rng(seed);
  OrderSample out;
  out.connectivity_threshold = std::log(static_cast<double>(n)) / n;
  out.above_threshold = pair_probability > out.connectivity_threshold;
  for (int a = 0; a < n; ++a) {
    for (int bb = a + 1; bb < n; ++bb) {
      if (rng.uniform() >= pair_probability) continue;
      int i = a, j = bb;
      if (ranks[i] > ranks[j]) std::swap(i, j);
      if (error_rate > 0.0 && rng.uniform() < error_rate) std::swap(i, j);
      out.specs.push_back(ConstraintSpec::make_order(i, j));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Read simulation.
// ---------------------------------------------------------------------------

namespace {

constexpr const char* kBases = "ACGT";

int base_code(char c) {
  switch (c) {
    case 'A': case 'a': return 0;
    case 'C': case 'c': return 1;
    case 'G': case 'g': return 2;
    case 'T': case 't': return 3;
    default: return -1;
  }
}

// 2-bit packing; limits k to 32, plenty for this pipeline.
std::uint64_t pack_kmer(const char* s, int k) {
  std::uint64_t v = 0;
  for (int i = 0; i < k; ++i) {
    const int c = base_code(s[i]);
    if (c < 0) throw std::invalid_argument("genome contains a non-ACGT character");
    v = (v << 2) | static_cast<std::uint64_t>(c);
  }
  return v;
}

bool has_repeated_kmer(const std::string& genome, int k) {
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(genome.size());
  for (std::size_t i = 0; i + k <= genome.size(); ++i) {
    if (!seen.insert(pack_kmer(genome.data() + i, k)).second) return true;
  }
  return false;
}

}  // namespace

Matrix ReadSet::dense_incidence() const {
  Matrix c = Matrix::Zero(size(), num_kmers);
  for (int r = 0; r < size(); ++r) {
    for (int id : kmer_ids[r]) c(r, id) = 1.0;
  }
  return c;
}

Permutation ReadSet::truth() const {
  Vector pos(size());
  for (int r = 0; r < size(); ++r) pos(r) = static_cast<double>(reads[r].true_position);
  return argsort(pos);
}

std::string random_genome(int length_bp, std::uint64_t seed) {
  if (length_bp < 1) throw std::invalid_argument("random_genome: length must be positive");
  Rng rng(seed);
  std::string g(length_bp, 'A');
  for (int i = 0; i < length_bp; ++i) g[i] = kBases[rng.uniform_int(0, 3)];
  return g;
}

std::string repeat_free_genome(int length_bp, int k, std::uint64_t seed) {
  if (k < 1 || k > 32) throw std::invalid_argument("repeat_free_genome: need 1 <= k <= 32");
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::string g = random_genome(length_bp, Rng::derive(seed, attempt));
    if (!has_repeated_kmer(g, k)) return g;
  }
  throw ConvergenceError("repeat_free_genome: could not sample a repeat-free sequence");
}

std::string plant_repeat(std::string genome, int repeat_length_bp, std::uint64_t seed) {
  const int n = static_cast<int>(genome.size());
  if (repeat_length_bp < 1 || 2 * repeat_length_bp > n) {
    throw std::invalid_argument("plant_repeat: repeat does not fit the genome");
  }
  Rng rng(seed);
  // Source in the first half, destination in the second, never overlapping.
  const int src = static_cast<int>(rng.uniform_int(0, n / 2 - repeat_length_bp));
  const int dst = static_cast<int>(rng.uniform_int(n / 2, n - repeat_length_bp));
  genome.replace(dst, repeat_length_bp, genome.substr(src, repeat_length_bp));
  return genome;
}

std::string load_genome(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open genome file: " + path);
  std::string genome, line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '>') continue;
    for (char c : line) {
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      if (base_code(c) < 0) throw std::runtime_error(path + ": non-ACGT character in genome");
      genome.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
  }
  if (genome.empty()) throw std::runtime_error(path + ": empty genome");
  return genome;
}

void save_genome(const std::string& path, const std::string& genome) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write genome file: " + path);
  out << ">genome\n";
  for (std::size_t i = 0; i < genome.size(); i += 80) out << genome.substr(i, 80) << '\n';
}

ReadSet simulate_reads(const std::string& genome, const ReadSimConfig& config,
                       std::uint64_t seed) {
  const int len = static_cast<int>(genome.size());
  if (config.k < 1 || config.k > 32) throw std::invalid_argument("simulate_reads: need 1 <= k <= 32");
  if (config.read_length_bp <= config.k) {
    throw std::invalid_argument("simulate_reads: reads must be longer than k");
  }
  if (config.coverage < 1.0) throw std::invalid_argument("simulate_reads: coverage must be >= 1");
  if (len <= config.read_length_bp) {
    throw std::invalid_argument("simulate_reads: genome shorter than a read");
  }

  const int span = len - config.read_length_bp + 1;
  const int num_reads = std::max(
      2, static_cast<int>(std::lround(config.coverage * len / config.read_length_bp)));
  if (num_reads > span) {
    throw std::invalid_argument("simulate_reads: coverage too high for distinct read starts");
  }

  Rng rng(seed);
  // One start per stratum: distinct positions and no coverage gaps.
  std::vector<int> starts(num_reads);
  for (int r = 0; r < num_reads; ++r) {
    const long lo = static_cast<long>(r) * span / num_reads;
    const long hi = static_cast<long>(r + 1) * span / num_reads - 1;
    starts[r] = static_cast<int>(rng.uniform_int(lo, std::max(lo, hi)));
  }

  // Pair a fraction of reads with the read closest to mate_gap downstream.
  std::vector<MatePair> mates_sorted;
  if (config.mate_gap_bp > 0 && config.mate_fraction > 0.0) {
    std::vector<int> candidates(num_reads);
    std::iota(candidates.begin(), candidates.end(), 0);
    for (int i = num_reads - 1; i > 0; --i) {
      std::swap(candidates[i], candidates[rng.uniform_int(0, i)]);
    }
    const int wanted = static_cast<int>(config.mate_fraction * num_reads / 2.0);
    const int stratum = std::max(1, span / num_reads);
    for (int c = 0; c < num_reads && static_cast<int>(mates_sorted.size()) < wanted; ++c) {
      const int r = candidates[c];
      const int target = starts[r] + config.mate_gap_bp;
      if (target > len - config.read_length_bp) continue;
      const auto it = std::lower_bound(starts.begin(), starts.end(), target);
      int best = -1;
      for (int probe : {static_cast<int>(it - starts.begin()) - 1, static_cast<int>(it - starts.begin())}) {
        if (probe <= r || probe >= num_reads) continue;
        if (best < 0 || std::abs(starts[probe] - target) < std::abs(starts[best] - target)) {
          best = probe;
        }
      }
      if (best < 0) continue;
      if (std::abs(starts[best] - target) > 4 * stratum) continue;
      const int gap = starts[best] - starts[r];
      if (gap <= 0) continue;
      mates_sorted.push_back(MatePair{r, best, gap});
    }
  }

  // Hide the generative order behind a random labeling.
  const Permutation shuffle = Permutation::random(num_reads, rng);
  std::vector<int> label_of_sorted(num_reads);
  for (int i = 0; i < num_reads; ++i) label_of_sorted[shuffle(i)] = i;

  ReadSet out;
  out.config = config;
  out.k = config.k;
  out.reads.resize(num_reads);
  for (int label = 0; label < num_reads; ++label) {
    const int s = shuffle(label);
    out.reads[label] = Read{genome.substr(starts[s], config.read_length_bp), starts[s]};
  }
  for (const MatePair& m : mates_sorted) {
    out.mate_pairs.push_back(
        MatePair{label_of_sorted[m.read_i], label_of_sorted[m.read_j], m.gap_bp});
  }

  std::unordered_map<std::uint64_t, int> kmer_id;
  kmer_id.reserve(static_cast<std::size_t>(len));
  out.kmer_ids.resize(num_reads);
  for (int r = 0; r < num_reads; ++r) {
    std::unordered_set<std::uint64_t> row;
    const std::string& s = out.reads[r].sequence;
    for (std::size_t i = 0; i + config.k <= s.size(); ++i) {
      row.insert(pack_kmer(s.data() + i, config.k));
    }
    std::vector<int>& ids = out.kmer_ids[r];
    for (std::uint64_t packed : row) {
      const auto [it, fresh] = kmer_id.emplace(packed, static_cast<int>(kmer_id.size()));
      ids.push_back(it->second);
    }
    std::sort(ids.begin(), ids.end());
  }
  out.num_kmers = static_cast<int>(kmer_id.size());
  return out;
}

SimilarityMatrix read_similarity(const ReadSet& reads) {
  const int n = reads.size();
  if (n < 1) throw std::invalid_argument("read_similarity: empty read set");
  std::vector<std::vector<int>> readers(reads.num_kmers);
  for (int r = 0; r < n; ++r) {
    for (int id : reads.kmer_ids[r]) readers[id].push_back(r);
  }
  Matrix a = Matrix::Zero(n, n);
  for (const std::vector<int>& group : readers) {
    for (std::size_t i = 0; i < group.size(); ++i) {
      for (std::size_t j = i; j < group.size(); ++j) {
        a(group[i], group[j]) += 1.0;
        if (group[i] != group[j]) a(group[j], group[i]) += 1.0;
      }
    }
  }
  return SimilarityMatrix(std::move(a));
}

// ---------------------------------------------------------------------------
// Assembly.
// ---------------------------------------------------------------------------

namespace {

struct ComponentOrder {
  std::vector<int> reads;  // internal order, genome-directed when mates allow
  bool ordered = false;
  double violation_density = 1.0;
};

ComponentOrder order_component(const Matrix& a, const std::vector<int>& members,
                               const std::vector<MatePair>& mates) {
  ComponentOrder co;
  co.reads = members;
  const int w = static_cast<int>(members.size());
  if (w < 3) {
    co.ordered = true;
    co.violation_density = 0.0;
  } else {
    Matrix sub(w, w);
    for (int i = 0; i < w; ++i) {
      for (int j = 0; j < w; ++j) sub(i, j) = a(members[i], members[j]);
    }
    try {
      const Permutation internal = spectral_order(SimilarityMatrix(sub)).order;
      const RMatrixCheck check = is_r_matrix(apply_ordering(internal, sub));
      co.violation_density =
          check.comparisons > 0 ? static_cast<double>(check.violations) / check.comparisons : 0.0;
      co.ordered = true;
      for (int i = 0; i < w; ++i) co.reads[i] = members[internal(i)];
    } catch (const Error&) {
      co.ordered = false;  // keep the incoming (BFS) order
      co.violation_density = 1.0;
    }
  }
  // Mates always point downstream; a negative majority means the component is
  // read against the genome direction.
  std::vector<int> rank(a.rows(), -1);
  for (int i = 0; i < w; ++i) rank[co.reads[i]] = i;
  long vote = 0;
  for (const MatePair& m : mates) {
    if (rank[m.read_i] >= 0 && rank[m.read_j] >= 0) {
      vote += rank[m.read_j] > rank[m.read_i] ? 1 : -1;
    }
  }
  if (vote < 0) std::reverse(co.reads.begin(), co.reads.end());
  return co;
}

}  // namespace

AssembleReport assemble(const ReadSet& reads, const AssembleConfig& config) {
  const int n = reads.size();
  if (n < 2) throw std::invalid_argument("assemble: need at least two reads");
  const SimilarityMatrix sim = read_similarity(reads);
  const Matrix& a = sim.matrix();

  AssembleReport report;
  Permutation baseline = Permutation::identity(n);
  bool baseline_ok = false;
  try {
    baseline = spectral_order(sim, config.fiedler).order;
    baseline_ok = true;
  } catch (const Error&) {
    // Disconnected or degenerate input; the pipeline below copes on its own.
  }
  report.spectral_baseline = baseline;

  // Reads living in two places at once (repeat copies) have anomalously many
  // overlap partners; pool them so the clean chain fragments separate.
  std::vector<std::vector<int>> adjacency(n);
  std::vector<double> degree(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j != i && a(i, j) > 0.0) {
        adjacency[i].push_back(j);
        degree[i] += 1.0;
      }
    }
  }
  std::vector<double> sorted_degree = degree;
  std::nth_element(sorted_degree.begin(), sorted_degree.begin() + n / 2, sorted_degree.end());
  const double median_degree = sorted_degree[n / 2];
  std::vector<char> pooled(n, 0);
  std::vector<int> by_degree(n);
  std::iota(by_degree.begin(), by_degree.end(), 0);
  std::stable_sort(by_degree.begin(), by_degree.end(),
                   [&](int x, int y) { return degree[x] > degree[y]; });
  int pool_count = 0;
  for (int r : by_degree) {
    if (degree[r] > config.suspect_degree_factor * median_degree && pool_count < n / 5) {
      pooled[r] = 1;
      ++pool_count;
    }
  }

  // Connected components of the residual overlap graph.
  std::vector<int> comp_of(n, -1);
  std::vector<std::vector<int>> components;
  for (int start = 0; start < n; ++start) {
    if (pooled[start] || comp_of[start] >= 0) continue;
    std::vector<int> queue{start};
    comp_of[start] = static_cast<int>(components.size());
    std::vector<int> members;
    while (!queue.empty()) {
      const int r = queue.back();
      queue.pop_back();
      members.push_back(r);
      for (int s : adjacency[r]) {
        if (!pooled[s] && comp_of[s] < 0) {
          comp_of[s] = comp_of[start];
          queue.push_back(s);
        }
      }
    }
    components.push_back(std::move(members));  // BFS order: chain-like fallback
  }
  // Fragments below the size floor join the pool.
  {
    std::vector<std::vector<int>> kept;
    for (std::vector<int>& c : components) {
      if (static_cast<int>(c.size()) >= config.min_component) {
        kept.push_back(std::move(c));
      } else {
        for (int r : c) pooled[r] = 1;
      }
    }
    components = std::move(kept);
    std::fill(comp_of.begin(), comp_of.end(), -1);
    for (std::size_t c = 0; c < components.size(); ++c) {
      for (int r : components[c]) comp_of[r] = static_cast<int>(c);
    }
  }
  const int m = static_cast<int>(components.size());
  report.components = m;
  if (m == 0) {
    report.order = baseline;
    report.contigs.push_back(Contig{baseline.order(), false, 1.0});
    return report;
  }

  std::vector<ComponentOrder> internal(m);
  if (m == 1 && static_cast<int>(components[0].size()) == n && baseline_ok) {
    // Clean input: the global spectral order already is the component order.
    ComponentOrder& co = internal[0];
    co.reads = baseline.order();
    co.ordered = true;
    const RMatrixCheck check = is_r_matrix(apply_ordering(baseline, a));
    co.violation_density =
        check.comparisons > 0 ? static_cast<double>(check.violations) / check.comparisons : 0.0;
    long vote = 0;
    const std::vector<int> rank = baseline.ranks();
    for (const MatePair& mp : reads.mate_pairs) {
      vote += rank[mp.read_j] > rank[mp.read_i] ? 1 : -1;
    }
    if (vote < 0) std::reverse(co.reads.begin(), co.reads.end());
  } else {
    for (int c = 0; c < m; ++c) internal[c] = order_component(a, components[c], reads.mate_pairs);
  }

  // Contig graph: mate links are the primary signal (repeat links never enter
  // since pooled reads are out); faint residual overlap breaks ties.
  Matrix up = Matrix::Zero(m, m);  // directed mate counts
  for (const MatePair& mp : reads.mate_pairs) {
    const int ca = comp_of[mp.read_i];
    const int cb = comp_of[mp.read_j];
    if (ca >= 0 && cb >= 0 && ca != cb) up(ca, cb) += 1.0;
  }
  Matrix contig_sim = up + up.transpose();
  if (m > 1) {
    Matrix residual = Matrix::Zero(m, m);
    for (int i = 0; i < n; ++i) {
      if (comp_of[i] < 0) continue;
      for (int j : adjacency[i]) {
        if (comp_of[j] >= 0 && comp_of[j] != comp_of[i]) {
          residual(comp_of[i], comp_of[j]) += a(i, j);
        }
      }
    }
    const double rmax = residual.maxCoeff();
    if (rmax > 0.0) contig_sim += residual * (0.5 / rmax);
  }

  Permutation contig_order = Permutation::identity(m);
  if (m > 1) {
    try {
      contig_order = spectral_order(SimilarityMatrix(contig_sim)).order;
    } catch (const Error&) {
      // Mate graph too thin; keep discovery order.
    }
    // Genome direction: mates vote on the contig order's reading direction.
    {
      const std::vector<int> pos = contig_order.ranks();
      double vote = 0.0;
      for (int x = 0; x < m; ++x) {
        for (int y = 0; y < m; ++y) {
          if (x != y) vote += up(x, y) * (pos[y] > pos[x] ? 1.0 : -1.0);
        }
      }
      if (vote < 0.0) contig_order = contig_order.reversed();
    }

    // Constrained refinement from the directed mate majorities.
    if (m >= 3 && up.sum() > 0.0) {
      std::vector<ConstraintSpec> specs;
      for (int x = 0; x < m; ++x) {
        for (int y = x + 1; y < m; ++y) {
          if (up(x, y) + up(y, x) < config.min_mate_links) continue;
          const double net = up(x, y) - up(y, x);
          if (net > 0.0) {
            specs.push_back(ConstraintSpec::make_order(x, y));
          } else if (net < 0.0) {
            specs.push_back(ConstraintSpec::make_order(y, x));
          }
        }
      }
      // The solver pins contig 0 before contig m-1; read the mate direction
      // the same way or the constraint set contradicts it.
      {
        Vector genome_pos = Vector::Zero(m);
        const std::vector<int> pos = contig_order.ranks();
        for (int c = 0; c < m; ++c) genome_pos(c) = pos[c];
        if (genome_pos(0) > genome_pos(m - 1)) {
          for (ConstraintSpec& s : specs) std::swap(s.i, s.j);
        }
      }
      if (!specs.empty()) {
        try {
          const ConstraintSet constraints = build_constraints(m, specs);
          const EnsembleWeights y = build_y(m, 2 * m, 0.5, Rng::derive(config.solver.seed, 1));
          const SolverReport solved =
              apg_solve(laplacian(contig_sim), y, constraints, config.solver);
          const SampledPermutations rounded =
              sample_permutations(solved.solution, SimilarityMatrix(contig_sim),
                                  config.rounding_samples, Rng::derive(config.solver.seed, 2));
          contig_order = rounded.best;
          report.used_qp = true;
          report.constraint_count = static_cast<int>(specs.size());
          const std::vector<int> pos = contig_order.ranks();
          double vote = 0.0;
          for (int x = 0; x < m; ++x) {
            for (int y = 0; y < m; ++y) {
              if (x != y) vote += up(x, y) * (pos[y] > pos[x] ? 1.0 : -1.0);
            }
          }
          if (vote < 0.0) contig_order = contig_order.reversed();
        } catch (const Error&) {
          report.used_qp = false;
        }
      }
    }
  }

  // Backbone concatenation and the contig report.
  std::vector<int> backbone;
  backbone.reserve(n);
  for (int t = 0; t < m; ++t) {
    const ComponentOrder& co = internal[contig_order(t)];
    report.contigs.push_back(
        Contig{co.reads, co.ordered && co.violation_density <= config.audit_violation_density,
               co.violation_density});
    backbone.insert(backbone.end(), co.reads.begin(), co.reads.end());
  }

  // Interpolate pooled reads next to their mates (or strongest overlap).
  std::vector<double> backbone_rank(n, -1.0);
  for (std::size_t t = 0; t < backbone.size(); ++t) {
    backbone_rank[backbone[t]] = static_cast<double>(t);
  }
  const double bp_per_rank =
      std::max(1e-9, reads.config.read_length_bp / std::max(1.0, reads.config.coverage));
  std::vector<std::vector<std::pair<double, int>>> buckets(backbone.size());
  for (int r = 0; r < n; ++r) {
    if (!pooled[r]) continue;
    report.pooled_reads.push_back(r);
    std::vector<double> predictions;
    for (const MatePair& mp : reads.mate_pairs) {
      if (mp.read_i == r && backbone_rank[mp.read_j] >= 0.0) {
        predictions.push_back(backbone_rank[mp.read_j] - mp.gap_bp / bp_per_rank);
      } else if (mp.read_j == r && backbone_rank[mp.read_i] >= 0.0) {
        predictions.push_back(backbone_rank[mp.read_i] + mp.gap_bp / bp_per_rank);
      }
    }
    double predicted;
    if (!predictions.empty()) {
      std::sort(predictions.begin(), predictions.end());
      predicted = predictions[predictions.size() / 2];
    } else {
      int best = -1;
      for (int s : adjacency[r]) {
        if (backbone_rank[s] >= 0.0 && (best < 0 || a(r, s) > a(r, best))) best = s;
      }
      predicted = best >= 0 ? backbone_rank[best] + 0.5
                            : static_cast<double>(backbone.size()) - 0.5;
    }
    const int slot = std::clamp(static_cast<int>(std::lround(predicted)), 0,
                                static_cast<int>(backbone.size()) - 1);
    buckets[slot].push_back({predicted, r});
  }
  std::vector<int> final_order;
  final_order.reserve(n);
  for (std::size_t t = 0; t < backbone.size(); ++t) {
    final_order.push_back(backbone[t]);
    std::sort(buckets[t].begin(), buckets[t].end());
    for (const auto& [pred, r] : buckets[t]) final_order.push_back(r);
  }

  // Settle the global reading direction by the full mate vote.
  {
    std::vector<int> rank(n);
    for (int t = 0; t < n; ++t) rank[final_order[t]] = t;
    long vote = 0;
    for (const MatePair& mp : reads.mate_pairs) {
      vote += rank[mp.read_j] > rank[mp.read_i] ? 1 : -1;
    }
    if (vote < 0) std::reverse(final_order.begin(), final_order.end());
  }
  report.order = Permutation(std::move(final_order));
  return report;
}

// ---------------------------------------------------------------------------
// Binary ingestion and synthetic fixtures.
// ---------------------------------------------------------------------------

BinaryMatrix load_binary_matrix(const std::string& path) {
  BinaryMatrix out;
  out.m = read_csv_matrix(path);
  for (Eigen::Index i = 0; i < out.m.rows(); ++i) {
    bool any = false;
    for (Eigen::Index j = 0; j < out.m.cols(); ++j) {
      const double v = out.m(i, j);
      if (v != 0.0 && v != 1.0) {
        throw std::runtime_error(path + ": non-binary entry at row " + std::to_string(i + 1));
      }
      any = any || v == 1.0;
    }
    if (!any) out.zero_rows.push_back(static_cast<int>(i));
  }
  return out;
}

LabeledSimilarity synthetic_pre_r(int n, int num_cuts, double noise_scale, std::uint64_t seed,
                                  bool strict_profile) {
  if (n < 2) throw std::invalid_argument("synthetic_pre_r: need n >= 2");
  if (num_cuts < 0) throw std::invalid_argument("synthetic_pre_r: need num_cuts >= 0");
  Rng rng(seed);
  Matrix a = Matrix::Zero(n, n);
  auto add_cut = [&](int u, int v, double w) {
    a.block(u, u, v - u + 1, v - u + 1).array() += w;
  };
  if (strict_profile) {
    // Prefix and suffix anchors make every off-diagonal comparison strict.
    for (int v = 1; v <= n - 2; ++v) add_cut(0, v, rng.uniform(0.2, 1.0));
    for (int u = 1; u <= n - 2; ++u) add_cut(u, n - 1, rng.uniform(0.2, 1.0));
  }
  for (int c = 0; c < num_cuts; ++c) {
    const int u = static_cast<int>(rng.uniform_int(0, n - 1));
    const int v = static_cast<int>(rng.uniform_int(u, n - 1));
    add_cut(u, v, rng.uniform(0.2, 1.0));
  }
  if (noise_scale > 0.0) {
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        const double e = noise_scale * rng.uniform(-1.0, 1.0);
        a(i, j) = std::max(0.0, a(i, j) + e);
        a(j, i) = a(i, j);
      }
    }
  }
  return shuffle_similarity(a, Rng::derive(seed, 0x5eed));
}

LabeledBinary synthetic_c1p(int rows, int cols, double noise_fraction, std::uint64_t seed) {
  if (rows < 2 || cols < 1) throw std::invalid_argument("synthetic_c1p: degenerate shape");
  if (noise_fraction < 0.0) throw std::invalid_argument("synthetic_c1p: negative noise");
  Rng rng(seed);
  Matrix c = Matrix::Zero(rows, cols);
  const int min_len = std::max(2, rows / 5);
  const int max_len = std::max(min_len, 2 * rows / 5);
  for (int j = 0; j < cols; ++j) {
    const int len = static_cast<int>(rng.uniform_int(min_len, max_len));
    const int start = static_cast<int>(rng.uniform_int(0, rows - len));
    for (int i = start; i < start + len; ++i) c(i, j) = 1.0;
  }
  // Noise volume is calibrated to the support: flip a random set of
  // positions numbering noise_fraction * nnz, in either direction.
  const long flips = static_cast<long>(std::ceil(noise_fraction * c.sum()));
  for (long f = 0; f < flips; ++f) {
    const int i = static_cast<int>(rng.uniform_int(0, rows - 1));
    const int j = static_cast<int>(rng.uniform_int(0, cols - 1));
    c(i, j) = 1.0 - c(i, j);
  }
  const Permutation sigma = Permutation::random(rows, rng);
  Matrix shuffled(rows, cols);
  for (int i = 0; i < rows; ++i) shuffled.row(i) = c.row(sigma(i));
  return LabeledBinary{std::move(shuffled), sigma.inverse()};
}

}  // namespace seriate
