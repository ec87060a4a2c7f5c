#pragma once

// Monte Carlo harness: decomposition trials on random regular graphs,
// empirical subset edge-count frequencies, dense-subgraph extremes and curve
// emission for plotting.
//
// Trial i uses the sub-seed derive_seed(seed, i); the graph is drawn from
// derive_seed(sub, 0) and a random A from derive_seed(sub, 1), so any record
// can be replayed alone.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stardecomp/conditions.hpp"
#include "stardecomp/decompose.hpp"
#include "stardecomp/graph.hpp"

namespace stardecomp {

enum class AMode { fixed, random };

std::string to_string(AMode mode);
AMode parse_a_mode(const std::string& text);

struct TrialConfig {
  int d = 0;
  int k = 0;
  int N = 0;
  std::int64_t trials = 0;
  AMode a_mode = AMode::random;
  std::uint64_t seed = 0;
  SamplerMode sampler = SamplerMode::automatic;
  unsigned threads = 1;
};

struct WitnessSummary {
  std::size_t size = 0;
  std::int64_t lhs = 0;
  std::int64_t rhs = 0;
  std::vector<int> members;  ///< 0-based
};

struct TrialRecord {
  std::int64_t index = 0;
  std::uint64_t seed = 0;  ///< trial sub-seed
  int N = 0;
  int d = 0;
  int k = 0;
  AMode a_mode = AMode::random;
  bool success = false;
  std::optional<WitnessSummary> witness;
  std::int64_t attempts = 0;  ///< sampler attempts
  double wall_ms = 0.0;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Wilson score interval at 95%; nullopt when n = 0.
std::optional<Interval> wilson95(std::int64_t successes, std::int64_t n);

struct ExperimentReport {
  TrialConfig config;
  std::int64_t trials = 0;
  std::int64_t successes = 0;
  std::optional<double> rate;  ///< undefined for zero trials
  std::optional<Interval> wilson;
  std::int64_t witnesses = 0;
  std::size_t min_witness_size = 0;
  std::size_t max_witness_size = 0;
  double mean_attempts = 0.0;
  std::vector<TrialRecord> records;  ///< ordered by index
};

/// The fixed A is {0, ..., beta N - 1}.
VertexSet fixed_A(int N, int d, int k);

/// Runs (or replays) trial `index`.
TrialRecord run_trial(const TrialConfig& config, std::int64_t index);

/// Throws DivisibilityError unless Nd/2k and beta N are integers.
ExperimentReport run_decomposition_trials(const TrialConfig& config);

std::string to_json(const ExperimentReport& report, bool include_records);

struct EmpiricalP {
  double estimate = 0.0;
  double stderr_ = 0.0;
  double exact = 0.0;  ///< exp(log_P_Mr), 0 for infeasible counts
  std::int64_t trials = 0;
  std::int64_t hits = 0;
};

/// Frequency of e[U] = inside for U = {0..M-1} in the configuration model.
/// Counts outside the feasible range are allowed and give frequency 0.
/// Throws FeasibilityError when Nd is odd, M is outside [1, N] or inside < 0.
EmpiricalP empirical_P_Mr(int N, int d, int M, std::int64_t inside, std::int64_t trials, std::uint64_t seed,
                          unsigned threads = 1);

struct DensityExtreme {
  int size = 0;
  double max_avg_degree = 0.0;  ///< 2 e[U] / |U|
  VertexSet argmax;
  bool exact = false;
};

/// For each 1 <= m <= max_size, the largest 2e[U]/|U| over |U| = m. Exact by
/// enumeration when N <= 24; throws SizeError above that.
std::vector<DensityExtreme> subgraph_density_extremes(const SimpleGraph& g, int max_size);

/// Lower bounds from min-degree peeling plus `samples` random sets per size.
std::vector<DensityExtreme> subgraph_density_extremes_sampled(const SimpleGraph& g, int max_size,
                                                              std::int64_t samples, std::uint64_t seed);

enum class CurveKind { gamma, quarter, weak_bound };

CurveKind parse_curve_kind(const std::string& text);

struct CurveParams {
  int points = 1000;  ///< gamma / quarter grid size on (0, 1]
  int d = 0;          ///< weak_bound only
  int k = 0;
  double grid_step = 1e-4;
};

/// gamma and quarter sample beta = i/points; weak_bound concatenates the
/// case-1 and case-2 certificate curves.
std::vector<CurveSample> curve_samples(CurveKind kind, const CurveParams& params);

/// Writes curve_samples as CSV with header "x,value". Throws std::runtime_error
/// on I/O failure.
void emit_curves(CurveKind kind, const CurveParams& params, const std::string& path);

}  // namespace stardecomp
