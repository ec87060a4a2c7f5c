#include "stardecomp/experiments.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>

#include "json.hpp"

#include "detail/parallel.hpp"
#include "stardecomp/error.hpp"
#include "stardecomp/numerics.hpp"
#include "stardecomp/rng.hpp"

namespace stardecomp {
namespace {

constexpr int kExactDensityCap = 24;
constexpr double kZ95 = 1.959963984540054;

std::int64_t beta_N(int N, int d, int k) {
  if (N < 1 || d < 1 || k < 1) throw DomainError("trials: N, d, k must be positive");
  if (2 * k > d) throw RegimeError("trials: requires k <= d/2");
  const std::int64_t half_edges = static_cast<std::int64_t>(N) * d;
  if (half_edges % (2 * k) != 0) {
    throw DivisibilityError("Nd/(2k) is not an integer for N=" + std::to_string(N) + ", d=" + std::to_string(d) +
                            ", k=" + std::to_string(k));
  }
  const int r = d % (2 * k);
  const std::int64_t scaled = static_cast<std::int64_t>(r) * N;
  if (scaled % (2 * k) != 0) {
    throw DivisibilityError("beta N = " + std::to_string(r) + "*" + std::to_string(N) + "/" + std::to_string(2 * k) +
                            " is not an integer");
  }
  return scaled / (2 * k);
}

VertexSet random_A(int N, std::int64_t size, std::uint64_t seed) {
  std::vector<int> perm(static_cast<std::size_t>(N));
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng(seed);
  rng.shuffle(perm);
  perm.resize(static_cast<std::size_t>(size));
  return VertexSet(N, std::move(perm));
}

std::string to_string(SamplerMode mode) {
  switch (mode) {
    case SamplerMode::automatic:
      return "automatic";
    case SamplerMode::rejection:
      return "rejection";
    case SamplerMode::steger_wormald:
      return "steger-wormald";
  }
  return "?";
}

}  // namespace

std::string to_string(AMode mode) { return mode == AMode::fixed ? "fixed" : "random"; }

AMode parse_a_mode(const std::string& text) {
  if (text == "fixed") return AMode::fixed;
  if (text == "random") return AMode::random;
  throw DomainError("unknown A mode '" + text + "' (expected fixed or random)");
}

std::optional<Interval> wilson95(std::int64_t successes, std::int64_t n) {
  if (n < 0 || successes < 0 || successes > n) throw DomainError("wilson95: need 0 <= successes <= n");
  if (n == 0) return std::nullopt;
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(successes) / nn;
  const double z2 = kZ95 * kZ95;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2.0 * nn)) / denom;
  const double half = kZ95 / denom * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
  Interval out{std::max(0.0, center - half), std::min(1.0, center + half)};
  if (successes == 0) out.lo = 0.0;
  if (successes == n) out.hi = 1.0;
  return out;
}

VertexSet fixed_A(int N, int d, int k) {
  std::vector<int> members(static_cast<std::size_t>(beta_N(N, d, k)));
  std::iota(members.begin(), members.end(), 0);
  return VertexSet(N, std::move(members));
}

TrialRecord run_trial(const TrialConfig& config, std::int64_t index) {
  const auto started = std::chrono::steady_clock::now();
  TrialRecord rec;
  rec.index = index;
  rec.seed = derive_seed(config.seed, static_cast<std::uint64_t>(index));
  rec.N = config.N;
  rec.d = config.d;
  rec.k = config.k;
  rec.a_mode = config.a_mode;

  const std::int64_t a_size = beta_N(config.N, config.d, config.k);
  SimpleSample sample = sample_simple(config.N, config.d, derive_seed(rec.seed, 0), config.sampler);
  rec.attempts = sample.attempts;
  const VertexSet A = config.a_mode == AMode::fixed ? fixed_A(config.N, config.d, config.k)
                                                    : random_A(config.N, a_size, derive_seed(rec.seed, 1));
  const StarProfile profile = balanced_profile(config.N, config.d, config.k, A);
  DecompositionResult result = decompose(sample.graph, profile);
  if (const auto* stars = std::get_if<StarDecomposition>(&result)) {
    const Verification check = verify_decomposition(sample.graph, profile, *stars);
    if (!check) throw InvariantError("trial " + std::to_string(index) + ": " + check.violation);
    rec.success = true;
  } else {
    const Witness& w = std::get<Witness>(result);
    rec.witness = WitnessSummary{w.U.size(), w.lhs, w.rhs, w.U.members()};
  }
  rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return rec;
}

ExperimentReport run_decomposition_trials(const TrialConfig& config) {
  if (config.trials < 0) throw DomainError("trials must be non-negative");
  beta_N(config.N, config.d, config.k);
  ExperimentReport report;
  report.config = config;
  report.trials = config.trials;
  report.records.resize(static_cast<std::size_t>(config.trials));
  detail::parallel_for(report.records.size(), config.threads, [&](std::size_t i) {
    report.records[i] = run_trial(config, static_cast<std::int64_t>(i));
  });

  std::int64_t attempts = 0;
  for (const TrialRecord& rec : report.records) {
    attempts += rec.attempts;
    if (rec.success) {
      ++report.successes;
      continue;
    }
    const std::size_t size = rec.witness->size;
    report.min_witness_size = report.witnesses == 0 ? size : std::min(report.min_witness_size, size);
    report.max_witness_size = std::max(report.max_witness_size, size);
    ++report.witnesses;
  }
  if (report.trials > 0) {
    report.rate = static_cast<double>(report.successes) / static_cast<double>(report.trials);
    report.mean_attempts = static_cast<double>(attempts) / static_cast<double>(report.trials);
  }
  report.wilson = wilson95(report.successes, report.trials);
  return report;
}

std::string to_json(const ExperimentReport& report, bool include_records) {
  using nlohmann::json;
  const TrialConfig& c = report.config;
  json out{
      {"schema", 1},
      {"config",
       {{"d", c.d},
        {"k", c.k},
        {"N", c.N},
        {"trials", c.trials},
        {"a_mode", to_string(c.a_mode)},
        {"seed", c.seed},
        {"sampler", to_string(c.sampler)}}},
      {"trials", report.trials},
      {"successes", report.successes},
  };
  out["rate"] = report.rate ? json(*report.rate) : json(nullptr);
  out["wilson95"] = report.wilson ? json::array({report.wilson->lo, report.wilson->hi}) : json(nullptr);
  out["witness_stats"] = {{"count", report.witnesses},
                          {"min_size", report.min_witness_size},
                          {"max_size", report.max_witness_size}};
  out["mean_attempts"] = report.mean_attempts;
  if (include_records) {
    json records = json::array();
    for (const TrialRecord& rec : report.records) {
      json r{{"index", rec.index}, {"seed", rec.seed},         {"N", rec.N},
             {"d", rec.d},         {"k", rec.k},               {"a_mode", to_string(rec.a_mode)},
             {"success", rec.success}, {"attempts", rec.attempts}, {"wall_ms", rec.wall_ms}};
      if (rec.witness) {
        std::vector<int> ids;
        for (int v : rec.witness->members) ids.push_back(v + 1);
        r["witness"] = {{"U", ids}, {"lhs", rec.witness->lhs}, {"rhs", rec.witness->rhs}};
      }
      records.push_back(std::move(r));
    }
    out["records"] = std::move(records);
  }
  return out.dump(2);
}

EmpiricalP empirical_P_Mr(int N, int d, int M, std::int64_t inside, std::int64_t trials, std::uint64_t seed,
                          unsigned threads) {
  if (N < 1 || d < 1 || (static_cast<std::int64_t>(N) * d) % 2 != 0 || M < 1 || M > N || inside < 0) {
    throw FeasibilityError("empirical_P_Mr: need Nd even, 1 <= M <= N and inside >= 0");
  }
  if (trials < 1) throw DomainError("empirical_P_Mr: trials must be positive");
  const SubgraphCount count{N, d, M, inside};
  EmpiricalP out;
  out.trials = trials;
  out.exact = count.feasible() ? std::exp(log_P_Mr(count)) : 0.0;

  std::vector<int> members(static_cast<std::size_t>(M));
  std::iota(members.begin(), members.end(), 0);
  const VertexSet U(N, std::move(members));
  // Fixed chunking keeps the total independent of the thread count.
  constexpr std::int64_t kChunk = 1024;
  const auto chunks = static_cast<std::size_t>((trials + kChunk - 1) / kChunk);
  std::vector<std::int64_t> hits(chunks, 0);
  detail::parallel_for(chunks, threads, [&](std::size_t c) {
    const std::int64_t begin = static_cast<std::int64_t>(c) * kChunk;
    const std::int64_t end = std::min(trials, begin + kChunk);
    for (std::int64_t i = begin; i < end; ++i) {
      const MultiGraph g = gen_configuration(N, d, derive_seed(seed, static_cast<std::uint64_t>(i)));
      if (edges_within(g, U) == inside) ++hits[c];
    }
  });
  out.hits = std::accumulate(hits.begin(), hits.end(), std::int64_t{0});
  const double n = static_cast<double>(trials);
  out.estimate = static_cast<double>(out.hits) / n;
  out.stderr_ = std::sqrt(out.estimate * (1.0 - out.estimate) / n);
  return out;
}

std::vector<DensityExtreme> subgraph_density_extremes(const SimpleGraph& g, int max_size) {
  const int N = g.num_vertices();
  if (max_size < 1 || max_size > N) throw DomainError("subgraph_density_extremes: need 1 <= max_size <= N");
  if (N > kExactDensityCap) {
    throw SizeError("subgraph_density_extremes: exact mode needs N <= " + std::to_string(kExactDensityCap));
  }
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(N), 0);
  for (const Edge& e : g.edges()) {
    adj[static_cast<std::size_t>(e.u)] |= 1U << e.v;
    adj[static_cast<std::size_t>(e.v)] |= 1U << e.u;
  }
  std::vector<std::int64_t> best(static_cast<std::size_t>(max_size) + 1, -1);
  std::vector<std::uint32_t> best_mask(best.size(), 0);
  // Gray-code walk; ties go to the smallest mask.
  const std::uint64_t count = std::uint64_t{1} << N;
  std::uint32_t mask = 0;
  std::int64_t inside = 0;
  for (std::uint64_t step = 1; step < count; ++step) {
    const int v = std::countr_zero(step);
    const std::uint32_t bit = 1U << v;
    const int touching = std::popcount(adj[static_cast<std::size_t>(v)] & mask);
    mask ^= bit;
    inside += (mask & bit) ? touching : -touching;
    const int size = std::popcount(mask);
    if (size > max_size) continue;
    auto& b = best[static_cast<std::size_t>(size)];
    auto& bm = best_mask[static_cast<std::size_t>(size)];
    if (inside > b || (inside == b && mask < bm)) {
      b = inside;
      bm = mask;
    }
  }
  std::vector<DensityExtreme> out;
  for (int m = 1; m <= max_size; ++m) {
    out.push_back({m, 2.0 * static_cast<double>(best[static_cast<std::size_t>(m)]) / m,
                   VertexSet::from_mask(N, best_mask[static_cast<std::size_t>(m)]), true});
  }
  return out;
}

std::vector<DensityExtreme> subgraph_density_extremes_sampled(const SimpleGraph& g, int max_size,
                                                              std::int64_t samples, std::uint64_t seed) {
  const int N = g.num_vertices();
  if (max_size < 1 || max_size > N) throw DomainError("subgraph_density_extremes: need 1 <= max_size <= N");
  if (samples < 0) throw DomainError("subgraph_density_extremes: samples must be non-negative");
  std::vector<DensityExtreme> out(static_cast<std::size_t>(max_size));
  std::vector<std::int64_t> best(out.size(), -1);
  auto offer = [&](const VertexSet& U) {
    const auto m = static_cast<int>(U.size());
    if (m < 1 || m > max_size) return;
    const std::int64_t e = edges_within(g, U);
    auto& b = best[static_cast<std::size_t>(m - 1)];
    if (e > b) {
      b = e;
      out[static_cast<std::size_t>(m - 1)] = {m, 2.0 * static_cast<double>(e) / m, U, false};
    }
  };

  // Peel a minimum-degree vertex (lowest id on ties) of the induced subgraph.
  std::vector<bool> alive(static_cast<std::size_t>(N), true);
  std::vector<int> deg(static_cast<std::size_t>(N), g.degree());
  for (int remaining = N; remaining >= 1; --remaining) {
    if (remaining <= max_size) {
      std::vector<int> members;
      for (int v = 0; v < N; ++v) {
        if (alive[static_cast<std::size_t>(v)]) members.push_back(v);
      }
      offer(VertexSet(N, std::move(members)));
    }
    int victim = -1;
    for (int v = 0; v < N; ++v) {
      if (alive[static_cast<std::size_t>(v)] &&
          (victim < 0 || deg[static_cast<std::size_t>(v)] < deg[static_cast<std::size_t>(victim)])) {
        victim = v;
      }
    }
    alive[static_cast<std::size_t>(victim)] = false;
    for (int e : g.incident(victim)) {
      const int w = g.other_end(e, victim);
      if (alive[static_cast<std::size_t>(w)]) --deg[static_cast<std::size_t>(w)];
    }
  }

  std::vector<int> perm(static_cast<std::size_t>(N));
  for (int m = 1; m <= max_size; ++m) {
    for (std::int64_t i = 0; i < samples; ++i) {
      std::iota(perm.begin(), perm.end(), 0);
      Rng rng(derive_seed(derive_seed(seed, static_cast<std::uint64_t>(m)), static_cast<std::uint64_t>(i)));
      rng.shuffle(perm);
      offer(VertexSet(N, std::vector<int>(perm.begin(), perm.begin() + m)));
    }
  }
  return out;
}

CurveKind parse_curve_kind(const std::string& text) {
  if (text == "gamma") return CurveKind::gamma;
  if (text == "quarter" || text == "quarter-case") return CurveKind::quarter;
  if (text == "weak-bound" || text == "weak_bound") return CurveKind::weak_bound;
  throw DomainError("unknown curve kind '" + text + "' (expected gamma, quarter or weak-bound)");
}

std::vector<CurveSample> curve_samples(CurveKind kind, const CurveParams& params) {
  std::vector<CurveSample> out;
  if (kind == CurveKind::weak_bound) {
    const WeakCertificate cert = weak_certificate(star_params(params.d, params.k), params.grid_step);
    out = cert.case1_curve;
    out.insert(out.end(), cert.case2_curve.begin(), cert.case2_curve.end());
    return out;
  }
  if (params.points < 1) throw DomainError("curve_samples: points must be positive");
  for (int i = 1; i <= params.points; ++i) {
    const double beta = static_cast<double>(i) / params.points;
    out.push_back({beta, kind == CurveKind::gamma ? gamma_beta(beta) : quarter_case_ratio(beta)});
  }
  return out;
}

void emit_curves(CurveKind kind, const CurveParams& params, const std::string& path) {
  const std::vector<CurveSample> samples = curve_samples(kind, params);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_curve_csv(out, samples);
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace stardecomp
