#pragma once

// Entropy and large-deviation rate functions of the configuration model, plus
// exact subset edge-count probabilities. All functions are pure.

#include <cmath>
#include <cstdint>
#include <vector>

namespace stardecomp {

/// Subset density x and normalized average degree t (average degree / d).
struct DensityPoint {
  double x = 0.0;
  double t = 0.0;

  /// (2 - t) x <= 1, i.e. the outside of U can absorb the crossing half-edges.
  bool feasible() const noexcept;
};

/// A fixed M-subset of the N vertices of a d-regular configuration graph
/// spanning `inside` edges (inside = rM/2 for inside-average degree r).
struct SubgraphCount {
  std::int64_t N = 0;
  std::int64_t d = 0;
  std::int64_t M = 0;
  std::int64_t inside = 0;

  double avg_degree() const noexcept { return 2.0 * static_cast<double>(inside) / static_cast<double>(M); }
  /// Exact integer feasibility: Nd even, 1 <= M <= N, 0 <= 2*inside <= Md and
  /// M(2d - r) <= Nd.
  bool feasible() const noexcept;
};

/// h(x) = -x log x with h(0) = h(1) = 0.
double entropy_h(double x);
/// H(x) = h(x) + h(1 - x).
double entropy_H(double x);

/// Exponential decay rate F(x,t) (per dN). Extended continuously to x = 0,
/// t = 0 and t = 1. Throws FeasibilityError when (2 - t) x > 1.
double rate_F(DensityPoint p);
/// d/dt F(x,t) on 0 < x <= t < 1.
double rate_F_dt(DensityPoint p);
/// F_d(x,t) = d F(x,t) + H(x).
double rate_Fd(DensityPoint p, int d);
/// F(x,t) / H(x) for 0 < x <= t, t in (0,1).
double F_ratio(DensityPoint p);

/// phi(z) = 1 - z + log z on (0, 1].
double phi(double z);
/// Cubic upper estimate of F valid for 0 <= x <= 0.6, x <= t <= 1.
double F_upper_estimate(DensityPoint p);
/// (1/2) x t phi(x/t), an upper bound of F for 0 <= x <= 0.2, t >= 2x/(1+x).
double F_main_term_bound(DensityPoint p);

/// g(alpha, x) = h(x) + h(alpha - x) - h(alpha): rate of the number of
/// x-density subsets of an alpha-density set.
double g_alpha(double alpha, double x);

/// Table of log n! for n <= limit.
class LogFactorial {
 public:
  explicit LogFactorial(std::int64_t limit);
  double operator()(std::int64_t n) const;
  /// log C(n, m).
  double choose(std::int64_t n, std::int64_t m) const;
  /// log (n-1)!! for even n, the number of perfect matchings on n points.
  double matchings(std::int64_t n) const;

 private:
  std::vector<double> table_;
};

/// log P_{M,r}: probability that a fixed M-set spans exactly `inside` edges in
/// the configuration model. Throws FeasibilityError for infeasible counts.
double log_P_Mr(const SubgraphCount& c);
inline double exact_P_Mr(const SubgraphCount& c) { return log_P_Mr(c); }

/// log of the closed-form bound (e^{2d} d^d (M/(Ne))^{r/2-1})^M on
/// Z_{M,r} = C(N,M) P_{M,r}.
double log_Z_upper(const SubgraphCount& c);

/// An eps > 0 with e^{2d} d^d (eps/e)^{dhat/2-1} < 1/2: the equality root,
/// halved. Underflows to 0 once log eps < -745; use the log form there.
double eps_for_avg_degree(int d, double dhat);
double log_eps_for_avg_degree(int d, double dhat);

namespace detail {

template <class Real>
Real entropy_h_definition(const Real& z) {
  using std::log;
  if (z <= 0) return Real(0);
  return -z * log(z);
}

template <class Real>
Real entropy_H_definition(const Real& x) {
  return entropy_h_definition(x) + entropy_h_definition(Real(1) - x);
}

/// Direct evaluation of F from its definition for any real-like type.
/// Used for high-precision re-evaluation; suffers cancellation in double.
template <class Real>
Real rate_F_definition(const Real& x, const Real& t) {
  const Real one(1);
  const Real two(2);
  return entropy_h_definition(Real(t * x)) / two + entropy_h_definition(Real((one - t) * x)) +
         entropy_h_definition(Real(one - (two - t) * x)) / two - entropy_H_definition(x);
}

}  // namespace detail
}  // namespace stardecomp
