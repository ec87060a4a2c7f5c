#include "stardecomp/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "stardecomp/error.hpp"

namespace stardecomp {
namespace {

constexpr double kFeasibilitySlack = 1e-14;

void require_unit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError(std::string(what) + ": argument " + std::to_string(x) + " outside [0,1]");
  }
}

// h(1 - z) for z in [0,1], accurate for small z.
double h_one_minus(double z) {
  if (z <= 0.0) return 0.0;
  if (z >= 1.0) return 0.0;
  return -(1.0 - z) * std::log1p(-z);
}

}  // namespace

bool DensityPoint::feasible() const noexcept {
  return x >= 0.0 && x <= 1.0 && t >= 0.0 && t <= 1.0 && (2.0 - t) * x <= 1.0 + kFeasibilitySlack;
}

bool SubgraphCount::feasible() const noexcept {
  if (N < 1 || d < 1 || M < 1 || M > N || inside < 0) return false;
  if ((N * d) % 2 != 0) return false;
  if (2 * inside > M * d) return false;
  // M(2d - r) = 2Md - 2*inside
  return 2 * M * d - 2 * inside <= N * d;
}

double entropy_h(double x) {
  require_unit(x, "entropy_h");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log(x);
}

double entropy_H(double x) {
  require_unit(x, "entropy_H");
  return entropy_h(x) + entropy_h(1.0 - x);
}

double rate_F(DensityPoint p) {
  require_unit(p.x, "rate_F");
  require_unit(p.t, "rate_F");
  if (!p.feasible()) {
    throw FeasibilityError("rate_F: (2 - t) x > 1 at x=" + std::to_string(p.x) +
                           ", t=" + std::to_string(p.t));
  }
  const double x = p.x;
  const double t = p.t;
  if (x == 0.0) return 0.0;
  // 1/2 h(tx) + h((1-t)x) - h(x) = 1/2 x t log(x/t) + x h(1-t)
  const double mixed = t > 0.0 ? 0.5 * x * t * std::log(x / t) : 0.0;
  const double outside = std::min(1.0, (2.0 - t) * x);
  return mixed + x * h_one_minus(t) + 0.5 * h_one_minus(outside) - h_one_minus(x);
}

double rate_F_dt(DensityPoint p) {
  if (!(p.x > 0.0 && p.x <= p.t && p.t < 1.0)) {
    throw DomainError("rate_F_dt: requires 0 < x <= t < 1");
  }
  if (!p.feasible()) throw FeasibilityError("rate_F_dt: (2 - t) x > 1");
  const double x = p.x;
  const double t = p.t;
  const double frac = (t - x) / (t * (1.0 - (2.0 - t) * x));
  return 0.5 * x * std::log1p(-frac);
}

double rate_Fd(DensityPoint p, int d) {
  if (d < 1) throw DomainError("rate_Fd: d must be positive");
  return d * rate_F(p) + entropy_H(p.x);
}

double F_ratio(DensityPoint p) {
  if (!(p.x > 0.0 && p.x <= p.t && p.t > 0.0 && p.t < 1.0)) {
    throw DomainError("F_ratio: requires 0 < x <= t < 1");
  }
  const double H = entropy_H(p.x);
  if (H == 0.0) throw DomainError("F_ratio: H(x) = 0");
  return rate_F(p) / H;
}

double phi(double z) {
  if (!(z > 0.0 && z <= 1.0)) throw DomainError("phi: requires z in (0,1]");
  return 1.0 - z + std::log(z);
}

double F_upper_estimate(DensityPoint p) {
  const double x = p.x;
  const double t = p.t;
  if (!(x >= 0.0 && x <= 0.6 && t >= x && t <= 1.0)) {
    throw DomainError("F_upper_estimate: requires 0 <= x <= 0.6, x <= t <= 1");
  }
  if (x == 0.0) return 0.0;
  const double z = x / t;
  const double two_minus_t = 2.0 - t;
  return 0.5 * x * t * (1.0 - z + std::log(z)) + x * x * t - 0.5 * x * t * t -
         x * t * t * t / 6.0 +
         0.25 * (1.0 - two_minus_t * two_minus_t * two_minus_t / 3.0) * x * x * x;
}

double F_main_term_bound(DensityPoint p) {
  const double x = p.x;
  const double t = p.t;
  if (!(x >= 0.0 && x <= 0.2 && t >= 2.0 * x / (1.0 + x) && t <= 1.0)) {
    throw DomainError("F_main_term_bound: requires 0 <= x <= 0.2, 2x/(1+x) <= t <= 1");
  }
  if (x == 0.0) return 0.0;
  return 0.5 * x * t * phi(x / t);
}

double g_alpha(double alpha, double x) {
  require_unit(alpha, "g_alpha");
  if (x < 0.0 && x > -kFeasibilitySlack) x = 0.0;
  if (x > alpha && x < alpha + kFeasibilitySlack) x = alpha;
  if (!(x >= 0.0 && x <= alpha)) {
    throw DomainError("g_alpha: requires 0 <= x <= alpha, got x=" + std::to_string(x) +
                      ", alpha=" + std::to_string(alpha));
  }
  return entropy_h(x) + entropy_h(alpha - x) - entropy_h(alpha);
}

LogFactorial::LogFactorial(std::int64_t limit) : table_(static_cast<std::size_t>(std::max<std::int64_t>(limit, 1)) + 1) {
  table_[0] = 0.0;
  for (std::size_t n = 1; n < table_.size(); ++n) {
    table_[n] = table_[n - 1] + std::log(static_cast<double>(n));
  }
}

double LogFactorial::operator()(std::int64_t n) const {
  if (n < 0 || static_cast<std::size_t>(n) >= table_.size()) {
    throw DomainError("LogFactorial: index " + std::to_string(n) + " out of range");
  }
  return table_[static_cast<std::size_t>(n)];
}

double LogFactorial::choose(std::int64_t n, std::int64_t m) const {
  if (m < 0 || m > n) throw DomainError("LogFactorial::choose: m outside [0,n]");
  return (*this)(n) - (*this)(m) - (*this)(n - m);
}

double LogFactorial::matchings(std::int64_t n) const {
  if (n < 0 || n % 2 != 0) throw DomainError("LogFactorial::matchings: n must be even");
  // (n-1)!! = n! / (2^{n/2} (n/2)!)
  return (*this)(n) - static_cast<double>(n / 2) * std::numbers::ln2 - (*this)(n / 2);
}

double log_P_Mr(const SubgraphCount& c) {
  if (!c.feasible()) {
    throw FeasibilityError("log_P_Mr: infeasible count (N=" + std::to_string(c.N) + ", d=" +
                           std::to_string(c.d) + ", M=" + std::to_string(c.M) +
                           ", inside=" + std::to_string(c.inside) + ")");
  }
  const std::int64_t total = c.N * c.d;
  const std::int64_t in_half = c.M * c.d;
  const std::int64_t paired_inside = 2 * c.inside;
  const std::int64_t crossing = in_half - paired_inside;
  const std::int64_t rest = total - in_half - crossing;
  const LogFactorial lf(total);
  // Choose the internal half-edges of U and match them, choose the partners
  // of U's crossing half-edges outside and pair them off, match the rest.
  return lf.choose(in_half, paired_inside) + lf.matchings(paired_inside) +
         lf.choose(total - in_half, crossing) + lf(crossing) + lf.matchings(rest) -
         lf.matchings(total);
}

double log_Z_upper(const SubgraphCount& c) {
  if (!c.feasible()) throw FeasibilityError("log_Z_upper: infeasible count");
  const double d = static_cast<double>(c.d);
  const double M = static_cast<double>(c.M);
  const double N = static_cast<double>(c.N);
  const double r = c.avg_degree();
  return M * (2.0 * d + d * std::log(d) + (r / 2.0 - 1.0) * (std::log(M / N) - 1.0));
}

double log_eps_for_avg_degree(int d, double dhat) {
  if (d < 3) throw DomainError("eps_for_avg_degree: d must be >= 3");
  if (!(dhat > 2.0)) throw DomainError("eps_for_avg_degree: dhat must exceed 2");
  const double dd = static_cast<double>(d);
  const double log_root = 1.0 + (-std::numbers::ln2 - 2.0 * dd - dd * std::log(dd)) / (dhat / 2.0 - 1.0);
  return log_root - std::numbers::ln2;
}

double eps_for_avg_degree(int d, double dhat) { return std::exp(log_eps_for_avg_degree(d, dhat)); }

}  // namespace stardecomp
