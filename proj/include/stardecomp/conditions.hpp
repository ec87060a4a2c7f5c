#pragma once

// Strong and weak conditions for balanced k-star decompositions of random
// d-regular graphs: threshold tables k_d^sc and numeric certificates for the
// profile function eta over the region between x_- and x_+.

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace stardecomp {

/// Reduced non-negative fraction.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Fraction make(std::int64_t num, std::int64_t den);
  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

std::ostream& operator<<(std::ostream& os, const Fraction& f);

/// d = 2sk + r with 0 <= r < 2k; sigma = d/2k, beta = {d/2k} = r/2k and the
/// densities alpha_1 = (2k-r)/2k, alpha_2 = r/2k of vertices with s and s+1
/// stars.
struct StarParams {
  int d = 0;
  int k = 0;
  int s = 0;
  int r = 0;
  Fraction sigma;
  Fraction beta;
  Fraction alpha1;
  Fraction alpha2;

  bool divisible() const noexcept { return r == 0; }
};

/// Throws RegimeError for k > d/2 and DomainError for k < 2.
StarParams star_params(int d, int k);

struct StrongResult {
  bool holds = false;
  /// F_d(x0, t0); negative iff the condition holds.
  double margin = 0.0;
  /// Margin fell in [-1e-9, 0) and was re-evaluated in 50-digit arithmetic.
  bool high_precision = false;
};

/// Strong condition F_d(r/2k, (d-2k+r)/d) < 0. Throws DegenerateError if r = 0.
StrongResult strong_condition(const StarParams& params);

/// Strong condition with the 2k | d case counted as holding.
bool strong_condition_or_divisible(int d, int k);

struct ThresholdRow {
  int d = 0;
  /// Largest K such that the strong condition holds for every 2 <= k <= K
  /// (2k | d counts as holding).
  int k_sc = 0;
  /// Verification mode only: some k > k_sc + 1 holds again.
  bool column_non_monotone = false;
  std::vector<int> holds_above;
};

ThresholdRow k_sc(int d, bool verify_column = false);

/// Rows for all `degrees`, computed on `threads` workers; output order follows
/// the input.
std::vector<ThresholdRow> k_sc_table(std::span<const int> degrees, unsigned threads = 1,
                                     bool verify_column = false);

/// Gamma(beta) = F(beta, 2beta/(1+beta)) / H(beta), the s = 1 ratio.
double gamma_beta(double beta);

/// beta |-> F(beta, (1+2beta)/(2+beta)) / H(beta), the k < d/4 worst case.
double quarter_case_ratio(double beta);

struct QuarterScan {
  double max_value = 0.0;
  double argmax = 0.0;
  bool verdict = false;  ///< max_value < -1/9
};

/// Scans quarter_case_ratio on a uniform grid of (0,1] and refines around the
/// maximum. beta = 1 is evaluated at 1 - 1e-9.
QuarterScan scan_quarter_case(int grid);

/// 1 / (log 2 - 1/2).
double C0();

struct ProfilePoint {
  double x1 = 0.0;  ///< density of U n A_1
  double x2 = 0.0;  ///< density of U n A_2
};

/// t(x1,x2) = 2r/d + 2k x1 / (d (x1+x2)); requires s = 1.
double t_value(ProfilePoint p, const StarParams& params);
/// eta(x1,x2) = d F(x1+x2, t) + g(alpha_1, x1) + g(alpha_2, x2).
double eta(ProfilePoint p, const StarParams& params);

/// c_0 = 1 - (t0-x)/(t0 (1-(2-t0)x)) with t0 = 2r/d.
double c0_case1(double x, const StarParams& params);
double ytilde_case1(double x, const StarParams& params);
double bound_case1(double x, const StarParams& params);

/// Shifted t0 = 2r/d + 2k(x - alpha_2)/(dx) used for x > alpha_2.
double t0_case2(double x, const StarParams& params);
double c0_case2(double x, const StarParams& params);
double ytilde_case2(double x, const StarParams& params);
double bound_case2(double x, const StarParams& params);

/// Positive root of a y^2 + b y + c = 0 with a > 0, c < 0, computed without
/// cancellation.
double positive_quadratic_root(double a, double b, double c);

struct XBounds {
  double x_minus = 0.0;
  double x_plus = 0.0;
  double margin_minus = 0.0;  ///< F_d(x_-, 2r/d)
  double margin_plus = 0.0;   ///< F_d(1 - x_+, 2k/d)
};

/// Unique root of x |-> F_d(x, t) on (0, t), by bisection on F/H + 1/d.
/// Throws NoGapError when F_d is non-negative near 0.
double F_d_root(double t, int d);

/// x_- is 0.99 times the root for t0 = 2r/d rounded down to one significant
/// digit; x_+ = 1 - 0.99 * root for t0' = 2k/d. Requires s = 1 and r >= 2.
XBounds find_x_bounds(const StarParams& params);

struct CurveSample {
  double x = 0.0;
  double value = 0.0;
};

struct WeakCertificate {
  StarParams params;
  XBounds bounds;
  std::vector<CurveSample> case1_curve;
  std::vector<CurveSample> case2_curve;
  double max_bound = 0.0;
  double argmax = 0.0;
  bool verdict = false;
};

/// Samples bound_case1 on [x_-, alpha_2] and bound_case2 on (alpha_2, x_+]
/// with step grid_step * (interval length), refining x10 near zero.
/// Throws InconclusiveError when the maximum is within 1e-9 of 0.
WeakCertificate weak_certificate(const StarParams& params, double grid_step = 1e-4);

std::string to_json(const ThresholdRow& row);
std::string to_json(const WeakCertificate& cert, bool include_curves);
void write_curve_csv(std::ostream& os, std::span<const CurveSample> samples);

}  // namespace stardecomp
