#include "stardecomp/conditions.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>

#include "json.hpp"

#include "detail/parallel.hpp"
#include "stardecomp/error.hpp"
#include "stardecomp/numerics.hpp"

namespace stardecomp {
namespace {

constexpr double kDecisionMargin = 1e-9;
constexpr double kInconclusiveBand = 1e-9;
constexpr double kRegionSlack = 1e-12;
constexpr int kBisectionCap = 200;
constexpr double kBisectionTol = 1e-12;

using HighPrecision = boost::multiprecision::cpp_bin_float_50;

void require_single_star_regime(const StarParams& p, const char* what) {
  if (p.s != 1) {
    throw RegimeError(std::string(what) + ": requires s = 1 (d = 2k + r), got s = " +
                      std::to_string(p.s));
  }
}

// F_d(x0, t0) for the strong condition in 50-digit arithmetic, with x0 and t0
// rebuilt from the integers.
HighPrecision strong_margin_high_precision(const StarParams& p) {
  const HighPrecision x0 = HighPrecision(p.r) / HighPrecision(2 * p.k);
  const HighPrecision t0 = HighPrecision(p.d - 2 * p.k + p.r) / HighPrecision(p.d);
  return HighPrecision(p.d) * detail::rate_F_definition(x0, t0) +
         detail::entropy_H_definition(x0);
}

// x (1-t)^2 / (t (1 - (2-t) x)) = 1 - (t-x)/(t (1-(2-t)x)).
double c0_formula(double x, double t0) {
  if (!(x >= 0.0 && x <= t0 && t0 > 0.0 && t0 <= 1.0)) {
    throw DomainError("c0: requires 0 <= x <= t0 <= 1, got x=" + std::to_string(x) +
                      ", t0=" + std::to_string(t0));
  }
  const double denom = t0 * (1.0 - (2.0 - t0) * x);
  if (!(denom > 0.0)) throw DomainError("c0: (2 - t0) x >= 1");
  return x * (1.0 - t0) * (1.0 - t0) / denom;
}

double round_down_one_digit(double v) {
  const double scale = std::pow(10.0, std::floor(std::log10(v)));
  return std::floor(v / scale) * scale;
}

struct CurveScan {
  std::vector<CurveSample> samples;
  double max_value = -std::numeric_limits<double>::infinity();
  double argmax = 0.0;
};

// Samples fn on lo + (hi-lo) i/n for i in [first, n]; refines x10 between
// neighbours of any sample near zero or across a sign change.
template <class Fn>
CurveScan scan_curve(double lo, double hi, std::size_t n, std::size_t first, Fn&& fn) {
  CurveScan out;
  std::vector<double> xs;
  for (std::size_t i = first; i <= n; ++i) {
    xs.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n));
  }
  std::vector<double> ys(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = fn(xs[i]);

  const double near_zero = 10.0 * kInconclusiveBand;
  std::vector<CurveSample> refined;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    refined.push_back({xs[i], ys[i]});
    if (i + 1 == xs.size()) break;
    const bool sign_change = (ys[i] < 0.0) != (ys[i + 1] < 0.0);
    if (sign_change || std::abs(ys[i]) < near_zero || std::abs(ys[i + 1]) < near_zero) {
      for (int j = 1; j < 10; ++j) {
        const double x = xs[i] + (xs[i + 1] - xs[i]) * j / 10.0;
        refined.push_back({x, fn(x)});
      }
    }
  }
  for (const auto& s : refined) {
    if (s.value > out.max_value) {
      out.max_value = s.value;
      out.argmax = s.x;
    }
  }
  out.samples = std::move(refined);
  return out;
}

}  // namespace

Fraction Fraction::make(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw DomainError("Fraction: denominator must be positive");
  const std::int64_t g = std::gcd(num, den);
  return g == 0 ? Fraction{0, 1} : Fraction{num / g, den / g};
}

std::ostream& operator<<(std::ostream& os, const Fraction& f) {
  if (f.den == 1) return os << f.num;
  return os << f.num << '/' << f.den;
}

StarParams star_params(int d, int k) {
  if (k < 2) throw DomainError("star_params: k must be at least 2");
  if (2 * k > d) {
    throw RegimeError("star_params: k = " + std::to_string(k) + " exceeds d/2 for d = " +
                      std::to_string(d));
  }
  StarParams p;
  p.d = d;
  p.k = k;
  p.s = d / (2 * k);
  p.r = d - 2 * p.s * k;
  p.sigma = Fraction::make(d, 2 * k);
  p.beta = Fraction::make(p.r, 2 * k);
  p.alpha1 = Fraction::make(2 * k - p.r, 2 * k);
  p.alpha2 = Fraction::make(p.r, 2 * k);
  return p;
}

StrongResult strong_condition(const StarParams& params) {
  if (params.r == 0) {
    throw DegenerateError("strong_condition: 2k divides d; every d-regular graph decomposes");
  }
  const double x0 = params.alpha2.value();
  const double t0 = static_cast<double>(params.d - 2 * params.k + params.r) / params.d;
  StrongResult out;
  out.margin = rate_Fd({x0, t0}, params.d);
  if (out.margin < -kDecisionMargin) {
    out.holds = true;
  } else if (out.margin < 0.0) {
    const HighPrecision precise = strong_margin_high_precision(params);
    out.high_precision = true;
    out.margin = precise.convert_to<double>();
    out.holds = precise < 0;
  }
  return out;
}

bool strong_condition_or_divisible(int d, int k) {
  const StarParams p = star_params(d, k);
  return p.divisible() || strong_condition(p).holds;
}

ThresholdRow k_sc(int d, bool verify_column) {
  ThresholdRow row;
  row.d = d;
  row.k_sc = d / 2;
  int k = 2;
  for (; k <= d / 2; ++k) {
    if (!strong_condition_or_divisible(d, k)) {
      row.k_sc = k - 1;
      break;
    }
  }
  if (verify_column) {
    for (int above = k + 1; above <= d / 2; ++above) {
      const StarParams p = star_params(d, above);
      if (!p.divisible() && strong_condition(p).holds) row.holds_above.push_back(above);
    }
    row.column_non_monotone = !row.holds_above.empty();
  }
  return row;
}

std::vector<ThresholdRow> k_sc_table(std::span<const int> degrees, unsigned threads,
                                     bool verify_column) {
  std::vector<ThresholdRow> rows(degrees.size());
  detail::parallel_for(degrees.size(), threads,
               [&](std::size_t i) { rows[i] = k_sc(degrees[i], verify_column); });
  return rows;
}

double gamma_beta(double beta) {
  if (!(beta > 0.0 && beta <= 1.0)) throw DomainError("gamma_beta: requires beta in (0,1]");
  if (beta == 1.0) beta = 1.0 - 1e-9;
  return rate_F({beta, 2.0 * beta / (1.0 + beta)}) / entropy_H(beta);
}

double quarter_case_ratio(double beta) {
  if (!(beta > 0.0 && beta <= 1.0)) {
    throw DomainError("quarter_case_ratio: requires beta in (0,1]");
  }
  if (beta == 1.0) beta = 1.0 - 1e-9;
  return rate_F({beta, (1.0 + 2.0 * beta) / (2.0 + beta)}) / entropy_H(beta);
}

QuarterScan scan_quarter_case(int grid) {
  if (grid < 1) throw DomainError("scan_quarter_case: grid must be positive");
  QuarterScan out;
  out.max_value = -std::numeric_limits<double>::infinity();
  int best = 1;
  for (int i = 1; i <= grid; ++i) {
    const double v = quarter_case_ratio(static_cast<double>(i) / grid);
    if (v > out.max_value) {
      out.max_value = v;
      best = i;
    }
  }
  out.argmax = static_cast<double>(best) / grid;
  const double lo = static_cast<double>(std::max(best - 1, 0)) / grid;
  const double hi = static_cast<double>(std::min(best + 1, grid)) / grid;
  constexpr int kRefine = 1000;
  for (int j = 1; j < kRefine; ++j) {
    const double beta = lo + (hi - lo) * j / kRefine;
    const double v = quarter_case_ratio(beta);
    if (v > out.max_value) {
      out.max_value = v;
      out.argmax = beta;
    }
  }
  out.verdict = out.max_value < -1.0 / 9.0;
  return out;
}

double C0() { return 1.0 / (std::log(2.0) - 0.5); }

double t_value(ProfilePoint p, const StarParams& params) {
  require_single_star_regime(params, "t_value");
  const double sum = p.x1 + p.x2;
  if (!(sum > 0.0)) throw DomainError("t_value: x1 + x2 must be positive");
  return 2.0 * params.r / params.d + 2.0 * params.k * p.x1 / (params.d * sum);
}

double eta(ProfilePoint p, const StarParams& params) {
  double t = t_value(p, params);
  if (t > 1.0 + kRegionSlack) {
    throw DomainError("eta: profile outside region (t-value " + std::to_string(t) + " > 1)");
  }
  t = std::min(t, 1.0);
  return params.d * rate_F({p.x1 + p.x2, t}) + g_alpha(params.alpha1.value(), p.x1) +
         g_alpha(params.alpha2.value(), p.x2);
}

double positive_quadratic_root(double a, double b, double c) {
  if (!(a > 0.0)) throw DomainError("positive_quadratic_root: leading coefficient must be positive");
  if (c == 0.0) return b >= 0.0 ? 0.0 : -b / a;
  if (!(c < 0.0)) throw DomainError("positive_quadratic_root: constant term must be negative");
  const double disc = std::sqrt(b * b - 4.0 * a * c);
  const double q = -0.5 * (b + std::copysign(disc, b));
  return b >= 0.0 ? c / q : q / a;
}

double c0_case1(double x, const StarParams& params) {
  require_single_star_regime(params, "c0_case1");
  return c0_formula(x, 2.0 * params.r / params.d);
}

double ytilde_case1(double x, const StarParams& params) {
  const double a1 = params.alpha1.value();
  const double a2 = params.alpha2.value();
  if (!(x > 0.0 && x <= a2 + kRegionSlack)) throw DomainError("ytilde_case1: requires 0 < x <= alpha_2");
  const double ck = std::pow(c0_case1(x, params), params.k);
  const double y = positive_quadratic_root(1.0 - ck, (a2 - x) + ck * (a1 + x), -ck * a1 * x);
  if (!(y < x)) throw InvariantError("ytilde_case1: root is not below x");
  return y;
}

double bound_case1(double x, const StarParams& params) {
  const double t0 = 2.0 * params.r / params.d;
  const double c0 = c0_case1(x, params);
  const double y = ytilde_case1(x, params);
  const double slope = y > 0.0 ? params.k * std::log(c0) * y : 0.0;
  return params.d * rate_F({x, t0}) + slope + g_alpha(params.alpha1.value(), y) +
         g_alpha(params.alpha2.value(), x - y);
}

double t0_case2(double x, const StarParams& params) {
  require_single_star_regime(params, "t0_case2");
  const double a2 = params.alpha2.value();
  if (!(x > 0.0)) throw DomainError("t0_case2: x must be positive");
  return 2.0 * params.r / params.d + 2.0 * params.k * (x - a2) / (params.d * x);
}

double c0_case2(double x, const StarParams& params) { return c0_formula(x, t0_case2(x, params)); }

double ytilde_case2(double x, const StarParams& params) {
  const double a2 = params.alpha2.value();
  if (!(x >= a2 && x < 1.0)) throw DomainError("ytilde_case2: requires alpha_2 <= x < 1");
  const double ck = std::pow(c0_case2(x, params), params.k);
  const double y = positive_quadratic_root(1.0 - ck, (x - a2) + ck * (1.0 - x + a2), -ck * (1.0 - x) * a2);
  if (y > a2) throw InvariantError("ytilde_case2: root exceeds alpha_2");
  return y;
}

double bound_case2(double x, const StarParams& params) {
  const double a1 = params.alpha1.value();
  const double t0 = t0_case2(x, params);
  const double c0 = c0_case2(x, params);
  const double y = ytilde_case2(x, params);
  const double rest = 1.0 - x - y;
  if (!(rest >= -kRegionSlack && rest <= a1 + kRegionSlack)) {
    throw DomainError("bound_case2: 1 - x - y outside [0, alpha_1]");
  }
  const double slope = y > 0.0 ? params.k * std::log(c0) * y : 0.0;
  return params.d * rate_F({x, std::min(t0, 1.0)}) + slope + g_alpha(a1, rest) +
         g_alpha(params.alpha2.value(), y);
}

double F_d_root(double t, int d) {
  if (!(t > 0.0 && t < 1.0)) throw DomainError("F_d_root: requires t in (0,1)");
  // F/H -> -t/2 as x -> 0+, so F_d < 0 near 0 iff t d > 2.
  if (!(t * d > 2.0)) {
    throw NoGapError("F_d_root: F_d(x, t) >= 0 near x = 0 (t d <= 2)");
  }
  const double inv_d = 1.0 / d;
  double lo = 0.0;
  double hi = t;
  for (int it = 0; it < kBisectionCap && hi - lo > kBisectionTol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (F_ratio({mid, t}) + inv_d < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

XBounds find_x_bounds(const StarParams& params) {
  require_single_star_regime(params, "find_x_bounds");
  if (params.r < 2) {
    throw RegimeError("find_x_bounds: requires r >= 2 (no x_- exists for r = 1)");
  }
  const int d = params.d;
  const double t0 = 2.0 * params.r / d;
  const double t0_prime = 2.0 * params.k / d;
  XBounds b;
  b.x_minus = round_down_one_digit(0.99 * F_d_root(t0, d));
  b.x_plus = 1.0 - 0.99 * F_d_root(t0_prime, d);
  b.margin_minus = rate_Fd({b.x_minus, t0}, d);
  b.margin_plus = rate_Fd({1.0 - b.x_plus, t0_prime}, d);
  if (!(b.margin_minus < 0.0 && b.margin_plus < 0.0)) {
    throw InvariantError("find_x_bounds: post-hoc check of F_d < 0 failed");
  }
  const double a2 = params.alpha2.value();
  if (b.x_minus > a2 || b.x_plus < a2) {
    throw NoGapError("find_x_bounds: x_- > alpha_2 or x_+ < alpha_2 (strong condition should hold)");
  }
  return b;
}

WeakCertificate weak_certificate(const StarParams& params, double grid_step) {
  if (!(grid_step > 0.0 && grid_step <= 1e-3)) {
    throw DomainError("weak_certificate: grid_step must lie in (0, 1e-3]");
  }
  WeakCertificate cert;
  cert.params = params;
  cert.bounds = find_x_bounds(params);
  const double a2 = params.alpha2.value();
  const auto n = static_cast<std::size_t>(std::ceil(1.0 / grid_step));

  CurveScan first = scan_curve(cert.bounds.x_minus, a2, n, 0,
                               [&](double x) { return bound_case1(x, params); });
  CurveScan second = scan_curve(a2, cert.bounds.x_plus, n, 1,
                                [&](double x) { return bound_case2(x, params); });
  cert.case1_curve = std::move(first.samples);
  cert.case2_curve = std::move(second.samples);
  if (first.max_value >= second.max_value) {
    cert.max_bound = first.max_value;
    cert.argmax = first.argmax;
  } else {
    cert.max_bound = second.max_value;
    cert.argmax = second.argmax;
  }
  if (std::abs(cert.max_bound) <= kInconclusiveBand) {
    throw InconclusiveError("weak_certificate: maximum bound " + std::to_string(cert.max_bound) +
                            " within tolerance of 0");
  }
  cert.verdict = cert.max_bound < 0.0 && cert.bounds.margin_minus < 0.0 &&
                 cert.bounds.margin_plus < 0.0;
  return cert;
}

std::string to_json(const ThresholdRow& row) {
  nlohmann::json j{{"d", row.d}, {"k_sc", row.k_sc}};
  if (row.column_non_monotone) j["holds_above"] = row.holds_above;
  return j.dump();
}

std::string to_json(const WeakCertificate& cert, bool include_curves) {
  nlohmann::json j{
      {"d", cert.params.d},
      {"k", cert.params.k},
      {"r", cert.params.r},
      {"x_minus", cert.bounds.x_minus},
      {"x_plus", cert.bounds.x_plus},
      {"margin_minus", cert.bounds.margin_minus},
      {"margin_plus", cert.bounds.margin_plus},
      {"max_bound", cert.max_bound},
      {"argmax", cert.argmax},
      {"verdict", cert.verdict},
  };
  if (include_curves) {
    auto pack = [](const std::vector<CurveSample>& curve) {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& s : curve) arr.push_back({s.x, s.value});
      return arr;
    };
    j["case1_curve"] = pack(cert.case1_curve);
    j["case2_curve"] = pack(cert.case2_curve);
  }
  return j.dump();
}

void write_curve_csv(std::ostream& os, std::span<const CurveSample> samples) {
  os << "x,value\n";
  const auto old = os.precision(17);
  for (const auto& s : samples) os << s.x << ',' << s.value << '\n';
  os.precision(old);
}

}  // namespace stardecomp
