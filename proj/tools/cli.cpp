#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "stardecomp/conditions.hpp"
#include "stardecomp/decompose.hpp"
#include "stardecomp/error.hpp"
#include "stardecomp/experiments.hpp"
#include "stardecomp/graph.hpp"
#include "stardecomp/numerics.hpp"

namespace stardecomp::cli {
namespace {

using nlohmann::json;

struct Common {
  std::optional<std::uint64_t> seed;
  std::string output;
  std::string format = "text";
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());

  std::uint64_t resolved_seed() const {
    if (seed) return *seed;
    if (const char* env = std::getenv("STARDECOMP_SEED"); env != nullptr && *env != '\0') {
      try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(env, &used);
        if (used == std::string(env).size()) return v;
      } catch (const std::logic_error&) {
      }
      throw DomainError(std::string("STARDECOMP_SEED is not an unsigned integer: '") + env + "'");
    }
    return 0;
  }
};

// Thrown for flag combinations CLI11 cannot express.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require_format(const Common& c, std::initializer_list<const char*> allowed, const std::string& cmd) {
  for (const char* f : allowed) {
    if (c.format == f) return;
  }
  throw UsageError(cmd + ": --format " + c.format + " is not supported here");
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return in;
}

struct ProfileArgs {
  int k = 0;
  std::string a_path;
  std::string profile_path;
};

void add_profile_options(CLI::App* sub, ProfileArgs& p) {
  sub->add_option("--k", p.k, "Star size")->required()->check(CLI::PositiveNumber);
  auto* a = sub->add_option("--A", p.a_path, "Vertices with s+1 stars (balanced profile)");
  auto* prof = sub->add_option("--profile", p.profile_path, "Explicit star counts j(v), one per vertex");
  a->excludes(prof);
}

StarProfile resolve_profile(const SimpleGraph& g, const ProfileArgs& p) {
  if (!p.profile_path.empty()) {
    auto in = open_input(p.profile_path);
    return parse_profile(in, g.num_vertices(), p.k);
  }
  VertexSet A(g.num_vertices(), {});
  if (!p.a_path.empty()) {
    auto in = open_input(p.a_path);
    A = parse_vertex_set(in, g.num_vertices());
  } else if (g.degree() % (2 * p.k) != 0) {
    throw UsageError("2k does not divide d; pass --A or --profile");
  }
  return balanced_profile(g.num_vertices(), g.degree(), p.k, A);
}

json ids_json(const VertexSet& U) {
  json ids = json::array();
  for (int v : U.members()) ids.push_back(v + 1);
  return ids;
}

json witness_json(const Witness& w) { return {{"U", ids_json(w.U)}, {"lhs", w.lhs}, {"rhs", w.rhs}}; }

void print_witness_text(std::ostream& out, const Witness& w) {
  out << "witness: e[U] = " << w.lhs << " > " << w.rhs << " for U =";
  for (int v : w.U.members()) out << ' ' << v + 1;
  out << '\n';
}

std::string fmt(double v, int precision = 10) {
  std::ostringstream os;
  os << std::setprecision(precision) << v;
  return os.str();
}

std::string fraction_text(const Fraction& f) {
  std::ostringstream os;
  os << f;
  return os.str();
}

// Degrees of the reference threshold table up to d_max: 13..29, then
// multiples of 10, then 500.
std::vector<int> table_degrees(int d_min, int d_max) {
  std::vector<int> out;
  for (int d = d_min; d <= std::min(d_max, 29); ++d) out.push_back(d);
  for (int d = 30; d <= std::min(d_max, 160); d += 10) {
    if (d >= d_min) out.push_back(d);
  }
  if (d_max >= 500 && d_min <= 500) out.push_back(500);
  return out;
}

class Dispatcher {
 public:
  Dispatcher(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args);

 private:
  std::ostream& sink() { return file_ ? *file_ : out_; }
  void open_output() {
    if (!common_.output.empty()) {
      file_ = std::make_unique<std::ofstream>(common_.output);
      if (!*file_) throw std::runtime_error("cannot open '" + common_.output + "' for writing");
    }
  }

  void setup(CLI::App& app);

  std::ostream& out_;
  std::ostream& err_;
  std::unique_ptr<std::ofstream> file_;
  Common common_;
  std::function<int()> action_;
};

void Dispatcher::setup(CLI::App& app) {
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", common_.seed, "RNG seed (default: $STARDECOMP_SEED, else 0)");
  app.add_option("-o,--output", common_.output, "Write output to this file");
  app.add_option("--format", common_.format, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--threads", common_.threads, "Worker threads")->check(CLI::PositiveNumber);

  // gen
  {
    auto* sub = app.add_subcommand("gen", "Sample a simple d-regular graph");
    auto opts = std::make_shared<std::tuple<int, int, std::string>>(0, 0, "automatic");
    sub->add_option("--N", std::get<0>(*opts), "Vertices")->required()->check(CLI::PositiveNumber);
    sub->add_option("--d", std::get<1>(*opts), "Degree")->required()->check(CLI::PositiveNumber);
    sub->add_option("--sampler", std::get<2>(*opts), "Sampler")
        ->check(CLI::IsMember({"automatic", "rejection", "steger-wormald"}));
    sub->callback([this, opts] {
      action_ = [this, opts] {
        require_format(common_, {"text", "json"}, "gen");
        const auto& [N, d, sampler_name] = *opts;
        const SamplerMode mode = sampler_name == "rejection"        ? SamplerMode::rejection
                                 : sampler_name == "steger-wormald" ? SamplerMode::steger_wormald
                                                                    : SamplerMode::automatic;
        const SimpleSample s = sample_simple(N, d, common_.resolved_seed(), mode);
        open_output();
        if (common_.format == "json") {
          json edges = json::array();
          for (const Edge& e : s.graph.edges()) edges.push_back({e.u + 1, e.v + 1});
          sink() << json{{"N", N}, {"d", d}, {"attempts", s.attempts}, {"edges", edges}}.dump() << '\n';
        } else {
          write_graph(sink(), s.graph);
        }
        return kExitOk;
      };
    });
  }

  // decompose
  {
    auto* sub = app.add_subcommand("decompose", "Find a k-star decomposition or a violating set");
    auto graph = std::make_shared<std::string>();
    auto prof = std::make_shared<ProfileArgs>();
    sub->add_option("--graph", *graph, "Graph file")->required();
    add_profile_options(sub, *prof);
    sub->callback([this, graph, prof] {
      action_ = [this, graph, prof] {
        require_format(common_, {"text", "json"}, "decompose");
        const SimpleGraph g = read_graph(*graph);
        const StarProfile profile = resolve_profile(g, *prof);
        const DecompositionResult result = decompose(g, profile);
        open_output();
        if (const auto* w = std::get_if<Witness>(&result)) {
          if (common_.format == "json") {
            sink() << json{{"feasible", false}, {"witness", witness_json(*w)}}.dump() << '\n';
          } else {
            print_witness_text(sink(), *w);
          }
          return kExitInfeasible;
        }
        const auto& stars = std::get<StarDecomposition>(result);
        if (common_.format == "json") {
          json list = json::array();
          for (const Star& s : stars.stars) {
            json edges = json::array();
            for (int e : s.edges) edges.push_back(e + 1);
            list.push_back({{"center", s.center + 1}, {"edges", edges}});
          }
          sink() << json{{"feasible", true}, {"k", stars.k}, {"stars", list}}.dump() << '\n';
        } else {
          write_decomposition(sink(), stars);
        }
        return kExitOk;
      };
    });
  }

  // verify
  {
    auto* sub = app.add_subcommand("verify", "Check a decomposition file against a graph and profile");
    auto graph = std::make_shared<std::string>();
    auto stars = std::make_shared<std::string>();
    auto prof = std::make_shared<ProfileArgs>();
    sub->add_option("--graph", *graph, "Graph file")->required();
    sub->add_option("--stars", *stars, "Decomposition file")->required();
    add_profile_options(sub, *prof);
    sub->callback([this, graph, stars, prof] {
      action_ = [this, graph, stars, prof] {
        require_format(common_, {"text", "json"}, "verify");
        const SimpleGraph g = read_graph(*graph);
        const StarProfile profile = resolve_profile(g, *prof);
        auto in = open_input(*stars);
        StarDecomposition D = parse_decomposition(in);
        if (D.stars.empty()) D.k = profile.k;
        const Verification v = verify_decomposition(g, profile, D);
        open_output();
        if (common_.format == "json") {
          sink() << json{{"ok", v.ok}, {"violation", v.violation}}.dump() << '\n';
        } else {
          sink() << (v.ok ? std::string("ok") : "violation: " + v.violation) << '\n';
        }
        return v.ok ? kExitOk : kExitInfeasible;
      };
    });
  }

  // cond-check
  {
    auto* sub = app.add_subcommand("cond-check", "Evaluate the subset conditions for one U");
    auto graph = std::make_shared<std::string>();
    auto u_path = std::make_shared<std::string>();
    auto prof = std::make_shared<ProfileArgs>();
    sub->add_option("--graph", *graph, "Graph file")->required();
    sub->add_option("--U", *u_path, "Vertex set file")->required();
    add_profile_options(sub, *prof);
    sub->callback([this, graph, u_path, prof] {
      action_ = [this, graph, u_path, prof] {
        require_format(common_, {"text", "json"}, "cond-check");
        const SimpleGraph g = read_graph(*graph);
        const StarProfile profile = resolve_profile(g, *prof);
        auto in = open_input(*u_path);
        const VertexSet U = parse_vertex_set(in, g.num_vertices());
        const ConditionCheck c = check_condition_U(g, profile, U);
        open_output();
        if (common_.format == "json") {
          sink() << json{{"holds_U", c.holds_U},   {"holds_Uc", c.holds_Uc}, {"lhs_U", c.lhs_U},
                         {"rhs_U", c.rhs_U},       {"lhs_Uc", c.lhs_Uc},     {"rhs_Uc", c.rhs_Uc}}
                        .dump()
                 << '\n';
        } else {
          sink() << "U:   e[U] = " << c.lhs_U << " <= " << c.rhs_U << " : " << (c.holds_U ? "holds" : "fails")
                 << '\n'
                 << "U^c: e[U^c] = " << c.lhs_Uc << " <= " << c.rhs_Uc << " : "
                 << (c.holds_Uc ? "holds" : "fails") << '\n';
        }
        return c.holds_U && c.holds_Uc ? kExitOk : kExitInfeasible;
      };
    });
  }

  // brute-check
  {
    auto* sub = app.add_subcommand("brute-check", "Check the subset condition over all 2^N sets");
    auto graph = std::make_shared<std::string>();
    auto prof = std::make_shared<ProfileArgs>();
    sub->add_option("--graph", *graph, "Graph file")->required();
    add_profile_options(sub, *prof);
    sub->callback([this, graph, prof] {
      action_ = [this, graph, prof] {
        require_format(common_, {"text", "json"}, "brute-check");
        const SimpleGraph g = read_graph(*graph);
        const StarProfile profile = resolve_profile(g, *prof);
        const auto w = brute_force_condition(g, profile);
        open_output();
        if (common_.format == "json") {
          json j{{"holds", !w.has_value()}};
          if (w) j["witness"] = witness_json(*w);
          sink() << j.dump() << '\n';
        } else if (w) {
          print_witness_text(sink(), *w);
        } else {
          sink() << "holds\n";
        }
        return w ? kExitInfeasible : kExitOk;
      };
    });
  }

  // strong
  {
    auto* sub = app.add_subcommand("strong", "Evaluate the strong condition at (d, k)");
    auto dk = std::make_shared<std::pair<int, int>>();
    sub->add_option("--d", dk->first, "Degree")->required()->check(CLI::PositiveNumber);
    sub->add_option("--k", dk->second, "Star size")->required()->check(CLI::PositiveNumber);
    sub->callback([this, dk] {
      action_ = [this, dk] {
        require_format(common_, {"text", "json"}, "strong");
        const StarParams p = star_params(dk->first, dk->second);
        open_output();
        if (p.divisible()) {
          if (common_.format == "json") {
            sink() << json{{"d", p.d}, {"k", p.k}, {"divisible", true}, {"holds", true}}.dump() << '\n';
          } else {
            sink() << "d=" << p.d << " k=" << p.k << ": 2k | d, decomposition always exists\n";
          }
          return kExitOk;
        }
        const StrongResult r = strong_condition(p);
        if (common_.format == "json") {
          sink() << json{{"d", p.d},           {"k", p.k},
                         {"divisible", false}, {"holds", r.holds},
                         {"margin", r.margin}, {"high_precision", r.high_precision}}
                        .dump()
                 << '\n';
        } else {
          sink() << "d=" << p.d << " k=" << p.k << " s=" << p.s << " r=" << p.r << " F_d=" << fmt(r.margin, 12)
                 << (r.high_precision ? " (50-digit)" : "") << " : " << (r.holds ? "holds" : "fails") << '\n';
        }
        return r.holds ? kExitOk : kExitInfeasible;
      };
    });
  }

  // ksc
  {
    auto* sub = app.add_subcommand("ksc", "Strong-condition thresholds k_sc(d)");
    struct Opts {
      int d_min = 13;
      int d_max = 160;
      std::vector<int> degrees;
      bool all = false;
      bool verify = false;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--d-min", o->d_min, "Smallest degree")->check(CLI::Range(3, 100000));
    sub->add_option("--d-max", o->d_max, "Largest degree")->check(CLI::Range(3, 100000));
    sub->add_option("--d", o->degrees, "Explicit degrees (overrides the range)");
    sub->add_flag("--all", o->all, "Every degree in range, not just the table layout");
    sub->add_flag("--verify-column", o->verify, "Also scan k above the threshold");
    sub->callback([this, o] {
      action_ = [this, o] {
        std::vector<int> degrees = o->degrees;
        if (degrees.empty()) {
          if (o->d_min > o->d_max) throw UsageError("ksc: --d-min exceeds --d-max");
          if (o->all) {
            for (int d = o->d_min; d <= o->d_max; ++d) degrees.push_back(d);
          } else {
            degrees = table_degrees(o->d_min, o->d_max);
          }
        }
        const auto rows = k_sc_table(degrees, common_.threads, o->verify);
        open_output();
        if (common_.format == "json") {
          json arr = json::array();
          for (const auto& row : rows) arr.push_back(json::parse(to_json(row)));
          sink() << arr.dump() << '\n';
        } else if (common_.format == "csv") {
          sink() << "d,k_sc\n";
          for (const auto& row : rows) sink() << row.d << ',' << row.k_sc << '\n';
        } else {
          sink() << std::setw(6) << "d" << std::setw(8) << "k_sc" << '\n';
          for (const auto& row : rows) {
            sink() << std::setw(6) << row.d << std::setw(8) << row.k_sc;
            if (row.column_non_monotone) {
              sink() << "  (holds again at";
              for (int k : row.holds_above) sink() << ' ' << k;
              sink() << ')';
            }
            sink() << '\n';
          }
        }
        return kExitOk;
      };
    });
  }

  // gamma
  {
    auto* sub = app.add_subcommand("gamma", "Gamma(beta) and the constant C0");
    auto betas = std::make_shared<std::vector<double>>();
    sub->add_option("--beta", *betas, "Points in (0, 1] (default 0.1 0.5)");
    sub->callback([this, betas] {
      action_ = [this, betas] {
        std::vector<double> bs = betas->empty() ? std::vector<double>{0.1, 0.5} : *betas;
        open_output();
        if (common_.format == "json") {
          json arr = json::array();
          for (double b : bs) arr.push_back({{"beta", b}, {"gamma", gamma_beta(b)}});
          sink() << json{{"gamma", arr}, {"C0", C0()}}.dump() << '\n';
        } else if (common_.format == "csv") {
          sink() << "x,value\n";
          for (double b : bs) sink() << fmt(b, 17) << ',' << fmt(gamma_beta(b), 17) << '\n';
        } else {
          for (double b : bs) sink() << "Gamma(" << b << ") = " << fmt(gamma_beta(b)) << '\n';
          sink() << "C0 = 1/(log 2 - 1/2) = " << fmt(C0()) << '\n';
        }
        return kExitOk;
      };
    });
  }

  // quarter-scan
  {
    auto* sub = app.add_subcommand("quarter-scan", "Maximum of the k < d/4 ratio against -1/9");
    auto grid = std::make_shared<int>(10000);
    sub->add_option("--grid", *grid, "Grid points on (0, 1]")->check(CLI::PositiveNumber);
    sub->callback([this, grid] {
      action_ = [this, grid] {
        require_format(common_, {"text", "json"}, "quarter-scan");
        const QuarterScan q = scan_quarter_case(*grid);
        open_output();
        if (common_.format == "json") {
          sink() << json{{"max", q.max_value}, {"argmax", q.argmax}, {"threshold", -1.0 / 9.0}, {"verdict", q.verdict}}
                        .dump()
                 << '\n';
        } else {
          sink() << "max = " << fmt(q.max_value) << " at beta = " << fmt(q.argmax) << " ("
                 << (q.verdict ? "below" : "NOT below") << " -1/9)\n";
        }
        return q.verdict ? kExitOk : kExitInfeasible;
      };
    });
  }

  // weak-cert
  {
    auto* sub = app.add_subcommand("weak-cert", "Numeric certificate for the weak condition");
    struct Opts {
      int d = 0;
      int k = 0;
      double step = 1e-4;
      bool curves = false;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--d", o->d, "Degree")->required()->check(CLI::PositiveNumber);
    sub->add_option("--k", o->k, "Star size")->required()->check(CLI::PositiveNumber);
    sub->add_option("--grid-step", o->step, "Relative grid step, at most 1e-3");
    sub->add_flag("--curves", o->curves, "Include the sampled curves (json) or print them (csv)");
    sub->callback([this, o] {
      action_ = [this, o] {
        const WeakCertificate cert = weak_certificate(star_params(o->d, o->k), o->step);
        open_output();
        if (common_.format == "json") {
          sink() << to_json(cert, o->curves) << '\n';
        } else if (common_.format == "csv") {
          std::vector<CurveSample> all = cert.case1_curve;
          all.insert(all.end(), cert.case2_curve.begin(), cert.case2_curve.end());
          write_curve_csv(sink(), all);
        } else {
          const auto& p = cert.params;
          sink() << "d=" << p.d << " k=" << p.k << " r=" << p.r << " alpha2=" << fraction_text(p.alpha2) << '\n'
                 << "x- = " << fmt(cert.bounds.x_minus) << "  (F_d = " << fmt(cert.bounds.margin_minus) << ")\n"
                 << "x+ = " << fmt(cert.bounds.x_plus) << "  (F_d = " << fmt(cert.bounds.margin_plus) << ")\n"
                 << "max bound = " << fmt(cert.max_bound) << " at x = " << fmt(cert.argmax) << '\n'
                 << "verdict: " << (cert.verdict ? "true" : "false") << '\n';
        }
        return cert.verdict ? kExitOk : kExitInfeasible;
      };
    });
  }

  // bounds-curve
  {
    auto* sub = app.add_subcommand("bounds-curve", "Emit a plotted curve as CSV (x,value)");
    struct Opts {
      std::string kind;
      CurveParams params;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--kind", o->kind, "gamma, quarter or weak-bound")
        ->required()
        ->check(CLI::IsMember({"gamma", "quarter", "quarter-case", "weak-bound"}));
    sub->add_option("--points", o->params.points, "Grid points (gamma, quarter)")->check(CLI::PositiveNumber);
    sub->add_option("--d", o->params.d, "Degree (weak-bound)");
    sub->add_option("--k", o->params.k, "Star size (weak-bound)");
    sub->add_option("--grid-step", o->params.grid_step, "Relative grid step (weak-bound)");
    sub->callback([this, o] {
      action_ = [this, o] {
        require_format(common_, {"text", "csv"}, "bounds-curve");
        const CurveKind kind = parse_curve_kind(o->kind);
        if (kind == CurveKind::weak_bound && (o->params.d == 0 || o->params.k == 0)) {
          throw UsageError("bounds-curve: weak-bound needs --d and --k");
        }
        if (!common_.output.empty()) {
          emit_curves(kind, o->params, common_.output);
        } else {
          write_curve_csv(out_, curve_samples(kind, o->params));
        }
        return kExitOk;
      };
    });
  }

  // pmr
  {
    auto* sub = app.add_subcommand("pmr", "Exact vs empirical probability that U = {1..M} spans `inside` edges");
    struct Opts {
      int N = 0;
      int d = 0;
      int M = 0;
      std::int64_t inside = 0;
      std::int64_t trials = 10000;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--N", o->N, "Vertices")->required()->check(CLI::PositiveNumber);
    sub->add_option("--d", o->d, "Degree")->required()->check(CLI::PositiveNumber);
    sub->add_option("--M", o->M, "Subset size")->required()->check(CLI::PositiveNumber);
    sub->add_option("--inside", o->inside, "Edges inside U")->required()->check(CLI::NonNegativeNumber);
    sub->add_option("--trials", o->trials, "Monte Carlo trials (0 skips sampling)")->check(CLI::NonNegativeNumber);
    sub->callback([this, o] {
      action_ = [this, o] {
        require_format(common_, {"text", "json"}, "pmr");
        const SubgraphCount count{o->N, o->d, o->M, o->inside};
        const double log_exact =
            count.feasible() ? log_P_Mr(count) : -std::numeric_limits<double>::infinity();
        std::optional<EmpiricalP> emp;
        if (o->trials > 0) {
          emp = empirical_P_Mr(o->N, o->d, o->M, o->inside, o->trials, common_.resolved_seed(), common_.threads);
        }
        const double exact = std::exp(log_exact);
        open_output();
        if (common_.format == "json") {
          json j{{"N", o->N}, {"d", o->d}, {"M", o->M}, {"inside", o->inside}, {"feasible", count.feasible()},
                 {"exact", exact}};
          j["log_exact"] = count.feasible() ? json(log_exact) : json(nullptr);
          if (emp) {
            j["trials"] = emp->trials;
            j["estimate"] = emp->estimate;
            j["stderr"] = emp->stderr_;
          }
          sink() << j.dump() << '\n';
        } else {
          sink() << "exact     = " << fmt(exact, 12) << "  (log " << fmt(log_exact, 12) << ")\n";
          if (emp) {
            sink() << "empirical = " << fmt(emp->estimate, 12) << " +- " << fmt(emp->stderr_, 4) << "  ("
                   << emp->trials << " trials)\n";
          }
        }
        return kExitOk;
      };
    });
  }

  // trials
  {
    auto* sub = app.add_subcommand("trials", "Monte Carlo decomposition trials on random regular graphs");
    struct Opts {
      TrialConfig config;
      std::string a_mode = "random";
      std::string sampler = "automatic";
      bool records = false;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--d", o->config.d, "Degree")->required()->check(CLI::PositiveNumber);
    sub->add_option("--k", o->config.k, "Star size")->required()->check(CLI::PositiveNumber);
    sub->add_option("--N", o->config.N, "Vertices")->required()->check(CLI::PositiveNumber);
    sub->add_option("--trials", o->config.trials, "Number of trials")->required()->check(CLI::NonNegativeNumber);
    sub->add_option("--a-mode", o->a_mode, "fixed or random")->check(CLI::IsMember({"fixed", "random"}));
    sub->add_option("--sampler", o->sampler, "Sampler")
        ->check(CLI::IsMember({"automatic", "rejection", "steger-wormald"}));
    sub->add_flag("--records", o->records, "Include per-trial records in JSON");
    sub->callback([this, o] {
      action_ = [this, o] {
        require_format(common_, {"text", "json"}, "trials");
        TrialConfig config = o->config;
        config.a_mode = parse_a_mode(o->a_mode);
        config.sampler = o->sampler == "rejection"        ? SamplerMode::rejection
                         : o->sampler == "steger-wormald" ? SamplerMode::steger_wormald
                                                          : SamplerMode::automatic;
        config.seed = common_.resolved_seed();
        config.threads = common_.threads;
        const ExperimentReport report = run_decomposition_trials(config);
        open_output();
        if (common_.format == "json") {
          sink() << to_json(report, o->records) << '\n';
        } else {
          sink() << "d=" << config.d << " k=" << config.k << " N=" << config.N << " A=" << o->a_mode
                 << " seed=" << config.seed << '\n'
                 << "successes " << report.successes << " / " << report.trials;
          if (report.rate) {
            sink() << "  rate " << fmt(*report.rate, 6) << "  wilson95 [" << fmt(report.wilson->lo, 6) << ", "
                   << fmt(report.wilson->hi, 6) << "]";
          } else {
            sink() << "  rate undefined";
          }
          sink() << '\n';
          for (const TrialRecord& rec : report.records) {
            if (rec.success) continue;
            sink() << "trial " << rec.index << " (seed " << rec.seed << "): witness |U|=" << rec.witness->size
                   << " e[U]=" << rec.witness->lhs << " > " << rec.witness->rhs << '\n';
          }
        }
        return kExitOk;
      };
    });
  }
}

int Dispatcher::run(const std::vector<std::string>& args) {
  CLI::App app{"k-star decompositions of regular graphs and their numeric conditions", "stardecomp"};
  setup(app);
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out_, err_);
    return code == 0 ? kExitOk : kExitUsage;
  }
  try {
    return action_();
  } catch (const UsageError& e) {
    err_ << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err_ << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Dispatcher d(out, err);
  return d.run(args);
}

}  // namespace stardecomp::cli
