#include "stardecomp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "stardecomp/error.hpp"
#include "stardecomp/rng.hpp"

namespace stardecomp {
namespace {

constexpr int kEnumerationCap = 12;

void require_even_half_edges(int N, int d) {
  if (N < 1 || d < 1) throw DomainError("graph: N and d must be positive");
  if ((static_cast<std::int64_t>(N) * d) % 2 != 0) {
    throw DivisibilityError("graph: N*d = " + std::to_string(static_cast<std::int64_t>(N) * d) +
                            " is odd");
  }
}

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

MultiGraph::MultiGraph(int N, int d, std::vector<std::pair<int, int>> pairing)
    : N_(N), d_(d), pairing_(std::move(pairing)) {
  require_even_half_edges(N, d);
  const std::size_t halves = static_cast<std::size_t>(N) * d;
  if (pairing_.size() * 2 != halves) throw DomainError("MultiGraph: pairing has wrong size");
  std::vector<bool> seen(halves, false);
  for (const auto& [a, b] : pairing_) {
    for (int h : {a, b}) {
      if (h < 0 || static_cast<std::size_t>(h) >= halves || seen[static_cast<std::size_t>(h)]) {
        throw DomainError("MultiGraph: half-edge " + std::to_string(h) + " invalid or repeated");
      }
      seen[static_cast<std::size_t>(h)] = true;
    }
  }
}

std::vector<Edge> MultiGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(pairing_.size());
  for (const auto& [a, b] : pairing_) {
    const int u = vertex_of(a);
    const int v = vertex_of(b);
    out.push_back({std::min(u, v), std::max(u, v)});
  }
  return out;
}

bool MultiGraph::is_simple() const {
  std::vector<Edge> e = edges();
  if (std::any_of(e.begin(), e.end(), [](const Edge& x) { return x.u == x.v; })) return false;
  std::sort(e.begin(), e.end());
  return std::adjacent_find(e.begin(), e.end()) == e.end();
}

std::int64_t MultiGraph::loop_count() const {
  std::int64_t loops = 0;
  for (const auto& [a, b] : pairing_) loops += vertex_of(a) == vertex_of(b);
  return loops;
}

SimpleGraph::SimpleGraph(int N, int d, std::vector<Edge> edges) : N_(N), d_(d), edges_(std::move(edges)) {
  if (N < 1 || d < 0) throw DomainError("SimpleGraph: N must be positive and d non-negative");
  std::vector<int> deg(static_cast<std::size_t>(N), 0);
  for (auto& e : edges_) {
    if (e.u < 0 || e.u >= N || e.v < 0 || e.v >= N) {
      throw RegularityError("SimpleGraph: vertex id out of range", 0);
    }
    if (e.u == e.v) throw RegularityError("SimpleGraph: loop at vertex " + std::to_string(e.u + 1), e.u + 1);
    if (e.u > e.v) std::swap(e.u, e.v);
    ++deg[static_cast<std::size_t>(e.u)];
    ++deg[static_cast<std::size_t>(e.v)];
  }
  std::sort(edges_.begin(), edges_.end());
  if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end()) {
    throw RegularityError("SimpleGraph: parallel edge " + std::to_string(dup->u + 1) + " " +
                              std::to_string(dup->v + 1),
                          dup->u + 1);
  }
  for (int v = 0; v < N; ++v) {
    if (deg[static_cast<std::size_t>(v)] != d) {
      throw RegularityError("SimpleGraph: vertex " + std::to_string(v + 1) + " has degree " +
                                std::to_string(deg[static_cast<std::size_t>(v)]) + ", expected " +
                                std::to_string(d),
                            v + 1);
    }
  }
  incident_offsets_.assign(static_cast<std::size_t>(N) + 1, 0);
  for (int v = 0; v < N; ++v) incident_offsets_[static_cast<std::size_t>(v) + 1] = incident_offsets_[static_cast<std::size_t>(v)] + d;
  incident_.assign(edges_.size() * 2, 0);
  std::vector<int> fill(incident_offsets_.begin(), incident_offsets_.end() - 1);
  for (std::size_t id = 0; id < edges_.size(); ++id) {
    incident_[static_cast<std::size_t>(fill[static_cast<std::size_t>(edges_[id].u)]++)] = static_cast<int>(id);
    incident_[static_cast<std::size_t>(fill[static_cast<std::size_t>(edges_[id].v)]++)] = static_cast<int>(id);
  }
}

SimpleGraph SimpleGraph::from_multigraph(const MultiGraph& g) {
  return SimpleGraph(g.num_vertices(), g.degree(), g.edges());
}

std::span<const int> SimpleGraph::incident(int v) const {
  const auto lo = static_cast<std::size_t>(incident_offsets_.at(static_cast<std::size_t>(v)));
  const auto hi = static_cast<std::size_t>(incident_offsets_.at(static_cast<std::size_t>(v) + 1));
  return std::span<const int>(incident_).subspan(lo, hi - lo);
}

int SimpleGraph::other_end(int edge_id, int v) const {
  const Edge& e = edge(edge_id);
  if (e.u == v) return e.v;
  if (e.v == v) return e.u;
  throw DomainError("SimpleGraph::other_end: edge not incident to vertex");
}

bool SimpleGraph::adjacent(int u, int v) const {
  const Edge key{std::min(u, v), std::max(u, v)};
  return std::binary_search(edges_.begin(), edges_.end(), key);
}

VertexSet::VertexSet(int N, std::vector<int> members) : N_(N), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
    throw DomainError("VertexSet: repeated vertex");
  }
  if (!members_.empty() && (members_.front() < 0 || members_.back() >= N)) {
    throw DomainError("VertexSet: vertex id out of range");
  }
}

VertexSet VertexSet::all(int N) {
  std::vector<int> m(static_cast<std::size_t>(N));
  for (int v = 0; v < N; ++v) m[static_cast<std::size_t>(v)] = v;
  return VertexSet(N, std::move(m));
}

VertexSet VertexSet::from_mask(int N, std::uint64_t mask) {
  std::vector<int> m;
  for (int v = 0; v < N; ++v) {
    if ((mask >> v) & 1U) m.push_back(v);
  }
  return VertexSet(N, std::move(m));
}

bool VertexSet::contains(int v) const { return std::binary_search(members_.begin(), members_.end(), v); }

std::vector<bool> VertexSet::indicator() const {
  std::vector<bool> in(static_cast<std::size_t>(N_), false);
  for (int v : members_) in[static_cast<std::size_t>(v)] = true;
  return in;
}

VertexSet VertexSet::complement() const {
  const auto in = indicator();
  std::vector<int> m;
  for (int v = 0; v < N_; ++v) {
    if (!in[static_cast<std::size_t>(v)]) m.push_back(v);
  }
  return VertexSet(N_, std::move(m));
}

MultiGraph gen_configuration(int N, int d, std::uint64_t seed) {
  require_even_half_edges(N, d);
  std::vector<int> halves(static_cast<std::size_t>(N) * d);
  for (std::size_t i = 0; i < halves.size(); ++i) halves[i] = static_cast<int>(i);
  Rng rng(seed);
  rng.shuffle(halves);
  std::vector<std::pair<int, int>> pairing;
  pairing.reserve(halves.size() / 2);
  for (std::size_t i = 0; i < halves.size(); i += 2) {
    pairing.emplace_back(std::min(halves[i], halves[i + 1]), std::max(halves[i], halves[i + 1]));
  }
  std::sort(pairing.begin(), pairing.end());
  return MultiGraph(N, d, std::move(pairing));
}

SimpleSample reject_to_simple(int N, int d, std::uint64_t seed, std::int64_t max_tries) {
  require_even_half_edges(N, d);
  if (N <= d) throw DomainError("reject_to_simple: need N > d");
  for (std::int64_t attempt = 0; attempt < max_tries; ++attempt) {
    MultiGraph g = gen_configuration(N, d, derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    if (g.is_simple()) return {SimpleGraph::from_multigraph(g), attempt + 1};
  }
  throw ExhaustionError("reject_to_simple: no simple graph after " + std::to_string(max_tries) +
                            " attempts",
                        max_tries);
}

SimpleSample steger_wormald(int N, int d, std::uint64_t seed, std::int64_t max_tries) {
  require_even_half_edges(N, d);
  if (N <= d) throw DomainError("steger_wormald: need N > d");
  for (std::int64_t attempt = 0; attempt < max_tries; ++attempt) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    std::set<Edge> edges;
    std::vector<int> stubs;
    stubs.reserve(static_cast<std::size_t>(N) * d);
    for (int v = 0; v < N; ++v) stubs.insert(stubs.end(), static_cast<std::size_t>(d), v);
    bool stuck = false;
    while (!stubs.empty()) {
      rng.shuffle(stubs);
      std::map<int, int> leftover;
      for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
        const int u = std::min(stubs[i], stubs[i + 1]);
        const int v = std::max(stubs[i], stubs[i + 1]);
        if (u != v && !edges.contains({u, v})) {
          edges.insert({u, v});
        } else {
          ++leftover[u];
          ++leftover[v];
        }
      }
      // Some pair of distinct, non-adjacent leftover vertices must exist.
      bool suitable = leftover.empty();
      for (auto a = leftover.begin(); a != leftover.end() && !suitable; ++a) {
        for (auto b = std::next(a); b != leftover.end(); ++b) {
          if (!edges.contains({a->first, b->first})) {
            suitable = true;
            break;
          }
        }
      }
      if (!suitable) {
        stuck = true;
        break;
      }
      stubs.clear();
      for (const auto& [v, count] : leftover) stubs.insert(stubs.end(), static_cast<std::size_t>(count), v);
    }
    if (!stuck) return {SimpleGraph(N, d, std::vector<Edge>(edges.begin(), edges.end())), attempt + 1};
  }
  throw ExhaustionError("steger_wormald: stuck in every one of " + std::to_string(max_tries) +
                            " attempts",
                        max_tries);
}

SimpleSample sample_simple(int N, int d, std::uint64_t seed, SamplerMode mode, std::int64_t max_tries) {
  if (mode == SamplerMode::automatic) {
    const double acceptance = std::exp(-(static_cast<double>(d) * d - 1.0) / 4.0);
    mode = acceptance >= 1e-3 ? SamplerMode::rejection : SamplerMode::steger_wormald;
  }
  return mode == SamplerMode::rejection ? reject_to_simple(N, d, seed, max_tries)
                                        : steger_wormald(N, d, seed, max_tries);
}

std::int64_t edges_within(const MultiGraph& g, const VertexSet& U) {
  const auto in = U.indicator();
  std::int64_t count = 0;
  for (const auto& [a, b] : g.pairing()) {
    count += in[static_cast<std::size_t>(g.vertex_of(a))] && in[static_cast<std::size_t>(g.vertex_of(b))];
  }
  return count;
}

std::int64_t edges_within(const SimpleGraph& g, const VertexSet& U) {
  const auto in = U.indicator();
  std::int64_t count = 0;
  for (const Edge& e : g.edges()) count += in[static_cast<std::size_t>(e.u)] && in[static_cast<std::size_t>(e.v)];
  return count;
}

std::int64_t edges_between(const MultiGraph& g, const VertexSet& U) {
  const auto in = U.indicator();
  std::int64_t count = 0;
  for (const auto& [a, b] : g.pairing()) {
    count += in[static_cast<std::size_t>(g.vertex_of(a))] != in[static_cast<std::size_t>(g.vertex_of(b))];
  }
  return count;
}

std::int64_t edges_between(const SimpleGraph& g, const VertexSet& U) {
  const auto in = U.indicator();
  std::int64_t count = 0;
  for (const Edge& e : g.edges()) count += in[static_cast<std::size_t>(e.u)] != in[static_cast<std::size_t>(e.v)];
  return count;
}

void for_each_pairing(int N, int d, const std::function<void(const MultiGraph&)>& visit) {
  require_even_half_edges(N, d);
  const int total = N * d;
  if (total > kEnumerationCap) {
    throw SizeError("for_each_pairing: N*d = " + std::to_string(total) + " exceeds cap " +
                    std::to_string(kEnumerationCap));
  }
  std::vector<bool> used(static_cast<std::size_t>(total), false);
  std::vector<std::pair<int, int>> pairing;
  pairing.reserve(static_cast<std::size_t>(total / 2));
  std::function<void()> recurse = [&] {
    int first = 0;
    while (first < total && used[static_cast<std::size_t>(first)]) ++first;
    if (first == total) {
      visit(MultiGraph(N, d, pairing));
      return;
    }
    used[static_cast<std::size_t>(first)] = true;
    for (int partner = first + 1; partner < total; ++partner) {
      if (used[static_cast<std::size_t>(partner)]) continue;
      used[static_cast<std::size_t>(partner)] = true;
      pairing.emplace_back(first, partner);
      recurse();
      pairing.pop_back();
      used[static_cast<std::size_t>(partner)] = false;
    }
    used[static_cast<std::size_t>(first)] = false;
  };
  recurse();
}

std::int64_t count_matchings(std::int64_t n) {
  if (n < 0 || n % 2 != 0) throw DomainError("count_matchings: n must be even and non-negative");
  std::int64_t out = 1;
  for (std::int64_t odd = n - 1; odd > 1; odd -= 2) out *= odd;
  return out;
}

SimpleGraph parse_graph(std::istream& in) {
  std::string raw;
  int line_no = 0;
  int N = -1;
  int d = -1;
  std::vector<Edge> edges;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = strip_comment(raw);
    if (blank(line)) continue;
    std::istringstream fields(line);
    long long a = 0;
    long long b = 0;
    std::string extra;
    if (!(fields >> a >> b) || (fields >> extra)) {
      throw ParseError("expected two integers, got '" + raw + "'", line_no);
    }
    if (N < 0) {
      if (a < 1 || b < 0) throw ParseError("header needs N >= 1 and d >= 0", line_no);
      N = static_cast<int>(a);
      d = static_cast<int>(b);
      continue;
    }
    if (a < 1 || a > N || b < 1 || b > N) throw ParseError("vertex id outside 1.." + std::to_string(N), line_no);
    if (a == b) throw ParseError("loop edge", line_no);
    edges.push_back({static_cast<int>(a) - 1, static_cast<int>(b) - 1});
  }
  if (N < 0) throw ParseError("missing 'N d' header", line_no);
  return SimpleGraph(N, d, std::move(edges));
}

SimpleGraph read_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open graph file '" + path + "'");
  return parse_graph(in);
}

void write_graph(std::ostream& out, const SimpleGraph& g) {
  out << g.num_vertices() << ' ' << g.degree() << '\n';
  for (const Edge& e : g.edges()) out << e.u + 1 << ' ' << e.v + 1 << '\n';
}

void write_graph(const std::string& path, const SimpleGraph& g) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write graph file '" + path + "'");
  write_graph(out, g);
}

VertexSet parse_vertex_set(std::istream& in, int N) {
  std::string raw;
  int line_no = 0;
  std::vector<int> members;
  while (std::getline(in, raw)) {
    ++line_no;
    std::istringstream fields(strip_comment(raw));
    std::string token;
    while (fields >> token) {
      try {
        std::size_t used = 0;
        const int v = std::stoi(token, &used);
        if (used != token.size() || v < 1 || v > N) throw ParseError("bad vertex id '" + token + "'", line_no);
        members.push_back(v - 1);
      } catch (const std::logic_error&) {
        throw ParseError("bad vertex id '" + token + "'", line_no);
      }
    }
  }
  return VertexSet(N, std::move(members));
}

}  // namespace stardecomp
