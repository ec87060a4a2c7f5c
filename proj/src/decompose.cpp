#include "stardecomp/decompose.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include "json.hpp"
#include <ostream>
#include <sstream>

#include "stardecomp/error.hpp"
#include "stardecomp/maxflow.hpp"

namespace stardecomp {
namespace {

constexpr int kBruteForceCap = 24;

void require_profile_shape(const SimpleGraph& g, const StarProfile& profile) {
  if (profile.k < 1) throw ProfileError("profile: k must be positive");
  if (profile.j_of.size() != static_cast<std::size_t>(g.num_vertices())) {
    throw ProfileError("profile: expected " + std::to_string(g.num_vertices()) + " entries, got " +
                       std::to_string(profile.j_of.size()));
  }
  if (std::any_of(profile.j_of.begin(), profile.j_of.end(), [](int j) { return j < 0; })) {
    throw ProfileError("profile: negative star count");
  }
}

OrientationResult orient(const SimpleGraph& g, const StarProfile& profile) {
  const int N = g.num_vertices();
  const int E = static_cast<int>(g.num_edges());
  const int source = 0;
  const int sink = N + E + 1;
  auto vertex_node = [](int v) { return 1 + v; };
  auto edge_node = [N](int e) { return 1 + N + e; };

  MaxFlow net(N + E + 2);
  for (int v = 0; v < N; ++v) net.add_arc(source, vertex_node(v), profile.capacity(v));
  // assign_arc[e] = {arc from lower endpoint, arc from higher endpoint}
  std::vector<std::pair<int, int>> assign_arc(static_cast<std::size_t>(E), {-1, -1});
  for (int v = 0; v < N; ++v) {
    for (int e : g.incident(v)) {
      const int arc = net.add_arc(vertex_node(v), edge_node(e), 1);
      auto& slot = assign_arc[static_cast<std::size_t>(e)];
      (g.edge(e).u == v ? slot.first : slot.second) = arc;
    }
  }
  for (int e = 0; e < E; ++e) net.add_arc(edge_node(e), sink, 1);

  const std::int64_t flow = net.solve(source, sink);
  if (flow == E) {
    Orientation o;
    o.tail.resize(static_cast<std::size_t>(E));
    for (int e = 0; e < E; ++e) {
      const auto& [from_u, from_v] = assign_arc[static_cast<std::size_t>(e)];
      o.tail[static_cast<std::size_t>(e)] = net.flow(from_u) == 1 ? g.edge(e).u : g.edge(e).v;
    }
    return o;
  }
  // Min cut: c(W) + e[U, W] + e[U] = flow < |E| for U reachable, W the rest,
  // hence e[W] > c(W).
  const auto reachable = net.residual_reachable(source);
  std::vector<int> members;
  for (int v = 0; v < N; ++v) {
    if (!reachable[static_cast<std::size_t>(vertex_node(v))]) members.push_back(v);
  }
  Witness w{VertexSet(N, std::move(members)), 0, 0};
  w.lhs = edges_within(g, w.U);
  w.rhs = profile.capacity(w.U);
  if (w.lhs <= w.rhs) throw InvariantError("orient: extracted cut is not a violating set");
  return w;
}

}  // namespace

std::int64_t StarProfile::total() const {
  std::int64_t sum = 0;
  for (int j : j_of) sum += static_cast<std::int64_t>(j) * k;
  return sum;
}

std::int64_t StarProfile::capacity(const VertexSet& U) const {
  std::int64_t sum = 0;
  for (int v : U.members()) sum += capacity(v);
  return sum;
}

std::vector<int> Orientation::out_degrees(const SimpleGraph& g) const {
  std::vector<int> out(static_cast<std::size_t>(g.num_vertices()), 0);
  for (int t : tail) ++out.at(static_cast<std::size_t>(t));
  return out;
}

OrientationResult orient_with_outdegrees(const SimpleGraph& g, const StarProfile& profile) {
  require_profile_shape(g, profile);
  const auto E = static_cast<std::int64_t>(g.num_edges());
  if (profile.total() != E) {
    throw ProfileError("orient_with_outdegrees: sum j(v) k = " + std::to_string(profile.total()) +
                       " differs from |E| = " + std::to_string(E));
  }
  return orient(g, profile);
}

OrientationResult orient_with_outdegree_bounds(const SimpleGraph& g, const StarProfile& profile) {
  require_profile_shape(g, profile);
  const auto E = static_cast<std::int64_t>(g.num_edges());
  if (profile.total() < E) {
    throw ProfileError("orient_with_outdegree_bounds: sum j(v) k = " + std::to_string(profile.total()) +
                       " is below |E| = " + std::to_string(E));
  }
  return orient(g, profile);
}

StarDecomposition stars_from_orientation(const SimpleGraph& g, const Orientation& orientation,
                                         const StarProfile& profile) {
  require_profile_shape(g, profile);
  if (orientation.tail.size() != g.num_edges()) throw ProfileError("orientation size mismatch");
  const int N = g.num_vertices();
  std::vector<std::vector<int>> outgoing(static_cast<std::size_t>(N));
  for (std::size_t e = 0; e < orientation.tail.size(); ++e) {
    const int t = orientation.tail[e];
    const Edge& edge = g.edge(static_cast<int>(e));
    if (t != edge.u && t != edge.v) throw ProfileError("orientation: tail not incident to edge");
    outgoing[static_cast<std::size_t>(t)].push_back(static_cast<int>(e));
  }
  StarDecomposition out;
  out.k = profile.k;
  for (int v = 0; v < N; ++v) {
    const auto& edges = outgoing[static_cast<std::size_t>(v)];
    if (static_cast<std::int64_t>(edges.size()) != profile.capacity(v)) {
      throw ProfileError("stars_from_orientation: vertex " + std::to_string(v + 1) + " has out-degree " +
                         std::to_string(edges.size()) + ", expected " + std::to_string(profile.capacity(v)));
    }
    for (std::size_t i = 0; i < edges.size(); i += static_cast<std::size_t>(profile.k)) {
      out.stars.push_back({v, std::vector<int>(edges.begin() + static_cast<std::ptrdiff_t>(i),
                                               edges.begin() + static_cast<std::ptrdiff_t>(i) + profile.k)});
    }
  }
  return out;
}

DecompositionResult decompose(const SimpleGraph& g, const StarProfile& profile) {
  OrientationResult oriented = orient_with_outdegrees(g, profile);
  if (auto* w = std::get_if<Witness>(&oriented)) return std::move(*w);
  return stars_from_orientation(g, std::get<Orientation>(oriented), profile);
}

Verification verify_decomposition(const SimpleGraph& g, const StarProfile& profile,
                                  const StarDecomposition& decomposition) {
  auto fail = [](std::string why) { return Verification{false, std::move(why)}; };
  if (profile.j_of.size() != static_cast<std::size_t>(g.num_vertices())) return fail("profile size mismatch");
  if (decomposition.k != profile.k) return fail("star size differs from profile k");
  std::vector<int> covered(g.num_edges(), 0);
  std::vector<int> centred(static_cast<std::size_t>(g.num_vertices()), 0);
  for (std::size_t i = 0; i < decomposition.stars.size(); ++i) {
    const Star& star = decomposition.stars[i];
    const std::string where = "star " + std::to_string(i + 1);
    if (star.center < 0 || star.center >= g.num_vertices()) return fail(where + ": centre out of range");
    if (static_cast<int>(star.edges.size()) != profile.k) {
      return fail(where + ": has " + std::to_string(star.edges.size()) + " edges, expected " +
                  std::to_string(profile.k));
    }
    for (int e : star.edges) {
      if (e < 0 || static_cast<std::size_t>(e) >= g.num_edges()) return fail(where + ": edge id out of range");
      const Edge& edge = g.edge(e);
      if (edge.u != star.center && edge.v != star.center) {
        return fail(where + ": edge " + std::to_string(e + 1) + " not incident to centre " +
                    std::to_string(star.center + 1));
      }
      if (++covered[static_cast<std::size_t>(e)] > 1) return fail("edge " + std::to_string(e + 1) + " used twice");
    }
    ++centred[static_cast<std::size_t>(star.center)];
  }
  for (std::size_t e = 0; e < covered.size(); ++e) {
    if (covered[e] == 0) return fail("edge " + std::to_string(e + 1) + " uncovered");
  }
  for (std::size_t v = 0; v < centred.size(); ++v) {
    if (centred[v] != profile.j_of[v]) {
      return fail("vertex " + std::to_string(v + 1) + " centres " + std::to_string(centred[v]) +
                  " stars, expected " + std::to_string(profile.j_of[v]));
    }
  }
  return {true, {}};
}

ConditionCheck check_condition_U(const SimpleGraph& g, const StarProfile& profile, const VertexSet& U) {
  require_profile_shape(g, profile);
  const VertexSet Uc = U.complement();
  ConditionCheck c;
  c.lhs_U = edges_within(g, U);
  c.rhs_U = profile.capacity(U);
  c.lhs_Uc = edges_within(g, Uc);
  c.rhs_Uc = static_cast<std::int64_t>(g.degree()) * static_cast<std::int64_t>(Uc.size()) - profile.capacity(Uc);
  c.holds_U = c.lhs_U <= c.rhs_U;
  c.holds_Uc = c.lhs_Uc <= c.rhs_Uc;
  return c;
}

std::optional<Witness> brute_force_condition(const SimpleGraph& g, const StarProfile& profile) {
  require_profile_shape(g, profile);
  const int N = g.num_vertices();
  if (N > kBruteForceCap) {
    throw SizeError("brute_force_condition: N = " + std::to_string(N) + " exceeds cap " +
                    std::to_string(kBruteForceCap));
  }
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(N), 0);
  for (const Edge& e : g.edges()) {
    adj[static_cast<std::size_t>(e.u)] |= 1U << e.v;
    adj[static_cast<std::size_t>(e.v)] |= 1U << e.u;
  }
  // Gray-code walk: flipping vertex v changes e[U] by popcount(adj[v] & U).
  const std::uint64_t count = std::uint64_t{1} << N;
  std::uint32_t mask = 0;
  std::int64_t inside = 0;
  std::int64_t cap = 0;
  std::optional<std::uint32_t> first;
  for (std::uint64_t step = 1; step < count; ++step) {
    const int v = std::countr_zero(step);
    const std::uint32_t bit = 1U << v;
    const int touching = std::popcount(adj[static_cast<std::size_t>(v)] & mask);
    if (mask & bit) {
      mask &= ~bit;
      inside -= touching;
      cap -= profile.capacity(v);
    } else {
      mask |= bit;
      inside += touching;
      cap += profile.capacity(v);
    }
    if (inside > cap && (!first || mask < *first)) first = mask;
  }
  if (!first) return std::nullopt;
  Witness w{VertexSet::from_mask(N, *first), 0, 0};
  w.lhs = edges_within(g, w.U);
  w.rhs = profile.capacity(w.U);
  return w;
}

StarProfile balanced_profile(int N, int d, int k, const VertexSet& A) {
  if (k < 1 || d < 1 || N < 1) throw DomainError("balanced_profile: N, d, k must be positive");
  const std::int64_t half_edges = static_cast<std::int64_t>(N) * d;
  if (half_edges % (2 * k) != 0) {
    throw DivisibilityError("balanced_profile: Nd/(2k) = " + std::to_string(half_edges) + "/" +
                            std::to_string(2 * k) + " is not an integer");
  }
  const int s = d / (2 * k);
  const int r = d - 2 * s * k;
  const std::int64_t scaled = static_cast<std::int64_t>(r) * N;
  if (scaled % (2 * k) != 0 || static_cast<std::int64_t>(A.size()) != scaled / (2 * k)) {
    throw DivisibilityError("balanced_profile: |A| = " + std::to_string(A.size()) + " but beta N = " +
                            std::to_string(r) + "*" + std::to_string(N) + "/" + std::to_string(2 * k));
  }
  if (A.universe() != N) throw DomainError("balanced_profile: A has the wrong universe");
  StarProfile p;
  p.k = k;
  p.j_of.assign(static_cast<std::size_t>(N), s);
  for (int v : A.members()) p.j_of[static_cast<std::size_t>(v)] = s + 1;
  return p;
}

void write_decomposition(std::ostream& out, const StarDecomposition& decomposition) {
  for (const Star& star : decomposition.stars) {
    out << star.center + 1 << ':';
    for (int e : star.edges) out << ' ' << e + 1;
    out << '\n';
  }
}

StarDecomposition parse_decomposition(std::istream& in) {
  StarDecomposition out;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = hash == std::string::npos ? raw : raw.substr(0, hash);
    const auto colon = line.find(':');
    if (colon == std::string::npos) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw ParseError("expected 'center: e1 ... ek'", line_no);
    }
    Star star;
    std::istringstream head(line.substr(0, colon));
    long long center = 0;
    std::string extra;
    if (!(head >> center) || (head >> extra) || center < 1) throw ParseError("bad star centre", line_no);
    star.center = static_cast<int>(center) - 1;
    std::istringstream body(line.substr(colon + 1));
    std::string token;
    while (body >> token) {
      try {
        std::size_t used = 0;
        const long long e = std::stoll(token, &used);
        if (used != token.size() || e < 1) throw ParseError("bad edge id '" + token + "'", line_no);
        star.edges.push_back(static_cast<int>(e) - 1);
      } catch (const std::logic_error&) {
        throw ParseError("bad edge id '" + token + "'", line_no);
      }
    }
    if (star.edges.empty()) throw ParseError("star without edges", line_no);
    if (out.k == 0) out.k = static_cast<int>(star.edges.size());
    out.stars.push_back(std::move(star));
  }
  return out;
}

StarProfile parse_profile(std::istream& in, int N, int k) {
  StarProfile p;
  p.k = k;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    std::istringstream fields(hash == std::string::npos ? raw : raw.substr(0, hash));
    std::string token;
    while (fields >> token) {
      try {
        std::size_t used = 0;
        const int j = std::stoi(token, &used);
        if (used != token.size() || j < 0) throw ParseError("bad star count '" + token + "'", line_no);
        p.j_of.push_back(j);
      } catch (const std::logic_error&) {
        throw ParseError("bad star count '" + token + "'", line_no);
      }
    }
  }
  if (p.j_of.size() != static_cast<std::size_t>(N)) {
    throw ParseError("expected " + std::to_string(N) + " star counts, got " + std::to_string(p.j_of.size()),
                     line_no);
  }
  return p;
}

std::string to_json(const Witness& witness) {
  std::vector<int> ids;
  for (int v : witness.U.members()) ids.push_back(v + 1);
  return nlohmann::json{{"U", ids}, {"lhs", witness.lhs}, {"rhs", witness.rhs}}.dump();
}

}  // namespace stardecomp
