#include <numeric>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "stardecomp/decompose.hpp"
#include "stardecomp/error.hpp"
#include "stardecomp/maxflow.hpp"
#include "stardecomp/rng.hpp"
#include "support/cubic_graphs.hpp"

using namespace stardecomp;

namespace {

SimpleGraph complete_graph(int n) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) edges.push_back({u, v});
  }
  return SimpleGraph(n, n - 1, edges);
}

SimpleGraph cycle(int n) {
  std::vector<Edge> edges;
  for (int v = 0; v < n; ++v) edges.push_back({std::min(v, (v + 1) % n), std::max(v, (v + 1) % n)});
  return SimpleGraph(n, 2, edges);
}

StarProfile uniform(int N, int j, int k) { return {std::vector<int>(static_cast<std::size_t>(N), j), k}; }

// Random j with sum j k = target, placing stars one at a time.
StarProfile random_profile(int N, int k, std::int64_t target, Rng& rng) {
  StarProfile p{std::vector<int>(static_cast<std::size_t>(N), 0), k};
  for (std::int64_t i = 0; i < target / k; ++i) ++p.j_of[rng.below(static_cast<std::uint64_t>(N))];
  return p;
}

bool feasible(const DecompositionResult& r) { return std::holds_alternative<StarDecomposition>(r); }

void check_witness(const SimpleGraph& g, const StarProfile& p, const Witness& w) {
  CHECK(w.lhs == edges_within(g, w.U));
  CHECK(w.rhs == p.capacity(w.U));
  CHECK(w.lhs > w.rhs);
}

}  // namespace

TEST_CASE("max flow basics") {
  MaxFlow f(4);
  const int a = f.add_arc(0, 1, 3);
  const int b = f.add_arc(0, 2, 2);
  f.add_arc(1, 2, 5);
  f.add_arc(1, 3, 2);
  f.add_arc(2, 3, 3);
  CHECK(f.solve(0, 3) == 5);
  CHECK(f.flow(a) + f.flow(b) == 5);
  const auto reach = f.residual_reachable(0);
  CHECK(reach[0]);
  CHECK_FALSE(reach[3]);
  CHECK_THROWS_AS(f.add_arc(1, 1, 1), DomainError);
  CHECK_THROWS_AS(f.add_arc(0, 1, -1), DomainError);
  CHECK_THROWS_AS(MaxFlow(1), DomainError);
}

TEST_CASE("orientation examples") {
  const SimpleGraph c6 = cycle(6);
  const auto r = orient_with_outdegrees(c6, uniform(6, 1, 1));
  REQUIRE(std::holds_alternative<Orientation>(r));
  CHECK(std::get<Orientation>(r).out_degrees(c6) == std::vector<int>(6, 1));

  const SimpleGraph k5 = complete_graph(5);
  const auto r5 = orient_with_outdegrees(k5, uniform(5, 1, 2));
  REQUIRE(std::holds_alternative<Orientation>(r5));
  CHECK(std::get<Orientation>(r5).out_degrees(k5) == std::vector<int>(5, 2));

  const SimpleGraph k4 = complete_graph(4);
  const auto r4 = orient_with_outdegrees(k4, StarProfile{{1, 1, 0, 0}, 3});
  REQUIRE(std::holds_alternative<Witness>(r4));
  check_witness(k4, StarProfile{{1, 1, 0, 0}, 3}, std::get<Witness>(r4));

  CHECK_THROWS_AS(orient_with_outdegrees(k4, uniform(4, 1, 1)), ProfileError);
  CHECK_THROWS_AS(orient_with_outdegrees(k4, StarProfile{{1, 1, 1}, 2}), ProfileError);
}

TEST_CASE("stars_from_orientation") {
  const SimpleGraph c6 = cycle(6);
  const auto o = std::get<Orientation>(orient_with_outdegrees(c6, uniform(6, 1, 1)));
  const StarDecomposition d6 = stars_from_orientation(c6, o, uniform(6, 1, 1));
  CHECK(d6.stars.size() == 6);
  for (const Star& s : d6.stars) CHECK(s.edges.size() == 1);

  const SimpleGraph k5 = complete_graph(5);
  const auto o5 = std::get<Orientation>(orient_with_outdegrees(k5, uniform(5, 1, 2)));
  CHECK(stars_from_orientation(k5, o5, uniform(5, 1, 2)).stars.size() == 5);

  const SimpleGraph k7 = complete_graph(7);
  const auto r7 = decompose(k7, uniform(7, 1, 3));
  REQUIRE(feasible(r7));
  const auto& d7 = std::get<StarDecomposition>(r7);
  CHECK(d7.stars.size() == 7);
  for (const Star& s : d7.stars) CHECK(std::is_sorted(s.edges.begin(), s.edges.end()));

  CHECK_THROWS_AS(stars_from_orientation(c6, o, uniform(6, 2, 1)), ProfileError);
}

TEST_CASE("decompose and verify") {
  const SimpleGraph k5 = complete_graph(5);
  const StarProfile p = uniform(5, 1, 2);
  const auto r = decompose(k5, p);
  REQUIRE(feasible(r));
  const StarDecomposition D = std::get<StarDecomposition>(r);
  CHECK(verify_decomposition(k5, p, D).ok);

  StarDecomposition dropped = D;
  dropped.stars.pop_back();
  const Verification v1 = verify_decomposition(k5, p, dropped);
  CHECK_FALSE(v1.ok);
  CHECK(v1.violation.find("uncovered") != std::string::npos);

  StarDecomposition moved = D;
  const Edge& e0 = k5.edge(moved.stars[0].edges[0]);
  for (int v = 0; v < 5; ++v) {
    if (v != e0.u && v != e0.v) {
      moved.stars[0].center = v;
      break;
    }
  }
  const Verification v2 = verify_decomposition(k5, p, moved);
  CHECK_FALSE(v2.ok);
  CHECK(v2.violation.find("not incident") != std::string::npos);

  const SimpleGraph k4 = complete_graph(4);
  const StarProfile q{{3, 2, 1, 0}, 1};
  const auto r4 = decompose(k4, q);
  const auto brute = brute_force_condition(k4, q);
  CHECK(feasible(r4) == !brute.has_value());
  if (feasible(r4)) CHECK(verify_decomposition(k4, q, std::get<StarDecomposition>(r4)).ok);
}

TEST_CASE("decompose determinism") {
  const SimpleGraph g = sample_simple(36, 10, 4).graph;
  VertexSet A(36, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20, 21, 22, 23});
  const StarProfile p = balanced_profile(36, 10, 3, A);
  const auto a = decompose(g, p);
  const auto b = decompose(g, p);
  REQUIRE(feasible(a));
  CHECK(std::get<StarDecomposition>(a) == std::get<StarDecomposition>(b));
  CHECK(verify_decomposition(g, p, std::get<StarDecomposition>(a)).ok);
}

TEST_CASE("check_condition_U") {
  const SimpleGraph k4 = complete_graph(4);
  const StarProfile p{{1, 1, 0, 0}, 3};
  const ConditionCheck empty = check_condition_U(k4, p, VertexSet(4, {}));
  CHECK(empty.holds_U);
  CHECK(empty.holds_Uc);
  CHECK(empty.lhs_U == 0);
  const ConditionCheck all = check_condition_U(k4, p, VertexSet::all(4));
  CHECK(all.holds_U == all.holds_Uc);

  Rng rng(99);
  for (int i = 0; i < 10000; ++i) {
    const SimpleGraph g = sample_simple(12, 3, derive_seed(1, static_cast<std::uint64_t>(i % 200))).graph;
    const StarProfile q = random_profile(12, 1 + static_cast<int>(rng.below(2)) * 2, 18, rng);
    std::vector<int> members;
    for (int v = 0; v < 12; ++v) {
      if (rng.below(2)) members.push_back(v);
    }
    const ConditionCheck c = check_condition_U(g, q, VertexSet(12, members));
    CHECK(c.holds_U == c.holds_Uc);
  }
}

TEST_CASE("brute_force_condition") {
  const SimpleGraph c6 = cycle(6);
  CHECK_FALSE(brute_force_condition(c6, uniform(6, 1, 1)).has_value());

  const SimpleGraph k4 = complete_graph(4);
  const StarProfile p{{1, 1, 0, 0}, 3};
  const auto w = brute_force_condition(k4, p);
  REQUIRE(w.has_value());
  CHECK(w->U.size() == 2);
  CHECK(w->U == VertexSet(4, {2, 3}));
  check_witness(k4, p, *w);

  std::vector<Edge> many;
  for (int v = 0; v < 26; ++v) many.push_back({std::min(v, (v + 1) % 26), std::max(v, (v + 1) % 26)});
  CHECK_THROWS_AS(brute_force_condition(SimpleGraph(26, 2, many), uniform(26, 1, 1)), SizeError);
}

TEST_CASE("flow feasibility agrees with brute force on random small graphs") {
  Rng rng(2024);
  int infeasible = 0;
  for (int i = 0; i < 300; ++i) {
    const int N = 2 * (3 + static_cast<int>(rng.below(5)));  // 6..14
    const int d = 3 + static_cast<int>(rng.below(2)) * 2;   // 3 or 5
    if (N <= d) continue;
    const SimpleGraph g = sample_simple(N, d, derive_seed(3, static_cast<std::uint64_t>(i))).graph;
    const std::int64_t E = static_cast<std::int64_t>(g.num_edges());
    const int k = E % 3 == 0 && rng.below(2) ? 3 : 1;
    const StarProfile p = random_profile(N, k, E, rng);
    const auto r = decompose(g, p);
    const auto brute = brute_force_condition(g, p);
    CHECK(feasible(r) == !brute.has_value());
    if (const auto* w = std::get_if<Witness>(&r)) {
      check_witness(g, p, *w);
      ++infeasible;
    } else {
      const auto& D = std::get<StarDecomposition>(r);
      CHECK(verify_decomposition(g, p, D).ok);
    }
    if (brute) check_witness(g, p, *brute);

    // upper-bound form with one spare star somewhere
    StarProfile loose = p;
    ++loose.j_of[rng.below(static_cast<std::uint64_t>(N))];
    const auto rb = orient_with_outdegree_bounds(g, loose);
    const auto bb = brute_force_condition(g, loose);
    CHECK(std::holds_alternative<Orientation>(rb) == !bb.has_value());
    if (const auto* o = std::get_if<Orientation>(&rb)) {
      const auto out = o->out_degrees(g);
      CHECK(std::accumulate(out.begin(), out.end(), std::int64_t{0}) == E);
      for (int v = 0; v < N; ++v) CHECK(out[static_cast<std::size_t>(v)] <= loose.capacity(v));
    }
  }
  CHECK(infeasible > 0);
}

TEST_CASE("orient_with_outdegree_bounds") {
  const SimpleGraph k5 = complete_graph(5);
  const auto r = orient_with_outdegree_bounds(k5, uniform(5, 2, 2));
  CHECK(std::holds_alternative<Orientation>(r));
  CHECK_THROWS_AS(orient_with_outdegree_bounds(k5, uniform(5, 1, 1)), ProfileError);
  // j = ceil(d/k) always works
  const SimpleGraph g = sample_simple(20, 5, 1).graph;
  CHECK(std::holds_alternative<Orientation>(orient_with_outdegree_bounds(g, uniform(20, 3, 2))));
  // equality profile gives the exact orientation
  const StarProfile exact = uniform(5, 1, 2);
  const auto eq = std::get<Orientation>(orient_with_outdegree_bounds(k5, exact));
  CHECK(eq.out_degrees(k5) == std::vector<int>(5, 2));
}

TEST_CASE("balanced_profile") {
  const StarProfile p = balanced_profile(6, 10, 3, VertexSet(6, {0, 1, 2, 3}));
  CHECK(p.j_of == std::vector<int>{2, 2, 2, 2, 1, 1});
  CHECK(p.total() == 30);
  const StarProfile q = balanced_profile(7, 6, 3, VertexSet(7, {}));
  CHECK(q.j_of == std::vector<int>(7, 1));
  CHECK_THROWS_AS(balanced_profile(6, 10, 3, VertexSet(6, {0, 1, 2})), DivisibilityError);
  CHECK_THROWS_AS(balanced_profile(7, 99, 48, VertexSet(7, {})), DivisibilityError);
  CHECK_THROWS_AS(balanced_profile(5, 6, 3, VertexSet(5, {0})), DivisibilityError);
}

TEST_CASE("serialization round trips") {
  const SimpleGraph k5 = complete_graph(5);
  const StarDecomposition D = std::get<StarDecomposition>(decompose(k5, uniform(5, 1, 2)));
  std::stringstream ss;
  write_decomposition(ss, D);
  CHECK(parse_decomposition(ss) == D);

  std::istringstream bad("1: 1 2\n2 3 4\n");
  try {
    parse_decomposition(bad);
    FAIL("expected parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }

  const Witness w{VertexSet(4, {2, 3}), 1, 0};
  const auto j = nlohmann::json::parse(to_json(w));
  CHECK(j["U"] == nlohmann::json::array({3, 4}));
  CHECK(j["lhs"] == 1);
  CHECK(j["rhs"] == 0);

  std::istringstream prof("# j\n1 2\n0 1\n");
  const StarProfile p = parse_profile(prof, 4, 2);
  CHECK(p.j_of == std::vector<int>{1, 2, 0, 1});
  std::istringstream short_prof("1 2\n");
  CHECK_THROWS_AS(parse_profile(short_prof, 4, 2), ParseError);
}

TEST_CASE("cubic graphs: flow agrees with brute force for every class") {
  Rng rng(7);
  for (int N = 4; N <= 8; N += 2) {
    for (const SimpleGraph& g : testing::all_cubic_graphs(N)) {
      const std::int64_t E = static_cast<std::int64_t>(g.num_edges());
      for (int i = 0; i < 5; ++i) {
        const StarProfile p = random_profile(N, 1, E, rng);
        CHECK(feasible(decompose(g, p)) == !brute_force_condition(g, p).has_value());
      }
    }
  }
}
