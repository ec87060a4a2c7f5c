#pragma once

// k-star decompositions with prescribed star counts per vertex.
//
// A profile j(v) with sum_v j(v) k = |E| is realizable iff the graph has an
// orientation with out-degree j(v) k at every v, iff e[U] <= sum_{v in U}
// j(v) k for every vertex set U. Orientations come from a max-flow network
// (source -> vertex with capacity j(v)k, vertex -> incident edge-node with
// capacity 1, edge-node -> sink with capacity 1); when the flow falls short,
// the vertices unreachable from the source in the residual graph form a
// violating set U. That witness need not be minimal.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "stardecomp/graph.hpp"

namespace stardecomp {

struct StarProfile {
  std::vector<int> j_of;  ///< stars centred at each vertex
  int k = 0;

  std::int64_t capacity(int v) const { return static_cast<std::int64_t>(j_of.at(static_cast<std::size_t>(v))) * k; }
  /// sum_v j(v) k
  std::int64_t total() const;
  /// sum_{v in U} j(v) k
  std::int64_t capacity(const VertexSet& U) const;
};

/// tail[e] is the endpoint edge e points away from.
struct Orientation {
  std::vector<int> tail;
  std::vector<int> out_degrees(const SimpleGraph& g) const;
};

struct Star {
  int center = 0;
  std::vector<int> edges;  ///< ascending edge ids
  friend bool operator==(const Star&, const Star&) = default;
};

struct StarDecomposition {
  int k = 0;
  std::vector<Star> stars;
  friend bool operator==(const StarDecomposition&, const StarDecomposition&) = default;
};

/// Certificate that no decomposition exists: e[U] = lhs > rhs = sum j k over U.
struct Witness {
  VertexSet U;
  std::int64_t lhs = 0;
  std::int64_t rhs = 0;
};

using OrientationResult = std::variant<Orientation, Witness>;
using DecompositionResult = std::variant<StarDecomposition, Witness>;

/// Orientation with out-degree exactly j(v) k. Throws ProfileError unless
/// sum j(v) k = |E|.
OrientationResult orient_with_outdegrees(const SimpleGraph& g, const StarProfile& profile);

/// Orientation with out-degree at most j(v) k. Throws ProfileError unless
/// sum j(v) k >= |E|.
OrientationResult orient_with_outdegree_bounds(const SimpleGraph& g, const StarProfile& profile);

/// Groups each vertex's outgoing edges, ascending by id, into stars of k.
/// Throws ProfileError when an out-degree differs from j(v) k.
StarDecomposition stars_from_orientation(const SimpleGraph& g, const Orientation& orientation,
                                         const StarProfile& profile);

DecompositionResult decompose(const SimpleGraph& g, const StarProfile& profile);

struct Verification {
  bool ok = false;
  std::string violation;  ///< first violation found, empty when ok
  explicit operator bool() const noexcept { return ok; }
};

Verification verify_decomposition(const SimpleGraph& g, const StarProfile& profile,
                                  const StarDecomposition& decomposition);

struct ConditionCheck {
  bool holds_U = false;   ///< e[U] <= sum_{U} j k
  bool holds_Uc = false;  ///< e[U^c] <= d |U^c| - sum_{U^c} j k
  std::int64_t lhs_U = 0;
  std::int64_t rhs_U = 0;
  std::int64_t lhs_Uc = 0;
  std::int64_t rhs_Uc = 0;
};

ConditionCheck check_condition_U(const SimpleGraph& g, const StarProfile& profile, const VertexSet& U);

/// Checks e[U] <= sum_U j k over all 2^N subsets. Returns the violating U with
/// the smallest bitmask (bit v for vertex v), or nullopt when the condition
/// holds. Throws SizeError for N > 24.
std::optional<Witness> brute_force_condition(const SimpleGraph& g, const StarProfile& profile);

/// j = s + 1 on A and s elsewhere, s = floor(d/2k). Throws DivisibilityError
/// unless 2k | Nd and |A| = rN/2k.
StarProfile balanced_profile(int N, int d, int k, const VertexSet& A);

/// One star per line: "center: e1 ... ek", all ids 1-based.
void write_decomposition(std::ostream& out, const StarDecomposition& decomposition);
/// Star size is taken from the first line; throws ParseError.
StarDecomposition parse_decomposition(std::istream& in);

/// N whitespace-separated star counts j(v) in vertex order.
StarProfile parse_profile(std::istream& in, int N, int k);

std::string to_json(const Witness& witness);

}  // namespace stardecomp
