#pragma once

#include <optional>
#include <vector>

#include "irr/timetable.hpp"

namespace irr {

// A directed cycle in the match graph: every consecutive pair (v_k, v_{k+1})
// is a colored edge oriented from v_k toward v_{k+1}, wrapping around.
struct BalancedCycle {
  std::vector<int> vertices;
};

// A cycle whose edges alternate between colors q and s. Edge
// (vertices[k], vertices[k+1]) carries q when k is even and s when k is odd.
struct BichromaticCycle {
  std::vector<int> vertices;
  int q = -1;
  int s = -1;
};

// A cycle whose edges alternate between color s and uncolored. Edge
// (vertices[k], vertices[k+1]) carries s when k is even and is uncolored when
// k is odd. balanced is true iff every uncolored edge joins a round-s home
// team to a round-s away team.
struct AlternatingCycle {
  std::vector<int> vertices;
  int s = -1;
  bool balanced = false;
};

// A path w = v_0, ..., v_k = v of colored edges, each oriented from v_i
// toward v_{i+1}.
struct DirectedPath {
  std::vector<int> vertices;
};

enum class PathStrategy { kBreadthFirst, kDepthFirst };

// Random walk over the oriented match graph, truncated at the first repeated
// vertex. Requires r >= 2 and a balanced orientation so that every vertex has
// an outgoing arc; throws NoCycle otherwise.
BalancedCycle find_balanced_cycle(const Timetable& t, Rng& rng);

// Decomposes the q/s edges into vertex-disjoint alternating cycles covering
// every team. Requires q != s.
std::vector<BichromaticCycle> bichromatic_cycles(const Timetable& t, int q, int s);

// Finds a directed path whose reversal strictly lowers the total imbalance,
// or nothing when the orientation is already balanced. kBreadthFirst returns
// a path with the minimum number of arcs over all eligible endpoint pairs;
// kDepthFirst performs a random walk with loop erasure.
std::optional<DirectedPath> find_path_to_repair(const Timetable& t, Rng& rng,
                                                PathStrategy strategy);

// Searches the bipartite auxiliary digraph of round s (home teams vs away
// teams, game arcs away->home, uncolored arcs home->away) for a directed
// cycle, which is exactly a balanced s-alternating cycle. Returns nothing if
// the digraph is acyclic.
std::optional<AlternatingCycle> find_balanced_alternating_cycle(const Timetable& t,
                                                                int s, Rng& rng);

// Labeled depth-first search for an arbitrary s-alternating cycle, balanced
// or not. Uncolored neighbors are visited in an order shuffled with rng.
// Requires r < n - 1 so that every team has an uncolored edge.
AlternatingCycle find_alternating_cycle(const Timetable& t, int s, Rng& rng);

}  // namespace irr
