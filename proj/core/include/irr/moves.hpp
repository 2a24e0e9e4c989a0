#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "irr/cycles.hpp"
#include "irr/timetable.hpp"

namespace irr {

// Record of raw edge writes, applied as they are recorded. Replaying the
// entries backwards restores the original timetable, so a search loop can
// reject a move without copying the whole table.
struct MoveJournal {
  struct Entry {
    int edge;
    std::int16_t old_color;
    std::int8_t old_home_lo;
  };
  std::vector<Entry> entries;

  void set(Timetable& t, int e, int color, std::int8_t home_lo);
  void undo(Timetable& t) const;
  bool empty() const { return entries.empty(); }
};

struct MoveOutcome {
  MoveJournal journal;
  std::vector<int> touched_rounds;
  std::vector<int> touched_teams;
  std::vector<std::pair<int, int>> new_pairings;      // (lo, hi), newly colored
  std::vector<std::pair<int, int>> dropped_pairings;  // (lo, hi), newly uncolored

  void undo(Timetable& t) const { journal.undo(t); }
};

// Six edges around poles i and j: every middle team w is joined to both
// poles. A colorful chordless lantern has all edges colored; an incomplete
// lantern has exactly one uncolored edge at each pole.
struct Lantern {
  enum class Kind { kColorfulChordless, kIncomplete };
  int i = kNoTeam;
  int j = kNoTeam;
  std::vector<int> middles;
  Kind kind = Kind::kColorfulChordless;
  // Incomplete case only: {i,w_i} and {j,w_j} are the uncolored edges,
  // c_i = color({i,w_j}) and c_j = color({j,w_i}).
  int w_i = kNoTeam;
  int w_j = kNoTeam;
  int c_i = kUncolored;
  int c_j = kUncolored;
};

struct RepairStats {
  int reversals = 0;
  // Total imbalance before the first reversal and after every reversal.
  std::vector<long long> delta_trace;
};

// Exchanges all games between rounds q and s, keeping orientations.
MoveOutcome round_swap(Timetable& t, int q, int s);

// Exchanges colors along one q,s-bichromatic cycle chosen uniformly.
MoveOutcome partial_round_swap(Timetable& t, int q, int s, Rng& rng);
// Same, but on a caller-chosen cycle.
MoveOutcome partial_round_swap_cycle(Timetable& t, const BichromaticCycle& cyc);

// Exchanges the identities of teams i and j across the whole timetable.
MoveOutcome team_swap(Timetable& t, int i, int j);

// Reverses every arc of a directed cycle; home and away counts are kept.
MoveOutcome cycle_reversal(Timetable& t, const BalancedCycle& cyc);

// Reverses every arc of a directed path; the old tail gains a home game and
// the old head loses one.
MoveOutcome path_reversal(Timetable& t, const DirectedPath& p);

// Repeats find_path_to_repair + path_reversal until the orientation is
// balanced. bfs_probability picks the breadth-first strategy per step.
RepairStats restore_balance(Timetable& t, Rng& rng, double bfs_probability = 0.9);

// Follows the color chains out of round s between poles i and j. Throws
// DegenerateChain when a chain runs into a pole or the two chains share a
// middle team; callers treat that as "no move available here".
Lantern build_lantern(const Timetable& t, int i, int j, int s);

// Swaps the two colors at every middle of the lantern. On an incomplete
// lantern the two uncolored edges become colored and the two loose ends
// uncolored; pole imbalance is repaired with one reversal of a path between
// the poles. Returns nothing when the lantern is degenerate.
std::optional<MoveOutcome> ipts(Timetable& t, int i, int j, int s, Rng& rng,
                                double bfs_probability = 0.9);

// ipts followed by internal cycle reversals that restore the home-away
// patterns of as many middle teams as possible.
std::optional<MoveOutcome> ipts_cr(Timetable& t, int i, int j, int s, Rng& rng,
                                   double bfs_probability = 0.9);

// Swaps colored for uncolored edges along a balanced s-alternating cycle;
// every team keeps its round-s status. Returns nothing when no balanced
// cycle exists.
std::optional<MoveOutcome> iprs_b(Timetable& t, int s, Rng& rng);

// Swaps colored for uncolored edges along an arbitrary s-alternating cycle,
// orienting same-status edges by lot and repairing the imbalance with path
// reversals.
MoveOutcome iprs_u(Timetable& t, int s, Rng& rng, double bfs_probability = 0.9);

// The same swap on a caller-chosen s-alternating cycle, balanced or not.
// Throws NotACycle when the vertices do not trace an alternating cycle of t.
MoveOutcome iprs_cycle(Timetable& t, const AlternatingCycle& cyc, Rng& rng,
                       double bfs_probability = 0.9);

}  // namespace irr
