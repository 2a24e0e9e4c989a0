#ifndef IRR_TIMETABLE_HPP
#define IRR_TIMETABLE_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "irr/types.hpp"

namespace irr {

// A timetable for n teams (n even) over r rounds (r < n-1), stored as a
// proper r-regular partial edge coloring of K_n plus a home-side orientation:
//   color(e)  = round of edge e, or kUncolored
//   home(e)   = the hosting endpoint, defined iff the edge is colored
// A redundant (team, round) -> opponent table is kept in sync for O(1) lookup.
//
// The class deliberately represents partial / unbalanced states; from_games
// enforces the structural rules (each pair at most once, exactly one game per
// team per round) while home/away balance is only reported, never enforced.
class Timetable {
 public:
  Timetable(int n, int r);

  static Timetable from_games(int n, int r, std::span<const Game> games);

  int n() const { return n_; }
  int r() const { return r_; }
  int num_edges() const { return static_cast<int>(color_.size()); }

  // Index of the unordered pair {i, j} in the dense upper-triangle layout.
  int edge_index(int i, int j) const;
  std::pair<int, int> edge_teams(int e) const;  // (lo, hi)

  int color_of(int i, int j) const { return color_[edge_index(i, j)]; }
  int color_of_edge(int e) const { return color_[e]; }

  // Hosting team of a colored edge; kNoTeam for uncolored edges.
  int home_team(int i, int j) const;
  int home_team_edge(int e) const;

  // Opponent of team i in round s, or kNoTeam if i is idle in s.
  int opponent(int i, int s) const { return opp_[i * r_ + s]; }
  bool plays(int i, int s) const { return opponent(i, s) != kNoTeam; }

  // Requires that i plays in round s.
  HomeStatus home_status(int i, int s) const;
  bool is_home(int i, int s) const { return home_status(i, s) == HomeStatus::kHome; }

  // Checked mutation: schedules `home` vs `away` in round s. Throws
  // DuplicatePairing / RoundClash / RangeError on structural conflicts.
  void set_game(int s, int home, int away);
  // Removes the game on edge {i, j} (no-op error if uncolored).
  void clear_game(int i, int j);
  // Reorients a colored edge so that `team` (an endpoint) hosts.
  void set_home(int i, int j, int team);

  // Unchecked primitives used by the move layer through journals. They keep
  // the opponent table in sync but do not validate schedules.
  void raw_set_color(int e, int c);
  void raw_set_home_lo(int e, std::int8_t home_lo) { home_lo_[e] = home_lo; }
  std::int8_t home_lo_of(int e) const { return home_lo_[e]; }

  bool operator==(const Timetable& other) const;
  std::size_t hash() const;

  // Compact state key over colors (+ orientations unless colors_only); used
  // by the enumeration lab for duplicate detection.
  std::string state_key(bool colors_only) const;

  // Round-by-round grid of "home-away" tokens with 1-based ids.
  std::string to_table_string() const;

 private:
  int n_ = 0;
  int r_ = 0;
  std::vector<std::int16_t> color_;    // edge -> round or kUncolored
  std::vector<std::int8_t> home_lo_;   // edge -> 1 if lower id hosts, 0 if higher, -1 if uncolored
  std::vector<std::int16_t> opp_;      // (team, round) -> opponent or kNoTeam
};

// Pure feasibility report with a witness string per violation.
struct ValidationReport {
  bool c1_ok = true;  // structurally guaranteed by the representation
  bool c2_ok = true;  // one game per team per round
  bool c3_ok = true;  // home/away balance (floor..ceil of r/2 per team)
  std::vector<std::string> violations;
  bool pass() const { return c1_ok && c2_ok && c3_ok; }
};

ValidationReport validate(const Timetable& t);

// Per-team home-minus-away surplus and the aggregate imbalance:
//   delta(v) = home(v) - away(v)
//   total_delta = sum |delta(v)| over teams with |delta(v)| > 0 (r even)
//                 or |delta(v)| > 1 (r odd)
// Zero total_delta is exactly the balance constraint.
struct ImbalanceReport {
  std::vector<int> delta;
  long long total_delta = 0;
  std::vector<int> v_plus;   // delta > 0
  std::vector<int> v_zero;   // delta == 0
  std::vector<int> v_minus;  // delta < 0
  bool balanced() const { return total_delta == 0; }
};

ImbalanceReport imbalance(const Timetable& t);

// 0-based rounds s in [1, r) where team i has the same status as in s-1.
std::vector<int> breaks_of(const Timetable& t, int team);

}  // namespace irr

#endif  // IRR_TIMETABLE_HPP
