#ifndef IRR_TESTS_FIXTURES_HPP
#define IRR_TESTS_FIXTURES_HPP

#include <initializer_list>
#include <vector>

#include "irr/timetable.hpp"

namespace irr::testing {

struct G1 {  // 1-based (round, home, away) literal, as printed in schedules
  int round, home, away;
};

inline Timetable make_timetable(int n, int r, std::initializer_list<G1> games) {
  std::vector<Game> zero;
  zero.reserve(games.size());
  for (const G1& g : games) zero.push_back({g.round - 1, g.home - 1, g.away - 1});
  return Timetable::from_games(n, r, zero);
}

// The running n=8, r=5 example timetable used throughout the unit tests.
inline Timetable make_fix8() {
  return make_timetable(8, 5,
                        {{1, 3, 1}, {1, 7, 2}, {1, 8, 6}, {1, 4, 5},
                         {2, 4, 3}, {2, 2, 1}, {2, 8, 7}, {2, 5, 6},
                         {3, 3, 2}, {3, 1, 4}, {3, 5, 8}, {3, 6, 7},
                         {4, 7, 3}, {4, 2, 5}, {4, 1, 8}, {4, 6, 4},
                         {5, 1, 6}, {5, 2, 8}, {5, 5, 3}, {5, 7, 4}});
}

// n=8, r=5 fixture where, in round 2, all even teams host and all odd teams
// travel, and every unscheduled pair has equal parity. Round 2's auxiliary
// bipartite digraph therefore has no uncolored arcs and no balanced
// alternating cycle exists for s = R2.
inline Timetable make_parity8() {
  return make_timetable(8, 5,
                        {{1, 4, 1}, {1, 7, 6}, {1, 3, 2}, {1, 8, 5},
                         {2, 2, 1}, {2, 4, 3}, {2, 6, 5}, {2, 8, 7},
                         {3, 6, 4}, {3, 1, 7}, {3, 5, 3}, {3, 2, 8},
                         {4, 1, 8}, {4, 7, 2}, {4, 5, 4}, {4, 3, 6},
                         {5, 6, 1}, {5, 4, 7}, {5, 8, 3}, {5, 2, 5}});
}

}  // namespace irr::testing

#endif  // IRR_TESTS_FIXTURES_HPP
