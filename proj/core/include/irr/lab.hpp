#ifndef IRR_LAB_HPP
#define IRR_LAB_HPP

#include <array>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "irr/cycles.hpp"
#include "irr/search.hpp"
#include "irr/timetable.hpp"

namespace irr {

enum class EnumMode {
  kColorings,  // one balanced representative per coloring
  kFull,       // every balanced orientation of every coloring
};

struct SolutionSpace {
  int n = 0;
  int r = 0;
  EnumMode mode = EnumMode::kColorings;
  std::vector<Timetable> states;  // deterministic order, duplicate-free
  std::unordered_map<std::string, int> index;

  std::string key_of(const Timetable& t) const;
  int find(const Timetable& t) const;  // -1 when absent
};

// Backtracks over rounds as perfect matchings, skipping repeated pairs, then
// over home assignments within the balance band. n <= 8 and 1 <= r < n-1;
// throws SizeLimitError beyond that or past an internal state cap.
SolutionSpace enumerate_space(int n, int r, EnumMode mode);

// Independent recount with reversed branching; used to cross-check counts.
SolutionSpace enumerate_space_alt(int n, int r, EnumMode mode);

// Exhaustive counterparts of the randomized cycle finders: every simple
// directed cycle of the oriented match graph, and every s-alternating
// cycle, each rooted at its smallest vertex and listed once.
std::vector<BalancedCycle> all_directed_cycles(const Timetable& t);
std::vector<AlternatingCycle> all_alternating_cycles(const Timetable& t, int s);

// Key shared by exactly the colorings that differ only by a team relabeling
// and a round relabeling: minimizes the round-sorted pair list over every
// team permutation. Exponential in n; refuses n > 8.
std::string canonical_coloring_key(const Timetable& t);

// True iff the union of every two round matchings is one Hamiltonian cycle.
bool perfect_one_factor_set(const Timetable& t);

struct ComponentReport {
  SolutionSpace space;
  std::vector<Neighborhood> suite;
  int num_components = 0;
  std::vector<int> component_of;
  std::vector<int> component_size;
  long long arcs = 0;                          // directed, self-loops dropped
  std::vector<std::pair<int, int>> arc_list;   // deduplicated

  std::string summary() const;
  std::string csv() const;
};

// Builds the move graph by applying every legal move of the suite to every
// state: all round pairs, all team pairs, every bichromatic cycle, every
// directed cycle, every lantern and every alternating cycle. Coloring-level
// graphs run the moves on the balanced representatives; orientation-only
// moves (CR) contribute no coloring arcs, and iPRS-B is refused there
// because its legal cycles depend on the orientation. Orientation-level
// graphs refuse the lantern and unbalanced alternating moves, whose repairs
// pick orientations by lot.
ComponentReport check_connectivity(int n, int r,
                                   const std::vector<Neighborhood>& suite,
                                   EnumMode mode);

struct CounterexampleReport {
  explicit CounterexampleReport(Timetable s) : start(std::move(s)) {}

  int n = 0;
  Timetable start;
  // Balanced alternating cycles do exist in this instance; the obstruction
  // is that every one of them pairs teams of opposite parity.
  std::array<bool, 2> balanced_cycle_in_round{};
  long long closure_states = 0;
  long long closure_colorings = 0;
  long long total_colorings = 0;
  bool same_parity_pairing_seen = false;
  bool cr_changed_pairings = false;

  long long missed_colorings() const {
    return total_colorings - closure_colorings;
  }
  std::string summary() const;
};

// The two-round instance whose match graph is one Hamiltonian cycle, odd
// teams at home in the first round, and the exhaustive iPRS-B + CR closure
// explored from it. n even, 6 <= n <= 8.
CounterexampleReport verify_counterexample_r2(int n);

struct OrientationReport {
  int n = 0;
  int r = 0;
  long long orientations = 0;
  int num_components = 0;
  long long cr_arcs = 0;
  long long pr_arcs = 0;  // balance-keeping path reversals; none when r is even

  std::string summary() const;
};

// Fixes the circle-method coloring, enumerates its balanced orientations and
// labels the components under CR for r even or CR plus balance-keeping path
// reversals for r odd.
OrientationReport verify_orientation_connectivity(int n, int r);

}  // namespace irr

#endif  // IRR_LAB_HPP
