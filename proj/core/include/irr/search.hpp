#ifndef IRR_SEARCH_HPP
#define IRR_SEARCH_HPP

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "irr/construct.hpp"
#include "irr/instance.hpp"
#include "irr/moves.hpp"
#include "irr/objective.hpp"
#include "irr/timetable.hpp"

namespace irr {

enum class Neighborhood {
  kRS,      // swap two whole rounds
  kPRS,     // swap colors along one bichromatic cycle
  kTS,      // exchange two team identities
  kCR,      // reverse a directed cycle of orientations
  kIPTS,    // lantern swap, colorful chordless or incomplete
  kIPTSCR,  // lantern swap plus pattern-restoring reversals
  kIPRSB,   // balanced alternating-cycle swap
  kIPRSU,   // arbitrary alternating-cycle swap with path repair
};

inline constexpr int kNumNeighborhoods = 8;

const char* neighborhood_name(Neighborhood k);
Neighborhood neighborhood_from_name(const std::string& name);  // ParseError

// Named suites: Base = {TS, PRS, CR}; All = {TS, iPTS, PRS, iPRS-U, CR};
// CR+iPRS-B = {CR, iPRS-B}; every single structure name is a suite of one.
// Lookup ignores case.
std::vector<Neighborhood> suite_from_name(const std::string& name);  // ParseError
std::vector<std::string> suite_names();

struct SearchConfig {
  std::vector<Neighborhood> suite = suite_from_name("All");
  double time_limit = 7200.0;  // seconds
  long long idle_threshold = 100000;
  double growth = 1.5;
  long long history_cap = 100000;
  double rho_init = 1.005;
  double rho_incr = 0.005;
  long long reset_history = 10;
  double bfs_probability = 0.9;
  std::uint64_t seed = 0;
  // Candidates tying the incumbent cost are accepted; set this to demand a
  // strict improvement on that branch instead.
  bool strict_incumbent = false;
  // Extra stops for experiments: a proposal budget (-1 = none) and a cost at
  // or below which the run ends early (min() = never).
  long long max_iterations = -1;
  long long target_cost = std::numeric_limits<long long>::min();
  bool record_decisions = false;
};

struct TraceRow {
  long long iteration = 0;  // total proposals made when the row was written
  long long elapsed_ms = 0;
  long long incumbent_cost = 0;
  long long best_cost = 0;
  long long l_h = 0;
  double rho = 0.0;

  bool operator==(const TraceRow&) const = default;
};

struct DecisionRecord {
  long long iteration = 0;
  long long candidate_cost = 0;
  long long slot_before = 0;       // history value the candidate was compared to
  long long incumbent_before = 0;  // incumbent cost before the decision
  bool accepted = false;

  bool operator==(const DecisionRecord&) const = default;
};

struct SearchState {
  std::vector<long long> history;  // |history| == l_h
  long long l_h = 1;
  double rho = 1.005;
  long long i = 0;  // indexes the history slot; adaptation restarts it at 0
  long long i_idle = 0;
  Timetable incumbent;
  long long incumbent_cost = 0;
  Timetable best;
  long long best_cost = 0;
  std::vector<TraceRow> trace;

  explicit SearchState(const Timetable& initial)
      : incumbent(initial), best(initial) {}
};

struct AcceptDecision {
  bool accepted = false;
  bool slot_lowered = false;
};

// One acceptance step: bumps or clears the idle counter, accepts iff the
// cost beats history[i mod l_h] or does not exceed the incumbent cost, and
// lowers the slot when beaten. Replaces the incumbent cost on acceptance;
// the caller keeps the incumbent table in step.
AcceptDecision alahc_accept(long long candidate_cost, SearchState& st,
                            bool strict_incumbent = false);

struct AdaptOutcome {
  bool grew = false;              // history grown after a stall
  bool reset = false;             // history cut back after a new best or at the cap
  bool new_best = false;          // best table replaced by the incumbent
  bool incumbent_jumped = false;  // incumbent table replaced by the best
};

// The two adaptation rules, applied in order. A stall of more than
// idle_threshold candidates grows the history by the growth factor (rounded
// up) and raises rho; an improved best, or a history about to outgrow the
// cap, cuts it back to reset_history and restores rho. Both refill the
// history with draws from [best, best * rho] and restart the counters.
AdaptOutcome alahc_adapt(SearchState& st, const SearchConfig& cfg, Rng& rng);

struct Proposal {
  Neighborhood kind;
  std::optional<MoveOutcome> outcome;  // empty: sampled inputs admit no move
  int a = -1;  // sampled teams (TS, iPTS), rounds (RS, PRS) or round (iPRS)
  int b = -1;
};

// Picks a structure uniformly from the suite, samples its inputs uniformly
// and applies the move in place; the caller undoes the journal to reject.
Proposal sample_move(Timetable& t, const std::vector<Neighborhood>& suite,
                     Rng& rng, double bfs_probability = 0.9);

struct SearchResult {
  SearchState state;   // final history, counters and the two tables
  Timetable initial;   // starting solution of the run
  Evaluation best_evaluation;
  std::vector<DecisionRecord> decisions;  // only with record_decisions
  std::array<long long, kNumNeighborhoods> proposed_by_kind{};
  long long iterations = 0;
  long long accepted = 0;
  long long rejected_infeasible = 0;
  double elapsed_seconds = 0.0;
  ConstructionLog construction;
  // Team label map from initial to best, kept while every accepted move
  // preserves the pairings; suites with lantern or alternating-cycle moves
  // lose it on the first such acceptance.
  std::optional<std::vector<int>> team_relabeling;

  SearchResult(SearchState s, Timetable init)
      : state(std::move(s)), initial(std::move(init)) {}

  const Timetable& best() const { return state.best; }
  const std::vector<TraceRow>& trace() const { return state.trace; }
};

// Full runs: construct a start (or take the given one), then propose, accept
// and adapt until a stop condition. Deterministic given instance, config and
// seed. ConstructionFailed propagates; a hard-infeasible warm start throws
// ConstructionFailed as well.
SearchResult solve_ittp(const ITTPInstance& inst, const SearchConfig& cfg);
SearchResult solve_ittp(const ITTPInstance& inst, const SearchConfig& cfg,
                        const Timetable& initial);
SearchResult solve_ystp(const YSTPInstance& inst, const SearchConfig& cfg);
SearchResult solve_ystp(const YSTPInstance& inst, const SearchConfig& cfg,
                        const Timetable& initial);

std::string trace_to_csv(const std::vector<TraceRow>& rows);
void write_trace_csv(const std::string& path,
                     const std::vector<TraceRow>& rows);  // WriteError

}  // namespace irr

#endif  // IRR_SEARCH_HPP
