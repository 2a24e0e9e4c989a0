#ifndef IRR_OBJECTIVE_HPP
#define IRR_OBJECTIVE_HPP

#include <string>
#include <vector>

#include "irr/instance.hpp"
#include "irr/timetable.hpp"

namespace irr {

enum class ViolationKind {
  kBalance,      // per-team home surplus outside the allowed band
  kWindow,       // too many consecutive home or away games
  kEdgeBreak,    // break in the second or the last round
  kHalfBalance,  // home count of a half season outside its band
  kBreaks,       // break count above the per-team limit
  kCapacity,     // total venue-capacity excess above the shared budget
  kEligibility,  // scheduled pairing outside the eligible set
};

struct Violation {
  ViolationKind kind = ViolationKind::kBalance;
  int subject = -1;  // team for per-team kinds, -1 for aggregates
  int round = -1;    // window start or break round where that applies
  long long amount = 1;

  bool operator==(const Violation&) const = default;
  std::string describe() const;
};

struct Evaluation {
  long long travel_cost = 0;
  long long penalty_cost = 0;
  std::vector<Violation> hard_violations;
  bool feasible = true;

  long long total() const { return travel_cost + penalty_cost; }
  // Ineligible pairings are priced into penalty_cost and worked off during
  // search; every other violation is a straight reject.
  bool search_feasible() const;

  bool operator==(const Evaluation&) const = default;
};

// Full evaluations. Pure; the timetable must satisfy C1-C2.
Evaluation ittp_evaluate(const Timetable& t, const ITTPInstance& inst);
Evaluation ystp_evaluate(const Timetable& t, const YSTPInstance& inst);

// Incremental mirrors of the two evaluations. refresh() recomputes only the
// touched teams' contributions; current() is bit-identical to the full
// evaluation of the same timetable.
class IttpEvaluator {
 public:
  IttpEvaluator(const ITTPInstance& inst, const Timetable& t);
  void refresh(const Timetable& t, const std::vector<int>& touched_teams);
  Evaluation current() const;

 private:
  const ITTPInstance* inst_;
  std::vector<long long> team_cost_;
  std::vector<std::vector<Violation>> team_items_;
  long long travel_ = 0;
};

class YstpEvaluator {
 public:
  YstpEvaluator(const YSTPInstance& inst, const Timetable& t);
  void refresh(const Timetable& t, const std::vector<int>& touched_teams);
  Evaluation current() const;

 private:
  void rebuild_team(const Timetable& t, int i);

  const YSTPInstance* inst_;
  std::vector<long long> team_cost_;
  std::vector<std::vector<Violation>> team_items_;
  std::vector<int> elig_bad_;             // per-team count of hosted ineligible games
  std::vector<long long> home_cnt_;       // (club, round) -> home teams
  std::vector<std::int8_t> status_snap_;  // (team, round) -> 1 home, 0 away, -1 idle
  long long travel_ = 0;
};

}  // namespace irr

#endif  // IRR_OBJECTIVE_HPP
