#ifndef IRR_CONSTRUCT_HPP
#define IRR_CONSTRUCT_HPP

#include <string>

#include "irr/instance.hpp"
#include "irr/timetable.hpp"
#include "irr/types.hpp"

namespace irr {

struct ConstructionLog {
  std::string method;
  int repair_steps = 0;
  double elapsed_seconds = 0.0;
};

// First r rounds of the circle-method round robin on n teams, with a fixed
// orientation scheme and any residual imbalance repaired. Deterministic.
Timetable construct_circle(int n, int r);

// Circle start plus cycle-reversal repair until every four-round window holds
// between one and three home games. Retries from scrambled starts; throws
// ConstructionFailed when all restarts are exhausted.
Timetable construct_ittp_initial(const ITTPInstance& inst, Rng& rng,
                                 ConstructionLog* log = nullptr);

// Round-by-round greedy matching over not-yet-used pairs (distance plus
// penalty weights), greedy orientations, balance restoration, then the same
// cycle-reversal repair against the instance's hard rules. Residual
// ineligible pairings are allowed (the search prices them); any other
// residual violation throws ConstructionFailed. Detects odd isolated
// eligibility components upfront and names one in the error.
Timetable construct_ystp_initial(const YSTPInstance& inst, Rng& rng,
                                 ConstructionLog* log = nullptr);

}  // namespace irr

#endif  // IRR_CONSTRUCT_HPP
