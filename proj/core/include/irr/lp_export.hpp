#ifndef IRR_LP_EXPORT_HPP
#define IRR_LP_EXPORT_HPP

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "irr/instance.hpp"
#include "irr/timetable.hpp"

namespace irr {

// One linear row: sum of coef * var  <= / >= / =  rhs.
struct LpRow {
  std::string name;
  std::vector<std::pair<std::string, long long>> terms;
  char relation = 'L';  // 'L' <=, 'G' >=, 'E' =
  long long rhs = 0;
};

struct LpModel {
  std::vector<std::pair<std::string, long long>> objective;  // minimized
  std::vector<LpRow> rows;
  std::vector<std::string> binaries;  // x_i_j_r and b_i_r
  std::vector<std::string> nonneg;    // v_c_r, continuous >= 0

  const LpRow* row(const std::string& name) const;  // nullptr when absent
};

// Instantiates the integer program for the instance, 1-based names:
// x_i_j_r = team i hosts team j in round r, over ordered eligible pairs.
// Rows: each pair at most once (c1), one game per team per round (c2),
// exactly r/2 home games (c3), the two three-round window families
// (c4/c5), club capacities with overflow variables and the shared budget
// (c6, c14), and, as the instance enables them, no-edge-break rows
// (c7/c8), half-season balance rows (c9/c10) and break-budget rows with
// binary b variables (c11-c13). Requires r even; the model has no integral
// home-game count otherwise.
LpModel build_lp(const YSTPInstance& inst);

// CPLEX LP text for the model.
std::string lp_text(const LpModel& model);

// Writes lp_text(build_lp(inst)); throws WriteError when the file cannot
// be created.
void export_lp(const YSTPInstance& inst, const std::string& path);

// The assignment the timetable induces on every model variable: x from the
// schedule, b from the break pattern, v from the per-club overflow.
std::unordered_map<std::string, long long> lp_substitute(const YSTPInstance& inst,
                                                         const Timetable& t);

struct SubstitutionReport {
  bool satisfied = true;
  std::vector<std::string> violated_rows;
  long long objective_value = 0;
};

// Evaluates every row of build_lp(inst) at the substituted point. The
// timetable must satisfy C1-C2; satisfied then coincides with the
// evaluator's feasibility verdict.
SubstitutionReport check_substitution(const YSTPInstance& inst, const Timetable& t);

}  // namespace irr

#endif  // IRR_LP_EXPORT_HPP
