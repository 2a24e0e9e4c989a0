#include "irr/objective.hpp"

#include <algorithm>
#include <cstdlib>

namespace irr {

namespace {

// Surplus beyond the C3 band: any nonzero delta for even r, |delta| > 1 for
// odd r.
long long balance_excess(int delta, int r) {
  long long a = std::abs(delta);
  if (r % 2 == 0) return a;
  return a > 1 ? a - 1 : 0;
}

void append_balance_item(const Timetable& t, int i, std::vector<Violation>& out) {
  int delta = 0;
  for (int s = 0; s < t.r(); ++s) {
    if (!t.plays(i, s)) continue;
    delta += t.is_home(i, s) ? 1 : -1;
  }
  long long excess = balance_excess(delta, t.r());
  if (excess > 0) out.push_back({ViolationKind::kBalance, i, -1, excess});
}

// Tour simulation: start at the own venue, hop between the venues of the
// scheduled games, return home after the last round.
long long ittp_team_cost(const Timetable& t, const ITTPInstance& inst, int i) {
  long long cost = 0;
  int at = i;
  for (int s = 0; s < t.r(); ++s) {
    if (!t.plays(i, s)) continue;
    int venue = t.is_home(i, s) ? i : t.opponent(i, s);
    cost += inst.distances.at(at, venue);
    at = venue;
  }
  cost += inst.distances.at(at, i);
  return cost;
}

void ittp_team_items(const Timetable& t, int i, std::vector<Violation>& out) {
  append_balance_item(t, i, out);
  // Every four consecutive rounds must hold between one and three home games.
  for (int s = 0; s + 4 <= t.r(); ++s) {
    int homes = 0;
    for (int k = 0; k < 4; ++k)
      if (t.plays(i, s + k) && t.is_home(i, s + k)) ++homes;
    if (homes == 0 || homes == 4) out.push_back({ViolationKind::kWindow, i, s, 1});
  }
}

long long ystp_team_cost(const Timetable& t, const YSTPInstance& inst, int i) {
  long long cost = 0;
  for (int s = 0; s < t.r(); ++s)
    if (t.plays(i, s) && t.is_home(i, s)) cost += inst.distances.at(i, t.opponent(i, s));
  return cost;
}

// Returns the number of hosted ineligible games alongside the item list.
int ystp_team_items(const Timetable& t, const YSTPInstance& inst, int i,
                    std::vector<Violation>& out) {
  int r = t.r();
  append_balance_item(t, i, out);
  // At most two consecutive home games and away games: every window of three
  // rounds needs at least one of each.
  for (int s = 0; s + 3 <= r; ++s) {
    int homes = 0;
    int played = 0;
    for (int k = 0; k < 3; ++k) {
      if (!t.plays(i, s + k)) continue;
      ++played;
      if (t.is_home(i, s + k)) ++homes;
    }
    if (played == 3 && (homes == 0 || homes == 3))
      out.push_back({ViolationKind::kWindow, i, s, 1});
  }
  if (inst.no_edge_breaks_enabled && r >= 2) {
    auto same = [&](int a, int b) {
      return t.plays(i, a) && t.plays(i, b) && t.is_home(i, a) == t.is_home(i, b);
    };
    if (same(0, 1)) out.push_back({ViolationKind::kEdgeBreak, i, 1, 1});
    if (r > 2 && same(r - 2, r - 1)) out.push_back({ViolationKind::kEdgeBreak, i, r - 1, 1});
  }
  if (inst.half_balance_enabled) {
    int mid = r / 2;
    for (int half = 0; half < 2; ++half) {
      int lo = half == 0 ? 0 : mid;
      int hi = half == 0 ? mid : r;
      int len = hi - lo;
      if (len == 0) continue;
      int homes = 0;
      for (int s = lo; s < hi; ++s)
        if (t.plays(i, s) && t.is_home(i, s)) ++homes;
      int floor_b = len / 2;
      int ceil_b = (len + 1) / 2;
      if (homes < floor_b)
        out.push_back({ViolationKind::kHalfBalance, i, lo, floor_b - homes});
      else if (homes > ceil_b)
        out.push_back({ViolationKind::kHalfBalance, i, lo, homes - ceil_b});
    }
  }
  if (inst.b_plus != kUnlimitedBreaks) {
    long long breaks = static_cast<long long>(breaks_of(t, i).size());
    if (breaks > inst.b_plus)
      out.push_back({ViolationKind::kBreaks, i, -1, breaks - inst.b_plus});
  }
  int bad = 0;
  for (int s = 0; s < r; ++s) {
    if (!t.plays(i, s) || !t.is_home(i, s)) continue;
    if (!inst.is_eligible(i, t.opponent(i, s))) {
      out.push_back({ViolationKind::kEligibility, i, s, 1});
      ++bad;
    }
  }
  return bad;
}

void append_capacity_item(const std::vector<long long>& home_cnt, const YSTPInstance& inst,
                          std::vector<Violation>& out) {
  long long excess = 0;
  for (int c = 0; c < inst.num_clubs; ++c)
    for (int s = 0; s < inst.r; ++s) {
      long long over = home_cnt[static_cast<size_t>(c) * inst.r + s] - inst.gamma(c, s);
      if (over > 0) excess += over;
    }
  if (excess > inst.v_plus)
    out.push_back({ViolationKind::kCapacity, -1, -1, excess - inst.v_plus});
}

}  // namespace

std::string Violation::describe() const {
  auto team = [&] { return "team " + std::to_string(subject + 1); };
  switch (kind) {
    case ViolationKind::kBalance:
      return team() + ": home/away surplus " + std::to_string(amount) + " beyond the band";
    case ViolationKind::kWindow:
      return team() + ": one-sided window starting at round " + std::to_string(round + 1);
    case ViolationKind::kEdgeBreak:
      return team() + ": break in round " + std::to_string(round + 1);
    case ViolationKind::kHalfBalance:
      return team() + ": half starting at round " + std::to_string(round + 1) +
             " off balance by " + std::to_string(amount);
    case ViolationKind::kBreaks:
      return team() + ": " + std::to_string(amount) + " breaks above the limit";
    case ViolationKind::kCapacity:
      return "capacity excess " + std::to_string(amount) + " beyond the shared budget";
    case ViolationKind::kEligibility:
      return team() + " hosts an ineligible opponent in round " + std::to_string(round + 1);
  }
  return "?";
}

bool Evaluation::search_feasible() const {
  for (const Violation& v : hard_violations)
    if (v.kind != ViolationKind::kEligibility) return false;
  return true;
}

IttpEvaluator::IttpEvaluator(const ITTPInstance& inst, const Timetable& t)
    : inst_(&inst), team_cost_(t.n(), 0), team_items_(t.n()) {
  for (int i = 0; i < t.n(); ++i) {
    team_cost_[i] = ittp_team_cost(t, inst, i);
    travel_ += team_cost_[i];
    ittp_team_items(t, i, team_items_[i]);
  }
}

void IttpEvaluator::refresh(const Timetable& t, const std::vector<int>& touched_teams) {
  for (int i : touched_teams) {
    travel_ -= team_cost_[i];
    team_cost_[i] = ittp_team_cost(t, *inst_, i);
    travel_ += team_cost_[i];
    team_items_[i].clear();
    ittp_team_items(t, i, team_items_[i]);
  }
}

Evaluation IttpEvaluator::current() const {
  Evaluation ev;
  ev.travel_cost = travel_;
  for (const auto& items : team_items_)
    ev.hard_violations.insert(ev.hard_violations.end(), items.begin(), items.end());
  ev.feasible = ev.hard_violations.empty();
  return ev;
}

Evaluation ittp_evaluate(const Timetable& t, const ITTPInstance& inst) {
  return IttpEvaluator(inst, t).current();
}

YstpEvaluator::YstpEvaluator(const YSTPInstance& inst, const Timetable& t)
    : inst_(&inst),
      team_cost_(t.n(), 0),
      team_items_(t.n()),
      elig_bad_(t.n(), 0),
      home_cnt_(static_cast<size_t>(inst.num_clubs) * inst.r, 0),
      status_snap_(static_cast<size_t>(t.n()) * t.r(), -1) {
  for (int i = 0; i < t.n(); ++i) {
    for (int s = 0; s < t.r(); ++s) {
      if (!t.plays(i, s)) continue;
      std::int8_t st = t.is_home(i, s) ? 1 : 0;
      status_snap_[static_cast<size_t>(i) * t.r() + s] = st;
      if (st == 1) ++home_cnt_[static_cast<size_t>(inst.club_of[i]) * inst.r + s];
    }
    rebuild_team(t, i);
    travel_ += team_cost_[i];
  }
}

void YstpEvaluator::rebuild_team(const Timetable& t, int i) {
  team_cost_[i] = ystp_team_cost(t, *inst_, i);
  team_items_[i].clear();
  elig_bad_[i] = ystp_team_items(t, *inst_, i, team_items_[i]);
}

void YstpEvaluator::refresh(const Timetable& t, const std::vector<int>& touched_teams) {
  int r = t.r();
  for (int i : touched_teams) {
    travel_ -= team_cost_[i];
    for (int s = 0; s < r; ++s) {
      std::int8_t old = status_snap_[static_cast<size_t>(i) * r + s];
      std::int8_t now = t.plays(i, s) ? (t.is_home(i, s) ? 1 : 0) : std::int8_t{-1};
      if (old == now) continue;
      size_t cell = static_cast<size_t>(inst_->club_of[i]) * r + s;
      if (old == 1) --home_cnt_[cell];
      if (now == 1) ++home_cnt_[cell];
      status_snap_[static_cast<size_t>(i) * r + s] = now;
    }
    rebuild_team(t, i);
    travel_ += team_cost_[i];
  }
}

Evaluation YstpEvaluator::current() const {
  Evaluation ev;
  ev.travel_cost = travel_;
  long long bad = 0;
  for (int i = 0; i < static_cast<int>(team_items_.size()); ++i) {
    ev.hard_violations.insert(ev.hard_violations.end(), team_items_[i].begin(),
                              team_items_[i].end());
    bad += elig_bad_[i];
  }
  append_capacity_item(home_cnt_, *inst_, ev.hard_violations);
  ev.penalty_cost = bad * inst_->p_inelig();
  ev.feasible = ev.hard_violations.empty();
  return ev;
}

Evaluation ystp_evaluate(const Timetable& t, const YSTPInstance& inst) {
  return YstpEvaluator(inst, t).current();
}

}  // namespace irr
