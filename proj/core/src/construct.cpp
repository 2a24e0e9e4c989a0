#include "irr/construct.hpp"

#include <algorithm>
#include <chrono>
#include <climits>
#include <optional>
#include <vector>

#include "irr/cycles.hpp"
#include "irr/moves.hpp"
#include "irr/objective.hpp"

namespace irr {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Simple directed cycle through `pivot` containing its round-c arc, so that
// reversing the cycle flips pivot's status in c. When pivot is away in c the
// walk follows arcs forward from the round-c opponent; when pivot is home the
// walk runs backward along in-arcs and the sequence is flipped at the end.
// Loop-erased walk, nothing on timeout.
std::optional<BalancedCycle> cycle_through(const Timetable& t, int pivot, int c, Rng& rng) {
  if (!t.plays(pivot, c)) return std::nullopt;
  bool forward = !t.is_home(pivot, c);
  int n = t.n();
  int r = t.r();
  std::vector<int> seq{pivot, t.opponent(pivot, c)};
  std::vector<int> pos(n, -1);
  pos[pivot] = 0;
  pos[seq[1]] = 1;
  std::vector<int> options;
  options.reserve(r);
  int budget = 4 * (n + r) + 32;
  while (budget-- > 0) {
    int cur = seq.back();
    options.clear();
    // Forward walks leave by away games (arc cur -> host); backward walks
    // arrive by home games (arc guest -> cur). Closing immediately keeps the
    // cycle short, which keeps the collateral status flips small.
    int closing = -1;
    for (int s = 0; s < r; ++s) {
      if (!t.plays(cur, s) || t.is_home(cur, s) == forward) continue;
      options.push_back(s);
      if (t.opponent(cur, s) == pivot) closing = s;
    }
    if (options.empty()) return std::nullopt;
    int s = (closing >= 0 && seq.size() >= 3)
                ? closing
                : options[std::uniform_int_distribution<size_t>(0, options.size() - 1)(rng)];
    int next = t.opponent(cur, s);
    if (next == pivot) {
      if (seq.size() < 3) continue;
      BalancedCycle cyc;
      cyc.vertices = seq;
      if (!forward) std::reverse(cyc.vertices.begin() + 1, cyc.vertices.end());
      return cyc;
    }
    if (pos[next] >= 0) {
      while (static_cast<int>(seq.size()) > pos[next] + 1) {
        pos[seq.back()] = -1;
        seq.pop_back();
      }
      continue;
    }
    pos[next] = static_cast<int>(seq.size());
    seq.push_back(next);
  }
  return std::nullopt;
}

// Violation weight the repair descends on; ineligible pairings stay out
// because no reorientation can fix a pairing.
long long hard_weight(const Evaluation& ev) {
  long long w = 0;
  for (const Violation& v : ev.hard_violations)
    if (v.kind != ViolationKind::kEligibility) w += v.amount;
  return w;
}

// (team, round) pairs whose status flip attacks some reported violation.
// window_len is 4 for the travel problem and 3 otherwise; capacity items are
// expanded by the caller since they need club data.
void violation_targets(const Timetable& t, const Evaluation& ev, int window_len,
                       std::vector<std::pair<int, int>>& out) {
  out.clear();
  for (const Violation& v : ev.hard_violations) {
    switch (v.kind) {
      case ViolationKind::kWindow:
        for (int s = v.round; s < v.round + window_len; ++s) out.emplace_back(v.subject, s);
        break;
      case ViolationKind::kEdgeBreak:
        out.emplace_back(v.subject, v.round);
        out.emplace_back(v.subject, v.round - 1);
        break;
      case ViolationKind::kHalfBalance: {
        int len = v.round == 0 ? t.r() / 2 : t.r() - t.r() / 2;
        int homes = 0;
        for (int s = v.round; s < v.round + len; ++s)
          if (t.plays(v.subject, s) && t.is_home(v.subject, s)) ++homes;
        bool surplus = homes > (len + 1) / 2;
        for (int s = v.round; s < v.round + len; ++s)
          if (t.plays(v.subject, s) && t.is_home(v.subject, s) == surplus)
            out.emplace_back(v.subject, s);
        break;
      }
      case ViolationKind::kBreaks:
        for (int b : breaks_of(t, v.subject)) {
          out.emplace_back(v.subject, b);
          out.emplace_back(v.subject, b - 1);
        }
        break;
      default:
        break;
    }
  }
}

// Greedy descent: reverse cycles aimed at reported violations, keep a
// reversal when the weight drops, drift sideways occasionally. The caller
// supplies an incremental evaluator through refresh/current so each attempt
// costs only the touched teams. Returns the number of kept reversals.
template <class RefreshFn, class CurrentFn, class TargetsFn>
int cycle_repair(Timetable& t, Rng& rng, int budget, RefreshFn refresh, CurrentFn current,
                 TargetsFn targets_fn) {
  int accepted = 0;
  std::uniform_int_distribution<int> any_team(0, t.n() - 1);
  std::uniform_int_distribution<int> any_round(0, t.r() - 1);
  std::bernoulli_distribution sideways(0.25);
  std::vector<std::pair<int, int>> targets;
  Evaluation ev = current();
  long long w = hard_weight(ev);
  targets_fn(t, ev, targets);
  for (int attempt = 0; attempt < budget && w > 0; ++attempt) {
    std::pair<int, int> pick =
        targets.empty()
            ? std::pair<int, int>{any_team(rng), any_round(rng)}
            : targets[std::uniform_int_distribution<size_t>(0, targets.size() - 1)(rng)];
    auto cyc = cycle_through(t, pick.first, pick.second, rng);
    if (!cyc) continue;
    MoveOutcome out = cycle_reversal(t, *cyc);
    refresh(out.touched_teams);
    Evaluation ne = current();
    long long nw = hard_weight(ne);
    if (nw < w || (nw == w && sideways(rng))) {
      ++accepted;
      w = nw;
      ev = std::move(ne);
      targets_fn(t, ev, targets);
    } else {
      out.undo(t);
      refresh(out.touched_teams);
    }
  }
  return accepted;
}

void scramble_structure(Timetable& t, Rng& rng, int steps) {
  std::uniform_int_distribution<int> team(0, t.n() - 1);
  std::uniform_int_distribution<int> round(0, t.r() - 1);
  for (int k = 0; k < steps; ++k) {
    try {
      switch (k % 3) {
        case 0: round_swap(t, round(rng), round(rng)); break;
        case 1: team_swap(t, team(rng), team(rng)); break;
        case 2: partial_round_swap(t, round(rng), round(rng), rng); break;
      }
    } catch (const Error&) {
    }
  }
}

}  // namespace

Timetable construct_circle(int n, int r) {
  if (n < 4 || n % 2 != 0) throw RangeError("team count must be even and at least 4");
  if (r < 1 || r >= n - 1) throw RangeError("round count must be in [1, n-2]");
  const int m = n - 1;
  std::vector<Game> games;
  games.reserve(r * n / 2);
  for (int k = 0; k < r; ++k) {
    // Team n-1 sits in the hub; the others rotate around it.
    int hub_opp = k % m;
    if (k % 2 == 0)
      games.push_back({k, n - 1, hub_opp});
    else
      games.push_back({k, hub_opp, n - 1});
    for (int i = 1; i < n / 2; ++i) {
      int a = (k + i) % m;
      int b = (k - i + m) % m;
      if (i % 2 == 0)
        games.push_back({k, a, b});
      else
        games.push_back({k, b, a});
    }
  }
  Timetable t = Timetable::from_games(n, r, games);
  if (imbalance(t).total_delta != 0) {
    Rng rng(0x5eedc1c1eULL);
    restore_balance(t, rng);
  }
  return t;
}

Timetable construct_ittp_initial(const ITTPInstance& inst, Rng& rng, ConstructionLog* log) {
  auto start = Clock::now();
  int budget = 10 * inst.n * inst.r;
  int steps_total = 0;
  auto targets_fn = [](const Timetable& x, const Evaluation& ev,
                       std::vector<std::pair<int, int>>& out) {
    violation_targets(x, ev, 4, out);
  };
  for (int restart = 0; restart < 20; ++restart) {
    Timetable t = construct_circle(inst.n, inst.r);
    if (restart > 0) scramble_structure(t, rng, 3 * restart);
    IttpEvaluator inc(inst, t);
    steps_total += cycle_repair(
        t, rng, budget, [&](const std::vector<int>& touched) { inc.refresh(t, touched); },
        [&] { return inc.current(); }, targets_fn);
    if (hard_weight(ittp_evaluate(t, inst)) == 0) {
      if (log) *log = {"circle+cycle-repair", steps_total, seconds_since(start)};
      return t;
    }
  }
  throw ConstructionFailed("home/away window repair failed after 20 restarts");
}

namespace {

// One round of pairings: greedy over the cheapest unused pairs, then swap
// repair until everyone is matched. Updates `used` on success.
std::optional<std::vector<std::pair<int, int>>> match_round(
    int n, const std::vector<std::uint8_t>& used_flat,
    const std::vector<long long>& weight_flat, Rng& rng) {
  auto used = [&](int i, int j) { return used_flat[static_cast<size_t>(i) * n + j] != 0; };
  auto weight = [&](int i, int j) { return weight_flat[static_cast<size_t>(i) * n + j]; };

  struct Cand {
    long long w;
    int i, j;
  };
  std::vector<Cand> cands;
  cands.reserve(static_cast<size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!used(i, j)) cands.push_back({weight(i, j), i, j});
  std::shuffle(cands.begin(), cands.end(), rng);
  std::stable_sort(cands.begin(), cands.end(),
                   [](const Cand& a, const Cand& b) { return a.w < b.w; });

  std::vector<int> partner(n, -1);
  for (const Cand& c : cands) {
    if (partner[c.i] != -1 || partner[c.j] != -1) continue;
    partner[c.i] = c.j;
    partner[c.j] = c.i;
  }

  std::vector<int> leftovers;
  for (int i = 0; i < n; ++i)
    if (partner[i] == -1) leftovers.push_back(i);
  while (!leftovers.empty()) {
    int a = leftovers[leftovers.size() - 2];
    int b = leftovers[leftovers.size() - 1];
    bool placed = false;
    if (!used(a, b)) {
      partner[a] = b;
      partner[b] = a;
      placed = true;
    } else {
      for (int x = 0; x < n && !placed; ++x) {
        if (partner[x] == -1 || partner[x] < x) continue;
        int y = partner[x];
        if (!used(a, x) && !used(b, y)) {
          partner[a] = x;
          partner[x] = a;
          partner[b] = y;
          partner[y] = b;
          placed = true;
        } else if (!used(a, y) && !used(b, x)) {
          partner[a] = y;
          partner[y] = a;
          partner[b] = x;
          partner[x] = b;
          placed = true;
        }
      }
    }
    if (!placed) return std::nullopt;
    leftovers.pop_back();
    leftovers.pop_back();
  }

  // A couple of 2-swap passes to shave obvious weight.
  for (int pass = 0; pass < 2; ++pass) {
    bool improved = false;
    for (int x = 0; x < n; ++x) {
      if (partner[x] < x) continue;
      int y = partner[x];
      for (int u = x + 1; u < n; ++u) {
        if (partner[u] < u || u == y) continue;
        int v = partner[u];
        long long now = weight(x, y) + weight(u, v);
        if (!used(x, u) && !used(y, v) && weight(x, u) + weight(y, v) < now) {
          partner[x] = u;
          partner[u] = x;
          partner[y] = v;
          partner[v] = y;
          improved = true;
          break;
        }
        if (!used(x, v) && !used(y, u) && weight(x, v) + weight(y, u) < now) {
          partner[x] = v;
          partner[v] = x;
          partner[y] = u;
          partner[u] = y;
          improved = true;
          break;
        }
      }
    }
    if (!improved) break;
  }

  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    if (partner[i] > i) pairs.emplace_back(i, partner[i]);
  return pairs;
}

}  // namespace

Timetable construct_ystp_initial(const YSTPInstance& inst, Rng& rng, ConstructionLog* log) {
  inst.check();
  auto start = Clock::now();
  int n = inst.n;
  int r = inst.r;

  // A perfect matching over eligible pairs only exists per component; an odd
  // isolated component can never be fully matched.
  {
    std::vector<int> comp(n, -1);
    for (int root = 0; root < n; ++root) {
      if (comp[root] != -1) continue;
      std::vector<int> stack{root};
      std::vector<int> members;
      comp[root] = root;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        members.push_back(v);
        for (int w = 0; w < n; ++w)
          if (comp[w] == -1 && inst.is_eligible(v, w)) {
            comp[w] = root;
            stack.push_back(w);
          }
      }
      if (members.size() % 2 != 0) {
        std::sort(members.begin(), members.end());
        std::string who;
        for (int v : members) who += (who.empty() ? "" : ", ") + std::to_string(v + 1);
        throw ConstructionFailed("odd isolated eligibility component: teams " + who);
      }
    }
  }

  // Pair weights: symmetrized distance, a prohibitive bump for ineligible
  // pairs, and a seeded jitter so restarts explore different matchings.
  std::vector<long long> weight(static_cast<size_t>(n) * n, 0);
  long long jitter_span = std::max<long long>(1, inst.distances.max_value() / 4);
  int budget = 10 * n * r;
  int steps_total = 0;

  auto targets_fn = [&](const Timetable& x, const Evaluation& ev,
                        std::vector<std::pair<int, int>>& out) {
    violation_targets(x, ev, 3, out);
    for (const Violation& v : ev.hard_violations) {
      if (v.kind != ViolationKind::kCapacity) continue;
      // Aggregate item: aim at every host inside an overfull club cell.
      std::vector<long long> cnt(static_cast<size_t>(inst.num_clubs) * r, 0);
      for (int i = 0; i < n; ++i)
        for (int s = 0; s < r; ++s)
          if (x.plays(i, s) && x.is_home(i, s))
            ++cnt[static_cast<size_t>(inst.club_of[i]) * r + s];
      for (int i = 0; i < n; ++i)
        for (int s = 0; s < r; ++s)
          if (x.plays(i, s) && x.is_home(i, s) &&
              cnt[static_cast<size_t>(inst.club_of[i]) * r + s] > inst.gamma(inst.club_of[i], s))
            out.emplace_back(i, s);
      break;
    }
  };

  std::optional<Timetable> best;
  long long best_w = LLONG_MAX;

  for (int restart = 0; restart < 20; ++restart) {
    std::uniform_int_distribution<long long> jitter(0, jitter_span);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        long long w = inst.distances.at(i, j) + inst.distances.at(j, i);
        if (!inst.is_eligible(i, j)) w += inst.p_inelig();
        if (restart > 0) w += jitter(rng);
        weight[static_cast<size_t>(i) * n + j] = w;
        weight[static_cast<size_t>(j) * n + i] = w;
      }

    std::vector<std::uint8_t> used(static_cast<size_t>(n) * n, 0);
    std::vector<Game> games;
    std::vector<int> homes(n, 0);
    std::vector<std::int8_t> last_status(n, -1);
    std::vector<std::int8_t> prev_status(n, -1);
    bool built = true;
    for (int s = 0; s < r && built; ++s) {
      auto pairs = match_round(n, used, weight, rng);
      if (!pairs) {
        built = false;
        break;
      }
      std::vector<long long> club_homes(inst.num_clubs, 0);
      for (auto [i, j] : *pairs) {
        used[static_cast<size_t>(i) * n + j] = 1;
        used[static_cast<size_t>(j) * n + i] = 1;
        auto host_score = [&](int h, int g) {
          long long score = homes[h] * 4;
          if (club_homes[inst.club_of[h]] >= inst.gamma(inst.club_of[h], s)) score += 1000;
          if (last_status[h] == 1) score += 8;
          if (last_status[h] == 1 && prev_status[h] == 1) score += 200;
          if (last_status[g] == 0) score += 8;  // the other side would sit away again
          if (last_status[g] == 0 && prev_status[g] == 0) score += 200;
          return score;
        };
        int home = host_score(i, j) <= host_score(j, i) ? i : j;
        int away = home == i ? j : i;
        games.push_back({s, home, away});
        ++homes[home];
        ++club_homes[inst.club_of[home]];
      }
      for (int i = 0; i < n; ++i) {
        prev_status[i] = last_status[i];
        last_status[i] = 0;
      }
      for (const Game& g : games)
        if (g.round == s) last_status[g.home] = 1;
    }
    if (!built) continue;

    Timetable t = Timetable::from_games(n, r, games);
    if (imbalance(t).total_delta != 0) restore_balance(t, rng);
    YstpEvaluator inc(inst, t);
    steps_total += cycle_repair(
        t, rng, budget, [&](const std::vector<int>& touched) { inc.refresh(t, touched); },
        [&] { return inc.current(); }, targets_fn);
    long long w = hard_weight(ystp_evaluate(t, inst));
    if (w == 0) {
      if (log) *log = {"greedy-matching+cycle-repair", steps_total, seconds_since(start)};
      return t;
    }
    if (w < best_w) {
      best_w = w;
      best = t;
    }
  }

  std::string detail = "hard violations remain after 20 restarts";
  if (best) {
    for (const Violation& v : ystp_evaluate(*best, inst).hard_violations)
      if (v.kind != ViolationKind::kEligibility) detail += "; " + v.describe();
  }
  throw ConstructionFailed(detail);
}

}  // namespace irr
