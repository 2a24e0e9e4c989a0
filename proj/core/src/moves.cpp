#include "irr/moves.hpp"

#include <algorithm>
#include <unordered_map>

namespace irr {

void MoveJournal::set(Timetable& t, int e, int color, std::int8_t home_lo) {
  entries.push_back({e, static_cast<std::int16_t>(t.color_of_edge(e)), t.home_lo_of(e)});
  if (t.color_of_edge(e) != color) t.raw_set_color(e, color);
  t.raw_set_home_lo(e, home_lo);
}

void MoveJournal::undo(Timetable& t) const {
  for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
    if (t.color_of_edge(it->edge) != it->old_color) t.raw_set_color(it->edge, it->old_color);
    t.raw_set_home_lo(it->edge, it->old_home_lo);
  }
}

namespace {

struct Stage {
  int e;
  int color;
  std::int8_t home_lo;
};

// Applies staged edge writes in two passes: every touched edge is uncolored
// first so that no (team, round) slot is ever claimed twice in passing.
void commit(Timetable& t, MoveJournal& j, const std::vector<Stage>& stages) {
  for (const Stage& s : stages)
    if (t.color_of_edge(s.e) != kUncolored) j.set(t, s.e, kUncolored, -1);
  for (const Stage& s : stages)
    if (s.color != kUncolored) j.set(t, s.e, s.color, s.home_lo);
}

std::int8_t encode_home(const Timetable& t, int e, int home_team) {
  return static_cast<std::int8_t>(t.edge_teams(e).first == home_team ? 1 : 0);
}

void flip_arc(Timetable& t, MoveJournal& j, int e) {
  j.set(t, e, t.color_of_edge(e), static_cast<std::int8_t>(1 - t.home_lo_of(e)));
}

void touch_team(MoveOutcome& out, int v) { out.touched_teams.push_back(v); }
void touch_round(MoveOutcome& out, int s) { out.touched_rounds.push_back(s); }

void finalize(const Timetable& t, MoveOutcome& out) {
  std::unordered_map<int, int> first_old;
  for (const MoveJournal::Entry& en : out.journal.entries)
    first_old.emplace(en.edge, en.old_color);
  for (const auto& [e, old_color] : first_old) {
    int now = t.color_of_edge(e);
    if (old_color == kUncolored && now != kUncolored) out.new_pairings.push_back(t.edge_teams(e));
    if (old_color != kUncolored && now == kUncolored)
      out.dropped_pairings.push_back(t.edge_teams(e));
  }
  auto dedupe = [](std::vector<int>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  dedupe(out.touched_rounds);
  dedupe(out.touched_teams);
  std::sort(out.new_pairings.begin(), out.new_pairings.end());
  std::sort(out.dropped_pairings.begin(), out.dropped_pairings.end());
}

int team_delta(const Timetable& t, int v) {
  int d = 0;
  for (int s = 0; s < t.r(); ++s)
    if (t.plays(v, s)) d += t.is_home(v, s) ? 1 : -1;
  return d;
}

// Reverses one directed path per iteration until the orientation is balanced,
// journaling the flips and recording touched teams and rounds.
RepairStats repair_journaled(Timetable& t, Rng& rng, double bfs_probability, MoveOutcome& out) {
  RepairStats stats;
  ImbalanceReport rep = imbalance(t);
  stats.delta_trace.push_back(rep.total_delta);
  std::bernoulli_distribution use_bfs(bfs_probability);
  while (rep.total_delta != 0) {
    PathStrategy strategy =
        use_bfs(rng) ? PathStrategy::kBreadthFirst : PathStrategy::kDepthFirst;
    auto path = find_path_to_repair(t, rng, strategy);
    if (!path) throw Error("imbalance reported but no repair path returned");
    const auto& v = path->vertices;
    for (size_t k = 0; k + 1 < v.size(); ++k) {
      int e = t.edge_index(v[k], v[k + 1]);
      flip_arc(t, out.journal, e);
      touch_round(out, t.color_of_edge(e));
    }
    for (int x : v) touch_team(out, x);
    ++stats.reversals;
    rep = imbalance(t);
    stats.delta_trace.push_back(rep.total_delta);
  }
  return stats;
}

// Shortest forward path from tail to head, or a loop-erased random walk with
// the same endpoints. Returns an empty vector when head is unreachable.
std::vector<int> pole_path(const Timetable& t, int tail, int head, bool breadth_first,
                           Rng& rng) {
  const int n = t.n();
  std::vector<std::vector<int>> fwd(n);
  for (int e = 0; e < t.num_edges(); ++e) {
    if (t.color_of_edge(e) == kUncolored) continue;
    auto [lo, hi] = t.edge_teams(e);
    int home = t.home_team_edge(e);
    int away = home == lo ? hi : lo;
    fwd[away].push_back(home);
  }
  for (auto& lst : fwd) std::shuffle(lst.begin(), lst.end(), rng);
  if (!breadth_first) {
    std::vector<int> pos(n, -1);
    std::vector<int> path;
    std::uniform_int_distribution<size_t> pick;
    long long budget = 64LL * n * n + 256;
    int v = tail;
    while (budget-- > 0) {
      if (pos[v] >= 0) {
        for (size_t k = pos[v] + 1; k < path.size(); ++k) pos[path[k]] = -1;
        path.resize(pos[v] + 1);
      } else {
        pos[v] = static_cast<int>(path.size());
        path.push_back(v);
      }
      if (v == head) return path;
      if (fwd[v].empty()) break;
      v = fwd[v][pick(rng, std::uniform_int_distribution<size_t>::param_type(
                               0, fwd[v].size() - 1))];
    }
    // Walk failed; fall through to the breadth-first search.
  }
  std::vector<int> parent(n, -2);
  parent[tail] = -1;
  std::vector<int> queue{tail};
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int v = queue[qi];
    for (int w : fwd[v]) {
      if (parent[w] != -2) continue;
      parent[w] = v;
      if (w == head) {
        std::vector<int> path;
        for (int x = head; x != -1; x = parent[x]) path.push_back(x);
        std::reverse(path.begin(), path.end());
        return path;
      }
      queue.push_back(w);
    }
  }
  return {};
}

}  // namespace

MoveOutcome round_swap(Timetable& t, int q, int s) {
  if (q < 0 || q >= t.r() || s < 0 || s >= t.r()) throw RangeError("round id out of range");
  if (q == s) throw SameRound("round swap needs two distinct rounds");
  MoveOutcome out;
  std::vector<Stage> stages;
  for (int e = 0; e < t.num_edges(); ++e) {
    int c = t.color_of_edge(e);
    if (c != q && c != s) continue;
    stages.push_back({e, c == q ? s : q, t.home_lo_of(e)});
    auto [lo, hi] = t.edge_teams(e);
    touch_team(out, lo);
    touch_team(out, hi);
  }
  touch_round(out, q);
  touch_round(out, s);
  commit(t, out.journal, stages);
  finalize(t, out);
  return out;
}

MoveOutcome partial_round_swap(Timetable& t, int q, int s, Rng& rng) {
  if (q == s) throw SameRound("partial round swap needs two distinct rounds");
  auto cycles = bichromatic_cycles(t, q, s);
  std::uniform_int_distribution<size_t> pick(0, cycles.size() - 1);
  return partial_round_swap_cycle(t, cycles[pick(rng)]);
}

MoveOutcome partial_round_swap_cycle(Timetable& t, const BichromaticCycle& cyc) {
  const auto& v = cyc.vertices;
  if (v.size() < 4 || v.size() % 2 != 0) throw NotACycle("bichromatic cycles have even length >= 4");
  MoveOutcome out;
  std::vector<Stage> stages;
  for (size_t k = 0; k < v.size(); ++k) {
    int a = v[k];
    int b = v[(k + 1) % v.size()];
    int e = t.edge_index(a, b);
    int want = k % 2 == 0 ? cyc.q : cyc.s;
    if (t.color_of_edge(e) != want) throw NotACycle("cycle does not alternate the two rounds");
    stages.push_back({e, want == cyc.q ? cyc.s : cyc.q, t.home_lo_of(e)});
    touch_team(out, a);
  }
  touch_round(out, cyc.q);
  touch_round(out, cyc.s);
  commit(t, out.journal, stages);
  finalize(t, out);
  return out;
}

MoveOutcome team_swap(Timetable& t, int i, int j) {
  if (i < 0 || i >= t.n() || j < 0 || j >= t.n()) throw RangeError("team id out of range");
  if (i == j) throw SameTeam("team swap needs two distinct teams");
  MoveOutcome out;
  std::vector<Stage> stages;
  touch_team(out, i);
  touch_team(out, j);
  for (int x = 0; x < t.n(); ++x) {
    if (x == i || x == j) continue;
    int ei = t.edge_index(i, x);
    int ej = t.edge_index(j, x);
    int ci = t.color_of_edge(ei);
    int cj = t.color_of_edge(ej);
    if (ci == kUncolored && cj == kUncolored) continue;
    touch_team(out, x);
    if (ci != kUncolored) touch_round(out, ci);
    if (cj != kUncolored) touch_round(out, cj);
    int hi = ci == kUncolored ? kNoTeam : t.home_team_edge(ei);
    int hj = cj == kUncolored ? kNoTeam : t.home_team_edge(ej);
    // The game of {i,x} moves to {j,x}; a home team of i relabels to j.
    stages.push_back({ej, ci, ci == kUncolored ? std::int8_t(-1)
                                               : encode_home(t, ej, hi == i ? j : x)});
    stages.push_back({ei, cj, cj == kUncolored ? std::int8_t(-1)
                                               : encode_home(t, ei, hj == j ? i : x)});
  }
  int eij = t.edge_index(i, j);
  if (t.color_of_edge(eij) != kUncolored) {
    int h = t.home_team_edge(eij);
    stages.push_back({eij, t.color_of_edge(eij), encode_home(t, eij, h == i ? j : i)});
    touch_round(out, t.color_of_edge(eij));
  }
  commit(t, out.journal, stages);
  finalize(t, out);
  return out;
}

MoveOutcome cycle_reversal(Timetable& t, const BalancedCycle& cyc) {
  const auto& v = cyc.vertices;
  if (v.size() < 3) throw NotACycle("directed cycles need at least three vertices");
  std::vector<int> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw NotACycle("cycle repeats a vertex");
  for (size_t k = 0; k < v.size(); ++k) {
    int a = v[k];
    int b = v[(k + 1) % v.size()];
    if (t.color_of(a, b) == kUncolored || t.home_team(a, b) != b)
      throw NotACycle("cycle arcs must be colored and oriented forward");
  }
  MoveOutcome out;
  for (size_t k = 0; k < v.size(); ++k) {
    int e = t.edge_index(v[k], v[(k + 1) % v.size()]);
    flip_arc(t, out.journal, e);
    touch_round(out, t.color_of_edge(e));
    touch_team(out, v[k]);
  }
  finalize(t, out);
  return out;
}

MoveOutcome path_reversal(Timetable& t, const DirectedPath& p) {
  const auto& v = p.vertices;
  if (v.size() < 2) throw NotAPath("paths need at least one arc");
  std::vector<int> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw NotAPath("path repeats a vertex");
  for (size_t k = 0; k + 1 < v.size(); ++k)
    if (t.color_of(v[k], v[k + 1]) == kUncolored || t.home_team(v[k], v[k + 1]) != v[k + 1])
      throw NotAPath("path arcs must be colored and oriented forward");
  MoveOutcome out;
  for (size_t k = 0; k + 1 < v.size(); ++k) {
    int e = t.edge_index(v[k], v[k + 1]);
    flip_arc(t, out.journal, e);
    touch_round(out, t.color_of_edge(e));
  }
  for (int x : v) touch_team(out, x);
  finalize(t, out);
  return out;
}

RepairStats restore_balance(Timetable& t, Rng& rng, double bfs_probability) {
  MoveOutcome scratch;
  return repair_journaled(t, rng, bfs_probability, scratch);
}

Lantern build_lantern(const Timetable& t, int i, int j, int s) {
  if (i < 0 || i >= t.n() || j < 0 || j >= t.n()) throw RangeError("team id out of range");
  if (i == j) throw SameTeam("lantern poles must differ");
  if (s < 0 || s >= t.r()) throw RangeError("round id out of range");
  if (t.color_of(i, j) == s)
    throw DegenerateChain("starting round is the poles' own game");

  // Follows middles w = o(a, color) and next colors c({b, w}) until the color
  // chain returns to s (closed) or reaches an uncolored edge (open).
  auto run_chain = [&](int a, int b, std::vector<int>& middles) -> bool {
    int color = s;
    for (int step = 0; step <= t.r() + 1; ++step) {
      int w = t.opponent(a, color);
      if (w == b) throw DegenerateChain("chain ran into a pole");
      middles.push_back(w);
      int next = t.color_of(b, w);
      if (next == kUncolored) return false;
      if (next == s) return true;
      color = next;
    }
    throw Error("lantern chain failed to terminate");
  };

  Lantern lan;
  lan.i = i;
  lan.j = j;
  std::vector<int> j_middles;
  bool closed = run_chain(i, j, j_middles);
  if (closed) {
    lan.kind = Lantern::Kind::kColorfulChordless;
    lan.middles = std::move(j_middles);
    return lan;
  }
  lan.kind = Lantern::Kind::kIncomplete;
  lan.w_j = j_middles.back();
  lan.c_i = t.color_of(i, lan.w_j);
  std::vector<int> i_middles;
  run_chain(j, i, i_middles);
  lan.w_i = i_middles.back();
  lan.c_j = t.color_of(j, lan.w_i);
  for (int w : i_middles)
    if (std::find(j_middles.begin(), j_middles.end(), w) != j_middles.end())
      throw DegenerateChain("the two chains share a middle team");
  lan.middles = std::move(j_middles);
  lan.middles.insert(lan.middles.end(), i_middles.begin(), i_middles.end());
  return lan;
}

namespace {

std::optional<MoveOutcome> ipts_impl(Timetable& t, int i, int j, int s, Rng& rng,
                                     double bfs_probability, Lantern* out_lantern) {
  Lantern lan;
  try {
    lan = build_lantern(t, i, j, s);
  } catch (const DegenerateChain&) {
    return std::nullopt;
  }
  MoveOutcome out;
  std::vector<Stage> stages;
  touch_team(out, i);
  touch_team(out, j);
  for (int w : lan.middles) touch_team(out, w);

  bool incomplete = lan.kind == Lantern::Kind::kIncomplete;
  bool pole_i_home = false;
  bool pole_j_home = false;
  int delta_i = 0;
  int delta_j = 0;
  if (incomplete) {
    pole_i_home = t.is_home(i, lan.c_i);
    pole_j_home = t.is_home(j, lan.c_j);
    delta_i = team_delta(t, i);
    delta_j = team_delta(t, j);
  }

  for (int w : lan.middles) {
    int ei = t.edge_index(i, w);
    int ej = t.edge_index(j, w);
    int ci = t.color_of_edge(ei);
    int cj = t.color_of_edge(ej);
    if (ci != kUncolored) touch_round(out, ci);
    if (cj != kUncolored) touch_round(out, cj);
    if (w == lan.w_j) {
      // The pole-i edge releases its color to the new pole-j game; pole j
      // inherits pole i's old status in that round.
      stages.push_back({ei, kUncolored, -1});
      stages.push_back({ej, lan.c_i, encode_home(t, ej, pole_i_home ? j : w)});
    } else if (incomplete && w == lan.w_i) {
      stages.push_back({ej, kUncolored, -1});
      stages.push_back({ei, lan.c_j, encode_home(t, ei, pole_j_home ? i : w)});
    } else {
      stages.push_back({ei, cj, t.home_lo_of(ei)});
      stages.push_back({ej, ci, t.home_lo_of(ej)});
    }
  }
  commit(t, out.journal, stages);

  if (incomplete && pole_i_home != pole_j_home) {
    // Pole i shifted toward pole j's old status and vice versa. When that
    // leaves the band, one reversal of a path between the poles undoes the
    // shift; both endpoints return to their old, feasible imbalance.
    int shift = pole_j_home ? 2 : -2;  // i gains shift, j gains -shift
    const int slack = t.r() % 2 == 0 ? 0 : 1;
    if (std::abs(delta_i + shift) > slack || std::abs(delta_j - shift) > slack) {
      int tail = shift > 0 ? j : i;  // the pole that lost a home game
      int head = shift > 0 ? i : j;
      std::bernoulli_distribution use_bfs(bfs_probability);
      std::vector<int> path = pole_path(t, tail, head, use_bfs(rng), rng);
      if (path.empty()) {
        repair_journaled(t, rng, bfs_probability, out);
      } else {
        for (size_t k = 0; k + 1 < path.size(); ++k) {
          int e = t.edge_index(path[k], path[k + 1]);
          flip_arc(t, out.journal, e);
          touch_round(out, t.color_of_edge(e));
        }
        for (int x : path) touch_team(out, x);
      }
    }
  }
  finalize(t, out);
  if (out_lantern) *out_lantern = std::move(lan);
  return out;
}

}  // namespace

std::optional<MoveOutcome> ipts(Timetable& t, int i, int j, int s, Rng& rng,
                                double bfs_probability) {
  return ipts_impl(t, i, j, s, rng, bfs_probability, nullptr);
}

std::optional<MoveOutcome> ipts_cr(Timetable& t, int i, int j, int s, Rng& rng,
                                   double bfs_probability) {
  Lantern lan;
  auto out = ipts_impl(t, i, j, s, rng, bfs_probability, &lan);
  if (!out) return out;

  // Middles whose two lantern rounds traded home for away can be fixed in
  // pairs: one from each side forms a directed 4-cycle through the poles,
  // and reversing it restores both middles' home-away patterns.
  std::vector<int> w1;
  std::vector<int> w2;
  for (int w : lan.middles) {
    int ci = t.color_of(lan.i, w);
    int cj = t.color_of(lan.j, w);
    if (ci == kUncolored || cj == kUncolored) continue;
    bool home_vs_i = t.is_home(w, ci);
    bool home_vs_j = t.is_home(w, cj);
    if (!home_vs_i && home_vs_j) w1.push_back(w);
    if (home_vs_i && !home_vs_j) w2.push_back(w);
  }
  std::shuffle(w1.begin(), w1.end(), rng);
  std::shuffle(w2.begin(), w2.end(), rng);
  size_t pairs = std::min(w1.size(), w2.size());
  for (size_t k = 0; k < pairs; ++k) {
    for (int e : {t.edge_index(lan.i, w2[k]), t.edge_index(w2[k], lan.j),
                  t.edge_index(lan.j, w1[k]), t.edge_index(w1[k], lan.i)})
      flip_arc(t, out->journal, e);
  }
  return out;
}

namespace {

// Stages the swap of colored for uncolored edges along an s-alternating
// cycle. New games keep both round-s statuses where the old ones disagree;
// otherwise the host is drawn by lot. Returns true when any lot was drawn,
// in which case the caller must repair the balance.
bool stage_alternating_swap(const Timetable& t, const AlternatingCycle& cyc,
                            Rng& rng, MoveOutcome& out,
                            std::vector<Stage>& stages) {
  const auto& v = cyc.vertices;
  std::vector<char> was_home(v.size());
  for (size_t k = 0; k < v.size(); ++k) {
    was_home[k] = t.is_home(v[k], cyc.s);
    touch_team(out, v[k]);
  }
  bool lot = false;
  std::bernoulli_distribution coin(0.5);
  for (size_t k = 0; k < v.size(); ++k) {
    int a = v[k];
    int b = v[(k + 1) % v.size()];
    int e = t.edge_index(a, b);
    bool ha = was_home[k];
    bool hb = was_home[(k + 1) % v.size()];
    if (k % 2 == 0) {
      stages.push_back({e, kUncolored, -1});
    } else if (ha != hb) {
      stages.push_back({e, cyc.s, encode_home(t, e, ha ? a : b)});
    } else {
      lot = true;
      stages.push_back({e, cyc.s, encode_home(t, e, coin(rng) ? a : b)});
    }
  }
  return lot;
}

}  // namespace

std::optional<MoveOutcome> iprs_b(Timetable& t, int s, Rng& rng) {
  auto cyc = find_balanced_alternating_cycle(t, s, rng);
  if (!cyc) return std::nullopt;
  MoveOutcome out;
  touch_round(out, s);
  std::vector<Stage> stages;
  // Balanced: every uncolored edge joins opposite statuses, so no lot.
  stage_alternating_swap(t, *cyc, rng, out, stages);
  commit(t, out.journal, stages);
  finalize(t, out);
  return out;
}

MoveOutcome iprs_u(Timetable& t, int s, Rng& rng, double bfs_probability) {
  AlternatingCycle cyc = find_alternating_cycle(t, s, rng);
  MoveOutcome out;
  touch_round(out, s);
  std::vector<Stage> stages;
  stage_alternating_swap(t, cyc, rng, out, stages);
  commit(t, out.journal, stages);
  repair_journaled(t, rng, bfs_probability, out);
  finalize(t, out);
  return out;
}

MoveOutcome iprs_cycle(Timetable& t, const AlternatingCycle& cyc, Rng& rng,
                       double bfs_probability) {
  const auto& v = cyc.vertices;
  if (v.size() < 4 || v.size() % 2 != 0)
    throw NotACycle("alternating cycles have even length >= 4");
  if (cyc.s < 0 || cyc.s >= t.r()) throw RangeError("round id out of range");
  std::vector<char> seen(static_cast<size_t>(t.n()), 0);
  for (int x : v) {
    if (x < 0 || x >= t.n()) throw RangeError("team id out of range");
    if (seen[static_cast<size_t>(x)]) throw NotACycle("cycle repeats a vertex");
    seen[static_cast<size_t>(x)] = 1;
  }
  for (size_t k = 0; k < v.size(); ++k) {
    int c = t.color_of(v[k], v[(k + 1) % v.size()]);
    if (k % 2 == 0 ? c != cyc.s : c != kUncolored)
      throw NotACycle("cycle does not alternate the round with uncolored edges");
  }
  MoveOutcome out;
  touch_round(out, cyc.s);
  std::vector<Stage> stages;
  stage_alternating_swap(t, cyc, rng, out, stages);
  commit(t, out.journal, stages);
  repair_journaled(t, rng, bfs_probability, out);
  finalize(t, out);
  return out;
}

}  // namespace irr
