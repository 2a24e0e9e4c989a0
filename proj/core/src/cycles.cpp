#include "irr/cycles.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace irr {

namespace {

void rotate_min_first(std::vector<int>& v) {
  auto it = std::min_element(v.begin(), v.end());
  std::rotate(v.begin(), it, v.end());
}

// Rotates (and reverses when needed) an alternating cyclic sequence so that
// it starts at its minimum vertex while edge (v0,v1) keeps the primary color.
// The input must already satisfy the even-index convention.
std::vector<int> normalize_alternating(const std::vector<int>& v) {
  const int len = static_cast<int>(v.size());
  const int p = static_cast<int>(std::min_element(v.begin(), v.end()) - v.begin());
  const int dir = (p % 2 == 0) ? 1 : -1;
  std::vector<int> out(len);
  for (int k = 0; k < len; ++k) out[k] = v[((p + dir * k) % len + len) % len];
  return out;
}

std::uniform_int_distribution<int>::param_type upto(int hi) {
  return std::uniform_int_distribution<int>::param_type(0, hi);
}

// Adjacency along game arcs: fwd[v] lists the hosts of v's away games, bwd[v]
// the visitors of v's home games. Lists come back shuffled.
struct ArcLists {
  std::vector<std::vector<int>> fwd;
  std::vector<std::vector<int>> bwd;
};

ArcLists arc_lists(const Timetable& t, Rng& rng) {
  ArcLists a;
  a.fwd.resize(t.n());
  a.bwd.resize(t.n());
  for (int e = 0; e < t.num_edges(); ++e) {
    if (t.color_of_edge(e) == kUncolored) continue;
    auto [lo, hi] = t.edge_teams(e);
    int home = t.home_team_edge(e);
    int away = (home == lo) ? hi : lo;
    a.fwd[away].push_back(home);
    a.bwd[home].push_back(away);
  }
  for (auto& lst : a.fwd) std::shuffle(lst.begin(), lst.end(), rng);
  for (auto& lst : a.bwd) std::shuffle(lst.begin(), lst.end(), rng);
  return a;
}

std::optional<std::vector<int>> multi_source_bfs(const std::vector<std::vector<int>>& adj,
                                                 std::vector<int> sources,
                                                 const std::vector<char>& is_target,
                                                 Rng& rng) {
  const int n = static_cast<int>(adj.size());
  std::shuffle(sources.begin(), sources.end(), rng);
  std::vector<int> parent(n, -2);
  std::deque<int> queue;
  for (int s : sources) {
    parent[s] = -1;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : adj[v]) {
      if (parent[w] != -2) continue;
      parent[w] = v;
      if (is_target[w]) {
        std::vector<int> path;
        for (int x = w; x != -1; x = parent[x]) path.push_back(x);
        std::reverse(path.begin(), path.end());
        return path;
      }
      queue.push_back(w);
    }
  }
  return std::nullopt;
}

// Random walk with loop erasure from source until a target is hit. Returns
// nothing if the step budget runs out.
std::optional<std::vector<int>> loop_erased_walk(const std::vector<std::vector<int>>& adj,
                                                 int source,
                                                 const std::vector<char>& is_target,
                                                 Rng& rng) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> pos(n, -1);
  std::vector<int> path;
  std::uniform_int_distribution<int> pick;
  long long budget = 64LL * n * n + 256;
  int v = source;
  while (budget-- > 0) {
    if (pos[v] >= 0) {
      for (size_t k = pos[v] + 1; k < path.size(); ++k) pos[path[k]] = -1;
      path.resize(pos[v] + 1);
    } else {
      pos[v] = static_cast<int>(path.size());
      path.push_back(v);
    }
    if (is_target[v]) return path;
    if (adj[v].empty()) return std::nullopt;
    v = adj[v][pick(rng, upto(static_cast<int>(adj[v].size()) - 1))];
  }
  return std::nullopt;
}

AlternatingCycle make_alternating(const Timetable& t, int s, std::vector<int> verts) {
  AlternatingCycle cyc;
  cyc.s = s;
  cyc.balanced = true;
  const int len = static_cast<int>(verts.size());
  for (int k = 0; k < len; ++k) {
    int a = verts[k];
    int b = verts[(k + 1) % len];
    int col = t.color_of(a, b);
    if (k % 2 == 0) {
      if (col != s) throw Error("alternating cycle lost its color pattern");
    } else {
      if (col != kUncolored) throw Error("alternating cycle lost its color pattern");
      if (t.home_status(a, s) == t.home_status(b, s)) cyc.balanced = false;
    }
  }
  cyc.vertices = normalize_alternating(verts);
  return cyc;
}

}  // namespace

BalancedCycle find_balanced_cycle(const Timetable& t, Rng& rng) {
  if (t.r() < 2) throw NoCycle("directed cycles need at least two rounds");
  const int n = t.n();
  ArcLists arcs = arc_lists(t, rng);
  std::uniform_int_distribution<int> pick;
  std::vector<int> pos(n, -1);
  std::vector<int> walk;
  int v = pick(rng, upto(n - 1));
  for (;;) {
    if (pos[v] >= 0) {
      walk.erase(walk.begin(), walk.begin() + pos[v]);
      break;
    }
    pos[v] = static_cast<int>(walk.size());
    walk.push_back(v);
    const auto& out = arcs.fwd[v];
    if (out.empty()) throw NoCycle("a team hosting every game cannot lie on a directed cycle");
    v = out[pick(rng, upto(static_cast<int>(out.size()) - 1))];
  }
  rotate_min_first(walk);
  return BalancedCycle{std::move(walk)};
}

std::vector<BichromaticCycle> bichromatic_cycles(const Timetable& t, int q, int s) {
  if (q < 0 || q >= t.r() || s < 0 || s >= t.r())
    throw RangeError("round id out of range");
  if (q == s) throw RangeError("bichromatic cycles need two distinct rounds");
  const int n = t.n();
  std::vector<char> used(n, 0);
  std::vector<BichromaticCycle> result;
  for (int v0 = 0; v0 < n; ++v0) {
    if (used[v0]) continue;
    BichromaticCycle cyc;
    cyc.q = q;
    cyc.s = s;
    int v = v0;
    int want = q;
    do {
      used[v] = 1;
      cyc.vertices.push_back(v);
      int w = t.opponent(v, want);
      if (w == kNoTeam)
        throw Error("every team must play in both rounds of a bichromatic decomposition");
      want = (want == q) ? s : q;
      v = w;
    } while (v != v0);
    result.push_back(std::move(cyc));
  }
  return result;
}

std::optional<DirectedPath> find_path_to_repair(const Timetable& t, Rng& rng,
                                                PathStrategy strategy) {
  ImbalanceReport rep = imbalance(t);
  if (rep.total_delta == 0) return std::nullopt;
  const int n = t.n();
  ArcLists arcs = arc_lists(t, rng);
  const bool r_even = t.r() % 2 == 0;

  // A repair path runs along game arcs from a team with excess away games to
  // one with excess home games; reversing it moves both endpoint imbalances
  // toward the allowed band. With an odd number of rounds only endpoints at
  // |delta| >= 3 still count, so a path may be walked from either end.
  std::vector<int> fwd_sources;
  std::vector<int> bwd_sources;
  std::vector<char> fwd_target(n, 0);
  std::vector<char> bwd_target(n, 0);
  for (int v = 0; v < n; ++v) {
    int d = rep.delta[v];
    if (r_even) {
      if (d <= -2) fwd_sources.push_back(v);
      if (d >= 2) fwd_target[v] = 1;
    } else {
      if (d <= -3) fwd_sources.push_back(v);
      if (d >= 1) fwd_target[v] = 1;
      if (d >= 3) bwd_sources.push_back(v);
      if (d <= -1) bwd_target[v] = 1;
    }
  }

  auto bfs_best = [&]() -> std::optional<std::vector<int>> {
    std::optional<std::vector<int>> a;
    std::optional<std::vector<int>> b;
    if (!fwd_sources.empty()) a = multi_source_bfs(arcs.fwd, fwd_sources, fwd_target, rng);
    if (!bwd_sources.empty()) b = multi_source_bfs(arcs.bwd, bwd_sources, bwd_target, rng);
    if (b) std::reverse(b->begin(), b->end());
    if (a && b) {
      if (a->size() != b->size()) return a->size() < b->size() ? a : b;
      return std::bernoulli_distribution(0.5)(rng) ? a : b;
    }
    return a ? a : b;
  };

  std::optional<std::vector<int>> path;
  if (strategy == PathStrategy::kBreadthFirst) {
    path = bfs_best();
  } else {
    size_t total = fwd_sources.size() + bwd_sources.size();
    std::uniform_int_distribution<size_t> pick(0, total - 1);
    size_t k = pick(rng);
    if (k < fwd_sources.size()) {
      path = loop_erased_walk(arcs.fwd, fwd_sources[k], fwd_target, rng);
    } else {
      path = loop_erased_walk(arcs.bwd, bwd_sources[k - fwd_sources.size()], bwd_target, rng);
      if (path) std::reverse(path->begin(), path->end());
    }
    if (!path) path = bfs_best();
  }
  if (!path) throw Error("imbalanced orientation with no repair path");
  return DirectedPath{std::move(*path)};
}

std::optional<AlternatingCycle> find_balanced_alternating_cycle(const Timetable& t, int s,
                                                                Rng& rng) {
  if (s < 0 || s >= t.r()) throw RangeError("round id out of range");
  const int n = t.n();
  for (int v = 0; v < n; ++v)
    if (t.opponent(v, s) == kNoTeam)
      throw Error("every team must play in the chosen round");

  // Digraph on all teams: game arcs of round s run away->home, uncolored
  // edges between a round-s home team and a round-s away team run home->away.
  // Directed cycles alternate between the two arc kinds by construction.
  std::vector<std::vector<int>> adj(n);
  for (int e = 0; e < t.num_edges(); ++e) {
    auto [lo, hi] = t.edge_teams(e);
    int col = t.color_of_edge(e);
    if (col == s) {
      int home = t.home_team_edge(e);
      int away = (home == lo) ? hi : lo;
      adj[away].push_back(home);
    } else if (col == kUncolored) {
      bool lo_home = t.home_status(lo, s) == HomeStatus::kHome;
      bool hi_home = t.home_status(hi, s) == HomeStatus::kHome;
      if (lo_home == hi_home) continue;
      if (lo_home)
        adj[lo].push_back(hi);
      else
        adj[hi].push_back(lo);
    }
  }
  for (auto& lst : adj) std::shuffle(lst.begin(), lst.end(), rng);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<char> state(n, 0);  // 0 fresh, 1 on stack, 2 done
  std::vector<int> path;
  std::vector<size_t> edge_at;
  for (int root : order) {
    if (state[root] != 0) continue;
    path.assign(1, root);
    edge_at.assign(1, 0);
    state[root] = 1;
    while (!path.empty()) {
      int v = path.back();
      if (edge_at.back() < adj[v].size()) {
        int w = adj[v][edge_at.back()++];
        if (state[w] == 1) {
          auto it = std::find(path.begin(), path.end(), w);
          std::vector<int> verts(it, path.end());
          if (t.color_of(verts[0], verts[1]) != s)
            std::rotate(verts.begin(), verts.begin() + 1, verts.end());
          return make_alternating(t, s, std::move(verts));
        }
        if (state[w] == 0) {
          state[w] = 1;
          path.push_back(w);
          edge_at.push_back(0);
        }
      } else {
        state[v] = 2;
        path.pop_back();
        edge_at.pop_back();
      }
    }
  }
  return std::nullopt;
}

namespace {

std::optional<AlternatingCycle> labeled_dfs_pass(const Timetable& t, int s, Rng& rng) {
  const int n = t.n();
  std::vector<std::vector<int>> unc(n);
  for (int e = 0; e < t.num_edges(); ++e) {
    if (t.color_of_edge(e) != kUncolored) continue;
    auto [lo, hi] = t.edge_teams(e);
    unc[lo].push_back(hi);
    unc[hi].push_back(lo);
  }
  for (auto& lst : unc) std::shuffle(lst.begin(), lst.end(), rng);
  std::vector<int> roots(n);
  std::iota(roots.begin(), roots.end(), 0);
  std::shuffle(roots.begin(), roots.end(), rng);

  // Labeled depth-first search. A vertex with an odd label extends along
  // uncolored edges, a vertex with an even label only along its round-s game.
  // Meeting an even-labeled vertex closes an alternating cycle, and so does
  // meeting the current root from an even vertex: the root left along an
  // uncolored edge and the closing edge is its round-s game, so the
  // alternation stays intact. Exhausted vertices reset to unlabeled;
  // exhausted roots keep label 1 and are skipped for good.
  std::vector<int> label(n, 0);
  std::vector<int> parent(n, -1);
  std::vector<int> cursor(n, 0);
  long long steps = 0;
  const long long step_cap = 32LL * n * n + 64;

  auto next_candidate = [&](int v) -> int {
    if (label[v] % 2 == 0) {
      if (cursor[v] == 0) {
        ++cursor[v];
        return t.opponent(v, s);
      }
      return -1;
    }
    if (cursor[v] < static_cast<int>(unc[v].size())) return unc[v][cursor[v]++];
    return -1;
  };

  for (int root : roots) {
    if (label[root] != 0) continue;
    label[root] = 1;
    parent[root] = -1;
    cursor[root] = 0;
    int v = root;
    for (;;) {
      if (++steps > step_cap)
        throw Error("alternating cycle search exceeded its step budget");
      int w = next_candidate(v);
      if (w < 0) {
        int back = parent[v];
        if (back < 0) break;
        label[v] = 0;
        cursor[v] = 0;
        parent[v] = -1;
        v = back;
        continue;
      }
      if (label[w] == 0) {
        label[w] = label[v] + 1;
        parent[w] = v;
        cursor[w] = 0;
        v = w;
        continue;
      }
      bool root_closure = (w == root && label[v] % 2 == 0);
      if (label[w] % 2 == 0 || root_closure) {
        std::vector<int> verts;
        for (int x = v; x != w; x = parent[x]) verts.push_back(x);
        verts.push_back(w);
        std::reverse(verts.begin(), verts.end());
        if (root_closure)
          std::rotate(verts.begin(), verts.begin() + 1, verts.end());
        return make_alternating(t, s, std::move(verts));
      }
      // Odd label elsewhere: the edge closes an odd walk, not an
      // alternating cycle.
    }
  }
  return std::nullopt;
}

}  // namespace

AlternatingCycle find_alternating_cycle(const Timetable& t, int s, Rng& rng) {
  if (s < 0 || s >= t.r()) throw RangeError("round id out of range");
  for (int attempt = 0; attempt < 64; ++attempt) {
    auto cyc = labeled_dfs_pass(t, s, rng);
    if (cyc) return std::move(*cyc);
  }
  throw NoCycle("no alternating cycle exists for this round");
}

}  // namespace irr
