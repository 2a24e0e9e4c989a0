#include "irr/lab.hpp"

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "irr/construct.hpp"
#include "irr/moves.hpp"

namespace irr {
namespace {

constexpr long long kStateCap = 2'000'000;

struct Dsu {
  std::vector<int> parent;

  explicit Dsu(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[(std::size_t)x] != x) {
      parent[(std::size_t)x] = parent[(std::size_t)parent[(std::size_t)x]];
      x = parent[(std::size_t)x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    parent[(std::size_t)std::max(a, b)] = std::min(a, b);
  }
};

// Arcs of the oriented match graph, away -> home, neighbor lists sorted.
std::vector<std::vector<int>> oriented_out(const Timetable& t) {
  std::vector<std::vector<int>> out((std::size_t)t.n());
  for (int e = 0; e < t.num_edges(); ++e) {
    if (t.color_of_edge(e) == kUncolored) continue;
    auto [lo, hi] = t.edge_teams(e);
    const int home = t.home_team_edge(e);
    const int away = home == lo ? hi : lo;
    out[(std::size_t)away].push_back(home);
  }
  for (auto& lst : out) std::sort(lst.begin(), lst.end());
  return out;
}

}  // namespace

std::vector<BalancedCycle> all_directed_cycles(const Timetable& t) {
  const auto out = oriented_out(t);
  std::vector<BalancedCycle> cycles;
  std::vector<char> onpath((std::size_t)t.n(), 0);
  std::vector<int> path;
  auto rec = [&](auto&& self, int root, int v) -> void {
    for (int w : out[(std::size_t)v]) {
      if (w == root) {
        if (path.size() >= 3) cycles.push_back(BalancedCycle{path});
      } else if (w > root && !onpath[(std::size_t)w]) {
        onpath[(std::size_t)w] = 1;
        path.push_back(w);
        self(self, root, w);
        path.pop_back();
        onpath[(std::size_t)w] = 0;
      }
    }
  };
  for (int root = 0; root < t.n(); ++root) {
    path.assign(1, root);
    onpath[(std::size_t)root] = 1;
    rec(rec, root, root);
    onpath[(std::size_t)root] = 0;
  }
  return cycles;
}

// The root's round-s edge comes first, which fixes the traversal direction,
// so each cycle appears exactly once.
std::vector<AlternatingCycle> all_alternating_cycles(const Timetable& t, int s) {
  const int n = t.n();
  std::vector<int> mate((std::size_t)n, kNoTeam);
  for (int x = 0; x < n; ++x) mate[(std::size_t)x] = t.opponent(x, s);
  std::vector<std::vector<int>> unc((std::size_t)n);
  for (int e = 0; e < t.num_edges(); ++e) {
    if (t.color_of_edge(e) != kUncolored) continue;
    auto [a, b] = t.edge_teams(e);
    unc[(std::size_t)a].push_back(b);
    unc[(std::size_t)b].push_back(a);
  }
  for (auto& lst : unc) std::sort(lst.begin(), lst.end());

  std::vector<AlternatingCycle> cycles;
  std::vector<char> used((std::size_t)n, 0);
  std::vector<int> seq;
  auto emit = [&]() {
    AlternatingCycle c;
    c.vertices = seq;
    c.s = s;
    c.balanced = true;
    for (std::size_t k = 1; k < seq.size(); k += 2) {
      const int a = seq[k];
      const int b = seq[(k + 1) % seq.size()];
      if (t.is_home(a, s) == t.is_home(b, s)) {
        c.balanced = false;
        break;
      }
    }
    cycles.push_back(std::move(c));
  };
  auto rec = [&](auto&& self, int v0, int cur) -> void {
    for (int u : unc[(std::size_t)cur]) {
      if (u == v0) {
        emit();
      } else if (u > v0 && !used[(std::size_t)u]) {
        const int u2 = mate[(std::size_t)u];
        if (u2 > v0 && !used[(std::size_t)u2]) {
          used[(std::size_t)u] = used[(std::size_t)u2] = 1;
          seq.push_back(u);
          seq.push_back(u2);
          self(self, v0, u2);
          seq.pop_back();
          seq.pop_back();
          used[(std::size_t)u] = used[(std::size_t)u2] = 0;
        }
      }
    }
  };
  for (int v0 = 0; v0 < n; ++v0) {
    const int v1 = mate[(std::size_t)v0];
    if (v1 < v0) continue;
    seq = {v0, v1};
    used[(std::size_t)v0] = used[(std::size_t)v1] = 1;
    rec(rec, v0, v1);
    used[(std::size_t)v0] = used[(std::size_t)v1] = 0;
  }
  return cycles;
}

namespace {

// Every simple directed path from a delta -1 vertex to a delta +1 vertex;
// reversing one keeps the orientation balanced when r is odd.
std::vector<DirectedPath> balance_keeping_paths(const Timetable& t) {
  const auto out = oriented_out(t);
  const auto rep = imbalance(t);
  std::vector<DirectedPath> paths;
  std::vector<char> onpath((std::size_t)t.n(), 0);
  std::vector<int> seq;
  auto rec = [&](auto&& self, int v) -> void {
    for (int w : out[(std::size_t)v]) {
      if (onpath[(std::size_t)w]) continue;
      onpath[(std::size_t)w] = 1;
      seq.push_back(w);
      if (rep.delta[(std::size_t)w] == 1) paths.push_back(DirectedPath{seq});
      self(self, w);
      seq.pop_back();
      onpath[(std::size_t)w] = 0;
    }
  };
  for (int tail = 0; tail < t.n(); ++tail) {
    if (rep.delta[(std::size_t)tail] != -1) continue;
    seq.assign(1, tail);
    onpath[(std::size_t)tail] = 1;
    rec(rec, tail);
    onpath[(std::size_t)tail] = 0;
  }
  return paths;
}

struct SpaceBuilder {
  struct PairGame {
    int round;
    int lo;
    int hi;
  };

  int n;
  int r;
  EnumMode mode;
  bool reversed;
  SolutionSpace space;
  std::vector<std::vector<char>> used;
  std::vector<char> matched;
  std::vector<PairGame> games;
  std::vector<char> host_lo;
  std::vector<int> homes;
  std::vector<int> aways;
  int band;

  SpaceBuilder(int n_, int r_, EnumMode mode_, bool reversed_)
      : n(n_), r(r_), mode(mode_), reversed(reversed_) {
    if (n < 4 || n % 2 != 0) throw RangeError("team count must be even and at least 4");
    if (r < 1 || r >= n - 1) throw RangeError("rounds must satisfy 1 <= r < n - 1");
    if (n > 8) throw SizeLimitError("exhaustive enumeration is limited to n <= 8");
    space.n = n;
    space.r = r;
    space.mode = mode;
    used.assign((std::size_t)n, std::vector<char>((std::size_t)n, 0));
    matched.assign((std::size_t)n, 0);
    host_lo.assign((std::size_t)(r * n / 2), 0);
    band = (r + 1) / 2;
  }

  SolutionSpace run() {
    rec_round(0);
    return std::move(space);
  }

  void rec_round(int k) {
    if (k == r) {
      homes.assign((std::size_t)n, 0);
      aways.assign((std::size_t)n, 0);
      orient(0);
      return;
    }
    // The caller's round is fully matched; give this round a clean slate
    // and hand the all-matched state back on unwind.
    matched.assign((std::size_t)n, 0);
    rec_match(k, 0);
    matched.assign((std::size_t)n, 1);
  }

  void rec_match(int k, int placed) {
    if (placed == n / 2) {
      rec_round(k + 1);
      return;
    }
    int i = 0;
    while (matched[(std::size_t)i]) ++i;
    matched[(std::size_t)i] = 1;
    const int step = reversed ? -1 : 1;
    for (int j = reversed ? n - 1 : i + 1; j >= i + 1 && j < n; j += step) {
      if (matched[(std::size_t)j] || used[(std::size_t)i][(std::size_t)j]) continue;
      matched[(std::size_t)j] = 1;
      used[(std::size_t)i][(std::size_t)j] = 1;
      games.push_back(PairGame{k, i, j});
      rec_match(k, placed + 1);
      games.pop_back();
      used[(std::size_t)i][(std::size_t)j] = 0;
      matched[(std::size_t)j] = 0;
    }
    matched[(std::size_t)i] = 0;
  }

  // Assigns hosts within the balance band; with kColorings the first
  // complete assignment is kept as the representative and true bubbles up
  // to stop the unwinding.
  bool orient(std::size_t g) {
    if (g == games.size()) {
      push_state();
      return mode == EnumMode::kColorings;
    }
    const PairGame& gm = games[g];
    for (int pick = 0; pick < 2; ++pick) {
      const bool lower_hosts = (pick == 0) != reversed;
      const int home = lower_hosts ? gm.lo : gm.hi;
      const int away = lower_hosts ? gm.hi : gm.lo;
      if (homes[(std::size_t)home] == band || aways[(std::size_t)away] == band) continue;
      ++homes[(std::size_t)home];
      ++aways[(std::size_t)away];
      host_lo[g] = lower_hosts ? 1 : 0;
      if (orient(g + 1)) return true;
      --homes[(std::size_t)home];
      --aways[(std::size_t)away];
    }
    return false;
  }

  void push_state() {
    if ((long long)space.states.size() >= kStateCap)
      throw SizeLimitError("solution space exceeds the enumeration cap");
    std::vector<Game> oriented;
    oriented.reserve(games.size());
    for (std::size_t g = 0; g < games.size(); ++g) {
      const PairGame& gm = games[g];
      if (host_lo[g])
        oriented.push_back(Game{gm.round, gm.lo, gm.hi});
      else
        oriented.push_back(Game{gm.round, gm.hi, gm.lo});
    }
    Timetable t = Timetable::from_games(n, r, oriented);
    const int id = (int)space.states.size();
    if (!space.index.emplace(space.key_of(t), id).second)
      throw Error("enumeration produced a duplicate state");
    space.states.push_back(std::move(t));
  }
};

void append_sizes(std::ostringstream& os, const std::vector<int>& sizes) {
  const std::size_t shown = std::min<std::size_t>(sizes.size(), 20);
  for (std::size_t c = 0; c < shown; ++c) os << ' ' << sizes[c];
  if (shown < sizes.size()) os << " ...";
}

}  // namespace

std::string SolutionSpace::key_of(const Timetable& t) const {
  return t.state_key(mode == EnumMode::kColorings);
}

int SolutionSpace::find(const Timetable& t) const {
  const auto it = index.find(key_of(t));
  return it == index.end() ? -1 : it->second;
}

SolutionSpace enumerate_space(int n, int r, EnumMode mode) {
  return SpaceBuilder(n, r, mode, false).run();
}

SolutionSpace enumerate_space_alt(int n, int r, EnumMode mode) {
  return SpaceBuilder(n, r, mode, true).run();
}

std::string canonical_coloring_key(const Timetable& t) {
  const int n = t.n();
  const int r = t.r();
  if (n > 8) throw SizeLimitError("canonical keys are limited to n <= 8");
  std::vector<std::vector<std::pair<int, int>>> rounds((std::size_t)r);
  for (int e = 0; e < t.num_edges(); ++e) {
    const int c = t.color_of_edge(e);
    if (c == kUncolored) continue;
    rounds[(std::size_t)c].push_back(t.edge_teams(e));
  }
  std::vector<int> sigma((std::size_t)n);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::string best;
  std::vector<std::string> blobs((std::size_t)r);
  std::vector<std::pair<int, int>> relabeled;
  do {
    for (std::size_t s = 0; s < (std::size_t)r; ++s) {
      relabeled.clear();
      for (const auto& [a, b] : rounds[s]) {
        const int x = sigma[(std::size_t)a];
        const int y = sigma[(std::size_t)b];
        relabeled.emplace_back(std::min(x, y), std::max(x, y));
      }
      std::sort(relabeled.begin(), relabeled.end());
      std::string& blob = blobs[s];
      blob.clear();
      for (const auto& [x, y] : relabeled) {
        blob.push_back((char)('a' + x));
        blob.push_back((char)('a' + y));
      }
    }
    std::sort(blobs.begin(), blobs.end());
    std::string candidate;
    for (const auto& blob : blobs) {
      candidate += blob;
      candidate.push_back('/');
    }
    if (best.empty() || candidate < best) best = std::move(candidate);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return best;
}

bool perfect_one_factor_set(const Timetable& t) {
  const int n = t.n();
  std::vector<std::vector<int>> partner((std::size_t)t.r(),
                                        std::vector<int>((std::size_t)n));
  for (int s = 0; s < t.r(); ++s)
    for (int x = 0; x < n; ++x) partner[(std::size_t)s][(std::size_t)x] = t.opponent(x, s);
  for (int q = 0; q < t.r(); ++q) {
    for (int s = q + 1; s < t.r(); ++s) {
      int cur = 0;
      int len = 0;
      bool use_q = true;
      do {
        cur = use_q ? partner[(std::size_t)q][(std::size_t)cur]
                    : partner[(std::size_t)s][(std::size_t)cur];
        use_q = !use_q;
        ++len;
      } while (cur != 0);
      if (len != n) return false;
    }
  }
  return true;
}

ComponentReport check_connectivity(int n, int r,
                                   const std::vector<Neighborhood>& suite,
                                   EnumMode mode) {
  if (suite.empty()) throw RangeError("empty suite");
  for (const Neighborhood nb : suite) {
    if (mode == EnumMode::kColorings && nb == Neighborhood::kIPRSB)
      throw RangeError(
          "iPRS-B cycles depend on the orientation; its move graph is only "
          "defined over the full space");
    if (mode == EnumMode::kFull &&
        (nb == Neighborhood::kIPTS || nb == Neighborhood::kIPTSCR ||
         nb == Neighborhood::kIPRSU))
      throw RangeError(
          "moves that repair the orientation by lot have no deterministic "
          "arcs over the full space; use the coloring space");
  }

  ComponentReport rep;
  rep.space = enumerate_space(n, r, mode);
  rep.suite = suite;
  const SolutionSpace& sp = rep.space;
  const int num = (int)sp.states.size();
  Dsu dsu((std::size_t)num);
  std::unordered_set<long long> seen;
  Rng rng(0x1ab);  // repairs only steer orientations, never coloring arcs

  for (int u = 0; u < num; ++u) {
    Timetable t = sp.states[(std::size_t)u];
    auto record = [&](const MoveOutcome& out) {
      const int v = sp.find(t);
      out.undo(t);
      if (v < 0) throw Error("exhaustive move left the enumerated space");
      if (v == u) return;
      if (!seen.insert((long long)u * num + v).second) return;
      rep.arc_list.emplace_back(u, v);
      ++rep.arcs;
      dsu.unite(u, v);
    };
    for (const Neighborhood nb : suite) {
      switch (nb) {
        case Neighborhood::kRS:
          for (int q = 0; q < r; ++q)
            for (int s = q + 1; s < r; ++s) record(round_swap(t, q, s));
          break;
        case Neighborhood::kTS:
          for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) record(team_swap(t, i, j));
          break;
        case Neighborhood::kPRS:
          for (int q = 0; q < r; ++q)
            for (int s = q + 1; s < r; ++s)
              for (const auto& cyc : bichromatic_cycles(t, q, s))
                record(partial_round_swap_cycle(t, cyc));
          break;
        case Neighborhood::kCR:
          // Reversals keep the coloring, so they add nothing coloring-wise.
          if (mode == EnumMode::kFull)
            for (const auto& cyc : all_directed_cycles(t))
              record(cycle_reversal(t, cyc));
          break;
        case Neighborhood::kIPTS:
        case Neighborhood::kIPTSCR:
          // The trailing reversals of iPTS-CR keep the coloring, so both
          // variants contribute the same arcs here.
          for (int s = 0; s < r; ++s)
            for (int i = 0; i < n; ++i)
              for (int j = i + 1; j < n; ++j)
                if (auto out = ipts(t, i, j, s, rng)) record(*out);
          break;
        case Neighborhood::kIPRSU:
          for (int s = 0; s < r; ++s)
            for (const auto& cyc : all_alternating_cycles(t, s))
              record(iprs_cycle(t, cyc, rng));
          break;
        case Neighborhood::kIPRSB:
          for (int s = 0; s < r; ++s)
            for (const auto& cyc : all_alternating_cycles(t, s))
              if (cyc.balanced) record(iprs_cycle(t, cyc, rng));
          break;
      }
    }
  }

  rep.component_of.assign((std::size_t)num, -1);
  std::unordered_map<int, int> compact;
  for (int u = 0; u < num; ++u) {
    const int root = dsu.find(u);
    const auto it = compact.emplace(root, (int)compact.size()).first;
    rep.component_of[(std::size_t)u] = it->second;
    if (it->second == (int)rep.component_size.size()) rep.component_size.push_back(0);
    ++rep.component_size[(std::size_t)it->second];
  }
  rep.num_components = (int)compact.size();
  return rep;
}

std::string ComponentReport::summary() const {
  std::ostringstream os;
  os << "space n=" << space.n << " r=" << space.r << " ("
     << (space.mode == EnumMode::kColorings ? "colorings" : "full") << "): "
     << space.states.size() << " states\n";
  os << "suite:";
  for (const Neighborhood nb : suite) os << ' ' << neighborhood_name(nb);
  os << "\narcs: " << arcs << "\ncomponents: " << num_components << " (sizes:";
  append_sizes(os, component_size);
  os << ")\n";
  return os.str();
}

std::string ComponentReport::csv() const {
  std::ostringstream os;
  os << "component,size\n";
  for (std::size_t c = 0; c < component_size.size(); ++c)
    os << c << ',' << component_size[c] << '\n';
  return os.str();
}

CounterexampleReport verify_counterexample_r2(int n) {
  if (n < 6 || n % 2 != 0) throw RangeError("n must be even and at least 6");
  if (n > 8) throw SizeLimitError("closure exploration is limited to n <= 8");

  // Match graph one Hamiltonian cycle 0,1,...,n-1; even teams host round 0,
  // odd teams host round 1, so every game pairs opposite parities and every
  // parity class shares its status in each round.
  Timetable start(n, 2);
  for (int m = 0; m < n; m += 2) start.set_game(0, m, m + 1);
  for (int m = 1; m < n; m += 2) start.set_game(1, m, (m + 1) % n);

  CounterexampleReport rep(start);
  rep.n = n;
  for (int s = 0; s < 2; ++s)
    for (const auto& cyc : all_alternating_cycles(start, s))
      if (cyc.balanced) rep.balanced_cycle_in_round[(std::size_t)s] = true;

  std::vector<Timetable> todo{start};
  std::unordered_set<std::string> seen{start.state_key(false)};
  std::unordered_set<std::string> colorings{start.state_key(true)};
  Rng rng(0x2b17);
  auto audit = [&](const Timetable& t) {
    for (int e = 0; e < t.num_edges(); ++e) {
      if (t.color_of_edge(e) == kUncolored) continue;
      auto [a, b] = t.edge_teams(e);
      if ((a & 1) == (b & 1)) rep.same_parity_pairing_seen = true;
    }
  };
  audit(start);
  while (!todo.empty()) {
    Timetable cur = std::move(todo.back());
    todo.pop_back();
    auto enqueue = [&](const MoveOutcome& out) {
      if (seen.insert(cur.state_key(false)).second) {
        colorings.insert(cur.state_key(true));
        audit(cur);
        todo.push_back(cur);
      }
      out.undo(cur);
    };
    for (const auto& cyc : all_directed_cycles(cur)) {
      const MoveOutcome out = cycle_reversal(cur, cyc);
      if (!out.new_pairings.empty() || !out.dropped_pairings.empty())
        rep.cr_changed_pairings = true;
      enqueue(out);
    }
    for (int s = 0; s < 2; ++s)
      for (const auto& cyc : all_alternating_cycles(cur, s))
        if (cyc.balanced) enqueue(iprs_cycle(cur, cyc, rng));
  }
  rep.closure_states = (long long)seen.size();
  rep.closure_colorings = (long long)colorings.size();
  rep.total_colorings =
      (long long)enumerate_space(n, 2, EnumMode::kColorings).states.size();
  return rep;
}

std::string CounterexampleReport::summary() const {
  std::ostringstream os;
  os << "hamiltonian two-round instance, n=" << n << '\n';
  os << "balanced alternating cycle in round 1: "
     << (balanced_cycle_in_round[0] ? "yes" : "no") << ", round 2: "
     << (balanced_cycle_in_round[1] ? "yes" : "no") << '\n';
  os << "iPRS-B + CR closure: " << closure_states << " states over "
     << closure_colorings << " colorings\n";
  os << "colorings in the whole space: " << total_colorings << " (missed "
     << missed_colorings() << ")\n";
  os << "same-parity pairing seen: " << (same_parity_pairing_seen ? "yes" : "no")
     << ", CR changed pairings: " << (cr_changed_pairings ? "yes" : "no") << '\n';
  return os.str();
}

OrientationReport verify_orientation_connectivity(int n, int r) {
  if (n < 4 || n % 2 != 0) throw RangeError("team count must be even and at least 4");
  if (r < 1 || r >= n - 1) throw RangeError("rounds must satisfy 1 <= r < n - 1");
  if (n > 8) throw SizeLimitError("orientation enumeration is limited to n <= 8");

  const Timetable base = construct_circle(n, r);
  std::vector<Game> games;
  for (int e = 0; e < base.num_edges(); ++e) {
    const int c = base.color_of_edge(e);
    if (c == kUncolored) continue;
    auto [lo, hi] = base.edge_teams(e);
    games.push_back(Game{c, lo, hi});
  }
  std::sort(games.begin(), games.end(), [](const Game& a, const Game& b) {
    return a.round != b.round ? a.round < b.round : a.home < b.home;
  });

  std::vector<Timetable> states;
  std::unordered_map<std::string, int> index;
  std::vector<int> homes((std::size_t)n, 0);
  std::vector<int> aways((std::size_t)n, 0);
  const int band = (r + 1) / 2;
  auto rec = [&](auto&& self, std::size_t g) -> void {
    if (g == games.size()) {
      Timetable t = Timetable::from_games(n, r, games);
      index.emplace(t.state_key(false), (int)states.size());
      states.push_back(std::move(t));
      return;
    }
    const int lo = games[g].home;
    const int hi = games[g].away;
    for (int pick = 0; pick < 2; ++pick) {
      const int home = pick == 0 ? lo : hi;
      const int away = pick == 0 ? hi : lo;
      if (homes[(std::size_t)home] == band || aways[(std::size_t)away] == band) continue;
      games[g].home = home;
      games[g].away = away;
      ++homes[(std::size_t)home];
      ++aways[(std::size_t)away];
      self(self, g + 1);
      --homes[(std::size_t)home];
      --aways[(std::size_t)away];
    }
    games[g].home = lo;
    games[g].away = hi;
  };
  rec(rec, 0);

  OrientationReport rep;
  rep.n = n;
  rep.r = r;
  rep.orientations = (long long)states.size();
  Dsu dsu(states.size());
  for (int u = 0; u < (int)states.size(); ++u) {
    Timetable t = states[(std::size_t)u];
    auto record = [&](const MoveOutcome& out, long long& counter) {
      const auto it = index.find(t.state_key(false));
      out.undo(t);
      if (it == index.end()) throw Error("reversal left the orientation space");
      if (it->second == u) return;
      dsu.unite(u, it->second);
      ++counter;
    };
    for (const auto& cyc : all_directed_cycles(t)) record(cycle_reversal(t, cyc), rep.cr_arcs);
    for (const auto& p : balance_keeping_paths(t)) record(path_reversal(t, p), rep.pr_arcs);
  }
  std::unordered_set<int> roots;
  for (int u = 0; u < (int)states.size(); ++u) roots.insert(dsu.find(u));
  rep.num_components = (int)roots.size();
  return rep;
}

std::string OrientationReport::summary() const {
  std::ostringstream os;
  os << "circle coloring n=" << n << " r=" << r << ": " << orientations
     << " balanced orientations\n";
  os << "CR arcs: " << cr_arcs << ", PR arcs: " << pr_arcs
     << ", components: " << num_components << '\n';
  return os.str();
}

}  // namespace irr
