#include "irr/timetable.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace irr {

Timetable::Timetable(int n, int r) : n_(n), r_(r) {
  if (n < 4 || n % 2 != 0) throw RangeError("team count must be even and >= 4");
  if (r < 1 || r >= n - 1) throw RangeError("round count must satisfy 1 <= r < n-1");
  color_.assign(static_cast<std::size_t>(n) * (n - 1) / 2, kUncolored);
  home_lo_.assign(color_.size(), -1);
  opp_.assign(static_cast<std::size_t>(n) * r, kNoTeam);
}

int Timetable::edge_index(int i, int j) const {
  if (i == j || i < 0 || j < 0 || i >= n_ || j >= n_) throw RangeError("bad edge endpoints");
  if (i > j) std::swap(i, j);
  return i * n_ - i * (i + 1) / 2 + (j - i - 1);
}

std::pair<int, int> Timetable::edge_teams(int e) const {
  // Inverse of edge_index; linear scan over rows is fine for n <= a few hundred.
  int i = 0;
  int row = n_ - 1;
  while (e >= row) {
    e -= row;
    --row;
    ++i;
  }
  return {i, i + 1 + e};
}

int Timetable::home_team(int i, int j) const { return home_team_edge(edge_index(i, j)); }

int Timetable::home_team_edge(int e) const {
  if (home_lo_[e] < 0) return kNoTeam;
  auto [lo, hi] = edge_teams(e);
  return home_lo_[e] ? lo : hi;
}

HomeStatus Timetable::home_status(int i, int s) const {
  int j = opponent(i, s);
  if (j == kNoTeam) throw RangeError("team is idle in the queried round");
  return home_team(i, j) == i ? HomeStatus::kHome : HomeStatus::kAway;
}

void Timetable::set_game(int s, int home, int away) {
  if (s < 0 || s >= r_) throw RangeError("round out of range");
  int e = edge_index(home, away);
  if (color_[e] != kUncolored) throw DuplicatePairing("pair already scheduled");
  if (opponent(home, s) != kNoTeam || opponent(away, s) != kNoTeam)
    throw RoundClash("team already scheduled in this round");
  raw_set_color(e, s);
  home_lo_[e] = (home < away) ? 1 : 0;
}

void Timetable::clear_game(int i, int j) {
  int e = edge_index(i, j);
  if (color_[e] == kUncolored) throw RangeError("edge has no game to clear");
  raw_set_color(e, kUncolored);
}

void Timetable::set_home(int i, int j, int team) {
  int e = edge_index(i, j);
  if (color_[e] == kUncolored) throw RangeError("cannot orient an uncolored edge");
  if (team != i && team != j) throw RangeError("home team must be an endpoint");
  auto [lo, hi] = edge_teams(e);
  (void)hi;
  home_lo_[e] = (team == lo) ? 1 : 0;
}

void Timetable::raw_set_color(int e, int c) {
  auto [lo, hi] = edge_teams(e);
  int old = color_[e];
  if (old != kUncolored) {
    opp_[lo * r_ + old] = kNoTeam;
    opp_[hi * r_ + old] = kNoTeam;
  }
  color_[e] = static_cast<std::int16_t>(c);
  if (c != kUncolored) {
    opp_[lo * r_ + c] = static_cast<std::int16_t>(hi);
    opp_[hi * r_ + c] = static_cast<std::int16_t>(lo);
  } else {
    home_lo_[e] = -1;
  }
}

Timetable Timetable::from_games(int n, int r, std::span<const Game> games) {
  Timetable t(n, r);
  for (const Game& g : games) t.set_game(g.round, g.home, g.away);
  for (int i = 0; i < n; ++i)
    for (int s = 0; s < r; ++s)
      if (!t.plays(i, s)) throw RoundClash("team idle in a round");
  return t;
}

bool Timetable::operator==(const Timetable& other) const {
  return n_ == other.n_ && r_ == other.r_ && color_ == other.color_ && home_lo_ == other.home_lo_;
}

std::size_t Timetable::hash() const {
  std::size_t h = std::hash<int>{}(n_ * 131 + r_);
  auto mix = [&h](std::size_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  for (std::size_t e = 0; e < color_.size(); ++e)
    mix(static_cast<std::size_t>(color_[e] + 2) * 3 + static_cast<std::size_t>(home_lo_[e] + 2));
  return h;
}

std::string Timetable::state_key(bool colors_only) const {
  std::string key;
  key.reserve(color_.size() * (colors_only ? 1 : 2));
  for (std::size_t e = 0; e < color_.size(); ++e) {
    key.push_back(static_cast<char>(color_[e] + 2));
    if (!colors_only) key.push_back(static_cast<char>(home_lo_[e] + 2));
  }
  return key;
}

std::string Timetable::to_table_string() const {
  std::ostringstream os;
  for (int s = 0; s < r_; ++s) {
    os << 'R' << (s + 1) << ':';
    for (int i = 0; i < n_; ++i) {
      int j = opponent(i, s);
      if (j == kNoTeam || j < i) continue;
      int h = home_team(i, j);
      int a = (h == i) ? j : i;
      os << ' ' << (h + 1) << '-' << (a + 1);
    }
    os << '\n';
  }
  return os.str();
}

ValidationReport validate(const Timetable& t) {
  ValidationReport rep;
  // C1 (each pair at most once) cannot be violated in this representation:
  // an edge has a single color slot. Report it as satisfied.
  for (int i = 0; i < t.n(); ++i) {
    int games = 0;
    for (int s = 0; s < t.r(); ++s) {
      if (t.plays(i, s))
        ++games;
      else {
        rep.c2_ok = false;
        rep.violations.push_back("C2: team " + std::to_string(i + 1) + " idle in round " +
                                 std::to_string(s + 1));
      }
    }
    (void)games;
  }
  if (rep.c2_ok) {
    ImbalanceReport imb = imbalance(t);
    if (!imb.balanced()) {
      rep.c3_ok = false;
      for (int i = 0; i < t.n(); ++i) {
        int limit = (t.r() % 2 == 0) ? 0 : 1;
        if (std::abs(imb.delta[i]) > limit)
          rep.violations.push_back("C3: team " + std::to_string(i + 1) +
                                   " home-away surplus " + std::to_string(imb.delta[i]));
      }
    }
  }
  return rep;
}

ImbalanceReport imbalance(const Timetable& t) {
  ImbalanceReport rep;
  rep.delta.assign(t.n(), 0);
  for (int e = 0; e < t.num_edges(); ++e) {
    if (t.color_of_edge(e) == kUncolored) continue;
    auto [lo, hi] = t.edge_teams(e);
    int home = t.home_team_edge(e);
    int away = (home == lo) ? hi : lo;
    rep.delta[home] += 1;
    rep.delta[away] -= 1;
  }
  int limit = (t.r() % 2 == 0) ? 0 : 1;
  for (int i = 0; i < t.n(); ++i) {
    int d = rep.delta[i];
    if (std::abs(d) > limit) rep.total_delta += std::abs(d);
    if (d > 0)
      rep.v_plus.push_back(i);
    else if (d < 0)
      rep.v_minus.push_back(i);
    else
      rep.v_zero.push_back(i);
  }
  return rep;
}

std::vector<int> breaks_of(const Timetable& t, int team) {
  std::vector<int> out;
  for (int s = 1; s < t.r(); ++s) {
    if (!t.plays(team, s) || !t.plays(team, s - 1)) continue;
    if (t.home_status(team, s) == t.home_status(team, s - 1)) out.push_back(s);
  }
  return out;
}

}  // namespace irr
