#include "irr/instance.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <random>

namespace irr {

bool DistanceMatrix::symmetric() const {
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (at(i, j) != at(j, i)) return false;
  return true;
}

long long DistanceMatrix::max_value() const {
  long long best = 0;
  for (long long v : d) best = std::max(best, v);
  return best;
}

void YSTPInstance::set_eligible(int i, int j, bool value) {
  eligible[static_cast<size_t>(i) * n + j] = value ? 1 : 0;
  eligible[static_cast<size_t>(j) * n + i] = value ? 1 : 0;
}

long long YSTPInstance::p_inelig() const {
  if (p_inelig_override >= 0) return p_inelig_override;
  long long base = std::max<long long>(1, distances.max_value());
  return 10 * base * n * r;
}

void YSTPInstance::check() const {
  if (n <= 0 || r <= 0) throw ConsistencyError("instance has no teams or no rounds");
  if (distances.n != n) throw ConsistencyError("distance matrix size differs from team count");
  if (static_cast<int>(club_of.size()) != n) throw ConsistencyError("club_of must cover every team");
  for (int i = 0; i < n; ++i)
    if (club_of[i] < 0 || club_of[i] >= num_clubs)
      throw ConsistencyError("team " + std::to_string(i + 1) + " has no valid club");
  if (capacity.size() != static_cast<size_t>(num_clubs) * r)
    throw ConsistencyError("capacity table must be clubs x rounds");
  for (long long g : capacity)
    if (g < 0) throw ConsistencyError("negative venue capacity");
  if (eligible.size() != static_cast<size_t>(n) * n)
    throw ConsistencyError("eligibility table must be teams x teams");
  for (int i = 0; i < n; ++i) {
    if (is_eligible(i, i)) throw ConsistencyError("team marked eligible against itself");
    for (int j = 0; j < n; ++j)
      if (is_eligible(i, j) != is_eligible(j, i))
        throw ConsistencyError("one-sided eligibility between teams " + std::to_string(i + 1) +
                               " and " + std::to_string(j + 1));
  }
  if (v_plus < 0) throw ConsistencyError("negative capacity-violation budget");
  if (b_plus < 0 && b_plus != kUnlimitedBreaks) throw ConsistencyError("negative break limit");
}

const char* family_name(Family family) {
  switch (family) {
    case Family::kCon: return "CON";
    case Family::kCirc: return "CIRC";
    case Family::kLine: return "LINE";
    case Family::kIncr: return "INCR";
    case Family::kGal: return "GAL";
  }
  return "?";
}

Family family_from_string(const std::string& name) {
  std::string up = name;
  for (char& c : up) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (up == "CON") return Family::kCon;
  if (up == "CIRC") return Family::kCirc;
  if (up == "LINE") return Family::kLine;
  if (up == "INCR") return Family::kIncr;
  if (up == "GAL") return Family::kGal;
  throw ParseError("unknown instance family: " + name);
}

ITTPInstance generate_family(Family family, int n, int r, std::uint64_t seed) {
  if (n < 4 || n % 2 != 0) throw RangeError("family instances need an even team count >= 4");
  if (r < 1 || r >= n - 1) throw RangeError("rounds must satisfy 1 <= r <= n-2");
  ITTPInstance inst;
  inst.n = n;
  inst.r = r;
  inst.distances = DistanceMatrix(n);
  auto& m = inst.distances;
  switch (family) {
    case Family::kCon:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j) m.at(i, j) = 1;
      break;
    case Family::kCirc:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          int gap = std::abs(i - j);
          m.at(i, j) = std::min(gap, n - gap);
        }
      break;
    case Family::kLine:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = std::abs(i - j);
      break;
    case Family::kIncr: {
      // Consecutive gaps grow linearly: team k sits at k(k+1)/2.
      std::vector<long long> pos(n);
      for (int i = 0; i < n; ++i) pos[i] = static_cast<long long>(i) * (i + 1) / 2;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = std::abs(pos[i] - pos[j]);
      break;
    }
    case Family::kGal: {
      Rng rng(seed ^ 0x6a1a6a1a5eedULL);
      std::uniform_real_distribution<double> coord(0.0, 1000.0);
      std::vector<std::array<double, 3>> pts(n);
      for (auto& p : pts) p = {coord(rng), coord(rng), coord(rng)};
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (i == j) continue;
          double dx = pts[i][0] - pts[j][0];
          double dy = pts[i][1] - pts[j][1];
          double dz = pts[i][2] - pts[j][2];
          m.at(i, j) = std::llround(std::sqrt(dx * dx + dy * dy + dz * dz));
        }
      break;
    }
  }
  return inst;
}

YSTPInstance generate_synthetic_ystp(int n, int r, std::uint64_t seed) {
  if (n < 4 || n % 2 != 0) throw RangeError("synthetic instances need an even team count >= 4");
  if (r < 1 || r >= n - 1) throw RangeError("rounds must satisfy 1 <= r <= n-2");
  Rng rng(seed * 0x9e3779b97f4a7c15ULL + 0x5eed);
  YSTPInstance inst;
  inst.n = n;
  inst.r = r;

  // Seeded planar points keep the travel structure non-trivial.
  inst.distances = DistanceMatrix(n);
  std::uniform_real_distribution<double> coord(0.0, 100.0);
  std::vector<std::pair<double, double>> pts(n);
  for (auto& p : pts) p = {coord(rng), coord(rng)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      double dx = pts[i].first - pts[j].first;
      double dy = pts[i].second - pts[j].second;
      inst.distances.at(i, j) = std::llround(std::sqrt(dx * dx + dy * dy)) + 1;
    }

  // Clubs of three-ish teams, assigned in order.
  int club_size = (n <= 6) ? 2 : 3;
  inst.num_clubs = (n + club_size - 1) / club_size;
  inst.club_of.resize(n);
  for (int i = 0; i < n; ++i) inst.club_of[i] = i / club_size;

  inst.capacity.assign(static_cast<size_t>(inst.num_clubs) * r, 0);
  std::vector<int> size_of(inst.num_clubs, 0);
  for (int i = 0; i < n; ++i) ++size_of[inst.club_of[i]];
  for (int c = 0; c < inst.num_clubs; ++c)
    for (int s = 0; s < r; ++s) inst.gamma(c, s) = (size_of[c] + 1) / 2;

  // Full eligibility minus a sparse set of forbidden pairings; every team
  // keeps plenty of partners so feasible timetables always exist.
  inst.eligible.assign(static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) inst.eligible[static_cast<size_t>(i) * n + j] = 1;
  if (n >= 8) {
    std::uniform_int_distribution<int> pick(0, n - 1);
    int removals = n / 4;
    std::vector<int> banned(n, 0);
    for (int k = 0; k < removals; ++k) {
      int i = pick(rng);
      int j = pick(rng);
      if (i == j || banned[i] >= 1 || banned[j] >= 1) continue;
      if (!inst.is_eligible(i, j)) continue;
      inst.set_eligible(i, j, false);
      ++banned[i];
      ++banned[j];
    }
  }

  inst.v_plus = std::max(1, n / 8);
  inst.b_plus = kUnlimitedBreaks;
  inst.half_balance_enabled = false;
  inst.no_edge_breaks_enabled = false;
  inst.check();
  return inst;
}

}  // namespace irr
