#ifndef IRR_INSTANCE_HPP
#define IRR_INSTANCE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "irr/types.hpp"

namespace irr {

// Pairwise venue distances. Symmetric for everything we generate; an
// asymmetric matrix is accepted but flagged so callers can warn.
struct DistanceMatrix {
  int n = 0;
  std::vector<long long> d;  // row-major n*n

  DistanceMatrix() = default;
  explicit DistanceMatrix(int teams) : n(teams), d(static_cast<size_t>(teams) * teams, 0) {}

  long long at(int i, int j) const { return d[static_cast<size_t>(i) * n + j]; }
  long long& at(int i, int j) { return d[static_cast<size_t>(i) * n + j]; }

  bool symmetric() const;
  long long max_value() const;

  bool operator==(const DistanceMatrix&) const = default;
};

struct ITTPInstance {
  int n = 0;
  int r = 0;
  DistanceMatrix distances;
};

inline constexpr long long kUnlimitedBreaks = -1;

struct YSTPInstance {
  int n = 0;
  int r = 0;
  DistanceMatrix distances;
  std::vector<int> club_of;        // team -> club, clubs dense 0-based
  int num_clubs = 0;
  std::vector<long long> capacity;  // (club, round) -> gamma, row-major club*r + round
  std::vector<std::uint8_t> eligible;  // n*n, symmetric, zero diagonal
  long long v_plus = 0;
  long long b_plus = kUnlimitedBreaks;
  bool half_balance_enabled = false;    // balanced home counts per half season
  bool no_edge_breaks_enabled = false;  // no break in round 2 or the last round
  long long p_inelig_override = -1;     // <0 keeps the default

  long long gamma(int club, int round) const {
    return capacity[static_cast<size_t>(club) * r + round];
  }
  long long& gamma(int club, int round) {
    return capacity[static_cast<size_t>(club) * r + round];
  }
  bool is_eligible(int i, int j) const { return eligible[static_cast<size_t>(i) * n + j] != 0; }
  void set_eligible(int i, int j, bool value);

  // Large enough that one ineligible pairing outweighs any travel total.
  long long p_inelig() const;

  // Throws ConsistencyError on asymmetric eligibility, clubless teams,
  // negative capacities, or shape mismatches.
  void check() const;

  bool operator==(const YSTPInstance&) const = default;
};

enum class Family { kCon, kCirc, kLine, kIncr, kGal };

const char* family_name(Family family);
Family family_from_string(const std::string& name);  // throws ParseError

// Synthetic travel geometries. CON/CIRC/LINE/INCR are deterministic; GAL
// draws seeded points in a cube.
ITTPInstance generate_family(Family family, int n, int r, std::uint64_t seed = 0);

// Random but always well-formed: full eligibility minus a few seeded pairs,
// small clubs, capacities that leave room for one home team per club most
// rounds. Used for the shipped data set and the enumeration cross-checks.
YSTPInstance generate_synthetic_ystp(int n, int r, std::uint64_t seed);

}  // namespace irr

#endif  // IRR_INSTANCE_HPP
