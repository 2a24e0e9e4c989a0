#ifndef IRR_TYPES_HPP
#define IRR_TYPES_HPP

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace irr {

// Teams and rounds are dense 0-based indices internally; all file and CLI
// surfaces are 1-based. Rounds double as edge colors.
inline constexpr int kUncolored = -1;
inline constexpr int kNoTeam = -1;

using Rng = std::mt19937_64;

enum class HomeStatus : std::uint8_t { kAway = 0, kHome = 1 };

// One scheduled game: `home` hosts `away` in round `round` (0-based).
struct Game {
  int round = 0;
  int home = 0;
  int away = 0;
};

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RangeError : Error {
  using Error::Error;
};
// Same pair scheduled twice (in any rounds).
struct DuplicatePairing : Error {
  using Error::Error;
};
// A team playing twice in a round, or idle in a round.
struct RoundClash : Error {
  using Error::Error;
};
struct SameRound : Error {
  using Error::Error;
};
struct SameTeam : Error {
  using Error::Error;
};
struct NotACycle : Error {
  using Error::Error;
};
struct NotAPath : Error {
  using Error::Error;
};
struct NoCycle : Error {
  using Error::Error;
};
// A lantern chain ran into one of the poles or into the other chain.
struct DegenerateChain : Error {
  using Error::Error;
};
struct SizeLimitError : Error {
  using Error::Error;
};
struct ConstructionFailed : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};
// Semantically inconsistent input file (e.g. one-sided eligibility lists).
struct ConsistencyError : ParseError {
  using ParseError::ParseError;
};
struct WriteError : Error {
  using Error::Error;
};

}  // namespace irr

#endif  // IRR_TYPES_HPP
