#ifndef IRR_IO_HPP
#define IRR_IO_HPP

#include <string>

#include "irr/instance.hpp"
#include "irr/timetable.hpp"

namespace irr {

// Solution grid: header R1,...,Rr, then one row per game slot with
// "home-away" cells, teams 1-based. The writer sorts each round by home
// team, so write(parse(write(t))) is byte-identical. The parser maps
// columns through the header and accepts rows in any order; malformed text
// throws ParseError, while cells that describe a clashing schedule
// propagate DuplicatePairing / RoundClash.
std::string write_solution_csv(const Timetable& t);
void write_solution_csv(const Timetable& t, const std::string& path);
Timetable parse_solution_csv(const std::string& text);
Timetable read_solution_csv(const std::string& path);

// Distance-matrix instance text: first token the team count, then n*n
// distances row-major, any whitespace layout. The round count is not part
// of the format and is supplied by the caller. ParseError carries line and
// column of the offending token.
ITTPInstance parse_ittp_text(const std::string& text, int rounds);
ITTPInstance read_ittp(const std::string& path, int rounds);
std::string write_ittp_text(const ITTPInstance& inst);
void write_ittp(const ITTPInstance& inst, const std::string& path);

// Sectioned instance text with TEAMS/ROUNDS/CLUBS/CAPACITIES/ELIGIBLE/
// DISTANCES/LIMITS, 1-based ids, lossless round trip. Structural problems
// throw ParseError; well-formed files with inconsistent content (a team
// without a club, one-sided eligibility lists) throw ConsistencyError.
YSTPInstance parse_ystp_text(const std::string& text);
YSTPInstance read_ystp(const std::string& path);
std::string write_ystp_text(const YSTPInstance& inst);
void write_ystp(const YSTPInstance& inst, const std::string& path);

}  // namespace irr

#endif  // IRR_IO_HPP
