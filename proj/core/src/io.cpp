#include "irr/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace irr {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw WriteError("cannot open " + path + " for writing");
  out << text;
  if (!out.flush()) throw WriteError("short write to " + path);
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

bool parse_int(const std::string& s, long long& value) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  return ec == std::errc() && ptr == last;
}

// ---------------------------------------------------------------- solution

struct Cell {
  int round;
  int home;
  int away;
};

[[noreturn]] void fail_line(int line, const std::string& msg) {
  throw ParseError("line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

int parse_team(const std::string& token, int line) {
  long long v;
  if (!parse_int(token, v) || v < 1)
    fail_line(line, "bad team id '" + token + "'");
  return static_cast<int>(v - 1);
}

}  // namespace

std::string write_solution_csv(const Timetable& t) {
  std::vector<std::vector<std::pair<int, int>>> per_round(t.r());
  for (int i = 0; i < t.n(); ++i)
    for (int s = 0; s < t.r(); ++s) {
      int j = t.opponent(i, s);
      if (j != kNoTeam && t.is_home(i, s)) per_round[s].push_back({i, j});
    }
  size_t rows = 0;
  for (auto& games : per_round) {
    std::sort(games.begin(), games.end());
    rows = std::max(rows, games.size());
  }

  std::string out;
  for (int s = 0; s < t.r(); ++s) {
    if (s) out += ',';
    out += 'R';
    out += std::to_string(s + 1);
  }
  out += '\n';
  for (size_t row = 0; row < rows; ++row) {
    for (int s = 0; s < t.r(); ++s) {
      if (s) out += ',';
      if (row < per_round[s].size()) {
        auto [h, a] = per_round[s][row];
        out += std::to_string(h + 1);
        out += '-';
        out += std::to_string(a + 1);
      }
    }
    out += '\n';
  }
  return out;
}

void write_solution_csv(const Timetable& t, const std::string& path) {
  write_file(path, write_solution_csv(t));
}

Timetable parse_solution_csv(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;

  // Header maps each column to a 1-based round label; rows may then list
  // the rounds in any order.
  std::vector<int> col_round;
  while (std::getline(in, raw)) {
    ++lineno;
    if (trim(raw).empty()) continue;
    auto fields = split_on(raw, ',');
    std::vector<char> seen(fields.size() + 1, 0);
    for (auto& f : fields) {
      std::string label = trim(f);
      long long k;
      if (label.size() < 2 || label[0] != 'R' || !parse_int(label.substr(1), k) ||
          k < 1 || k > static_cast<long long>(fields.size()))
        fail_line(lineno, "header column '" + label + "' is not R1.." +
                              "R" + std::to_string(fields.size()));
      if (seen[k]) fail_line(lineno, "duplicate column " + label);
      seen[k] = 1;
      col_round.push_back(static_cast<int>(k - 1));
    }
    break;
  }
  if (col_round.empty()) throw ParseError("empty solution file");
  const int r = static_cast<int>(col_round.size());

  std::vector<Cell> cells;
  int max_team = -1;
  while (std::getline(in, raw)) {
    ++lineno;
    if (trim(raw).empty()) continue;
    auto fields = split_on(raw, ',');
    if (static_cast<int>(fields.size()) != r)
      fail_line(lineno, "row has " + std::to_string(fields.size()) +
                            " cells, expected " + std::to_string(r));
    for (int c = 0; c < r; ++c) {
      std::string cell = trim(fields[c]);
      if (cell.empty()) continue;
      size_t dash = cell.find('-');
      if (dash == std::string::npos || dash == 0 || dash + 1 == cell.size())
        fail_line(lineno, "cell '" + cell + "' is not home-away");
      int home = parse_team(cell.substr(0, dash), lineno);
      int away = parse_team(cell.substr(dash + 1), lineno);
      if (home == away) fail_line(lineno, "team " + std::to_string(home + 1) +
                                              " paired with itself");
      max_team = std::max({max_team, home, away});
      cells.push_back({col_round[c], home, away});
    }
  }
  if (cells.empty()) throw ParseError("solution has no games");

  Timetable t(max_team + 1, r);
  for (const auto& cell : cells) t.set_game(cell.round, cell.home, cell.away);
  return t;
}

Timetable read_solution_csv(const std::string& path) {
  return parse_solution_csv(read_file(path));
}

// ----------------------------------------------------------------- ittp

namespace {

// Whitespace-separated numbers with '#' comments; every token remembers
// where it started so errors can point at the file.
struct TokenStream {
  const std::string& text;
  size_t pos = 0;
  int line = 1;
  int col = 1;
  int tok_line = 1;
  int tok_col = 1;

  explicit TokenStream(const std::string& t) : text(t) {}

  void advance() {
    if (text[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  bool next(std::string& tok) {
    while (pos < text.size()) {
      char c = text[pos];
      if (c == '#') {
        while (pos < text.size() && text[pos] != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else {
        break;
      }
    }
    if (pos >= text.size()) return false;
    tok_line = line;
    tok_col = col;
    tok.clear();
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '#') {
      tok += text[pos];
      advance();
    }
    return true;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("line " + std::to_string(tok_line) + ", column " +
                     std::to_string(tok_col) + ": " + msg);
  }

  long long number(const std::string& what) {
    std::string tok;
    if (!next(tok)) {
      tok_line = line;
      tok_col = col;
      fail("file ends where " + what + " was expected");
    }
    long long v;
    if (!parse_int(tok, v)) fail("'" + tok + "' is not a number (" + what + ")");
    return v;
  }
};

}  // namespace

ITTPInstance parse_ittp_text(const std::string& text, int rounds) {
  TokenStream ts(text);
  long long n = ts.number("the team count");
  if (n < 4 || n % 2 != 0) ts.fail("team count must be even and at least 4");
  if (rounds < 1 || rounds > n - 2)
    throw RangeError("rounds must be between 1 and n-2");

  ITTPInstance inst;
  inst.n = static_cast<int>(n);
  inst.r = rounds;
  inst.distances = DistanceMatrix(inst.n);
  for (int i = 0; i < inst.n; ++i)
    for (int j = 0; j < inst.n; ++j) {
      long long d = ts.number("distance [" + std::to_string(i + 1) + "," +
                              std::to_string(j + 1) + "]");
      if (d < 0) ts.fail("distances must be nonnegative");
      inst.distances.at(i, j) = d;
    }
  std::string extra;
  if (ts.next(extra)) ts.fail("unexpected content after the distance matrix");
  return inst;
}

ITTPInstance read_ittp(const std::string& path, int rounds) {
  return parse_ittp_text(read_file(path), rounds);
}

std::string write_ittp_text(const ITTPInstance& inst) {
  size_t width = std::to_string(inst.distances.max_value()).size();
  std::string out = std::to_string(inst.n);
  out += '\n';
  for (int i = 0; i < inst.n; ++i) {
    for (int j = 0; j < inst.n; ++j) {
      std::string num = std::to_string(inst.distances.at(i, j));
      if (j) out += ' ';
      out.append(width - std::min(width, num.size()), ' ');
      out += num;
    }
    out += '\n';
  }
  return out;
}

void write_ittp(const ITTPInstance& inst, const std::string& path) {
  write_file(path, write_ittp_text(inst));
}

// ----------------------------------------------------------------- ystp

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> logical_lines(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (size_t hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream ls(raw);
    Line line{lineno, {}};
    std::string tok;
    while (ls >> tok) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

class LineReader {
 public:
  explicit LineReader(std::vector<Line> lines) : lines_(std::move(lines)) {}

  const Line& take(const std::string& what) {
    if (at_ >= lines_.size())
      throw ParseError("file ends where " + what + " was expected");
    return lines_[at_++];
  }

  const Line& keyword(const std::string& word) {
    const Line& line = take("'" + word + "'");
    if (line.tokens[0] != word || line.tokens.size() != 1)
      fail_line(line.number, "expected '" + word + "'");
    return line;
  }

  bool done() const { return at_ >= lines_.size(); }

 private:
  std::vector<Line> lines_;
  size_t at_ = 0;
};

long long line_int(const Line& line, size_t idx, const std::string& what) {
  long long v;
  if (!parse_int(line.tokens[idx], v))
    fail_line(line.number, "'" + line.tokens[idx] + "' is not a number (" + what + ")");
  return v;
}

long long keyword_value(LineReader& in, const std::string& word) {
  const Line& line = in.take("'" + word + " <value>'");
  if (line.tokens[0] != word || line.tokens.size() != 2)
    fail_line(line.number, "expected '" + word + " <value>'");
  return line_int(line, 1, word);
}

int checked_id(const Line& line, size_t idx, int limit, const std::string& what) {
  long long v = line_int(line, idx, what);
  if (v < 1 || v > limit)
    fail_line(line.number, what + " " + std::to_string(v) + " out of range 1.." +
                               std::to_string(limit));
  return static_cast<int>(v - 1);
}

}  // namespace

YSTPInstance parse_ystp_text(const std::string& text) {
  LineReader in(logical_lines(text));
  in.keyword("YSTP");

  YSTPInstance inst;
  inst.n = static_cast<int>(keyword_value(in, "TEAMS"));
  inst.r = static_cast<int>(keyword_value(in, "ROUNDS"));
  inst.num_clubs = static_cast<int>(keyword_value(in, "CLUBS"));
  if (inst.n < 2 || inst.r < 1 || inst.num_clubs < 1)
    throw ParseError("TEAMS, ROUNDS and CLUBS must be positive");

  inst.club_of.assign(inst.n, -1);
  for (int k = 0; k < inst.n; ++k) {
    const Line& line = in.take("a 'team club' line");
    if (line.tokens.size() != 2) fail_line(line.number, "expected 'team club'");
    int team = checked_id(line, 0, inst.n, "team");
    int club = checked_id(line, 1, inst.num_clubs, "club");
    if (inst.club_of[team] != -1)
      throw ConsistencyError("team " + std::to_string(team + 1) + " assigned twice");
    inst.club_of[team] = club;
  }

  in.keyword("CAPACITIES");
  inst.capacity.assign(static_cast<size_t>(inst.num_clubs) * inst.r, -1);
  std::vector<char> club_seen(inst.num_clubs, 0);
  for (int k = 0; k < inst.num_clubs; ++k) {
    const Line& line = in.take("a capacity line");
    if (static_cast<int>(line.tokens.size()) != inst.r + 1)
      fail_line(line.number, "capacity line needs a club id and " +
                                 std::to_string(inst.r) + " values");
    int club = checked_id(line, 0, inst.num_clubs, "club");
    if (club_seen[club])
      throw ConsistencyError("club " + std::to_string(club + 1) + " listed twice");
    club_seen[club] = 1;
    for (int s = 0; s < inst.r; ++s)
      inst.gamma(club, s) = line_int(line, s + 1, "capacity");
  }

  in.keyword("ELIGIBLE");
  inst.eligible.assign(static_cast<size_t>(inst.n) * inst.n, 0);
  std::vector<char> team_seen(inst.n, 0);
  for (int k = 0; k < inst.n; ++k) {
    const Line& line = in.take("an eligibility line");
    int team = checked_id(line, 0, inst.n, "team");
    if (team_seen[team])
      throw ConsistencyError("eligibility for team " + std::to_string(team + 1) +
                             " listed twice");
    team_seen[team] = 1;
    for (size_t idx = 1; idx < line.tokens.size(); ++idx) {
      int other = checked_id(line, idx, inst.n, "opponent");
      if (other == team)
        fail_line(line.number, "team " + std::to_string(team + 1) +
                                   " lists itself as an opponent");
      // One direction only; check() rejects the file if the lists disagree.
      inst.eligible[static_cast<size_t>(team) * inst.n + other] = 1;
    }
  }

  in.keyword("DISTANCES");
  inst.distances = DistanceMatrix(inst.n);
  for (int i = 0; i < inst.n; ++i) {
    const Line& line = in.take("a distance row");
    if (static_cast<int>(line.tokens.size()) != inst.n)
      fail_line(line.number, "distance row needs " + std::to_string(inst.n) + " values");
    for (int j = 0; j < inst.n; ++j) {
      long long d = line_int(line, j, "distance");
      if (d < 0) fail_line(line.number, "distances must be nonnegative");
      inst.distances.at(i, j) = d;
    }
  }

  in.keyword("LIMITS");
  bool have_v = false, have_b = false, have_d1 = false, have_d2 = false;
  while (true) {
    const Line& line = in.take("a LIMITS entry or 'END'");
    const std::string& key = line.tokens[0];
    if (key == "END") {
      if (line.tokens.size() != 1) fail_line(line.number, "expected 'END'");
      break;
    }
    if (line.tokens.size() != 2)
      fail_line(line.number, "expected '" + key + " <value>'");
    auto once = [&](bool& flag) {
      if (flag) fail_line(line.number, "duplicate key " + key);
      flag = true;
    };
    if (key == "V_PLUS") {
      once(have_v);
      inst.v_plus = line_int(line, 1, key);
    } else if (key == "B_PLUS") {
      once(have_b);
      inst.b_plus = line.tokens[1] == "inf" ? kUnlimitedBreaks : line_int(line, 1, key);
    } else if (key == "D1") {
      once(have_d1);
      inst.no_edge_breaks_enabled = line_int(line, 1, key) != 0;
    } else if (key == "D2") {
      once(have_d2);
      inst.half_balance_enabled = line_int(line, 1, key) != 0;
    } else if (key == "P_INELIG") {
      inst.p_inelig_override = line_int(line, 1, key);
    } else {
      fail_line(line.number, "unknown LIMITS key '" + key + "'");
    }
  }
  if (!have_v || !have_b || !have_d1 || !have_d2)
    throw ParseError("LIMITS must set V_PLUS, B_PLUS, D1 and D2");
  if (!in.done()) throw ParseError("content after END");

  inst.check();
  return inst;
}

YSTPInstance read_ystp(const std::string& path) {
  return parse_ystp_text(read_file(path));
}

std::string write_ystp_text(const YSTPInstance& inst) {
  std::ostringstream out;
  out << "YSTP\n"
      << "TEAMS " << inst.n << '\n'
      << "ROUNDS " << inst.r << '\n'
      << "CLUBS " << inst.num_clubs << '\n';
  for (int i = 0; i < inst.n; ++i) out << i + 1 << ' ' << inst.club_of[i] + 1 << '\n';
  out << "CAPACITIES\n";
  for (int c = 0; c < inst.num_clubs; ++c) {
    out << c + 1;
    for (int s = 0; s < inst.r; ++s) out << ' ' << inst.gamma(c, s);
    out << '\n';
  }
  out << "ELIGIBLE\n";
  for (int i = 0; i < inst.n; ++i) {
    out << i + 1;
    for (int j = 0; j < inst.n; ++j)
      if (inst.is_eligible(i, j)) out << ' ' << j + 1;
    out << '\n';
  }
  out << "DISTANCES\n";
  for (int i = 0; i < inst.n; ++i) {
    for (int j = 0; j < inst.n; ++j) {
      if (j) out << ' ';
      out << inst.distances.at(i, j);
    }
    out << '\n';
  }
  out << "LIMITS\n"
      << "V_PLUS " << inst.v_plus << '\n'
      << "B_PLUS ";
  if (inst.b_plus == kUnlimitedBreaks)
    out << "inf";
  else
    out << inst.b_plus;
  out << '\n'
      << "D1 " << (inst.no_edge_breaks_enabled ? 1 : 0) << '\n'
      << "D2 " << (inst.half_balance_enabled ? 1 : 0) << '\n';
  if (inst.p_inelig_override >= 0) out << "P_INELIG " << inst.p_inelig_override << '\n';
  out << "END\n";
  return out.str();
}

void write_ystp(const YSTPInstance& inst, const std::string& path) {
  write_file(path, write_ystp_text(inst));
}

}  // namespace irr
