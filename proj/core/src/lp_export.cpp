#include "irr/lp_export.hpp"

#include <fstream>
#include <sstream>

#include "irr/objective.hpp"

namespace irr {
namespace {

std::string var_x(int i, int j, int s) {
  return "x_" + std::to_string(i + 1) + '_' + std::to_string(j + 1) + '_' +
         std::to_string(s + 1);
}

std::string var_v(int c, int s) {
  return "v_" + std::to_string(c + 1) + '_' + std::to_string(s + 1);
}

std::string var_b(int i, int s) {
  return "b_" + std::to_string(i + 1) + '_' + std::to_string(s + 1);
}

void write_terms(std::ostringstream& os,
                 const std::vector<std::pair<std::string, long long>>& terms) {
  int on_line = 0;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const auto& [name, coef] = terms[k];
    if (k == 0) {
      if (coef < 0) os << "- ";
    } else {
      os << (coef < 0 ? " - " : " + ");
    }
    const long long mag = coef < 0 ? -coef : coef;
    if (mag != 1) os << mag << ' ';
    os << name;
    if (++on_line == 8 && k + 1 < terms.size()) {
      os << "\n   ";
      on_line = 0;
    }
  }
}

}  // namespace

const LpRow* LpModel::row(const std::string& name) const {
  for (const LpRow& r : rows)
    if (r.name == name) return &r;
  return nullptr;
}

LpModel build_lp(const YSTPInstance& inst) {
  inst.check();
  const int n = inst.n;
  const int r = inst.r;
  if (r % 2 != 0)
    throw RangeError("the exported model fixes home games to r/2; r must be even");

  LpModel m;
  auto opponents = [&](int i) {
    std::vector<int> out;
    for (int j = 0; j < n; ++j)
      if (j != i && inst.is_eligible(i, j)) out.push_back(j);
    return out;
  };

  for (int i = 0; i < n; ++i)
    for (int j : opponents(i))
      for (int s = 0; s < r; ++s) {
        m.objective.emplace_back(var_x(i, j, s), inst.distances.at(i, j));
        m.binaries.push_back(var_x(i, j, s));
      }
  for (int c = 0; c < inst.num_clubs; ++c)
    for (int s = 0; s < r; ++s) m.nonneg.push_back(var_v(c, s));

  // c1: each ordered eligible pair meets at most once.
  for (int i = 0; i < n; ++i)
    for (int j : opponents(i)) {
      LpRow row{"c1_" + std::to_string(i + 1) + '_' + std::to_string(j + 1), {}, 'L', 1};
      for (int s = 0; s < r; ++s) {
        row.terms.emplace_back(var_x(i, j, s), 1);
        row.terms.emplace_back(var_x(j, i, s), 1);
      }
      m.rows.push_back(std::move(row));
    }

  // c2: one game per team per round.
  for (int i = 0; i < n; ++i)
    for (int s = 0; s < r; ++s) {
      LpRow row{"c2_" + std::to_string(i + 1) + '_' + std::to_string(s + 1), {}, 'E', 1};
      for (int j : opponents(i)) {
        row.terms.emplace_back(var_x(i, j, s), 1);
        row.terms.emplace_back(var_x(j, i, s), 1);
      }
      m.rows.push_back(std::move(row));
    }

  // c3: exactly r/2 home games.
  for (int i = 0; i < n; ++i) {
    LpRow row{"c3_" + std::to_string(i + 1), {}, 'E', r / 2};
    for (int j : opponents(i))
      for (int s = 0; s < r; ++s) row.terms.emplace_back(var_x(i, j, s), 1);
    m.rows.push_back(std::move(row));
  }

  // c4/c5: at most two home (away) games in any three consecutive rounds.
  for (int i = 0; i < n; ++i)
    for (int s = 2; s < r; ++s) {
      LpRow home{"c4_" + std::to_string(i + 1) + '_' + std::to_string(s + 1), {}, 'L', 2};
      LpRow away{"c5_" + std::to_string(i + 1) + '_' + std::to_string(s + 1), {}, 'L', 2};
      for (int j : opponents(i))
        for (int k = s - 2; k <= s; ++k) {
          home.terms.emplace_back(var_x(i, j, k), 1);
          away.terms.emplace_back(var_x(j, i, k), 1);
        }
      m.rows.push_back(std::move(home));
      m.rows.push_back(std::move(away));
    }

  // c6: club home games bounded by capacity plus overflow.
  for (int c = 0; c < inst.num_clubs; ++c)
    for (int s = 0; s < r; ++s) {
      LpRow row{"c6_" + std::to_string(c + 1) + '_' + std::to_string(s + 1), {}, 'L',
                inst.gamma(c, s)};
      for (int i = 0; i < n; ++i) {
        if (inst.club_of[(std::size_t)i] != c) continue;
        for (int j : opponents(i)) row.terms.emplace_back(var_x(i, j, s), 1);
      }
      row.terms.emplace_back(var_v(c, s), -1);
      m.rows.push_back(std::move(row));
    }

  // c14: shared overflow budget.
  {
    LpRow row{"c14", {}, 'L', inst.v_plus};
    for (int c = 0; c < inst.num_clubs; ++c)
      for (int s = 0; s < r; ++s) row.terms.emplace_back(var_v(c, s), 1);
    m.rows.push_back(std::move(row));
  }

  // c7/c8: no break across the first two or the last two rounds. The two
  // round pairs coincide when r = 2.
  if (inst.no_edge_breaks_enabled) {
    std::vector<int> starts{0};
    if (r - 2 > 0) starts.push_back(r - 2);
    for (int i = 0; i < n; ++i)
      for (int s : starts) {
        LpRow home{"c7_" + std::to_string(i + 1) + '_' + std::to_string(s + 1), {}, 'L', 1};
        LpRow away{"c8_" + std::to_string(i + 1) + '_' + std::to_string(s + 1), {}, 'L', 1};
        for (int j : opponents(i)) {
          home.terms.emplace_back(var_x(i, j, s), 1);
          home.terms.emplace_back(var_x(i, j, s + 1), 1);
          away.terms.emplace_back(var_x(j, i, s), 1);
          away.terms.emplace_back(var_x(j, i, s + 1), 1);
        }
        m.rows.push_back(std::move(home));
        m.rows.push_back(std::move(away));
      }
  }

  // c9/c10: home games of each half season within its band.
  if (inst.half_balance_enabled) {
    const int mid = r / 2;
    for (int i = 0; i < n; ++i)
      for (int half = 0; half < 2; ++half) {
        const int lo = half == 0 ? 0 : mid;
        const int hi = half == 0 ? mid : r;
        const int len = hi - lo;
        LpRow floor_row{"c9_" + std::to_string(i + 1) + '_' + std::to_string(half + 1),
                        {}, 'G', len / 2};
        LpRow ceil_row{"c10_" + std::to_string(i + 1) + '_' + std::to_string(half + 1),
                       {}, 'L', (len + 1) / 2};
        for (int j : opponents(i))
          for (int s = lo; s < hi; ++s) {
            floor_row.terms.emplace_back(var_x(i, j, s), 1);
            ceil_row.terms.emplace_back(var_x(i, j, s), 1);
          }
        m.rows.push_back(std::move(floor_row));
        m.rows.push_back(std::move(ceil_row));
      }
  }

  // c11-c13: b_i_s marks a break entering round s; budget b_plus per team.
  if (inst.b_plus != kUnlimitedBreaks) {
    for (int i = 0; i < n; ++i)
      for (int s = 0; s < r; ++s) m.binaries.push_back(var_b(i, s));
    for (int i = 0; i < n; ++i)
      for (int s = 1; s < r; ++s) {
        LpRow home{"c11_" + std::to_string(i + 1) + '_' + std::to_string(s + 1), {}, 'L', 1};
        LpRow away{"c12_" + std::to_string(i + 1) + '_' + std::to_string(s + 1), {}, 'L', 1};
        for (int j : opponents(i)) {
          home.terms.emplace_back(var_x(i, j, s - 1), 1);
          home.terms.emplace_back(var_x(i, j, s), 1);
          away.terms.emplace_back(var_x(j, i, s - 1), 1);
          away.terms.emplace_back(var_x(j, i, s), 1);
        }
        home.terms.emplace_back(var_b(i, s), -1);
        away.terms.emplace_back(var_b(i, s), -1);
        m.rows.push_back(std::move(home));
        m.rows.push_back(std::move(away));
      }
    for (int i = 0; i < n; ++i) {
      LpRow row{"c13_" + std::to_string(i + 1), {}, 'L', inst.b_plus};
      for (int s = 1; s < r; ++s) row.terms.emplace_back(var_b(i, s), 1);
      m.rows.push_back(std::move(row));
    }
  }

  return m;
}

std::string lp_text(const LpModel& model) {
  std::ostringstream os;
  os << "Minimize\n obj: ";
  write_terms(os, model.objective);
  os << "\nSubject To\n";
  for (const LpRow& row : model.rows) {
    os << ' ' << row.name << ": ";
    write_terms(os, row.terms);
    os << (row.relation == 'L' ? " <= " : row.relation == 'G' ? " >= " : " = ");
    os << row.rhs << '\n';
  }
  os << "Bounds\n";
  for (const std::string& v : model.nonneg) os << ' ' << v << " >= 0\n";
  os << "Binary\n";
  for (const std::string& v : model.binaries) os << ' ' << v << '\n';
  os << "End\n";
  return os.str();
}

void export_lp(const YSTPInstance& inst, const std::string& path) {
  const std::string text = lp_text(build_lp(inst));
  std::ofstream out(path);
  if (!out) throw WriteError("cannot open " + path + " for writing");
  out << text;
  if (!out.good()) throw WriteError("short write to " + path);
}

std::unordered_map<std::string, long long> lp_substitute(const YSTPInstance& inst,
                                                         const Timetable& t) {
  std::unordered_map<std::string, long long> val;
  const int n = inst.n;
  const int r = inst.r;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (j != i && inst.is_eligible(i, j))
        for (int s = 0; s < r; ++s) val[var_x(i, j, s)] = 0;
  for (int s = 0; s < r; ++s)
    for (int i = 0; i < n; ++i) {
      if (!t.plays(i, s) || !t.is_home(i, s)) continue;
      const int j = t.opponent(i, s);
      if (inst.is_eligible(i, j)) val[var_x(i, j, s)] = 1;
    }
  for (int c = 0; c < inst.num_clubs; ++c)
    for (int s = 0; s < r; ++s) val[var_v(c, s)] = 0;
  for (int s = 0; s < r; ++s)
    for (int i = 0; i < n; ++i) {
      if (!t.plays(i, s) || !t.is_home(i, s)) continue;
      ++val[var_v(inst.club_of[(std::size_t)i], s)];
    }
  for (int c = 0; c < inst.num_clubs; ++c)
    for (int s = 0; s < r; ++s) {
      long long& v = val[var_v(c, s)];
      v = std::max(0LL, v - inst.gamma(c, s));
    }
  if (inst.b_plus != kUnlimitedBreaks) {
    for (int i = 0; i < n; ++i)
      for (int s = 0; s < r; ++s) val[var_b(i, s)] = 0;
    for (int i = 0; i < n; ++i)
      for (int s : breaks_of(t, i)) val[var_b(i, s)] = 1;
  }
  return val;
}

SubstitutionReport check_substitution(const YSTPInstance& inst, const Timetable& t) {
  const LpModel model = build_lp(inst);
  const auto val = lp_substitute(inst, t);
  auto value_of = [&](const std::string& name) {
    const auto it = val.find(name);
    return it == val.end() ? 0LL : it->second;
  };
  SubstitutionReport rep;
  for (const auto& [name, coef] : model.objective)
    rep.objective_value += coef * value_of(name);
  for (const LpRow& row : model.rows) {
    long long lhs = 0;
    for (const auto& [name, coef] : row.terms) lhs += coef * value_of(name);
    const bool ok = row.relation == 'L'   ? lhs <= row.rhs
                    : row.relation == 'G' ? lhs >= row.rhs
                                          : lhs == row.rhs;
    if (!ok) {
      rep.satisfied = false;
      rep.violated_rows.push_back(row.name);
    }
  }
  return rep;
}

}  // namespace irr
