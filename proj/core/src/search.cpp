#include "irr/search.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <utility>

#include "irr/types.hpp"

namespace irr {

namespace {

constexpr const char* kNames[kNumNeighborhoods] = {
    "RS", "PRS", "TS", "CR", "iPTS", "iPTS-CR", "iPRS-B", "iPRS-U"};

std::string lower(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return (char)std::tolower(c); });
  return out;
}

}  // namespace

const char* neighborhood_name(Neighborhood k) { return kNames[(int)k]; }

Neighborhood neighborhood_from_name(const std::string& name) {
  std::string key = lower(name);
  for (int k = 0; k < kNumNeighborhoods; ++k) {
    if (key == lower(kNames[k])) return (Neighborhood)k;
  }
  throw ParseError("unknown neighborhood: " + name);
}

std::vector<Neighborhood> suite_from_name(const std::string& name) {
  using N = Neighborhood;
  std::string key = lower(name);
  if (key == "base") return {N::kTS, N::kPRS, N::kCR};
  if (key == "all") return {N::kTS, N::kIPTS, N::kPRS, N::kIPRSU, N::kCR};
  if (key == "cr+iprs-b") return {N::kCR, N::kIPRSB};
  return {neighborhood_from_name(name)};
}

std::vector<std::string> suite_names() {
  return {"Base", "iPTS", "iPTS-CR", "iPRS-U", "CR+iPRS-B", "All"};
}

AcceptDecision alahc_accept(long long candidate_cost, SearchState& st,
                            bool strict_incumbent) {
  if (candidate_cost >= st.incumbent_cost) {
    st.i_idle += 1;
  } else {
    st.i_idle = 0;
  }
  long long& slot = st.history[(std::size_t)(st.i % st.l_h)];
  bool beats_incumbent = strict_incumbent ? candidate_cost < st.incumbent_cost
                                          : candidate_cost <= st.incumbent_cost;
  AcceptDecision d;
  d.accepted = candidate_cost < slot || beats_incumbent;
  if (d.accepted) st.incumbent_cost = candidate_cost;
  if (candidate_cost < slot) {
    slot = candidate_cost;
    d.slot_lowered = true;
  }
  return d;
}

namespace {

void refill_history(SearchState& st, Rng& rng) {
  double lo = (double)st.best_cost;
  double hi = (double)st.best_cost * st.rho;
  std::uniform_real_distribution<double> dist(lo, hi);
  st.history.assign((std::size_t)st.l_h, 0);
  for (auto& v : st.history) v = (long long)std::llround(dist(rng));
}

}  // namespace

AdaptOutcome alahc_adapt(SearchState& st, const SearchConfig& cfg, Rng& rng) {
  AdaptOutcome out;
  if (st.i_idle > cfg.idle_threshold &&
      (double)st.l_h * cfg.growth < (double)cfg.history_cap) {
    st.l_h = (long long)std::ceil((double)st.l_h * cfg.growth);
    st.i = 0;
    st.i_idle = 0;
    st.incumbent = st.best;
    st.incumbent_cost = st.best_cost;
    st.rho += cfg.rho_incr;
    refill_history(st, rng);
    out.grew = true;
    out.incumbent_jumped = true;
  }
  if (st.incumbent_cost < st.best_cost ||
      (double)st.l_h * cfg.growth >= (double)cfg.history_cap) {
    if (st.incumbent_cost < st.best_cost) {
      st.best = st.incumbent;
      st.best_cost = st.incumbent_cost;
      out.new_best = true;
    } else {
      st.incumbent = st.best;
      st.incumbent_cost = st.best_cost;
      out.incumbent_jumped = true;
    }
    st.l_h = cfg.reset_history;
    st.i = 0;
    st.i_idle = 0;
    st.rho = cfg.rho_init;
    refill_history(st, rng);
    out.reset = true;
  }
  return out;
}

namespace {

// Ordered pair of distinct values from {0, ..., m-1}.
std::pair<int, int> pick_two(int m, Rng& rng) {
  int a = std::uniform_int_distribution<int>(0, m - 1)(rng);
  int b = std::uniform_int_distribution<int>(0, m - 2)(rng);
  if (b >= a) ++b;
  return {a, b};
}

}  // namespace

Proposal sample_move(Timetable& t, const std::vector<Neighborhood>& suite,
                     Rng& rng, double bfs_probability) {
  if (suite.empty()) throw RangeError("neighborhood suite is empty");
  int pick = std::uniform_int_distribution<int>(0, (int)suite.size() - 1)(rng);
  Proposal p;
  p.kind = suite[(std::size_t)pick];
  const int n = t.n();
  const int r = t.r();
  auto pick_round = [&] {
    return std::uniform_int_distribution<int>(0, r - 1)(rng);
  };
  try {
    switch (p.kind) {
      case Neighborhood::kRS: {
        if (r < 2) break;
        auto [q, s] = pick_two(r, rng);
        p.a = q;
        p.b = s;
        p.outcome = round_swap(t, q, s);
        break;
      }
      case Neighborhood::kPRS: {
        if (r < 2) break;
        auto [q, s] = pick_two(r, rng);
        p.a = q;
        p.b = s;
        p.outcome = partial_round_swap(t, q, s, rng);
        break;
      }
      case Neighborhood::kTS: {
        auto [i, j] = pick_two(n, rng);
        p.a = i;
        p.b = j;
        p.outcome = team_swap(t, i, j);
        break;
      }
      case Neighborhood::kCR: {
        if (r < 2) break;
        BalancedCycle cyc = find_balanced_cycle(t, rng);
        p.outcome = cycle_reversal(t, cyc);
        break;
      }
      case Neighborhood::kIPTS: {
        auto [i, j] = pick_two(n, rng);
        p.a = i;
        p.b = j;
        if (auto out = ipts(t, i, j, pick_round(), rng, bfs_probability))
          p.outcome = std::move(*out);
        break;
      }
      case Neighborhood::kIPTSCR: {
        auto [i, j] = pick_two(n, rng);
        p.a = i;
        p.b = j;
        if (auto out = ipts_cr(t, i, j, pick_round(), rng, bfs_probability))
          p.outcome = std::move(*out);
        break;
      }
      case Neighborhood::kIPRSB: {
        p.a = pick_round();
        if (auto out = iprs_b(t, p.a, rng)) p.outcome = std::move(*out);
        break;
      }
      case Neighborhood::kIPRSU: {
        p.a = pick_round();
        p.outcome = iprs_u(t, p.a, rng, bfs_probability);
        break;
      }
    }
  } catch (const NoCycle&) {
    // r too small or nothing to reverse: no move from these inputs.
  } catch (const DegenerateChain&) {
  }
  return p;
}

namespace {

Timetable initial_solution(const ITTPInstance& inst, Rng& rng,
                           ConstructionLog* log) {
  return construct_ittp_initial(inst, rng, log);
}

Timetable initial_solution(const YSTPInstance& inst, Rng& rng,
                           ConstructionLog* log) {
  return construct_ystp_initial(inst, rng, log);
}

Evaluation full_evaluation(const ITTPInstance& inst, const Timetable& t) {
  return ittp_evaluate(t, inst);
}

Evaluation full_evaluation(const YSTPInstance& inst, const Timetable& t) {
  return ystp_evaluate(t, inst);
}

long long ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

template <class Evaluator, class Instance>
SearchResult run_search(const Instance& inst, const SearchConfig& cfg,
                        const Timetable* warm_start) {
  if (cfg.suite.empty()) throw RangeError("neighborhood suite is empty");
  auto t0 = std::chrono::steady_clock::now();
  Rng rng(cfg.seed);

  ConstructionLog clog;
  Timetable start = warm_start ? *warm_start : initial_solution(inst, rng, &clog);
  if (warm_start) {
    if (!validate(start).pass())
      throw ConstructionFailed("starting solution fails validation");
    clog.method = "warm-start";
  }

  Evaluator eval(inst, start);
  Evaluation e0 = eval.current();
  if (!e0.search_feasible())
    throw ConstructionFailed("starting solution violates hard constraints");
  long long z0 = e0.total();

  SearchState st(start);
  st.incumbent_cost = z0;
  st.best_cost = z0;
  st.l_h = 1;
  st.rho = cfg.rho_init;
  st.history.assign(1, z0);
  st.trace.push_back({0, 0, z0, z0, st.l_h, st.rho});

  // Label map from the start to the incumbent, alive while accepted moves
  // keep the pairings; a snapshot follows the best table.
  std::vector<int> perm((std::size_t)start.n());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> perm_best = perm;
  bool perm_valid = true;

  std::array<long long, kNumNeighborhoods> proposed{};
  std::vector<DecisionRecord> decisions;
  long long total = 0;
  long long accepted_count = 0;
  long long rejected_count = 0;

  while (true) {
    if (cfg.max_iterations >= 0 && total >= cfg.max_iterations) break;
    if ((double)ms_since(t0) / 1000.0 >= cfg.time_limit) break;
    if (st.best_cost <= cfg.target_cost) break;

    ++total;
    st.i += 1;
    Proposal p = sample_move(st.incumbent, cfg.suite, rng, cfg.bfs_probability);
    ++proposed[(std::size_t)p.kind];

    bool usable = false;
    long long cost = 0;
    if (p.outcome) {
      eval.refresh(st.incumbent, p.outcome->touched_teams);
      Evaluation ce = eval.current();
      usable = ce.search_feasible();
      cost = ce.total();
    }

    if (!usable) {
      if (p.outcome) {
        p.outcome->undo(st.incumbent);
        eval.refresh(st.incumbent, p.outcome->touched_teams);
      }
      ++rejected_count;
      st.i_idle += 1;
    } else {
      long long slot_before = st.history[(std::size_t)(st.i % st.l_h)];
      long long incumbent_before = st.incumbent_cost;
      AcceptDecision d = alahc_accept(cost, st, cfg.strict_incumbent);
      if (cfg.record_decisions)
        decisions.push_back({total, cost, slot_before, incumbent_before, d.accepted});
      if (d.accepted) {
        ++accepted_count;
        if (perm_valid) {
          if (p.kind == Neighborhood::kTS) {
            for (auto& x : perm) {
              if (x == p.a)
                x = p.b;
              else if (x == p.b)
                x = p.a;
            }
          } else if (!p.outcome->new_pairings.empty() ||
                     !p.outcome->dropped_pairings.empty()) {
            perm_valid = false;
          }
        }
      } else {
        p.outcome->undo(st.incumbent);
        eval.refresh(st.incumbent, p.outcome->touched_teams);
      }
    }

    AdaptOutcome ad = alahc_adapt(st, cfg, rng);
    if (ad.new_best && perm_valid) perm_best = perm;
    if (ad.incumbent_jumped) {
      eval = Evaluator(inst, st.incumbent);
      if (perm_valid) perm = perm_best;
    }
    if (ad.new_best || ad.grew || ad.reset) {
      st.trace.push_back({total, ms_since(t0), st.incumbent_cost, st.best_cost,
                          st.l_h, st.rho});
    }
  }

  st.trace.push_back({total, ms_since(t0), st.incumbent_cost, st.best_cost,
                      st.l_h, st.rho});

  SearchResult res{std::move(st), std::move(start)};
  res.best_evaluation = full_evaluation(inst, res.state.best);
  res.decisions = std::move(decisions);
  res.proposed_by_kind = proposed;
  res.iterations = total;
  res.accepted = accepted_count;
  res.rejected_infeasible = rejected_count;
  res.elapsed_seconds = (double)ms_since(t0) / 1000.0;
  res.construction = clog;
  if (perm_valid) res.team_relabeling = perm_best;
  return res;
}

}  // namespace

SearchResult solve_ittp(const ITTPInstance& inst, const SearchConfig& cfg) {
  return run_search<IttpEvaluator>(inst, cfg, nullptr);
}

SearchResult solve_ittp(const ITTPInstance& inst, const SearchConfig& cfg,
                        const Timetable& initial) {
  return run_search<IttpEvaluator>(inst, cfg, &initial);
}

SearchResult solve_ystp(const YSTPInstance& inst, const SearchConfig& cfg) {
  return run_search<YstpEvaluator>(inst, cfg, nullptr);
}

SearchResult solve_ystp(const YSTPInstance& inst, const SearchConfig& cfg,
                        const Timetable& initial) {
  return run_search<YstpEvaluator>(inst, cfg, &initial);
}

std::string trace_to_csv(const std::vector<TraceRow>& rows) {
  std::ostringstream out;
  out << "iteration,elapsed_ms,incumbent_cost,best_cost,l_h,rho\n";
  for (const auto& row : rows) {
    out << row.iteration << ',' << row.elapsed_ms << ',' << row.incumbent_cost
        << ',' << row.best_cost << ',' << row.l_h << ',' << row.rho << '\n';
  }
  return out.str();
}

void write_trace_csv(const std::string& path,
                     const std::vector<TraceRow>& rows) {
  std::ofstream out(path);
  if (!out) throw WriteError("cannot open " + path);
  out << trace_to_csv(rows);
  if (!out.flush()) throw WriteError("write failed: " + path);
}

}  // namespace irr
