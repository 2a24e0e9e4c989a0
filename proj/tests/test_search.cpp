#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "irr/construct.hpp"
#include "irr/instance.hpp"
#include "irr/objective.hpp"
#include "irr/search.hpp"
#include "irr/timetable.hpp"
#include "irr/types.hpp"

using irr::Neighborhood;
using irr::SearchConfig;
using irr::SearchState;
using irr::Timetable;

namespace {

irr::ITTPInstance gal(int n, int r, std::uint64_t seed) {
  return irr::generate_family(irr::Family::kGal, n, r, seed);
}

SearchState state_on(const Timetable& t) {
  SearchState st(t);
  st.incumbent_cost = 100;
  st.best_cost = 100;
  st.history = {100};
  st.l_h = 1;
  st.i = 1;
  return st;
}

// Colored pairs of t, as (lo, hi).
std::vector<std::pair<int, int>> colored_pairs(const Timetable& t) {
  std::vector<std::pair<int, int>> out;
  for (int e = 0; e < t.num_edges(); ++e)
    if (t.color_of_edge(e) != irr::kUncolored) out.push_back(t.edge_teams(e));
  std::sort(out.begin(), out.end());
  return out;
}

bool maps_pairings(const std::vector<int>& perm, const Timetable& from,
                   const Timetable& to) {
  std::vector<std::pair<int, int>> image;
  for (auto [x, y] : colored_pairs(from)) {
    int a = perm[(std::size_t)x];
    int b = perm[(std::size_t)y];
    image.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(image.begin(), image.end());
  return image == colored_pairs(to);
}

}  // namespace

TEST_CASE("neighborhood names and suite presets") {
  using N = Neighborhood;
  CHECK(std::string(irr::neighborhood_name(N::kIPTSCR)) == "iPTS-CR");
  CHECK(irr::neighborhood_from_name("iprs-u") == N::kIPRSU);
  CHECK_THROWS_AS(irr::neighborhood_from_name("XX"), irr::ParseError);

  CHECK(irr::suite_from_name("Base") ==
        std::vector<N>{N::kTS, N::kPRS, N::kCR});
  CHECK(irr::suite_from_name("All") ==
        std::vector<N>{N::kTS, N::kIPTS, N::kPRS, N::kIPRSU, N::kCR});
  CHECK(irr::suite_from_name("CR+iPRS-B") == std::vector<N>{N::kCR, N::kIPRSB});
  CHECK(irr::suite_from_name("iPTS") == std::vector<N>{N::kIPTS});
  CHECK(irr::suite_from_name("rs") == std::vector<N>{N::kRS});
  CHECK_THROWS_AS(irr::suite_from_name("Bse"), irr::ParseError);
  CHECK(irr::suite_names().size() == 6);
}

TEST_CASE("acceptance rule") {
  Timetable t = irr::construct_circle(4, 1);

  SUBCASE("a tie with the incumbent is accepted, slot untouched") {
    SearchState st = state_on(t);
    auto d = irr::alahc_accept(100, st);
    CHECK(d.accepted);
    CHECK(!d.slot_lowered);
    CHECK(st.history[0] == 100);
    CHECK(st.incumbent_cost == 100);
    CHECK(st.i_idle == 1);  // not an improvement
  }

  SUBCASE("the strict variant rejects the tie") {
    SearchState st = state_on(t);
    auto d = irr::alahc_accept(100, st, true);
    CHECK(!d.accepted);
    CHECK(st.i_idle == 1);
  }

  SUBCASE("beating the slot but not the incumbent accepts and lowers the slot") {
    SearchState st = state_on(t);
    st.history = {200};
    auto d = irr::alahc_accept(150, st);
    CHECK(d.accepted);
    CHECK(d.slot_lowered);
    CHECK(st.history[0] == 150);
    CHECK(st.incumbent_cost == 150);
    CHECK(st.i_idle == 1);
  }

  SUBCASE("beating neither rejects") {
    SearchState st = state_on(t);
    st.history = {200};
    st.incumbent_cost = 250;
    auto d = irr::alahc_accept(300, st);
    CHECK(!d.accepted);
    CHECK(st.history[0] == 200);
    CHECK(st.incumbent_cost == 250);
    CHECK(st.i_idle == 1);
  }

  SUBCASE("an improvement clears the idle counter") {
    SearchState st = state_on(t);
    st.i_idle = 7;
    auto d = irr::alahc_accept(50, st);
    CHECK(d.accepted);
    CHECK(st.history[0] == 50);
    CHECK(st.incumbent_cost == 50);
    CHECK(st.i_idle == 0);
  }

  SUBCASE("the counter picks the slot modulo the history length") {
    SearchState st = state_on(t);
    st.history = {10, 20, 30};
    st.l_h = 3;
    st.i = 5;
    st.incumbent_cost = 20;
    auto d = irr::alahc_accept(25, st);
    CHECK(d.accepted);  // 25 < history[5 mod 3] = 30
    CHECK(st.history == std::vector<long long>{10, 20, 25});
  }
}

TEST_CASE("adaptation rules") {
  Timetable t = irr::construct_circle(4, 1);
  SearchConfig cfg;
  cfg.idle_threshold = 10;
  irr::Rng rng(5);

  SUBCASE("a stall grows the history and raises rho") {
    SearchState st = state_on(t);
    st.l_h = 4;
    st.history = {100, 100, 100, 100};
    st.i_idle = 11;
    st.i = 99;
    st.incumbent_cost = 120;
    auto ad = irr::alahc_adapt(st, cfg, rng);
    CHECK(ad.grew);
    CHECK(!ad.reset);
    CHECK(!ad.new_best);
    CHECK(ad.incumbent_jumped);
    CHECK(st.l_h == 6);  // ceil(4 * 1.5)
    CHECK(st.i == 0);
    CHECK(st.i_idle == 0);
    CHECK(st.incumbent_cost == 100);
    CHECK(st.rho == doctest::Approx(1.010));
    REQUIRE(st.history.size() == 6);
    for (long long v : st.history) {
      CHECK(v >= 100);
      CHECK(v <= 101);  // llround bound of 100 * 1.010
    }
  }

  SUBCASE("an improved incumbent becomes the best and cuts the history back") {
    SearchState st = state_on(t);
    st.l_h = 40;
    st.history.assign(40, 100);
    st.rho = 1.025;
    st.incumbent_cost = 90;
    auto ad = irr::alahc_adapt(st, cfg, rng);
    CHECK(ad.new_best);
    CHECK(ad.reset);
    CHECK(!ad.grew);
    CHECK(!ad.incumbent_jumped);
    CHECK(st.best_cost == 90);
    CHECK(st.l_h == 10);
    CHECK(st.rho == doctest::Approx(1.005));
    REQUIRE(st.history.size() == 10);
    for (long long v : st.history) CHECK(v == 90);  // [90, 90.45] rounds to 90
  }

  SUBCASE("hitting the cap jumps back without a new best") {
    SearchConfig small = cfg;
    small.history_cap = 10;
    small.reset_history = 3;
    SearchState st = state_on(t);
    st.l_h = 7;
    st.history.assign(7, 100);
    auto ad = irr::alahc_adapt(st, small, rng);
    CHECK(ad.reset);
    CHECK(!ad.grew);
    CHECK(!ad.new_best);
    CHECK(ad.incumbent_jumped);
    CHECK(st.l_h == 3);
    CHECK(st.history.size() == 3);
  }

  SUBCASE("a growth step that lands over the cap resets in the same call") {
    SearchConfig both = cfg;
    both.history_cap = 12;
    both.idle_threshold = 0;
    both.reset_history = 3;
    SearchState st = state_on(t);
    st.l_h = 7;
    st.history.assign(7, 100);
    st.i_idle = 1;
    auto ad = irr::alahc_adapt(st, both, rng);
    CHECK(ad.grew);   // 7 -> ceil(10.5) = 11, still under the cap
    CHECK(ad.reset);  // 11 * 1.5 = 16.5 over the cap
    CHECK(st.l_h == 3);
  }
}

TEST_CASE("time limit zero returns the initial solution with a fresh state") {
  auto inst = irr::generate_family(irr::Family::kCon, 6, 4);
  SearchConfig cfg;
  cfg.time_limit = 0.0;
  cfg.seed = 5;
  auto res = irr::solve_ittp(inst, cfg);
  CHECK(res.iterations == 0);
  CHECK(res.accepted == 0);
  CHECK(res.state.l_h == 1);
  REQUIRE(res.state.history.size() == 1);
  CHECK(res.state.history[0] == res.state.best_cost);
  CHECK(res.best() == res.initial);
  CHECK(res.best_evaluation == irr::ittp_evaluate(res.initial, inst));
  REQUIRE(res.trace().size() >= 2);
  CHECK(res.trace().front().iteration == 0);
  CHECK(res.trace().front().incumbent_cost == res.state.best_cost);
  CHECK(res.construction.method == "circle+cycle-repair");
}

TEST_CASE("every structure of the suite is selected about equally often") {
  auto inst = gal(8, 5, 11);
  SearchConfig cfg;
  cfg.max_iterations = 100000;
  cfg.seed = 7;
  auto res = irr::solve_ittp(inst, cfg);
  CHECK(res.iterations == 100000);
  long long sum = 0;
  for (long long c : res.proposed_by_kind) sum += c;
  CHECK(sum == 100000);
  for (Neighborhood k : cfg.suite) {
    long long c = res.proposed_by_kind[(std::size_t)k];
    CHECK(c >= 18000);
    CHECK(c <= 22000);
  }
  CHECK(res.proposed_by_kind[(std::size_t)Neighborhood::kRS] == 0);
  CHECK(res.proposed_by_kind[(std::size_t)Neighborhood::kIPTSCR] == 0);
  CHECK(res.proposed_by_kind[(std::size_t)Neighborhood::kIPRSB] == 0);
}

TEST_CASE("a CR-only run changes orientations only") {
  auto inst = gal(8, 5, 2);
  SearchConfig cfg;
  cfg.suite = irr::suite_from_name("CR");
  cfg.max_iterations = 2000;
  cfg.seed = 3;
  auto res = irr::solve_ittp(inst, cfg);
  for (int e = 0; e < res.initial.num_edges(); ++e)
    CHECK(res.best().color_of_edge(e) == res.initial.color_of_edge(e));
  REQUIRE(res.team_relabeling.has_value());
  std::vector<int> identity(8);
  std::iota(identity.begin(), identity.end(), 0);
  CHECK(*res.team_relabeling == identity);
}

TEST_CASE("a Base run keeps the match graph isomorphic to the start") {
  auto inst = gal(6, 3, 4);
  SearchConfig cfg;
  cfg.suite = irr::suite_from_name("Base");
  cfg.max_iterations = 20000;
  cfg.seed = 9;
  auto res = irr::solve_ittp(inst, cfg);
  CHECK(res.accepted > 0);
  REQUIRE(res.team_relabeling.has_value());
  CHECK(maps_pairings(*res.team_relabeling, res.initial, res.best()));

  // Independent witness search over all 6! relabelings.
  std::vector<int> sigma(6);
  std::iota(sigma.begin(), sigma.end(), 0);
  bool found = false;
  do {
    if (maps_pairings(sigma, res.initial, res.best())) {
      found = true;
      break;
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  CHECK(found);
}

TEST_CASE("runs repeat exactly under the same seed") {
  auto inst = gal(8, 5, 3);
  SearchConfig cfg;
  cfg.max_iterations = 30000;
  cfg.seed = 42;
  cfg.record_decisions = true;
  auto r1 = irr::solve_ittp(inst, cfg);
  auto r2 = irr::solve_ittp(inst, cfg);
  CHECK(r1.best() == r2.best());
  CHECK(r1.state.best_cost == r2.state.best_cost);
  CHECK(r1.decisions == r2.decisions);
  REQUIRE(r1.trace().size() == r2.trace().size());
  for (std::size_t k = 0; k < r1.trace().size(); ++k) {
    const auto& a = r1.trace()[k];
    const auto& b = r2.trace()[k];
    // Wall-clock stamps are measurements, not decisions; everything else
    // must repeat.
    CHECK(a.iteration == b.iteration);
    CHECK(a.incumbent_cost == b.incumbent_cost);
    CHECK(a.best_cost == b.best_cost);
    CHECK(a.l_h == b.l_h);
    CHECK(a.rho == b.rho);
  }

  SUBCASE("recorded decisions replay against the acceptance rule") {
    CHECK(r1.decisions.size() > 1000);
    for (const auto& d : r1.decisions) {
      bool expect = d.candidate_cost < d.slot_before ||
                    d.candidate_cost <= d.incumbent_before;
      CHECK(expect == d.accepted);
    }
  }

  SUBCASE("strict runs replay with the strict rule") {
    SearchConfig strict = cfg;
    strict.strict_incumbent = true;
    strict.max_iterations = 5000;
    auto rs = irr::solve_ittp(inst, strict);
    for (const auto& d : rs.decisions) {
      bool expect = d.candidate_cost < d.slot_before ||
                    d.candidate_cost < d.incumbent_before;
      CHECK(expect == d.accepted);
    }
  }

  SUBCASE("the best cost never rises along the trace") {
    long long prev = r1.trace().front().best_cost;
    for (const auto& row : r1.trace()) {
      CHECK(row.best_cost <= prev);
      prev = row.best_cost;
    }
    CHECK(irr::validate(r1.best()).pass());
    CHECK(r1.best_evaluation.search_feasible());
    CHECK(r1.accepted + r1.rejected_infeasible <= r1.iterations);
  }
}

TEST_CASE("rejected proposals stall the search and climb the rho ladder") {
  auto inst = irr::generate_family(irr::Family::kCon, 4, 1);
  SearchConfig cfg;
  cfg.suite = irr::suite_from_name("RS");  // no second round to swap with
  cfg.idle_threshold = 3;
  cfg.max_iterations = 12;
  cfg.seed = 1;
  auto res = irr::solve_ittp(inst, cfg);
  CHECK(res.rejected_infeasible == 12);
  CHECK(res.accepted == 0);
  CHECK(res.state.l_h == 5);  // 1 -> 2 -> 3 -> 5
  CHECK(res.state.rho == doctest::Approx(1.020));
  long long z0 = res.state.best_cost;
  REQUIRE(res.state.history.size() == 5);
  for (long long v : res.state.history) {
    CHECK(v >= z0);
    CHECK(v <= (long long)(z0 * 1.020) + 1);
  }
  // The three growth events leave trace rows at iterations 4, 8 and 12.
  REQUIRE(res.trace().size() >= 4);
  CHECK(res.trace()[1].iteration == 4);
  CHECK(res.trace()[1].l_h == 2);
  CHECK(res.trace()[2].iteration == 8);
  CHECK(res.trace()[3].iteration == 12);
}

TEST_CASE("trace serializes to csv") {
  auto inst = irr::generate_family(irr::Family::kCon, 6, 3);
  SearchConfig cfg;
  cfg.max_iterations = 500;
  cfg.seed = 2;
  auto res = irr::solve_ittp(inst, cfg);
  std::string csv = irr::trace_to_csv(res.trace());
  CHECK(csv.rfind("iteration,elapsed_ms,incumbent_cost,best_cost,l_h,rho\n",
                  0) == 0);
  CHECK((std::size_t)std::count(csv.begin(), csv.end(), '\n') ==
        res.trace().size() + 1);

  const char* path = "irr_trace_roundtrip.csv";
  irr::write_trace_csv(path, res.trace());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == csv);
  std::remove(path);
}

TEST_CASE("searching improves a synthetic league") {
  auto inst = irr::generate_synthetic_ystp(12, 6, 3);
  SearchConfig cfg;
  cfg.max_iterations = 150000;
  cfg.seed = 17;
  auto res = irr::solve_ystp(inst, cfg);
  long long z0 = irr::ystp_evaluate(res.initial, inst).total();
  CHECK(res.state.best_cost < z0);
  CHECK(res.best_evaluation == irr::ystp_evaluate(res.best(), inst));
  CHECK(res.best_evaluation.search_feasible());
  CHECK(res.state.best_cost == res.best_evaluation.total());
  CHECK(irr::validate(res.best()).pass());

  SUBCASE("a cost target ends the run early") {
    SearchConfig tgt = cfg;
    tgt.target_cost = z0 - 1;
    auto quick = irr::solve_ystp(inst, tgt);
    CHECK(quick.state.best_cost < z0);
    CHECK(quick.iterations <= res.iterations);
  }
}

TEST_CASE("warm starts are used as given and checked") {
  auto inst = gal(8, 5, 1);
  SearchConfig cfg;
  cfg.time_limit = 0.0;
  cfg.seed = 6;
  auto base = irr::solve_ittp(inst, cfg);

  SearchConfig more;
  more.max_iterations = 5000;
  more.seed = 8;
  auto res = irr::solve_ittp(inst, more, base.best());
  CHECK(res.initial == base.best());
  CHECK(res.construction.method == "warm-start");
  CHECK(res.state.best_cost <= base.state.best_cost);

  Timetable bad = base.best();
  for (int s = 0; s < bad.r(); ++s)
    if (bad.plays(0, s)) bad.set_home(0, bad.opponent(0, s), 0);
  CHECK_THROWS_AS(irr::solve_ittp(inst, more, bad), irr::ConstructionFailed);
}
