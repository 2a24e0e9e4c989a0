#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <string>
#include <tuple>
#include <utility>

#include "irr/construct.hpp"
#include "irr/objective.hpp"
#include "irr/timetable.hpp"

using irr::Timetable;

namespace {

// Closed form for the circle method: the round of {a, b} with a,b < n-1 is
// (a+b)/2 mod (n-1), and the hub team n-1 meets a in round a.
int circle_round(int n, int a, int b) {
  int m = n - 1;
  if (b == n - 1) return a;
  if (a == n - 1) return b;
  return (a + b) * ((m + 1) / 2) % m;
}

}  // namespace

TEST_CASE("every legal size yields a feasible balanced timetable") {
  for (int n = 4; n <= 16; n += 2) {
    for (int r = 1; r <= n - 2; ++r) {
      Timetable t = irr::construct_circle(n, r);
      CAPTURE(n);
      CAPTURE(r);
      CHECK(irr::validate(t).pass());
      CHECK(irr::imbalance(t).total_delta == 0);
    }
  }
}

TEST_CASE("full-length output matches an independent circle formula") {
  for (int n : {4, 6, 8, 10, 12}) {
    Timetable t = irr::construct_circle(n, n - 2);
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        int k = circle_round(n, a, b);
        CAPTURE(n);
        CAPTURE(a);
        CAPTURE(b);
        if (k < n - 2)
          CHECK(t.color_of(a, b) == k);
        else
          CHECK(t.color_of(a, b) == irr::kUncolored);
      }
    }
  }
}

TEST_CASE("smallest case is a single perfect matching") {
  Timetable t = irr::construct_circle(4, 1);
  CHECK(irr::validate(t).pass());
  for (int v = 0; v < 4; ++v) CHECK(t.plays(v, 0));
}

TEST_CASE("eight teams five rounds is a perfect sub-one-factorization") {
  // Every union of two color classes must be a single Hamiltonian cycle.
  Timetable t = irr::construct_circle(8, 5);
  for (int q = 0; q < 5; ++q) {
    for (int s = q + 1; s < 5; ++s) {
      std::set<int> seen{0};
      int v = 0;
      int color = q;
      do {
        v = t.opponent(v, color);
        color = color == q ? s : q;
        seen.insert(v);
      } while (v != 0);
      CAPTURE(q);
      CAPTURE(s);
      CHECK(seen.size() == 8);
    }
  }
}

TEST_CASE("bad sizes are rejected") {
  CHECK_THROWS_AS(irr::construct_circle(7, 3), irr::RangeError);
  CHECK_THROWS_AS(irr::construct_circle(8, 7), irr::RangeError);
  CHECK_THROWS_AS(irr::construct_circle(8, 0), irr::RangeError);
  CHECK_THROWS_AS(irr::construct_circle(2, 1), irr::RangeError);
}

namespace {

// Window check written directly against the status table, independent of the
// evaluator's bookkeeping.
bool four_windows_ok(const irr::Timetable& t) {
  for (int i = 0; i < t.n(); ++i)
    for (int s = 0; s + 4 <= t.r(); ++s) {
      int homes = 0;
      for (int k = 0; k < 4; ++k)
        if (t.is_home(i, s + k)) ++homes;
      if (homes == 0 || homes == 4) return false;
    }
  return true;
}

irr::YSTPInstance unit_ystp(int n, int r) {
  irr::YSTPInstance inst;
  inst.n = n;
  inst.r = r;
  inst.distances = irr::DistanceMatrix(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) inst.distances.at(i, j) = 1;
  inst.num_clubs = n;
  inst.club_of.resize(n);
  for (int i = 0; i < n; ++i) inst.club_of[i] = i;
  inst.capacity.assign(static_cast<size_t>(n) * r, 1);
  inst.eligible.assign(static_cast<size_t>(n) * n, 1);
  for (int i = 0; i < n; ++i) inst.eligible[static_cast<size_t>(i) * n + i] = 0;
  inst.check();
  return inst;
}

}  // namespace

TEST_CASE("travel-problem starts satisfy the four-round window rule") {
  struct Shape {
    irr::Family family;
    int n, r;
  };
  for (Shape shape : {Shape{irr::Family::kCon, 16, 4}, Shape{irr::Family::kGal, 16, 8},
                      Shape{irr::Family::kCon, 6, 3}}) {
    irr::ITTPInstance inst = irr::generate_family(shape.family, shape.n, shape.r, 2);
    irr::Rng rng(13);
    irr::ConstructionLog log;
    irr::Timetable t = irr::construct_ittp_initial(inst, rng, &log);
    CAPTURE(shape.n);
    CAPTURE(shape.r);
    CHECK(irr::validate(t).pass());
    CHECK(four_windows_ok(t));
    CHECK(irr::ittp_evaluate(t, inst).feasible);
    CHECK(log.method == "circle+cycle-repair");
  }
}

TEST_CASE("unit-distance start on forty teams costs at least the bound") {
  irr::ITTPInstance inst = irr::generate_family(irr::Family::kCon, 40, 10, 0);
  irr::Rng rng(1);
  irr::Timetable t = irr::construct_ittp_initial(inst, rng);
  irr::Evaluation ev = irr::ittp_evaluate(t, inst);
  CHECK(ev.feasible);
  // Five aways in blocks of at most three force at least seven legs per team.
  CHECK(ev.travel_cost >= 280);
}

TEST_CASE("youth-sport starts come out fully feasible on synthetic instances") {
  for (auto [n, r, seed] : {std::tuple{12, 6, 4}, std::tuple{20, 9, 5}}) {
    irr::YSTPInstance inst = irr::generate_synthetic_ystp(n, r, seed);
    irr::Rng rng(7);
    irr::ConstructionLog log;
    irr::Timetable t = irr::construct_ystp_initial(inst, rng, &log);
    CAPTURE(n);
    CHECK(irr::validate(t).pass());
    irr::Evaluation ev = irr::ystp_evaluate(t, inst);
    CHECK(ev.feasible);
    CHECK(ev.penalty_cost == 0);
    CHECK(log.method == "greedy-matching+cycle-repair");
  }
}

TEST_CASE("unit distances make every feasible start cost half the games") {
  irr::YSTPInstance inst = unit_ystp(8, 4);
  irr::Rng rng(3);
  irr::Timetable t = irr::construct_ystp_initial(inst, rng);
  irr::Evaluation ev = irr::ystp_evaluate(t, inst);
  CHECK(ev.feasible);
  CHECK(ev.travel_cost == 8 * 4 / 2);
}

TEST_CASE("an odd isolated eligibility component is rejected with a witness") {
  irr::YSTPInstance inst = unit_ystp(6, 2);
  // Split eligibility into {1,2,3} and {4,5,6} (one-based): both components
  // have odd size, so no round can be perfectly matched.
  for (int i = 0; i < 3; ++i)
    for (int j = 3; j < 6; ++j) inst.set_eligible(i, j, false);
  irr::Rng rng(0);
  try {
    irr::construct_ystp_initial(inst, rng);
    FAIL("expected ConstructionFailed");
  } catch (const irr::ConstructionFailed& e) {
    CHECK(std::string(e.what()).find("odd isolated eligibility component") != std::string::npos);
    CHECK(std::string(e.what()).find("1, 2, 3") != std::string::npos);
  }
}
