#include "doctest.h"

#include "ltlf/logicmin.hpp"
#include "ltlf/util.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>
#include <vector>

using namespace ltlf;

namespace {

/* Exact minimum cover size by branch and bound over all implicant cubes.
 * Feasible for num_vars <= 3 (at most 27 cubes, 8 points). */
int exact_minimum_cubes(const std::vector<uint32_t> &onset,
                        const std::vector<uint32_t> &dcset, int num_vars) {
  if (onset.empty())
    return 0;
  std::set<uint32_t> allowed(onset.begin(), onset.end());
  allowed.insert(dcset.begin(), dcset.end());
  std::vector<Cube> cubes;
  for (uint32_t mask = 0; mask < (1u << num_vars); ++mask)
    for (uint32_t value = 0; value < (1u << num_vars); ++value) {
      if (value & ~mask)
        continue;
      Cube c{value, mask};
      bool inside = true;
      for (uint32_t p = 0; p < (1u << num_vars) && inside; ++p)
        if (c.covers(p) && !allowed.count(p))
          inside = false;
      if (inside)
        cubes.push_back(c);
    }
  int best = (int)onset.size();
  std::vector<Cube> chosen;
  std::function<void(size_t, std::vector<uint32_t>)> go =
      [&](size_t idx, std::vector<uint32_t> left) {
        if (left.empty()) {
          best = std::min(best, (int)chosen.size());
          return;
        }
        if ((int)chosen.size() + 1 > best)
          return;
        /* branch on the first uncovered point: some cube must cover it */
        uint32_t point = left.front();
        (void)idx;
        for (const Cube &c : cubes) {
          if (!c.covers(point))
            continue;
          std::vector<uint32_t> rest;
          for (uint32_t p : left)
            if (!c.covers(p))
              rest.push_back(p);
          chosen.push_back(c);
          go(0, rest);
          chosen.pop_back();
        }
      };
  go(0, onset);
  return best;
}

} // namespace

TEST_CASE("cubes cover points by masked comparison") {
  Cube c{0b01, 0b11}; /* x0=1, x1=0 */
  CHECK(c.covers(0b01));
  CHECK(!c.covers(0b00));
  CHECK(!c.covers(0b11));
  CHECK(cube_literals(c) == 2);
  Cube any{0, 0};
  CHECK(any.covers(0));
  CHECK(any.covers(7));
  CHECK(cube_literals(any) == 0);
}

TEST_CASE("prime implicants of pinned functions") {
  SUBCASE("single minterm stays a full cube") {
    auto primes = prime_implicants({3}, {}, 2);
    REQUIRE(primes.size() == 1);
    CHECK(primes[0] == Cube{3, 3});
  }
  SUBCASE("adjacent minterms merge") {
    auto primes = prime_implicants({1, 3}, {}, 2);
    REQUIRE(primes.size() == 1);
    CHECK(primes[0] == Cube{1, 1}); /* x0 alone */
  }
  SUBCASE("don't-cares widen the primes") {
    auto primes = prime_implicants({1, 2}, {3}, 2);
    REQUIRE(primes.size() == 2);
    CHECK(std::count(primes.begin(), primes.end(), Cube{1, 1}) == 1);
    CHECK(std::count(primes.begin(), primes.end(), Cube{2, 2}) == 1);
  }
  SUBCASE("full onset collapses to the true cube") {
    auto primes = prime_implicants({0, 1, 2, 3}, {}, 2);
    REQUIRE(primes.size() == 1);
    CHECK(primes[0] == Cube{0, 0});
  }
  SUBCASE("xor has no mergeable pair") {
    auto primes = prime_implicants({1, 2}, {}, 2);
    REQUIRE(primes.size() == 2);
    CHECK(primes[0] == Cube{1, 3});
    CHECK(primes[1] == Cube{2, 3});
  }
}

TEST_CASE("covers are correct and minimum on small functions") {
  uint64_t state = 42;
  auto next = [&] { return splitmix64(state++); };
  for (int num_vars = 1; num_vars <= 3; ++num_vars) {
    const uint32_t points = 1u << num_vars;
    for (int round = 0; round < 60; ++round) {
      std::vector<uint32_t> onset, dcset;
      for (uint32_t p = 0; p < points; ++p) {
        uint64_t roll = next() % 4;
        if (roll == 0)
          onset.push_back(p);
        else if (roll == 1)
          dcset.push_back(p);
      }
      auto cover = minimize_cover(onset, dcset, num_vars);
      CHECK(verify_cover(cover, onset, dcset, num_vars));
      CHECK((int)cover.size() ==
            exact_minimum_cubes(onset, dcset, num_vars));
      if (onset.empty())
        CHECK(cover.empty());
    }
  }
}

TEST_CASE("covers stay inside the allowed set under fuzzing") {
  uint64_t state = 7;
  auto next = [&] { return splitmix64(state++); };
  for (int round = 0; round < 12; ++round) {
    int num_vars = 6 + (int)(next() % 5); /* 6..10 */
    std::set<uint32_t> on, dc;
    for (int i = 0; i < 120; ++i)
      on.insert((uint32_t)(next() & ((1u << num_vars) - 1)));
    for (int i = 0; i < 120; ++i) {
      uint32_t p = (uint32_t)(next() & ((1u << num_vars) - 1));
      if (!on.count(p))
        dc.insert(p);
    }
    std::vector<uint32_t> onset(on.begin(), on.end());
    std::vector<uint32_t> dcset(dc.begin(), dc.end());
    auto cover = minimize_cover(onset, dcset, num_vars);
    auto defect = check_cover(cover, onset, dcset, num_vars);
    INFO("round ", round, " vars ", num_vars, " point ", defect.point);
    CHECK(defect.ok);
  }
}

TEST_CASE("minimization is deterministic") {
  std::vector<uint32_t> onset{0, 1, 2, 5, 7};
  std::vector<uint32_t> dcset{3};
  auto a = minimize_cover(onset, dcset, 3);
  auto b = minimize_cover(onset, dcset, 3);
  CHECK(a == b);
  auto p1 = prime_implicants(onset, dcset, 3);
  auto p2 = prime_implicants(onset, dcset, 3);
  CHECK(p1 == p2);
  CHECK(std::is_sorted(p1.begin(), p1.end()));
}

TEST_CASE("bad inputs are rejected") {
  CHECK_THROWS_AS(minimize_cover({1}, {1}, 2), std::invalid_argument);
  CHECK_THROWS_AS(minimize_cover({0}, {}, -1), std::invalid_argument);
  CHECK_THROWS_AS(minimize_cover({0}, {}, 25), std::invalid_argument);
}

TEST_CASE("pla dump prints one cube per line") {
  /* x0 required 1, x1 free, x2 required 0 */
  std::vector<Cube> cover{{0b001, 0b101}, {0b010, 0b011}};
  CHECK(cover_to_pla(cover, 3) == "1-0 1\n01- 1\n");
  CHECK(cover_to_pla({}, 3) == "");
  CHECK(cover_to_pla({Cube{0, 0}}, 2) == "-- 1\n");
}
