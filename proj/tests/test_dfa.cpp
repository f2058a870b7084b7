#include "doctest.h"
#include "oracle.hpp"

#include "ltlf/dfa.hpp"
#include "ltlf/formula.hpp"
#include "ltlf/util.hpp"

#include <set>
#include <stdexcept>

using namespace ltlf;

namespace {
const PropositionSet kAB({"a", "b"});
}

TEST_CASE("automata agree with trace evaluation") {
  auto traces2 = oracle::traces_up_to(2, 4);
  for (int size = 2; size <= 5; ++size)
    for (uint64_t seed = 0; seed < 10; ++seed) {
      Formula f = random_formula(size, kAB, (seed % 2) != 0,
                                 seed_for(seed, 40 + size));
      Dfa d = to_dfa(f, kAB);
      for (const Trace &tr : traces2)
        CHECK(d.accepts(tr) == satisfies(f, tr));
    }
  const PropositionSet abc({"a", "b", "c"});
  auto traces3 = oracle::traces_up_to(3, 3);
  for (uint64_t seed = 0; seed < 12; ++seed) {
    Formula f = random_formula(4, abc, true, seed_for(seed, 99));
    Dfa d = to_dfa(f, abc);
    for (const Trace &tr : traces3)
      CHECK(d.accepts(tr) == satisfies(f, tr));
  }
}

TEST_CASE("minimization is idempotent and language preserving") {
  for (uint64_t seed = 0; seed < 15; ++seed) {
    Formula f = random_formula(2 + (int)(seed % 4), kAB, true,
                               seed_for(seed, 7));
    Dfa d = to_dfa(f, kAB);
    Dfa m = minimize(d);
    CHECK(dfa_equivalent(d, m));
    CHECK(m.num_states() <= d.num_states());
    Dfa mm = minimize(m);
    CHECK(mm.num_states() == m.num_states());
    CHECK(mm.initial == m.initial);
    CHECK(mm.accepting == m.accepting);
    CHECK(mm.transitions == m.transitions);
  }
}

TEST_CASE("counterexamples are shortest and lexicographically least") {
  SUBCASE("weak until differs from until on an all-left trace") {
    Dfa u = to_dfa(parse("a U b", kAB), kAB);
    Dfa w = to_dfa(parse("a W b", kAB), kAB);
    auto cex = dfa_counterexample(u, w);
    REQUIRE(cex.has_value());
    CHECK(cex->length() == 1);
    CHECK(cex->steps[0] == 1); /* a=1, b=0: W accepts, U rejects */
    CHECK(w.accepts(*cex));
    CHECK(!u.accepts(*cex));
  }
  SUBCASE("eventually differs from true at the empty assignment") {
    Dfa f = to_dfa(parse("F a", kAB), kAB);
    Dfa t = to_dfa(Formula::tt(), kAB);
    auto cex = dfa_counterexample(f, t);
    REQUIRE(cex.has_value());
    CHECK(cex->length() == 1);
    CHECK(cex->steps[0] == 0);
  }
  SUBCASE("equivalent formulas have none") {
    CHECK(!dfa_counterexample(to_dfa(parse("F F a", kAB), kAB),
                              to_dfa(parse("F a", kAB), kAB))
               .has_value());
    CHECK(dfa_equivalent(parse("a W b", kAB),
                         parse("(a U b) | G a", kAB), kAB));
    CHECK(!dfa_equivalent(parse("a U b", kAB), parse("a W b", kAB), kAB));
  }
  SUBCASE("mismatched alphabets are rejected") {
    Dfa d2 = to_dfa(parse("F a", kAB), kAB);
    Dfa d1 = to_dfa(parse("F a", PropositionSet({"a"})),
                    PropositionSet({"a"}));
    CHECK_THROWS_AS(dfa_counterexample(d1, d2), std::invalid_argument);
  }
}

TEST_CASE("characteristic samples label correctly and reach every state") {
  for (uint64_t seed = 0; seed < 15; ++seed) {
    Formula f = random_formula(2 + (int)(seed % 4), kAB, true,
                               seed_for(seed, 13));
    Dfa d = minimize(to_dfa(f, kAB));
    auto sample = characteristic_sample(d);
    REQUIRE(!sample.empty());
    std::set<int> visited{d.initial};
    for (const auto &lt : sample) {
      CHECK(lt.trace.length() >= 1);
      CHECK(lt.label == satisfies(f, lt.trace));
      CHECK(lt.label == d.accepts(lt.trace));
      int s = d.initial;
      for (uint32_t sym : lt.trace.steps) {
        s = d.transitions[s][sym];
        visited.insert(s);
      }
    }
    CHECK((int)visited.size() == d.num_states());
    /* deterministic */
    CHECK(characteristic_sample(d) == sample);
  }
}

TEST_CASE("guards") {
  Dfa d = to_dfa(parse("F a", kAB), kAB);
  Trace empty;
  empty.num_props = 2;
  CHECK_THROWS_AS(d.accepts(empty), std::invalid_argument);
  std::vector<std::string> many;
  for (int i = 0; i < 9; ++i)
    many.push_back("p" + std::to_string(i));
  PropositionSet big(many);
  CHECK_THROWS_AS(to_dfa(parse("F p0", big), big), std::invalid_argument);
}
