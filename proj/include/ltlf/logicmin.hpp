#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ltlf {

/* Product term over boolean variables 0..n-1: variable i participates when
 * mask bit i is set, with required polarity at value bit i. Bits of value
 * outside mask are kept zero so equality is plain field equality; mask = 0 is
 * the constant-true cube. */
struct Cube {
  uint32_t value = 0;
  uint32_t mask = 0;

  bool covers(uint32_t point) const { return ((point ^ value) & mask) == 0; }

  friend bool operator==(const Cube &a, const Cube &b) {
    return a.value == b.value && a.mask == b.mask;
  }
  friend bool operator<(const Cube &a, const Cube &b) {
    return a.mask != b.mask ? a.mask < b.mask : a.value < b.value;
  }
};

int cube_literals(const Cube &c);

/* All prime implicants of the function that is 1 on onset, unconstrained on
 * dcset, 0 elsewhere (Quine-McCluskey over onset | dcset). Sorted by
 * (mask, value): the same function always yields the same list. */
std::vector<Cube> prime_implicants(const std::vector<uint32_t> &onset,
                                   const std::vector<uint32_t> &dcset,
                                   int num_vars);

/* Minimum sum-of-products cover of onset: every onset point covered, no point
 * outside onset | dcset covered, cube count minimal when the prime count
 * allows exact selection (<= 16 primes), deterministic greedy beyond that.
 * Ties broken by fewest total literals, then lexicographic cube order.
 * Rejects onset/dcset overlap and num_vars outside [0, 24]. */
std::vector<Cube> minimize_cover(const std::vector<uint32_t> &onset,
                                 const std::vector<uint32_t> &dcset,
                                 int num_vars);

/* First uncovered onset point or first covered offset point, if any. */
struct CoverDefect {
  bool ok = true;
  bool uncovered_onset = false;
  uint32_t point = 0;
};
CoverDefect check_cover(const std::vector<Cube> &cover,
                        const std::vector<uint32_t> &onset,
                        const std::vector<uint32_t> &dcset, int num_vars);
bool verify_cover(const std::vector<Cube> &cover,
                  const std::vector<uint32_t> &onset,
                  const std::vector<uint32_t> &dcset, int num_vars);

/* PLA-style dump: one line per cube of 0/1/- characters (variable 0 first),
 * a space, and the constant "1". */
std::string cover_to_pla(const std::vector<Cube> &cover, int num_vars);

} // namespace ltlf
