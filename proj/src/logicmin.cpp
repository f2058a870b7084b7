#include "ltlf/logicmin.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <unordered_set>

namespace ltlf {

int cube_literals(const Cube &c) { return std::popcount(c.mask); }

namespace {

constexpr int kMaxVars = 24;
/* exact cover selection is attempted up to this many primes */
constexpr int kExactPrimeLimit = 16;

uint64_t pack(const Cube &c) {
  return (uint64_t(c.mask) << 32) | uint64_t(c.value);
}

void check_points(const std::vector<uint32_t> &points, int num_vars,
                  const char *what) {
  uint32_t limit = uint32_t(1) << num_vars;
  for (uint32_t p : points)
    if (p >= limit)
      throw std::invalid_argument(std::string(what) +
                                  " point exceeds variable count");
}

std::vector<uint32_t> sorted_unique(std::vector<uint32_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

} // namespace

std::vector<Cube> prime_implicants(const std::vector<uint32_t> &onset,
                                   const std::vector<uint32_t> &dcset,
                                   int num_vars) {
  if (num_vars < 0 || num_vars > kMaxVars)
    throw std::invalid_argument("variable count out of range");
  check_points(onset, num_vars, "onset");
  check_points(dcset, num_vars, "dcset");

  std::vector<uint32_t> points = onset;
  points.insert(points.end(), dcset.begin(), dcset.end());
  points = sorted_unique(std::move(points));
  if (points.empty())
    return {};

  uint32_t full = num_vars == 0 ? 0 : (uint32_t(1) << num_vars) - 1;
  std::vector<Cube> current;
  current.reserve(points.size());
  for (uint32_t p : points)
    current.push_back({p & full, full});

  std::vector<Cube> primes;
  while (!current.empty()) {
    std::unordered_set<uint64_t> live;
    live.reserve(current.size() * 2);
    for (const Cube &c : current)
      live.insert(pack(c));

    std::unordered_set<uint64_t> emitted;
    std::vector<Cube> next;
    for (const Cube &c : current) {
      bool combined = false;
      /* merge with the neighbor differing in exactly one masked bit */
      for (uint32_t rest = c.mask; rest != 0; rest &= rest - 1) {
        uint32_t bit = rest & (0u - rest);
        if (live.count(pack({c.value ^ bit, c.mask}))) {
          combined = true;
          Cube merged{c.value & ~bit, c.mask & ~bit};
          if (emitted.insert(pack(merged)).second)
            next.push_back(merged);
        }
      }
      if (!combined)
        primes.push_back(c);
    }
    current = std::move(next);
  }
  std::sort(primes.begin(), primes.end());
  return primes;
}

namespace {

/* onset-coverage bitset per cube, onset points indexed by position */
struct CoverageSets {
  int blocks;
  std::vector<std::vector<uint64_t>> rows;

  CoverageSets(const std::vector<Cube> &cubes,
               const std::vector<uint32_t> &points) {
    blocks = int((points.size() + 63) / 64);
    rows.assign(cubes.size(), std::vector<uint64_t>(blocks, 0));
    for (size_t i = 0; i < cubes.size(); ++i)
      for (size_t k = 0; k < points.size(); ++k)
        if (cubes[i].covers(points[k]))
          rows[i][k / 64] |= uint64_t(1) << (k % 64);
  }
};

int total_literals(const std::vector<Cube> &cubes,
                   const std::vector<int> &pick) {
  int n = 0;
  for (int i : pick)
    n += cube_literals(cubes[i]);
  return n;
}

std::vector<Cube> cubes_at(const std::vector<Cube> &cubes,
                           const std::vector<int> &pick) {
  std::vector<Cube> out;
  out.reserve(pick.size());
  for (int i : pick)
    out.push_back(cubes[i]);
  std::sort(out.begin(), out.end());
  return out;
}

/* smallest subset of cand covering target, exhaustive by increasing size;
 * among minimum-size covers picks fewest literals, then least cube list */
std::vector<int> exact_cover(const std::vector<Cube> &cubes,
                             const std::vector<int> &cand,
                             const CoverageSets &cov,
                             const std::vector<uint64_t> &target) {
  int m = (int)cand.size();
  auto covers_all = [&](const std::vector<int> &pick) {
    for (size_t b = 0; b < target.size(); ++b) {
      uint64_t acc = 0;
      for (int i : pick)
        acc |= cov.rows[i][b];
      if ((acc & target[b]) != target[b])
        return false;
    }
    return true;
  };

  for (int k = 1; k <= m; ++k) {
    bool found = false;
    int best_lits = 0;
    std::vector<Cube> best_cubes;
    std::vector<int> best_pick;

    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i)
      idx[i] = i;
    while (true) {
      std::vector<int> pick(k);
      for (int i = 0; i < k; ++i)
        pick[i] = cand[idx[i]];
      if (covers_all(pick)) {
        int lits = total_literals(cubes, pick);
        std::vector<Cube> as_cubes = cubes_at(cubes, pick);
        if (!found || lits < best_lits ||
            (lits == best_lits && as_cubes < best_cubes)) {
          found = true;
          best_lits = lits;
          best_cubes = std::move(as_cubes);
          best_pick = std::move(pick);
        }
      }
      /* next combination */
      int i = k - 1;
      while (i >= 0 && idx[i] == m - k + i)
        --i;
      if (i < 0)
        break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j)
        idx[j] = idx[j - 1] + 1;
    }
    if (found)
      return best_pick;
  }
  throw std::logic_error("prime implicants fail to cover their own onset");
}

std::vector<int> greedy_cover(const std::vector<Cube> &cubes,
                              const std::vector<int> &cand,
                              const CoverageSets &cov,
                              std::vector<uint64_t> remaining) {
  auto uncovered = [&] {
    uint64_t n = 0;
    for (uint64_t b : remaining)
      n += (uint64_t)std::popcount(b);
    return n;
  };
  std::vector<int> pick;
  while (uncovered() > 0) {
    int best = -1;
    uint64_t best_gain = 0;
    for (int i : cand) {
      uint64_t gain = 0;
      for (size_t b = 0; b < remaining.size(); ++b)
        gain += (uint64_t)std::popcount(cov.rows[i][b] & remaining[b]);
      if (gain == 0)
        continue;
      bool better =
          best < 0 || gain > best_gain ||
          (gain == best_gain &&
           (cube_literals(cubes[i]) < cube_literals(cubes[best]) ||
            (cube_literals(cubes[i]) == cube_literals(cubes[best]) &&
             cubes[i] < cubes[best])));
      if (better) {
        best = i;
        best_gain = gain;
      }
    }
    if (best < 0)
      throw std::logic_error("prime implicants fail to cover their own onset");
    pick.push_back(best);
    for (size_t b = 0; b < remaining.size(); ++b)
      remaining[b] &= ~cov.rows[best][b];
  }
  return pick;
}

} // namespace

std::vector<Cube> minimize_cover(const std::vector<uint32_t> &onset,
                                 const std::vector<uint32_t> &dcset,
                                 int num_vars) {
  if (num_vars < 0 || num_vars > kMaxVars)
    throw std::invalid_argument("variable count out of range");
  check_points(onset, num_vars, "onset");
  check_points(dcset, num_vars, "dcset");

  std::vector<uint32_t> on = sorted_unique(onset);
  std::vector<uint32_t> dc = sorted_unique(dcset);
  {
    std::vector<uint32_t> overlap;
    std::set_intersection(on.begin(), on.end(), dc.begin(), dc.end(),
                          std::back_inserter(overlap));
    if (!overlap.empty())
      throw std::invalid_argument("onset and dcset overlap");
  }
  if (on.empty())
    return {};

  std::vector<Cube> primes = prime_implicants(on, dc, num_vars);
  CoverageSets cov(primes, on);
  std::vector<uint64_t> target(cov.blocks, 0);
  for (size_t k = 0; k < on.size(); ++k)
    target[k / 64] |= uint64_t(1) << (k % 64);

  std::vector<int> chosen;
  if ((int)primes.size() <= kExactPrimeLimit) {
    std::vector<int> cand(primes.size());
    for (size_t i = 0; i < primes.size(); ++i)
      cand[i] = (int)i;
    chosen = exact_cover(primes, cand, cov, target);
  } else {
    /* essential primes first: sole cover of some onset point */
    std::vector<uint64_t> remaining = target;
    std::vector<char> used(primes.size(), 0);
    for (size_t k = 0; k < on.size(); ++k) {
      int owner = -1;
      bool unique = true;
      for (size_t i = 0; i < primes.size(); ++i)
        if (cov.rows[i][k / 64] >> (k % 64) & 1) {
          if (owner >= 0) {
            unique = false;
            break;
          }
          owner = (int)i;
        }
      if (unique && owner >= 0 && !used[owner]) {
        used[owner] = 1;
        chosen.push_back(owner);
        for (size_t b = 0; b < remaining.size(); ++b)
          remaining[b] &= ~cov.rows[owner][b];
      }
    }
    std::vector<int> cand;
    for (size_t i = 0; i < primes.size(); ++i)
      if (!used[i])
        cand.push_back((int)i);
    std::vector<int> rest = greedy_cover(primes, cand, cov, remaining);
    chosen.insert(chosen.end(), rest.begin(), rest.end());
  }

  std::vector<Cube> result = cubes_at(primes, chosen);
  CoverDefect defect = check_cover(result, on, dc, num_vars);
  if (!defect.ok)
    throw std::logic_error("minimized cover failed verification");
  return result;
}

CoverDefect check_cover(const std::vector<Cube> &cover,
                        const std::vector<uint32_t> &onset,
                        const std::vector<uint32_t> &dcset, int num_vars) {
  if (num_vars < 0 || num_vars > kMaxVars)
    throw std::invalid_argument("variable count out of range");
  check_points(onset, num_vars, "onset");
  check_points(dcset, num_vars, "dcset");

  auto covered = [&](uint32_t p) {
    for (const Cube &c : cover)
      if (c.covers(p))
        return true;
    return false;
  };
  for (uint32_t p : onset)
    if (!covered(p))
      return {false, true, p};

  std::unordered_set<uint32_t> allowed(onset.begin(), onset.end());
  allowed.insert(dcset.begin(), dcset.end());
  uint64_t limit = uint64_t(1) << num_vars;
  for (uint64_t p = 0; p < limit; ++p)
    if (!allowed.count((uint32_t)p) && covered((uint32_t)p))
      return {false, false, (uint32_t)p};
  return {};
}

bool verify_cover(const std::vector<Cube> &cover,
                  const std::vector<uint32_t> &onset,
                  const std::vector<uint32_t> &dcset, int num_vars) {
  return check_cover(cover, onset, dcset, num_vars).ok;
}

std::string cover_to_pla(const std::vector<Cube> &cover, int num_vars) {
  std::string out;
  for (const Cube &c : cover) {
    for (int v = 0; v < num_vars; ++v) {
      uint32_t bit = uint32_t(1) << v;
      out += (c.mask & bit) ? ((c.value & bit) ? '1' : '0') : '-';
    }
    out += " 1\n";
  }
  return out;
}

} // namespace ltlf
