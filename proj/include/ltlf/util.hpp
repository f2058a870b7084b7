#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <string>

namespace ltlf {

/* splitmix64 mixer; used to fan a master seed out into independent
 * per-cell/per-purpose seeds (seed_for(master, k) for counter k). */
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t seed_for(uint64_t master, uint64_t counter) {
  return splitmix64(master ^ splitmix64(counter + 1));
}

/* Numerically stable logistic with slope beta. */
inline double sigmoid(double x, double beta) {
  double z = beta * x;
  if (z >= 0) {
    double e = std::exp(-z);
    return 1.0 / (1.0 + e);
  }
  double e = std::exp(z);
  return e / (1.0 + e);
}

/* Hard threshold, strictly positive: step(0) = 0. */
inline double hard_step(double x) { return x > 0.0 ? 1.0 : 0.0; }

/* Leaky rectifier max(x, alpha*x) for alpha in [0,1); alpha=0 is relu. */
inline double leaky(double x, double alpha) { return x >= 0.0 ? x : alpha * x; }
inline double leaky_grad(double x, double alpha) { return x >= 0.0 ? 1.0 : alpha; }

class Stopwatch {
public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    auto d = std::chrono::steady_clock::now() - start_;
    return std::chrono::duration<double>(d).count();
  }

private:
  std::chrono::steady_clock::time_point start_;
};

/* RFC-4180 style field quoting for the results CSV. */
inline std::string csv_quote(const std::string &s) {
  bool need = s.find_first_of(",\"\n") != std::string::npos;
  if (!need)
    return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"')
      out += '"';
    out += c;
  }
  out += '"';
  return out;
}

} // namespace ltlf
