#pragma once

// Shared numeric and randomness plumbing used across the library.
//
// Everything that consumes randomness goes through Rng (a thin wrapper over
// std::mt19937_64 with a fixed 53-bit unit-interval mapping) so that results
// are bit-reproducible across platforms for a given 64-bit seed.  Independent
// streams are derived with mix_seed(seed, stream); Monte Carlo loops give each
// trial its own stream so that estimates do not depend on the thread count.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace dmclab {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Randomness

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic sub-stream seed for (seed, stream index).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream + 0x51ed2701u));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform double in [0,1) with exactly 53 random bits; avoids
  // std::uniform_real_distribution, whose output is implementation-defined.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n).  Modulo bias is < n / 2^64, irrelevant here.
  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

  // Sample an index from a probability vector by walking the CDF.
  int sample(const std::vector<double>& pmf) {
    double u = unit();
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < pmf.size(); ++i) {
      acc += pmf[i];
      if (u < acc) return static_cast<int>(i);
    }
    return static_cast<int>(pmf.size()) - 1;
  }

 private:
  std::mt19937_64 eng_;
};

// ---------------------------------------------------------------------------
// Base-2 logs and entropy helpers

// x * log2(x) with the 0 log 0 = 0 convention.
inline double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

// Binary entropy in bits; t must lie in [0,1].
inline double binary_entropy(double t) {
  if (t < 0.0 || t > 1.0) throw std::invalid_argument("binary_entropy: argument outside [0,1]");
  return -xlog2x(t) - xlog2x(1.0 - t);
}

// Binary entropy with the argument clamped into [0,1].  Used where a bound
// formula's entropy term is evaluated outside its domain at desk scale; the
// linear terms of such bounds are never clamped.
inline double binary_entropy_clamped(double t) {
  return binary_entropy(std::min(1.0, std::max(0.0, t)));
}

// Running log2 of a sum of 2^term contributions (stable log-sum-exp).
class Log2Accumulator {
 public:
  void add(double log2_term) {
    if (log2_term == kNegInf) return;
    if (total_ == kNegInf) {
      total_ = log2_term;
      return;
    }
    double hi = std::max(total_, log2_term);
    double lo = std::min(total_, log2_term);
    total_ = hi + std::log2(1.0 + std::exp2(lo - hi));
  }
  double log2_value() const { return total_; }
  double value() const { return total_ == kNegInf ? 0.0 : std::exp2(total_); }

 private:
  double total_ = kNegInf;
};

// log2(k!), cached cumulative sums of log2(i) for determinism.
double log2_factorial(int k);

// log2 of the multinomial coefficient n! / prod(counts!).
double log2_multinomial(int n, const std::vector<int>& counts);

// ---------------------------------------------------------------------------
// Parallel helper

// Runs fn(begin, end) over [0,total) split into contiguous blocks, one per
// worker.  With threads <= 1 runs inline.  Callers that accumulate floating
// results should reduce per-worker slots in worker order.
void parallel_for(long total, int threads, const std::function<void(long, long, int)>& fn);

// Resolve a worker count: explicit > 0 wins, else environment DMCLAB_THREADS,
// else hardware concurrency.
int resolve_threads(int requested);

// ---------------------------------------------------------------------------
// Hashing (FNV-1a 64) for content fingerprints in reports.

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hash_hex(std::uint64_t h);

}  // namespace dmclab
