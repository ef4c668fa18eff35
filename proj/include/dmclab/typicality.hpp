#pragma once

// Typical-set machinery: membership predicates, exact probabilities and
// cardinalities by enumeration over type classes (never over words), sampling
// helpers, and a self-check suite for the classical large-deviation bounds the
// commitment construction relies on.
//
// Conventions.  A word w of length n is typical for reference distribution P
// at width eps when |N(x|w) - P(x) n| <= eps n for every symbol x and
// N(x|w) = 0 wherever P(x) = 0; inequalities are non-strict, so boundary ties
// count as typical.  Conditional typicality of z given x under channel W
// applies the same window to each joint count: |N(x,z) - W(z|x) N(x)| <= eps n
// with the analogous zero clause.  The reveal-phase acceptance test of the
// commitment protocol is exactly is_cond_typical.
//
// All exact set computations work in log2 space with stable accumulation and
// iterate types in lexicographic order, so results are deterministic.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dmclab/util.hpp"
#include "dmclab/word.hpp"

namespace dmclab {

inline constexpr std::int64_t kDefaultTypeLimit = 10'000'000;

// Thrown when an exact enumeration would exceed its type-count budget; callers
// may catch it and fall back to Monte Carlo.
class enumeration_limit_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool is_typical(const Word& w, const Distribution& p, double eps);
bool is_cond_typical(const Word& z, const Channel& w, const Word& x, double eps);

// Number of count vectors of length `alphabet` summing to n, i.e. the number
// of type classes that the exact routines would enumerate.
double type_class_count(int n, int alphabet);

// Exact probability under measure^{(x) n} of the set of words typical for
// `ref` at width eps.  `measure` may differ from `ref` (needed for the
// large-probability-set bound).  Throws enumeration_limit_error when the type
// count exceeds the limit.
double typical_set_prob(const Distribution& ref, double eps, int n, const Distribution& measure,
                        std::int64_t type_limit = kDefaultTypeLimit);

// log2 of the exact cardinality of the typical set.
double typical_set_log2_size(const Distribution& ref, double eps, int n,
                             std::int64_t type_limit = kDefaultTypeLimit);

// Exact probability W^n(.|x) of the conditionally typical set of x at width
// eps, via the product factorization over the letter classes of x.
double cond_typical_set_prob(const Channel& w, const Word& x, double eps,
                             std::int64_t type_limit = kDefaultTypeLimit);

// log2 of the exact cardinality of the conditionally typical set of x.
double cond_typical_set_log2_size(const Channel& w, const Word& x, double eps,
                                  std::int64_t type_limit = kDefaultTypeLimit);

// Exact probability, under the output law of word y (i.e. W^n(.|y)), of the
// conditionally typical set of a *different* word x.  Computed by dynamic
// programming over joint output counts within each letter class of x.  With
// y = x this reduces to cond_typical_set_prob.
double cond_typical_prob_under(const Channel& w, const Word& x, const Word& y, double eps,
                               std::int64_t type_limit = kDefaultTypeLimit);

// ---------------------------------------------------------------------------
// Sampling

Word sample_word(const Distribution& p, int n, Rng& rng);
Word sample_channel_output(const Channel& w, const Word& x, Rng& rng);
// Rejection samplers; throw std::runtime_error after max_attempts misses.
Word sample_typical_word(const Distribution& p, double eps, int n, Rng& rng,
                         int max_attempts = 1000000);
Word sample_cond_typical_word(const Channel& w, const Word& x, double eps, Rng& rng,
                              int max_attempts = 1000000);

// Deterministic word whose type is as close to p as integer counts allow
// (largest-remainder rounding, lowest index wins ties), symbols in blocks.
Word near_type_word(const Distribution& p, int n);

// ---------------------------------------------------------------------------
// Bound checks

enum class CheckMethod { Exact, MonteCarlo };

struct BoundCheckResult {
  std::string name;
  double analytical = 0.0;
  double measured = 0.0;
  bool log2_domain = false;  // cardinality checks compare log2 values
  CheckMethod method = CheckMethod::Exact;
  long trials = 0;
  std::uint64_t seed = 0;
  bool satisfied = false;
  std::string note;
};

// Runs the full self-check battery for channel w and input distribution p at
// each (n, eps) grid point: typical-set probability lower bounds (exact where
// enumerable, Monte Carlo otherwise), per-word probability brackets on sampled
// typical words, exact cardinality brackets, the large-probability-set lower
// bound, the conditional analogues for a deterministic near-type conditioning
// word, and containment of sampled conditionally typical outputs in the
// output-marginal typical set at width eps |X|.
std::vector<BoundCheckResult> verify_bound_suite(const Channel& w, const Distribution& p,
                                                 const std::vector<std::pair<int, double>>& grid,
                                                 long trials, std::uint64_t seed, int threads = 1);

// Empirical check of the Bernoulli tail bound: over `trials` experiments of
// n_vars coin flips at bias p, the frequency of {sample mean >= (1+eta) p}
// (and the mirrored lower tail) is compared against 2^(-n_vars p eta^2 / (2 ln 2)).
// Returns the upper-tail and lower-tail results, in that order.
std::vector<BoundCheckResult> chernoff_check(double p, double eta, int n_vars, long trials,
                                             std::uint64_t seed, int threads = 1);

// For two words at Hamming distance >= sigma n, measures the probability that
// the channel output of y still passes x's conditional typicality test at the
// width dictated by the channel's separation constant, against the analytic
// bound 2 * 2^(-n eps^4 / 2).  Exact via cond_typical_prob_under when
// enumerable, Monte Carlo otherwise.
BoundCheckResult distinct_types_check(const Channel& w, const Word& x, const Word& y, double sigma,
                                      long trials, std::uint64_t seed, int threads = 1);

}  // namespace dmclab
