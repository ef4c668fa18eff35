#pragma once

// Adversarial measurements on concrete codebooks:
//
//  * concealment — total variation between the output mixtures of two
//    messages, exact by full output enumeration at small n (with the
//    per-message distance to the iid product law Q^n for triangle-inequality
//    consistency), or a plug-in Monte Carlo estimate that is biased and
//    clearly labeled diagnostic-only;
//  * soundness — honest-run rejection frequency, cross-checked against the
//    exact acceptance probability when enumerable;
//  * binding — concrete cheating strategies (midpoint input, greedy hill
//    climb, exhaustive input search) maximizing the probability that one
//    channel output passes the reveal tests of two different messages;
//  * a four-letter reference scheme whose concealment, soundness and binding
//    optimum are exactly 0, 1 and 1/2;
//  * converse_audit — builds the exact joint law of (message, codeword,
//    output) for a small block and checks the whole information-theoretic
//    inequality chain that caps the message rate by the maximum equivocation.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dmclab/capacity.hpp"
#include "dmclab/commitment.hpp"

namespace dmclab {

inline constexpr std::int64_t kDefaultEnumLimit = 10'000'000;

struct TvResult {
  double value = 0.0;
  CheckMethod method = CheckMethod::Exact;
  long trials = 0;
  std::uint64_t seed = 0;
  std::string note;
};

// Exact 1/2 || mix_a - mix_a' ||_1 over all |Z|^n outputs, where mix_a is the
// key-averaged output law of message a.  Requires |Z|^n <= limit.
TvResult measure_concealing_exact(const Codebook& book, const Channel& w, int a, int a_prime,
                                  std::int64_t limit = kDefaultEnumLimit);

// Exact distance of one message's mixture to the iid product of the
// single-letter output law Q = P W; the triangle-consistency companion.
double mixture_distance_to_product_exact(const Codebook& book, const Channel& w, int a,
                                         std::int64_t limit = kDefaultEnumLimit);

// Plug-in TV between empirical output histograms.  Biased upward for any
// finite trial count; diagnostic only, and says so in its note.
TvResult measure_concealing_mc(const Codebook& book, const Channel& w, int a, int a_prime,
                               long trials, std::uint64_t seed);

struct SoundnessResult {
  double rejection_rate = 0.0;
  double std_error = 0.0;
  long trials = 0;
  std::uint64_t seed = 0;
  // Filled when the exact per-codeword acceptance probabilities are
  // enumerable: the codebook-averaged exact rejection probability and whether
  // the empirical rate sits within three standard errors of it.
  std::optional<double> exact_rejection;
  bool consistent_with_exact = true;
};

// Honest runs, messages round-robin, keys and noise from per-trial streams.
SoundnessResult measure_soundness(const Codebook& book, const Channel& w, long trials,
                                  std::uint64_t seed, int threads = 1);

enum class AttackStrategy { Midpoint, HillClimb, Exhaustive };

struct BindingOptions {
  long trials = 2000;           // Monte Carlo estimates per candidate input
  long hill_climb_budget = 200; // candidate evaluations per codeword pair
  std::int64_t enum_limit = kDefaultEnumLimit;  // |X|^n * |Z|^n cap for Exhaustive
  int threads = 1;
};

struct SecurityReport {
  std::optional<double> epsilon_measured;  // worst-pair concealment TV
  std::optional<double> delta_sound;       // honest rejection probability
  std::optional<double> delta_bind;        // best joint-acceptance found
  CheckMethod method = CheckMethod::Exact;
  long trials = 0;
  std::uint64_t seed = 0;
  std::string attack_description;
  std::optional<double> epsilon_bound;  // analytic companions when they apply
  std::optional<double> delta_bound;
};

// Maximizes, over codeword pairs with different messages and over the chosen
// strategy's cheating inputs, the probability that a single channel output
// passes both reveal tests.  Deterministic inputs only (no channel tampering).
SecurityReport binding_attack(const Codebook& book, const Channel& w, AttackStrategy strategy,
                              std::uint64_t seed, const BindingOptions& opt = {});

// The exactly solvable four-letter scheme: channel inputs/outputs {0,1,2,3},
// each input spreads uniformly over {x, x+1 mod 4}; codeword(a, mu) encodes
// (a-1) + 2 (mu-1).  Concealment is perfect, honest acceptance certain, and
// the best binding attack succeeds with probability exactly 1/2.
struct ReferenceScheme {
  Channel channel;
  Codebook book;
  SecurityReport reference;  // exact values: epsilon 0, rejection 0, binding 1/2
};
ReferenceScheme remark_f_scheme();

struct ChainCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

struct ConverseAudit {
  int n = 0;
  int message_count = 0;
  // All entropies in bits, computed from one exact joint distribution.
  double h_a = 0.0;             // H(A), messages uniform
  double h_x_given_z = 0.0;     // H(X^n | Z^n)
  double i_a_z = 0.0;           // I(A ; Z^n)
  double h_a_given_xz = 0.0;    // H(A | X^n Z^n)
  double sum_h_xk_given_zk = 0.0;
  double epsilon = 0.0;         // worst-pair exact TV
  double delta = 0.0;           // exhaustive binding optimum
  double epsilon_prime = 0.0;   // h2(2 eps) + 2 n eps (B + log2 |Z|), B = 0 here
  double delta_prime = 0.0;     // h2(min(5 delta^(1/3), 1)) + 5 delta^(1/3) log2 K
  double b_rate = 0.0;          // rate of noiseless side communication (none)
  double max_equivocation = 0.0;
  double rate_bound_rhs = 0.0;  // n max H(X|Z) + n(eps(B + log2|Z|) + 5 delta^(1/3) log2|X|) + 2
  std::vector<ChainCheck> chain;
  bool holds = false;
};

// Requires K * L * |Z|^n (and |X|^n |Z|^n for the embedded exhaustive binding
// search) within the limit, and at least two messages.
ConverseAudit converse_audit(const Codebook& book, const Channel& w,
                             std::int64_t limit = kDefaultEnumLimit);

}  // namespace dmclab
