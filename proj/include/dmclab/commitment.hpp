#pragma once

// The commitment scheme itself: a codebook of channel-input words indexed by
// (message a, blinding key mu).  To commit to a, the committer draws mu
// uniformly and feeds codeword(a, mu) through the channel; to reveal, both
// indices are announced and the receiver accepts exactly when the remembered
// channel output passes the conditional typicality test of the claimed
// codeword at width eps_test.
//
// Two parameter regimes share one ParameterSet type:
//  * theory mode evaluates every constant of the asymptotic analysis as
//    displayed (typicality widths sqrt(2 tau), rate bounds in log2 form,
//    concealment and binding error bounds);  at desk-scale n these bounds are
//    typically vacuous, and the fields report that honestly;
//  * desk mode keeps the structural parameters (sigma, eta, tau) but lets the
//    caller pick workable (eps_code, eps_test), defaulting eps_test to the
//    smallest grid width whose exact honest-acceptance probability is at
//    least 0.995.

#include <cstdint>
#include <optional>
#include <string>

#include "dmclab/channel.hpp"
#include "dmclab/typicality.hpp"
#include "dmclab/word.hpp"

namespace dmclab {

enum class ParamMode { Theory, Desk };

struct DeskOverrides {
  std::optional<double> eps_code;
  std::optional<double> eps_test;
};

struct ParameterSet {
  Distribution p;   // input distribution the codewords are drawn from
  int n = 0;        // block length
  double sigma = 0.0;  // codewords kept pairwise >= 2 sigma n apart
  double eta = 0.0;    // channel row separation
  double tau = 0.0;    // sigma^4 eta^2 / (8 |X|^4 |Z|^2)
  double eps_test = 0.0;
  double eps_code = 0.0;

  // Rate-bound scale constants (bits):
  //   D  = sum_{x: P(x)>0} -log2 P(x)
  //   E  = max_x sum_{z: W(z|x)>0} -log2 W(z|x)
  //   F  = sum_{z: Q(z)>0} -log2 Q(z)
  //   G  = 3 + |X| F + |X| log2 |Z| + E
  //   G' = G + 2 D
  //   Gs = h2(2 sigma) + 2 sigma log2 |X|
  double d_const = 0.0, e_const = 0.0, f_const = 0.0;
  double g_const = 0.0, g_prime = 0.0, g_sigma = 0.0;

  // log2 of the guaranteed message count and the key-count ceiling:
  //   log2 K >= n H(X|Z) - n sqrt(2 tau) G' - n Gs - log2(2n) - log2(3 + log2|X| + log2|Z|)
  //   log2 L <= n I(X;Z) + n sqrt(2 tau) G + log2(n) + log2(3 + log2|X| + log2|Z|)
  double log2_k_bound = 0.0;
  double log2_l_bound = 0.0;
  bool k_bound_at_least_one = false;

  // Concealment / binding error bounds.  Two concealment prefactors circulate
  // in the analysis (25 for the per-codebook mixture property, 50 for the
  // protocol-level guarantee); both are surfaced.
  double epsilon_bound = 0.0;       // 50 |X| |Z| 2^(-n tau)
  double epsilon_bound_code = 0.0;  // 25 |X| |Z| 2^(-n tau)
  double delta_bound = 0.0;         // 2 |X| |Z| 2^(-2 n tau^2)
  double epsilon_crossover_n = 0.0;  // smallest n with epsilon_bound < 0.01

  ParamMode mode = ParamMode::Theory;
  bool analytic_bounds_apply = true;  // false in desk mode
};

// Derives the full parameter set.  Preconditions: w non-redundant and
// non-trivial, 0 < sigma < 1/2, P matches the input alphabet, n >= 1.
ParameterSet derive_parameters(const Channel& w, const Distribution& p, int n, double sigma,
                               ParamMode mode, const DeskOverrides& overrides = {});

struct CodebookBuildLog {
  int attempts = 0;
  int bad_entries_last = 0;   // entries within 2 sigma n of another, last attempt
  int rows_dropped_last = 0;  // rows losing more than half their entries, last attempt
  int columns_trimmed = 0;    // L requested minus L realized
};

class Codebook {
 public:
  Codebook(Channel channel, ParameterSet params, int message_count, int key_count,
           std::vector<Word> words, std::uint64_t seed, CodebookBuildLog log);

  const Channel& channel() const { return channel_; }
  const ParameterSet& params() const { return params_; }
  int message_count() const { return message_count_; }  // K
  int key_count() const { return key_count_; }          // L
  int block_length() const { return params_.n; }
  std::uint64_t seed() const { return seed_; }
  const CodebookBuildLog& log() const { return log_; }

  // 1-based protocol indices: a in [1,K], mu in [1,L].
  const Word& codeword(int a, int mu) const;
  const std::vector<Word>& words() const { return words_; }  // row-major [a][mu]

 private:
  Channel channel_;
  ParameterSet params_;
  int message_count_;
  int key_count_;
  std::vector<Word> words_;
  std::uint64_t seed_;
  CodebookBuildLog log_;
};

// Samples message_count x key_count codewords iid from P^n conditioned on the
// eps_code typical set, marks entries within Hamming distance 2 sigma n of any
// other entry, expurgates them, drops rows losing more than half their
// entries, and retries with fresh randomness when fewer than message_count
// rows survive.  Surviving rows are trimmed to a common key count.  Throws
// std::runtime_error after max_attempts failed attempts.
Codebook build_codebook(const Channel& w, const ParameterSet& params, int message_count,
                        int key_count, std::uint64_t seed, int max_attempts = 50);

// One memoryless use of the channel per letter; bit-reproducible per seed.
Word simulate_channel(const Channel& w, const Word& x, std::uint64_t seed);

struct CommitState {
  int a = 0;
  int mu = 0;
};

// Commit phase: draws mu uniformly from the seed, returns the committer's
// state and the channel-input word.  Throws std::out_of_range for bad a.
std::pair<CommitState, Word> commit(const Codebook& book, int a, std::uint64_t seed);

enum class Verdict { Acc, Rej };

struct VerifyResult {
  Verdict verdict = Verdict::Rej;
  std::string note;  // diagnostic for rejections (out-of-range claim etc.)
};

// Reveal phase from the receiver's side.  Out-of-range claims reject with a
// diagnostic rather than throwing: a malformed reveal is a protocol event,
// not an API error.
VerifyResult reveal_verify(const Codebook& book, const Word& received, int claimed_a,
                           int claimed_mu);

struct Transcript {
  int a = 0;
  int mu = 0;
  Word sent;
  Word received;
  int revealed_a = 0;
  int revealed_mu = 0;
  Verdict verdict = Verdict::Rej;
  std::uint64_t seed = 0;
};

// Honest end-to-end run: commit, transmit through `w`, reveal truthfully.
// Sub-seeds for the key draw and the channel noise are derived from `seed`.
Transcript run_protocol(const Codebook& book, const Channel& w, int a, std::uint64_t seed);

}  // namespace dmclab
