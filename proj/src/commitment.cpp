#include "dmclab/commitment.hpp"

#include <cmath>

#include "dmclab/information.hpp"

namespace dmclab {

ParameterSet derive_parameters(const Channel& w, const Distribution& p, int n, double sigma,
                               ParamMode mode, const DeskOverrides& overrides) {
  if (p.size() != w.input_count())
    throw std::invalid_argument("derive_parameters: distribution does not match input alphabet");
  if (n < 1) throw std::invalid_argument("derive_parameters: need n >= 1");
  if (!(sigma > 0.0 && sigma < 0.5))
    throw std::invalid_argument("derive_parameters: sigma must lie in (0, 1/2)");
  {
    ReductionReport red = nonredundant_reduce(w);
    if (red.reduced.input_count() != w.input_count())
      throw std::invalid_argument("derive_parameters: channel has redundant input rows; reduce first");
  }
  if (is_trivial(w))
    throw std::invalid_argument("derive_parameters: trivial channel (nothing can be hidden)");

  const double nx = w.input_count();
  const double nz = w.output_count();

  ParameterSet ps{p};
  ps.n = n;
  ps.sigma = sigma;
  ps.eta = separation_eta(w);
  ps.tau = std::pow(sigma, 4) * ps.eta * ps.eta / (8.0 * std::pow(nx, 4) * nz * nz);

  ps.d_const = sum_neg_log2(p);
  ps.e_const = max_row_sum_neg_log2(w);
  ps.f_const = sum_neg_log2(output_distribution(w, p));
  ps.g_const = 3.0 + nx * ps.f_const + nx * std::log2(nz) + ps.e_const;
  ps.g_prime = ps.g_const + 2.0 * ps.d_const;
  ps.g_sigma = binary_entropy(2.0 * sigma) + 2.0 * sigma * std::log2(nx);

  const double root = std::sqrt(2.0 * ps.tau);
  const double alpha_log = std::log2(3.0 + std::log2(nx) + std::log2(nz));
  ps.log2_k_bound = n * equivocation(w, p) - n * root * ps.g_prime - n * ps.g_sigma -
                    std::log2(2.0 * n) - alpha_log;
  ps.log2_l_bound = n * mutual_information(w, p) + n * root * ps.g_const + std::log2(double(n)) +
                    alpha_log;
  ps.k_bound_at_least_one = ps.log2_k_bound >= 0.0;

  ps.epsilon_bound = 50.0 * nx * nz * std::exp2(-n * ps.tau);
  ps.epsilon_bound_code = 25.0 * nx * nz * std::exp2(-n * ps.tau);
  ps.delta_bound = 2.0 * nx * nz * std::exp2(-2.0 * n * ps.tau * ps.tau);
  // smallest block length with 50 |X| |Z| 2^(-n tau) < 0.01
  ps.epsilon_crossover_n = std::floor(std::log2(50.0 * nx * nz / 0.01) / ps.tau) + 1.0;

  ps.mode = mode;
  if (mode == ParamMode::Theory) {
    ps.eps_test = root;
    ps.eps_code = root;
    ps.analytic_bounds_apply = true;
  } else {
    ps.analytic_bounds_apply = false;
    if (overrides.eps_test) {
      ps.eps_test = *overrides.eps_test;
    } else {
      // Smallest grid width whose exact honest-acceptance probability for a
      // near-type codeword reaches 0.995.
      Word probe = near_type_word(p, n);
      double chosen = -1.0;
      for (int k = 1; k <= 200; ++k) {
        double eps = 0.005 * k;
        if (cond_typical_set_prob(w, probe, eps) >= 0.995) {
          chosen = eps;
          break;
        }
      }
      if (chosen < 0.0)
        throw std::runtime_error("derive_parameters: no desk eps_test reaches 0.995 acceptance; pass one explicitly");
      ps.eps_test = chosen;
    }
    if (!(ps.eps_test > 0.0)) throw std::invalid_argument("derive_parameters: eps_test must be positive");
    ps.eps_code = overrides.eps_code.value_or(ps.eps_test);
    if (!(ps.eps_code > 0.0)) throw std::invalid_argument("derive_parameters: eps_code must be positive");
  }
  return ps;
}

Codebook::Codebook(Channel channel, ParameterSet params, int message_count, int key_count,
                   std::vector<Word> words, std::uint64_t seed, CodebookBuildLog log)
    : channel_(std::move(channel)),
      params_(std::move(params)),
      message_count_(message_count),
      key_count_(key_count),
      words_(std::move(words)),
      seed_(seed),
      log_(log) {
  if (message_count_ < 1 || key_count_ < 1)
    throw std::invalid_argument("Codebook: need at least one message and one key");
  if (static_cast<int>(words_.size()) != message_count_ * key_count_)
    throw std::invalid_argument("Codebook: word array does not match K x L");
  for (const Word& w : words_) {
    if (w.length() != params_.n || w.alphabet_size != channel_.input_count())
      throw std::invalid_argument("Codebook: codeword shape mismatch");
  }
}

const Word& Codebook::codeword(int a, int mu) const {
  if (a < 1 || a > message_count_) throw std::out_of_range("Codebook::codeword: message index out of range");
  if (mu < 1 || mu > key_count_) throw std::out_of_range("Codebook::codeword: key index out of range");
  return words_[(a - 1) * key_count_ + (mu - 1)];
}

Codebook build_codebook(const Channel& w, const ParameterSet& params, int message_count,
                        int key_count, std::uint64_t seed, int max_attempts) {
  if (message_count < 1 || key_count < 1)
    throw std::invalid_argument("build_codebook: need at least one message and one key");
  if (params.p.size() != w.input_count())
    throw std::invalid_argument("build_codebook: parameter distribution does not match channel");
  const int n = params.n;
  const double min_distance = 2.0 * params.sigma * n;
  const int total = message_count * key_count;

  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(attempt)));
    std::vector<Word> raw;
    raw.reserve(total);
    for (int i = 0; i < total; ++i)
      raw.push_back(sample_typical_word(params.p, params.eps_code, n, rng));

    // Mark every entry that sits too close to any other entry.  Distance is
    // symmetric, so both members of a close pair are marked and expurgation
    // removes every short link.
    std::vector<bool> bad(total, false);
    int bad_count = 0;
    for (int i = 0; i < total; ++i) {
      for (int j = i + 1; j < total; ++j) {
        if (hamming_distance(raw[i], raw[j]) < min_distance - 1e-12) {
          if (!bad[i]) ++bad_count;
          if (!bad[j]) ++bad_count;
          bad[i] = bad[j] = true;
        }
      }
    }

    std::vector<std::vector<Word>> rows;
    bool rows_ok = true;
    int rows_dropped = 0;
    int min_survivors = key_count;
    for (int a = 0; a < message_count; ++a) {
      std::vector<Word> survivors;
      for (int mu = 0; mu < key_count; ++mu)
        if (!bad[a * key_count + mu]) survivors.push_back(raw[a * key_count + mu]);
      if (static_cast<int>(survivors.size()) < key_count - key_count / 2) {
        // lost more than half the entries: the row is gone
        ++rows_dropped;
        rows_ok = false;
        continue;
      }
      min_survivors = std::min(min_survivors, static_cast<int>(survivors.size()));
      rows.push_back(std::move(survivors));
    }
    if (!rows_ok) continue;  // fewer than message_count rows survived; retry

    std::vector<Word> words;
    for (auto& row : rows)
      for (int mu = 0; mu < min_survivors; ++mu) words.push_back(std::move(row[mu]));

    CodebookBuildLog log;
    log.attempts = attempt + 1;
    log.bad_entries_last = bad_count;
    log.rows_dropped_last = rows_dropped;
    log.columns_trimmed = key_count - min_survivors;
    Codebook book(w, params, message_count, min_survivors, std::move(words), seed, log);

    // Construction postconditions, checked exhaustively.
    for (std::size_t i = 0; i < book.words().size(); ++i) {
      if (!is_typical(book.words()[i], params.p, params.eps_code))
        throw std::runtime_error("build_codebook: internal error, codeword left the typical set");
      for (std::size_t j = i + 1; j < book.words().size(); ++j)
        if (hamming_distance(book.words()[i], book.words()[j]) < min_distance - 1e-12)
          throw std::runtime_error("build_codebook: internal error, expurgation left a close pair");
    }
    return book;
  }
  throw std::runtime_error(
      "build_codebook: no codebook with pairwise distance >= 2 sigma n survived after " +
      std::to_string(max_attempts) +
      " attempts; lower sigma, K, or L, or increase the block length");
}

Word simulate_channel(const Channel& w, const Word& x, std::uint64_t seed) {
  Rng rng(seed);
  return sample_channel_output(w, x, rng);
}

std::pair<CommitState, Word> commit(const Codebook& book, int a, std::uint64_t seed) {
  if (a < 1 || a > book.message_count())
    throw std::out_of_range("commit: message index out of range");
  Rng rng(seed);
  int mu = 1 + rng.below(book.key_count());
  return {CommitState{a, mu}, book.codeword(a, mu)};
}

VerifyResult reveal_verify(const Codebook& book, const Word& received, int claimed_a,
                           int claimed_mu) {
  if (claimed_a < 1 || claimed_a > book.message_count() || claimed_mu < 1 ||
      claimed_mu > book.key_count()) {
    return {Verdict::Rej, "claimed indices (a=" + std::to_string(claimed_a) +
                              ", mu=" + std::to_string(claimed_mu) + ") outside the codebook"};
  }
  if (received.length() != book.block_length() ||
      received.alphabet_size != book.channel().output_count())
    throw std::invalid_argument("reveal_verify: received word has the wrong shape");
  const Word& claimed = book.codeword(claimed_a, claimed_mu);
  bool acc = is_cond_typical(received, book.channel(), claimed, book.params().eps_test);
  return {acc ? Verdict::Acc : Verdict::Rej, ""};
}

Transcript run_protocol(const Codebook& book, const Channel& w, int a, std::uint64_t seed) {
  if (w.input_count() != book.channel().input_count() ||
      w.output_count() != book.channel().output_count())
    throw std::invalid_argument("run_protocol: channel alphabets do not match the codebook");
  auto [state, sent] = commit(book, a, mix_seed(seed, 0));
  Word received = simulate_channel(w, sent, mix_seed(seed, 1));
  VerifyResult vr = reveal_verify(book, received, state.a, state.mu);
  return Transcript{state.a, state.mu, sent,         received,
                    state.a,  state.mu, vr.verdict,  seed};
}

}  // namespace dmclab
