#include "dmclab/security.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "dmclab/information.hpp"

namespace dmclab {
namespace {

bool within_enum_limit(int alphabet, int length, std::int64_t limit, double extra_factor = 1.0) {
  double log2_cost = length * std::log2(static_cast<double>(alphabet)) + std::log2(extra_factor);
  return log2_cost <= std::log2(static_cast<double>(limit));
}

// Visit every word of `length` over `alphabet` symbols in odometer order.
template <typename Fn>
void for_each_word(int alphabet, int length, Fn&& fn) {
  std::vector<int> digits(length, 0);
  while (true) {
    fn(digits);
    int pos = length - 1;
    while (pos >= 0) {
      if (++digits[pos] < alphabet) break;
      digits[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
}

double word_output_prob(const Channel& w, const Word& x, const std::vector<int>& z) {
  double p = 1.0;
  for (int i = 0; i < x.length(); ++i) p *= w.prob(x.symbols[i], z[i]);
  return p;
}

void check_same_shape(const Codebook& book, const Channel& w, const char* who) {
  if (w.input_count() != book.channel().input_count() ||
      w.output_count() != book.channel().output_count())
    throw std::invalid_argument(std::string(who) + ": channel alphabets do not match the codebook");
}

double message_mixture_prob(const Codebook& book, const Channel& w, int a,
                            const std::vector<int>& z) {
  double p = 0.0;
  for (int mu = 1; mu <= book.key_count(); ++mu)
    p += word_output_prob(w, book.codeword(a, mu), z);
  return p / book.key_count();
}

}  // namespace

TvResult measure_concealing_exact(const Codebook& book, const Channel& w, int a, int a_prime,
                                  std::int64_t limit) {
  check_same_shape(book, w, "measure_concealing_exact");
  if (a < 1 || a > book.message_count() || a_prime < 1 || a_prime > book.message_count())
    throw std::out_of_range("measure_concealing_exact: message index out of range");
  const int n = book.block_length();
  const int nz = w.output_count();
  if (!within_enum_limit(nz, n, limit))
    throw enumeration_limit_error("measure_concealing_exact: |Z|^n exceeds the enumeration limit");
  double acc = 0.0;
  for_each_word(nz, n, [&](const std::vector<int>& z) {
    acc += std::fabs(message_mixture_prob(book, w, a, z) - message_mixture_prob(book, w, a_prime, z));
  });
  TvResult r;
  r.value = acc / 2.0;
  r.method = CheckMethod::Exact;
  r.note = "full output enumeration (" + std::to_string(nz) + "^" + std::to_string(n) + " words)";
  return r;
}

double mixture_distance_to_product_exact(const Codebook& book, const Channel& w, int a,
                                         std::int64_t limit) {
  check_same_shape(book, w, "mixture_distance_to_product_exact");
  if (a < 1 || a > book.message_count())
    throw std::out_of_range("mixture_distance_to_product_exact: message index out of range");
  const int n = book.block_length();
  const int nz = w.output_count();
  if (!within_enum_limit(nz, n, limit))
    throw enumeration_limit_error("mixture_distance_to_product_exact: |Z|^n exceeds the limit");
  const Distribution q = output_distribution(w, book.params().p);
  double acc = 0.0;
  for_each_word(nz, n, [&](const std::vector<int>& z) {
    double prod = 1.0;
    for (int i = 0; i < n; ++i) prod *= q[z[i]];
    acc += std::fabs(message_mixture_prob(book, w, a, z) - prod);
  });
  return acc / 2.0;
}

TvResult measure_concealing_mc(const Codebook& book, const Channel& w, int a, int a_prime,
                               long trials, std::uint64_t seed) {
  check_same_shape(book, w, "measure_concealing_mc");
  if (a < 1 || a > book.message_count() || a_prime < 1 || a_prime > book.message_count())
    throw std::out_of_range("measure_concealing_mc: message index out of range");
  auto draw_histogram = [&](int msg, std::uint64_t stream) {
    std::map<std::vector<int>, long> h;
    const std::uint64_t base = mix_seed(seed, stream);
    for (long t = 0; t < trials; ++t) {
      Rng rng(mix_seed(base, static_cast<std::uint64_t>(t)));
      int mu = 1 + rng.below(book.key_count());
      Word z = sample_channel_output(w, book.codeword(msg, mu), rng);
      ++h[z.symbols];
    }
    return h;
  };
  std::map<std::vector<int>, long> h1 = draw_histogram(a, 1);
  std::map<std::vector<int>, long> h2 = draw_histogram(a_prime, 2);
  double acc = 0.0;
  auto it1 = h1.begin();
  auto it2 = h2.begin();
  while (it1 != h1.end() || it2 != h2.end()) {
    if (it2 == h2.end() || (it1 != h1.end() && it1->first < it2->first)) {
      acc += it1->second;
      ++it1;
    } else if (it1 == h1.end() || it2->first < it1->first) {
      acc += it2->second;
      ++it2;
    } else {
      acc += std::labs(it1->second - it2->second);
      ++it1;
      ++it2;
    }
  }
  TvResult r;
  r.value = acc / (2.0 * trials);
  r.method = CheckMethod::MonteCarlo;
  r.trials = trials;
  r.seed = seed;
  r.note = "plug-in histogram TV; biased upward at finite trials, diagnostic only";
  return r;
}

SoundnessResult measure_soundness(const Codebook& book, const Channel& w, long trials,
                                  std::uint64_t seed, int threads) {
  check_same_shape(book, w, "measure_soundness");
  if (trials < 1) throw std::invalid_argument("measure_soundness: need trials >= 1");
  std::vector<long> rejects(std::max(1, threads), 0);
  parallel_for(trials, threads, [&](long b, long e, int worker) {
    long rej = 0;
    for (long t = b; t < e; ++t) {
      int a = 1 + static_cast<int>(t % book.message_count());
      Transcript tr = run_protocol(book, w, a, mix_seed(seed, static_cast<std::uint64_t>(t)));
      if (tr.verdict == Verdict::Rej) ++rej;
    }
    rejects[worker] = rej;
  });
  long total = 0;
  for (long r : rejects) total += r;

  SoundnessResult out;
  out.trials = trials;
  out.seed = seed;
  out.rejection_rate = static_cast<double>(total) / trials;
  out.std_error = std::sqrt(std::max(out.rejection_rate * (1.0 - out.rejection_rate), 1.0 / trials) /
                            trials);

  // Exact companion when the test channel equals the physical one and the
  // per-class enumerations stay in budget.
  if (w.matrix() == book.channel().matrix()) {
    try {
      double acc_sum = 0.0;
      for (const Word& cw : book.words())
        acc_sum += cond_typical_set_prob(w, cw, book.params().eps_test);
      out.exact_rejection = 1.0 - acc_sum / static_cast<double>(book.words().size());
      out.consistent_with_exact =
          std::fabs(out.rejection_rate - *out.exact_rejection) <= 3.0 * out.std_error;
    } catch (const enumeration_limit_error&) {
    }
  }
  return out;
}

namespace {

struct JointAcceptance {
  double value = 0.0;
  bool exact = false;
};

// Probability that one output of input `x` passes the reveal tests of both
// codewords; exact by output enumeration when affordable.
JointAcceptance joint_acceptance(const Codebook& book, const Channel& w, const Word& x,
                                 const Word& cw1, const Word& cw2, long trials, std::uint64_t seed,
                                 std::int64_t enum_limit) {
  const int n = book.block_length();
  const int nz = w.output_count();
  const double eps = book.params().eps_test;
  if (within_enum_limit(nz, n, enum_limit)) {
    double p = 0.0;
    for_each_word(nz, n, [&](const std::vector<int>& z) {
      Word zw{z, nz};
      if (is_cond_typical(zw, book.channel(), cw1, eps) &&
          is_cond_typical(zw, book.channel(), cw2, eps))
        p += word_output_prob(w, x, z);
    });
    return {p, true};
  }
  long hits = 0;
  for (long t = 0; t < trials; ++t) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(t)));
    Word z = sample_channel_output(w, x, rng);
    if (is_cond_typical(z, book.channel(), cw1, eps) &&
        is_cond_typical(z, book.channel(), cw2, eps))
      ++hits;
  }
  return {static_cast<double>(hits) / trials, false};
}

Word midpoint_input(const Word& a, const Word& b) {
  Word x = a;
  int d = hamming_distance(a, b);
  int flips = (d + 1) / 2;
  for (int i = 0; i < a.length() && flips > 0; ++i) {
    if (a.symbols[i] != b.symbols[i]) {
      x.symbols[i] = b.symbols[i];
      --flips;
    }
  }
  return x;
}

std::string word_to_string(const Word& w) {
  std::string s;
  for (int v : w.symbols) {
    if (!s.empty()) s += ',';
    s += std::to_string(v);
  }
  return s;
}

}  // namespace

SecurityReport binding_attack(const Codebook& book, const Channel& w, AttackStrategy strategy,
                              std::uint64_t seed, const BindingOptions& opt) {
  check_same_shape(book, w, "binding_attack");
  if (book.message_count() < 2)
    throw std::invalid_argument("binding_attack: need at least two messages");
  const int n = book.block_length();
  const int nx = w.input_count();
  const int nz = w.output_count();
  const int kl = book.message_count() * book.key_count();

  // Ordered list of codeword pairs with distinct messages.
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < kl; ++i)
    for (int j = i + 1; j < kl; ++j)
      if (i / book.key_count() != j / book.key_count()) pairs.emplace_back(i, j);

  SecurityReport rep;
  rep.seed = seed;
  rep.trials = opt.trials;
  if (book.params().analytic_bounds_apply) {
    rep.epsilon_bound = book.params().epsilon_bound;
    rep.delta_bound = book.params().delta_bound;
  }

  double best = -1.0;
  bool all_exact = true;
  std::string best_desc;

  auto describe = [&](const char* how, const Word& x, int ci, int cj) {
    return std::string(how) + " input [" + word_to_string(x) + "] against (a=" +
           std::to_string(ci / book.key_count() + 1) + ",mu=" + std::to_string(ci % book.key_count() + 1) +
           ")/(a=" + std::to_string(cj / book.key_count() + 1) + ",mu=" +
           std::to_string(cj % book.key_count() + 1) + ")";
  };

  if (strategy == AttackStrategy::Exhaustive) {
    if (!within_enum_limit(nx, n, opt.enum_limit) ||
        !within_enum_limit(nz, n, opt.enum_limit,
                           std::exp2(n * std::log2(static_cast<double>(nx)))))
      throw enumeration_limit_error("binding_attack: exhaustive search exceeds the enumeration limit");
    // Precompute each pair's joint acceptance region once, then score every
    // candidate input exactly.
    std::int64_t z_count = 1;
    for (int i = 0; i < n; ++i) z_count *= nz;
    std::vector<std::vector<char>> region(pairs.size(), std::vector<char>(z_count, 0));
    {
      std::vector<std::vector<char>> accepts(kl, std::vector<char>(z_count, 0));
      std::int64_t zi = 0;
      for_each_word(nz, n, [&](const std::vector<int>& z) {
        Word zw{z, nz};
        for (int c = 0; c < kl; ++c)
          accepts[c][zi] = is_cond_typical(zw, book.channel(), book.words()[c],
                                           book.params().eps_test);
        ++zi;
      });
      for (std::size_t pi = 0; pi < pairs.size(); ++pi)
        for (std::int64_t i = 0; i < z_count; ++i)
          region[pi][i] = accepts[pairs[pi].first][i] && accepts[pairs[pi].second][i];
    }
    for_each_word(nx, n, [&](const std::vector<int>& xd) {
      std::vector<double> pz(z_count);
      std::int64_t zi = 0;
      Word xw{xd, nx};
      for_each_word(nz, n, [&](const std::vector<int>& z) {
        pz[zi] = word_output_prob(w, xw, z);
        ++zi;
      });
      for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
        double p = 0.0;
        for (std::int64_t i = 0; i < z_count; ++i)
          if (region[pi][i]) p += pz[i];
        if (p > best) {
          best = p;
          best_desc = describe("exhaustive", xw, pairs[pi].first, pairs[pi].second);
        }
      }
    });
  } else {
    for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
      const Word& cw1 = book.words()[pairs[pi].first];
      const Word& cw2 = book.words()[pairs[pi].second];
      Word x = midpoint_input(cw1, cw2);
      std::uint64_t pair_seed = mix_seed(seed, static_cast<std::uint64_t>(pi));
      JointAcceptance ja =
          joint_acceptance(book, w, x, cw1, cw2, opt.trials, mix_seed(pair_seed, 0), opt.enum_limit);
      all_exact = all_exact && ja.exact;
      const char* how = "midpoint";

      if (strategy == AttackStrategy::HillClimb) {
        how = "hill-climb";
        long evals = 1;
        bool improved = true;
        while (improved && evals < opt.hill_climb_budget) {
          improved = false;
          for (int pos = 0; pos < n && evals < opt.hill_climb_budget; ++pos) {
            for (int s = 0; s < nx && evals < opt.hill_climb_budget; ++s) {
              if (s == x.symbols[pos]) continue;
              Word cand = x;
              cand.symbols[pos] = s;
              JointAcceptance cj = joint_acceptance(book, w, cand, cw1, cw2, opt.trials,
                                                    mix_seed(pair_seed, static_cast<std::uint64_t>(evals)),
                                                    opt.enum_limit);
              ++evals;
              all_exact = all_exact && cj.exact;
              if (cj.value > ja.value) {
                ja = cj;
                x = std::move(cand);
                improved = true;
                break;
              }
            }
            if (improved) break;
          }
        }
      }
      if (ja.value > best) {
        best = ja.value;
        best_desc = describe(how, x, pairs[pi].first, pairs[pi].second);
      }
    }
  }

  rep.delta_bind = std::max(best, 0.0);
  rep.method = (strategy == AttackStrategy::Exhaustive || all_exact) ? CheckMethod::Exact
                                                                     : CheckMethod::MonteCarlo;
  rep.attack_description = best_desc;
  return rep;
}

ReferenceScheme remark_f_scheme() {
  std::vector<std::string> labels{"0", "1", "2", "3"};
  std::vector<std::vector<double>> m(4, std::vector<double>(4, 0.0));
  for (int x = 0; x < 4; ++x) {
    m[x][x] = 0.5;
    m[x][(x + 1) % 4] = 0.5;
  }
  Channel f(labels, labels, m);

  DeskOverrides ov;
  ov.eps_test = 0.5;   // accepts exactly the support of the claimed input's row
  ov.eps_code = 0.75;  // single-letter words sit at type distance 3/4 from uniform
  ParameterSet ps = derive_parameters(f, Distribution::uniform(4), 1, 0.4, ParamMode::Desk, ov);

  // codeword(a, mu) carries the letter (a-1) + 2 (mu-1)
  std::vector<Word> words;
  for (int b = 0; b < 2; ++b)
    for (int c = 0; c < 2; ++c) words.push_back(make_word({b + 2 * c}, 4));
  Codebook book(f, ps, 2, 2, words, 0, CodebookBuildLog{});

  SecurityReport ref;
  ref.method = CheckMethod::Exact;
  double eps = measure_concealing_exact(book, f, 1, 2).value;
  double acc_sum = 0.0;
  for (const Word& cw : book.words()) acc_sum += cond_typical_set_prob(f, cw, ps.eps_test);
  ref.epsilon_measured = eps;
  ref.delta_sound = 1.0 - acc_sum / 4.0;
  ref.delta_bind = binding_attack(book, f, AttackStrategy::Exhaustive, 0).delta_bind;
  ref.attack_description = "reference four-letter scheme: exact values";
  return ReferenceScheme{std::move(f), std::move(book), std::move(ref)};
}

ConverseAudit converse_audit(const Codebook& book, const Channel& w, std::int64_t limit) {
  check_same_shape(book, w, "converse_audit");
  const int k = book.message_count();
  const int l = book.key_count();
  const int n = book.block_length();
  const int nz = w.output_count();
  if (k < 2) throw std::invalid_argument("converse_audit: need at least two messages");
  if (!within_enum_limit(nz, n, limit, static_cast<double>(k) * l))
    throw enumeration_limit_error("converse_audit: K L |Z|^n exceeds the enumeration limit");

  const int kl = k * l;
  const double w_each = 1.0 / kl;  // uniform message and key

  // Codewords grouped by identical words (distinct for every built codebook,
  // but the entropies are computed generally).
  std::map<std::vector<int>, std::vector<int>> groups;
  for (int c = 0; c < kl; ++c) groups[book.words()[c].symbols].push_back(c);

  ConverseAudit audit;
  audit.n = n;
  audit.message_count = k;
  audit.h_a = std::log2(static_cast<double>(k));

  double h_z = 0.0, h_x_given_z = 0.0, h_a_given_z = 0.0, h_ax_given_z = 0.0, h_a_given_xz = 0.0;
  double i_a_z = 0.0;
  std::vector<double> pz_by_a(k);
  for_each_word(nz, n, [&](const std::vector<int>& z) {
    std::vector<double> pc(kl);
    double qz = 0.0;
    for (int c = 0; c < kl; ++c) {
      pc[c] = w_each * word_output_prob(w, book.words()[c], z);
      qz += pc[c];
    }
    if (qz == 0.0) return;
    h_z -= xlog2x(qz);
    // posterior over codeword entries = posterior over (message, word) pairs
    double h_post_c = 0.0;
    for (int c = 0; c < kl; ++c)
      if (pc[c] > 0.0) h_post_c -= xlog2x(pc[c] / qz);
    h_ax_given_z += qz * h_post_c;
    // posterior over words (possibly merged groups) and messages within them
    double h_post_x = 0.0;
    for (const auto& [word, members] : groups) {
      double px = 0.0;
      for (int c : members) px += pc[c];
      if (px > 0.0) {
        h_post_x -= xlog2x(px / qz);
        double h_inner = 0.0;
        for (int c : members)
          if (pc[c] > 0.0) h_inner -= xlog2x(pc[c] / px);
        h_a_given_xz += px * h_inner;  // weighted by joint p(x, z)
      }
    }
    h_x_given_z += qz * h_post_x;
    // message posterior
    double h_post_a = 0.0;
    for (int a = 0; a < k; ++a) {
      double pa = 0.0;
      for (int mu = 0; mu < l; ++mu) pa += pc[a * l + mu];
      pz_by_a[a] = pa;
      if (pa > 0.0) h_post_a -= xlog2x(pa / qz);
    }
    h_a_given_z += qz * h_post_a;
    for (int a = 0; a < k; ++a) {
      if (pz_by_a[a] > 0.0) {
        double ratio = pz_by_a[a] / ((1.0 / k) * qz);
        i_a_z += pz_by_a[a] * std::log2(ratio);
      }
    }
  });
  audit.h_x_given_z = h_x_given_z;
  audit.i_a_z = i_a_z;
  audit.h_a_given_xz = h_a_given_xz;

  // Single-letter conditional entropies.
  double sum_hk = 0.0;
  for (int pos = 0; pos < n; ++pos) {
    const int nxc = w.input_count();
    std::vector<std::vector<double>> joint(nxc, std::vector<double>(nz, 0.0));
    for (int c = 0; c < kl; ++c) {
      int x = book.words()[c].symbols[pos];
      for (int z = 0; z < nz; ++z) joint[x][z] += w_each * w.prob(x, z);
    }
    for (int z = 0; z < nz; ++z) {
      double col = 0.0;
      for (int x = 0; x < nxc; ++x) col += joint[x][z];
      if (col == 0.0) continue;
      double h_post = 0.0;
      for (int x = 0; x < nxc; ++x)
        if (joint[x][z] > 0.0) h_post -= xlog2x(joint[x][z] / col);
      sum_hk += col * h_post;
    }
  }
  audit.sum_h_xk_given_zk = sum_hk;

  // Operational quantities.
  double eps = 0.0;
  for (int a = 1; a <= k; ++a)
    for (int ap = a + 1; ap <= k; ++ap)
      eps = std::max(eps, measure_concealing_exact(book, w, a, ap, limit).value);
  audit.epsilon = eps;
  BindingOptions bo;
  bo.enum_limit = limit;
  audit.delta = binding_attack(book, w, AttackStrategy::Exhaustive, 0, bo).delta_bind.value();

  audit.b_rate = 0.0;  // the scheme sends nothing over a noiseless channel
  audit.epsilon_prime = binary_entropy_clamped(2.0 * eps) +
                        2.0 * n * eps * (audit.b_rate + std::log2(static_cast<double>(nz)));
  double droot = 5.0 * std::cbrt(audit.delta);
  audit.delta_prime = binary_entropy_clamped(droot) + droot * std::log2(static_cast<double>(k));
  audit.max_equivocation = maximize_equivocation(w).value;
  audit.rate_bound_rhs =
      n * audit.max_equivocation +
      n * (eps * (audit.b_rate + std::log2(static_cast<double>(nz))) +
           droot * std::log2(static_cast<double>(w.input_count()))) +
      2.0;

  const double slop = 1e-9;
  auto push = [&](std::string name, double lhs, double rhs) {
    audit.chain.push_back(ChainCheck{std::move(name), lhs, rhs, lhs <= rhs + slop});
  };
  audit.chain.push_back(ChainCheck{"entropy-splitting-identity", h_x_given_z + h_a_given_xz,
                                   h_ax_given_z,
                                   std::fabs(h_x_given_z + h_a_given_xz - h_ax_given_z) <= slop});
  push("message-entropy-lower", h_a_given_z, h_ax_given_z);
  push("leakage-bound", i_a_z, audit.epsilon_prime);
  push("reveal-identifies-message", h_a_given_xz, audit.delta_prime);
  push("single-letter-subadditivity", h_x_given_z, sum_hk);
  push("equivocation-vs-message-entropy", audit.h_a - audit.epsilon_prime - audit.delta_prime,
       h_x_given_z);
  push("rate-upper-bound", audit.h_a, audit.rate_bound_rhs);

  audit.holds = true;
  for (const ChainCheck& c : audit.chain) audit.holds = audit.holds && c.holds;
  return audit;
}

}  // namespace dmclab
