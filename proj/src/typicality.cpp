#include "dmclab/typicality.hpp"

#include <cmath>
#include <map>

#include "dmclab/information.hpp"

namespace dmclab {
namespace {

// Shared membership window: |k_i - ref_i * scale| <= slack for all i, with
// counts forced to zero outside the support of ref.  Every typicality decision
// in the library routes through this one predicate so that the enumeration
// paths and the per-word predicates can never disagree on boundary cases.
bool counts_within(const std::vector<int>& k, const std::vector<double>& ref, double scale,
                   double slack) {
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (ref[i] == 0.0) {
      if (k[i] != 0) return false;
    } else if (std::fabs(k[i] - ref[i] * scale) > slack) {
      return false;
    }
  }
  return true;
}

// Visit every count vector of length m summing to n, lexicographically.
template <typename Fn>
void for_each_type_impl(std::vector<int>& k, int pos, int remaining, Fn&& fn) {
  if (pos + 1 == static_cast<int>(k.size())) {
    k[pos] = remaining;
    fn(k);
    return;
  }
  for (int c = 0; c <= remaining; ++c) {
    k[pos] = c;
    for_each_type_impl(k, pos + 1, remaining - c, fn);
  }
  k[pos] = 0;
}

template <typename Fn>
void for_each_type(int n, int m, Fn&& fn) {
  std::vector<int> k(m, 0);
  for_each_type_impl(k, 0, n, fn);
}

void check_type_budget(int n, int m, std::int64_t limit, const char* who) {
  double count = type_class_count(n, m);
  if (count > static_cast<double>(limit))
    throw enumeration_limit_error(std::string(who) + ": " + std::to_string(count) +
                                  " type classes exceed the limit of " + std::to_string(limit));
}

// log2 of the probability mass of one type class under iid `measure`, or
// -inf when the class touches a zero of the measure.
double log2_class_mass(int n, const std::vector<int>& k, const std::vector<double>& measure) {
  double lg = log2_multinomial(n, k);
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i] == 0) continue;
    if (measure[i] == 0.0) return kNegInf;
    lg += k[i] * std::log2(measure[i]);
  }
  return lg;
}

// Probability, under iid `measure` over `len` letters, of counts falling in
// the window around ref with absolute slack.  The workhorse behind both the
// plain and conditional exact set probabilities.
double window_prob(const std::vector<double>& ref, int len, double slack,
                   const std::vector<double>& measure, std::int64_t limit, const char* who) {
  if (len == 0) return 1.0;
  check_type_budget(len, static_cast<int>(ref.size()), limit, who);
  Log2Accumulator acc;
  for_each_type(len, static_cast<int>(ref.size()), [&](const std::vector<int>& k) {
    if (counts_within(k, ref, len, slack)) acc.add(log2_class_mass(len, k, measure));
  });
  return acc.value();
}

double window_log2_size(const std::vector<double>& ref, int len, double slack, std::int64_t limit,
                        const char* who) {
  if (len == 0) return 0.0;
  check_type_budget(len, static_cast<int>(ref.size()), limit, who);
  Log2Accumulator acc;
  for_each_type(len, static_cast<int>(ref.size()), [&](const std::vector<int>& k) {
    if (counts_within(k, ref, len, slack)) acc.add(log2_multinomial(len, k));
  });
  return acc.log2_value();
}

void check_word_channel(const Channel& w, const Word& x, const char* who) {
  if (x.alphabet_size != w.input_count())
    throw std::invalid_argument(std::string(who) + ": word alphabet does not match channel input");
}

}  // namespace

bool is_typical(const Word& w, const Distribution& p, double eps) {
  if (w.alphabet_size != p.size())
    throw std::invalid_argument("is_typical: word alphabet does not match distribution");
  if (w.length() == 0) throw std::invalid_argument("is_typical: empty word");
  return counts_within(symbol_counts(w), p.probs(), w.length(), eps * w.length());
}

bool is_cond_typical(const Word& z, const Channel& w, const Word& x, double eps) {
  check_word_channel(w, x, "is_cond_typical");
  if (z.alphabet_size != w.output_count())
    throw std::invalid_argument("is_cond_typical: word alphabet does not match channel output");
  if (z.length() != x.length()) throw std::invalid_argument("is_cond_typical: length mismatch");
  const int n = x.length();
  if (n == 0) throw std::invalid_argument("is_cond_typical: empty word");
  // Joint counts N(a,b) against W(b|a) * N(a); checked class by class.
  std::vector<std::vector<int>> joint(w.input_count(), std::vector<int>(w.output_count(), 0));
  std::vector<int> nx(w.input_count(), 0);
  for (int i = 0; i < n; ++i) {
    ++joint[x.symbols[i]][z.symbols[i]];
    ++nx[x.symbols[i]];
  }
  for (int a = 0; a < w.input_count(); ++a) {
    if (nx[a] == 0) continue;
    if (!counts_within(joint[a], w.row(a), nx[a], eps * n)) return false;
  }
  return true;
}

double type_class_count(int n, int alphabet) {
  // C(n + m - 1, m - 1) evaluated in log space; exact for every size that
  // could conceivably be enumerated.
  std::vector<int> parts{n, alphabet - 1};
  return std::round(std::exp2(log2_multinomial(n + alphabet - 1, parts)));
}

double typical_set_prob(const Distribution& ref, double eps, int n, const Distribution& measure,
                        std::int64_t type_limit) {
  if (ref.size() != measure.size())
    throw std::invalid_argument("typical_set_prob: reference/measure size mismatch");
  if (n <= 0) throw std::invalid_argument("typical_set_prob: need n >= 1");
  return window_prob(ref.probs(), n, eps * n, measure.probs(), type_limit, "typical_set_prob");
}

double typical_set_log2_size(const Distribution& ref, double eps, int n, std::int64_t type_limit) {
  if (n <= 0) throw std::invalid_argument("typical_set_log2_size: need n >= 1");
  return window_log2_size(ref.probs(), n, eps * n, type_limit, "typical_set_log2_size");
}

double cond_typical_set_prob(const Channel& w, const Word& x, double eps, std::int64_t type_limit) {
  check_word_channel(w, x, "cond_typical_set_prob");
  const int n = x.length();
  if (n == 0) throw std::invalid_argument("cond_typical_set_prob: empty word");
  std::vector<int> nx = symbol_counts(x);
  double total_log2 = 0.0;
  for (int a = 0; a < w.input_count(); ++a) {
    if (nx[a] == 0) continue;
    double f = window_prob(w.row(a), nx[a], eps * n, w.row(a), type_limit, "cond_typical_set_prob");
    if (f == 0.0) return 0.0;
    total_log2 += std::log2(f);
  }
  return std::exp2(total_log2);
}

double cond_typical_set_log2_size(const Channel& w, const Word& x, double eps,
                                  std::int64_t type_limit) {
  check_word_channel(w, x, "cond_typical_set_log2_size");
  const int n = x.length();
  if (n == 0) throw std::invalid_argument("cond_typical_set_log2_size: empty word");
  std::vector<int> nx = symbol_counts(x);
  double total = 0.0;
  for (int a = 0; a < w.input_count(); ++a) {
    if (nx[a] == 0) continue;
    double lg = window_log2_size(w.row(a), nx[a], eps * n, type_limit, "cond_typical_set_log2_size");
    if (lg == kNegInf) return kNegInf;
    total += lg;
  }
  return total;
}

double cond_typical_prob_under(const Channel& w, const Word& x, const Word& y, double eps,
                               std::int64_t type_limit) {
  check_word_channel(w, x, "cond_typical_prob_under");
  check_word_channel(w, y, "cond_typical_prob_under");
  if (x.length() != y.length()) throw std::invalid_argument("cond_typical_prob_under: length mismatch");
  const int n = x.length();
  if (n == 0) throw std::invalid_argument("cond_typical_prob_under: empty word");
  const int nz = w.output_count();

  // Within each letter class of x, outputs are independent but heterogeneous:
  // positions carrying different y letters draw from different rows.  The
  // typicality window only sees the summed output counts of the class, so we
  // convolve per-subclass multinomial type distributions and then weigh the
  // window.
  double total_log2 = 0.0;
  for (int a = 0; a < w.input_count(); ++a) {
    std::vector<int> sub(w.input_count(), 0);  // subclass sizes by y letter
    int na = 0;
    for (int i = 0; i < n; ++i) {
      if (x.symbols[i] == a) {
        ++sub[y.symbols[i]];
        ++na;
      }
    }
    if (na == 0) continue;
    std::map<std::vector<int>, double> cur;
    cur[std::vector<int>(nz, 0)] = 1.0;
    for (int b = 0; b < w.input_count(); ++b) {
      if (sub[b] == 0) continue;
      check_type_budget(sub[b], nz, type_limit, "cond_typical_prob_under");
      std::map<std::vector<int>, double> next;
      for_each_type(sub[b], nz, [&](const std::vector<int>& t) {
        double lg = log2_class_mass(sub[b], t, w.row(b));
        if (lg == kNegInf) return;
        double mass = std::exp2(lg);
        for (const auto& [k, pv] : cur) {
          std::vector<int> merged(nz);
          for (int zz = 0; zz < nz; ++zz) merged[zz] = k[zz] + t[zz];
          next[merged] += pv * mass;
        }
      });
      if (static_cast<std::int64_t>(next.size()) > type_limit)
        throw enumeration_limit_error("cond_typical_prob_under: DP state count exceeds limit");
      cur = std::move(next);
    }
    double class_prob = 0.0;
    for (const auto& [k, pv] : cur)
      if (counts_within(k, w.row(a), na, eps * n)) class_prob += pv;
    if (class_prob <= 0.0) return 0.0;
    total_log2 += std::log2(class_prob);
  }
  return std::exp2(total_log2);
}

// ---------------------------------------------------------------------------
// Sampling

Word sample_word(const Distribution& p, int n, Rng& rng) {
  Word w;
  w.alphabet_size = p.size();
  w.symbols.reserve(n);
  for (int i = 0; i < n; ++i) w.symbols.push_back(rng.sample(p.probs()));
  return w;
}

Word sample_channel_output(const Channel& w, const Word& x, Rng& rng) {
  check_word_channel(w, x, "sample_channel_output");
  Word z;
  z.alphabet_size = w.output_count();
  z.symbols.reserve(x.length());
  for (int s : x.symbols) z.symbols.push_back(rng.sample(w.row(s)));
  return z;
}

Word sample_typical_word(const Distribution& p, double eps, int n, Rng& rng, int max_attempts) {
  for (int a = 0; a < max_attempts; ++a) {
    Word w = sample_word(p, n, rng);
    if (is_typical(w, p, eps)) return w;
  }
  throw std::runtime_error("sample_typical_word: no typical word after " +
                           std::to_string(max_attempts) + " attempts (width too small?)");
}

Word sample_cond_typical_word(const Channel& w, const Word& x, double eps, Rng& rng,
                              int max_attempts) {
  for (int a = 0; a < max_attempts; ++a) {
    Word z = sample_channel_output(w, x, rng);
    if (is_cond_typical(z, w, x, eps)) return z;
  }
  throw std::runtime_error("sample_cond_typical_word: no conditionally typical word after " +
                           std::to_string(max_attempts) + " attempts (width too small?)");
}

Word near_type_word(const Distribution& p, int n) {
  const int m = p.size();
  std::vector<int> counts(m);
  std::vector<std::pair<double, int>> frac;
  int assigned = 0;
  for (int i = 0; i < m; ++i) {
    double exact = p[i] * n;
    counts[i] = static_cast<int>(std::floor(exact));
    assigned += counts[i];
    frac.emplace_back(exact - counts[i], i);
  }
  std::stable_sort(frac.begin(), frac.end(), [](const auto& a, const auto& b) {
    return a.first > b.first;  // largest remainder first; stable = lowest index on ties
  });
  for (int r = 0; r < n - assigned; ++r) ++counts[frac[r].second];
  Word w;
  w.alphabet_size = m;
  w.symbols.reserve(n);
  for (int i = 0; i < m; ++i) w.symbols.insert(w.symbols.end(), counts[i], i);
  return w;
}

// ---------------------------------------------------------------------------
// Bound suite

namespace {

// Fraction of per-trial predicate hits, evaluated with one derived stream per
// trial so the result is independent of the thread count.
double mc_fraction(long trials, std::uint64_t seed, int threads,
                   const std::function<bool(Rng&)>& pred) {
  std::vector<long> hits(std::max(1, threads), 0);
  parallel_for(trials, threads, [&](long b, long e, int worker) {
    long h = 0;
    for (long t = b; t < e; ++t) {
      Rng rng(mix_seed(seed, static_cast<std::uint64_t>(t)));
      if (pred(rng)) ++h;
    }
    hits[worker] = h;
  });
  long total = 0;
  for (long h : hits) total += h;
  return static_cast<double>(total) / static_cast<double>(trials);
}

double log2_word_prob(const Word& w, const Distribution& p) {
  std::vector<int> k = symbol_counts(w);
  double lg = 0.0;
  for (int i = 0; i < p.size(); ++i) {
    if (k[i] == 0) continue;
    if (p[i] == 0.0) return kNegInf;
    lg += k[i] * std::log2(p[i]);
  }
  return lg;
}

double log2_output_prob(const Word& z, const Channel& w, const Word& x) {
  double lg = 0.0;
  for (int i = 0; i < z.length(); ++i) {
    double v = w.prob(x.symbols[i], z.symbols[i]);
    if (v == 0.0) return kNegInf;
    lg += std::log2(v);
  }
  return lg;
}

}  // namespace

std::vector<BoundCheckResult> verify_bound_suite(const Channel& w, const Distribution& p,
                                                 const std::vector<std::pair<int, double>>& grid,
                                                 long trials, std::uint64_t seed, int threads) {
  if (p.size() != w.input_count())
    throw std::invalid_argument("verify_bound_suite: distribution does not match channel input");
  const int nx = w.input_count();
  const int nz = w.output_count();
  const double slop = 1e-9;  // protects non-strict analytic inequalities from float round-off
  std::vector<BoundCheckResult> out;

  long grid_index = 0;
  for (const auto& [n, eps] : grid) {
    const std::string suffix = " (n=" + std::to_string(n) + ", eps=" + std::to_string(eps) + ")";
    const double h_p = entropy(p);
    const double d_scale = sum_neg_log2(p);
    const double e_scale = max_row_sum_neg_log2(w);
    const Word xref = near_type_word(p, n);
    const Distribution ptype = type_of(xref);
    const double h_w_ptype = conditional_entropy(w, ptype);
    const Distribution q_ref = output_distribution(w, ptype);
    auto sub_seed = [&](int check) {
      return mix_seed(seed, static_cast<std::uint64_t>(grid_index * 64 + check));
    };

    // 1. Probability of the typical set.
    {
      BoundCheckResult r;
      r.name = "typical-set-probability";
      r.analytical = 1.0 - 2.0 * nx * std::exp2(-n * eps * eps / 2.0);
      try {
        r.measured = typical_set_prob(p, eps, n, p);
        r.method = CheckMethod::Exact;
      } catch (const enumeration_limit_error&) {
        r.method = CheckMethod::MonteCarlo;
        r.trials = trials;
        r.seed = sub_seed(1);
        r.measured = mc_fraction(trials, r.seed, threads,
                                 [&](Rng& rng) { return is_typical(sample_word(p, n, rng), p, eps); });
      }
      r.satisfied = r.measured >= r.analytical - slop;
      r.note = "lower bound on P^n(typical set)" + suffix;
      out.push_back(std::move(r));
    }

    // 2. Per-word probability bracket on sampled typical words.
    {
      BoundCheckResult r;
      r.name = "typical-word-probability-bracket";
      r.analytical = 1.0;
      r.method = CheckMethod::MonteCarlo;
      r.trials = std::min<long>(trials, 1000);
      r.seed = sub_seed(2);
      const double lo = -n * h_p - n * eps * d_scale;
      const double hi = -n * h_p + n * eps * d_scale;
      long inside = 0;
      for (long t = 0; t < r.trials; ++t) {
        Rng rng(mix_seed(r.seed, static_cast<std::uint64_t>(t)));
        Word tw = sample_typical_word(p, eps, n, rng);
        double lg = log2_word_prob(tw, p);
        if (lg >= lo - slop && lg <= hi + slop) ++inside;
      }
      r.measured = static_cast<double>(inside) / r.trials;
      r.satisfied = inside == r.trials;
      r.note = "2^(-nH -/+ n eps D) brackets each sampled typical word" + suffix;
      out.push_back(std::move(r));
    }

    // 3/4. Cardinality brackets for the typical set.
    double log2_size = typical_set_log2_size(p, eps, n);
    {
      BoundCheckResult r;
      r.name = "typical-set-size-upper";
      r.log2_domain = true;
      r.analytical = n * (h_p + eps * d_scale);
      r.measured = log2_size;
      r.satisfied = r.measured <= r.analytical + slop;
      r.note = "log2 |typical set| vs n(H + eps D)" + suffix;
      out.push_back(std::move(r));
    }
    {
      BoundCheckResult r;
      r.name = "typical-set-size-lower";
      r.log2_domain = true;
      double prefactor = 1.0 - 2.0 * nx * std::exp2(-n * eps * eps / 2.0);
      r.analytical = prefactor > 0.0 ? std::log2(prefactor) + n * (h_p - eps * d_scale) : kNegInf;
      r.measured = log2_size;
      r.satisfied = r.measured >= r.analytical - slop;
      r.note = prefactor > 0.0 ? "log2 |typical set| vs log2(1-2|X| 2^(-n eps^2/2)) + n(H - eps D)" + suffix
                               : "vacuous: probability prefactor is non-positive" + suffix;
      out.push_back(std::move(r));
    }

    // 5. Size lower bound for any set carrying given typical-measure mass,
    //    instantiated with the typical set itself.
    {
      BoundCheckResult r;
      r.name = "large-prob-set-size-lower";
      r.log2_domain = true;
      double mass;
      try {
        mass = typical_set_prob(p, eps, n, p);
        r.method = CheckMethod::Exact;
      } catch (const enumeration_limit_error&) {
        mass = 0.0;  // degenerate fallback keeps the check vacuous-but-honest
        r.method = CheckMethod::MonteCarlo;
        r.note = "skipped exact mass (enumeration limit); ";
      }
      double arg = mass - 2.0 * nx * std::exp2(-n * eps * eps / 2.0);
      r.analytical = arg > 0.0 ? std::log2(arg) + n * (h_p - eps * d_scale) : kNegInf;
      r.measured = log2_size;
      r.satisfied = r.measured >= r.analytical - slop;
      r.note += "set = typical set with its own exact mass" + suffix;
      out.push_back(std::move(r));
    }

    // 6. Probability of the conditionally typical set.
    {
      BoundCheckResult r;
      r.name = "cond-typical-set-probability";
      r.analytical = 1.0 - 2.0 * nx * nz * std::exp2(-n * eps * eps / 2.0);
      try {
        r.measured = cond_typical_set_prob(w, xref, eps);
        r.method = CheckMethod::Exact;
      } catch (const enumeration_limit_error&) {
        r.method = CheckMethod::MonteCarlo;
        r.trials = trials;
        r.seed = sub_seed(6);
        r.measured = mc_fraction(trials, r.seed, threads, [&](Rng& rng) {
          return is_cond_typical(sample_channel_output(w, xref, rng), w, xref, eps);
        });
      }
      r.satisfied = r.measured >= r.analytical - slop;
      r.note = "lower bound on W^n(cond typical set | near-type word)" + suffix;
      out.push_back(std::move(r));
    }

    // The per-word and cardinality brackets for the conditional set come in
    // two flavors.  The max-class width n*eps*E (E over the worst single
    // letter class) is what the closed-form constants downstream use, but with
    // per-pair count slack eps*n spread over several classes the tight
    // provable width is n*eps*sum_of_class_constants.  Both are checked; the
    // max-class version can genuinely fail and is reported as it falls.
    double e_sum = 0.0;
    {
      std::vector<int> kx = symbol_counts(xref);
      for (int x = 0; x < nx; ++x) {
        if (kx[x] == 0) continue;
        for (int z = 0; z < nz; ++z)
          if (w.prob(x, z) > 0.0) e_sum -= std::log2(w.prob(x, z));
      }
    }

    // 7. Conditional per-word probability bracket (both widths, one sample set).
    {
      BoundCheckResult r;
      r.name = "cond-typical-word-probability-bracket";
      r.analytical = 1.0;
      r.method = CheckMethod::MonteCarlo;
      r.trials = std::min<long>(trials, 1000);
      r.seed = sub_seed(7);
      BoundCheckResult rs = r;
      rs.name = "cond-typical-word-probability-bracket-summed";
      const double lo = -n * h_w_ptype - n * eps * e_scale;
      const double hi = -n * h_w_ptype + n * eps * e_scale;
      const double lo_sum = -n * h_w_ptype - n * eps * e_sum;
      const double hi_sum = -n * h_w_ptype + n * eps * e_sum;
      long inside = 0, inside_sum = 0;
      for (long t = 0; t < r.trials; ++t) {
        Rng rng(mix_seed(r.seed, static_cast<std::uint64_t>(t)));
        Word z = sample_cond_typical_word(w, xref, eps, rng);
        double lg = log2_output_prob(z, w, xref);
        if (lg >= lo - slop && lg <= hi + slop) ++inside;
        if (lg >= lo_sum - slop && lg <= hi_sum + slop) ++inside_sum;
      }
      r.measured = static_cast<double>(inside) / r.trials;
      r.satisfied = inside == r.trials;
      r.note = "2^(-nH(W|type) -/+ n eps E) brackets each sampled output; "
               "E from the worst class alone, so this can fail" + suffix;
      out.push_back(std::move(r));
      rs.measured = static_cast<double>(inside_sum) / rs.trials;
      rs.satisfied = inside_sum == rs.trials;
      rs.note = "provable width: class constants summed instead of maxed" + suffix;
      out.push_back(std::move(rs));
    }

    // 8/9. Conditional cardinality brackets (max-class and summed widths).
    double cond_log2_size = cond_typical_set_log2_size(w, xref, eps);
    {
      BoundCheckResult r;
      r.name = "cond-typical-set-size-upper";
      r.log2_domain = true;
      r.analytical = n * (h_w_ptype + eps * e_scale);
      r.measured = cond_log2_size;
      r.satisfied = r.measured <= r.analytical + slop;
      r.note = "log2 |cond typical set| vs n(H(W|type) + eps E); max-class width" + suffix;
      out.push_back(std::move(r));
    }
    {
      BoundCheckResult r;
      r.name = "cond-typical-set-size-upper-summed";
      r.log2_domain = true;
      r.analytical = n * (h_w_ptype + eps * e_sum);
      r.measured = cond_log2_size;
      r.satisfied = r.measured <= r.analytical + slop;
      r.note = "provable width: class constants summed instead of maxed" + suffix;
      out.push_back(std::move(r));
    }
    {
      BoundCheckResult r;
      r.name = "cond-typical-set-size-lower";
      r.log2_domain = true;
      double prefactor = 1.0 - 2.0 * nx * nz * std::exp2(-n * eps * eps / 2.0);
      r.analytical =
          prefactor > 0.0 ? std::log2(prefactor) + n * (h_w_ptype - eps * e_scale) : kNegInf;
      r.measured = cond_log2_size;
      r.satisfied = r.measured >= r.analytical - slop;
      r.note = prefactor > 0.0 ? "log2 |cond typical set| lower bracket; max-class width" + suffix
                               : "vacuous: probability prefactor is non-positive" + suffix;
      out.push_back(std::move(r));
    }
    {
      BoundCheckResult r;
      r.name = "cond-typical-set-size-lower-summed";
      r.log2_domain = true;
      double prefactor = 1.0 - 2.0 * nx * nz * std::exp2(-n * eps * eps / 2.0);
      r.analytical =
          prefactor > 0.0 ? std::log2(prefactor) + n * (h_w_ptype - eps * e_sum) : kNegInf;
      r.measured = cond_log2_size;
      r.satisfied = r.measured >= r.analytical - slop;
      r.note = prefactor > 0.0 ? "provable width: class constants summed instead of maxed" + suffix
                               : "vacuous: probability prefactor is non-positive" + suffix;
      out.push_back(std::move(r));
    }

    // 10. Conditionally typical outputs are typical for the induced output
    //     marginal at width eps |X|.
    {
      BoundCheckResult r;
      r.name = "cond-typical-in-output-typical";
      r.analytical = 1.0;
      r.method = CheckMethod::MonteCarlo;
      r.trials = trials;
      r.seed = sub_seed(10);
      r.measured = mc_fraction(trials, r.seed, threads, [&](Rng& rng) {
        Word z = sample_cond_typical_word(w, xref, eps, rng);
        return is_typical(z, q_ref, eps * nx);
      });
      r.satisfied = r.measured == 1.0;
      r.note = "sampled cond-typical outputs land in the width eps|X| output typical set" + suffix;
      out.push_back(std::move(r));
    }
    ++grid_index;
  }
  return out;
}

std::vector<BoundCheckResult> chernoff_check(double p, double eta, int n_vars, long trials,
                                             std::uint64_t seed, int threads) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("chernoff_check: p outside (0,1)");
  if (!(eta > 0.0)) throw std::invalid_argument("chernoff_check: eta must be positive");
  if (n_vars <= 0 || trials <= 0) throw std::invalid_argument("chernoff_check: need n_vars, trials >= 1");

  const double bound = std::exp2(-n_vars * p * eta * eta / (2.0 * std::log(2.0)));
  const double upper_cut = (1.0 + eta) * p * n_vars;
  const double lower_cut = (1.0 - eta) * p * n_vars;

  std::vector<long> up(std::max(1, threads), 0), down(std::max(1, threads), 0);
  parallel_for(trials, threads, [&](long b, long e, int worker) {
    long u = 0, d = 0;
    for (long t = b; t < e; ++t) {
      Rng rng(mix_seed(seed, static_cast<std::uint64_t>(t)));
      int successes = 0;
      for (int i = 0; i < n_vars; ++i)
        if (rng.unit() < p) ++successes;
      if (successes >= upper_cut) ++u;
      if (successes <= lower_cut) ++d;
    }
    up[worker] = u;
    down[worker] = d;
  });
  long u_total = 0, d_total = 0;
  for (int i = 0; i < static_cast<int>(up.size()); ++i) {
    u_total += up[i];
    d_total += down[i];
  }

  std::vector<BoundCheckResult> out(2);
  out[0].name = "chernoff-upper-tail";
  out[0].analytical = bound;
  out[0].measured = static_cast<double>(u_total) / trials;
  out[1].name = "chernoff-lower-tail";
  out[1].analytical = bound;
  out[1].measured = static_cast<double>(d_total) / trials;
  for (auto& r : out) {
    r.method = CheckMethod::MonteCarlo;
    r.trials = trials;
    r.seed = seed;
    r.satisfied = r.measured <= r.analytical;
    r.note = "p=" + std::to_string(p) + " eta=" + std::to_string(eta) +
             " N=" + std::to_string(n_vars);
  }
  return out;
}

BoundCheckResult distinct_types_check(const Channel& w, const Word& x, const Word& y, double sigma,
                                      long trials, std::uint64_t seed, int threads) {
  check_word_channel(w, x, "distinct_types_check");
  check_word_channel(w, y, "distinct_types_check");
  const int n = x.length();
  if (y.length() != n) throw std::invalid_argument("distinct_types_check: length mismatch");
  if (hamming_distance(x, y) < sigma * n - 1e-12)
    throw std::invalid_argument("distinct_types_check: words closer than sigma n");

  const double eta = separation_eta(w);
  const int nx = w.input_count();
  const int nz = w.output_count();
  const double eps = sigma * sigma * eta / (2.0 * nx * nx * nz);

  BoundCheckResult r;
  r.name = "distinct-words-confusion";
  r.analytical = 2.0 * std::exp2(-n * std::pow(eps, 4) / 2.0);
  try {
    r.measured = cond_typical_prob_under(w, x, y, eps);
    r.method = CheckMethod::Exact;
  } catch (const enumeration_limit_error&) {
    r.method = CheckMethod::MonteCarlo;
    r.trials = trials;
    r.seed = seed;
    std::vector<long> hits(std::max(1, threads), 0);
    parallel_for(trials, threads, [&](long b, long e, int worker) {
      long h = 0;
      for (long t = b; t < e; ++t) {
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(t)));
        Word z = sample_channel_output(w, y, rng);
        if (is_cond_typical(z, w, x, eps)) ++h;
      }
      hits[worker] = h;
    });
    long total = 0;
    for (long h : hits) total += h;
    r.measured = static_cast<double>(total) / trials;
  }
  r.satisfied = r.measured <= r.analytical + 1e-12;
  r.note = "output law of the far word vs acceptance region of x; eps=" + std::to_string(eps) +
           " eta=" + std::to_string(eta) + " distance=" + std::to_string(hamming_distance(x, y));
  return r;
}

}  // namespace dmclab
