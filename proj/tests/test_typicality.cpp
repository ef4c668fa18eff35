#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <map>

#include "dmclab/information.hpp"
#include "dmclab/typicality.hpp"

using namespace dmclab;

namespace {

Channel ternary_channel() {
  return Channel({"a", "b", "c"}, {"0", "1", "2"},
                 {{0.6, 0.3, 0.1}, {0.2, 0.5, 0.3}, {0.1, 0.2, 0.7}});
}

// visit every length-n word over an m-letter alphabet
void for_each_word(int n, int m, const std::function<void(const Word&)>& fn) {
  Word w;
  w.alphabet_size = m;
  w.symbols.assign(n, 0);
  while (true) {
    fn(w);
    int pos = n - 1;
    while (pos >= 0 && w.symbols[pos] == m - 1) w.symbols[pos--] = 0;
    if (pos < 0) break;
    ++w.symbols[pos];
  }
}

double word_prob(const Word& w, const Distribution& p) {
  double v = 1.0;
  for (int s : w.symbols) v *= p[s];
  return v;
}

double output_prob(const Channel& ch, const Word& x, const Word& z) {
  double v = 1.0;
  for (int i = 0; i < x.length(); ++i) v *= ch.prob(x.symbols[i], z.symbols[i]);
  return v;
}

Word word_of(std::vector<int> symbols, int m) { return make_word(std::move(symbols), m); }

}  // namespace

TEST_CASE("typical membership window is non-strict with a zero clause") {
  Distribution half = Distribution::uniform(2);
  CHECK(is_typical(word_of({0, 0, 0, 0, 0, 1, 1, 1, 1, 1}, 2), half, 0.1));
  CHECK(is_typical(word_of({0, 0, 0, 0, 0, 0, 1, 1, 1, 1}, 2), half, 0.1));  // |6-5| = 1 = eps n
  CHECK(!is_typical(word_of({0, 0, 0, 0, 0, 0, 0, 1, 1, 1}, 2), half, 0.1));

  Distribution point({1.0, 0.0});
  CHECK(is_typical(word_of({0, 0, 0, 0}, 2), point, 0.5));
  CHECK(!is_typical(word_of({0, 0, 0, 1}, 2), point, 0.5));  // support violation beats any width

  CHECK_THROWS_AS(is_typical(word_of({0, 1}, 2), Distribution::uniform(3), 0.1),
                  std::invalid_argument);
}

TEST_CASE("conditional membership window by hand") {
  Channel b = binary_symmetric_channel(0.1);
  Word x = word_of({0, 0, 0, 0, 0, 0, 0, 0, 0, 0}, 2);
  auto flips = [&](int k) {
    std::vector<int> s(10, 0);
    for (int i = 0; i < k; ++i) s[i] = 1;
    return word_of(s, 2);
  };
  // window |k - 0.1*10| <= 0.1*10 = 1: k in {0, 1, 2}
  CHECK(is_cond_typical(flips(0), b, x, 0.1));
  CHECK(is_cond_typical(flips(1), b, x, 0.1));
  CHECK(is_cond_typical(flips(2), b, x, 0.1));
  CHECK(!is_cond_typical(flips(3), b, x, 0.1));

  Channel id = identity_channel(2);
  CHECK(is_cond_typical(x, id, x, 0.3));
  CHECK(!is_cond_typical(flips(1), id, x, 0.3));  // zero clause

  CHECK_THROWS_AS(is_cond_typical(flips(1), b, word_of({0, 0}, 2), 0.1), std::invalid_argument);
}

TEST_CASE("type class counts") {
  CHECK(type_class_count(10, 2) == 11.0);
  CHECK(type_class_count(12, 2) == 13.0);
  CHECK(type_class_count(5, 3) == 21.0);
  CHECK(type_class_count(7, 3) == 36.0);
}

TEST_CASE("exact set probability matches brute force, binary n=12") {
  const int n = 12;
  Distribution p({0.3, 0.7});
  Distribution u = Distribution::uniform(2);
  for (double eps : {0.05, 0.1, 0.25}) {
    double direct = 0.0, direct_cross = 0.0;
    long count = 0;
    for_each_word(n, 2, [&](const Word& w) {
      if (is_typical(w, p, eps)) {
        direct += word_prob(w, p);
        ++count;
      }
      if (is_typical(w, u, eps)) direct_cross += word_prob(w, p);
    });
    CHECK(std::fabs(typical_set_prob(p, eps, n, p) - direct) < 1e-12);
    // reference distribution different from the sampling measure
    CHECK(std::fabs(typical_set_prob(u, eps, n, p) - direct_cross) < 1e-12);
    double lg = typical_set_log2_size(p, eps, n);
    if (count == 0)
      CHECK(lg == kNegInf);
    else
      CHECK(std::fabs(lg - std::log2(double(count))) < 1e-12);
  }
}

TEST_CASE("exact set probability matches brute force, ternary n=7") {
  const int n = 7;
  Distribution p({0.2, 0.5, 0.3});
  for (double eps : {0.08, 0.2}) {
    double direct = 0.0;
    long count = 0;
    for_each_word(n, 3, [&](const Word& w) {
      if (is_typical(w, p, eps)) {
        direct += word_prob(w, p);
        ++count;
      }
    });
    CHECK(std::fabs(typical_set_prob(p, eps, n, p) - direct) < 1e-12);
    if (count > 0) CHECK(std::fabs(typical_set_log2_size(p, eps, n) - std::log2(double(count))) < 1e-12);
  }
}

TEST_CASE("width zero captures exactly the on-type class") {
  // counts must hit (9,1) exactly: C(10,1) 0.9^9 0.1
  Distribution p({0.9, 0.1});
  CHECK(std::fabs(typical_set_prob(p, 0.0, 10, p) - 0.38742048900000015) < 1e-15);
}

TEST_CASE("conditional probabilities match brute force, binary n=12") {
  Channel b = binary_symmetric_channel(0.1);
  Word x = word_of({0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1}, 2);
  Word y = word_of({1, 1, 1, 0, 0, 0, 1, 1, 1, 1, 1, 1}, 2);
  for (double eps : {0.05, 0.15}) {
    double direct_x = 0.0, direct_under_y = 0.0;
    long count = 0;
    for_each_word(12, 2, [&](const Word& z) {
      if (is_cond_typical(z, b, x, eps)) {
        direct_x += output_prob(b, x, z);
        direct_under_y += output_prob(b, y, z);
        ++count;
      }
    });
    CHECK(std::fabs(cond_typical_set_prob(b, x, eps) - direct_x) < 1e-12);
    CHECK(std::fabs(cond_typical_prob_under(b, x, y, eps) - direct_under_y) < 1e-12);
    CHECK(std::fabs(cond_typical_prob_under(b, x, x, eps) - direct_x) < 1e-12);
    if (count > 0)
      CHECK(std::fabs(cond_typical_set_log2_size(b, x, eps) - std::log2(double(count))) < 1e-12);
  }
}

TEST_CASE("conditional probabilities match brute force, ternary n=7") {
  Channel w3 = ternary_channel();
  Word x = word_of({0, 0, 1, 1, 1, 2, 2}, 3);
  Word y = word_of({2, 2, 1, 1, 0, 0, 2}, 3);
  for (double eps : {0.1, 0.3}) {
    double direct_x = 0.0, direct_under_y = 0.0;
    for_each_word(7, 3, [&](const Word& z) {
      if (is_cond_typical(z, w3, x, eps)) {
        direct_x += output_prob(w3, x, z);
        direct_under_y += output_prob(w3, y, z);
      }
    });
    CHECK(std::fabs(cond_typical_set_prob(w3, x, eps) - direct_x) < 1e-12);
    CHECK(std::fabs(cond_typical_prob_under(w3, x, y, eps) - direct_under_y) < 1e-12);
  }
}

TEST_CASE("enumeration budgets throw instead of stalling") {
  Distribution u = Distribution::uniform(2);
  CHECK_THROWS_AS(typical_set_prob(u, 0.1, 100, u, 5), enumeration_limit_error);
  CHECK_THROWS_AS(typical_set_log2_size(u, 0.1, 100, 5), enumeration_limit_error);
  Channel b = binary_symmetric_channel(0.1);
  Word x = near_type_word(u, 100);
  CHECK_THROWS_AS(cond_typical_set_prob(b, x, 0.1, 5), enumeration_limit_error);
}

TEST_CASE("samplers respect their membership predicates and seeds") {
  Distribution p({0.3, 0.7});
  Channel b = binary_symmetric_channel(0.1);
  Rng rng(404);
  Word x = near_type_word(p, 30);
  for (int i = 0; i < 50; ++i) {
    Word tw = sample_typical_word(p, 0.1, 30, rng);
    CHECK(is_typical(tw, p, 0.1));
    Word z = sample_cond_typical_word(b, x, 0.1, rng);
    CHECK(is_cond_typical(z, b, x, 0.1));
  }

  Rng r1(99), r2(99);
  CHECK(sample_word(p, 50, r1).symbols == sample_word(p, 50, r2).symbols);
  Rng r3(99), r4(100);
  CHECK(sample_word(p, 50, r3).symbols != sample_word(p, 50, r4).symbols);

  // impossible widths give up with a clear failure
  Rng r5(1);
  CHECK_THROWS_AS(sample_typical_word(Distribution::uniform(2), 0.0, 9, r5, 100),
                  std::runtime_error);
}

TEST_CASE("channel output sampler tracks the row frequencies") {
  Channel b = binary_symmetric_channel(0.1);
  Word x = near_type_word(Distribution::uniform(2), 2000);
  Rng rng(7);
  Word z = sample_channel_output(b, x, rng);
  long flips = 0;
  for (int i = 0; i < 2000; ++i)
    if (z.symbols[i] != x.symbols[i]) ++flips;
  CHECK(flips > 120);
  CHECK(flips < 280);  // 200 expected, ~13 sd
}

TEST_CASE("near-type words use largest remainder with stable ties") {
  Word w = near_type_word(Distribution::uniform(2), 10);
  CHECK(w.symbols == std::vector<int>{0, 0, 0, 0, 0, 1, 1, 1, 1, 1});

  Word odd = near_type_word(Distribution::uniform(2), 11);
  CHECK(symbol_counts(odd) == std::vector<int>{6, 5});  // tie goes to the lower index

  Word t = near_type_word(Distribution::uniform(3), 10);
  CHECK(symbol_counts(t) == std::vector<int>{4, 3, 3});

  Word skew = near_type_word(Distribution({0.9, 0.1}), 10);
  CHECK(symbol_counts(skew) == std::vector<int>{9, 1});
}

TEST_CASE("bound suite reports every check and passes the provable ones") {
  Channel b = binary_symmetric_channel(0.1);
  Distribution u = Distribution::uniform(2);
  std::vector<std::pair<int, double>> grid{{20, 0.1}};
  auto results = verify_bound_suite(b, u, grid, 2000, 2);

  std::map<std::string, BoundCheckResult> by_name;
  for (const auto& r : results) {
    CHECK(!r.note.empty());
    by_name[r.name] = r;
  }
  for (const char* name :
       {"typical-set-probability", "typical-word-probability-bracket", "typical-set-size-upper",
        "typical-set-size-lower", "large-prob-set-size-lower", "cond-typical-set-probability",
        "cond-typical-word-probability-bracket", "cond-typical-word-probability-bracket-summed",
        "cond-typical-set-size-upper", "cond-typical-set-size-upper-summed",
        "cond-typical-set-size-lower", "cond-typical-set-size-lower-summed",
        "cond-typical-in-output-typical"}) {
    REQUIRE(by_name.count(name) == 1);
  }

  CHECK(by_name["typical-set-probability"].satisfied);
  CHECK(by_name["typical-word-probability-bracket"].satisfied);
  CHECK(by_name["typical-set-size-upper"].satisfied);
  CHECK(by_name["typical-set-size-lower"].satisfied);
  CHECK(by_name["large-prob-set-size-lower"].satisfied);
  CHECK(by_name["cond-typical-set-probability"].satisfied);
  CHECK(by_name["cond-typical-set-size-upper"].satisfied);
  CHECK(by_name["cond-typical-set-size-lower"].satisfied);
  CHECK(by_name["cond-typical-in-output-typical"].satisfied);
  // the summed-constant widths are the provable ones; they must hold
  CHECK(by_name["cond-typical-word-probability-bracket-summed"].satisfied);
  CHECK(by_name["cond-typical-set-size-upper-summed"].satisfied);
  CHECK(by_name["cond-typical-set-size-lower-summed"].satisfied);

  // the displayed max-class width is narrower than what single samples can
  // reach, and the suite is expected to report that honestly at this grid point
  CHECK(!by_name["cond-typical-word-probability-bracket"].satisfied);
  CHECK(by_name["cond-typical-word-probability-bracket"].measured < 1.0);
}

TEST_CASE("bound suite is deterministic and thread-count invariant") {
  Channel b = binary_symmetric_channel(0.1);
  Distribution u = Distribution::uniform(2);
  std::vector<std::pair<int, double>> grid{{20, 0.1}, {30, 0.15}};
  auto a = verify_bound_suite(b, u, grid, 400, 9, 1);
  auto c = verify_bound_suite(b, u, grid, 400, 9, 1);
  auto d = verify_bound_suite(b, u, grid, 400, 9, 3);
  REQUIRE(a.size() == c.size());
  REQUIRE(a.size() == d.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].measured == c[i].measured);
    CHECK(a[i].measured == d[i].measured);
    CHECK(a[i].satisfied == d[i].satisfied);
  }
}

TEST_CASE("chernoff check against the pinned bound") {
  auto rs = chernoff_check(0.5, 0.2, 100, 2000, 11);
  REQUIRE(rs.size() == 2);
  CHECK(rs[0].name == "chernoff-upper-tail");
  CHECK(rs[1].name == "chernoff-lower-tail");
  CHECK(std::fabs(rs[0].analytical - 0.36787944117144233) < 1e-15);
  CHECK(rs[1].analytical == rs[0].analytical);
  CHECK(rs[0].satisfied);
  CHECK(rs[1].satisfied);
  // true tail is about 0.028; the empirical frequency should land nearby
  CHECK(rs[0].measured > 0.005);
  CHECK(rs[0].measured < 0.08);
  CHECK(rs[0].trials == 2000);

  // analytic values for the other pinned parameter triples
  CHECK(std::fabs(chernoff_check(0.1, 1.0, 200, 10, 1)[0].analytical - 4.539992976248483e-05) <
        1e-18);
  CHECK(std::fabs(chernoff_check(0.3, 0.5, 400, 10, 1)[0].analytical - 3.0590232050182594e-07) <
        1e-20);

  // thread invariance
  auto t1 = chernoff_check(0.5, 0.2, 100, 1000, 5, 1);
  auto t3 = chernoff_check(0.5, 0.2, 100, 1000, 5, 3);
  CHECK(t1[0].measured == t3[0].measured);
  CHECK(t1[1].measured == t3[1].measured);

  CHECK_THROWS_AS(chernoff_check(0.0, 0.2, 100, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(chernoff_check(0.5, -1.0, 100, 10, 1), std::invalid_argument);
}

TEST_CASE("confusion check for words at guaranteed distance") {
  Channel b = binary_symmetric_channel(0.1);
  Word x = word_of({0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}, 2);
  Word y = word_of({1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0}, 2);
  BoundCheckResult r = distinct_types_check(b, x, y, 0.5, 200, 3);
  CHECK(r.method == CheckMethod::Exact);
  CHECK(r.satisfied);
  CHECK(r.measured >= 0.0);
  CHECK(r.measured <= 1.0);
  CHECK(r.analytical > 0.0);

  // closer than sigma n is a contract violation
  CHECK_THROWS_AS(distinct_types_check(b, x, x, 0.5, 10, 3), std::invalid_argument);
}
