#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dmclab/commitment.hpp"
#include "dmclab/information.hpp"

using namespace dmclab;

namespace {

ParameterSet desk_params(int n, double sigma, double eps) {
  DeskOverrides ov;
  ov.eps_code = eps;
  ov.eps_test = eps;
  return derive_parameters(binary_symmetric_channel(0.1), Distribution::uniform(2), n, sigma,
                           ParamMode::Desk, ov);
}

}  // namespace

TEST_CASE("theory-mode parameters evaluate the pinned constants") {
  ParameterSet ps = derive_parameters(binary_symmetric_channel(0.1), Distribution::uniform(2), 100,
                                      0.05, ParamMode::Theory);
  CHECK(ps.n == 100);
  CHECK(ps.sigma == 0.05);
  CHECK(std::fabs(ps.eta - 1.6) < 1e-12);
  CHECK(std::fabs(ps.tau - 3.125000000000001e-08) < 1e-20);
  CHECK(std::fabs(ps.eps_test - 0.00025000000000000006) < 1e-18);
  CHECK(ps.eps_code == ps.eps_test);

  CHECK(std::fabs(ps.d_const - 2.0) < 1e-12);
  CHECK(std::fabs(ps.e_const - 3.473931188332412) < 1e-12);
  CHECK(std::fabs(ps.f_const - 2.0) < 1e-12);
  CHECK(std::fabs(ps.g_const - 12.473931188332411) < 1e-12);
  CHECK(std::fabs(ps.g_prime - 16.47393118833241) < 1e-12);
  CHECK(std::fabs(ps.g_sigma - 0.5689955935892812) < 1e-12);

  CHECK(std::fabs(ps.log2_k_bound - -20.377632564370394) < 1e-9);
  CHECK(std::fabs(ps.log2_l_bound - 62.37807320544227) < 1e-9);
  CHECK(!ps.k_bound_at_least_one);

  // the analytic error bounds are honest about being vacuous at this scale
  CHECK(std::fabs(ps.epsilon_bound - 199.99956678348133) < 1e-9);
  CHECK(std::fabs(ps.epsilon_bound_code - ps.epsilon_bound / 2.0) < 1e-9);
  CHECK(ps.delta_bound > 1.0);
  CHECK(ps.epsilon_crossover_n == 457206797.0);
  CHECK(ps.mode == ParamMode::Theory);
  CHECK(ps.analytic_bounds_apply);
}

TEST_CASE("crossover block length is where the concealment bound bites") {
  ParameterSet ps = derive_parameters(binary_symmetric_channel(0.1), Distribution::uniform(2), 100,
                                      0.05, ParamMode::Theory);
  double at = 50.0 * 4.0 * std::exp2(-ps.epsilon_crossover_n * ps.tau);
  double before = 50.0 * 4.0 * std::exp2(-(ps.epsilon_crossover_n - 1.0) * ps.tau);
  CHECK(at < 0.01);
  CHECK(before >= 0.01);
}

TEST_CASE("desk mode picks the smallest workable reveal width") {
  ParameterSet ps = derive_parameters(binary_symmetric_channel(0.1), Distribution::uniform(2), 1000,
                                      0.2, ParamMode::Desk);
  // exact acceptance of the half-and-half probe crosses 0.995 at width 0.02
  CHECK(ps.eps_test == 0.02);
  CHECK(ps.eps_code == 0.02);
  CHECK(!ps.analytic_bounds_apply);
  CHECK(ps.mode == ParamMode::Desk);

  DeskOverrides ov;
  ov.eps_test = 0.05;
  ParameterSet forced = derive_parameters(binary_symmetric_channel(0.1), Distribution::uniform(2),
                                          1000, 0.2, ParamMode::Desk, ov);
  CHECK(forced.eps_test == 0.05);
  CHECK(forced.eps_code == 0.05);  // defaults to the reveal width

  ov.eps_code = 0.1;
  forced = derive_parameters(binary_symmetric_channel(0.1), Distribution::uniform(2), 1000, 0.2,
                             ParamMode::Desk, ov);
  CHECK(forced.eps_code == 0.1);
}

TEST_CASE("parameter preconditions") {
  Distribution u = Distribution::uniform(2);
  Channel b = binary_symmetric_channel(0.1);
  CHECK_THROWS_AS(derive_parameters(b, u, 0, 0.1, ParamMode::Theory), std::invalid_argument);
  CHECK_THROWS_AS(derive_parameters(b, u, 10, 0.0, ParamMode::Theory), std::invalid_argument);
  CHECK_THROWS_AS(derive_parameters(b, u, 10, 0.5, ParamMode::Theory), std::invalid_argument);
  CHECK_THROWS_AS(derive_parameters(b, Distribution::uniform(3), 10, 0.1, ParamMode::Theory),
                  std::invalid_argument);
  // trivial and redundant channels are rejected up front
  CHECK_THROWS_AS(derive_parameters(identity_channel(2), u, 10, 0.1, ParamMode::Theory),
                  std::invalid_argument);
  Channel t({"a", "b", "c"}, {"0", "1"}, {{0.5, 0.5}, {1.0, 0.0}, {0.0, 1.0}});
  CHECK_THROWS_AS(derive_parameters(t, Distribution::uniform(3), 10, 0.1, ParamMode::Theory),
                  std::invalid_argument);
}

TEST_CASE("codebook build postconditions") {
  ParameterSet ps = desk_params(12, 0.05, 0.2);
  Codebook book = build_codebook(binary_symmetric_channel(0.1), ps, 2, 4, 7);
  CHECK(book.message_count() == 2);
  CHECK(book.key_count() >= 2);
  CHECK(book.key_count() <= 4);
  CHECK(static_cast<int>(book.words().size()) == book.message_count() * book.key_count());
  CHECK(book.block_length() == 12);
  CHECK(book.seed() == 7);
  CHECK(book.log().attempts >= 1);

  const double min_d = 2.0 * ps.sigma * 12;
  for (std::size_t i = 0; i < book.words().size(); ++i) {
    const Word& w = book.words()[i];
    CHECK(w.length() == 12);
    CHECK(w.alphabet_size == 2);
    CHECK(is_typical(w, ps.p, ps.eps_code));
    for (std::size_t j = i + 1; j < book.words().size(); ++j)
      CHECK(hamming_distance(w, book.words()[j]) >= min_d - 1e-12);
  }
}

TEST_CASE("codebook build is deterministic per seed") {
  ParameterSet ps = desk_params(12, 0.05, 0.2);
  Codebook a = build_codebook(binary_symmetric_channel(0.1), ps, 2, 4, 7);
  Codebook b = build_codebook(binary_symmetric_channel(0.1), ps, 2, 4, 7);
  Codebook c = build_codebook(binary_symmetric_channel(0.1), ps, 2, 4, 8);
  REQUIRE(a.words().size() == b.words().size());
  for (std::size_t i = 0; i < a.words().size(); ++i) CHECK(a.words()[i] == b.words()[i]);
  bool all_same = a.words().size() == c.words().size();
  if (all_same)
    for (std::size_t i = 0; i < a.words().size(); ++i)
      if (!(a.words()[i] == c.words()[i])) all_same = false;
  CHECK(!all_same);
}

TEST_CASE("impossible geometry gives up with a clear error") {
  // 64 words of length 4 cannot stay pairwise 3.6 apart
  ParameterSet ps = desk_params(4, 0.45, 0.5);
  CHECK_THROWS_AS(build_codebook(binary_symmetric_channel(0.1), ps, 8, 8, 1), std::runtime_error);
}

TEST_CASE("codeword indexing is one-based") {
  Codebook book = build_codebook(binary_symmetric_channel(0.1), desk_params(12, 0.05, 0.2), 2, 4, 7);
  CHECK(book.codeword(1, 1) == book.words().front());
  CHECK(book.codeword(book.message_count(), book.key_count()) == book.words().back());
  CHECK_THROWS_AS(book.codeword(0, 1), std::out_of_range);
  CHECK_THROWS_AS(book.codeword(1, 0), std::out_of_range);
  CHECK_THROWS_AS(book.codeword(3, 1), std::out_of_range);
  CHECK_THROWS_AS(book.codeword(1, book.key_count() + 1), std::out_of_range);
}

TEST_CASE("codebook constructor validates shapes") {
  ParameterSet ps = desk_params(12, 0.05, 0.2);
  Codebook book = build_codebook(binary_symmetric_channel(0.1), ps, 2, 4, 7);
  std::vector<Word> words = book.words();
  CHECK_THROWS_AS(Codebook(binary_symmetric_channel(0.1), ps, 3, 4, words, 7, {}),
                  std::invalid_argument);
  words.back() = make_word(std::vector<int>(11, 0), 2);
  CHECK_THROWS_AS(Codebook(binary_symmetric_channel(0.1), ps, 2, book.key_count(), words, 7, {}),
                  std::invalid_argument);
}

TEST_CASE("channel simulation edge cases and determinism") {
  Word x = make_word({0, 1, 0, 1, 1, 0}, 2);
  Word clean = simulate_channel(binary_symmetric_channel(0.0), x, 5);
  CHECK(clean.symbols == x.symbols);
  Word flipped = simulate_channel(binary_symmetric_channel(1.0), x, 5);
  for (int i = 0; i < 6; ++i) CHECK(flipped.symbols[i] == 1 - x.symbols[i]);

  Word a = simulate_channel(binary_symmetric_channel(0.1), x, 42);
  Word b = simulate_channel(binary_symmetric_channel(0.1), x, 42);
  CHECK(a == b);
}

TEST_CASE("commit draws the key from the seed") {
  Codebook book = build_codebook(binary_symmetric_channel(0.1), desk_params(12, 0.05, 0.2), 2, 4, 7);
  auto [state, word] = commit(book, 2, 99);
  CHECK(state.a == 2);
  CHECK(state.mu >= 1);
  CHECK(state.mu <= book.key_count());
  CHECK(word == book.codeword(state.a, state.mu));
  auto [state2, word2] = commit(book, 2, 99);
  CHECK(state2.mu == state.mu);
  CHECK_THROWS_AS(commit(book, 0, 1), std::out_of_range);
  CHECK_THROWS_AS(commit(book, 3, 1), std::out_of_range);
}

TEST_CASE("reveal accepts clean transmissions and rejects garbage") {
  Codebook book = build_codebook(binary_symmetric_channel(0.1), desk_params(12, 0.05, 0.2), 2, 4, 7);
  const Word& cw = book.codeword(1, 1);
  // noiseless pass-through is comfortably inside the window
  CHECK(reveal_verify(book, cw, 1, 1).verdict == Verdict::Acc);

  Word flipped = cw;
  for (int& s : flipped.symbols) s = 1 - s;
  CHECK(reveal_verify(book, flipped, 1, 1).verdict == Verdict::Rej);

  // out-of-range claims reject with a diagnostic instead of throwing
  VerifyResult vr = reveal_verify(book, cw, 0, 1);
  CHECK(vr.verdict == Verdict::Rej);
  CHECK(!vr.note.empty());
  vr = reveal_verify(book, cw, 1, book.key_count() + 1);
  CHECK(vr.verdict == Verdict::Rej);
  CHECK(!vr.note.empty());

  CHECK_THROWS_AS(reveal_verify(book, make_word({0, 1}, 2), 1, 1), std::invalid_argument);
}

TEST_CASE("honest protocol runs are consistent and mostly accepted") {
  Channel b = binary_symmetric_channel(0.1);
  Codebook book = build_codebook(b, desk_params(12, 0.05, 0.2), 2, 4, 7);
  long accepted = 0;
  const long trials = 200;
  for (long t = 0; t < trials; ++t) {
    Transcript tr = run_protocol(book, b, 1 + int(t % 2), 1000 + t);
    CHECK(tr.a == 1 + int(t % 2));
    CHECK(tr.revealed_a == tr.a);
    CHECK(tr.revealed_mu == tr.mu);
    CHECK(tr.sent == book.codeword(tr.a, tr.mu));
    CHECK(tr.received.length() == 12);
    CHECK(tr.seed == std::uint64_t(1000 + t));
    if (tr.verdict == Verdict::Acc) ++accepted;
  }
  CHECK(accepted >= trials * 9 / 10);

  Transcript x = run_protocol(book, b, 1, 5);
  Transcript y = run_protocol(book, b, 1, 5);
  CHECK(x.mu == y.mu);
  CHECK(x.received == y.received);
  CHECK(x.verdict == y.verdict);

  CHECK_THROWS_AS(run_protocol(book, identity_channel(3), 1, 5), std::invalid_argument);
}
