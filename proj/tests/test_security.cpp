#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dmclab/security.hpp"

using namespace dmclab;

namespace {

ParameterSet desk_params(int n, double sigma, double eps_code, double eps_test) {
  DeskOverrides ov;
  ov.eps_code = eps_code;
  ov.eps_test = eps_test;
  return derive_parameters(binary_symmetric_channel(0.1), Distribution::uniform(2), n, sigma,
                           ParamMode::Desk, ov);
}

Codebook tiny_book(int n, std::vector<std::vector<int>> words, int k, int l, double eps_test) {
  ParameterSet ps = desk_params(n, 0.45, 0.9, eps_test);
  std::vector<Word> ws;
  for (auto& s : words) ws.push_back(make_word(std::move(s), 2));
  return Codebook(binary_symmetric_channel(0.1), ps, k, l, std::move(ws), 0, CodebookBuildLog{});
}

Codebook desk_book(int n, std::uint64_t seed, int k = 2, int l = 4) {
  return build_codebook(binary_symmetric_channel(0.1), desk_params(n, 0.05, 0.2, 0.2), k, l, seed);
}

}  // namespace

TEST_CASE("exact concealment on a one-letter book") {
  Channel b = binary_symmetric_channel(0.1);
  Codebook book = tiny_book(1, {{0}, {1}}, 2, 1, 0.9);
  TvResult tv = measure_concealing_exact(book, b, 1, 2);
  CHECK(tv.method == CheckMethod::Exact);
  CHECK(std::fabs(tv.value - 0.8) < 1e-15);  // TV of the two channel rows
  CHECK(tv.note.find("enumeration") != std::string::npos);
  // symmetry
  CHECK(measure_concealing_exact(book, b, 2, 1).value == tv.value);

  // per-message distance to the product law and the triangle bound
  double d1 = mixture_distance_to_product_exact(book, b, 1);
  double d2 = mixture_distance_to_product_exact(book, b, 2);
  CHECK(std::fabs(d1 - 0.4) < 1e-15);
  CHECK(std::fabs(d2 - 0.4) < 1e-15);
  CHECK(tv.value <= d1 + d2 + 1e-12);

  CHECK_THROWS_AS(measure_concealing_exact(book, b, 0, 1), std::out_of_range);
  CHECK_THROWS_AS(measure_concealing_exact(book, b, 1, 3), std::out_of_range);
}

TEST_CASE("exact concealment respects the enumeration limit") {
  Channel b = binary_symmetric_channel(0.1);
  Codebook book = desk_book(12, 7);
  CHECK_THROWS_AS(measure_concealing_exact(book, b, 1, 2, 100), enumeration_limit_error);
  CHECK_THROWS_AS(mixture_distance_to_product_exact(book, b, 1, 100), enumeration_limit_error);
  // the default limit covers |Z|^12 comfortably
  TvResult tv = measure_concealing_exact(book, b, 1, 2);
  CHECK(tv.value >= 0.0);
  CHECK(tv.value <= 1.0);
  double d1 = mixture_distance_to_product_exact(book, b, 1);
  double d2 = mixture_distance_to_product_exact(book, b, 2);
  CHECK(tv.value <= d1 + d2 + 1e-12);
}

TEST_CASE("sampled concealment is close on a book with a known distance") {
  Channel b = binary_symmetric_channel(0.1);
  Codebook book = tiny_book(1, {{0}, {1}}, 2, 1, 0.9);
  TvResult tv = measure_concealing_mc(book, b, 1, 2, 20000, 3);
  CHECK(tv.method == CheckMethod::MonteCarlo);
  CHECK(tv.trials == 20000);
  CHECK(std::fabs(tv.value - 0.8) < 0.05);
  CHECK(tv.note.find("diagnostic") != std::string::npos);
  // deterministic per seed
  CHECK(measure_concealing_mc(book, b, 1, 2, 20000, 3).value == tv.value);
  CHECK(measure_concealing_mc(book, b, 1, 2, 20000, 4).value != tv.value);
}

TEST_CASE("soundness measurement with exact companion") {
  Channel b = binary_symmetric_channel(0.1);
  Codebook book = desk_book(12, 7);
  SoundnessResult s = measure_soundness(book, b, 600, 21);
  CHECK(s.trials == 600);
  CHECK(s.rejection_rate >= 0.0);
  CHECK(s.rejection_rate < 0.2);
  CHECK(s.std_error > 0.0);
  REQUIRE(s.exact_rejection.has_value());
  CHECK(*s.exact_rejection >= 0.0);
  CHECK(s.consistent_with_exact);

  // same trials through a different physical channel: no exact companion
  SoundnessResult cross = measure_soundness(book, binary_symmetric_channel(0.3), 200, 21);
  CHECK(!cross.exact_rejection.has_value());
  CHECK(cross.rejection_rate > s.rejection_rate);

  // thread-count invariance
  SoundnessResult t1 = measure_soundness(book, b, 600, 21, 1);
  SoundnessResult t3 = measure_soundness(book, b, 600, 21, 3);
  CHECK(t1.rejection_rate == t3.rejection_rate);

  CHECK_THROWS_AS(measure_soundness(book, b, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(measure_soundness(book, identity_channel(3), 10, 1), std::invalid_argument);
}

TEST_CASE("binding attack matches a hand enumeration on a two-letter book") {
  Channel b = binary_symmetric_channel(0.1);
  // codewords 00 and 11, reveal width 0.5: x=00 accepts {00,01,10}, x=11
  // accepts {11,01,10}, joint region {01,10}; the best cheating inputs 01/10
  // reach 0.81 + 0.01 there
  Codebook book = tiny_book(2, {{0, 0}, {1, 1}}, 2, 1, 0.5);
  SecurityReport ex = binding_attack(book, b, AttackStrategy::Exhaustive, 0);
  REQUIRE(ex.delta_bind.has_value());
  CHECK(std::fabs(*ex.delta_bind - 0.82) < 1e-12);
  CHECK(ex.method == CheckMethod::Exact);
  CHECK(ex.attack_description.find("exhaustive") != std::string::npos);

  SecurityReport mid = binding_attack(book, b, AttackStrategy::Midpoint, 0);
  CHECK(std::fabs(*mid.delta_bind - 0.82) < 1e-12);
  CHECK(mid.method == CheckMethod::Exact);  // joint acceptance enumerable at n=2
  CHECK(mid.attack_description.find("midpoint") != std::string::npos);

  // no analytic bounds attach to a desk-mode book
  CHECK(!ex.epsilon_bound.has_value());
  CHECK(!ex.delta_bound.has_value());
}

TEST_CASE("exhaustive search dominates the cheap strategies") {
  Channel b = binary_symmetric_channel(0.1);
  Codebook book = desk_book(8, 7);
  SecurityReport ex = binding_attack(book, b, AttackStrategy::Exhaustive, 1);
  SecurityReport mid = binding_attack(book, b, AttackStrategy::Midpoint, 1);
  BindingOptions opt;
  opt.hill_climb_budget = 60;
  SecurityReport hc = binding_attack(book, b, AttackStrategy::HillClimb, 1, opt);
  // everything is evaluated on exact joint acceptance at n=8, so dominance is exact
  CHECK(ex.method == CheckMethod::Exact);
  CHECK(mid.method == CheckMethod::Exact);
  CHECK(hc.method == CheckMethod::Exact);
  CHECK(*ex.delta_bind >= *mid.delta_bind - 1e-12);
  CHECK(*ex.delta_bind >= *hc.delta_bind - 1e-12);
  CHECK(*hc.delta_bind >= *mid.delta_bind - 1e-12);  // hill climb starts at the midpoint
}

TEST_CASE("binding attack limits and validation") {
  Channel b = binary_symmetric_channel(0.1);
  Codebook book = desk_book(12, 7);
  // |X|^12 |Z|^12 is past the default budget
  CHECK_THROWS_AS(binding_attack(book, b, AttackStrategy::Exhaustive, 0), enumeration_limit_error);

  Codebook one = tiny_book(1, {{0}, {1}}, 1, 2, 0.5);
  CHECK_THROWS_AS(binding_attack(one, b, AttackStrategy::Midpoint, 0), std::invalid_argument);
}

TEST_CASE("sampled binding attack is deterministic per seed") {
  Channel b = binary_symmetric_channel(0.1);
  // n = 24 puts |Z|^n past the enumeration budget, forcing the sampled path
  Codebook book = build_codebook(b, desk_params(24, 0.05, 0.2, 0.2), 2, 2, 11);
  BindingOptions opt;
  opt.trials = 300;
  SecurityReport a = binding_attack(book, b, AttackStrategy::Midpoint, 9, opt);
  SecurityReport c = binding_attack(book, b, AttackStrategy::Midpoint, 9, opt);
  CHECK(a.method == CheckMethod::MonteCarlo);
  CHECK(*a.delta_bind == *c.delta_bind);
  CHECK(*a.delta_bind >= 0.0);
  CHECK(*a.delta_bind <= 1.0);
  CHECK(a.trials == 300);
}

TEST_CASE("four-letter reference scheme has exact textbook security") {
  ReferenceScheme ref = remark_f_scheme();
  CHECK(ref.channel.input_count() == 4);
  CHECK(ref.book.message_count() == 2);
  CHECK(ref.book.key_count() == 2);
  CHECK(ref.book.block_length() == 1);
  // codeword(a, mu) encodes (a-1) + 2 (mu-1)
  for (int a = 1; a <= 2; ++a)
    for (int mu = 1; mu <= 2; ++mu)
      CHECK(ref.book.codeword(a, mu).symbols[0] == (a - 1) + 2 * (mu - 1));

  REQUIRE(ref.reference.epsilon_measured.has_value());
  REQUIRE(ref.reference.delta_sound.has_value());
  REQUIRE(ref.reference.delta_bind.has_value());
  CHECK(*ref.reference.epsilon_measured == 0.0);
  CHECK(*ref.reference.delta_sound == 0.0);
  CHECK(*ref.reference.delta_bind == 0.5);
  CHECK(ref.reference.method == CheckMethod::Exact);
}

TEST_CASE("converse audit verifies the chain on the reference scheme") {
  ReferenceScheme ref = remark_f_scheme();
  ConverseAudit audit = converse_audit(ref.book, ref.channel);
  CHECK(audit.n == 1);
  CHECK(audit.message_count == 2);
  CHECK(audit.h_a == 1.0);
  CHECK(std::fabs(audit.h_x_given_z - 1.0) < 1e-9);
  CHECK(std::fabs(audit.h_a_given_xz) < 1e-9);
  CHECK(std::fabs(audit.i_a_z) < 1e-9);
  CHECK(std::fabs(audit.epsilon) < 1e-15);
  CHECK(std::fabs(audit.delta - 0.5) < 1e-15);
  CHECK(std::fabs(audit.max_equivocation - 1.0) < 1e-6);
  CHECK(std::fabs(audit.sum_h_xk_given_zk - 1.0) < 1e-9);
  CHECK(audit.epsilon_prime == 0.0);
  CHECK(audit.delta_prime > 0.0);
  REQUIRE(audit.chain.size() == 7);
  for (const ChainCheck& c : audit.chain) CHECK(c.holds);
  CHECK(audit.holds);
}

TEST_CASE("converse audit on a sampled desk book") {
  Channel b = binary_symmetric_channel(0.1);
  Codebook book = desk_book(8, 7);
  ConverseAudit audit = converse_audit(book, b);
  CHECK(audit.n == 8);
  CHECK(audit.h_a == 1.0);
  CHECK(std::fabs(audit.max_equivocation - 0.4689955935892812) < 1e-6);
  CHECK(audit.epsilon >= 0.0);
  CHECK(audit.epsilon <= 1.0);
  CHECK(audit.delta >= 0.0);
  CHECK(audit.delta <= 1.0);
  CHECK(audit.h_x_given_z <= audit.sum_h_xk_given_zk + 1e-9);
  REQUIRE(audit.chain.size() == 7);
  for (const ChainCheck& c : audit.chain) CHECK(c.holds);
  CHECK(audit.holds);

  // blocks whose embedded exhaustive search is out of budget must refuse
  Codebook big = desk_book(12, 7);
  CHECK_THROWS_AS(converse_audit(big, b), enumeration_limit_error);

  Codebook one = tiny_book(1, {{0}, {1}}, 1, 2, 0.5);
  CHECK_THROWS_AS(converse_audit(one, b), std::invalid_argument);
}
