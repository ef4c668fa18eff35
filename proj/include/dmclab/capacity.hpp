#pragma once

// Optimization of the two channel figures of merit:
//
//  * maximize_equivocation — commitment capacity: max over input distributions
//    of H(X|Z), by multi-start projected gradient ascent on the simplex,
//    cross-checked against a fine grid search when the (reduced) input
//    alphabet has at most 3 symbols.  Because concavity of the objective in P
//    is not established, the grid oracle is part of the contract, not a test
//    nicety.
//  * blahut_arimoto — transmission capacity C(W) with the classical
//    alternating update and its two-sided bracket.
//
// maximize_equivocation always reduces the channel first; the returned argmax
// lives on the reduced channel's input alphabet.

#include <cstdint>
#include <optional>

#include "dmclab/channel.hpp"
#include "dmclab/information.hpp"

namespace dmclab {

enum class CapacityMethod { MultistartAscent, GridSearch, BlahutArimoto };

struct CapacityResult {
  double value = 0.0;
  Distribution argmax;
  CapacityMethod method = CapacityMethod::MultistartAscent;
  long iterations = 0;
  // Best-vs-second-best restart separation, or the final grid mesh when the
  // grid search won; a rough certificate of how isolated the optimum looks.
  double gap_estimate = 0.0;
};

struct EquivocationOptions {
  double tolerance = 1e-6;
  int restarts = 32;
  std::uint64_t seed = 0x5eedULL;
  long max_iterations = 20000;
  bool grid_cross_check = true;  // applies when the reduced |X| <= 3
  double grid_step = 1e-3;
};

// Gradient of P -> H(X|Z) at an interior point (all P(x) > 0); throws
// std::invalid_argument on the boundary.
std::vector<double> equivocation_gradient(const Channel& w, const Distribution& p);

CapacityResult maximize_equivocation(const Channel& w, const EquivocationOptions& opt = {});

CapacityResult blahut_arimoto(const Channel& w, double tolerance = 1e-9, long max_iterations = 200000);

// Everything `channel info` reports: reduction, triviality, separation, both
// capacities, and whether their sum exceeds the smaller alphabet's log size.
struct CapacityReport {
  ReductionReport reduction;
  bool trivial = false;
  std::optional<double> eta;  // absent when the reduced channel has one input
  CapacityResult commitment;    // argmax over the reduced input alphabet
  CapacityResult transmission;  // argmax over the original input alphabet
  double capacity_sum = 0.0;
  double min_alphabet_log2 = 0.0;
  bool sum_exceeds_alphabet_log = false;
};

CapacityReport capacity_report(const Channel& w, const EquivocationOptions& opt = {});

}  // namespace dmclab
