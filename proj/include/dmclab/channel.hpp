#pragma once

// Discrete memoryless channels as validated row-stochastic matrices, plus the
// structural predicates the rest of the library builds on:
//
//  * nonredundant_reduce — removes input rows expressible as convex mixtures
//    of the others (duplicates first), with verified witnesses;
//  * is_trivial — after reduction, do the remaining rows have pairwise
//    disjoint support?  Such channels cannot hide anything and cannot bind;
//  * separation_eta — the minimum L1 distance between any row and the convex
//    hull of the remaining rows, the constant that drives every exponent in
//    the commitment analysis.

#include <string>
#include <vector>

#include "dmclab/lp.hpp"

namespace dmclab {

// Tolerances fixed by the library's contracts.
inline constexpr double kRowSumTol = 1e-9;      // row sums must be within this of 1
inline constexpr double kRedundancyTol = 1e-9;  // hull distance below this = redundant
inline constexpr double kSupportTol = 1e-12;    // entries below this count as zero support

// A finite probability vector.  Validates entries >= 0 and sum within 1e-9 of
// one, then renormalizes exactly.
class Distribution {
 public:
  explicit Distribution(std::vector<double> p);
  static Distribution uniform(int n);

  int size() const { return static_cast<int>(p_.size()); }
  double operator[](int i) const { return p_[i]; }
  const std::vector<double>& probs() const { return p_; }

 private:
  std::vector<double> p_;
};

class Channel {
 public:
  // Validates: non-empty alphabets, unique labels, matrix shape
  // |inputs| x |outputs|, entries >= 0, row sums within 1e-9 of 1 (rows are
  // then renormalized exactly).
  Channel(std::vector<std::string> input_labels, std::vector<std::string> output_labels,
          std::vector<std::vector<double>> matrix);

  int input_count() const { return static_cast<int>(matrix_.size()); }
  int output_count() const { return static_cast<int>(output_labels_.size()); }
  double prob(int x, int z) const { return matrix_[x][z]; }
  const std::vector<double>& row(int x) const { return matrix_[x]; }
  const std::vector<std::vector<double>>& matrix() const { return matrix_; }
  const std::vector<std::string>& input_labels() const { return input_labels_; }
  const std::vector<std::string>& output_labels() const { return output_labels_; }
  const std::string& input_label(int x) const { return input_labels_[x]; }
  const std::string& output_label(int z) const { return output_labels_[z]; }

 private:
  std::vector<std::string> input_labels_;
  std::vector<std::string> output_labels_;
  std::vector<std::vector<double>> matrix_;
};

// Convenience constructors for the bundled families.
Channel binary_symmetric_channel(double flip_prob);
Channel identity_channel(int n);

// One removed input row together with the mixture of retained rows that
// reproduces it (verified to within kRedundancyTol in L1).
struct RemovedInput {
  std::string label;
  std::vector<std::pair<std::string, double>> witness;  // retained label -> weight
};

struct ReductionReport {
  Channel reduced;                                     // retained rows, original labels/order
  std::vector<RemovedInput> removed;                   // non-extremal rows with witnesses
  std::vector<std::vector<std::string>> merged_duplicates;  // label groups with identical rows
};

// Removes duplicate rows (keeping the lowest-index label of each group), then
// removes every row within kRedundancyTol (L1) of the convex hull of the other
// retained rows.  Idempotent; witnesses are recomputed over the final retained
// set and verified.
ReductionReport nonredundant_reduce(const Channel& w);

// True when, after reduction, the remaining rows have pairwise disjoint
// support (entries compared against kSupportTol).
bool is_trivial(const Channel& w);

// min over rows x of the L1 distance from row x to the convex hull of the
// other rows.  Requires a non-redundant channel with at least two inputs;
// throws std::invalid_argument otherwise.
double separation_eta(const Channel& w);

}  // namespace dmclab
