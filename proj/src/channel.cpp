#include "dmclab/channel.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace dmclab {

Distribution::Distribution(std::vector<double> p) : p_(std::move(p)) {
  if (p_.empty()) throw std::invalid_argument("Distribution: empty vector");
  double sum = 0.0;
  for (double v : p_) {
    if (!(v >= 0.0)) throw std::invalid_argument("Distribution: negative or NaN entry");
    sum += v;
  }
  if (std::fabs(sum - 1.0) > kRowSumTol)
    throw std::invalid_argument("Distribution: entries sum to " + std::to_string(sum) + ", not 1");
  for (double& v : p_) v /= sum;
}

Distribution Distribution::uniform(int n) {
  if (n <= 0) throw std::invalid_argument("Distribution::uniform: need n >= 1");
  return Distribution(std::vector<double>(n, 1.0 / n));
}

Channel::Channel(std::vector<std::string> input_labels, std::vector<std::string> output_labels,
                 std::vector<std::vector<double>> matrix)
    : input_labels_(std::move(input_labels)),
      output_labels_(std::move(output_labels)),
      matrix_(std::move(matrix)) {
  if (input_labels_.empty() || output_labels_.empty())
    throw std::invalid_argument("Channel: empty alphabet");
  std::set<std::string> seen;
  for (const auto& l : input_labels_)
    if (!seen.insert(l).second) throw std::invalid_argument("Channel: duplicate input label '" + l + "'");
  seen.clear();
  for (const auto& l : output_labels_)
    if (!seen.insert(l).second) throw std::invalid_argument("Channel: duplicate output label '" + l + "'");
  if (matrix_.size() != input_labels_.size())
    throw std::invalid_argument("Channel: matrix row count does not match input alphabet");
  for (auto& row : matrix_) {
    if (row.size() != output_labels_.size())
      throw std::invalid_argument("Channel: matrix column count does not match output alphabet");
    double sum = 0.0;
    for (double v : row) {
      if (!(v >= 0.0)) throw std::invalid_argument("Channel: negative or NaN entry");
      sum += v;
    }
    if (std::fabs(sum - 1.0) > kRowSumTol)
      throw std::invalid_argument("Channel: row sums to " + std::to_string(sum) + ", not 1");
    for (double& v : row) v /= sum;
  }
}

Channel binary_symmetric_channel(double flip_prob) {
  if (!(flip_prob >= 0.0 && flip_prob <= 1.0))
    throw std::invalid_argument("binary_symmetric_channel: flip probability outside [0,1]");
  return Channel({"0", "1"}, {"0", "1"},
                 {{1.0 - flip_prob, flip_prob}, {flip_prob, 1.0 - flip_prob}});
}

Channel identity_channel(int n) {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    labels.push_back(std::to_string(i));
    m[i][i] = 1.0;
  }
  return Channel(labels, labels, m);
}

namespace {

double l1(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::fabs(a[i] - b[i]);
  return s;
}

std::vector<std::vector<double>> gather_rows(const Channel& w, const std::vector<int>& idx) {
  std::vector<std::vector<double>> out;
  out.reserve(idx.size());
  for (int i : idx) out.push_back(w.row(i));
  return out;
}

}  // namespace

ReductionReport nonredundant_reduce(const Channel& w) {
  const int nx = w.input_count();

  // Pass 1: merge rows identical in L1 within tolerance; keep lowest index.
  std::vector<int> rep_of(nx, -1);
  std::vector<int> reps;
  for (int x = 0; x < nx; ++x) {
    for (int r : reps) {
      if (l1(w.row(x), w.row(r)) <= kRedundancyTol) {
        rep_of[x] = r;
        break;
      }
    }
    if (rep_of[x] < 0) {
      rep_of[x] = x;
      reps.push_back(x);
    }
  }
  std::vector<std::vector<std::string>> merged;
  for (int r : reps) {
    std::vector<std::string> group;
    for (int x = 0; x < nx; ++x)
      if (rep_of[x] == r) group.push_back(w.input_label(x));
    if (group.size() > 1) merged.push_back(std::move(group));
  }

  // Pass 2: among representatives, drop every row that lies within tolerance
  // of the convex hull of the other representatives.  A single pass is enough:
  // after deduplication, a row is an extreme point of the row polytope exactly
  // when it is not in the hull of the others.
  std::vector<int> retained;
  std::vector<int> dropped;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    std::vector<int> others;
    for (std::size_t j = 0; j < reps.size(); ++j)
      if (j != i) others.push_back(reps[j]);
    bool redundant = false;
    if (!others.empty()) {
      HullProjection proj = l1_distance_to_hull(w.row(reps[i]), gather_rows(w, others));
      redundant = proj.distance < kRedundancyTol;
    }
    (redundant ? dropped : retained).push_back(reps[i]);
  }

  std::vector<std::string> labels;
  std::vector<std::vector<double>> rows;
  for (int x : retained) {
    labels.push_back(w.input_label(x));
    rows.push_back(w.row(x));
  }
  Channel reduced(labels, w.output_labels(), rows);

  // Witnesses over the final retained set, verified.
  std::vector<RemovedInput> removed;
  for (int x : dropped) {
    HullProjection proj = l1_distance_to_hull(w.row(x), gather_rows(w, retained));
    if (proj.distance > kRedundancyTol)
      throw std::runtime_error("nonredundant_reduce: witness for removed row '" + w.input_label(x) +
                               "' fails verification");
    RemovedInput ri;
    ri.label = w.input_label(x);
    for (std::size_t j = 0; j < retained.size(); ++j)
      if (proj.weights[j] > 1e-12) ri.witness.emplace_back(w.input_label(retained[j]), proj.weights[j]);
    removed.push_back(std::move(ri));
  }

  return ReductionReport{std::move(reduced), std::move(removed), std::move(merged)};
}

bool is_trivial(const Channel& w) {
  Channel reduced = nonredundant_reduce(w).reduced;
  const int nx = reduced.input_count();
  const int nz = reduced.output_count();
  for (int x = 0; x < nx; ++x) {
    for (int y = x + 1; y < nx; ++y) {
      for (int z = 0; z < nz; ++z) {
        if (reduced.prob(x, z) > kSupportTol && reduced.prob(y, z) > kSupportTol) return false;
      }
    }
  }
  return true;
}

double separation_eta(const Channel& w) {
  const int nx = w.input_count();
  if (nx < 2) throw std::invalid_argument("separation_eta: need at least two input rows");
  double eta = std::numeric_limits<double>::infinity();
  for (int x = 0; x < nx; ++x) {
    std::vector<int> others;
    for (int y = 0; y < nx; ++y)
      if (y != x) others.push_back(y);
    HullProjection proj = l1_distance_to_hull(w.row(x), gather_rows(w, others));
    if (proj.distance < kRedundancyTol)
      throw std::invalid_argument("separation_eta: channel has a redundant input row (reduce first)");
    eta = std::min(eta, proj.distance);
  }
  return eta;
}

}  // namespace dmclab
