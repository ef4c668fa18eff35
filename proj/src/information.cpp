#include "dmclab/information.hpp"

#include <cmath>
#include <stdexcept>

#include "dmclab/util.hpp"

namespace dmclab {

namespace {
void check_dims(const Channel& w, const Distribution& p, const char* who) {
  if (p.size() != w.input_count())
    throw std::invalid_argument(std::string(who) + ": distribution length does not match input alphabet");
}
}  // namespace

double entropy(const Distribution& p) {
  double h = 0.0;
  for (int i = 0; i < p.size(); ++i) h -= xlog2x(p[i]);
  return h;
}

double conditional_entropy(const Channel& w, const Distribution& p) {
  check_dims(w, p, "conditional_entropy");
  double h = 0.0;
  for (int x = 0; x < w.input_count(); ++x) {
    if (p[x] == 0.0) continue;
    double hx = 0.0;
    for (int z = 0; z < w.output_count(); ++z) hx -= xlog2x(w.prob(x, z));
    h += p[x] * hx;
  }
  return h;
}

Distribution output_distribution(const Channel& w, const Distribution& p) {
  check_dims(w, p, "output_distribution");
  std::vector<double> q(w.output_count(), 0.0);
  for (int x = 0; x < w.input_count(); ++x) {
    if (p[x] == 0.0) continue;
    for (int z = 0; z < w.output_count(); ++z) q[z] += p[x] * w.prob(x, z);
  }
  return Distribution(std::move(q));
}

double equivocation(const Channel& w, const Distribution& p) {
  check_dims(w, p, "equivocation");
  const int nx = w.input_count();
  const int nz = w.output_count();
  double h = 0.0;
  for (int z = 0; z < nz; ++z) {
    double qz = 0.0;
    for (int x = 0; x < nx; ++x) qz += p[x] * w.prob(x, z);
    if (qz == 0.0) continue;
    double hz = 0.0;
    for (int x = 0; x < nx; ++x) {
      double joint = p[x] * w.prob(x, z);
      if (joint > 0.0) hz -= xlog2x(joint / qz);
    }
    h += qz * hz;
  }
  return h;
}

double mutual_information(const Channel& w, const Distribution& p) {
  check_dims(w, p, "mutual_information");
  Distribution q = output_distribution(w, p);
  double info = 0.0;
  for (int x = 0; x < w.input_count(); ++x) {
    if (p[x] == 0.0) continue;
    for (int z = 0; z < w.output_count(); ++z) {
      double wxz = w.prob(x, z);
      if (wxz > 0.0) info += p[x] * wxz * std::log2(wxz / q[z]);
    }
  }
  return info;
}

double sum_neg_log2(const Distribution& p) {
  double s = 0.0;
  for (int i = 0; i < p.size(); ++i)
    if (p[i] > 0.0) s -= std::log2(p[i]);
  return s;
}

double max_row_sum_neg_log2(const Channel& w) {
  double best = 0.0;
  for (int x = 0; x < w.input_count(); ++x) {
    double s = 0.0;
    for (int z = 0; z < w.output_count(); ++z)
      if (w.prob(x, z) > 0.0) s -= std::log2(w.prob(x, z));
    best = std::max(best, s);
  }
  return best;
}

}  // namespace dmclab
