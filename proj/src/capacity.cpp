#include "dmclab/capacity.hpp"

#include <cmath>

#include "dmclab/util.hpp"

namespace dmclab {
namespace {

constexpr double kInteriorClip = 1e-12;  // optimizer keeps P(x) >= this
constexpr double kLn2Inv = 1.4426950408889634;  // 1 / ln 2

// Euclidean projection onto the probability simplex (sort-based).
std::vector<double> project_simplex(std::vector<double> v) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<double>());
  double css = 0.0, theta = 0.0;
  int rho = 0;
  for (int i = 0; i < static_cast<int>(u.size()); ++i) {
    css += u[i];
    double t = (css - 1.0) / (i + 1);
    if (u[i] - t > 0.0) {
      rho = i + 1;
      theta = t;
    }
  }
  (void)rho;
  for (double& x : v) x = std::max(0.0, x - theta);
  return v;
}

// Clip coordinates away from zero and renormalize; keeps gradient evaluations
// legal during the ascent.
std::vector<double> clip_interior(std::vector<double> p) {
  double sum = 0.0;
  for (double& x : p) {
    x = std::max(x, kInteriorClip);
    sum += x;
  }
  for (double& x : p) x /= sum;
  return p;
}

double objective(const Channel& w, const std::vector<double>& p) {
  return equivocation(w, Distribution(p));
}

// Raw gradient on clipped coordinates (no Distribution validation round trip).
std::vector<double> gradient_raw(const Channel& w, const std::vector<double>& p) {
  const int nx = w.input_count();
  const int nz = w.output_count();
  std::vector<double> q(nz, 0.0);
  for (int x = 0; x < nx; ++x)
    for (int z = 0; z < nz; ++z) q[z] += p[x] * w.prob(x, z);
  std::vector<double> g(nx, 0.0);
  for (int x = 0; x < nx; ++x) {
    double hx = 0.0;
    for (int z = 0; z < nz; ++z) hx -= xlog2x(w.prob(x, z));
    double qterm = 0.0;
    for (int z = 0; z < nz; ++z) {
      double wxz = w.prob(x, z);
      if (wxz > 0.0) qterm += wxz * (std::log2(q[z]) + kLn2Inv);
    }
    g[x] = -std::log2(p[x]) - kLn2Inv + hx + qterm;
  }
  return g;
}

struct AscentOutcome {
  double value = 0.0;
  std::vector<double> p;
  long iterations = 0;
};

AscentOutcome ascend(const Channel& w, std::vector<double> p, long max_iterations) {
  p = clip_interior(p);
  double f = objective(w, p);
  long it = 0;
  for (; it < max_iterations; ++it) {
    std::vector<double> g = gradient_raw(w, p);

    // Stationarity on the simplex: gradient components equal on the free set,
    // and no larger on coordinates pinned at the clip floor.
    double free_min = std::numeric_limits<double>::infinity();
    double free_max = -std::numeric_limits<double>::infinity();
    double pinned_max = -std::numeric_limits<double>::infinity();
    for (int x = 0; x < static_cast<int>(p.size()); ++x) {
      if (p[x] > 1e-8) {
        free_min = std::min(free_min, g[x]);
        free_max = std::max(free_max, g[x]);
      } else {
        pinned_max = std::max(pinned_max, g[x]);
      }
    }
    if (free_max - free_min < 1e-9 && pinned_max <= free_min + 1e-9) break;

    // Backtracking projected gradient step.
    double step = 1.0;
    bool moved = false;
    while (step > 1e-18) {
      std::vector<double> cand(p.size());
      for (int x = 0; x < static_cast<int>(p.size()); ++x) cand[x] = p[x] + step * g[x];
      cand = clip_interior(project_simplex(std::move(cand)));
      double fc = objective(w, cand);
      double predicted = 0.0;
      for (int x = 0; x < static_cast<int>(p.size()); ++x) predicted += g[x] * (cand[x] - p[x]);
      if (fc > f && fc >= f + 1e-4 * predicted) {
        p = std::move(cand);
        f = fc;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  return {f, std::move(p), it};
}

// Fine grid over the simplex for |X| in {1,2,3}, followed by local mesh
// refinement around the best point.  Serves as the independent oracle for the
// ascent when the reduced alphabet is small.
AscentOutcome grid_search(const Channel& w, double step) {
  const int nx = w.input_count();
  AscentOutcome best;
  best.value = -1.0;
  auto consider = [&](const std::vector<double>& p) {
    double f = objective(w, p);
    if (f > best.value) {
      best.value = f;
      best.p = p;
    }
    ++best.iterations;
  };

  if (nx == 1) {
    consider({1.0});
    return best;
  }
  if (nx == 2) {
    long steps = std::lround(1.0 / step);
    for (long i = 0; i <= steps; ++i) consider({static_cast<double>(i) / steps, 1.0 - static_cast<double>(i) / steps});
    // refine around the best point with shrinking meshes
    double mesh = step;
    for (int round = 0; round < 6; ++round) {
      double center = best.p[0];
      double finer = mesh / 10.0;
      for (int i = -10; i <= 10; ++i) {
        double t = std::min(1.0, std::max(0.0, center + i * finer));
        consider({t, 1.0 - t});
      }
      mesh = finer;
    }
    return best;
  }
  // nx == 3
  long steps = std::lround(1.0 / step);
  for (long i = 0; i <= steps; ++i) {
    for (long j = 0; j <= steps - i; ++j) {
      consider({static_cast<double>(i) / steps, static_cast<double>(j) / steps,
                static_cast<double>(steps - i - j) / steps});
    }
  }
  double mesh = step;
  for (int round = 0; round < 5; ++round) {
    std::vector<double> center = best.p;
    double finer = mesh / 10.0;
    for (int i = -10; i <= 10; ++i) {
      for (int j = -10; j <= 10; ++j) {
        double a = center[0] + i * finer;
        double b = center[1] + j * finer;
        if (a < 0.0 || b < 0.0 || a + b > 1.0) continue;
        consider({a, b, 1.0 - a - b});
      }
    }
    mesh = finer;
  }
  return best;
}

}  // namespace

std::vector<double> equivocation_gradient(const Channel& w, const Distribution& p) {
  if (p.size() != w.input_count())
    throw std::invalid_argument("equivocation_gradient: distribution does not match channel input");
  for (int x = 0; x < p.size(); ++x)
    if (p[x] == 0.0)
      throw std::invalid_argument("equivocation_gradient: boundary point (some P(x) = 0)");
  return gradient_raw(w, p.probs());
}

CapacityResult maximize_equivocation(const Channel& w, const EquivocationOptions& opt) {
  ReductionReport red = nonredundant_reduce(w);
  const Channel& rw = red.reduced;
  const int nx = rw.input_count();

  if (is_trivial(rw)) {
    // Disjoint supports: the posterior is a point mass for every output, so
    // H(X|Z) vanishes identically.
    CapacityResult r{0.0, Distribution::uniform(nx), CapacityMethod::MultistartAscent, 0, 0.0};
    return r;
  }

  Rng rng(opt.seed);
  double best = -1.0, second = -1.0;
  std::vector<double> best_p;
  long iterations = 0;
  for (int r = 0; r < opt.restarts; ++r) {
    std::vector<double> p0(nx);
    if (r == 0) {
      p0.assign(nx, 1.0 / nx);
    } else {
      // Dirichlet(1,...,1) start via exponential spacings.
      double sum = 0.0;
      for (double& v : p0) {
        v = -std::log(std::max(rng.unit(), 1e-300));
        sum += v;
      }
      for (double& v : p0) v /= sum;
    }
    AscentOutcome o = ascend(rw, std::move(p0), opt.max_iterations);
    iterations += o.iterations;
    if (o.value > best) {
      second = best;
      best = o.value;
      best_p = std::move(o.p);
    } else if (o.value > second) {
      second = o.value;
    }
  }

  CapacityResult result{best, Distribution(best_p), CapacityMethod::MultistartAscent, iterations,
                        second >= 0.0 ? best - second : 0.0};

  if (opt.grid_cross_check && nx <= 3) {
    AscentOutcome g = grid_search(rw, opt.grid_step);
    if (g.value > best + 1e-12) {
      result.value = g.value;
      result.argmax = Distribution(g.p);
      result.method = CapacityMethod::GridSearch;
      result.iterations = iterations + g.iterations;
      result.gap_estimate = opt.grid_step * 1e-6;  // final refined mesh
    }
    if (std::fabs(g.value - result.value) > opt.tolerance)
      throw std::runtime_error("maximize_equivocation: grid oracle disagrees with ascent beyond tolerance");
  }

  // The reported value is the functional evaluated at the reported argmax.
  result.value = equivocation(rw, result.argmax);
  return result;
}

CapacityResult blahut_arimoto(const Channel& w, double tolerance, long max_iterations) {
  const int nx = w.input_count();
  const int nz = w.output_count();
  std::vector<double> p(nx, 1.0 / nx);
  double lower = 0.0, upper = std::numeric_limits<double>::infinity();
  long it = 0;
  for (; it < max_iterations; ++it) {
    std::vector<double> q(nz, 0.0);
    for (int x = 0; x < nx; ++x)
      for (int z = 0; z < nz; ++z) q[z] += p[x] * w.prob(x, z);
    // d_x = D(W_x || Q); the classical bracket is max_x d_x >= C >= sum p d.
    std::vector<double> d(nx, 0.0);
    for (int x = 0; x < nx; ++x) {
      for (int z = 0; z < nz; ++z) {
        double wxz = w.prob(x, z);
        if (wxz > 0.0) d[x] += wxz * std::log2(wxz / q[z]);
      }
    }
    lower = 0.0;
    upper = -std::numeric_limits<double>::infinity();
    for (int x = 0; x < nx; ++x) {
      lower += p[x] * d[x];
      upper = std::max(upper, d[x]);
    }
    if (upper - lower < tolerance) break;
    double norm = 0.0;
    for (int x = 0; x < nx; ++x) {
      p[x] *= std::exp2(d[x]);
      norm += p[x];
    }
    for (int x = 0; x < nx; ++x) p[x] /= norm;
  }
  CapacityResult r{lower, Distribution(p), CapacityMethod::BlahutArimoto, it, upper - lower};
  return r;
}

CapacityReport capacity_report(const Channel& w, const EquivocationOptions& opt) {
  CapacityReport rep{nonredundant_reduce(w), is_trivial(w),  std::nullopt,
                     maximize_equivocation(w, opt),          blahut_arimoto(w),
                     0.0,                 0.0,               false};
  if (rep.reduction.reduced.input_count() >= 2) rep.eta = separation_eta(rep.reduction.reduced);
  rep.capacity_sum = rep.commitment.value + rep.transmission.value;
  rep.min_alphabet_log2 = std::log2(static_cast<double>(std::min(w.input_count(), w.output_count())));
  rep.sum_exceeds_alphabet_log = rep.capacity_sum > rep.min_alphabet_log2 + 1e-12;
  return rep;
}

}  // namespace dmclab
