#include "dmclab/lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dmclab {
namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-11;

// Dense simplex tableau over columns [structural | artificial | rhs].
struct Tableau {
  int rows = 0;          // constraint rows
  int cols = 0;          // structural + artificial columns
  int structural = 0;    // number of structural columns
  std::vector<std::vector<double>> t;  // (rows+1) x (cols+1); last row = objective
  std::vector<int> basis;              // basic column per row

  double& at(int r, int c) { return t[r][c]; }
  double rhs(int r) const { return t[r][cols]; }

  void pivot(int pr, int pc) {
    double piv = t[pr][pc];
    for (int c = 0; c <= cols; ++c) t[pr][c] /= piv;
    for (int r = 0; r <= rows; ++r) {
      if (r == pr) continue;
      double f = t[r][pc];
      if (std::fabs(f) < kPivotTol) continue;
      for (int c = 0; c <= cols; ++c) t[r][c] -= f * t[pr][c];
    }
    basis[pr] = pc;
  }

  // Bland's rule: entering = lowest-index column with negative reduced cost;
  // leaving = lowest-index row among minimum-ratio candidates.
  // Returns false when optimal; throws if unbounded (cannot happen for the
  // problems built here, but guarded anyway).
  bool step(int usable_cols) {
    int pc = -1;
    for (int c = 0; c < usable_cols; ++c) {
      if (t[rows][c] < -kCostTol) {
        pc = c;
        break;
      }
    }
    if (pc < 0) return false;
    int pr = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < rows; ++r) {
      if (t[r][pc] > kPivotTol) {
        double ratio = rhs(r) / t[r][pc];
        if (ratio < best - 1e-15 || (std::fabs(ratio - best) <= 1e-15 && (pr < 0 || basis[r] < basis[pr]))) {
          best = ratio;
          pr = r;
        }
      }
    }
    if (pr < 0) throw std::runtime_error("simplex: unbounded objective");
    pivot(pr, pc);
    return true;
  }
};

}  // namespace

LpResult solve_lp_eq(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                     const std::vector<double>& c) {
  const int m = static_cast<int>(a.size());
  if (static_cast<int>(b.size()) != m) throw std::invalid_argument("solve_lp_eq: shape mismatch");
  const int n = m > 0 ? static_cast<int>(a[0].size()) : static_cast<int>(c.size());
  if (static_cast<int>(c.size()) != n) throw std::invalid_argument("solve_lp_eq: shape mismatch");
  for (const auto& row : a)
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("solve_lp_eq: ragged matrix");

  Tableau tb;
  tb.rows = m;
  tb.structural = n;
  tb.cols = n + m;  // one artificial per row
  tb.t.assign(m + 1, std::vector<double>(tb.cols + 1, 0.0));
  tb.basis.assign(m, 0);

  for (int r = 0; r < m; ++r) {
    double sign = b[r] < 0.0 ? -1.0 : 1.0;
    for (int cc = 0; cc < n; ++cc) tb.at(r, cc) = sign * a[r][cc];
    tb.at(r, n + r) = 1.0;
    tb.at(r, tb.cols) = sign * b[r];
    tb.basis[r] = n + r;
  }

  // Phase 1: minimize the sum of artificials.  Reduced costs are priced over
  // the structural columns and the rhs only; the artificial columns are basic
  // with reduced cost zero, otherwise the simplex can re-pivot a basic
  // artificial and mask an inconsistent system.
  for (int r = 0; r < m; ++r) {
    for (int cc = 0; cc < n; ++cc) tb.at(m, cc) -= tb.at(r, cc);
    tb.at(m, tb.cols) -= tb.rhs(r);
  }
  while (tb.step(tb.cols)) {
  }
  if (tb.at(m, tb.cols) < -1e-8) return {};  // infeasible (objective row holds -sum)

  // Drive leftover artificials out of the basis where possible.
  for (int r = 0; r < m; ++r) {
    if (tb.basis[r] >= n) {
      int pc = -1;
      for (int cc = 0; cc < n; ++cc) {
        if (std::fabs(tb.at(r, cc)) > kPivotTol) {
          pc = cc;
          break;
        }
      }
      if (pc >= 0) tb.pivot(r, pc);
      // else: redundant row; its basic artificial stays at value ~0.
    }
  }

  // Phase 2: install the real objective, priced out over the basis.
  for (int cc = 0; cc <= tb.cols; ++cc) tb.at(m, cc) = 0.0;
  for (int cc = 0; cc < n; ++cc) tb.at(m, cc) = c[cc];
  for (int r = 0; r < m; ++r) {
    int bc = tb.basis[r];
    if (bc < n && std::fabs(c[bc]) > 0.0) {
      double f = c[bc];
      for (int cc = 0; cc <= tb.cols; ++cc) tb.at(m, cc) -= f * tb.at(r, cc);
    }
  }
  while (tb.step(n)) {  // artificials excluded from entering
  }

  LpResult out;
  out.feasible = true;
  out.x.assign(n, 0.0);
  for (int r = 0; r < m; ++r)
    if (tb.basis[r] < n) out.x[tb.basis[r]] = tb.rhs(r);
  double v = 0.0;
  for (int cc = 0; cc < n; ++cc) v += c[cc] * out.x[cc];
  out.value = v;
  return out;
}

HullProjection l1_distance_to_hull(const std::vector<double>& target,
                                   const std::vector<std::vector<double>>& rows) {
  const int m = static_cast<int>(rows.size());
  if (m == 0) throw std::invalid_argument("l1_distance_to_hull: empty row set");
  const int d = static_cast<int>(target.size());
  for (const auto& r : rows)
    if (static_cast<int>(r.size()) != d) throw std::invalid_argument("l1_distance_to_hull: length mismatch");

  // Variables: [w_0..w_{m-1} | u_0..u_{d-1} | v_0..v_{d-1}], all >= 0.
  // For each coordinate z:  sum_j w_j rows[j][z] + u_z - v_z = target[z]
  // plus sum_j w_j = 1.  Minimize sum(u) + sum(v) = ||target - mix||_1.
  const int nv = m + 2 * d;
  std::vector<std::vector<double>> a(d + 1, std::vector<double>(nv, 0.0));
  std::vector<double> b(d + 1, 0.0);
  std::vector<double> c(nv, 0.0);
  for (int z = 0; z < d; ++z) {
    for (int j = 0; j < m; ++j) a[z][j] = rows[j][z];
    a[z][m + z] = 1.0;
    a[z][m + d + z] = -1.0;
    b[z] = target[z];
    c[m + z] = 1.0;
    c[m + d + z] = 1.0;
  }
  for (int j = 0; j < m; ++j) a[d][j] = 1.0;
  b[d] = 1.0;

  LpResult lp = solve_lp_eq(a, b, c);
  if (!lp.feasible) throw std::runtime_error("l1_distance_to_hull: LP infeasible (internal error)");
  HullProjection out;
  out.distance = lp.value;
  out.weights.assign(lp.x.begin(), lp.x.begin() + m);
  return out;
}

}  // namespace dmclab
