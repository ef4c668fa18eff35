#pragma once

// Minimal dense linear programming for the convex-geometry questions this
// project asks about channel rows: "how far is this row, in L1, from the
// convex hull of those rows, and which mixture attains the minimum?"
//
// The solver is a textbook two-phase primal simplex with Bland's rule
// (deterministic, cycle-free).  Problem sizes here are tiny (tens of
// variables), so no effort is spent on sparsity or factorization.

#include <vector>

namespace dmclab {

struct LpResult {
  bool feasible = false;
  double value = 0.0;
  std::vector<double> x;  // primal solution, length = number of variables
};

// minimize c.x  subject to  A x = b, x >= 0.
// Rows with negative b are negated internally.  Throws std::invalid_argument
// on shape mismatches.
LpResult solve_lp_eq(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                     const std::vector<double>& c);

struct HullProjection {
  double distance = 0.0;            // min_w || target - sum_j w_j row_j ||_1 over the simplex
  std::vector<double> weights;      // optimal mixture, length = rows.size()
};

// L1 projection of `target` onto the convex hull of `rows` (all the same
// length).  Throws std::invalid_argument if rows is empty or lengths differ.
HullProjection l1_distance_to_hull(const std::vector<double>& target,
                                   const std::vector<std::vector<double>>& rows);

}  // namespace dmclab
