#pragma once

#include <vector>

#include "kbl/linalg.hpp"
#include "kbl/numbers.hpp"

namespace kbl {

/// Exact-rational linear programming in standard form:
///   minimize c.x  subject to  A x = b, x >= 0.
/// Two-phase tableau simplex with Bland's rule (terminating, no floats).
struct LpResult {
  enum class Status { optimal, infeasible, unbounded };
  Status status = Status::optimal;
  Vec<Rational> x;           // primal solution (optimal)
  Rational objective;        // c.x at the optimum
  Vec<Rational> dual;        // y with y.b = objective, A^T y <= c (optimal);
                             // for infeasible: Farkas vector with y.b > 0, A^T y <= 0
};

LpResult solve_lp(const Mat<Rational>& a, const Vec<Rational>& b, const Vec<Rational>& c);

/// Strict-positivity analysis of {x : M x = 0, x > 0}, normalized on the
/// simplex sum(x) = 1.  The LP maximizes the smallest coordinate.
struct PositiveConeResult {
  enum class Status { feasible, degenerate_feasible, infeasible };
  Status status;
  Vec<Rational> witness;              // point of the simplex slice (empty if infeasible)
  Rational min_coordinate;            // optimal value of min_j x_j over the slice
  Vec<Rational> certificate;          // y with (M^T y)_j >= 0 for all j and != 0
                                      // (strict > 0 in the infeasible case); empty when feasible
  std::vector<Vec<Rational>> kernel;  // basis of ker M (the cone's linear span)
};

PositiveConeResult positive_kernel_witness(const Mat<Rational>& m);

}  // namespace kbl
