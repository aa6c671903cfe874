#pragma once

#include "banachlab/rat.hpp"

namespace banach {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  Rat value;  // optimal objective
  QVec x;     // primal solution, size n
  // Row multipliers, size m.  At an optimum y solves the dual exactly;
  // on an infeasible problem y is a Farkas certificate (y.A <= 0, y.b > 0
  // componentwise against the equality system).
  QVec y;
};

// min c.x  subject to  A x = b, x >= 0.  Exact two-phase simplex with
// Bland's rule, so it terminates on every input.
LpResult lp_min_eq(const QMat& A, const QVec& b, const QVec& c);

// max c.x  subject to  A x <= b, x free.  Solved through the dual of the
// system above.  result.x is the maximizer, result.y >= 0 satisfies
// y.A = c and y.b = value.  A problem that is infeasible together with an
// infeasible dual is reported as unbounded.
LpResult lp_max_ineq(const QMat& A, const QVec& b, const QVec& c);

}  // namespace banach
