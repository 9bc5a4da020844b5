#pragma once

#include <vector>

#include "unialign/rational.hpp"

namespace unialign {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational objective;
  std::vector<Rational> x;
};

/// min c^T x  s.t.  A x = b,  x >= 0, over exact rationals.
///
/// Dense two-phase tableau simplex with Bland's rule, so it terminates on
/// degenerate problems. `a` is row-major with one entry per column of c.
LpResult solve_lp(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b,
                  const std::vector<Rational>& c);

}  // namespace unialign
