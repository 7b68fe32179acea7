#pragma once

#include <vector>

#include "braidcat/types.hpp"

namespace braidcat {

/// min sum_i |(A lambda - b)_i| over lambda >= 0, where A has 0/1 entries
/// given column-wise as sorted row-index lists. Solved with a dense revised
/// simplex (deterministic pivoting), so certificates are reproducible.
struct L1MatchResult {
  double objective = 0.0;            // optimal l1 residual
  std::vector<double> lambda;        // primal weights, size = #columns
  std::vector<double> dual;          // row duals y, |y_i| <= 1 at optimum
  int iterations = 0;
  bool optimal = false;
};

L1MatchResult solve_l1_match(const std::vector<std::vector<int>>& columns,
                             const RealVector& b);

}  // namespace braidcat
