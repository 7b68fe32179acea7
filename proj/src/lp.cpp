#include "braidcat/lp.hpp"

#include <stdexcept>

namespace braidcat {

namespace {

constexpr double kReducedCostTol = 1e-9;
constexpr double kPivotTol = 1e-11;

}  // namespace

// Variables: [0, n)            lambda columns (cost 0)
//            [n, n+m)          s+ slack, +e_i  (cost 1)
//            [n+m, n+2m)       s- slack, -e_i  (cost 1)
// Constraint: A lambda + s+ - s- = b. Start from the all-s+ identity basis
// (b >= 0 in every use here; rows with b < 0 start on s-).
L1MatchResult solve_l1_match(const std::vector<std::vector<int>>& columns,
                             const RealVector& b) {
  const int n = static_cast<int>(columns.size());
  const int m = static_cast<int>(b.size());
  if (m == 0) throw std::invalid_argument("empty constraint system");

  auto column_of = [&](int var) -> RealVector {
    RealVector col = RealVector::Zero(m);
    if (var < n) {
      for (int r : columns[var]) col[r] += 1.0;
    } else if (var < n + m) {
      col[var - n] = 1.0;
    } else {
      col[var - n - m] = -1.0;
    }
    return col;
  };
  auto cost_of = [&](int var) { return var < n ? 0.0 : 1.0; };

  std::vector<int> basis(m);
  RealVector xb(m);
  for (int i = 0; i < m; ++i) {
    basis[i] = b[i] >= 0.0 ? n + i : n + m + i;
    xb[i] = std::abs(b[i]);
  }

  const long max_iter = 2000 + 200L * m + 2L * n;
  const long bland_after = max_iter / 2;
  L1MatchResult result;
  RealMatrix bmat(m, m);

  for (long iter = 0;; ++iter) {
    if (iter > max_iter)
      throw std::runtime_error("simplex iteration limit exceeded");
    result.iterations = static_cast<int>(iter);

    for (int i = 0; i < m; ++i) bmat.col(i) = column_of(basis[i]);
    Eigen::PartialPivLU<RealMatrix> lu(bmat);

    RealVector cb(m);
    for (int i = 0; i < m; ++i) cb[i] = cost_of(basis[i]);
    RealVector y = bmat.transpose().partialPivLu().solve(cb);

    // Pricing: Dantzig rule, lowest index on ties; Bland after stalling.
    const bool bland = iter >= bland_after;
    int enter = -1;
    double best = -kReducedCostTol;
    auto consider = [&](int var, double rc) {
      if (rc < best - 1e-15 || (enter == -1 && rc < -kReducedCostTol)) {
        best = rc;
        enter = var;
        return true;
      }
      return false;
    };
    for (int j = 0; j < n && !(bland && enter >= 0); ++j) {
      double rc = 0.0;
      for (int r : columns[j]) rc -= y[r];
      consider(j, rc);
    }
    for (int i = 0; i < m && !(bland && enter >= 0); ++i)
      consider(n + i, 1.0 - y[i]);
    for (int i = 0; i < m && !(bland && enter >= 0); ++i)
      consider(n + m + i, 1.0 + y[i]);
    if (enter == -1) {
      result.optimal = true;
      break;
    }

    RealVector dir = lu.solve(column_of(enter));
    int leave = -1;
    double theta = 0.0;
    for (int i = 0; i < m; ++i) {
      if (dir[i] <= kPivotTol) continue;
      double ratio = xb[i] / dir[i];
      if (leave == -1 || ratio < theta - 1e-15 ||
          (ratio < theta + 1e-15 && basis[i] < basis[leave])) {
        leave = i;
        theta = ratio;
      }
    }
    if (leave == -1)
      throw std::runtime_error("simplex: unbounded direction in bounded LP");

    xb -= theta * dir;
    for (int i = 0; i < m; ++i) xb[i] = std::max(xb[i], 0.0);
    xb[leave] = theta;
    basis[leave] = enter;
  }

  result.lambda.assign(n, 0.0);
  double obj = 0.0;
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n)
      result.lambda[basis[i]] = xb[i];
    else
      obj += xb[i];
  }
  result.objective = obj;

  for (int i = 0; i < m; ++i) bmat.col(i) = column_of(basis[i]);
  RealVector cb(m);
  for (int i = 0; i < m; ++i) cb[i] = cost_of(basis[i]);
  RealVector y = bmat.transpose().partialPivLu().solve(cb);
  result.dual.assign(y.data(), y.data() + m);
  return result;
}

}  // namespace braidcat
