#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string>

namespace braidcat {

using Cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Result of one verification pass (axiom check, relation check, ...).
struct CheckReport {
  std::string name;
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::string detail;
};

inline CheckReport make_report(std::string name, double residual, double tol,
                               std::string detail = {}) {
  return CheckReport{std::move(name), residual, tol, residual <= tol,
                     std::move(detail)};
}

/// Max absolute entry; zero for empty matrices.
inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// || M M^dagger - I ||_max
inline double unitarity_residual(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Matrix d = m * m.adjoint() - Matrix::Identity(m.rows(), m.cols());
  return max_abs(d);
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  return max_abs(a - b);
}

}  // namespace braidcat
