#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace qcut {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Matrix2 = Eigen::Matrix2cd;
using Matrix4 = Eigen::Matrix4cd;
using Vector2 = Eigen::Vector2cd;
using RealVector = Eigen::VectorXd;

inline constexpr double kUnitaryTol = 1e-12;
inline constexpr double kFactorTol = 1e-10;

/// Error categories mapped to CLI exit codes.
enum class ErrorCode {
  Config = 2,
  InfeasibleCut = 3,
  WidthCap = 4,
  Invalid = 1,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qcut
