#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace glct {

using cplx = std::complex<double>;

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// A vertex-domain signal; inputs are real but every transform output is complex.
using GraphSignal = ComplexVector;

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace glct
