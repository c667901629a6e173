#pragma once

#include <array>
#include <cmath>
#include <memory>

#include "glct/graph.hpp"
#include "glct/spectral.hpp"
#include "glct/types.hpp"

namespace testing_support {

using glct::ComplexMatrix;
using glct::RealMatrix;

inline glct::Graph path_graph(int n) {
    RealMatrix a = RealMatrix::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) a(i, i + 1) = a(i + 1, i) = 1.0;
    return glct::Graph(a);
}

inline glct::Graph cycle_graph(int n) {
    RealMatrix a = RealMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) a(i, (i + 1) % n) = a((i + 1) % n, i) = 1.0;
    return glct::Graph(a);
}

// Small weighted graph with a simple, well separated spectrum.
inline glct::Graph weighted_graph() {
    RealMatrix a(4, 4);
    a << 0.0, 1.0, 0.5, 0.0,
         1.0, 0.0, 2.0, 0.3,
         0.5, 2.0, 0.0, 1.5,
         0.0, 0.3, 1.5, 0.0;
    return glct::Graph(a);
}

inline std::shared_ptr<const glct::SpectralGraph> analyzed(glct::Graph g) {
    return glct::analyze(std::move(g));
}

inline double max_dev_from_identity(const ComplexMatrix& m) {
    return (m - ComplexMatrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
}

inline double unitarity_defect(const ComplexMatrix& m) {
    return max_dev_from_identity(m * m.adjoint());
}

inline double max_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

// Plain 2x2 arithmetic kept apart from the library, used as an oracle.
using Mat2 = std::array<double, 4>;

inline Mat2 mul2(const Mat2& x, const Mat2& y) {
    return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

// Integer power of a dense matrix by repeated multiplication.
inline ComplexMatrix int_power(const ComplexMatrix& f, int p) {
    ComplexMatrix base = p >= 0 ? f : ComplexMatrix(f.inverse());
    ComplexMatrix out = ComplexMatrix::Identity(f.rows(), f.cols());
    for (int i = 0; i < std::abs(p); ++i) out = out * base;
    return out;
}

}  // namespace testing_support
