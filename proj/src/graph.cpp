#include "glct/graph.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "glct/errors.hpp"

namespace glct {

namespace {

constexpr double kSymmetryTolerance = 1e-12;

void check_symmetric(const RealMatrix& a) {
    if (a.rows() != a.cols()) {
        throw Error(ErrorKind::NotSymmetric, "matrix is not square");
    }
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = j + 1; i < a.rows(); ++i) {
            if (std::abs(a(i, j) - a(j, i)) > kSymmetryTolerance) {
                throw Error(ErrorKind::NotSymmetric,
                            "entries (" + std::to_string(i) + "," + std::to_string(j) +
                                ") and its transpose differ");
            }
        }
    }
}

void normalize_signs(RealMatrix& v) {
    for (Eigen::Index k = 0; k < v.cols(); ++k) {
        Eigen::Index best = 0;
        for (Eigen::Index i = 1; i < v.rows(); ++i) {
            if (std::abs(v(i, k)) > std::abs(v(best, k))) best = i;
        }
        if (v(best, k) < 0.0) v.col(k) = -v.col(k);
    }
}

}  // namespace

Graph::Graph(RealMatrix adjacency, std::optional<RealMatrix> coords)
    : adjacency_(std::move(adjacency)), coords_(std::move(coords)) {
    check_symmetric(adjacency_);
    if (adjacency_.rows() < 2) {
        throw Error(ErrorKind::InvalidGraph, "a graph needs at least two nodes");
    }
    if (!adjacency_.allFinite()) {
        throw Error(ErrorKind::InvalidGraph, "adjacency has non-finite entries");
    }
    for (Eigen::Index i = 0; i < n(); ++i) {
        if (adjacency_(i, i) != 0.0) {
            throw Error(ErrorKind::InvalidGraph, "nonzero diagonal at node " + std::to_string(i));
        }
    }
    if (coords_ && coords_->rows() != n()) {
        throw Error(ErrorKind::DimensionMismatch, "coordinate rows do not match node count");
    }
}

std::size_t Graph::nonzeros() const {
    return static_cast<std::size_t>((adjacency_.array() != 0.0).count());
}

bool Graph::is_connected() const {
    const Eigen::Index size = n();
    std::vector<char> seen(static_cast<std::size_t>(size), 0);
    std::vector<Eigen::Index> stack{0};
    seen[0] = 1;
    Eigen::Index visited = 1;
    while (!stack.empty()) {
        const Eigen::Index u = stack.back();
        stack.pop_back();
        for (Eigen::Index v = 0; v < size; ++v) {
            if (adjacency_(u, v) != 0.0 && !seen[static_cast<std::size_t>(v)]) {
                seen[static_cast<std::size_t>(v)] = 1;
                ++visited;
                stack.push_back(v);
            }
        }
    }
    return visited == size;
}

AdjacencySpectrum eigendecompose_symmetric(const RealMatrix& s) {
    check_symmetric(s);
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(s, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::NumericalFailure, "symmetric eigensolver did not converge");
    }
    AdjacencySpectrum out{solver.eigenvalues(), solver.eigenvectors()};
    normalize_signs(out.eigenvectors);
    return out;
}

AdjacencySpectrum eigendecompose_adjacency(const Graph& g) {
    return eigendecompose_symmetric(g.adjacency());
}

RealMatrix gft_matrix(const AdjacencySpectrum& spec) { return spec.eigenvectors.transpose(); }

GraphSignal gft(const AdjacencySpectrum& spec, const GraphSignal& x) {
    if (x.size() != spec.eigenvectors.rows()) {
        throw Error(ErrorKind::DimensionMismatch, "signal length does not match graph size");
    }
    return spec.eigenvectors.transpose().cast<cplx>() * x;
}

GraphSignal igft(const AdjacencySpectrum& spec, const GraphSignal& xhat) {
    if (xhat.size() != spec.eigenvectors.rows()) {
        throw Error(ErrorKind::DimensionMismatch, "signal length does not match graph size");
    }
    return spec.eigenvectors.cast<cplx>() * xhat;
}

double max_abs(const RealMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace glct
