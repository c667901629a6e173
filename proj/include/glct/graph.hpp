#pragma once

#include <cstddef>
#include <optional>

#include "glct/types.hpp"

namespace glct {

/// Undirected weighted graph stored as a dense symmetric adjacency matrix.
///
/// Construction rejects asymmetric input (NotSymmetric), a nonzero diagonal or
/// fewer than two nodes (InvalidGraph). Directed graphs are never symmetrized.
class Graph {
public:
    explicit Graph(RealMatrix adjacency, std::optional<RealMatrix> coords = std::nullopt);

    Eigen::Index n() const noexcept { return adjacency_.rows(); }
    const RealMatrix& adjacency() const noexcept { return adjacency_; }
    const std::optional<RealMatrix>& coords() const noexcept { return coords_; }

    /// Number of nonzero adjacency entries (twice the undirected edge count).
    std::size_t nonzeros() const;
    bool is_connected() const;

private:
    RealMatrix adjacency_;
    std::optional<RealMatrix> coords_;
};

/// Real symmetric eigensystem A = V diag(lambda) V^T.
///
/// Eigenvalues ascend. Each eigenvector column is sign-normalized so that its
/// entry of largest magnitude (lowest index on ties) is positive; inside a
/// degenerate cluster the solver's orthonormal basis is kept as is.
struct AdjacencySpectrum {
    RealVector eigenvalues;
    RealMatrix eigenvectors;
};

AdjacencySpectrum eigendecompose_adjacency(const Graph& g);

/// Symmetric-matrix eigendecomposition with the same ordering and sign rules,
/// for matrices that are not adjacency matrices (scaled shift operators).
AdjacencySpectrum eigendecompose_symmetric(const RealMatrix& s);

/// F = V^T.
RealMatrix gft_matrix(const AdjacencySpectrum& spec);

GraphSignal gft(const AdjacencySpectrum& spec, const GraphSignal& x);
GraphSignal igft(const AdjacencySpectrum& spec, const GraphSignal& xhat);

/// Largest absolute entry, used for the relative tolerances.
double max_abs(const RealMatrix& m);
double max_abs(const ComplexMatrix& m);

}  // namespace glct
