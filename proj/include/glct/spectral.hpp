#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "glct/graph.hpp"
#include "glct/types.hpp"

namespace glct {

/// How the graph chirp multiplication C(xi) is realized.
///
///  - SpectralPowerOfF:  C(xi) = F^xi = Q diag(lambda^xi) Q^H.
///  - DiagonalLambdaOfF: C(xi) = diag(lambda^xi), placed in the vertex domain.
///  - DiagonalLambdaOfA: C(xi) = diag(mu_k^xi) with mu_k = exp(i pi k / n) the
///    unit-circle surrogate of the k-th ascending adjacency eigenvalue. Only
///    kept for comparison runs; never a default.
enum class ChirpStrategy { SpectralPowerOfF, DiagonalLambdaOfF, DiagonalLambdaOfA };

std::string to_string(ChirpStrategy s);
ChirpStrategy chirp_strategy_from_string(const std::string& s);

/// Unitary eigensystem of the (real orthogonal) GFT matrix: F = Q diag(lambda) Q^H.
///
/// Eigenvalues lie on the unit circle and are ordered by principal argument
/// ascending in (-pi, pi], ties broken by real part and then position.
class GftSpectrum {
public:
    /// Assembles a spectrum from explicit eigenpairs, checking unit modulus,
    /// unitarity of Q and the reconstruction residual (NumericalFailure).
    static GftSpectrum from_eigenpairs(RealMatrix f, ComplexMatrix q, ComplexVector lambda,
                                       std::uint64_t source_fingerprint);

    Eigen::Index n() const noexcept { return f_.rows(); }
    const RealMatrix& f() const noexcept { return f_; }
    const ComplexMatrix& q() const noexcept { return q_; }
    const ComplexMatrix& q_adjoint() const noexcept { return q_adjoint_; }
    const ComplexVector& lambda() const noexcept { return lambda_; }
    /// Principal arguments of lambda, in (-pi, pi].
    const RealVector& arg() const noexcept { return arg_; }
    /// Fingerprint of the adjacency eigensystem this spectrum was derived from.
    std::uint64_t source_fingerprint() const noexcept { return source_fingerprint_; }

private:
    GftSpectrum() = default;

    RealMatrix f_;
    ComplexMatrix q_;
    ComplexMatrix q_adjoint_;
    ComplexVector lambda_;
    RealVector arg_;
    std::uint64_t source_fingerprint_ = 0;
};

/// Stable 64-bit digest of an eigensystem; part of every operator cache key.
std::uint64_t fingerprint(const AdjacencySpectrum& spec);

GftSpectrum diagonalize_gft(const AdjacencySpectrum& spec);

/// Principal argument in (-pi, pi]; values within 1e-12 of -1 map to +pi.
double principal_arg(cplx z);

/// exp(i p Arg(lambda)); throws NotUnitModulus if ||lambda| - 1| > 1e-8.
cplx frac_power_unit(cplx lambda, double p);

/// lambda_k^p for every eigenvalue.
ComplexVector eigen_powers(const GftSpectrum& gs, double p);

/// Diagonal entries of C(xi) for the two diagonal strategies.
ComplexVector chirp_diagonal(const GftSpectrum& gs, double xi, ChirpStrategy strategy);

/// F^p = Q diag(lambda^p) Q^H.
ComplexMatrix gft_power(const GftSpectrum& gs, double p);

ComplexMatrix graph_chirp_mul(const GftSpectrum& gs, double xi, ChirpStrategy strategy);

/// Rotation angle to fractional exponent: 2 alpha / pi, so pi/2 gives F.
constexpr double gfrft_exponent(double alpha) { return 2.0 * alpha / kPi; }

ComplexMatrix gfrft(const GftSpectrum& gs, double alpha);

/// Applies C(xi) to each column of x without forming C(xi).
ComplexMatrix apply_chirp(const GftSpectrum& gs, double xi, ChirpStrategy strategy,
                          const Eigen::Ref<const ComplexMatrix>& x);

/// Eigensystem of the scaled shift operator S = A / delta.
struct ScalingStage {
    double delta;
    RealMatrix q_delta;
    RealVector lambda_s;
};

/// Runs a fresh symmetric eigensolve of A / delta (InvalidDelta if delta <= 0).
ScalingStage scaling_stage(const Graph& g, double delta);

/// Same stage derived from an existing adjacency eigensystem: positive
/// scaling keeps the eigenvectors and divides the eigenvalues.
ScalingStage scaling_stage(const AdjacencySpectrum& spec, double delta);

/// A graph together with both of its eigensystems, computed once and shared.
struct SpectralGraph {
    Graph graph;
    AdjacencySpectrum adjacency;
    GftSpectrum gft;

    std::uint64_t fingerprint() const noexcept { return gft.source_fingerprint(); }
    Eigen::Index n() const noexcept { return graph.n(); }
};

std::shared_ptr<const SpectralGraph> analyze(Graph g);

}  // namespace glct
