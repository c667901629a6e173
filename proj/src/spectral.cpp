#include "glct/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <vector>

#include <Eigen/Eigenvalues>

#include "glct/errors.hpp"

namespace glct {

namespace {

constexpr double kUnitModulusTolerance = 1e-10;
constexpr double kUnitModulusInputTolerance = 1e-8;
constexpr double kMinusOneSnap = 1e-12;

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t bytes) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < bytes; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

std::string to_string(ChirpStrategy s) {
    switch (s) {
        case ChirpStrategy::SpectralPowerOfF: return "spectral-power-of-f";
        case ChirpStrategy::DiagonalLambdaOfF: return "diagonal-lambda-of-f";
        case ChirpStrategy::DiagonalLambdaOfA: return "diagonal-lambda-of-a";
    }
    return "unknown";
}

ChirpStrategy chirp_strategy_from_string(const std::string& s) {
    if (s == "spectral-power-of-f" || s == "spectral" || s == "SpectralPowerOfF") {
        return ChirpStrategy::SpectralPowerOfF;
    }
    if (s == "diagonal-lambda-of-f" || s == "diag-f" || s == "DiagonalLambdaOfF") {
        return ChirpStrategy::DiagonalLambdaOfF;
    }
    if (s == "diagonal-lambda-of-a" || s == "diag-a" || s == "DiagonalLambdaOfA") {
        return ChirpStrategy::DiagonalLambdaOfA;
    }
    throw Error(ErrorKind::ConfigError, "unknown chirp strategy '" + s + "'");
}

std::uint64_t fingerprint(const AdjacencySpectrum& spec) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    const auto n = static_cast<std::int64_t>(spec.eigenvalues.size());
    h = fnv1a(h, &n, sizeof n);
    h = fnv1a(h, spec.eigenvalues.data(),
              static_cast<std::size_t>(spec.eigenvalues.size()) * sizeof(double));
    h = fnv1a(h, spec.eigenvectors.data(),
              static_cast<std::size_t>(spec.eigenvectors.size()) * sizeof(double));
    return h;
}

double principal_arg(cplx z) {
    if (std::abs(z + 1.0) <= kMinusOneSnap) return kPi;
    return std::arg(z);
}

cplx frac_power_unit(cplx lambda, double p) {
    if (std::abs(std::abs(lambda) - 1.0) > kUnitModulusInputTolerance) {
        throw Error(ErrorKind::NotUnitModulus, "|lambda| = " + std::to_string(std::abs(lambda)));
    }
    return std::polar(1.0, p * principal_arg(lambda));
}

GftSpectrum GftSpectrum::from_eigenpairs(RealMatrix f, ComplexMatrix q, ComplexVector lambda,
                                         std::uint64_t source_fingerprint) {
    const Eigen::Index n = f.rows();
    if (f.cols() != n || q.rows() != n || q.cols() != n || lambda.size() != n) {
        throw Error(ErrorKind::DimensionMismatch, "inconsistent eigenpair dimensions");
    }
    GftSpectrum out;
    out.arg_.resize(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        if (std::abs(std::abs(lambda(k)) - 1.0) > kUnitModulusTolerance) {
            throw Error(ErrorKind::NumericalFailure,
                        "GFT eigenvalue off the unit circle: |lambda| = " +
                            std::to_string(std::abs(lambda(k))));
        }
        out.arg_(k) = principal_arg(lambda(k));
    }
    out.q_adjoint_ = q.adjoint();
    const double tol = 1e-9 * static_cast<double>(n);
    const ComplexMatrix recon = q * lambda.asDiagonal() * out.q_adjoint_;
    const double residual = max_abs(ComplexMatrix(recon - f.cast<cplx>()));
    if (residual > tol) {
        throw Error(ErrorKind::NumericalFailure,
                    "GFT diagonalization residual " + std::to_string(residual));
    }
    const double unitarity =
        max_abs(ComplexMatrix(out.q_adjoint_ * q - ComplexMatrix::Identity(n, n)));
    if (unitarity > tol) {
        throw Error(ErrorKind::NumericalFailure,
                    "GFT eigenvectors not unitary: " + std::to_string(unitarity));
    }
    out.f_ = std::move(f);
    out.q_ = std::move(q);
    out.lambda_ = std::move(lambda);
    out.source_fingerprint_ = source_fingerprint;
    return out;
}

// F is real orthogonal, so its real Schur form is block diagonal: 1x1 blocks
// equal to +-1 and 2x2 rotation blocks. Each rotation block R(theta) is
// diagonalized by the fixed unitary (1, 1; -i, i)/sqrt(2), which keeps Q
// unitary to machine precision even for clustered eigenvalues.
GftSpectrum diagonalize_gft(const AdjacencySpectrum& spec) {
    const RealMatrix f = gft_matrix(spec);
    const Eigen::Index n = f.rows();

    Eigen::RealSchur<RealMatrix> schur(f, true);
    if (schur.info() != Eigen::Success) {
        throw Error(ErrorKind::NumericalFailure, "real Schur decomposition did not converge");
    }
    const RealMatrix& t = schur.matrixT();

    const double r = 1.0 / std::sqrt(2.0);
    const cplx i_unit(0.0, 1.0);
    ComplexMatrix w = ComplexMatrix::Zero(n, n);
    ComplexVector lambda(n);
    for (Eigen::Index i = 0; i < n;) {
        if (i + 1 < n && t(i + 1, i) != 0.0) {
            const double c = 0.5 * (t(i, i) + t(i + 1, i + 1));
            const double s = 0.5 * (t(i + 1, i) - t(i, i + 1));
            const double theta = std::atan2(s, c);
            lambda(i) = std::polar(1.0, theta);
            lambda(i + 1) = std::polar(1.0, -theta);
            w(i, i) = r;
            w(i + 1, i) = -i_unit * r;
            w(i, i + 1) = r;
            w(i + 1, i + 1) = i_unit * r;
            i += 2;
        } else {
            lambda(i) = t(i, i) >= 0.0 ? 1.0 : -1.0;
            w(i, i) = 1.0;
            i += 1;
        }
    }
    const ComplexMatrix q_unsorted = schur.matrixU().cast<cplx>() * w;

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::vector<double> args(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) args[static_cast<std::size_t>(k)] = principal_arg(lambda(k));
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
        const double ax = args[static_cast<std::size_t>(x)];
        const double ay = args[static_cast<std::size_t>(y)];
        if (ax != ay) return ax < ay;
        if (lambda(x).real() != lambda(y).real()) return lambda(x).real() < lambda(y).real();
        return x < y;
    });

    ComplexMatrix q(n, n);
    ComplexVector lambda_sorted(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index src = order[static_cast<std::size_t>(k)];
        q.col(k) = q_unsorted.col(src);
        lambda_sorted(k) = lambda(src);
    }
    return GftSpectrum::from_eigenpairs(f, std::move(q), std::move(lambda_sorted),
                                        fingerprint(spec));
}

ComplexVector eigen_powers(const GftSpectrum& gs, double p) {
    ComplexVector out(gs.n());
    for (Eigen::Index k = 0; k < gs.n(); ++k) out(k) = std::polar(1.0, p * gs.arg()(k));
    return out;
}

ComplexVector chirp_diagonal(const GftSpectrum& gs, double xi, ChirpStrategy strategy) {
    if (strategy != ChirpStrategy::DiagonalLambdaOfA) return eigen_powers(gs, xi);
    const Eigen::Index n = gs.n();
    ComplexVector out(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double surrogate_arg = kPi * static_cast<double>(k) / static_cast<double>(n);
        out(k) = std::polar(1.0, xi * surrogate_arg);
    }
    return out;
}

ComplexMatrix gft_power(const GftSpectrum& gs, double p) {
    return gs.q() * eigen_powers(gs, p).asDiagonal() * gs.q_adjoint();
}

ComplexMatrix graph_chirp_mul(const GftSpectrum& gs, double xi, ChirpStrategy strategy) {
    if (strategy == ChirpStrategy::SpectralPowerOfF) return gft_power(gs, xi);
    return chirp_diagonal(gs, xi, strategy).asDiagonal();
}

ComplexMatrix gfrft(const GftSpectrum& gs, double alpha) {
    return gft_power(gs, gfrft_exponent(alpha));
}

ComplexMatrix apply_chirp(const GftSpectrum& gs, double xi, ChirpStrategy strategy,
                          const Eigen::Ref<const ComplexMatrix>& x) {
    if (x.rows() != gs.n()) {
        throw Error(ErrorKind::DimensionMismatch, "operand rows do not match graph size");
    }
    const ComplexVector w = chirp_diagonal(gs, xi, strategy);
    if (strategy == ChirpStrategy::SpectralPowerOfF) {
        ComplexMatrix spectral = gs.q_adjoint() * x;
        spectral = w.asDiagonal() * spectral;
        return gs.q() * spectral;
    }
    return w.asDiagonal() * x;
}

ScalingStage scaling_stage(const Graph& g, double delta) {
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw Error(ErrorKind::InvalidDelta, "scaling factor must be positive");
    }
    AdjacencySpectrum s = eigendecompose_symmetric(g.adjacency() / delta);
    return {delta, std::move(s.eigenvectors), std::move(s.eigenvalues)};
}

ScalingStage scaling_stage(const AdjacencySpectrum& spec, double delta) {
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw Error(ErrorKind::InvalidDelta, "scaling factor must be positive");
    }
    return {delta, spec.eigenvectors, spec.eigenvalues / delta};
}

std::shared_ptr<const SpectralGraph> analyze(Graph g) {
    AdjacencySpectrum adj = eigendecompose_adjacency(g);
    GftSpectrum gs = diagonalize_gft(adj);
    return std::make_shared<const SpectralGraph>(
        SpectralGraph{std::move(g), std::move(adj), std::move(gs)});
}

}  // namespace glct
