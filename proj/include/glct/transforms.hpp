#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "glct/sl2.hpp"
#include "glct/spectral.hpp"

namespace glct {

enum class Recipe { CDDHFs, CMCCM_bnz, CMCCM_b0_eta, CMCCM_b0_mu, SpecialDispatch };

std::string to_string(Recipe r);

/// Parameter matrices that map to a single stage without any decomposition.
enum class SpecialKind { Identity, Gft, Igft, ChirpMul };

struct SpecialOp {
    SpecialKind kind;
    double xi = 0.0;  ///< chirp exponent, only meaningful for ChirpMul
};

std::string to_string(SpecialKind k);

/// Exact (1e-12 per entry) matches of (1,0,0,1), (0,1,-1,0), (0,-1,1,0) and
/// (1,0,xi,1); std::nullopt otherwise.
std::optional<SpecialOp> special_dispatch(const ParamMatrix& m);

/// One stage of a staged operator.
enum class FactorKind {
    Chirp,            ///< C(value) under the operator's strategy
    Gft,              ///< F = V^T
    Igft,             ///< F^-1 = V
    ScalingBasis,     ///< Q_delta, eigenvectors of A / value
    GftEigenPower,    ///< diag(lambda^value) in the GFT eigenbasis coordinates
    GftEigenAdjoint,  ///< Q^H
};

struct Factor {
    FactorKind kind;
    double value = 0.0;
};

std::string to_string(FactorKind k);

/// A GLCT operator kept in staged form (a left-to-right list of factors times
/// a scalar phase); the dense matrix is materialized lazily on first request.
class GlctOperator {
public:
    GlctOperator(std::shared_ptr<const SpectralGraph> graph, Recipe recipe, ParamMatrix params,
                 ChirpStrategy strategy, cplx phase, std::vector<Factor> factors);

    Recipe recipe() const noexcept { return recipe_; }
    const ParamMatrix& params() const noexcept { return params_; }
    ChirpStrategy strategy() const noexcept { return strategy_; }
    cplx phase() const noexcept { return phase_; }
    const std::vector<Factor>& factors() const noexcept { return factors_; }
    const SpectralGraph& graph() const noexcept { return *graph_; }
    const std::shared_ptr<const SpectralGraph>& graph_ptr() const noexcept { return graph_; }
    Eigen::Index n() const noexcept { return graph_->n(); }

    std::optional<CmCcCmParams> cmccm;
    std::optional<B0Params> b0;
    std::optional<IwasawaParams> iwasawa;
    std::optional<SpecialOp> special;

    /// Dense n x n matrix (phase included). Thread-safe; computed once.
    const ComplexMatrix& matrix() const;

    /// Dense matrix of factor `i` alone (no phase).
    ComplexMatrix factor_matrix(std::size_t i) const;

    /// Staged application to every column of x, O(n^2) per factor and column.
    ComplexMatrix apply_staged(const Eigen::Ref<const ComplexMatrix>& x) const;

    /// Recipe, parameters, strategy, phase and decomposition values.
    nlohmann::json metadata() const;

private:
    ComplexMatrix apply_factor(const Factor& f, const Eigen::Ref<const ComplexMatrix>& x) const;

    struct DenseCache {
        std::once_flag once;
        ComplexMatrix matrix;
    };

    std::shared_ptr<const SpectralGraph> graph_;
    Recipe recipe_;
    ParamMatrix params_;
    ChirpStrategy strategy_;
    cplx phase_;
    std::vector<Factor> factors_;
    std::shared_ptr<DenseCache> dense_;
};

/// Staged matrix-vector product (DimensionMismatch on length mismatch).
GraphSignal apply(const GlctOperator& op, const GraphSignal& x);

/// Same product through the dense matrix.
GraphSignal apply_dense(const GlctOperator& op, const GraphSignal& x);

struct CmccmOptions {
    bool dispatch = true;
    B0Kind b0_form = B0Kind::Eta;
};

/// C(xi1) F^-1 C(xi2) F C(xi3) for b != 0; the eta or mu form for b = 0;
/// special parameter matrices are dispatched to a single stage first.
GlctOperator build_cmccm(std::shared_ptr<const SpectralGraph> graph, const ParamMatrix& m,
                         ChirpStrategy strategy = ChirpStrategy::SpectralPowerOfF,
                         CmccmOptions options = {});

/// C(xi) Q_delta diag(lambda^(2 alpha / pi)) Q^H with (xi, delta, alpha) from
/// the Iwasawa factorization. The identity matrix short-circuits to I.
GlctOperator build_cddhfs(std::shared_ptr<const SpectralGraph> graph, const ParamMatrix& m,
                          ChirpStrategy strategy = ChirpStrategy::SpectralPowerOfF);

/// Factor-wise inverse C(-xi3) F^-1 C(-xi2) F C(-xi1); CMCCM_bnz only.
GlctOperator inverse_by_negation(const GlctOperator& op);

/// build_cmccm with (d, -b, -c, a).
GlctOperator inverse_by_params(std::shared_ptr<const SpectralGraph> graph, const ParamMatrix& m,
                               ChirpStrategy strategy = ChirpStrategy::SpectralPowerOfF,
                               CmccmOptions options = {});

struct FresnelParams {
    double wavelength;
    double distance;
};

/// build_cmccm on (1, wavelength * distance, 0, 1).
GlctOperator fresnel(std::shared_ptr<const SpectralGraph> graph, const FresnelParams& fp,
                     ChirpStrategy strategy = ChirpStrategy::SpectralPowerOfF);

enum class Method { CDDHFs, CMCCM };

std::string to_string(Method m);
Method method_from_string(const std::string& s);

/// Operators memoized per (eigensystem fingerprint, parameters, strategy,
/// construction). Lookups take a shared lock; concurrent inserts of the same
/// key are harmless because construction is deterministic.
class OperatorCache {
public:
    GlctOperator get(const std::shared_ptr<const SpectralGraph>& graph, Method method,
                     const ParamMatrix& m, ChirpStrategy strategy, CmccmOptions options = {});

    std::size_t size() const;
    void clear();

private:
    struct Key {
        std::uint64_t fingerprint;
        double a, b, c, d;
        ChirpStrategy strategy;
        Method method;
        bool dispatch;
        B0Kind b0_form;

        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept;
    };

    mutable std::shared_mutex mutex_;
    std::unordered_map<Key, GlctOperator, KeyHash> entries_;
};

}  // namespace glct
