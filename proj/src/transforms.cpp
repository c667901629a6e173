#include "glct/transforms.hpp"

#include <bit>
#include <cmath>

#include <nlohmann/json.hpp>

#include "glct/errors.hpp"

namespace glct {

namespace {

constexpr double kDispatchTolerance = 1e-12;

bool matches(const ParamMatrix& m, double a, double b, double c, double d) {
    return std::abs(m.a() - a) <= kDispatchTolerance && std::abs(m.b() - b) <= kDispatchTolerance &&
           std::abs(m.c() - c) <= kDispatchTolerance && std::abs(m.d() - d) <= kDispatchTolerance;
}

ComplexMatrix real_times(const RealMatrix& m, const Eigen::Ref<const ComplexMatrix>& x) {
    const RealMatrix re = m * x.real();
    const RealMatrix im = m * x.imag();
    ComplexMatrix out(re.rows(), re.cols());
    out.real() = re;
    out.imag() = im;
    return out;
}

nlohmann::json complex_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

const cplx kSqrtMinusI = std::polar(1.0, -kPi / 4.0);
const cplx kSqrtI = std::polar(1.0, kPi / 4.0);

GlctOperator special_operator(std::shared_ptr<const SpectralGraph> graph, const ParamMatrix& m,
                              ChirpStrategy strategy, const SpecialOp& sp) {
    std::vector<Factor> factors;
    switch (sp.kind) {
        case SpecialKind::Identity: break;
        case SpecialKind::Gft: factors.push_back({FactorKind::Gft}); break;
        case SpecialKind::Igft: factors.push_back({FactorKind::Igft}); break;
        case SpecialKind::ChirpMul: factors.push_back({FactorKind::Chirp, sp.xi}); break;
    }
    GlctOperator op(std::move(graph), Recipe::SpecialDispatch, m, strategy, 1.0,
                    std::move(factors));
    op.special = sp;
    return op;
}

}  // namespace

std::string to_string(Recipe r) {
    switch (r) {
        case Recipe::CDDHFs: return "CDDHFs";
        case Recipe::CMCCM_bnz: return "CMCCM_bnz";
        case Recipe::CMCCM_b0_eta: return "CMCCM_b0_eta";
        case Recipe::CMCCM_b0_mu: return "CMCCM_b0_mu";
        case Recipe::SpecialDispatch: return "SpecialDispatch";
    }
    return "unknown";
}

std::string to_string(SpecialKind k) {
    switch (k) {
        case SpecialKind::Identity: return "identity";
        case SpecialKind::Gft: return "gft";
        case SpecialKind::Igft: return "igft";
        case SpecialKind::ChirpMul: return "chirp";
    }
    return "unknown";
}

std::string to_string(FactorKind k) {
    switch (k) {
        case FactorKind::Chirp: return "chirp";
        case FactorKind::Gft: return "gft";
        case FactorKind::Igft: return "igft";
        case FactorKind::ScalingBasis: return "scaling_basis";
        case FactorKind::GftEigenPower: return "gft_eigen_power";
        case FactorKind::GftEigenAdjoint: return "gft_eigen_adjoint";
    }
    return "unknown";
}

std::string to_string(Method m) { return m == Method::CDDHFs ? "cddhfs" : "cmccm"; }

Method method_from_string(const std::string& s) {
    if (s == "cddhfs" || s == "CDDHFs") return Method::CDDHFs;
    if (s == "cmccm" || s == "CMCCM" || s == "cm-cc-cm") return Method::CMCCM;
    throw Error(ErrorKind::ConfigError, "unknown method '" + s + "'");
}

std::optional<SpecialOp> special_dispatch(const ParamMatrix& m) {
    if (matches(m, 1.0, 0.0, 0.0, 1.0)) return SpecialOp{SpecialKind::Identity};
    if (matches(m, 0.0, 1.0, -1.0, 0.0)) return SpecialOp{SpecialKind::Gft};
    if (matches(m, 0.0, -1.0, 1.0, 0.0)) return SpecialOp{SpecialKind::Igft};
    if (matches(m, 1.0, 0.0, m.c(), 1.0)) return SpecialOp{SpecialKind::ChirpMul, m.c()};
    return std::nullopt;
}

GlctOperator::GlctOperator(std::shared_ptr<const SpectralGraph> graph, Recipe recipe,
                           ParamMatrix params, ChirpStrategy strategy, cplx phase,
                           std::vector<Factor> factors)
    : graph_(std::move(graph)),
      recipe_(recipe),
      params_(params),
      strategy_(strategy),
      phase_(phase),
      factors_(std::move(factors)),
      dense_(std::make_shared<DenseCache>()) {}

ComplexMatrix GlctOperator::apply_factor(const Factor& f,
                                         const Eigen::Ref<const ComplexMatrix>& x) const {
    const GftSpectrum& gs = graph_->gft;
    switch (f.kind) {
        case FactorKind::Chirp: return apply_chirp(gs, f.value, strategy_, x);
        case FactorKind::Gft: return real_times(gs.f(), x);
        case FactorKind::Igft: return real_times(graph_->adjacency.eigenvectors, x);
        case FactorKind::ScalingBasis: return real_times(graph_->adjacency.eigenvectors, x);
        case FactorKind::GftEigenPower: return eigen_powers(gs, f.value).asDiagonal() * x;
        case FactorKind::GftEigenAdjoint: return gs.q_adjoint() * x;
    }
    throw Error(ErrorKind::UnsupportedRecipe, "unknown factor kind");
}

ComplexMatrix GlctOperator::apply_staged(const Eigen::Ref<const ComplexMatrix>& x) const {
    if (x.rows() != n()) {
        throw Error(ErrorKind::DimensionMismatch, "signal length does not match operator size");
    }
    ComplexMatrix y = x;
    for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) y = apply_factor(*it, y);
    if (phase_ != cplx(1.0, 0.0)) y *= phase_;
    return y;
}

const ComplexMatrix& GlctOperator::matrix() const {
    std::call_once(dense_->once, [this] {
        dense_->matrix = apply_staged(ComplexMatrix::Identity(n(), n()));
    });
    return dense_->matrix;
}

ComplexMatrix GlctOperator::factor_matrix(std::size_t i) const {
    if (i >= factors_.size()) {
        throw Error(ErrorKind::DimensionMismatch, "factor index out of range");
    }
    return apply_factor(factors_[i], ComplexMatrix::Identity(n(), n()));
}

nlohmann::json GlctOperator::metadata() const {
    nlohmann::json j;
    j["recipe"] = to_string(recipe_);
    j["params"] = params_;
    j["strategy"] = to_string(strategy_);
    j["phase"] = complex_json(phase_);
    j["n"] = n();
    j["graph_fingerprint"] = graph_->fingerprint();
    nlohmann::json stages = nlohmann::json::array();
    for (const Factor& f : factors_) {
        stages.push_back({{"kind", to_string(f.kind)}, {"value", f.value}});
    }
    j["stages"] = stages;
    if (cmccm) j["cmccm"] = *cmccm;
    if (b0) j["b0"] = *b0;
    if (iwasawa) {
        j["iwasawa"] = *iwasawa;
        j["gfrft_exponent"] = gfrft_exponent(iwasawa->alpha);
        j["angle_to_exponent"] = "2*alpha/pi";
        j["cddhfs_form"] =
            "literal C(xi) Q_delta diag(lambda^(2 alpha/pi)) Q^H; Q_delta and Q are different "
            "bases, so the stages do not cancel";
    }
    if (special) {
        j["special"] = {{"kind", to_string(special->kind)}, {"xi", special->xi}};
    }
    return j;
}

GraphSignal apply(const GlctOperator& op, const GraphSignal& x) {
    return op.apply_staged(x);
}

GraphSignal apply_dense(const GlctOperator& op, const GraphSignal& x) {
    if (x.size() != op.n()) {
        throw Error(ErrorKind::DimensionMismatch, "signal length does not match operator size");
    }
    return op.matrix() * x;
}

GlctOperator build_cmccm(std::shared_ptr<const SpectralGraph> graph, const ParamMatrix& m,
                         ChirpStrategy strategy, CmccmOptions options) {
    if (options.dispatch) {
        if (auto sp = special_dispatch(m)) return special_operator(std::move(graph), m, strategy, *sp);
    }
    if (std::abs(m.b()) >= kB0Threshold) {
        const CmCcCmParams p = decompose_cmccm(m);
        GlctOperator op(std::move(graph), Recipe::CMCCM_bnz, m, strategy, 1.0,
                        {{FactorKind::Chirp, p.xi1},
                         {FactorKind::Igft},
                         {FactorKind::Chirp, p.xi2},
                         {FactorKind::Gft},
                         {FactorKind::Chirp, p.xi3}});
        op.cmccm = p;
        return op;
    }
    const B0Params p = decompose_b0(m, options.b0_form);
    if (p.kind == B0Kind::Eta) {
        GlctOperator op(std::move(graph), Recipe::CMCCM_b0_eta, m, strategy, kSqrtMinusI,
                        {{FactorKind::Gft},
                         {FactorKind::Chirp, p.p1},
                         {FactorKind::Igft},
                         {FactorKind::Chirp, p.p2},
                         {FactorKind::Gft},
                         {FactorKind::Chirp, p.p3}});
        op.b0 = p;
        return op;
    }
    GlctOperator op(std::move(graph), Recipe::CMCCM_b0_mu, m, strategy, kSqrtI,
                    {{FactorKind::Chirp, p.p1},
                     {FactorKind::Igft},
                     {FactorKind::Chirp, p.p2},
                     {FactorKind::Gft},
                     {FactorKind::Chirp, p.p3},
                     {FactorKind::Igft}});
    op.b0 = p;
    return op;
}

GlctOperator build_cddhfs(std::shared_ptr<const SpectralGraph> graph, const ParamMatrix& m,
                          ChirpStrategy strategy) {
    const IwasawaParams p = decompose_iwasawa(m);
    if (matches(m, 1.0, 0.0, 0.0, 1.0)) {
        GlctOperator op(std::move(graph), Recipe::CDDHFs, m, strategy, 1.0, {});
        op.iwasawa = p;
        return op;
    }
    GlctOperator op(std::move(graph), Recipe::CDDHFs, m, strategy, 1.0,
                    {{FactorKind::Chirp, p.xi},
                     {FactorKind::ScalingBasis, p.delta},
                     {FactorKind::GftEigenPower, gfrft_exponent(p.alpha)},
                     {FactorKind::GftEigenAdjoint}});
    op.iwasawa = p;
    return op;
}

GlctOperator inverse_by_negation(const GlctOperator& op) {
    if (op.recipe() != Recipe::CMCCM_bnz || !op.cmccm) {
        throw Error(ErrorKind::UnsupportedRecipe,
                    "factor-wise inversion needs a CMCCM_bnz operator, got " +
                        to_string(op.recipe()));
    }
    const CmCcCmParams& p = *op.cmccm;
    const CmCcCmParams neg{-p.xi3, -p.xi2, -p.xi1};
    GlctOperator inv(op.graph_ptr(), Recipe::CMCCM_bnz, inverse(op.params()), op.strategy(), 1.0,
                     {{FactorKind::Chirp, neg.xi1},
                      {FactorKind::Igft},
                      {FactorKind::Chirp, neg.xi2},
                      {FactorKind::Gft},
                      {FactorKind::Chirp, neg.xi3}});
    inv.cmccm = neg;
    return inv;
}

GlctOperator inverse_by_params(std::shared_ptr<const SpectralGraph> graph, const ParamMatrix& m,
                               ChirpStrategy strategy, CmccmOptions options) {
    return build_cmccm(std::move(graph), inverse(m), strategy, options);
}

GlctOperator fresnel(std::shared_ptr<const SpectralGraph> graph, const FresnelParams& fp,
                     ChirpStrategy strategy) {
    if (!(fp.wavelength > 0.0) || !std::isfinite(fp.wavelength) || !std::isfinite(fp.distance)) {
        throw Error(ErrorKind::InvalidSpec, "wavelength must be positive and distance finite");
    }
    const double b = fp.wavelength * fp.distance;
    if (b == 0.0) {
        return special_operator(std::move(graph), ParamMatrix::identity(), strategy,
                                SpecialOp{SpecialKind::Identity});
    }
    return build_cmccm(std::move(graph), shear_matrix(b), strategy);
}

std::size_t OperatorCache::KeyHash::operator()(const Key& k) const noexcept {
    auto bits = [](double x) { return std::bit_cast<std::uint64_t>(x + 0.0); };
    std::uint64_t h = k.fingerprint;
    for (std::uint64_t v : {bits(k.a), bits(k.b), bits(k.c), bits(k.d),
                            static_cast<std::uint64_t>(k.strategy),
                            static_cast<std::uint64_t>(k.method),
                            static_cast<std::uint64_t>(k.dispatch),
                            static_cast<std::uint64_t>(k.b0_form)}) {
        h = derive_seed(h, v);
    }
    return static_cast<std::size_t>(h);
}

GlctOperator OperatorCache::get(const std::shared_ptr<const SpectralGraph>& graph, Method method,
                                const ParamMatrix& m, ChirpStrategy strategy,
                                CmccmOptions options) {
    const Key key{graph->fingerprint(), m.a(),          m.b(),           m.c(),
                  m.d(),                strategy,       method,          options.dispatch,
                  options.b0_form};
    {
        std::shared_lock lock(mutex_);
        if (auto it = entries_.find(key); it != entries_.end()) return it->second;
    }
    GlctOperator op = method == Method::CMCCM ? build_cmccm(graph, m, strategy, options)
                                              : build_cddhfs(graph, m, strategy);
    std::unique_lock lock(mutex_);
    entries_.insert_or_assign(key, op);
    return op;
}

std::size_t OperatorCache::size() const {
    std::shared_lock lock(mutex_);
    return entries_.size();
}

void OperatorCache::clear() {
    std::unique_lock lock(mutex_);
    entries_.clear();
}

}  // namespace glct
