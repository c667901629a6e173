#include <cmath>
#include <random>
#include <thread>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "glct/errors.hpp"
#include "glct/generators.hpp"
#include "glct/transforms.hpp"
#include "support.hpp"

using namespace glct;
using namespace testing_support;

namespace {

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an exception");
    return ErrorKind::NumericalFailure;
}

GraphSignal random_signal(Eigen::Index n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    GraphSignal x(n);
    for (auto& v : x) v = cplx(nd(rng), nd(rng));
    return x;
}

double rel_err(const GraphSignal& ref, const GraphSignal& y) {
    return (ref - y).squaredNorm() / ref.squaredNorm();
}

ComplexMatrix as_complex(const RealMatrix& m) { return m.cast<cplx>(); }

// The staged factors multiplied out independently of the library's dense path.
ComplexMatrix factor_product(const GlctOperator& op) {
    ComplexMatrix out = ComplexMatrix::Identity(op.n(), op.n());
    for (std::size_t i = 0; i < op.factors().size(); ++i) out = out * op.factor_matrix(i);
    return op.phase() * out;
}

const std::vector<ChirpStrategy> kUnitaryStrategies{ChirpStrategy::SpectralPowerOfF,
                                                     ChirpStrategy::DiagonalLambdaOfF};
const std::vector<ChirpStrategy> kAllStrategies{ChirpStrategy::SpectralPowerOfF,
                                                ChirpStrategy::DiagonalLambdaOfF,
                                                ChirpStrategy::DiagonalLambdaOfA};

}  // namespace

TEST_CASE("special dispatch table") {
    CHECK(special_dispatch(ParamMatrix::identity())->kind == SpecialKind::Identity);
    CHECK(special_dispatch(make_param_matrix(0, 1, -1, 0))->kind == SpecialKind::Gft);
    CHECK(special_dispatch(make_param_matrix(0, -1, 1, 0))->kind == SpecialKind::Igft);
    const auto chirp = special_dispatch(chirp_matrix(0.7));
    REQUIRE(chirp);
    CHECK(chirp->kind == SpecialKind::ChirpMul);
    CHECK(chirp->xi == 0.7);
    CHECK_FALSE(special_dispatch(make_param_matrix(1, 1, 0, 1)));
    CHECK_FALSE(special_dispatch(make_param_matrix(1, 1e-11, 0, 1)));
    CHECK(special_dispatch(make_param_matrix(1, 1e-13, 0, 1)));
}

TEST_CASE("CM-CC-CM: identity and F come out exactly") {
    const auto sg = analyzed(weighted_graph());
    const auto id = build_cmccm(sg, ParamMatrix::identity());
    CHECK(id.recipe() == Recipe::SpecialDispatch);
    CHECK(id.matrix().isIdentity(0.0));

    const auto f = build_cmccm(sg, make_param_matrix(0, 1, -1, 0));
    CHECK(f.matrix() == as_complex(sg->gft.f()));

    const auto fi = inverse_by_params(sg, make_param_matrix(0, 1, -1, 0));
    CHECK(fi.special->kind == SpecialKind::Igft);
    CHECK(fi.matrix() == as_complex(sg->adjacency.eigenvectors));

    const auto c = build_cmccm(sg, chirp_matrix(-0.4), ChirpStrategy::DiagonalLambdaOfF);
    CHECK(max_diff(c.matrix(), graph_chirp_mul(sg->gft, -0.4, ChirpStrategy::DiagonalLambdaOfF)) <
          1e-15);
}

TEST_CASE("CM-CC-CM without dispatch collapses to a single power of F") {
    // Under the spectral strategy every stage is a power of F, so the whole
    // operator is F^(xi1 + xi2 + xi3).
    const auto sg = analyzed(weighted_graph());
    const ParamMatrix m = make_param_matrix(0, 1, -1, 0);
    const auto op = build_cmccm(sg, m, ChirpStrategy::SpectralPowerOfF, {.dispatch = false});
    CHECK(op.recipe() == Recipe::CMCCM_bnz);
    CHECK(max_diff(op.matrix(), int_power(as_complex(sg->gft.f()), -3)) < 1e-9);

    Rng rng(3);
    for (int k = 0; k < 10; ++k) {
        const ParamMatrix r = sample_random(rng, -2, 2);
        CHECK(max_diff(build_cmccm(sg, r).matrix(), gft_power(sg->gft, chirp_exponent_sum(r))) < 1e-9);
    }
}

TEST_CASE("CM-CC-CM b = 0 forms") {
    const auto sg = analyzed(weighted_graph());
    const ParamMatrix m = make_param_matrix(2, 0, 1, 0.5);
    const auto eta = build_cmccm(sg, m);
    CHECK(eta.recipe() == Recipe::CMCCM_b0_eta);
    CHECK(std::abs(eta.phase() - std::polar(1.0, -kPi / 4)) < 1e-15);
    CHECK(eta.factors().size() == 6);
    CHECK(eta.b0->p3 == doctest::Approx(4.0));

    const auto mu = build_cmccm(sg, m, ChirpStrategy::SpectralPowerOfF, {.b0_form = B0Kind::Mu});
    CHECK(mu.recipe() == Recipe::CMCCM_b0_mu);
    CHECK(std::abs(mu.phase() - std::polar(1.0, kPi / 4)) < 1e-15);

    // Under the spectral strategy both reduce to phase * F^(1 + eta sum) and
    // phase * F^(mu sum - 1); record the closed forms.
    const double eta_sum = eta.b0->p1 + eta.b0->p2 + eta.b0->p3;
    const double mu_sum = mu.b0->p1 + mu.b0->p2 + mu.b0->p3;
    CHECK(max_diff(eta.matrix(), eta.phase() * gft_power(sg->gft, 1 + eta_sum)) < 1e-9);
    CHECK(max_diff(mu.matrix(), mu.phase() * gft_power(sg->gft, mu_sum - 1)) < 1e-9);

    for (auto s : kUnitaryStrategies) {
        CHECK(unitarity_defect(build_cmccm(sg, m, s).matrix()) < 1e-9);
        CHECK(unitarity_defect(build_cmccm(sg, m, s, {.b0_form = B0Kind::Mu}).matrix()) < 1e-9);
    }

    // Identity without dispatch goes through the eta form.
    const auto id = build_cmccm(sg, ParamMatrix::identity(), ChirpStrategy::SpectralPowerOfF,
                                {.dispatch = false});
    CHECK(id.recipe() == Recipe::CMCCM_b0_eta);
}

TEST_CASE("CDDHFs construction") {
    const auto sg = analyzed(weighted_graph());
    const auto id = build_cddhfs(sg, ParamMatrix::identity());
    CHECK(id.factors().empty());
    CHECK(max_dev_from_identity(id.matrix()) <= 1e-9);

    const auto st = build_cddhfs(sg, make_param_matrix(2, 0, 1, 0.5));
    CHECK(st.iwasawa->xi == doctest::Approx(0.5));
    CHECK(st.iwasawa->delta == doctest::Approx(2.0));
    CHECK(st.iwasawa->alpha == 0.0);

    const double alpha = 0.7;
    const auto rot = build_cddhfs(sg, rotation(alpha));
    const ComplexMatrix expected = as_complex(sg->adjacency.eigenvectors) *
                                   eigen_powers(sg->gft, 2 * alpha / kPi).asDiagonal() *
                                   sg->gft.q_adjoint();
    CHECK(max_diff(rot.matrix(), expected) < 1e-10);
    // Q_delta and Q are different bases: the result is not F^(2 alpha / pi).
    CHECK(max_diff(rot.matrix(), gft_power(sg->gft, 2 * alpha / kPi)) > 1e-3);

    const auto meta = rot.metadata();
    CHECK(meta.at("gfrft_exponent").get<double>() == doctest::Approx(2 * alpha / kPi));
    CHECK(meta.at("angle_to_exponent") == "2*alpha/pi");
    CHECK(meta.contains("cddhfs_form"));
}

TEST_CASE("CDDHFs operators are unitary with the shared adjacency basis") {
    const auto sg = analyzed(cycle_graph(10));
    Rng rng(4);
    for (int k = 0; k < 10; ++k) {
        const auto op = build_cddhfs(sg, sample_random(rng, -2, 2));
        CHECK(unitarity_defect(op.matrix()) < 1e-9);
    }
}

TEST_CASE("apply: staged, dense and factor products agree") {
    const auto sg = analyzed(path_graph(2));
    const auto id = build_cmccm(sg, ParamMatrix::identity());
    GraphSignal x(2);
    x << cplx(1.5, -0.5), cplx(-2.0, 0.25);
    CHECK(glct::apply(id, x) == x);
    CHECK(glct::apply(id, GraphSignal::Zero(2)).isZero(0.0));

    const auto op = build_cmccm(sg, make_param_matrix(1, 1, 0, 1));
    CHECK(op.factors().size() == 5);
    CHECK((glct::apply(op, x) - apply_dense(op, x)).norm() < 1e-10);
    CHECK(max_diff(op.matrix(), factor_product(op)) < 1e-10);
    CHECK(glct::apply(op, GraphSignal::Zero(2)).isZero(0.0));

    CHECK(kind_of([&] { glct::apply(op, GraphSignal::Zero(3)); }) == ErrorKind::DimensionMismatch);
    CHECK(kind_of([&] { apply_dense(op, GraphSignal::Zero(3)); }) == ErrorKind::DimensionMismatch);
    CHECK(kind_of([&] { op.factor_matrix(9); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("linearity") {
    const auto sg = analyzed(cycle_graph(12));
    const GraphSignal x = random_signal(12, 1);
    const GraphSignal y = random_signal(12, 2);
    const cplx a(0.3, -1.1), b(-2.0, 0.4);
    Rng rng(5);
    for (int k = 0; k < 5; ++k) {
        const ParamMatrix m = sample_random(rng, -2, 2);
        for (const auto& op : {build_cmccm(sg, m), build_cddhfs(sg, m)}) {
            const GraphSignal lhs = glct::apply(op, a * x + b * y);
            const GraphSignal rhs = a * glct::apply(op, x) + b * glct::apply(op, y);
            CHECK((lhs - rhs).norm() <= 1e-10 * rhs.norm());
        }
    }
}

TEST_CASE("unitarity of CM-CC-CM operators") {
    for (const Graph& g : {cycle_graph(9), weighted_graph(), path_graph(20)}) {
        const auto sg = analyze(g);
        Rng rng(6);
        for (int k = 0; k < 20; ++k) {
            const ParamMatrix m = sample_random(rng, -2, 2);
            for (auto s : kUnitaryStrategies) {
                CHECK(unitarity_defect(build_cmccm(sg, m, s).matrix()) <= 1e-9);
            }
        }
    }
}

TEST_CASE("inverse by negation") {
    const auto sg = analyzed(path_graph(15));
    const auto op = build_cmccm(sg, make_param_matrix(1, 1, 0, 1));
    const auto inv = inverse_by_negation(op);
    CHECK(inv.cmccm->xi1 == 0.0);
    CHECK(inv.cmccm->xi2 == 1.0);
    CHECK(inv.cmccm->xi3 == 0.0);
    CHECK(max_dev_from_identity(inv.matrix() * op.matrix()) < 1e-10);

    CHECK(kind_of([&] { inverse_by_negation(build_cmccm(sg, ParamMatrix::identity())); }) ==
          ErrorKind::UnsupportedRecipe);
    CHECK(kind_of([&] { inverse_by_negation(build_cddhfs(sg, make_param_matrix(1, 1, 0, 1))); }) ==
          ErrorKind::UnsupportedRecipe);

    const GraphSignal x = random_signal(15, 3);
    Rng rng(7);
    for (int k = 0; k < 10; ++k) {
        const ParamMatrix m = sample_random(rng, -2, 2);
        for (auto s : kAllStrategies) {
            const auto fwd = build_cmccm(sg, m, s);
            const GraphSignal back = glct::apply(inverse_by_negation(fwd), glct::apply(fwd, x));
            CHECK((back - x).norm() <= 1e-10 * x.norm());
            CHECK(rel_err(x, back) < 1e-20);
        }
    }
}

TEST_CASE("the two inverse routes coincide for b != 0") {
    const auto sg = analyzed(weighted_graph());
    Rng rng(8);
    for (int k = 0; k < 20; ++k) {
        const ParamMatrix m = sample_random(rng, -2, 2);
        const auto fwd = build_cmccm(sg, m);
        const auto by_neg = inverse_by_negation(fwd);
        const auto by_par = inverse_by_params(sg, m);
        CHECK(by_par.cmccm->xi1 == doctest::Approx(by_neg.cmccm->xi1).epsilon(1e-12));
        CHECK(by_par.cmccm->xi2 == by_neg.cmccm->xi2);
        CHECK(by_par.cmccm->xi3 == doctest::Approx(by_neg.cmccm->xi3).epsilon(1e-12));
        CHECK(max_diff(by_par.matrix(), by_neg.matrix()) < 1e-10);
    }
}

TEST_CASE("additivity follows the exponent sums") {
    const auto sg = analyzed(cycle_graph(11));
    const GraphSignal x = random_signal(11, 4);

    // Shears compose additively, so the cascade matches the product.
    const ParamMatrix s1 = shear_matrix(0.6), s2 = shear_matrix(-1.3);
    const GraphSignal ref = glct::apply(build_cmccm(sg, multiply(s1, s2)), x);
    const GraphSignal cas = glct::apply(build_cmccm(sg, s1), glct::apply(build_cmccm(sg, s2), x));
    CHECK(rel_err(ref, cas) < 1e-20);

    // For a general pair the cascade is F^(s1 + s2) while the product gives
    // F^(s(M1 M2)); both closed forms are checked.
    Rng rng(9);
    for (int k = 0; k < 5; ++k) {
        const ParamMatrix m1 = sample_random(rng, -2, 2);
        const ParamMatrix m2 = sample_random(rng, -2, 2);
        const GraphSignal cascade = glct::apply(build_cmccm(sg, m1), glct::apply(build_cmccm(sg, m2), x));
        const GraphSignal expect = gft_power(sg->gft, chirp_exponent_sum(m1) + chirp_exponent_sum(m2)) * x;
        CHECK((cascade - expect).norm() < 1e-9 * x.norm());
    }
}

TEST_CASE("Fresnel transform") {
    const auto sg = analyzed(path_graph(6));
    CHECK(fresnel(sg, {1.0, 0.0}).matrix().isIdentity(0.0));
    const auto fr = fresnel(sg, {1.0, 1.0});
    CHECK(fr.cmccm->xi1 == 0.0);
    CHECK(fr.cmccm->xi2 == -1.0);
    CHECK(fr.cmccm->xi3 == 0.0);
    CHECK(unitarity_defect(fr.matrix()) < 1e-9);

    // F^-1 C(-wz) F under the diagonal strategy, where nothing collapses.
    const auto frd = fresnel(sg, {0.5, 1.5}, ChirpStrategy::DiagonalLambdaOfF);
    const ComplexMatrix f = as_complex(sg->gft.f());
    const ComplexMatrix expect =
        f.adjoint() * graph_chirp_mul(sg->gft, -0.75, ChirpStrategy::DiagonalLambdaOfF) * f;
    CHECK(max_diff(frd.matrix(), expect) < 1e-12);

    CHECK(kind_of([&] { fresnel(sg, {0.0, 1.0}); }) == ErrorKind::InvalidSpec);
    CHECK(kind_of([&] { fresnel(sg, {-1.0, 1.0}); }) == ErrorKind::InvalidSpec);
}

TEST_CASE("operators on n <= 4 equal the product of their stages") {
    for (const Graph& g : {path_graph(2), path_graph(3), cycle_graph(4), weighted_graph()}) {
        const auto sg = analyze(g);
        Rng rng(10);
        std::vector<ParamMatrix> params{ParamMatrix::identity(), make_param_matrix(0, 1, -1, 0),
                                        make_param_matrix(2, 0, 1, 0.5), chirp_matrix(0.3)};
        for (int k = 0; k < 5; ++k) params.push_back(sample_random(rng, -2, 2));
        for (const ParamMatrix& m : params) {
            for (auto s : kAllStrategies) {
                for (const auto& op : {build_cmccm(sg, m, s), build_cddhfs(sg, m, s),
                                       build_cmccm(sg, m, s, {.dispatch = false}),
                                       build_cmccm(sg, m, s, {.dispatch = false, .b0_form = B0Kind::Mu})}) {
                    CHECK(max_diff(op.matrix(), factor_product(op)) < 1e-10);
                }
            }
        }
    }
}

TEST_CASE("metadata carries the decomposition") {
    const auto sg = analyzed(path_graph(5));
    const auto meta = build_cmccm(sg, make_param_matrix(1, 1, 0, 1)).metadata();
    CHECK(meta.at("recipe") == "CMCCM_bnz");
    CHECK(meta.at("strategy") == "spectral-power-of-f");
    CHECK(meta.at("cmccm").at("xi2").get<double>() == -1.0);
    CHECK(meta.at("stages").size() == 5);
    CHECK(meta.at("phase").at("re").get<double>() == 1.0);
}

TEST_CASE("operator cache") {
    const auto sg = analyzed(path_graph(12));
    OperatorCache cache;
    const ParamMatrix m = sample_random(11);
    const auto a = cache.get(sg, Method::CMCCM, m, ChirpStrategy::SpectralPowerOfF);
    const auto b = cache.get(sg, Method::CMCCM, m, ChirpStrategy::SpectralPowerOfF);
    CHECK(cache.size() == 1);
    CHECK(&a.matrix() == &b.matrix());
    cache.get(sg, Method::CDDHFs, m, ChirpStrategy::SpectralPowerOfF);
    cache.get(sg, Method::CMCCM, m, ChirpStrategy::DiagonalLambdaOfF);
    CHECK(cache.size() == 3);

    // A regenerated graph with a different spectrum never aliases.
    const auto other = analyzed(cycle_graph(12));
    const auto c = cache.get(other, Method::CMCCM, m, ChirpStrategy::SpectralPowerOfF);
    CHECK(cache.size() == 4);
    CHECK(max_diff(c.matrix(), a.matrix()) > 1e-3);

    cache.clear();
    CHECK(cache.size() == 0);
}

TEST_CASE("operator cache under concurrent use") {
    const auto sg = analyzed(cycle_graph(16));
    OperatorCache cache;
    std::vector<ParamMatrix> params;
    for (int k = 0; k < 6; ++k) params.push_back(sample_random(100 + k));
    std::vector<std::vector<ComplexMatrix>> seen(4);
    {
        std::vector<std::jthread> threads;
        for (int t = 0; t < 4; ++t) {
            threads.emplace_back([&, t] {
                for (int rep = 0; rep < 3; ++rep) {
                    for (const ParamMatrix& m : params) {
                        const auto op = cache.get(sg, Method::CMCCM, m, ChirpStrategy::SpectralPowerOfF);
                        if (rep == 2) seen[t].push_back(op.matrix());
                    }
                }
            });
        }
    }
    CHECK(cache.size() == params.size());
    for (int t = 1; t < 4; ++t) {
        for (std::size_t i = 0; i < params.size(); ++i) CHECK(seen[t][i] == seen[0][i]);
    }
}

TEST_CASE("method names") {
    CHECK(method_from_string("cddhfs") == Method::CDDHFs);
    CHECK(method_from_string(to_string(Method::CMCCM)) == Method::CMCCM);
    CHECK(kind_of([] { method_from_string("fft"); }) == ErrorKind::ConfigError);
}
