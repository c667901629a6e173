#include <cmath>
#include <random>

#include "doctest.h"
#include "glct/errors.hpp"
#include "glct/graph.hpp"
#include "support.hpp"

using namespace glct;
using testing_support::path_graph;

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

RealMatrix random_symmetric(int n, unsigned seed) {
    std::mt19937_64 rng(seed);
    RealMatrix a = RealMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (rng() % 3 == 0) a(i, j) = a(j, i) = 1.0;
        }
    }
    return a;
}

}  // namespace

TEST_CASE("graph validation") {
    RealMatrix asym = RealMatrix::Zero(3, 3);
    asym(0, 1) = 1.0;
    CHECK(kind_of([&] { Graph g(asym); }) == ErrorKind::NotSymmetric);

    RealMatrix loop = RealMatrix::Zero(3, 3);
    loop(1, 1) = 1.0;
    CHECK(kind_of([&] { Graph g(loop); }) == ErrorKind::InvalidGraph);

    CHECK(kind_of([] { Graph g(RealMatrix::Zero(1, 1)); }) == ErrorKind::InvalidGraph);
    CHECK(kind_of([] { Graph g(RealMatrix::Zero(2, 3)); }) == ErrorKind::NotSymmetric);

    RealMatrix tiny = RealMatrix::Zero(2, 2);
    tiny(0, 1) = 1.0;
    tiny(1, 0) = 1.0 + 1e-13;  // within tolerance
    CHECK_NOTHROW(Graph g(tiny));

    CHECK(kind_of([] { Graph g(RealMatrix::Zero(3, 3), RealMatrix::Zero(2, 2)); }) ==
          ErrorKind::DimensionMismatch);

    RealMatrix nan = RealMatrix::Zero(2, 2);
    nan(0, 1) = nan(1, 0) = NAN;
    CHECK_THROWS_AS(Graph g(nan), Error);
}

TEST_CASE("nonzeros and connectivity") {
    CHECK(path_graph(50).nonzeros() == 98);
    CHECK(path_graph(50).is_connected());
    CHECK_FALSE(Graph(RealMatrix::Zero(3, 3)).is_connected());
}

TEST_CASE("eigendecomposition of small paths") {
    auto s = eigendecompose_adjacency(path_graph(2));
    CHECK(s.eigenvalues(0) == doctest::Approx(-1.0));
    CHECK(s.eigenvalues(1) == doctest::Approx(1.0));

    s = eigendecompose_adjacency(path_graph(3));
    CHECK(s.eigenvalues(0) == doctest::Approx(-std::sqrt(2.0)));
    CHECK(std::abs(s.eigenvalues(1)) < 1e-12);
    CHECK(s.eigenvalues(2) == doctest::Approx(std::sqrt(2.0)));

    // Path on n nodes: 2 cos(pi k / (n + 1)).
    const int n = 17;
    s = eigendecompose_adjacency(path_graph(n));
    for (int k = 1; k <= n; ++k) {
        CHECK(s.eigenvalues(n - k) == doctest::Approx(2 * std::cos(kPi * k / (n + 1))).epsilon(1e-12));
    }
}

TEST_CASE("the empty graph gives V = I") {
    const auto s = eigendecompose_adjacency(Graph(RealMatrix::Zero(3, 3)));
    CHECK(s.eigenvalues.isZero(0.0));
    CHECK(s.eigenvectors.isIdentity(0.0));
}

TEST_CASE("spectrum invariants and sign rule") {
    for (unsigned seed : {1u, 2u, 3u}) {
        const Graph g(random_symmetric(30, seed));
        const auto s = eigendecompose_adjacency(g);
        const double amax = max_abs(g.adjacency());
        const auto& v = s.eigenvectors;
        CHECK((g.adjacency() * v - v * s.eigenvalues.asDiagonal()).cwiseAbs().maxCoeff() <=
              1e-9 * amax * 30);
        CHECK((v.transpose() * v - RealMatrix::Identity(30, 30)).cwiseAbs().maxCoeff() <= 1e-10);
        CHECK((g.adjacency() - v * s.eigenvalues.asDiagonal() * v.transpose()).cwiseAbs().maxCoeff() <=
              1e-9 * amax * 30);
        for (int k = 1; k < 30; ++k) CHECK(s.eigenvalues(k - 1) <= s.eigenvalues(k));
        for (int k = 0; k < 30; ++k) {
            Eigen::Index idx = 0;
            const double big = v.col(k).cwiseAbs().maxCoeff(&idx);
            CHECK(v(idx, k) > 0.0);
            // lowest index among entries of maximal magnitude
            for (Eigen::Index i = 0; i < idx; ++i) CHECK(std::abs(v(i, k)) < big);
        }
    }
}

TEST_CASE("eigendecomposition is bitwise deterministic") {
    const Graph g(random_symmetric(40, 9));
    const auto s1 = eigendecompose_adjacency(g);
    const auto s2 = eigendecompose_adjacency(g);
    CHECK(s1.eigenvalues == s2.eigenvalues);
    CHECK(s1.eigenvectors == s2.eigenvectors);
}

TEST_CASE("GFT matrix, transform and inverse") {
    const auto s2 = eigendecompose_adjacency(path_graph(2));
    const RealMatrix f = gft_matrix(s2);
    CHECK(f == s2.eigenvectors.transpose());
    CHECK((f * s2.eigenvectors - RealMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-10);

    // (1,1)/sqrt 2 is the lambda = 1 eigenvector: only the second coordinate survives.
    GraphSignal x(2);
    x << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
    const GraphSignal xh = gft(s2, x);
    CHECK(std::abs(xh(0)) < 1e-12);
    CHECK(std::abs(xh(1)) == doctest::Approx(1.0));

    CHECK(gft(s2, GraphSignal::Zero(2)).isZero(0.0));

    const auto se = eigendecompose_adjacency(Graph(RealMatrix::Zero(3, 3)));
    CHECK(gft_matrix(se).isIdentity(0.0));

    const Graph g(random_symmetric(25, 4));
    const auto s = eigendecompose_adjacency(g);
    const RealMatrix fg = gft_matrix(s);
    CHECK((fg * fg.transpose() - RealMatrix::Identity(25, 25)).cwiseAbs().maxCoeff() < 1e-10);

    std::mt19937_64 rng(5);
    std::normal_distribution<double> nd;
    GraphSignal y(25);
    for (auto& v : y) v = cplx(nd(rng), nd(rng));
    const GraphSignal yh = gft(s, y);
    CHECK(yh.norm() == doctest::Approx(y.norm()).epsilon(1e-10));
    const GraphSignal back = igft(s, yh);
    CHECK((back - y).squaredNorm() / y.squaredNorm() < 1e-20);

    CHECK(kind_of([&] { gft(s, GraphSignal::Zero(3)); }) == ErrorKind::DimensionMismatch);
    CHECK(kind_of([&] { igft(s, GraphSignal::Zero(3)); }) == ErrorKind::DimensionMismatch);
}
