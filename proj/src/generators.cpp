#include "glct/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <nlohmann/json.hpp>

#include "glct/errors.hpp"
#include "glct/random.hpp"

namespace glct {

namespace {

// Connection constants, chosen so the default corpus lands near the published
// nonzero counts (spiral 930, community 8774, sphere 3182, sensor 1854,
// swiss roll 1444).
constexpr int kRandomRegularK = 3;
constexpr int kSpiralK = 5;
constexpr double kSpiralTurns = 4.0;
constexpr double kCommunityRadius = 0.1276;
constexpr int kSphereK = 11;
constexpr double kSensorRadius = 0.0985;
constexpr int kSwissRollK = 6;
constexpr int kCometStarDegree = 30;

const std::vector<std::pair<GeneratorKind, std::string>>& kind_names() {
    static const std::vector<std::pair<GeneratorKind, std::string>> names{
        {GeneratorKind::RandomRegularKnn, "random_regular_knn"},
        {GeneratorKind::Spiral, "spiral"},
        {GeneratorKind::Community, "community"},
        {GeneratorKind::Sphere, "sphere"},
        {GeneratorKind::Sensor, "sensor"},
        {GeneratorKind::SwissRoll, "swiss_roll"},
        {GeneratorKind::Comet, "comet"},
        {GeneratorKind::Path, "path"},
    };
    return names;
}

RealMatrix uniform_square(int n, Rng& rng) {
    RealMatrix pts(n, 2);
    for (int i = 0; i < n; ++i) {
        pts(i, 0) = uniform(rng, 0.0, 1.0);
        pts(i, 1) = uniform(rng, 0.0, 1.0);
    }
    return pts;
}

// Union-symmetrized k-nearest-neighbour graph; distance ties go to the lower index.
RealMatrix knn_adjacency(const RealMatrix& pts, int k) {
    const Eigen::Index n = pts.rows();
    RealMatrix a = RealMatrix::Zero(n, n);
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
    std::vector<double> dist(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            dist[static_cast<std::size_t>(j)] = (pts.row(i) - pts.row(j)).squaredNorm();
        }
        idx.resize(static_cast<std::size_t>(n));
        std::iota(idx.begin(), idx.end(), Eigen::Index{0});
        idx.erase(idx.begin() + i);
        std::partial_sort(idx.begin(), idx.begin() + k, idx.end(), [&](Eigen::Index x, Eigen::Index y) {
            const double dx = dist[static_cast<std::size_t>(x)];
            const double dy = dist[static_cast<std::size_t>(y)];
            return dx != dy ? dx < dy : x < y;
        });
        for (int t = 0; t < k; ++t) {
            const Eigen::Index j = idx[static_cast<std::size_t>(t)];
            a(i, j) = 1.0;
            a(j, i) = 1.0;
        }
    }
    return a;
}

RealMatrix radius_adjacency(const RealMatrix& pts, double radius) {
    const Eigen::Index n = pts.rows();
    RealMatrix a = RealMatrix::Zero(n, n);
    const double r2 = radius * radius;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            if ((pts.row(i) - pts.row(j)).squaredNorm() <= r2) {
                a(i, j) = 1.0;
                a(j, i) = 1.0;
            }
        }
    }
    return a;
}

Graph path_graph(int n) {
    RealMatrix a = RealMatrix::Zero(n, n);
    RealMatrix pts(n, 2);
    for (int i = 0; i < n; ++i) {
        pts(i, 0) = static_cast<double>(i);
        pts(i, 1) = 0.0;
        if (i + 1 < n) a(i, i + 1) = a(i + 1, i) = 1.0;
    }
    return Graph(std::move(a), std::move(pts));
}

// Hub 0 joined to nodes 1..s; a tail runs from node s through n-1.
Graph comet_graph(int n, int s) {
    RealMatrix a = RealMatrix::Zero(n, n);
    RealMatrix pts = RealMatrix::Zero(n, 2);
    for (int j = 1; j <= s; ++j) {
        a(0, j) = a(j, 0) = 1.0;
        const double angle = 2.0 * kPi * static_cast<double>(j - 1) / static_cast<double>(s);
        pts(j, 0) = std::cos(angle);
        pts(j, 1) = std::sin(angle);
    }
    for (int j = s; j + 1 < n; ++j) {
        a(j, j + 1) = a(j + 1, j) = 1.0;
        pts(j + 1, 0) = 1.0 + static_cast<double>(j + 1 - s);
        pts(j + 1, 1) = 0.0;
    }
    return Graph(std::move(a), std::move(pts));
}

// Archimedean spiral sampled at (roughly) uniform arc length, consecutive
// samples chained so the graph is connected, plus kNN links across turns.
Graph spiral_graph(int n, int k, double turns) {
    RealMatrix pts(n, 2);
    for (int i = 0; i < n; ++i) {
        const double t = std::sqrt((static_cast<double>(i) + 0.5) / static_cast<double>(n));
        const double theta = 2.0 * kPi * turns * t;
        pts(i, 0) = t * std::cos(theta);
        pts(i, 1) = t * std::sin(theta);
    }
    RealMatrix a = knn_adjacency(pts, k);
    for (int i = 0; i + 1 < n; ++i) a(i, i + 1) = a(i + 1, i) = 1.0;
    return Graph(std::move(a), std::move(pts));
}

Graph sphere_graph(int n, int k) {
    RealMatrix pts(n, 3);
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < n; ++i) {
        const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
        const double r = std::sqrt(1.0 - z * z);
        const double phi = golden * static_cast<double>(i);
        pts(i, 0) = r * std::cos(phi);
        pts(i, 1) = r * std::sin(phi);
        pts(i, 2) = z;
    }
    RealMatrix a = knn_adjacency(pts, k);
    return Graph(std::move(a), std::move(pts));
}

Graph random_instance(const GeneratorSpec& s, std::uint64_t seed) {
    Rng rng(seed);
    switch (s.kind) {
        case GeneratorKind::RandomRegularKnn: {
            RealMatrix pts = uniform_square(s.n, rng);
            RealMatrix a = knn_adjacency(pts, s.k);
            return Graph(std::move(a), std::move(pts));
        }
        case GeneratorKind::Community:
        case GeneratorKind::Sensor: {
            RealMatrix pts = uniform_square(s.n, rng);
            RealMatrix a = radius_adjacency(pts, s.radius);
            return Graph(std::move(a), std::move(pts));
        }
        case GeneratorKind::SwissRoll: {
            RealMatrix pts(s.n, 3);
            for (int i = 0; i < s.n; ++i) {
                const double t = 1.5 * kPi * (1.0 + 2.0 * uniform(rng, 0.0, 1.0));
                const double h = uniform(rng, 0.0, 1.0);
                pts(i, 0) = t * std::cos(t) / (4.5 * kPi);
                pts(i, 1) = h;
                pts(i, 2) = t * std::sin(t) / (4.5 * kPi);
            }
            RealMatrix a = knn_adjacency(pts, s.k);
            return Graph(std::move(a), std::move(pts));
        }
        default: break;
    }
    throw Error(ErrorKind::InvalidSpec, "not a random generator kind");
}

GeneratorSpec with_defaults(GeneratorSpec s) {
    const GeneratorSpec d = default_spec(s.kind);
    if (s.n == 0) s.n = d.n;
    if (s.k == 0) s.k = d.k;
    if (s.star_degree == 0) s.star_degree = d.star_degree;
    if (s.radius == 0.0) s.radius = d.radius;
    if (s.turns == 0.0) s.turns = d.turns;
    return s;
}

void validate(const GeneratorSpec& s) {
    if (s.n < 2) throw Error(ErrorKind::InvalidSpec, "n must be at least 2");
    switch (s.kind) {
        case GeneratorKind::RandomRegularKnn:
        case GeneratorKind::Spiral:
        case GeneratorKind::Sphere:
        case GeneratorKind::SwissRoll:
            if (s.k < 1 || s.k >= s.n) {
                throw Error(ErrorKind::InvalidSpec, "need 1 <= k < n for kNN graphs");
            }
            break;
        case GeneratorKind::Comet:
            if (s.star_degree < 1 || s.star_degree >= s.n) {
                throw Error(ErrorKind::InvalidSpec, "need 1 <= star_degree < n");
            }
            break;
        case GeneratorKind::Community:
        case GeneratorKind::Sensor:
            if (!(s.radius > 0.0)) throw Error(ErrorKind::InvalidSpec, "radius must be positive");
            break;
        case GeneratorKind::Path: break;
    }
    if (s.kind == GeneratorKind::Spiral && !(s.turns > 0.0)) {
        throw Error(ErrorKind::InvalidSpec, "turns must be positive");
    }
}

}  // namespace

std::string to_string(GeneratorKind k) {
    for (const auto& [kind, name] : kind_names()) {
        if (kind == k) return name;
    }
    return "unknown";
}

GeneratorKind generator_kind_from_string(const std::string& s) {
    for (const auto& [kind, name] : kind_names()) {
        if (name == s) return kind;
    }
    if (s == "random_regular" || s == "knn") return GeneratorKind::RandomRegularKnn;
    if (s == "swissroll" || s == "swiss-roll") return GeneratorKind::SwissRoll;
    throw Error(ErrorKind::InvalidSpec, "unknown generator kind '" + s + "'");
}

GeneratorSpec default_spec(GeneratorKind kind) {
    GeneratorSpec s;
    s.kind = kind;
    switch (kind) {
        case GeneratorKind::RandomRegularKnn: s.n = 260; s.k = kRandomRegularK; s.seed = 1; break;
        case GeneratorKind::Spiral: s.n = 160; s.k = kSpiralK; s.turns = kSpiralTurns; break;
        case GeneratorKind::Community: s.n = 440; s.radius = kCommunityRadius; s.seed = 3; break;
        case GeneratorKind::Sphere: s.n = 280; s.k = kSphereK; break;
        case GeneratorKind::Sensor: s.n = 260; s.radius = kSensorRadius; s.seed = 5; break;
        case GeneratorKind::SwissRoll: s.n = 200; s.k = kSwissRollK; s.seed = 6; break;
        case GeneratorKind::Comet: s.n = 60; s.star_degree = kCometStarDegree; break;
        case GeneratorKind::Path: s.n = 50; break;
    }
    return s;
}

Graph generate(const GeneratorSpec& raw) {
    const GeneratorSpec s = with_defaults(raw);
    validate(s);
    switch (s.kind) {
        case GeneratorKind::Path: return path_graph(s.n);
        case GeneratorKind::Comet: return comet_graph(s.n, s.star_degree);
        case GeneratorKind::Spiral: return spiral_graph(s.n, s.k, s.turns);
        case GeneratorKind::Sphere: return sphere_graph(s.n, s.k);
        default: break;
    }
    for (int attempt = 0; attempt <= s.max_retries; ++attempt) {
        const std::uint64_t seed =
            attempt == 0 ? s.seed : derive_seed(s.seed, static_cast<std::uint64_t>(attempt));
        Graph g = random_instance(s, seed);
        if (g.is_connected()) return g;
    }
    throw Error(ErrorKind::InvalidSpec, "no connected " + to_string(s.kind) + " graph within " +
                                            std::to_string(s.max_retries) + " retries");
}

GraphSignal bipolar_rectangular(const Graph& g) {
    const Eigen::Index n = g.n();
    const Eigen::Index half = (n + 1) / 2;
    GraphSignal x(n);
    for (Eigen::Index i = 0; i < n; ++i) x(i) = i < half ? 1.0 : -1.0;
    return x;
}

std::vector<CorpusEntry> corpus() {
    const std::vector<std::pair<GeneratorKind, std::size_t>> entries{
        {GeneratorKind::RandomRegularKnn, 0}, {GeneratorKind::Spiral, 930},
        {GeneratorKind::Community, 8774},     {GeneratorKind::Sphere, 3182},
        {GeneratorKind::Sensor, 1854},        {GeneratorKind::SwissRoll, 1444},
        {GeneratorKind::Comet, 118},          {GeneratorKind::Path, 98},
    };
    std::vector<CorpusEntry> out;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& [kind, nnz] = entries[i];
        out.push_back({"x" + std::to_string(i + 1), to_string(kind), default_spec(kind), nnz});
    }
    return out;
}

std::optional<CorpusEntry> find_corpus_entry(const std::string& key) {
    for (CorpusEntry& e : corpus()) {
        if (e.id == key || e.name == key) return e;
    }
    return std::nullopt;
}

void to_json(nlohmann::json& j, const GeneratorSpec& s) {
    j = nlohmann::json{{"kind", to_string(s.kind)}, {"n", s.n},
                       {"k", s.k},                  {"star_degree", s.star_degree},
                       {"radius", s.radius},        {"turns", s.turns},
                       {"seed", s.seed},            {"max_retries", s.max_retries}};
}

GeneratorSpec generator_spec_from_json(const nlohmann::json& j) {
    try {
        GeneratorSpec s = default_spec(generator_kind_from_string(j.at("kind").get<std::string>()));
        s.n = j.value("n", s.n);
        s.k = j.value("k", s.k);
        s.star_degree = j.value("star_degree", s.star_degree);
        s.radius = j.value("radius", s.radius);
        s.turns = j.value("turns", s.turns);
        s.seed = j.value("seed", s.seed);
        s.max_retries = j.value("max_retries", s.max_retries);
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ConfigError, std::string("generator spec: ") + e.what());
    }
}

nlohmann::json corpus_manifest() {
    nlohmann::json graphs = nlohmann::json::array();
    for (const CorpusEntry& e : corpus()) {
        graphs.push_back({{"id", e.id},
                          {"name", e.name},
                          {"spec", e.spec},
                          {"reference_nonzeros", e.reference_nonzeros}});
    }
    return {{"graphs", graphs}};
}

}  // namespace glct
