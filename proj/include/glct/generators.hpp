#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "glct/graph.hpp"

namespace glct {

enum class GeneratorKind { RandomRegularKnn, Spiral, Community, Sphere, Sensor, SwissRoll, Comet, Path };

std::string to_string(GeneratorKind k);
GeneratorKind generator_kind_from_string(const std::string& s);

/// Parameters of a test-graph generator. Zero-valued knobs fall back to the
/// per-kind defaults from `default_spec`.
struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::Path;
    int n = 0;
    int k = 0;              ///< neighbours per node for the kNN kinds
    int star_degree = 0;    ///< comet hub degree
    double radius = 0.0;    ///< connection radius for the radius kinds
    double turns = 0.0;     ///< spiral turns
    std::uint64_t seed = 0;
    int max_retries = 64;   ///< re-seeding budget for reaching a connected graph
};

/// Corpus defaults for a kind (node counts 260, 160, 440, 280, 260, 200, 60, 50).
GeneratorSpec default_spec(GeneratorKind kind);

/// Builds the graph. Unweighted 0/1 adjacency; coordinates are attached for
/// every kind with a geometry. Random kinds are re-seeded with derived seeds
/// until connected. Throws InvalidSpec for impossible parameters.
Graph generate(const GeneratorSpec& spec);

/// +1 on nodes with index < ceil(n/2), -1 on the rest.
GraphSignal bipolar_rectangular(const Graph& g);

struct CorpusEntry {
    std::string id;    ///< x1 .. x8
    std::string name;  ///< generator kind name
    GeneratorSpec spec;
    std::size_t reference_nonzeros;  ///< published nonzero count, 0 if none
};

/// The eight corpus graphs in order x1 .. x8 with their default seeds.
std::vector<CorpusEntry> corpus();

/// Looks a corpus entry up by id ("x3") or kind name ("community").
std::optional<CorpusEntry> find_corpus_entry(const std::string& key);

void to_json(nlohmann::json& j, const GeneratorSpec& s);
GeneratorSpec generator_spec_from_json(const nlohmann::json& j);
nlohmann::json corpus_manifest();

}  // namespace glct
