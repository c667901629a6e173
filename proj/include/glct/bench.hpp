#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "glct/sl2.hpp"
#include "glct/spectral.hpp"
#include "glct/transforms.hpp"

namespace glct {

enum class Experiment { Additivity, Reversibility };

std::string to_string(Experiment e);
Experiment experiment_from_string(const std::string& s);

struct BenchConfig {
    std::vector<std::string> graphs;  ///< corpus ids or names; empty means all eight
    int runs = 50;
    std::uint64_t seed = 20240101;
    double range_lo = -2.0;
    double range_hi = 2.0;
    /// Rejection band: |a| and |b| of M1, M2 and the product stay above this.
    double min_abs = 0.05;
    std::vector<Method> methods{Method::CDDHFs, Method::CMCCM};
    ChirpStrategy strategy = ChirpStrategy::SpectralPowerOfF;
    Experiment experiment = Experiment::Reversibility;
    /// Pin the parameter matrices instead of sampling them.
    std::optional<ParamMatrix> fixed_m1;
    std::optional<ParamMatrix> fixed_m2;
    /// Worker threads; 0 means hardware concurrency.
    unsigned threads = 0;

    void validate() const;
};

nlohmann::json to_json_value(const BenchConfig& cfg);
BenchConfig bench_config_from_json(const nlohmann::json& j);

/// Parameters of one run; m2 is only set for additivity.
struct RunParams {
    int run;
    std::uint64_t seed;
    ParamMatrix m1;
    std::optional<ParamMatrix> m2;
};

/// Deterministic per-run parameters, derived from (cfg.seed, run index).
std::vector<RunParams> sample_runs(const BenchConfig& cfg);

struct RunRecord {
    RunParams params;
    double nmse;
    /// Additivity only: the cascade measured against M2 x M1 instead of M1 x M2.
    double swapped_nmse;
};

struct BenchResult {
    std::string graph_id;
    Method method;
    std::vector<RunRecord> runs;
    std::vector<double> nmse;
    std::vector<double> sorted;
    double mean = 0.0;
};

struct BenchReport {
    BenchConfig config;
    std::vector<BenchResult> results;
    double wall_seconds = 0.0;

    const BenchResult* find(const std::string& graph_id, Method method) const;
};

using TransformBuilder = std::function<GlctOperator(const ParamMatrix&)>;

TransformBuilder make_builder(std::shared_ptr<const SpectralGraph> graph, Method method,
                              ChirpStrategy strategy);

/// sum |reference - approx|^2 / sum |reference|^2; DegenerateDenominator on a zero reference.
double nmse(const GraphSignal& reference, const GraphSignal& approx);

/// Reference O^{M1 x M2} x against the cascade O^{M1}(O^{M2} x) (M2 applied first).
double nmse_additivity(const TransformBuilder& t, const ParamMatrix& m1, const ParamMatrix& m2,
                       const GraphSignal& x);

/// x against O^{M^-1}(O^{M} x).
double nmse_reversibility(const TransformBuilder& t, const ParamMatrix& m, const GraphSignal& x);

struct NamedGraph {
    std::string id;
    std::shared_ptr<const SpectralGraph> graph;
};

/// Builds and analyzes the corpus graphs named by `ids` (all eight when empty).
std::vector<NamedGraph> load_corpus(const std::vector<std::string>& ids);

/// Runs the configured experiment on the given graphs with the bipolar
/// rectangular signal. Identical configs give bitwise-identical NMSE values
/// regardless of thread count.
BenchReport run_experiment(const BenchConfig& cfg, const std::vector<NamedGraph>& graphs);
BenchReport run_experiment(const BenchConfig& cfg);

/// Writes curve_<graph>_<method>.csv, runs_<graph>_<method>.csv and
/// summary.csv into `dir`; returns the written paths.
std::vector<std::filesystem::path> write_report(const BenchReport& report,
                                                const std::filesystem::path& dir);

enum class OpCountMethod { CDDHFs, CMCCM_bnz, CMCCM_b0 };

std::string to_string(OpCountMethod m);

/// Real multiplications per transform: 4n^2 + 8n, 12n + 4n log2 n and
/// 12n + 6n log2 n. The logarithm is real-valued and the total is ceiled.
std::int64_t opcount(OpCountMethod method, std::int64_t n);

}  // namespace glct
