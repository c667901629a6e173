#include "glct/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "glct/errors.hpp"
#include "glct/generators.hpp"
#include "glct/io.hpp"

namespace glct {

namespace {

bool clear_of_band(const ParamMatrix& m, double min_abs) {
    return std::abs(m.a()) >= min_abs && std::abs(m.b()) >= min_abs;
}

template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(threads, count);
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) fn(i);
        });
    }
}

}  // namespace

std::string to_string(Experiment e) {
    return e == Experiment::Additivity ? "additivity" : "reversibility";
}

Experiment experiment_from_string(const std::string& s) {
    if (s == "additivity") return Experiment::Additivity;
    if (s == "reversibility") return Experiment::Reversibility;
    throw Error(ErrorKind::ConfigError, "unknown experiment '" + s + "'");
}

void BenchConfig::validate() const {
    if (runs < 1) throw Error(ErrorKind::ConfigError, "runs must be at least 1");
    if (!(range_lo < range_hi)) throw Error(ErrorKind::ConfigError, "empty parameter range");
    if (!(min_abs >= 0.0)) throw Error(ErrorKind::ConfigError, "min_abs must be non-negative");
    if (methods.empty()) throw Error(ErrorKind::ConfigError, "no methods selected");
    if (fixed_m2 && !fixed_m1) throw Error(ErrorKind::ConfigError, "fixed m2 needs a fixed m1");
}

nlohmann::json to_json_value(const BenchConfig& cfg) {
    nlohmann::json methods = nlohmann::json::array();
    for (Method m : cfg.methods) methods.push_back(to_string(m));
    nlohmann::json j{{"graphs", cfg.graphs},
                     {"runs", cfg.runs},
                     {"seed", cfg.seed},
                     {"range", {cfg.range_lo, cfg.range_hi}},
                     {"min_abs", cfg.min_abs},
                     {"methods", methods},
                     {"strategy", to_string(cfg.strategy)},
                     {"experiment", to_string(cfg.experiment)},
                     {"sampling", "a, b, c uniform on range; d = (1 + bc) / a; redraw while |a| or "
                                  "|b| < min_abs (also for the product)"},
                     {"additivity_order", "reference M1 x M2; cascade applies M2 then M1"}};
    if (cfg.fixed_m1) j["m1"] = *cfg.fixed_m1;
    if (cfg.fixed_m2) j["m2"] = *cfg.fixed_m2;
    return j;
}

BenchConfig bench_config_from_json(const nlohmann::json& j) {
    try {
        BenchConfig cfg;
        cfg.graphs = j.value("graphs", std::vector<std::string>{});
        cfg.runs = j.value("runs", cfg.runs);
        cfg.seed = j.value("seed", cfg.seed);
        if (j.contains("range")) {
            const auto r = j.at("range").get<std::vector<double>>();
            if (r.size() != 2) throw Error(ErrorKind::ConfigError, "range must have two entries");
            cfg.range_lo = r[0];
            cfg.range_hi = r[1];
        }
        cfg.min_abs = j.value("min_abs", cfg.min_abs);
        if (j.contains("methods")) {
            cfg.methods.clear();
            for (const auto& m : j.at("methods")) cfg.methods.push_back(method_from_string(m));
        }
        if (j.contains("strategy")) cfg.strategy = chirp_strategy_from_string(j.at("strategy"));
        if (j.contains("experiment")) {
            cfg.experiment = experiment_from_string(j.at("experiment"));
        }
        if (j.contains("m1")) cfg.fixed_m1 = param_matrix_from_json(j.at("m1"));
        if (j.contains("m2")) cfg.fixed_m2 = param_matrix_from_json(j.at("m2"));
        cfg.threads = j.value("threads", cfg.threads);
        cfg.validate();
        return cfg;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ConfigError, std::string("bench config: ") + e.what());
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::ConfigError) throw;
        throw Error(ErrorKind::ConfigError, e.what());
    }
}

std::vector<RunParams> sample_runs(const BenchConfig& cfg) {
    cfg.validate();
    std::vector<RunParams> out;
    out.reserve(static_cast<std::size_t>(cfg.runs));
    const bool additivity = cfg.experiment == Experiment::Additivity;
    for (int run = 0; run < cfg.runs; ++run) {
        const std::uint64_t seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(run));
        if (cfg.fixed_m1) {
            std::optional<ParamMatrix> m2;
            if (additivity) m2 = cfg.fixed_m2.value_or(*cfg.fixed_m1);
            out.push_back({run, seed, *cfg.fixed_m1, m2});
            continue;
        }
        Rng rng(seed);
        for (;;) {
            const ParamMatrix m1 = sample_random(rng, cfg.range_lo, cfg.range_hi, cfg.min_abs);
            if (!additivity) {
                out.push_back({run, seed, m1, std::nullopt});
                break;
            }
            const ParamMatrix m2 = sample_random(rng, cfg.range_lo, cfg.range_hi, cfg.min_abs);
            if (clear_of_band(multiply(m1, m2), cfg.min_abs)) {
                out.push_back({run, seed, m1, m2});
                break;
            }
        }
    }
    return out;
}

const BenchResult* BenchReport::find(const std::string& graph_id, Method method) const {
    for (const BenchResult& r : results) {
        if (r.graph_id == graph_id && r.method == method) return &r;
    }
    return nullptr;
}

TransformBuilder make_builder(std::shared_ptr<const SpectralGraph> graph, Method method,
                              ChirpStrategy strategy) {
    if (method == Method::CMCCM) {
        return [graph, strategy](const ParamMatrix& m) { return build_cmccm(graph, m, strategy); };
    }
    return [graph, strategy](const ParamMatrix& m) { return build_cddhfs(graph, m, strategy); };
}

double nmse(const GraphSignal& reference, const GraphSignal& approx) {
    if (reference.size() != approx.size()) {
        throw Error(ErrorKind::DimensionMismatch, "NMSE operands differ in length");
    }
    const double denom = reference.squaredNorm();
    if (!(denom > 0.0)) throw Error(ErrorKind::DegenerateDenominator, "reference has zero energy");
    return (reference - approx).squaredNorm() / denom;
}

double nmse_additivity(const TransformBuilder& t, const ParamMatrix& m1, const ParamMatrix& m2,
                       const GraphSignal& x) {
    const GraphSignal reference = glct::apply(t(multiply(m1, m2)), x);
    const GraphSignal cascade = glct::apply(t(m1), glct::apply(t(m2), x));
    return nmse(reference, cascade);
}

double nmse_reversibility(const TransformBuilder& t, const ParamMatrix& m, const GraphSignal& x) {
    const GraphSignal round_trip = glct::apply(t(inverse(m)), glct::apply(t(m), x));
    return nmse(x, round_trip);
}

std::vector<NamedGraph> load_corpus(const std::vector<std::string>& ids) {
    std::vector<CorpusEntry> entries;
    if (ids.empty()) {
        entries = corpus();
    } else {
        for (const std::string& id : ids) {
            auto e = find_corpus_entry(id);
            if (!e) throw Error(ErrorKind::ConfigError, "unknown corpus graph '" + id + "'");
            entries.push_back(*e);
        }
    }
    std::vector<NamedGraph> out;
    for (const CorpusEntry& e : entries) out.push_back({e.id, analyze(generate(e.spec))});
    return out;
}

BenchReport run_experiment(const BenchConfig& cfg, const std::vector<NamedGraph>& graphs) {
    const auto start = std::chrono::steady_clock::now();
    const std::vector<RunParams> params = sample_runs(cfg);
    const unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());

    BenchReport report{cfg, {}, 0.0};
    for (const NamedGraph& g : graphs) {
        const GraphSignal x = bipolar_rectangular(g.graph->graph);
        for (Method method : cfg.methods) {
            const TransformBuilder t = make_builder(g.graph, method, cfg.strategy);
            BenchResult result{g.id, method, {}, {}, {}, 0.0};
            result.runs.resize(params.size(), RunRecord{params.front(), 0.0, 0.0});
            parallel_for(params.size(), threads, [&](std::size_t i) {
                const RunParams& p = params[i];
                RunRecord rec{p, 0.0, std::numeric_limits<double>::quiet_NaN()};
                if (cfg.experiment == Experiment::Additivity) {
                    rec.nmse = nmse_additivity(t, p.m1, *p.m2, x);
                    const GraphSignal swapped_ref = glct::apply(t(multiply(*p.m2, p.m1)), x);
                    const GraphSignal cascade = glct::apply(t(p.m1), glct::apply(t(*p.m2), x));
                    rec.swapped_nmse = nmse(swapped_ref, cascade);
                } else {
                    rec.nmse = nmse_reversibility(t, p.m1, x);
                }
                result.runs[i] = rec;
            });
            result.nmse.reserve(params.size());
            double sum = 0.0;
            for (const RunRecord& r : result.runs) {
                result.nmse.push_back(r.nmse);
                sum += r.nmse;
            }
            result.mean = sum / static_cast<double>(result.nmse.size());
            result.sorted = result.nmse;
            std::sort(result.sorted.begin(), result.sorted.end());
            report.results.push_back(std::move(result));
        }
    }
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

BenchReport run_experiment(const BenchConfig& cfg) {
    cfg.validate();
    return run_experiment(cfg, load_corpus(cfg.graphs));
}

std::vector<std::filesystem::path> write_report(const BenchReport& report,
                                                const std::filesystem::path& dir) {
    using io::format_double;
    std::vector<std::filesystem::path> written;
    const bool additivity = report.config.experiment == Experiment::Additivity;
    for (const BenchResult& r : report.results) {
        const std::string stem = r.graph_id + "_" + to_string(r.method);

        std::vector<std::size_t> order(r.runs.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return r.nmse[a] < r.nmse[b]; });
        std::ostringstream curve;
        curve << "rank,run,nmse\n";
        for (std::size_t k = 0; k < order.size(); ++k) {
            curve << k << ',' << r.runs[order[k]].params.run << ','
                  << format_double(r.nmse[order[k]]) << '\n';
        }
        const auto curve_path = dir / ("curve_" + stem + ".csv");
        io::write_text(curve_path, curve.str());
        written.push_back(curve_path);

        std::ostringstream runs;
        runs << "run,seed,a1,b1,c1,d1";
        if (additivity) runs << ",a2,b2,c2,d2";
        runs << ",nmse";
        if (additivity) runs << ",swapped_nmse";
        runs << '\n';
        for (const RunRecord& rec : r.runs) {
            const ParamMatrix& m1 = rec.params.m1;
            runs << rec.params.run << ',' << rec.params.seed << ',' << format_double(m1.a()) << ','
                 << format_double(m1.b()) << ',' << format_double(m1.c()) << ','
                 << format_double(m1.d());
            if (additivity) {
                const ParamMatrix& m2 = *rec.params.m2;
                runs << ',' << format_double(m2.a()) << ',' << format_double(m2.b()) << ','
                     << format_double(m2.c()) << ',' << format_double(m2.d());
            }
            runs << ',' << format_double(rec.nmse);
            if (additivity) runs << ',' << format_double(rec.swapped_nmse);
            runs << '\n';
        }
        const auto runs_path = dir / ("runs_" + stem + ".csv");
        io::write_text(runs_path, runs.str());
        written.push_back(runs_path);
    }

    std::ostringstream summary;
    summary << "graph,method,experiment,strategy,mean,runs,seed\n";
    for (const BenchResult& r : report.results) {
        summary << r.graph_id << ',' << to_string(r.method) << ','
                << to_string(report.config.experiment) << ',' << to_string(report.config.strategy)
                << ',' << format_double(r.mean) << ',' << r.nmse.size() << ','
                << report.config.seed << '\n';
    }
    const auto summary_path = dir / "summary.csv";
    io::write_text(summary_path, summary.str());
    written.push_back(summary_path);
    return written;
}

std::string to_string(OpCountMethod m) {
    switch (m) {
        case OpCountMethod::CDDHFs: return "cddhfs";
        case OpCountMethod::CMCCM_bnz: return "cmccm_bnz";
        case OpCountMethod::CMCCM_b0: return "cmccm_b0";
    }
    return "unknown";
}

std::int64_t opcount(OpCountMethod method, std::int64_t n) {
    if (n < 1) throw Error(ErrorKind::InvalidSpec, "opcount needs n >= 1");
    const double nd = static_cast<double>(n);
    switch (method) {
        case OpCountMethod::CDDHFs: return 4 * n * n + 8 * n;
        case OpCountMethod::CMCCM_bnz:
            return static_cast<std::int64_t>(std::ceil(12.0 * nd + 4.0 * nd * std::log2(nd)));
        case OpCountMethod::CMCCM_b0:
            return static_cast<std::int64_t>(std::ceil(12.0 * nd + 6.0 * nd * std::log2(nd)));
    }
    throw Error(ErrorKind::InvalidSpec, "unknown opcount method");
}

}  // namespace glct
