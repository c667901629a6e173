// glct command-line front end: gen, transform, bench, opcount.
//
// Exit codes: 0 ok, 2 invalid input or configuration, 3 numerical failure,
// 4 file system / I/O trouble.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "glct/bench.hpp"
#include "glct/errors.hpp"
#include "glct/generators.hpp"
#include "glct/io.hpp"
#include "glct/transforms.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace glct;

namespace {

enum Exit { kOk = 0, kValidation = 2, kNumeric = 3, kIo = 4 };

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::NumericalFailure:
        case ErrorKind::DegenerateDenominator:
        case ErrorKind::NotUnitModulus: return kNumeric;
        case ErrorKind::IoError: return kIo;
        default: return kValidation;
    }
}

fs::path default_dir() {
    const char* env = std::getenv("GLCT_OUT_DIR");
    return env && *env ? fs::path(env) : fs::current_path();
}

// --out for file-producing commands: empty means <GLCT_OUT_DIR>/<fallback>.
fs::path resolve_file(const std::string& out, const char* fallback) {
    return out.empty() ? default_dir() / fallback : fs::path(out);
}

fs::path resolve_dir(const std::string& out) { return out.empty() ? default_dir() : fs::path(out); }

void ensure_parent(const fs::path& p) {
    std::error_code ec;
    if (p.has_parent_path()) fs::create_directories(p.parent_path(), ec);
    if (ec) throw Error(ErrorKind::IoError, "cannot create " + p.parent_path().string() + ": " + ec.message());
}

void finish_manifest(io::RunManifest& m, const fs::path& where) {
    m.config_hash = io::sha256_hex(m.config.dump());
    io::write_json(where, m.to_json());
}

// ---- gen -------------------------------------------------------------------

struct GenArgs {
    std::string kind;
    int n = 0, k = 0, star_degree = 0;
    double radius = 0.0;
    std::optional<std::uint64_t> seed;
    bool corpus = false;
    std::string out;
};

std::vector<fs::path> write_graph_files(const Graph& g, const fs::path& dir, const std::string& stem) {
    std::vector<fs::path> files{dir / (stem + ".mtx"), dir / (stem + "_signal.csv")};
    io::write_matrix_market(files[0], g.adjacency());
    io::write_signal_csv(files[1], bipolar_rectangular(g));
    if (g.coords()) {
        files.push_back(dir / (stem + "_coords.csv"));
        io::write_coords_csv(files.back(), *g.coords());
    }
    return files;
}

int cmd_gen(const GenArgs& a) {
    const fs::path dir = resolve_dir(a.out);
    fs::create_directories(dir);
    io::RunManifest man;
    man.command = "gen";

    std::vector<std::pair<std::string, GeneratorSpec>> jobs;
    if (a.corpus) {
        for (const CorpusEntry& e : corpus()) jobs.emplace_back(e.id, e.spec);
    } else {
        if (a.kind.empty()) throw Error(ErrorKind::InvalidSpec, "--kind or --corpus is required");
        GeneratorSpec s = default_spec(generator_kind_from_string(a.kind));
        if (a.n) s.n = a.n;
        if (a.k) s.k = a.k;
        if (a.star_degree) s.star_degree = a.star_degree;
        if (a.radius > 0.0) s.radius = a.radius;
        if (a.seed) s.seed = *a.seed;
        jobs.emplace_back(to_string(s.kind), s);
        man.seed = s.seed;
    }

    json specs = json::array();
    for (const auto& [stem, spec] : jobs) {
        const Graph g = generate(spec);
        for (const fs::path& f : write_graph_files(g, dir, stem)) man.add_output(f);
        json j = spec;
        j["id"] = stem;
        j["nonzeros"] = g.nonzeros();
        specs.push_back(j);
        std::printf("%s: n=%ld nonzeros=%zu\n", stem.c_str(), static_cast<long>(g.n()), g.nonzeros());
    }
    man.config = {{"graphs", specs}};
    finish_manifest(man, dir / "manifest.json");
    return kOk;
}

// ---- transform ---------------------------------------------------------------

struct TransformArgs {
    std::string graph, coords, signal, out;
    std::vector<double> params;
    std::string method = "cmccm", strategy = "spectral-power-of-f", b0_form = "eta";
    bool no_dispatch = false;
};

int cmd_transform(const TransformArgs& a) {
    const ParamMatrix m = make_param_matrix(a.params[0], a.params[1], a.params[2], a.params[3]);
    const Method method = method_from_string(a.method);
    const ChirpStrategy strategy = chirp_strategy_from_string(a.strategy);
    CmccmOptions opts;
    opts.dispatch = !a.no_dispatch;
    if (a.b0_form == "mu") opts.b0_form = B0Kind::Mu;
    else if (a.b0_form != "eta") throw Error(ErrorKind::InvalidSpec, "unknown b0 form " + a.b0_form);

    const auto sg = analyze(a.coords.empty() ? io::read_graph(a.graph) : io::read_graph(a.graph, a.coords));
    const GraphSignal x = io::read_signal_csv(fs::path(a.signal));
    if (x.size() != sg->n()) {
        throw Error(ErrorKind::DimensionMismatch, "signal has " + std::to_string(x.size()) +
                                                      " entries, graph has " + std::to_string(sg->n()) + " nodes");
    }

    const GlctOperator op = method == Method::CMCCM ? build_cmccm(sg, m, strategy, opts)
                                                    : build_cddhfs(sg, m, strategy);
    const GraphSignal y = glct::apply(op, x);
    const GlctOperator back = method == Method::CMCCM ? inverse_by_params(sg, m, strategy, opts)
                                                      : build_cddhfs(sg, inverse(m), strategy);
    const double roundtrip = nmse(x, glct::apply(back, y));

    const fs::path out = resolve_file(a.out, "transformed.csv");
    ensure_parent(out);
    io::write_signal_csv(out, y);
    json side = op.metadata();
    side["method"] = to_string(method);
    side["roundtrip_nmse"] = roundtrip;
    fs::path sidecar = out;
    sidecar.replace_extension(".json");
    io::write_json(sidecar, side);

    io::RunManifest man;
    man.command = "transform";
    man.add_input(a.graph);
    if (!a.coords.empty()) man.add_input(a.coords);
    man.add_input(a.signal);
    man.add_output(out);
    man.add_output(sidecar);
    man.config = {{"params", m},         {"method", to_string(method)}, {"strategy", to_string(strategy)},
                  {"b0_form", a.b0_form}, {"dispatch", opts.dispatch}};
    fs::path mpath = out;
    mpath.replace_extension(".manifest.json");
    finish_manifest(man, mpath);

    std::printf("recipe=%s roundtrip_nmse=%.3e\n", to_string(op.recipe()).c_str(), roundtrip);
    return kOk;
}

// ---- bench -------------------------------------------------------------------

int cmd_bench(const std::string& config, const std::string& out, std::optional<unsigned> threads) {
    BenchConfig cfg = bench_config_from_json(io::read_json(config));
    if (threads) cfg.threads = *threads;
    cfg.validate();
    const BenchReport rep = run_experiment(cfg);

    const fs::path dir = resolve_dir(out);
    io::RunManifest man;
    man.command = "bench";
    man.add_input(config);
    for (const fs::path& f : write_report(rep, dir)) man.add_output(f);
    man.seed = cfg.seed;
    man.config = to_json_value(cfg);
    finish_manifest(man, dir / "manifest.json");

    for (const BenchResult& r : rep.results) {
        std::printf("%-4s %-7s mean_nmse=%.3e\n", r.graph_id.c_str(), to_string(r.method).c_str(), r.mean);
    }
    return kOk;
}

// ---- opcount -----------------------------------------------------------------

int cmd_opcount(std::int64_t nmin, std::int64_t nmax, bool pow2, const std::string& out_arg) {
    if (nmin < 1 || nmax < nmin) throw Error(ErrorKind::InvalidSpec, "need 1 <= nmin <= nmax");
    std::string csv = "n,cddhfs,cmccm_bnz,cmccm_b0\n";
    auto row = [&](std::int64_t n) {
        csv += std::to_string(n);
        for (auto m : {OpCountMethod::CDDHFs, OpCountMethod::CMCCM_bnz, OpCountMethod::CMCCM_b0}) {
            csv += ',' + std::to_string(opcount(m, n));
        }
        csv += '\n';
    };
    if (pow2) {
        std::int64_t n = 1;
        while (n < nmin) n *= 2;
        for (; n <= nmax; n *= 2) row(n);
    } else {
        for (std::int64_t n = nmin; n <= nmax; ++n) row(n);
    }
    const fs::path out = resolve_file(out_arg, "opcount.csv");
    ensure_parent(out);
    io::write_text(out, csv);

    io::RunManifest man;
    man.command = "opcount";
    man.add_output(out);
    man.config = {{"nmin", nmin}, {"nmax", nmax}, {"pow2", pow2}};
    fs::path mpath = out;
    mpath.replace_extension(".manifest.json");
    finish_manifest(man, mpath);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graph linear canonical transforms"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(GLCT_VERSION));

    GenArgs gen;
    auto* g = app.add_subcommand("gen", "Generate test graphs, coordinates and the bipolar signal");
    g->add_option("--kind", gen.kind, "path, comet, sensor, swiss_roll, community, ...");
    g->add_option("--n", gen.n, "Node count");
    g->add_option("--k", gen.k, "Neighbours for the kNN kinds");
    g->add_option("--star-degree", gen.star_degree, "Comet hub degree");
    g->add_option("--radius", gen.radius, "Connection radius");
    g->add_option("--seed", gen.seed, "Generator seed");
    g->add_flag("--corpus", gen.corpus, "Write all eight corpus graphs with default seeds");
    g->add_option("--out", gen.out, "Output directory (default $GLCT_OUT_DIR or .)");

    TransformArgs tr;
    auto* t = app.add_subcommand("transform", "Apply a GLCT to a graph signal");
    t->add_option("--graph", tr.graph, "Adjacency in Matrix Market format")->required()->check(CLI::ExistingFile);
    t->add_option("--coords", tr.coords, "Optional coordinates CSV")->check(CLI::ExistingFile);
    t->add_option("--signal", tr.signal, "Signal CSV (re,im)")->required()->check(CLI::ExistingFile);
    t->add_option("--params", tr.params, "a b c d with ad - bc = 1")->required()->expected(4)->allow_extra_args(false);
    t->add_option("--method", tr.method, "cmccm or cddhfs")->capture_default_str();
    t->add_option("--strategy", tr.strategy, "Chirp realization")->capture_default_str();
    t->add_option("--b0-form", tr.b0_form, "eta or mu")->capture_default_str();
    t->add_flag("--no-dispatch", tr.no_dispatch, "Skip the special-matrix shortcuts");
    t->add_option("--out", tr.out, "Output signal CSV; a .json sidecar is written next to it");

    std::string bench_config, bench_out;
    std::optional<unsigned> bench_threads;
    auto* b = app.add_subcommand("bench", "Run an additivity or reversibility experiment");
    b->add_option("--config", bench_config, "Experiment JSON")->required()->check(CLI::ExistingFile);
    b->add_option("--threads", bench_threads, "Worker threads (0 = all cores)");
    b->add_option("--out", bench_out, "Output directory");

    std::int64_t nmin = 1, nmax = 64;
    bool pow2 = false;
    std::string op_out;
    auto* o = app.add_subcommand("opcount", "Tabulate the operation-count model");
    o->add_option("--nmin", nmin)->capture_default_str();
    o->add_option("--nmax", nmax)->capture_default_str();
    o->add_flag("--pow2", pow2, "Only powers of two in the range");
    o->add_option("--out", op_out, "Output CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kValidation;
    }

    try {
        if (*g) return cmd_gen(gen);
        if (*t) return cmd_transform(tr);
        if (*b) return cmd_bench(bench_config, bench_out, bench_threads);
        if (*o) return cmd_opcount(nmin, nmax, pow2, op_out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidation;
    }
    return kOk;
}
