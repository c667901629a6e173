#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "glct/graph.hpp"

namespace glct::io {

/// 17 significant digits; round-trips every double exactly.
std::string format_double(double v);

// Matrix Market: "coordinate real symmetric" on write; on read also accepts
// integer/pattern fields and the general symmetry (which must then actually
// be symmetric). Array format is rejected.
void write_matrix_market(std::ostream& out, const RealMatrix& adjacency);
RealMatrix read_matrix_market(std::istream& in);
void write_matrix_market(const std::filesystem::path& path, const RealMatrix& adjacency);
RealMatrix read_matrix_market(const std::filesystem::path& path);

/// Signals are CSV with a "re,im" header; a single real column is accepted on read.
void write_signal_csv(std::ostream& out, const GraphSignal& x);
GraphSignal read_signal_csv(std::istream& in);
void write_signal_csv(const std::filesystem::path& path, const GraphSignal& x);
GraphSignal read_signal_csv(const std::filesystem::path& path);

/// n x k real table with an x0,x1,... header.
void write_coords_csv(const std::filesystem::path& path, const RealMatrix& coords);
RealMatrix read_coords_csv(const std::filesystem::path& path);

/// Complex matrix with interleaved re/im columns (re0,im0,re1,im1,...).
void write_complex_matrix_csv(const std::filesystem::path& path, const ComplexMatrix& m);

Graph read_graph(const std::filesystem::path& mtx,
                 const std::optional<std::filesystem::path>& coords = std::nullopt);

nlohmann::json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);
void write_text(const std::filesystem::path& path, const std::string& text);

/// Hex SHA-256 of a file's bytes / of a string.
std::string sha256_file(const std::filesystem::path& path);
std::string sha256_hex(const std::string& data);

/// Provenance record written next to every command's outputs.
struct RunManifest {
    std::string command;
    std::string config_hash;
    std::map<std::string, std::string> inputs;   ///< path -> sha256
    std::map<std::string, std::string> outputs;  ///< path -> sha256
    std::optional<std::uint64_t> seed;
    std::string version = GLCT_VERSION;
    nlohmann::json config;

    void add_output(const std::filesystem::path& path);
    void add_input(const std::filesystem::path& path);
    nlohmann::json to_json() const;
};

}  // namespace glct::io
