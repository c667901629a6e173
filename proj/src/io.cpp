#include "glct/io.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "glct/errors.hpp"

namespace glct::io {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& token, double& out) {
    const std::string t = trim(token);
    if (t.empty()) return false;
    char* end = nullptr;
    errno = 0;
    out = std::strtod(t.c_str(), &end);
    return end == t.c_str() + t.size() && errno != ERANGE;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(trim(field));
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "' for reading");
    return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "' for writing");
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw Error(ErrorKind::IoError, "write to '" + path.string() + "' failed");
}

// Reads a numeric table: optional non-numeric header line, then rows of
// comma-separated doubles with a constant column count.
std::vector<std::vector<double>> read_table(std::istream& in, const std::string& what) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_csv(line);
        std::vector<double> row;
        row.reserve(fields.size());
        bool numeric = true;
        for (const auto& f : fields) {
            double v = 0.0;
            if (!parse_double(f, v)) {
                numeric = false;
                break;
            }
            row.push_back(v);
        }
        if (!numeric) {
            if (rows.empty() && width == 0) {
                width = fields.size();  // header
                continue;
            }
            throw Error(ErrorKind::ParseError,
                        what + ": non-numeric value on line " + std::to_string(line_no));
        }
        if (width == 0) width = row.size();
        if (row.size() != width) {
            throw Error(ErrorKind::ParseError,
                        what + ": expected " + std::to_string(width) + " columns on line " +
                            std::to_string(line_no));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_matrix_market(std::ostream& out, const RealMatrix& adjacency) {
    const Eigen::Index n = adjacency.rows();
    std::size_t count = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = j; i < n; ++i) {
            if (adjacency(i, j) != 0.0) ++count;
        }
    }
    out << "%%MatrixMarket matrix coordinate real symmetric\n";
    out << n << ' ' << n << ' ' << count << '\n';
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = j; i < n; ++i) {
            if (adjacency(i, j) != 0.0) {
                out << (i + 1) << ' ' << (j + 1) << ' ' << format_double(adjacency(i, j)) << '\n';
            }
        }
    }
}

RealMatrix read_matrix_market(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorKind::ParseError, "empty Matrix Market stream");
    std::istringstream banner(line);
    std::string tag, object, format, field, symmetry;
    banner >> tag >> object >> format >> field >> symmetry;
    if (tag != "%%MatrixMarket" || lower(object) != "matrix") {
        throw Error(ErrorKind::ParseError, "missing %%MatrixMarket matrix banner");
    }
    format = lower(format);
    field = lower(field);
    symmetry = lower(symmetry);
    if (format != "coordinate") {
        throw Error(ErrorKind::ParseError, "only coordinate Matrix Market files are supported");
    }
    if (field != "real" && field != "integer" && field != "pattern") {
        throw Error(ErrorKind::ParseError, "unsupported Matrix Market field '" + field + "'");
    }
    if (symmetry != "symmetric" && symmetry != "general") {
        throw Error(ErrorKind::ParseError, "unsupported Matrix Market symmetry '" + symmetry + "'");
    }
    const bool pattern = field == "pattern";
    const bool symmetric = symmetry == "symmetric";

    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (!t.empty() && t[0] != '%') break;
    }
    long long rows = 0, cols = 0, nnz = 0;
    {
        std::istringstream size_line(line);
        if (!(size_line >> rows >> cols >> nnz) || rows <= 0 || cols <= 0 || nnz < 0) {
            throw Error(ErrorKind::ParseError, "bad Matrix Market size line '" + trim(line) + "'");
        }
    }
    if (rows != cols) throw Error(ErrorKind::NotSymmetric, "adjacency matrix is not square");

    RealMatrix a = RealMatrix::Zero(rows, cols);
    long long read = 0;
    while (read < nnz && std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty() || t[0] == '%') continue;
        std::istringstream entry(t);
        long long i = 0, j = 0;
        double v = 1.0;
        if (!(entry >> i >> j) || (!pattern && !(entry >> v))) {
            throw Error(ErrorKind::ParseError, "bad Matrix Market entry '" + t + "'");
        }
        if (i < 1 || j < 1 || i > rows || j > cols) {
            throw Error(ErrorKind::ParseError, "Matrix Market index out of range in '" + t + "'");
        }
        a(i - 1, j - 1) = v;
        if (symmetric) a(j - 1, i - 1) = v;
        ++read;
    }
    if (read != nnz) {
        throw Error(ErrorKind::ParseError, "Matrix Market file ends after " + std::to_string(read) +
                                               " of " + std::to_string(nnz) + " entries");
    }
    return a;
}

void write_matrix_market(const std::filesystem::path& path, const RealMatrix& adjacency) {
    auto out = open_out(path);
    write_matrix_market(out, adjacency);
    finish(out, path);
}

RealMatrix read_matrix_market(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_matrix_market(in);
}

void write_signal_csv(std::ostream& out, const GraphSignal& x) {
    out << "re,im\n";
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        out << format_double(x(i).real()) << ',' << format_double(x(i).imag()) << '\n';
    }
}

GraphSignal read_signal_csv(std::istream& in) {
    const auto rows = read_table(in, "signal");
    if (rows.empty()) throw Error(ErrorKind::ParseError, "signal file has no values");
    const std::size_t width = rows.front().size();
    if (width != 1 && width != 2) {
        throw Error(ErrorKind::ParseError, "signal file must have one (re) or two (re,im) columns");
    }
    GraphSignal x(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        x(static_cast<Eigen::Index>(i)) = cplx(rows[i][0], width == 2 ? rows[i][1] : 0.0);
    }
    return x;
}

void write_signal_csv(const std::filesystem::path& path, const GraphSignal& x) {
    auto out = open_out(path);
    write_signal_csv(out, x);
    finish(out, path);
}

GraphSignal read_signal_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_signal_csv(in);
}

void write_coords_csv(const std::filesystem::path& path, const RealMatrix& coords) {
    auto out = open_out(path);
    for (Eigen::Index c = 0; c < coords.cols(); ++c) out << (c ? "," : "") << 'x' << c;
    out << '\n';
    for (Eigen::Index r = 0; r < coords.rows(); ++r) {
        for (Eigen::Index c = 0; c < coords.cols(); ++c) {
            out << (c ? "," : "") << format_double(coords(r, c));
        }
        out << '\n';
    }
    finish(out, path);
}

RealMatrix read_coords_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    const auto rows = read_table(in, "coordinates");
    if (rows.empty()) return RealMatrix(0, 0);
    RealMatrix m(static_cast<Eigen::Index>(rows.size()),
                 static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
        }
    }
    return m;
}

void write_complex_matrix_csv(const std::filesystem::path& path, const ComplexMatrix& m) {
    auto out = open_out(path);
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        out << (c ? "," : "") << "re" << c << ",im" << c;
    }
    out << '\n';
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            out << (c ? "," : "") << format_double(m(r, c).real()) << ','
                << format_double(m(r, c).imag());
        }
        out << '\n';
    }
    finish(out, path);
}

Graph read_graph(const std::filesystem::path& mtx,
                 const std::optional<std::filesystem::path>& coords) {
    RealMatrix a = read_matrix_market(mtx);
    if (coords) return Graph(std::move(a), read_coords_csv(*coords));
    return Graph(std::move(a));
}

nlohmann::json read_json(const std::filesystem::path& path) {
    auto in = open_in(path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::ParseError, path.string() + ": " + e.what());
    }
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
    write_text(path, j.dump(2) + "\n");
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    auto out = open_out(path);
    out << text;
    finish(out, path);
}

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw Error(ErrorKind::IoError, "SHA-256 computation failed");
    }
    std::ostringstream hex;
    for (unsigned int i = 0; i < len; ++i) {
        hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    }
    return hex.str();
}

std::string sha256_file(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return sha256_hex(buf.str());
}

void RunManifest::add_output(const std::filesystem::path& path) {
    outputs[path.generic_string()] = sha256_file(path);
}

void RunManifest::add_input(const std::filesystem::path& path) {
    inputs[path.generic_string()] = sha256_file(path);
}

nlohmann::json RunManifest::to_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["config_hash"] = config_hash;
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    j["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
    j["version"] = version;
    j["config"] = config;
    return j;
}

}  // namespace glct::io
