#include <wflow/obj_io.hpp>

#include <cerrno>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <system_error>

#include <wflow/errors.hpp>

namespace wflow {

namespace {

// Splits on spaces/tabs; multiple separators collapse.
std::vector<std::string_view> tokenize(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t'))
            ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t')
            ++i;
        if (i > start)
            tokens.push_back(line.substr(start, i - start));
    }
    return tokens;
}

double parse_double(std::string_view token, long line_no) {
    std::string buf(token);
    char* end = nullptr;
    errno = 0;
    const double value = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size() || errno == ERANGE)
        throw ParseError("invalid float '" + buf + "'", line_no);
    return value;
}

long parse_index(std::string_view token, long line_no) {
    long value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size())
        throw ParseError("invalid vertex index '" + std::string(token) + "'", line_no);
    return value;
}

} // namespace

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

TriangleMesh load_mesh(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open '" + path.string() + "' for reading");

    std::vector<Vec3> positions;
    std::vector<Face> faces;
    std::vector<long> face_lines; // for the deferred range check

    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        auto tokens = tokenize(line);
        if (tokens.empty() || tokens[0][0] == '#')
            continue;
        if (tokens[0] == "v") {
            if (tokens.size() != 4)
                throw ParseError("'v' record needs exactly 3 coordinates", line_no);
            positions.push_back({parse_double(tokens[1], line_no), parse_double(tokens[2], line_no),
                                 parse_double(tokens[3], line_no)});
        } else if (tokens[0] == "f") {
            if (tokens.size() != 4)
                throw ParseError("'f' record needs exactly 3 vertex indices", line_no);
            Face f;
            for (int c = 0; c < 3; ++c) {
                const long idx = parse_index(tokens[c + 1], line_no);
                if (idx < 1)
                    throw ParseError("vertex index must be >= 1", line_no);
                f[c] = static_cast<int>(idx - 1);
            }
            faces.push_back(f);
            face_lines.push_back(line_no);
        } else {
            throw ParseError("unsupported record '" + std::string(tokens[0]) + "'", line_no);
        }
    }

    const long nv = static_cast<long>(positions.size());
    for (std::size_t i = 0; i < faces.size(); ++i)
        for (int c = 0; c < 3; ++c)
            if (faces[i][c] >= nv)
                throw ParseError("face references vertex " + std::to_string(faces[i][c] + 1) + " of " +
                                     std::to_string(nv),
                                 face_lines[i]);

    TriangleMesh mesh(std::move(positions), std::move(faces));
    const TopologyReport report = validate(mesh);
    if (!report.is_closed)
        throw TopologyError("mesh in '" + path.string() + "' has an open boundary");
    if (!report.is_manifold)
        throw TopologyError("mesh in '" + path.string() + "' has a non-manifold edge");
    if (!report.is_oriented)
        throw TopologyError("mesh in '" + path.string() + "' is not consistently oriented");
    if (!report.faces_ok)
        throw TopologyError("mesh in '" + path.string() + "' has degenerate faces or under-referenced vertices");
    return mesh;
}

std::string to_obj_string(const TriangleMesh& mesh) {
    std::string out;
    out.reserve(mesh.vertex_count() * 40 + mesh.face_count() * 20);
    for (const Vec3& p : mesh.positions()) {
        out += "v ";
        out += format_double(p.x);
        out += ' ';
        out += format_double(p.y);
        out += ' ';
        out += format_double(p.z);
        out += '\n';
    }
    for (const Face& f : mesh.faces()) {
        out += "f ";
        out += std::to_string(f[0] + 1);
        out += ' ';
        out += std::to_string(f[1] + 1);
        out += ' ';
        out += std::to_string(f[2] + 1);
        out += '\n';
    }
    return out;
}

void save_mesh(const TriangleMesh& mesh, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open '" + path.string() + "' for writing");
    out << to_obj_string(mesh);
    if (!out)
        throw IoError("write to '" + path.string() + "' failed");
}

} // namespace wflow
