#include <wflow/mesh.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include <wflow/errors.hpp>

namespace wflow {

namespace {

std::atomic<std::uint64_t> g_next_mesh_id{1};

} // namespace

std::shared_ptr<const MeshTopology> MeshTopology::build(int vertex_count, std::vector<Face> faces) {
    auto topo = std::make_shared<MeshTopology>();
    topo->vertex_count = vertex_count;
    topo->faces = std::move(faces);

    const int nf = static_cast<int>(topo->faces.size());
    for (int f = 0; f < nf; ++f) {
        for (int c = 0; c < 3; ++c) {
            const int v = topo->faces[f][c];
            if (v < 0 || v >= vertex_count)
                throw DomainError("face " + std::to_string(f) + " references vertex " + std::to_string(v) +
                                  " outside [0," + std::to_string(vertex_count) + ")");
        }
    }

    // vertex -> incident faces (CSR)
    std::vector<int> degree(vertex_count, 0);
    for (const Face& f : topo->faces)
        for (int v : f)
            ++degree[v];
    topo->vertex_face_offset.assign(vertex_count + 1, 0);
    for (int v = 0; v < vertex_count; ++v)
        topo->vertex_face_offset[v + 1] = topo->vertex_face_offset[v] + degree[v];
    topo->vertex_faces.resize(topo->vertex_face_offset.back());
    std::vector<int> cursor(topo->vertex_face_offset.begin(), topo->vertex_face_offset.end() - 1);
    for (int f = 0; f < nf; ++f)
        for (int c = 0; c < 3; ++c) {
            const int v = topo->faces[f][c];
            topo->vertex_faces[cursor[v]++] = {f, c};
        }

    // unique undirected edges; ordered map keeps construction deterministic
    std::map<std::pair<int, int>, std::pair<int, int>> edge_faces;
    for (int f = 0; f < nf; ++f) {
        const Face& face = topo->faces[f];
        for (int c = 0; c < 3; ++c) {
            int a = face[c], b = face[(c + 1) % 3];
            if (a > b)
                std::swap(a, b);
            auto [it, inserted] = edge_faces.try_emplace({a, b}, std::pair<int, int>{f, -1});
            if (!inserted) {
                if (it->second.second == -1)
                    it->second.second = f;
                else
                    topo->two_faces_per_edge = false; // over-shared edge
            }
        }
    }
    topo->edges.reserve(edge_faces.size());
    for (const auto& [key, fs] : edge_faces) {
        topo->edges.push_back({key.first, key.second, fs.first, fs.second});
        if (fs.second == -1)
            topo->two_faces_per_edge = false;
    }
    return topo;
}

TriangleMesh::TriangleMesh(std::vector<Vec3> positions, std::vector<Face> faces)
    : positions_(std::move(positions)),
      topology_(MeshTopology::build(static_cast<int>(positions_.size()), std::move(faces))),
      id_(g_next_mesh_id.fetch_add(1)) {}

TriangleMesh::TriangleMesh(std::vector<Vec3> positions, std::shared_ptr<const MeshTopology> topology)
    : positions_(std::move(positions)), topology_(std::move(topology)), id_(g_next_mesh_id.fetch_add(1)) {
    if (static_cast<int>(positions_.size()) != topology_->vertex_count)
        throw DomainError("position count does not match topology vertex count");
}

double TriangleMesh::bounding_box_diagonal() const {
    if (positions_.empty())
        return 0.0;
    Vec3 lo = positions_[0], hi = positions_[0];
    for (const Vec3& p : positions_) {
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        lo.z = std::min(lo.z, p.z);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
        hi.z = std::max(hi.z, p.z);
    }
    return norm(hi - lo);
}

double TriangleMesh::min_edge_length() const {
    double m = std::numeric_limits<double>::infinity();
    for (const MeshTopology::Edge& e : topology_->edges)
        m = std::min(m, norm(positions_[e.a] - positions_[e.b]));
    return m;
}

double TriangleMesh::max_edge_length() const {
    double m = 0.0;
    for (const MeshTopology::Edge& e : topology_->edges)
        m = std::max(m, norm(positions_[e.a] - positions_[e.b]));
    return m;
}

TopologyReport validate(const TriangleMesh& mesh) {
    TopologyReport report;
    const auto& faces = mesh.faces();
    const auto& pos = mesh.positions();
    const int nv = mesh.vertex_count();
    const int nf = mesh.face_count();

    // Directed-edge census. Closed + manifold + oriented is equivalent to:
    // every directed edge occurs exactly once and its reverse occurs too.
    std::map<std::pair<int, int>, int> directed;
    bool degenerate_indices = false;
    for (const Face& f : faces) {
        if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2])
            degenerate_indices = true;
        for (int c = 0; c < 3; ++c)
            ++directed[{f[c], f[(c + 1) % 3]}];
    }

    bool any_duplicate = false, any_unpaired = false;
    std::size_t undirected_edges = 0;
    for (const auto& [edge, count] : directed) {
        if (count > 1)
            any_duplicate = true;
        auto rev = directed.find({edge.second, edge.first});
        if (rev == directed.end())
            any_unpaired = true;
        if (edge.first < edge.second)
            ++undirected_edges;
        else if (rev == directed.end())
            ++undirected_edges; // reversed edge missing; count it once anyway
    }

    report.is_closed = !any_unpaired;
    report.is_manifold = !any_duplicate && !any_unpaired && !degenerate_indices;
    report.is_oriented = !any_duplicate && !any_unpaired;
    report.euler_characteristic = nv - static_cast<int>(undirected_edges) + nf;
    if (report.is_closed && report.is_manifold && report.is_oriented)
        report.genus = (2 - report.euler_characteristic) / 2;

    report.min_edge_length = std::numeric_limits<double>::infinity();
    report.max_edge_length = 0.0;
    for (const auto& [edge, count] : directed) {
        if (edge.first < edge.second) {
            const double len = norm(pos[edge.first] - pos[edge.second]);
            report.min_edge_length = std::min(report.min_edge_length, len);
            report.max_edge_length = std::max(report.max_edge_length, len);
        }
    }

    const double diag = mesh.bounding_box_diagonal();
    const double area_floor = kDegenerateAreaFactor * diag * diag;
    report.min_face_area = std::numeric_limits<double>::infinity();
    for (const Face& f : faces) {
        const double area = 0.5 * norm(cross(pos[f[1]] - pos[f[0]], pos[f[2]] - pos[f[0]]));
        report.min_face_area = std::min(report.min_face_area, area);
    }
    if (nf == 0)
        report.min_face_area = 0.0;

    bool ref_ok = true;
    std::vector<int> refs(nv, 0);
    for (const Face& f : faces)
        for (int v : f)
            ++refs[v];
    for (int v = 0; v < nv; ++v)
        if (refs[v] < 3)
            ref_ok = false;

    report.faces_ok = !degenerate_indices && ref_ok && report.min_face_area > area_floor;
    return report;
}

TriangleMesh dilate(const TriangleMesh& mesh, double alpha, const Vec3& p) {
    if (!(alpha > 0.0))
        throw DomainError("dilate: alpha must be positive");
    std::vector<Vec3> out(mesh.positions().size());
    const auto& pos = mesh.positions();
#pragma omp parallel for schedule(static)
    for (long long v = 0; v < static_cast<long long>(pos.size()); ++v)
        out[v] = (pos[v] - p) * alpha;
    return TriangleMesh(std::move(out), mesh.topology_ptr());
}

TriangleMesh transform_rigid(const TriangleMesh& mesh, const Vec3& axis, double angle, const Vec3& translation) {
    const Vec3 k = normalized(axis);
    const double c = std::cos(angle), s = std::sin(angle);
    std::vector<Vec3> out(mesh.positions().size());
    const auto& pos = mesh.positions();
    for (std::size_t v = 0; v < pos.size(); ++v) {
        const Vec3& p = pos[v];
        // Rodrigues rotation
        out[v] = p * c + cross(k, p) * s + k * (dot(k, p) * (1.0 - c)) + translation;
    }
    return TriangleMesh(std::move(out), mesh.topology_ptr());
}

} // namespace wflow
