#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include <wflow/vec3.hpp>

namespace wflow {

using Face = std::array<int, 3>;

/// Connectivity derived from the face list. Built once, shared between all
/// meshes that differ only in vertex positions (flow steps, dilations).
struct MeshTopology {
    std::vector<Face> faces;
    int vertex_count = 0;

    /// CSR vertex->incident (face, corner) map; corner is the index of the
    /// vertex within the face (0..2).
    std::vector<int> vertex_face_offset;
    struct Incidence {
        int face;
        int corner;
    };
    std::vector<Incidence> vertex_faces;

    /// Unique undirected edges. f1 == -1 marks a boundary or non-manifold
    /// leftover; such meshes are still representable (validate reports them).
    struct Edge {
        int a, b;   // a < b
        int f0, f1; // adjacent faces
    };
    std::vector<Edge> edges;
    bool two_faces_per_edge = true;

    static std::shared_ptr<const MeshTopology> build(int vertex_count, std::vector<Face> faces);
};

/// Closed oriented triangle surface: vertex positions plus a shared immutable
/// face list. Positions are fixed after construction; every mutation produces
/// a new mesh, so instances are safe to share across threads.
class TriangleMesh {
  public:
    TriangleMesh(std::vector<Vec3> positions, std::vector<Face> faces);
    TriangleMesh(std::vector<Vec3> positions, std::shared_ptr<const MeshTopology> topology);

    const std::vector<Vec3>& positions() const { return positions_; }
    const std::vector<Face>& faces() const { return topology_->faces; }
    const MeshTopology& topology() const { return *topology_; }
    std::shared_ptr<const MeshTopology> topology_ptr() const { return topology_; }

    int vertex_count() const { return static_cast<int>(positions_.size()); }
    int face_count() const { return static_cast<int>(topology_->faces.size()); }

    /// Identity token; vertex fields remember which mesh they belong to.
    std::uint64_t id() const { return id_; }

    double bounding_box_diagonal() const;
    double min_edge_length() const;
    double max_edge_length() const;

  private:
    std::vector<Vec3> positions_;
    std::shared_ptr<const MeshTopology> topology_;
    std::uint64_t id_;
};

struct TopologyReport {
    bool is_closed = false;
    bool is_manifold = false;
    bool is_oriented = false;
    int euler_characteristic = 0;
    /// -1 when closed+manifold+oriented does not hold (genus undefined).
    int genus = -1;
    double min_face_area = 0.0;
    double min_edge_length = 0.0;
    double max_edge_length = 0.0;
    /// True when every face clears the degenerate-area threshold and every
    /// vertex has at least 3 incident faces.
    bool faces_ok = false;

    bool valid() const { return is_closed && is_manifold && is_oriented && faces_ok; }
};

/// Face area must exceed this fraction of (bounding box diagonal)^2.
inline constexpr double kDegenerateAreaFactor = 1e-14;

/// Pure inspection; never throws, problems are reported in the result.
TopologyReport validate(const TriangleMesh& mesh);

/// f_alpha = alpha * (f - p). Throws DomainError for alpha <= 0.
TriangleMesh dilate(const TriangleMesh& mesh, double alpha, const Vec3& p);

/// Rigid motion helper used by tests: rotate about an axis, then translate.
TriangleMesh transform_rigid(const TriangleMesh& mesh, const Vec3& axis, double angle, const Vec3& translation);

} // namespace wflow
