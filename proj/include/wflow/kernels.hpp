#pragma once

#include <span>
#include <vector>

#include <wflow/mesh.hpp>

namespace wflow::kernels {

/// Scratch space shared by the per-vertex kernels so the flow loop does not
/// allocate. All buffers are resized on first use.
struct Buffers {
    std::vector<double> face_area;
    std::vector<Vec3> face_cross; // 2 * area * unit normal
    std::vector<std::array<double, 3>> face_cot;
    std::vector<double> vertex_area;
    std::vector<Vec3> vertex_normal;
    std::vector<Vec3> mean_curvature_vec;
    std::vector<double> mean_curvature; // signed scalar H
    std::vector<double> gauss_curvature;
    std::vector<double> scratch; // reduction staging
};

/// Degenerate-face floor for a position set: kDegenerateAreaFactor * diag^2.
double face_area_floor(std::span<const Vec3> positions);

/// False if any face area is at or below the floor or a position is not
/// finite. The flow's backtracking uses this as its cheap validity probe.
bool geometry_ok(std::span<const Vec3> positions, const MeshTopology& topo, double area_floor);

/// Per-face areas, scaled normals and corner cotangents.
/// Throws DegenerateMeshError when a face is under the floor.
void face_geometry(std::span<const Vec3> positions, const MeshTopology& topo, Buffers& buf);

/// Barycentric vertex areas (one third of incident face areas).
void vertex_areas(const MeshTopology& topo, Buffers& buf);

/// Area-weighted unit vertex normals. Requires face_geometry.
void vertex_normals(std::span<const Vec3> positions, const MeshTopology& topo, Buffers& buf);

/// Cotangent mean-curvature vector and its signed scalar. Requires
/// face_geometry + vertex_areas + vertex_normals.
void mean_curvature(std::span<const Vec3> positions, const MeshTopology& topo, Buffers& buf);

/// Angle-defect Gaussian curvature. Requires vertex_areas.
void gauss_curvature(std::span<const Vec3> positions, const MeshTopology& topo, Buffers& buf);

/// Cotangent Laplace-Beltrami of a vertex scalar field.
void laplace_beltrami(std::span<const Vec3> positions, const MeshTopology& topo, std::span<const double> u,
                      Buffers& buf, std::vector<double>& out);

/// Runs face_geometry .. mean_curvature in order.
void curvature_pipeline(std::span<const Vec3> positions, const MeshTopology& topo, Buffers& buf);

/// Sum of face areas (deterministic reduction).
double total_area(const MeshTopology& topo, Buffers& buf);

/// Divergence-theorem signed volume; independent of the curvature pipeline.
double signed_volume(std::span<const Vec3> positions, const MeshTopology& topo, Buffers& buf);

/// Willmore energy sum H^2 dmu; runs the pipeline itself.
double willmore_energy(std::span<const Vec3> positions, const MeshTopology& topo, Buffers& buf);

/// willmore + lambda * volume in one pass.
double helfrich_energy(std::span<const Vec3> positions, const MeshTopology& topo, double lambda, Buffers& buf);

} // namespace wflow::kernels
