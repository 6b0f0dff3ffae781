#include <wflow/curvature.hpp>

#include <cmath>

#include <wflow/errors.hpp>
#include <wflow/kernels.hpp>
#include <wflow/reduction.hpp>

namespace wflow {

void check_field(const ScalarField& field, const TriangleMesh& mesh) {
    if (field.mesh_id != mesh.id())
        throw DomainError("scalar field does not belong to this mesh");
    if (static_cast<int>(field.values.size()) != mesh.vertex_count())
        throw DomainError("scalar field length does not match vertex count");
    for (double v : field.values)
        if (!std::isfinite(v))
            throw DegenerateMeshError("scalar field contains a non-finite entry");
}

void check_field(const VectorField& field, const TriangleMesh& mesh) {
    if (field.mesh_id != mesh.id())
        throw DomainError("vector field does not belong to this mesh");
    if (static_cast<int>(field.values.size()) != mesh.vertex_count())
        throw DomainError("vector field length does not match vertex count");
    for (const Vec3& v : field.values)
        if (!is_finite(v))
            throw DegenerateMeshError("vector field contains a non-finite entry");
}

ScalarField vertex_areas(const TriangleMesh& mesh) {
    kernels::Buffers buf;
    kernels::face_geometry(mesh.positions(), mesh.topology(), buf);
    kernels::vertex_areas(mesh.topology(), buf);
    return {mesh.id(), std::move(buf.vertex_area)};
}

VectorField vertex_normals(const TriangleMesh& mesh) {
    kernels::Buffers buf;
    kernels::face_geometry(mesh.positions(), mesh.topology(), buf);
    kernels::vertex_normals(mesh.positions(), mesh.topology(), buf);
    return {mesh.id(), std::move(buf.vertex_normal)};
}

MeanCurvature mean_curvature(const TriangleMesh& mesh) {
    kernels::Buffers buf;
    kernels::curvature_pipeline(mesh.positions(), mesh.topology(), buf);
    return {{mesh.id(), std::move(buf.mean_curvature)}, {mesh.id(), std::move(buf.mean_curvature_vec)}};
}

ScalarField gauss_curvature(const TriangleMesh& mesh) {
    kernels::Buffers buf;
    kernels::face_geometry(mesh.positions(), mesh.topology(), buf);
    kernels::vertex_areas(mesh.topology(), buf);
    kernels::gauss_curvature(mesh.positions(), mesh.topology(), buf);
    return {mesh.id(), std::move(buf.gauss_curvature)};
}

ScalarField laplace_beltrami(const TriangleMesh& mesh, const ScalarField& u) {
    check_field(u, mesh);
    kernels::Buffers buf;
    kernels::face_geometry(mesh.positions(), mesh.topology(), buf);
    kernels::vertex_areas(mesh.topology(), buf);
    std::vector<double> out;
    kernels::laplace_beltrami(mesh.positions(), mesh.topology(), u.values, buf, out);
    return {mesh.id(), std::move(out)};
}

CurvatureNorms curvature_norms(const TriangleMesh& mesh) {
    kernels::Buffers buf;
    kernels::curvature_pipeline(mesh.positions(), mesh.topology(), buf);
    kernels::gauss_curvature(mesh.positions(), mesh.topology(), buf);

    const int nv = mesh.vertex_count();
    CurvatureNorms out;
    out.a2.mesh_id = out.a0.mesh_id = mesh.id();
    out.a2.values.resize(nv);
    out.a0.values.resize(nv);
    KahanSum clamp;
    for (int v = 0; v < nv; ++v) {
        const double h = buf.mean_curvature[v];
        const double k = buf.gauss_curvature[v];
        const double a0_raw = 2.0 * (h * h - k);
        const double a0 = a0_raw < 0.0 ? 0.0 : a0_raw;
        if (a0_raw < 0.0)
            clamp.add(-a0_raw * buf.vertex_area[v]);
        out.a0.values[v] = a0;
        // defined through the clamped a0 so a2 - a0 == 2H^2 holds exactly
        out.a2.values[v] = a0 + 2.0 * h * h;
    }
    out.clamp_magnitude = clamp.value();
    return out;
}

} // namespace wflow
